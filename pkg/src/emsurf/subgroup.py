"""Finite-index subgroups of SL2(Z) as permutation representations.

A subgroup is stored through the right action of SL2(Z) on its right cosets
``Gamma g``: ``sigma_s[i]`` is the index of ``(coset i) * S`` and likewise for
``sigma_t``.  Composition follows the right action, so the permutation of a
word ``g h`` is "first g, then h".
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidInput, InvalidRepresentation
from .sl2 import (
    GENERATORS,
    IDENTITY,
    MatModN,
    MatZ,
    inv_mod,
    mul_mod,
    multiply,
    reduce_mod,
)

BFS_ORDER = ("S", "S^-1", "T", "T^-1")
FAMILIES = ("gamma", "gamma1")


@dataclass(frozen=True)
class CongruenceSpec:
    level: int
    generators: tuple[MatModN, ...]
    label: str

    def __post_init__(self):
        if self.level < 1:
            raise InvalidInput(f"level must be >= 1, got {self.level}")
        for g in self.generators:
            if g.N != self.level:
                raise InvalidInput(f"generator {g.entries} has modulus {g.N}, expected {self.level}")
            if g.det() != 1 % self.level:
                raise InvalidInput(f"generator {g.entries} has det != 1 mod {self.level}")


@dataclass(frozen=True)
class PermutationRep:
    n: int
    sigma_s: tuple[int, ...]
    sigma_t: tuple[int, ...]
    witnesses: tuple[MatZ, ...] = field(default=(), compare=False)
    label: str = field(default="", compare=False)


@dataclass(frozen=True)
class Subgroup:
    rep: PermutationRep
    origin: CongruenceSpec | None
    minus_one: bool

    @property
    def label(self) -> str:
        return self.rep.label

    @property
    def index(self) -> int:
        return self.rep.n

    @property
    def is_congruence(self) -> bool:
        return self.origin is not None


# -- permutation helpers ---------------------------------------------------

def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Right-action composition: apply ``p`` then ``q``."""
    return tuple(q[p[i]] for i in range(len(p)))


def invert(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_power(p: Sequence[int], k: int) -> tuple[int, ...]:
    out = tuple(range(len(p)))
    for _ in range(k):
        out = compose(out, p)
    return out


def is_identity(p: Sequence[int]) -> bool:
    return all(i == j for i, j in enumerate(p))


def generator_perms(rep: PermutationRep) -> dict[str, tuple[int, ...]]:
    return {
        "S": tuple(rep.sigma_s),
        "S^-1": invert(rep.sigma_s),
        "T": tuple(rep.sigma_t),
        "T^-1": invert(rep.sigma_t),
    }


def word_perm(rep: PermutationRep, letters: Sequence[str]) -> tuple[int, ...]:
    perms = generator_perms(rep)
    out = tuple(range(rep.n))
    for w in letters:
        out = compose(out, perms[w])
    return out


def minus_one_perm(rep: PermutationRep) -> tuple[int, ...]:
    return compose(rep.sigma_s, rep.sigma_s)


# -- congruence data -------------------------------------------------------

def sl2_order(N: int) -> int:
    """|SL2(Z/N)| = N^3 prod_{p | N} (1 - 1/p^2)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    order, m, p = N**3, N, 2
    while p * p <= m:
        if m % p == 0:
            order = order // (p * p) * (p * p - 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        order = order // (m * m) * (m * m - 1)
    return order


def builtin_spec(family: str, N: int) -> CongruenceSpec:
    """Canned congruence families: ``gamma`` is Gamma(N), ``gamma1`` is Gamma_1(N)."""
    if family not in FAMILIES:
        raise InvalidInput(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if N < 1:
        raise InvalidInput(f"level must be >= 1, got {N}")
    gens: tuple[MatModN, ...] = ()
    if family == "gamma1":
        gens = (reduce_mod(MatZ(1, 1, 0, 1), N),)
    return CongruenceSpec(N, gens, f"{family}:{N}")


def close_subgroup(spec: CongruenceSpec) -> frozenset[tuple[int, int, int, int]]:
    """All elements of H = <generators> inside SL2(Z/N)."""
    N = spec.level
    one = reduce_mod(IDENTITY, N).entries
    gens = [g.entries for g in spec.generators]
    gens += [inv_mod(g, N) for g in gens]
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul_mod(x, g, N)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def build_congruence(spec: CongruenceSpec) -> Subgroup:
    """Enumerate the right cosets of the preimage of H by breadth-first search.

    Cosets are keyed by the lexicographically least element of ``H x`` so the
    numbering depends only on the spec.  Witnesses are the matrices of the
    BFS-shortest words reaching each coset.
    """
    N = spec.level
    H = sorted(close_subgroup(spec))
    expected = sl2_order(N) // len(H)
    if expected * len(H) != sl2_order(N):
        raise InvalidInput(f"|H| = {len(H)} does not divide |SL2(Z/{N})|")

    def key(x):
        return min(mul_mod(h, x, N) for h in H)

    gmod = {w: reduce_mod(GENERATORS[w], N).entries for w in BFS_ORDER}
    start = key(reduce_mod(IDENTITY, N).entries)
    index = {start: 0}
    reps = [reduce_mod(IDENTITY, N).entries]
    witnesses = [IDENTITY]
    action: dict[str, list[int]] = {"S": [], "T": []}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for w in BFS_ORDER:
            y = mul_mod(reps[i], gmod[w], N)
            k = key(y)
            j = index.get(k)
            if j is None:
                j = len(reps)
                index[k] = j
                reps.append(y)
                witnesses.append(multiply(witnesses[i], GENERATORS[w]))
                queue.append(j)
    n = len(reps)
    if n != expected:
        raise InvalidInput(f"coset enumeration reached {n} cosets, expected {expected}")
    for w in ("S", "T"):
        action[w] = [index[key(mul_mod(reps[i], gmod[w], N))] for i in range(n)]
    rep = PermutationRep(n, tuple(action["S"]), tuple(action["T"]), tuple(witnesses), spec.label)
    minus_one = is_identity(minus_one_perm(rep))
    if minus_one != (reduce_mod((-1, 0, 0, -1), N).entries in set(H)):
        raise InvalidInput("coset action of S^2 disagrees with membership of -1 in H")
    return Subgroup(rep, spec, minus_one)


# -- validation and permutation input --------------------------------------

def validate(rep: PermutationRep) -> list[str]:
    """Return every violated invariant of ``rep``; an empty list means valid."""
    n = rep.n
    problems = []
    if not isinstance(n, int) or n < 1:
        return [f"shape: n must be a positive integer, got {n!r}"]
    for name, p in (("sigma_s", rep.sigma_s), ("sigma_t", rep.sigma_t)):
        if len(p) != n:
            problems.append(f"shape: {name} has length {len(p)}, expected {n}")
        elif sorted(p) != list(range(n)):
            problems.append(f"shape: {name} is not a permutation of 0..{n - 1}")
    if problems:
        return problems

    s, t = tuple(rep.sigma_s), tuple(rep.sigma_t)
    s2 = compose(s, s)
    u = compose(s, t)
    u3 = perm_power(u, 3)
    if not is_identity(compose(s2, s2)):
        problems.append("relation: S^4 != 1")
    if not is_identity(perm_power(u, 6)):
        problems.append("relation: (ST)^6 != 1")
    if u3 != s2:
        problems.append("relation: S^2 != (ST)^3")
    if compose(s2, t) != compose(t, s2):
        problems.append("relation: S^2 does not commute with T")
    fixed = sum(1 for i in range(n) if s2[i] == i)
    if 0 < fixed < n:
        problems.append(f"minus-one: S^2 fixes {fixed} of {n} cosets (must be all or none)")

    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in (s[i], t[i]):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        problems.append(f"transitivity: orbit of coset 0 has {len(seen)} of {n} cosets")
    return problems


def bfs_witnesses(rep: PermutationRep) -> tuple[MatZ, ...]:
    """Rebuild BFS-shortest coset witnesses from the permutations alone."""
    perms = generator_perms(rep)
    wit: list[MatZ | None] = [None] * rep.n
    wit[0] = IDENTITY
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for w in BFS_ORDER:
            j = perms[w][i]
            if wit[j] is None:
                wit[j] = multiply(wit[i], GENERATORS[w])
                queue.append(j)
    if any(w is None for w in wit):
        raise InvalidRepresentation(["transitivity: some cosets unreachable from coset 0"])
    return tuple(wit)


def from_permutations(n, sigma_s, sigma_t, label="permutation-input") -> Subgroup:
    rep = PermutationRep(n, tuple(sigma_s), tuple(sigma_t), (), label)
    problems = validate(rep)
    if problems:
        raise InvalidRepresentation(problems)
    rep = PermutationRep(n, rep.sigma_s, rep.sigma_t, bfs_witnesses(rep), label)
    return Subgroup(rep, None, is_identity(minus_one_perm(rep)))


def export_permutation(G: Subgroup) -> dict:
    return {
        "n": G.rep.n,
        "sigma_s": list(G.rep.sigma_s),
        "sigma_t": list(G.rep.sigma_t),
        "label": G.rep.label,
    }


def dumps_permutation(G: Subgroup) -> str:
    return json.dumps(export_permutation(G), separators=(", ", ": ")) + "\n"


def load_permutation(document: str | bytes | dict) -> Subgroup:
    """Parse and validate a permutation document.

    Accepts the JSON text or an already decoded mapping with keys ``n``,
    ``sigma_s``, ``sigma_t`` and optionally ``label``.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"permutation document is not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise InvalidInput("permutation document must be a JSON object")
    missing = [k for k in ("n", "sigma_s", "sigma_t") if k not in document]
    if missing:
        raise InvalidInput(f"permutation document lacks {', '.join(missing)}")
    n, s, t = document["n"], document["sigma_s"], document["sigma_t"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidInput("'n' must be an integer")
    for name, arr in (("sigma_s", s), ("sigma_t", t)):
        if not isinstance(arr, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in arr):
            raise InvalidInput(f"{name!r} must be a list of integers")
        if len(arr) != n:
            raise InvalidInput(f"{name!r} has length {len(arr)} but n = {n}")
    label = document.get("label", "permutation-input")
    if not isinstance(label, str):
        raise InvalidInput("'label' must be a string")
    return from_permutations(n, s, t, label)


def contains_minus_one(G: Subgroup) -> bool:
    return is_identity(minus_one_perm(G.rep))
