"""Brute-force curve invariants inside the finite group SL2(Z/N).

Nothing here touches the coset BFS or the permutation representation: the
whole group is enumerated, cosets are formed as explicit sets, and cusps are
orbits on primitive vectors of (Z/N)^2.  Only the matrix helpers are shared
with the main pipeline, which is what makes :func:`crosscheck` meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .errors import EmsurfError, InvalidInput
from .sl2 import IDENTITY, MatZ, U, inv_mod, mul_mod, multiply, power, reduce_mod, T

MAX_LEVEL = 30

Quad = tuple[int, int, int, int]


@dataclass(frozen=True)
class FiniteGroupTable:
    N: int
    elements: tuple[Quad, ...]
    H: frozenset[Quad]


@dataclass(frozen=True)
class CosetSpace:
    N: int
    group_order: int
    subgroup_order: int
    cosets: int
    eps3: int
    minus_one: bool

    @property
    def mu(self) -> int:
        return self.cosets if self.minus_one else self.cosets // 2


@dataclass(frozen=True)
class OracleInvariants:
    mu: int
    eps3: int
    g: int
    cusps: tuple[tuple[int, bool], ...]  # sorted (psl_width, regular)


def _guard(N: int, max_level: int) -> None:
    if N < 1:
        raise InvalidInput(f"level must be >= 1, got {N}")
    if N > max_level:
        raise InvalidInput(f"oracle refuses level {N} > {max_level} (memory guard)")


def sl2_elements(N: int) -> list[Quad]:
    """Every matrix over Z/N with determinant 1, in lexicographic order."""
    one = 1 % N
    r = range(N)
    return [(a, b, c, d) for a in r for b in r for c in r for d in r if (a * d - b * c) % N == one]


def _as_quads(H: Iterable, N: int) -> set[Quad]:
    return {reduce_mod(tuple(h), N).entries for h in H}


def group_table(N: int, generators: Iterable, max_level: int = MAX_LEVEL) -> FiniteGroupTable:
    """Exhaustive SL2(Z/N) and the subgroup generated by ``generators``."""
    _guard(N, max_level)
    elements = sl2_elements(N)
    H = {reduce_mod(IDENTITY, N).entries}
    gens = _as_quads(generators, N)
    # naive closure: multiply everything by everything until stable
    while True:
        new = {mul_mod(x, g, N) for x in H for g in gens} - H
        if not new:
            break
        H |= new
    return FiniteGroupTable(N, tuple(elements), frozenset(H))


def _coset_ids(table: FiniteGroupTable) -> tuple[dict[Quad, int], list[Quad]]:
    N = table.N
    cid: dict[Quad, int] = {}
    reps: list[Quad] = []
    for x in table.elements:
        if x in cid:
            continue
        for h in table.H:
            cid[mul_mod(h, x, N)] = len(reps)
        reps.append(x)
    return cid, reps


def brute_coset_space(N: int, generators: Iterable = (), max_level: int = MAX_LEVEL) -> CosetSpace:
    table = group_table(N, generators, max_level)
    cid, reps = _coset_ids(table)
    u2 = reduce_mod(multiply(U, U), N).entries
    fixed = 0
    for x in reps:
        if mul_mod(mul_mod(x, u2, N), inv_mod(x, N), N) in table.H:
            fixed += 1
    minus = reduce_mod((-1, 0, 0, -1), N).entries in table.H
    # with -1 in H each elliptic point gives one fixed coset, otherwise two
    eps3 = fixed if minus else fixed // 2
    if not minus and fixed % 2:
        raise EmsurfError(f"odd number of (ST)^2-fixed cosets ({fixed})")
    return CosetSpace(N, len(table.elements), len(table.H), len(reps), eps3, minus)


def lift_column(a0: int, c0: int, N: int) -> MatZ:
    """Some gamma in SL2(Z) whose first column reduces to (a0, c0) mod N."""
    if N == 1:
        return IDENTITY
    c = c0 % N or N
    a = a0 % N
    while gcd(a, c) != 1:
        a += N
    # extended Euclid for a*d - b*c = 1
    old_r, r, old_s, s = a, c, 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    d = old_s
    b = (a * d - 1) // c
    gamma = MatZ(a, b, c, d)
    assert gamma.det() == 1
    return gamma


def brute_cusps(N: int, generators: Iterable = (), max_level: int = MAX_LEVEL) -> list[tuple[int, bool]]:
    """Sorted multiset of (psl_width, regular) over the cusps."""
    table = group_table(N, generators, max_level)
    H = table.H
    minus = reduce_mod((-1, 0, 0, -1), N).entries
    if minus in H:
        raise InvalidInput("brute_cusps needs -1 outside H")
    act = list(H) + [mul_mod(minus, h, N) for h in H]
    vectors = [(a, c) for a in range(N) for c in range(N) if gcd(gcd(a, c), N) == 1]
    seen: set[tuple[int, int]] = set()
    out = []
    for v in vectors:
        if v in seen:
            continue
        for h in act:
            seen.add(((h[0] * v[0] + h[1] * v[1]) % N, (h[2] * v[0] + h[3] * v[1]) % N))
        gamma = lift_column(v[0], v[1], N)
        ginv = gamma.inverse()
        for h in range(1, N + 1):
            conj = reduce_mod(multiply(multiply(gamma, power(T, h)), ginv), N).entries
            if conj in H:
                out.append((h, True))
                break
            if mul_mod(minus, conj, N) in H:
                out.append((h, False))
                break
        else:
            raise EmsurfError(f"no cusp width found within {N} for vector {v}")
    return sorted(out)


def oracle_invariants(N: int, generators: Iterable = (), max_level: int = MAX_LEVEL) -> OracleInvariants:
    generators = list(generators)
    space = brute_coset_space(N, generators, max_level)
    if space.minus_one:
        raise InvalidInput("oracle invariants need -1 outside H")
    cs = brute_cusps(N, generators, max_level)
    twelve_g = 12 + space.mu - 4 * space.eps3 - 6 * len(cs)
    if twelve_g % 12:
        raise EmsurfError("oracle genus is not an integer")
    return OracleInvariants(space.mu, space.eps3, twelve_g // 12, tuple(cs))


def crosscheck(G, max_level: int = MAX_LEVEL) -> list[str]:
    """Field-by-field comparison of the main pipeline against the oracle."""
    from .curve import curve_invariants
    from .subgroup import validate

    if G.origin is None:
        raise InvalidInput("the oracle needs a congruence spec, not a bare permutation representation")
    spec = G.origin
    gens = [g.entries for g in spec.generators]
    issues = [f"representation: {v}" for v in validate(G.rep)]
    space = brute_coset_space(spec.level, gens, max_level)
    if space.cosets != G.rep.n:
        issues.append(f"index: main {G.rep.n}, oracle {space.cosets}")
    if space.minus_one != G.minus_one:
        issues.append(f"minus_one: main {G.minus_one}, oracle {space.minus_one}")
    if space.minus_one or issues:
        return issues
    ref = oracle_invariants(spec.level, gens, max_level)
    try:
        ci = curve_invariants(G)
    except EmsurfError as exc:
        return issues + [f"main path failed: {exc}"]
    for name, main, other in (
        ("mu", ci.mu, ref.mu),
        ("eps3", ci.eps3, ref.eps3),
        ("g", ci.g, ref.g),
        ("cusps", ci.cusp_multiset(), list(ref.cusps)),
    ):
        if main != other:
            issues.append(f"{name}: main {main}, oracle {other}")
    return issues
