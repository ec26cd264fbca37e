"""Group spec grammar and on-disk permutation cache.

    spec := "gamma:" INT | "gamma1:" INT | "image:" INT ":" PATH | "perm:" PATH
"""
from __future__ import annotations

import hashlib
import os
import re
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import InvalidInput
from .sl2 import MatModN
from .subgroup import (
    CongruenceSpec,
    Subgroup,
    build_congruence,
    builtin_spec,
    dumps_permutation,
    load_permutation,
)

_INT = re.compile(r"[0-9]+")


class SpecSyntaxError(InvalidInput):
    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos = text, pos
        super().__init__(f"{msg} at position {pos} in {text!r}")


@dataclass(frozen=True)
class PermRef:
    path: Path
    text: str


def _int_at(text: str, pos: int) -> tuple[int, int]:
    m = _INT.match(text, pos)
    if not m:
        raise SpecSyntaxError(text, pos, "expected a positive integer")
    value = int(m.group())
    if value < 1:
        raise SpecSyntaxError(text, pos, f"level must be >= 1, got {value}")
    return value, m.end()


def read_generator_file(path: Path, N: int, label: str) -> CongruenceSpec:
    """Read generators of H: one matrix per line as ``a b c d``; ``#`` starts a comment."""
    gens = []
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    for lineno, line in enumerate(lines, 1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 4:
            raise InvalidInput(f"{path}:{lineno}: expected 4 integers, got {len(body)}")
        try:
            a, b, c, d = (int(x) for x in body)
        except ValueError:
            raise InvalidInput(f"{path}:{lineno}: non-integer entry") from None
        gens.append(MatModN(a % N, b % N, c % N, d % N, N))
    return CongruenceSpec(N, tuple(gens), label)


def parse_group_spec(text: str) -> CongruenceSpec | PermRef:
    text = text.strip()
    head, sep, _ = text.partition(":")
    if not sep:
        raise SpecSyntaxError(text, len(text), "missing ':'")
    pos = len(head) + 1
    if head in ("gamma", "gamma1"):
        N, end = _int_at(text, pos)
        if end != len(text):
            raise SpecSyntaxError(text, end, "unexpected trailing characters")
        return builtin_spec(head, N)
    if head == "image":
        N, end = _int_at(text, pos)
        if end >= len(text) or text[end] != ":":
            raise SpecSyntaxError(text, end, "expected ':' before the generator file")
        path = Path(text[end + 1:])
        if not text[end + 1:] or not path.is_file():
            raise InvalidInput(f"generator file {str(path)!r} does not exist")
        return read_generator_file(path, N, text)
    if head == "perm":
        path = Path(text[pos:])
        if not text[pos:] or not path.is_file():
            raise InvalidInput(f"permutation file {str(path)!r} does not exist")
        return PermRef(path, text)
    raise SpecSyntaxError(text, 0, f"unknown spec family {head!r}")


def canonical_key(spec: CongruenceSpec) -> str:
    """Textual key identifying the preimage group independently of file names."""
    if re.fullmatch(r"gamma1?:[0-9]+", spec.label):
        return spec.label
    gens = ";".join(" ".join(map(str, g.entries)) for g in sorted(spec.generators))
    return f"image:{spec.level}:{gens}"


def default_cache_dir() -> Path:
    env = os.environ.get("EMSURF_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "emsurf"


class PermutationCache:
    """Stores coset permutations of congruence groups, keyed by canonical spec."""

    def __init__(self, root: Path | None):
        self.root = Path(root) if root is not None else None

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode()).hexdigest()[:20]
        safe = re.sub(r"[^A-Za-z0-9]+", "_", key)[:40]
        return self.root / "perm" / f"{safe}-{digest}.json"

    def get(self, spec: CongruenceSpec) -> Subgroup | None:
        if self.root is None:
            return None
        path = self._path(canonical_key(spec))
        if not path.is_file():
            return None
        try:
            G = load_permutation(path.read_text())
        except InvalidInput:
            return None
        return Subgroup(replace(G.rep, label=spec.label), spec, G.minus_one)

    def put(self, spec: CongruenceSpec, G: Subgroup) -> None:
        if self.root is None:
            return
        path = self._path(canonical_key(spec))
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(dumps_permutation(G))
        tmp.replace(path)


def resolve(text: str, cache: PermutationCache | None = None) -> Subgroup:
    parsed = parse_group_spec(text)
    if isinstance(parsed, PermRef):
        try:
            return load_permutation(parsed.path.read_text())
        except OSError as exc:
            raise InvalidInput(f"cannot read {parsed.path}: {exc.strerror}") from None
    if cache is not None:
        hit = cache.get(parsed)
        if hit is not None:
            return hit
    G = build_congruence(parsed)
    if cache is not None:
        cache.put(parsed, G)
    return G
