"""Exact 2x2 integer matrices, reductions mod N and words in S, T.

Matrices are plain 4-tuples ``(a, b, c, d)`` read row-major.  Entries are
Python ints, but every product is checked against a signed 64-bit bound so
that runaway words are reported instead of silently growing.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

INT_BOUND = 2**63


class MatZ(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "MatZ") -> "MatZ":
        return multiply(self, other)

    def inverse(self) -> "MatZ":
        # det 1 only
        return MatZ(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "MatZ":
        return MatZ(-self.a, -self.b, -self.c, -self.d)


class MatModN(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    N: int

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.N


IDENTITY = MatZ(1, 0, 0, 1)
MINUS_ONE = MatZ(-1, 0, 0, -1)
S = MatZ(0, -1, 1, 0)
T = MatZ(1, 1, 0, 1)
S_INV = S.inverse()
T_INV = T.inverse()
U = MatZ(0, -1, 1, 1)  # S*T

GENERATORS = {"S": S, "S^-1": S_INV, "T": T, "T^-1": T_INV}
_ALIASES = {"S": "S", "s": "S", "S^-1": "S^-1", "S-": "S^-1", "Si": "S^-1", "s^-1": "S^-1",
            "T": "T", "t": "T", "T^-1": "T^-1", "T-": "T^-1", "Ti": "T^-1", "t^-1": "T^-1"}


def _check(v: int) -> int:
    if not -INT_BOUND <= v < INT_BOUND:
        raise OverflowError(f"matrix entry {v} exceeds the 64-bit range")
    return v


def multiply(x: MatZ, y: MatZ) -> MatZ:
    """Exact product ``x * y``; raises OverflowError outside the 64-bit range."""
    return MatZ(
        _check(x.a * y.a + x.b * y.c),
        _check(x.a * y.b + x.b * y.d),
        _check(x.c * y.a + x.d * y.c),
        _check(x.c * y.b + x.d * y.d),
    )


def power(x: MatZ, k: int) -> MatZ:
    if k < 0:
        x, k = x.inverse(), -k
    out = IDENTITY
    for _ in range(k):
        out = multiply(out, x)
    return out


def reduce_mod(x: MatZ | tuple, N: int) -> MatModN:
    if N < 1:
        raise ValueError(f"modulus must be >= 1, got {N}")
    a, b, c, d = x[:4]
    return MatModN(a % N, b % N, c % N, d % N, N)


def mul_mod(x: tuple, y: tuple, N: int) -> tuple[int, int, int, int]:
    """Product of two 4-tuples mod N, returned as a bare tuple (hot path)."""
    a, b, c, d = x[:4]
    e, f, g, h = y[:4]
    return ((a * e + b * g) % N, (a * f + b * h) % N, (c * e + d * g) % N, (c * f + d * h) % N)


def inv_mod(x: tuple, N: int) -> tuple[int, int, int, int]:
    a, b, c, d = x[:4]
    return (d % N, -b % N, -c % N, a % N)


def parse_word(text: str) -> list[str]:
    """Split a whitespace separated word such as ``"S T T^-1"``."""
    letters = []
    for tok in text.split():
        if tok not in _ALIASES:
            raise ValueError(f"unknown generator {tok!r}")
        letters.append(_ALIASES[tok])
    return letters


def word_to_matrix(word: str | Iterable[str]) -> MatZ:
    """Left-to-right product of generator matrices; the empty word is I."""
    letters = parse_word(word) if isinstance(word, str) else [_ALIASES[w] for w in word]
    out = IDENTITY
    for w in letters:
        out = multiply(out, GENERATORS[w])
    return out
