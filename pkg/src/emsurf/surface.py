"""Singular fibres and numerical invariants of the elliptic modular surface."""
from __future__ import annotations

from dataclasses import dataclass

from .curve import CurveInvariants
from .errors import InconsistentInvariants


@dataclass(frozen=True)
class FiberType:
    kind: str  # "I", "I*" or "IV*"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("I", "I*", "IV*"):
            raise ValueError(f"unknown Kodaira type {self.kind!r}")
        if self.kind != "IV*" and self.n < 1:
            raise ValueError(f"{self.kind} needs n >= 1")

    @classmethod
    def I(cls, n: int) -> "FiberType":
        return cls("I", n)

    @classmethod
    def Istar(cls, n: int) -> "FiberType":
        return cls("I*", n)

    @classmethod
    def IVstar(cls) -> "FiberType":
        return cls("IV*")

    @property
    def euler(self) -> int:
        if self.kind == "I":
            return self.n
        if self.kind == "I*":
            return self.n + 6
        return 8

    def __str__(self) -> str:
        if self.kind == "IV*":
            return "IV*"
        return f"I{self.n}" if self.kind == "I" else f"I{self.n}*"


@dataclass(frozen=True)
class FiberConfiguration:
    fibers: tuple[tuple[str, FiberType], ...]

    def types(self) -> list[FiberType]:
        return [f for _, f in self.fibers]

    def count(self, kind: str) -> int:
        return sum(1 for f in self.types() if f.kind == kind)


@dataclass(frozen=True)
class SurfaceInvariants:
    e: int
    chi: int
    q: int
    p_g: int
    degL: int

    @property
    def kodaira_class(self) -> str:
        # informative only
        if self.chi == 1 and self.q == 0:
            return "rational"
        if self.chi == 2 and self.q == 0:
            return "K3"
        return "properly elliptic" if self.chi + 2 * self.q > 2 else "elliptic"


def fiber_configuration(ci: CurveInvariants) -> FiberConfiguration:
    """I_h over regular cusps, I_h* over irregular ones, IV* over order-3 points.

    ``h`` is the PSL-width of the cusp.
    """
    fibers = []
    for c in ci.cusps:
        ft = FiberType.I(c.psl_width) if c.regular else FiberType.Istar(c.psl_width)
        fibers.append((c.label, ft))
    for k in range(ci.eps3):
        fibers.append((f"e3#{k}", FiberType.IVstar()))
    return FiberConfiguration(tuple(fibers))


def euler_number(fc: FiberConfiguration) -> int:
    return sum(f.euler for f in fc.types())


def surface_invariants(ci: CurveInvariants, fc: FiberConfiguration) -> SurfaceInvariants:
    e = euler_number(fc)
    if e % 12:
        raise InconsistentInvariants(f"Euler number {e} is not divisible by 12; fibre typing is wrong")
    chi = e // 12
    if chi < 1:
        raise InconsistentInvariants(f"chi = {chi} < 1")
    p_g = chi - 1 + ci.g
    return SurfaceInvariants(e=e, chi=chi, q=ci.g, p_g=p_g, degL=chi)
