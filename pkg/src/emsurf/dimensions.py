"""Both sides of the graded dimension identities.

Side A is the modular-forms dimension formula for weight 3m.  Side B is
h^0(K_S^m(m D_reg + [m/2] D_irr)) obtained from the canonical bundle formula
and Riemann-Roch on X_Gamma.  The even-weight ladder and the canonical ring
are computed the same way.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .curve import CurveInvariants, curve_invariants, require_no_minus_one
from .errors import AmbiguousRange, InconsistentInvariants
from .subgroup import Subgroup
from .surface import (
    FiberConfiguration,
    SurfaceInvariants,
    fiber_configuration,
    surface_invariants,
)


@dataclass(frozen=True)
class WeightEntry:
    m: int
    side_a: int
    side_b: int

    @property
    def weight(self) -> int:
        return 3 * self.m

    @property
    def agree(self) -> bool:
        return self.side_a == self.side_b


@dataclass(frozen=True)
class EvenWeightEntry:
    m: int
    dim: int

    @property
    def weight(self) -> int:
        return 2 * self.m


@dataclass(frozen=True)
class CanonicalEntry:
    m: int
    dim: int


@dataclass
class DimensionReport:
    label: str
    curve: CurveInvariants
    fibers: FiberConfiguration
    surface: SurfaceInvariants
    entries: list[WeightEntry]
    even_entries: list[EvenWeightEntry]
    canonical_entries: list[CanonicalEntry]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(e.agree for e in self.entries) and all(self.checks.values())


def rr_h0(g: int, deg: int) -> int:
    """Sections of a degree ``deg`` line bundle on a genus ``g`` curve, when forced by degree."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    if deg < 0:
        return 0
    if deg > 2 * g - 2:
        return deg + 1 - g
    raise AmbiguousRange(f"h^0 is not determined by degree {deg} on a genus {g} curve")


def dim_m3m_formula(ci: CurveInvariants, m: int) -> int:
    """dim M_{3m}(Gamma) from the classical dimension formula."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 1
    if (3 * m * ci.eps_reg) % 2:
        raise InconsistentInvariants(
            f"(3m/2) * eps_reg is not integral for m={m}, eps_reg={ci.eps_reg}"
        )
    value = (
        (3 * m - 1) * (ci.g - 1)
        + m * ci.eps3
        + (3 * m * ci.eps_reg) // 2
        + (3 * m // 2) * ci.eps_irr
    )
    if value < 0:
        raise InconsistentInvariants(f"negative dimension {value} at m={m}")
    return value


def _h0_checked(g: int, deg: int, what: str) -> int:
    try:
        return rr_h0(g, deg)
    except AmbiguousRange as exc:
        raise InconsistentInvariants(f"{what}: {exc}") from exc


def geometric_degree(ci: CurveInvariants, si: SurfaceInvariants, m: int) -> int:
    """Degree on X_Gamma of the push-forward of K_S^m(m D_reg + [m/2] D_irr)."""
    return m * (2 * ci.g - 2) + m * si.chi + m * ci.eps_reg + (m // 2) * ci.eps_irr


def dim_geometric(ci: CurveInvariants, si: SurfaceInvariants, m: int) -> int:
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 1
    return _h0_checked(ci.g, geometric_degree(ci, si, m), f"log-canonical m={m}")


def dim_even_weight(ci: CurveInvariants, m: int) -> int:
    """dim M_{2m}(Gamma) as h^0(K_X^m(m(Delta + 2/3 B)))."""
    if m < 1:
        raise ValueError("m must be >= 1")
    deg = m * (2 * ci.g - 2) + m * ci.eps_cusps + (2 * m // 3) * ci.eps3
    return _h0_checked(ci.g, deg, f"even weight m={m}")


def dim_canonical_ring(ci: CurveInvariants, si: SurfaceInvariants, m: int) -> int:
    """h^0(K_S^m), the weight-3m forms vanishing to order >= m at every cusp."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 1
    return _h0_checked(ci.g, m * (2 * ci.g - 2) + m * si.chi, f"canonical m={m}")


def verify_invariants(label: str, ci: CurveInvariants, m_max: int) -> DimensionReport:
    fc = fiber_configuration(ci)
    si = surface_invariants(ci, fc)
    entries = [WeightEntry(m, dim_m3m_formula(ci, m), dim_geometric(ci, si, m)) for m in range(m_max + 1)]
    even = [EvenWeightEntry(m, dim_even_weight(ci, m)) for m in range(1, 3 * m_max // 2 + 1)]
    canon = [CanonicalEntry(m, dim_canonical_ring(ci, si, m)) for m in range(m_max + 1)]

    even_by_m = {e.m: e.dim for e in even}
    sixfold = all(
        dim_m3m_formula(ci, w // 3) == even_by_m[w // 2]
        for w in range(6, 3 * m_max + 1, 6)
    )
    checks = {
        "theorem_identity": all(e.agree for e in entries),
        "sixfold": sixfold,
        "eisenstein": dim_m3m_formula(ci, 1) - si.p_g == ci.eps_reg,
        "cusp_width_sum": sum(c.psl_width for c in ci.cusps) == ci.mu,
        "euler_divisible": si.e % 12 == 0,
        "canonical_pg": dim_canonical_ring(ci, si, 1) == si.p_g,
    }
    return DimensionReport(label, ci, fc, si, entries, even, canon, checks)


def verify_group(G: Subgroup, m_max: int = 12) -> DimensionReport:
    """Compare both sides of the weight-3m identity for m = 0..m_max."""
    require_no_minus_one(G)
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    return verify_invariants(G.label, curve_invariants(G), m_max)
