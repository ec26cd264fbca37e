"""Cusps, elliptic points and genus of the modular curve X_Gamma."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistentInvariants, MinusOneInGroup
from .sl2 import MatZ
from .subgroup import Subgroup, compose, contains_minus_one, perm_power


@dataclass(frozen=True)
class Cusp:
    id: int
    witness: MatZ
    label: str
    psl_width: int
    sl_width: int
    regular: bool
    cosets: tuple[int, ...]  # T-orbit(s) consumed by this cusp


@dataclass(frozen=True)
class CurveInvariants:
    mu: int
    g: int
    eps2: int
    eps3: int
    eps_reg: int
    eps_irr: int
    cusps: tuple[Cusp, ...]

    @property
    def eps_cusps(self) -> int:
        return self.eps_reg + self.eps_irr

    def cusp_multiset(self) -> list[tuple[int, bool]]:
        return sorted((c.psl_width, c.regular) for c in self.cusps)


def require_no_minus_one(G: Subgroup) -> None:
    if contains_minus_one(G):
        raise MinusOneInGroup(G.label)


def cusp_label(witness: MatZ) -> str:
    a, c = witness.a, witness.c
    if c == 0:
        return "inf"
    x = Fraction(a, c)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _t_orbits(sigma_t) -> tuple[list[int], list[list[int]]]:
    """Orbit id of each coset and the orbits themselves, ordered by least member."""
    n = len(sigma_t)
    owner = [-1] * n
    orbits: list[list[int]] = []
    for i in range(n):
        if owner[i] >= 0:
            continue
        orbit, j = [], i
        while owner[j] < 0:
            owner[j] = len(orbits)
            orbit.append(j)
            j = sigma_t[j]
        orbits.append(orbit)
    return owner, orbits


def cusps(G: Subgroup) -> list[Cusp]:
    """Cusps from the <T>-orbits on cosets.

    A cusp is irregular exactly when -1 maps its T-orbit to itself; a regular
    cusp owns two T-orbits swapped by -1.
    """
    require_no_minus_one(G)
    rep = G.rep
    minus = compose(rep.sigma_s, rep.sigma_s)
    owner, orbits = _t_orbits(rep.sigma_t)
    consumed = [False] * len(orbits)
    out: list[Cusp] = []
    for k, orbit in enumerate(orbits):
        if consumed[k]:
            continue
        i = orbit[0]
        other = owner[minus[i]]
        size = len(orbit)
        if other == k:
            if size % 2:
                raise InconsistentInvariants(f"irregular T-orbit of odd size {size} at coset {i}")
            psl, sl, regular, members = size // 2, size, False, tuple(orbit)
        else:
            if consumed[other] or len(orbits[other]) != size:
                raise InconsistentInvariants(f"-1 pairs T-orbits of unequal size at coset {i}")
            consumed[other] = True
            psl, sl, regular, members = size, size, True, tuple(orbit) + tuple(orbits[other])
        consumed[k] = True
        w = rep.witnesses[i]
        out.append(Cusp(len(out), w, cusp_label(w), psl, sl, regular, members))
    return out


def elliptic_count(G: Subgroup) -> tuple[int, int]:
    """(eps2, eps3).  eps2 is always 0 for groups without -1 and is checked, not assumed."""
    require_no_minus_one(G)
    rep = G.rep
    s = rep.sigma_s
    if any(s[i] == i for i in range(rep.n)):
        raise InconsistentInvariants("S fixes a coset although -1 is not in the group")
    minus = compose(s, s)
    if any(minus[i] == i for i in range(rep.n)):
        raise InconsistentInvariants("-1 fixes a coset although -1 is not in the group")
    u2 = perm_power(compose(s, rep.sigma_t), 2)
    fixed = sum(1 for i in range(rep.n) if u2[i] == i)
    if fixed % 2:
        raise InconsistentInvariants(f"(ST)^2 fixes an odd number ({fixed}) of cosets")
    return 0, fixed // 2


def genus(mu: int, eps3: int, eps_cusps: int, eps2: int = 0) -> int:
    """Riemann-Hurwitz for X_Gamma -> X(1): g = 1 + mu/12 - e2/4 - e3/3 - e_inf/2."""
    twelve_g = 12 + mu - 3 * eps2 - 4 * eps3 - 6 * eps_cusps
    if twelve_g % 12 or twelve_g < 0:
        raise InconsistentInvariants(
            f"genus formula gives {Fraction(twelve_g, 12)} for mu={mu}, e3={eps3}, e_inf={eps_cusps}"
        )
    return twelve_g // 12


def curve_invariants(G: Subgroup) -> CurveInvariants:
    require_no_minus_one(G)
    cs = cusps(G)
    eps2, eps3 = elliptic_count(G)
    mu = G.rep.n // 2
    if sum(c.psl_width for c in cs) != mu:
        raise InconsistentInvariants("cusp widths do not sum to the index")
    eps_reg = sum(1 for c in cs if c.regular)
    eps_irr = len(cs) - eps_reg
    g = genus(mu, eps3, len(cs), eps2)
    return CurveInvariants(mu, g, eps2, eps3, eps_reg, eps_irr, tuple(cs))
