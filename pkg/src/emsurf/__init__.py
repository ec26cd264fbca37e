"""Invariants of subgroups of SL2(Z) and their elliptic modular surfaces."""

from .curve import Cusp, CurveInvariants, curve_invariants, cusps, elliptic_count, genus
from .dimensions import (
    DimensionReport,
    WeightEntry,
    dim_canonical_ring,
    dim_even_weight,
    dim_geometric,
    dim_m3m_formula,
    rr_h0,
    verify_group,
)
from .errors import (
    AmbiguousRange,
    EmsurfError,
    InconsistentInvariants,
    InvalidInput,
    InvalidRepresentation,
    MinusOneInGroup,
)
from .subgroup import (
    CongruenceSpec,
    PermutationRep,
    Subgroup,
    build_congruence,
    builtin_spec,
    contains_minus_one,
    export_permutation,
    load_permutation,
    validate,
)
from .surface import FiberType, euler_number, fiber_configuration, surface_invariants

__version__ = "0.1.0"
