"""Finite Stone duality, computed exactly.

Boolean algebras as operation tables, their ultrafilter spaces, the
duality functors between them, p-adic residue towers, clopens of Z_p,
and regular-open algebras of finite Alexandrov spaces.
"""
from .errors import *  # noqa: F401,F403
from .bool_core import (
    TWO, AtomBasis, BoolHom, FiniteBoolAlgebra, PowersetAlgebra, atoms, check_hom, compose_homs,
    homs_to_two, idempotent_algebra, identity_hom, is_isomorphism, leq, powerset_algebra,
    subalgebra_generated, validate_algebra,
)
from .filters import (
    Filter, Ultrafilter, enumerate_ultrafilters, extend_to_ultrafilter, filter_generated,
    hom_to_ultrafilter, is_filter, is_ultrafilter, principal_filter, ultrafilter_to_hom,
)
from .stone import (
    ClopenSetFin, ContinuousMapFin, FiniteSpace, StoneSpaceFin, beta_extend, beta_finite, clop,
    clop_pullback, compose_maps, dual_map, eta, gleason_lift, hat, identity_map,
    naturality_check, phi, stone_space,
)
from .profinite import (
    InverseSystemFin, LimitPoint, PadicInt, ZhatElement, cantor_digits, check_point,
    digits_to_padic, make_system, moduli_closure, padic_add, padic_from_int, padic_mul,
    padic_neg, residue_chain, zhat_compatible, zhat_from_int, zhat_reduce,
)
from .clopen_zp import (
    LevelAlgebra, ZpClopen, ball, clopen_complement, clopen_difference, clopen_intersection,
    clopen_subset, clopen_union, granule_operator, inclusion_hom, level_algebra, member,
    normalize, reduction_map,
)
from .alexandrov_ro import (
    AlexandrovSpace, FinitePoset, clopens, closure, interior, is_ED, regularize, ro_algebra,
    ro_inf, ro_sup,
)
from .dot import export_dot

__version__ = "0.1.0"
