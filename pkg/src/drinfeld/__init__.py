"""Drinfeld modules over F_q[t]: supersingular loci, Brandt matrices and Hecke eigensystems mod v."""

from __future__ import annotations

from .brandt import (
    BrandtMatrix,
    EigenReport,
    brandt_matrix,
    eigensystems,
    jl_compare,
    moduli_eigensystems,
    restriction_equivariance,
    verify_periodicity,
)
from .drinfeld import (
    ConsistencyError,
    DrinfeldError,
    DrinfeldModule,
    ResourceCap,
    ValuedModule,
    automorphisms,
    frobenius_charpoly,
    height_at_v,
    is_isomorphic,
    is_supersingular,
    motive_charpoly,
    phi_of,
    quotient_isogeny,
    stable_model,
    torsion_module,
    v_rank,
    weil_number_check,
)
from .fields import GF, field
from .moduli import (
    DegenerationPath,
    GradedForm,
    InterpolationResidual,
    ModuliPoint,
    ModuliSpace,
    component_count,
    hecke_on_form,
    limit_module,
    module_from_point,
    ss_points_level_t,
)
from .polya import PolyA, PrimeP
from .skew import SkewPoly
from .spherical_hecke import HeckeElement, coset_reps, convolve, lattice_count
from .supersingular import dim_formula, enumerate_ss, leveled_ss_set, mass

__version__ = "0.1.0"

__all__ = [
    "BrandtMatrix",
    "ConsistencyError",
    "DegenerationPath",
    "DrinfeldError",
    "DrinfeldModule",
    "EigenReport",
    "GF",
    "GradedForm",
    "HeckeElement",
    "InterpolationResidual",
    "ModuliPoint",
    "ModuliSpace",
    "PolyA",
    "PrimeP",
    "ResourceCap",
    "SkewPoly",
    "ValuedModule",
    "automorphisms",
    "brandt_matrix",
    "component_count",
    "convolve",
    "coset_reps",
    "dim_formula",
    "eigensystems",
    "enumerate_ss",
    "field",
    "frobenius_charpoly",
    "hecke_on_form",
    "height_at_v",
    "is_isomorphic",
    "is_supersingular",
    "jl_compare",
    "lattice_count",
    "leveled_ss_set",
    "limit_module",
    "mass",
    "module_from_point",
    "moduli_eigensystems",
    "motive_charpoly",
    "phi_of",
    "quotient_isogeny",
    "restriction_equivariance",
    "ss_points_level_t",
    "stable_model",
    "torsion_module",
    "v_rank",
    "verify_periodicity",
    "weil_number_check",
]
