"""Exact su(N) tensor products, affine fusion rules, threshold levels and fusion bases."""

from .affine import (
    FusionResult,
    ReflectionResult,
    fusion_coeff,
    kac_walton,
    reflect_to_dominant,
    threshold_levels,
    threshold_su2_tableau,
)
from .basis import (
    ElementaryCoupling,
    FusionBasis,
    VerificationReport,
    affine_extend_elementary,
    build_V,
    construct_fusion_basis,
    decompose_fusion,
    elementary_tensor_couplings,
    fusion_elementaries,
    verify_basis,
)
from .cones import SolutionBasis, decompose, hilbert_dual, hilbert_nonneg, is_elementary
from .errors import DomainError, FusionBasisError, InconsistencyError, InternalError
from .tableaux import (
    InequalitySystem,
    LRTableau,
    enumerate_lr,
    lr_system,
    shape_rows,
    stretched_product,
    tensor_decompose,
    weights_of,
)
from .weights import (
    AffineWeight,
    FiniteWeight,
    affine_extend,
    is_integrable,
    level,
    outer_auto,
    parse_affine,
    parse_finite,
)

__version__ = "0.1.0"
