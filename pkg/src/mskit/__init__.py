"""Finite-section numerics for Toeplitz, Hankel and truncated Toeplitz/Hankel
operators on model spaces of finite Blaschke products."""

from .blaschke import BlaschkeProduct, monomial_product, taylor
from .model_space import (
    ModelBasis,
    SymbolDecomposition,
    build_tm_basis,
    decompose_symbol,
    ideal_distance,
    in_H2,
    in_Ktheta_plus_C_theta,
    is_constant,
    model_kernel,
    project_model,
)
from .operators import (
    OpMatrix,
    SpaceTag,
    SpaceVector,
    TagMismatchError,
    adjoint,
    compose,
    hankel,
    op_norm,
    rank_one,
    s_op,
    tho,
    toeplitz,
    tto,
    u_matrix,
    v_conjugate,
)
from .probes import (
    ProbePath,
    ProbeReport,
    finite_section_sv,
    hankel_kernel_probe,
    product_probe,
    tensor_probe_k1,
    tensor_probe_k2,
)
from .series import (
    DiskPoint,
    LaurentSeries,
    OversizedSeriesError,
    TruncationConfig,
    apply_U,
    apply_V,
    cauchy_kernel,
    conjugate,
    evaluate,
    inner,
    mobius_symbol,
    monomial,
    multiply,
    norm,
    one,
    project_P,
    project_Q,
    zero,
)
from .theorems import (
    ZeroVerdict,
    corollary_zero_decide,
    lemma_eq_split,
    q0_rank_one_sum,
    tho_zero,
    tto_zero,
    zero_product_decide,
    zero_product_oracle,
)

__version__ = "0.1.0"
