"""Orthogonal polynomial bases for the de Rham complex on the disk and cylinders.

Scalar, vector and matrix Zernike families, the boundary-normal basis n and
its rotation t, the block-recurrence and LU machinery in the module M that
produces them, and an oracle harness (quadrature, finite differences,
brute-force Gram-Schmidt) that checks them.
"""

from .derham import (
    CylinderModeIndex,
    ComplexChain,
    ExactnessReport,
    apply_op,
    betti_numbers,
    curl_n,
    cylinder_field,
    div_t,
    enumerate_subcomplexes,
    exactness_check,
    grad_w,
    kappa,
    subcomplex,
)
from .diskbases import (
    N_WEIGHT,
    EquivWeightSpec,
    basis_field,
    n_field,
    n_pm_field,
    pm_apply,
    pm_inverse,
    t_field,
    t_nu_field,
    v_general_field,
    v_n_field,
)
from .errors import (
    DomainError,
    FactorizationError,
    FrameUndefinedError,
    IndexRangeError,
    ParameterError,
    ScaledFormRequired,
    TruncationError,
)
from .modm import (
    DiagWeightSpec,
    MPoly,
    block_jacobi,
    lr_blocks,
    q_coeffs,
    q_element,
    q_weight,
    weight_modify_lu,
)
from .univariate import gauss_jacobi_rule, jacobi_eval, legendre_eval, ultra32_eval
from .verify import brute_orthogonalize, disk_inner, fd_apply, gram
from .zernike import (
    FieldEvaluator,
    ModeIndex,
    enumerate_degree,
    mat_z_field,
    vec_z_field,
    w_field,
    z_field,
    zernike_field,
)

__version__ = "0.1.0"
