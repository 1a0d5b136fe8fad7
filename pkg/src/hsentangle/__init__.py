"""Hilbert-Schmidt entanglement for two qubits."""

from .closed_form import (
    BasepointResult,
    BellMixture,
    Regime,
    ehs_bell_mixture,
    ehs_pure,
    ehs_pure_central,
    ehs_pure_edge,
    parabola_point,
    scaled_entanglement,
)
from .entropy import evn_pure, prop3_check, relative_entropy, same_order_check
from .hs_opt import (
    CertificateReport,
    EntanglementResult,
    ProductProjector,
    SeparableApprox,
    SolverConfig,
    certify_basepoint,
    lmo_product_projector,
    nearest_separable,
)
from .linalg import eig_hermitian, hs_inner, hs_norm_sq, matrix_log2, tensor
from .states import (
    LocalChannel,
    SchmidtForm,
    apply_local_channel,
    bell_projector,
    is_ppt,
    partial_trace,
    partial_transpose,
    phi_mix,
    pure_from_schmidt,
    schmidt_decompose,
    werner,
)

__version__ = "0.1.0"
