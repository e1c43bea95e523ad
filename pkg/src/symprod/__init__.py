"""Numerical tools for n-fold symmetric products of planar domains."""

from .contour import Contour, Curve, integrate_adaptive, integrate_closed, residue_reference
from .domain import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    Circle,
    DomainSpec,
    boundary_contour,
    contains_point,
    psi_defining,
)
from .errors import (
    ConfigError,
    ContourEvaluationError,
    DomainError,
    InvalidInputError,
    NotInducedMapError,
    NumericalFailure,
    PoleError,
    PreconditionError,
    QuadratureError,
    SymProdError,
    UnsupportedOrderError,
    WrongDiscError,
)
from .geometry import (
    bidisc_contains,
    diagonal_embed,
    f_defining,
    product_embed,
    product_embed_jacobian_det,
    symprod_contains,
)
from .holomap import Blaschke, Composition, Constant, HoloMap, Identity, Polynomial, PowerLaw
from .induced import (
    G_op,
    InducedMapResult,
    J_op,
    T_n_op,
    gamma_inverse,
    recover_factor,
    sigma_phi_direct,
    sigma_phi_integral,
)
from .probes import ProbeReport, lipschitz_cone_probe, smoothness_loss_probe, sweep_report
from .roots import PartitionType, RootMultiset, partition_type, roots_of, solve_roots
from .sympoly import (
    PowerSumPoint,
    SymPoint,
    elem_sym,
    eval_q,
    newton_P,
    newton_Q,
    power_sums,
)

__version__ = "0.1.0"

__all__ = [
    "bidisc_contains",
    "Blaschke",
    "BOUNDARY",
    "boundary_contour",
    "Circle",
    "Composition",
    "ConfigError",
    "Constant",
    "contains_point",
    "Contour",
    "ContourEvaluationError",
    "Curve",
    "diagonal_embed",
    "DomainError",
    "DomainSpec",
    "elem_sym",
    "eval_q",
    "f_defining",
    "G_op",
    "gamma_inverse",
    "HoloMap",
    "Identity",
    "InducedMapResult",
    "INSIDE",
    "integrate_adaptive",
    "integrate_closed",
    "InvalidInputError",
    "J_op",
    "lipschitz_cone_probe",
    "newton_P",
    "newton_Q",
    "NotInducedMapError",
    "NumericalFailure",
    "OUTSIDE",
    "partition_type",
    "PartitionType",
    "PoleError",
    "Polynomial",
    "power_sums",
    "PowerLaw",
    "PowerSumPoint",
    "PreconditionError",
    "ProbeReport",
    "product_embed",
    "product_embed_jacobian_det",
    "psi_defining",
    "QuadratureError",
    "recover_factor",
    "residue_reference",
    "RootMultiset",
    "roots_of",
    "sigma_phi_direct",
    "sigma_phi_integral",
    "smoothness_loss_probe",
    "solve_roots",
    "sweep_report",
    "SymPoint",
    "symprod_contains",
    "SymProdError",
    "T_n_op",
    "UnsupportedOrderError",
    "WrongDiscError",
]
