"""Riemann-Roch spaces on the sphere and Dirac zero modes in delta-flux fields."""
from .divisor import INFINITY, Divisor, ExtendedPoint
from .errors import ContourError, FluxPointError, PhaseTransformError, RRDiracError
from .gauge import (
    Circle,
    FluxConfig,
    Polygon,
    contour_flux,
    eval_dphi_dzbar,
    eval_F,
    eval_phi,
    vector_potential,
)
from .meromorphic import POLE, FactoredRational, LBasis, l_basis, l_membership
from .phase import (
    PhaseField,
    chi_phi_identity,
    cr_residual,
    eval_chi,
    meromorphic_image,
    single_valued_check,
    winding,
)
from .sphere import SpherePoint, order_at_infinity, project, unproject
from .zero_modes import (
    DIVERGENCE,
    Component,
    ZeroMode,
    dimension_by_rank,
    dirac_residual,
    eval_mode,
    growth_exponent,
    zero_mode_basis,
)

__version__ = "0.1.0"
