"""Fourier analysis on fundamental domains of lattices in R^d."""

from .domain import HexDomainAd, Parallelotope, measure, monte_carlo_measure, reduce, tiling_check
from .errors import (
    BadExponent,
    BadExponentPair,
    BandExceedsGrid,
    ConfigError,
    DegenerateAxis,
    InsufficientShiftRadius,
    LatFourierError,
    MissingWeight,
    SingularGenerator,
    TruncationOverflow,
)
from .estimators import FourierMultiplier, LatticeFourierTransform
from .inequalities import (
    InequalityReport,
    WeightFunction,
    check_hardy_littlewood,
    check_hausdorff_young,
    check_hy_inverse,
    check_hyp,
    check_paley,
    lp_norm_domain,
    lp_norm_dual,
    weak_constant,
)
from .lattice import (
    DualPoint,
    EmbeddedLattice,
    Lattice,
    a_d_lattice,
    count_bound,
    count_bound_strict,
    dual,
    enumerate_dual,
    identity_lattice,
    new_lattice,
    random_lattice,
)
from .multiplier import (
    ConstantSymbol,
    GaussianSymbol,
    PolynomialSymbol,
    TableSymbol,
    adjoint_symbol_check,
    apply,
    empirical_opnorm,
    l2_opnorm_bound,
    symbol_growth,
)
from .transform import (
    GridFunction,
    Spectrum,
    forward,
    inverse,
    plancherel_defect,
    random_band_limited,
    random_spectrum,
    single_mode,
    slow_forward_oracle,
)

__version__ = "0.1.0"
