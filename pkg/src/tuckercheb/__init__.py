"""Low-rank Chebyshev-Tucker approximation of trivariate black-box functions."""

from .approximator import (
    ConstructorConfig,
    TuckerApproximant,
    build,
    grow_size,
    halton_points,
)
from .catalog import CATALOG
from .chebyshev import (
    cheb_points,
    chop_series,
    coeffs_to_vals,
    eval_series,
    is_resolved,
    refine_size,
    vals_to_coeffs,
)
from .cross import aca, build_oblique, deim
from .funcexpr import eval_expr, parse
from .oracle import InstrumentedOracle
from .serialize import deserialize, serialize
from .tensor import hosvd_truncated, matricize, mode_mult, norm_frob, norm_inf, subtensor

__all__ = [
    "CATALOG",
    "ConstructorConfig",
    "InstrumentedOracle",
    "TuckerApproximant",
    "aca",
    "build",
    "build_oblique",
    "cheb_points",
    "chop_series",
    "coeffs_to_vals",
    "deim",
    "deserialize",
    "eval_expr",
    "eval_series",
    "grow_size",
    "halton_points",
    "hosvd_truncated",
    "is_resolved",
    "matricize",
    "mode_mult",
    "norm_frob",
    "norm_inf",
    "parse",
    "refine_size",
    "serialize",
    "subtensor",
    "vals_to_coeffs",
]

__version__ = "0.1.0"
