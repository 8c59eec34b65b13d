"""structdiag linres module.

Provides the numeric companion for linear static models: residual
derivation by back-substitution and minimum-variance residual fusion.
"""

from .fusion import FusionResult, fuse_weights, min_variance_fusion, residual_covariance
from .linear_model import LinearStaticModel, parse_linear_block
from .residual import LinearResidual, derive_residual, derive_residuals

__all__ = [
    "LinearStaticModel",
    "parse_linear_block",
    "LinearResidual",
    "derive_residual",
    "derive_residuals",
    "residual_covariance",
    "fuse_weights",
    "min_variance_fusion",
    "FusionResult",
]
