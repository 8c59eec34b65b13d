"""Minimum-variance fusion of residuals.

Residuals with the same unit gain for a target fault are combined as
r = sum(w_i r_i) with sum(w_i) = 1, which keeps the fault gain at 1. The
weights minimize the noise variance w' S w, where S is the covariance of the
residuals. For two residuals:

    k = (s22 - s12) / (s11 + s22 - 2 s12),   w = (k, 1 - k)

and in general w = S^-1 1 / (1' S^-1 1).
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..model.types import EquationSet
from ..utils.exceptions import (
    FusionError,
    NormalizationMismatchError,
    SingularCovarianceError,
)
from .linear_model import SYMMETRY_TOLERANCE
from .residual import LinearResidual


def _noise_matrix(residuals: Sequence[LinearResidual]) -> np.ndarray:
    terms = list(residuals[0].noise_gains)
    for residual in residuals[1:]:
        if list(residual.noise_gains) != terms:
            raise FusionError("Residuals are defined over different noise terms")
    return np.array(
        [[float(r.noise_gains[v]) for v in terms] for r in residuals], dtype=float
    ).reshape(len(residuals), len(terms))


def residual_covariance(
    residuals: Sequence[LinearResidual], noise_cov: np.ndarray
) -> np.ndarray:
    """Covariance G S Gt of residuals with noise gain rows G.

    Raises:
        FusionError: If the residuals use different noise terms or the
            covariance has the wrong shape

    Example:
        >>> residual_covariance([r1, r2], lin.noise_cov)
        array([[3., 0.],
               [0., 3.]])

    """
    if not residuals:
        raise FusionError("No residuals given")
    gains = _noise_matrix(residuals)
    noise_cov = np.asarray(noise_cov, dtype=float)
    if noise_cov.shape != (gains.shape[1], gains.shape[1]):
        raise FusionError(
            f"Noise covariance has shape {noise_cov.shape}, expected "
            f"({gains.shape[1]}, {gains.shape[1]})"
        )
    return gains @ noise_cov @ gains.T


def fuse_weights(covariance: np.ndarray) -> Tuple[np.ndarray, float]:
    """Affine minimum-variance weights for a residual covariance.

    Args:
        covariance: Symmetric positive definite n x n matrix, n >= 2

    Returns:
        Tuple of (weights summing to 1, fused variance)

    Raises:
        FusionError: If the matrix is not square, has fewer than two rows,
            or is not symmetric
        SingularCovarianceError: If the matrix is not positive definite

    Example:
        >>> fuse_weights(np.array([[3.0, -1.0], [-1.0, 3.0]]))
        (array([0.5, 0.5]), 1.0)

    """
    covariance = np.asarray(covariance, dtype=float)
    if covariance.ndim != 2 or covariance.shape[0] != covariance.shape[1]:
        raise FusionError(f"Covariance must be square, got shape {covariance.shape}")
    n = covariance.shape[0]
    if n < 2:
        raise FusionError("Fusion needs at least two residuals")
    scale = max(1.0, float(np.abs(covariance).max()))
    if not np.allclose(covariance, covariance.T, rtol=0.0, atol=SYMMETRY_TOLERANCE * scale):
        raise FusionError("Residual covariance is not symmetric")

    try:
        np.linalg.cholesky(covariance)
    except np.linalg.LinAlgError as e:
        raise SingularCovarianceError("Residual covariance is not positive definite") from e

    if n == 2:
        s11, s12, s22 = covariance[0, 0], covariance[0, 1], covariance[1, 1]
        k = (s22 - s12) / (s11 + s22 - 2 * s12)
        weights = np.array([k, 1.0 - k])
        variance = k * k * s11 + 2 * k * (1 - k) * s12 + (1 - k) ** 2 * s22
        return weights, float(variance)

    ones = np.ones(n)
    solution = np.linalg.solve(covariance, ones)
    weights = solution / (ones @ solution)
    return weights, float(weights @ covariance @ weights)


@dataclass(frozen=True, eq=False)
class FusionResult:
    """A fused residual with its weights.

    Attributes:
        residual: The fused residual
        weights: One weight per input residual, summing to 1
        covariance: Covariance of the input residuals
        variance: Variance of the fused residual

    """

    residual: LinearResidual
    weights: np.ndarray
    covariance: np.ndarray
    variance: float

    def to_dict(self) -> dict:
        """JSON-ready form, including the fused residual."""
        return {
            "weights": [float(w) for w in self.weights],
            "covariance": self.covariance.tolist(),
            "variance": self.variance,
            "residual": self.residual.to_dict(),
        }


def _combine(gains: List[Dict[str, object]], weights: np.ndarray) -> Dict[str, float]:
    return {
        key: float(sum(float(w) * float(g[key]) for w, g in zip(weights, gains)))
        for key in gains[0]
    }


def min_variance_fusion(
    residuals: Sequence[LinearResidual],
    target_fault: str,
    noise_cov: np.ndarray,
    tolerance: float = 1e-12,
) -> FusionResult:
    """Fuse residuals normalized to the same target fault.

    Args:
        residuals: At least two residuals with unit gain for target_fault
        target_fault: The fault whose gain is kept at 1
        noise_cov: Covariance of the noise terms
        tolerance: Allowed deviation of the target gain from 1

    Returns:
        The fused residual, its weights and variance

    Raises:
        FusionError: If fewer than two residuals are given
        NormalizationMismatchError: If a target gain differs from 1
        SingularCovarianceError: If the residual covariance is not positive definite

    """
    residuals = list(residuals)
    if len(residuals) < 2:
        raise FusionError("Fusion needs at least two residuals")
    for residual in residuals:
        gain = float(residual.fault_gains.get(target_fault, 0))
        if abs(gain - 1.0) > tolerance:
            raise NormalizationMismatchError(
                f"Residual from {residual.equations} has gain {gain} for {target_fault!r}, "
                "expected 1; rescale with scaled_to first"
            )

    covariance = residual_covariance(residuals, noise_cov)
    weights, variance = fuse_weights(covariance)

    equations = EquationSet()
    for residual in residuals:
        equations = equations | residual.equations

    fused = LinearResidual(
        known_gains=_combine([r.known_gains for r in residuals], weights),
        fault_gains=_combine([r.fault_gains for r in residuals], weights),
        noise_gains=_combine([r.noise_gains for r in residuals], weights),
        variance=variance,
        equations=equations,
    )
    return FusionResult(residual=fused, weights=weights, covariance=covariance, variance=variance)
