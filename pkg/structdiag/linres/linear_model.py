"""Numeric companion of a static structural model.

Each equation is stored as a row of exact rational coefficients over the
model's unknowns, known signals, faults and noise terms, read as

    sum(coefficient * symbol) = 0

Noise terms are zero-mean with a given covariance. The "linear" block of a
model file looks like::

    "linear": {
      "noise": ["v1", "v2"],
      "noise_cov": [[1, 0], [0, 1]],
      "equations": {
        "e1": {"x1": 1, "x2": 2, "u1": -1, "v1": -1},
        "e2": {"x1": "1/2", "u2": -1, "v2": -1}
      }
    }

Coefficients are JSON numbers or rational strings. The nonzero pattern of
each row must match the structure of its equation.
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Mapping, Tuple

import numpy as np

from ..model.structural import StructuralModel
from ..utils.exceptions import LinearModelError

SYMMETRY_TOLERANCE = 1e-12

LINEAR_KEYS = {"noise", "noise_cov", "equations"}


@dataclass(frozen=True, eq=False)
class LinearStaticModel:
    """Coefficient rows and noise covariance for a structural model.

    Attributes:
        model: The companion structural model
        noise: Noise term ids, in covariance order
        noise_cov: Noise covariance matrix, symmetric positive semidefinite
        rows: Map from equation id to its nonzero coefficients

    """

    model: StructuralModel
    noise: Tuple[str, ...]
    noise_cov: np.ndarray
    rows: Mapping[str, Mapping[str, Fraction]]

    def row(self, equation_id: str) -> Dict[str, Fraction]:
        """Copy of an equation's coefficient row.

        Raises:
            LinearModelError: If the equation has no row

        """
        try:
            return dict(self.rows[equation_id])
        except KeyError as e:
            raise LinearModelError(f"No linear row for equation {equation_id!r}") from e

    def noise_vector(self, gains: Mapping[str, Any]) -> np.ndarray:
        """Gains over the noise terms as a float vector in covariance order."""
        return np.array([float(gains.get(v, 0)) for v in self.noise], dtype=float)


def _coefficient(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise LinearModelError(f"{path}: coefficient must be a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not np.isfinite(value):
            raise LinearModelError(f"{path}: coefficient must be finite, got {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise LinearModelError(f"{path}: malformed rational {value!r}") from e
    raise LinearModelError(f"{path}: coefficient must be a number, got {value!r}")


def _parse_noise(block: Mapping[str, Any], model: StructuralModel) -> Tuple[str, ...]:
    noise = block.get("noise", [])
    if not isinstance(noise, list) or not all(isinstance(v, str) and v for v in noise):
        raise LinearModelError("$.linear.noise: expected a list of nonempty ids")
    if len(set(noise)) != len(noise):
        raise LinearModelError("$.linear.noise: duplicate noise id")
    for noise_id in noise:
        if noise_id in model.unknowns or noise_id in model.knowns or noise_id in model.faults:
            raise LinearModelError(
                f"$.linear.noise: {noise_id!r} is already a model variable"
            )
    return tuple(noise)


def _parse_covariance(block: Mapping[str, Any], size: int) -> np.ndarray:
    if "noise_cov" not in block:
        return np.eye(size)
    try:
        covariance = np.array(block["noise_cov"], dtype=float)
    except (TypeError, ValueError) as e:
        raise LinearModelError("$.linear.noise_cov: expected a numeric matrix") from e

    if covariance.shape != (size, size):
        raise LinearModelError(
            f"$.linear.noise_cov: expected shape ({size}, {size}), got {covariance.shape}"
        )
    if not np.all(np.isfinite(covariance)):
        raise LinearModelError("$.linear.noise_cov: entries must be finite")
    if not np.allclose(covariance, covariance.T, rtol=0.0, atol=SYMMETRY_TOLERANCE):
        raise LinearModelError("$.linear.noise_cov: matrix is not symmetric")
    if size and np.linalg.eigvalsh(covariance).min() < -SYMMETRY_TOLERANCE * max(
        1.0, float(np.abs(covariance).max())
    ):
        raise LinearModelError("$.linear.noise_cov: matrix is not positive semidefinite")
    return covariance


def _check_pattern(model: StructuralModel, equation_id: str, row: Mapping[str, Fraction]) -> None:
    equation = model.equation(equation_id)
    nonzero = {symbol for symbol, value in row.items() if value != 0}
    expected = (
        ("unknowns", equation.unknowns, set(model.unknowns)),
        ("knowns", equation.known_ids, set(model.knowns)),
        ("faults", equation.fault_ids, set(model.faults)),
    )
    for label, structural, universe in expected:
        numeric = nonzero & universe
        if numeric != structural:
            raise LinearModelError(
                f"Equation {equation_id!r}: nonzero {label} {sorted(numeric)} do not match "
                f"the structure {sorted(structural)}"
            )


def parse_linear_block(model: StructuralModel, block: Any) -> LinearStaticModel:
    """Build the linear companion of a model from its "linear" block.

    Args:
        model: The validated structural model
        block: Decoded "linear" object

    Returns:
        The linear static model

    Raises:
        LinearModelError: If the block is malformed, a coefficient is not a
            rational number, a symbol is undeclared, an equation is
            differential, a row's pattern differs from the structure, or
            the covariance is not symmetric positive semidefinite

    """
    if not isinstance(block, dict):
        raise LinearModelError("$.linear: expected an object")
    unexpected = sorted(set(block) - LINEAR_KEYS)
    if unexpected:
        raise LinearModelError(f"$.linear: unexpected keys {unexpected}")

    noise = _parse_noise(block, model)
    covariance = _parse_covariance(block, len(noise))

    equations = block.get("equations")
    if not isinstance(equations, dict):
        raise LinearModelError("$.linear.equations: expected an object keyed by equation id")

    symbols = set(model.unknowns) | set(model.knowns) | set(model.faults) | set(noise)
    rows: Dict[str, Mapping[str, Fraction]] = {}
    for equation in model.equations:
        path = f"$.linear.equations.{equation.id}"
        if equation.is_differential:
            if equation.id in equations:
                raise LinearModelError(f"{path}: differential equations have no static row")
            continue
        if equation.id not in equations:
            raise LinearModelError(f"{path}: missing row")

        data = equations[equation.id]
        if not isinstance(data, dict):
            raise LinearModelError(f"{path}: expected an object of coefficients")

        row: Dict[str, Fraction] = {}
        for symbol, value in data.items():
            if symbol not in symbols:
                raise LinearModelError(f"{path}: undeclared symbol {symbol!r}")
            coefficient = _coefficient(value, f"{path}.{symbol}")
            if coefficient != 0:
                row[symbol] = coefficient

        _check_pattern(model, equation.id, row)
        rows[equation.id] = MappingProxyType(row)

    extra = sorted(set(equations) - {e.id for e in model.equations})
    if extra:
        raise LinearModelError(f"$.linear.equations: rows for unknown equations {extra}")

    return LinearStaticModel(
        model=model,
        noise=noise,
        noise_cov=covariance,
        rows=MappingProxyType(rows),
    )
