"""Residual derivation by back-substitution.

Unknowns are eliminated along a computation order with exact rational
arithmetic. Substituting every computed unknown into a residual equation
leaves a linear relation between known signals, faults and noise:

    K z + A f + B v = 0

The residual is the computable part r = K z, which equals -A f - B v. It is
scaled so that its first nonzero fault gain, in model fault order, is +1.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Real
from typing import Dict, List, Mapping, Optional

from ..model.types import EquationSet
from ..operators.builtin import ComputationOrder
from ..utils.exceptions import AnalysisError, NormalizationMismatchError, SingularPivotError
from .linear_model import LinearStaticModel

Expression = Dict[str, Fraction]


@dataclass(frozen=True)
class LinearResidual:
    """A residual as gains over known signals, faults and noise.

    Gain maps cover every declared known, fault and noise term, in model
    order, zeros included.

    Attributes:
        known_gains: Coefficients of the computable form K z
        fault_gains: Fault sensitivity of the residual
        noise_gains: Noise sensitivity of the residual
        variance: Noise variance, noise_gains' * cov * noise_gains
        equations: The set the residual was derived from
        residual_equation: The equation the unknowns were substituted into

    """

    known_gains: Mapping[str, Real]
    fault_gains: Mapping[str, Real]
    noise_gains: Mapping[str, Real]
    variance: float
    equations: EquationSet
    residual_equation: Optional[str] = None

    @property
    def is_zero(self) -> bool:
        """Whether every gain vanishes."""
        return not any(
            value != 0
            for gains in (self.known_gains, self.fault_gains, self.noise_gains)
            for value in gains.values()
        )

    def scaled_to(self, fault: str) -> "LinearResidual":
        """Rescale so the gain of one fault is exactly 1.

        Raises:
            NormalizationMismatchError: If the residual is insensitive to the fault

        """
        gain = self.fault_gains.get(fault, 0)
        if gain == 0:
            raise NormalizationMismatchError(
                f"Residual from {self.equations} has zero gain for fault {fault!r}"
            )
        return replace(
            self,
            known_gains={k: v / gain for k, v in self.known_gains.items()},
            fault_gains={k: v / gain for k, v in self.fault_gains.items()},
            noise_gains={k: v / gain for k, v in self.noise_gains.items()},
            variance=float(self.variance / float(gain) ** 2),
        )

    def to_dict(self) -> dict:
        """JSON-ready form; gains are exact strings and zeros are dropped."""
        def render(gains: Mapping[str, Real]) -> Dict[str, str]:
            return {k: str(v) for k, v in gains.items() if v != 0}

        return {
            "set": list(self.equations),
            "residual_equation": self.residual_equation,
            "known_gains": render(self.known_gains),
            "fault_gains": render(self.fault_gains),
            "noise_gains": render(self.noise_gains),
            "variance": self.variance,
        }


def _substitute(row: Mapping[str, Fraction], solved: Mapping[str, Expression]) -> Expression:
    result: Expression = {}
    for symbol, coefficient in row.items():
        if symbol in solved:
            for inner, value in solved[symbol].items():
                result[inner] = result.get(inner, Fraction(0)) + coefficient * value
        else:
            result[symbol] = result.get(symbol, Fraction(0)) + coefficient
    return {symbol: value for symbol, value in result.items() if value != 0}


def _eliminate(lin: LinearStaticModel, order: ComputationOrder) -> Dict[str, Expression]:
    unknowns = set(lin.model.unknowns)
    solved: Dict[str, Expression] = {}
    for equation_id, unknown in order.pivots:
        row = _substitute(lin.row(equation_id), solved)
        pivot = row.get(unknown, Fraction(0))
        if pivot == 0:
            raise SingularPivotError(
                f"structurally valid but numerically singular step: {unknown!r} "
                f"vanishes from {equation_id!r} after substitution"
            )
        stray = sorted(s for s in row if s in unknowns and s != unknown)
        if stray:
            raise AnalysisError(
                f"Pivot {equation_id!r} still contains uncomputed unknowns {stray}"
            )
        solved[unknown] = {s: -v / pivot for s, v in row.items() if s != unknown}
    return solved


def _residual_from(
    lin: LinearStaticModel,
    order: ComputationOrder,
    solved: Mapping[str, Expression],
    residual_equation: str,
) -> LinearResidual:
    model = lin.model
    row = _substitute(lin.row(residual_equation), solved)
    stray = sorted(s for s in row if s in model.unknowns)
    if stray:
        raise AnalysisError(f"Residual {residual_equation!r} still contains unknowns {stray}")

    known_gains = {k: row.get(k, Fraction(0)) for k in model.knowns}
    fault_gains = {f: -row.get(f, Fraction(0)) for f in model.faults}
    noise_gains = {v: -row.get(v, Fraction(0)) for v in lin.noise}

    scale = next((g for g in fault_gains.values() if g != 0), Fraction(1))
    known_gains = {k: v / scale for k, v in known_gains.items()}
    fault_gains = {k: v / scale for k, v in fault_gains.items()}
    noise_gains = {k: v / scale for k, v in noise_gains.items()}

    vector = lin.noise_vector(noise_gains)
    return LinearResidual(
        known_gains=known_gains,
        fault_gains=fault_gains,
        noise_gains=noise_gains,
        variance=float(vector @ lin.noise_cov @ vector),
        equations=order.pivot_equations | order.residual_equations,
        residual_equation=residual_equation,
    )


def derive_residual(
    lin: LinearStaticModel,
    order: ComputationOrder,
    residual_equation: Optional[str] = None,
) -> LinearResidual:
    """Derive the residual of a computation order.

    Args:
        lin: Linear companion model
        order: A computation order for a set of lin's model
        residual_equation: Which residual equation to use; may be omitted
            when the order has exactly one

    Returns:
        The normalized residual

    Raises:
        AnalysisError: If the residual equation is ambiguous or not part of
            the order
        SingularPivotError: If a pivot coefficient vanishes
        LinearModelError: If an equation of the order has no linear row

    Example:
        >>> order = computation_order(eq2, eq2.subset("e1", "e2", "e5"))
        >>> derive_residual(lin, order).variance
        3.0

    """
    if residual_equation is None:
        if len(order.residual_equations) != 1:
            raise AnalysisError(
                f"Order has {len(order.residual_equations)} residual equations; name one"
            )
        (residual_equation,) = order.residual_equations
    elif residual_equation not in order.residual_equations:
        raise AnalysisError(
            f"{residual_equation!r} is not a residual equation of {order.residual_equations}"
        )

    solved = _eliminate(lin, order)
    return _residual_from(lin, order, solved, residual_equation)


def derive_residuals(lin: LinearStaticModel, order: ComputationOrder) -> List[LinearResidual]:
    """One residual per residual equation of an order, in id order."""
    solved = _eliminate(lin, order)
    return [_residual_from(lin, order, solved, e) for e in order.residual_equations]
