"""Structural detectability and isolability.

A fault is detectable when M* of the model contains its equation. A fault
mode F_i is isolable from a mode F_j when, after removing the equations of
F_j, M* still contains the equation of some fault of F_i. Isolability is
not symmetric.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from ..model.structural import StructuralModel, equations_of_faults, faults_of
from ..model.types import FaultSignature
from ..operators.base import TestabilityOperator, get_operator
from ..operators.mstar import mstar
from ..utils.exceptions import AnalysisError, UnknownIdentifierError


def detectable_faults(
    model: StructuralModel, operator: Union[str, TestabilityOperator]
) -> FaultSignature:
    """Faults of M* of the whole model.

    Example:
        >>> detectable_faults(eq2, "backsub")
        FaultSignature(['f1', 'f2'])

    """
    return faults_of(model, mstar(model, model.all_equations(), operator))


@dataclass(frozen=True)
class IsolabilityVerdict:
    """Whether one fault mode is structurally isolable from another.

    Attributes:
        from_mode: The mode to isolate
        wrt_mode: The mode it is isolated from
        isolable: The verdict
        witness: Lowest-id equation of a from_mode fault that survives in
            M* after removing the wrt_mode equations, when isolable

    """

    from_mode: FaultSignature
    wrt_mode: FaultSignature
    isolable: bool
    witness: Optional[str] = None

    def to_dict(self) -> dict:
        """JSON-ready form; the witness is null when not isolable."""
        return {
            "from": list(self.from_mode),
            "wrt": list(self.wrt_mode),
            "isolable": self.isolable,
            "witness": self.witness,
        }


def _mode(model: StructuralModel, faults: Iterable[str], role: str) -> FaultSignature:
    mode = FaultSignature.of(faults)
    if not mode:
        raise AnalysisError(f"The {role} fault mode is empty")
    for fault_id in mode:
        if fault_id not in model.faults:
            raise UnknownIdentifierError(f"Unknown fault id {fault_id!r}")
    return mode


def isolability(
    model: StructuralModel,
    operator: Union[str, TestabilityOperator],
    from_mode: Iterable[str],
    wrt_mode: Iterable[str],
) -> IsolabilityVerdict:
    """Decide structural isolability of one fault mode from another.

    Args:
        model: Host model
        operator: Operator or operator name
        from_mode: Fault ids of the mode to isolate
        wrt_mode: Fault ids of the mode to isolate it from

    Returns:
        The verdict, with a witness equation when isolable

    Raises:
        AnalysisError: If a mode is empty
        UnknownIdentifierError: If a fault id is not declared

    Example:
        >>> isolability(eq2, "backsub", ["f2"], ["f1"]).witness
        'e5'

    """
    source = _mode(model, from_mode, "from")
    target = _mode(model, wrt_mode, "wrt")

    star = mstar(model, model.all_equations() - equations_of_faults(model, target), operator)
    witnesses = [e for e in equations_of_faults(model, source) if e in star]
    witness = witnesses[0] if witnesses else None
    return IsolabilityVerdict(source, target, witness is not None, witness)


@dataclass(frozen=True, eq=False)
class IsolabilityMatrix:
    """Single-fault isolability over all faults of a model.

    Attributes:
        faults: Fault ids in model order
        matrix: Boolean array; entry [i, j] says whether faults[i] is
            isolable from faults[j]
        detectable: Boolean array; entry [i] says whether faults[i] is
            detectable

    """

    faults: Tuple[str, ...]
    matrix: np.ndarray
    detectable: np.ndarray

    def isolable(self, from_fault: str, wrt_fault: str) -> bool:
        """Whether one fault is isolable from another.

        Raises:
            UnknownIdentifierError: If a fault id is not in the matrix

        """
        try:
            i = self.faults.index(from_fault)
            j = self.faults.index(wrt_fault)
        except ValueError as e:
            raise UnknownIdentifierError(f"Unknown fault id in ({from_fault}, {wrt_fault})") from e
        return bool(self.matrix[i, j])

    def rows(self) -> List[Tuple[str, List[bool]]]:
        """Matrix rows as (fault, verdicts against every fault in order)."""
        return [(fault, [bool(v) for v in self.matrix[i]]) for i, fault in enumerate(self.faults)]

    def to_dict(self) -> dict:
        """JSON-ready form with detectability and the boolean matrix."""
        return {
            "faults": list(self.faults),
            "detectable": [bool(v) for v in self.detectable],
            "isolable": [[bool(v) for v in row] for row in self.matrix],
        }


def isolability_matrix(
    model: StructuralModel, operator: Union[str, TestabilityOperator]
) -> IsolabilityMatrix:
    """Isolability of every ordered pair of single faults.

    The diagonal follows the definition literally and is therefore False.
    Each column needs one M* evaluation.
    """
    op = get_operator(operator)
    faults = tuple(model.faults)
    n = len(faults)
    matrix = np.zeros((n, n), dtype=bool)

    for j, wrt_fault in enumerate(faults):
        star = mstar(model, model.all_equations() - {model.fault_home[wrt_fault]}, op)
        for i, from_fault in enumerate(faults):
            matrix[i, j] = model.fault_home[from_fault] in star

    detected = detectable_faults(model, op)
    detectable = np.array([fault in detected for fault in faults], dtype=bool)
    return IsolabilityMatrix(faults=faults, matrix=matrix, detectable=detectable)
