"""Model file parsing and serialization.

Model files are UTF-8 JSON documents::

    {
      "name": "eq2",
      "unknowns": ["x1", "x2"],
      "knowns": ["u1", "y1"],
      "faults": ["f1"],
      "equations": [
        {"id": "e1",
         "unknowns": [{"var": "x1", "diff": true}, {"var": "x2"}],
         "knowns": ["u1"],
         "faults": ["f1"]}
      ],
      "linear": {...}
    }

The optional "linear" block carries numeric coefficients for the residual
companion and is parsed by ``structdiag.linres``. Syntax errors report a line
and column; schema errors report the JSON path of the offending element.
"""

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple, Union

from ..utils.exceptions import DuplicateIdentifierError, ModelSyntaxError
from .structural import StructuralModel
from .types import Equation, Incidence, Occurrence, VariableKind, VariableRef

if TYPE_CHECKING:
    from ..linres.linear_model import LinearStaticModel

TOP_LEVEL_KEYS = {"name", "description", "unknowns", "knowns", "faults", "equations", "linear"}
EQUATION_KEYS = {"id", "unknowns", "knowns", "faults"}
INCIDENCE_KEYS = {"var", "diff"}


def _decode(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelSyntaxError(e.msg, line=e.lineno, column=e.colno) from e
    if not isinstance(data, dict):
        raise ModelSyntaxError("model document must be a JSON object", path="$")
    return data


def _id_list(value: Any, path: str) -> List[str]:
    if not isinstance(value, list):
        raise ModelSyntaxError("expected a list of ids", path=path)
    for index, item in enumerate(value):
        if not isinstance(item, str) or not item:
            raise ModelSyntaxError("expected a nonempty string id", path=f"{path}[{index}]")
    return value


def _check_keys(data: Dict[str, Any], allowed: set, path: str) -> None:
    unexpected = sorted(set(data) - allowed)
    if unexpected:
        raise ModelSyntaxError(f"unexpected keys {unexpected}", path=path)


def _parse_incidences(value: Any, path: str, equation_id: str) -> List[Incidence]:
    if not isinstance(value, list):
        raise ModelSyntaxError("expected a list of incidences", path=path)

    incidences: List[Incidence] = []
    seen = set()
    for index, item in enumerate(value):
        item_path = f"{path}[{index}]"
        if not isinstance(item, dict):
            raise ModelSyntaxError('expected an object {"var": ..., "diff": ...}', path=item_path)
        _check_keys(item, INCIDENCE_KEYS, item_path)

        var = item.get("var")
        if not isinstance(var, str) or not var:
            raise ModelSyntaxError('"var" must be a nonempty string', path=f"{item_path}.var")
        diff = item.get("diff", False)
        if not isinstance(diff, bool):
            raise ModelSyntaxError('"diff" must be a boolean', path=f"{item_path}.diff")

        occurrence = Occurrence.DIFFERENTIATED if diff else Occurrence.ALGEBRAIC
        if (var, occurrence) in seen:
            raise DuplicateIdentifierError(
                f"Equation {equation_id!r} lists {occurrence.value} occurrence of {var!r} twice"
            )
        seen.add((var, occurrence))
        incidences.append(Incidence(VariableRef(var, VariableKind.UNKNOWN), occurrence))
    return incidences


def _parse_equation(item: Any, path: str) -> Equation:
    if not isinstance(item, dict):
        raise ModelSyntaxError("expected an equation object", path=path)
    _check_keys(item, EQUATION_KEYS, path)

    equation_id = item.get("id")
    if not isinstance(equation_id, str) or not equation_id:
        raise ModelSyntaxError('"id" must be a nonempty string', path=f"{path}.id")

    incidences = _parse_incidences(item.get("unknowns", []), f"{path}.unknowns", equation_id)
    knowns = _id_list(item.get("knowns", []), f"{path}.knowns")
    faults = _id_list(item.get("faults", []), f"{path}.faults")

    for label, ids in (("known", knowns), ("fault", faults)):
        if len(set(ids)) != len(ids):
            raise DuplicateIdentifierError(f"Equation {equation_id!r} repeats a {label} id")

    return Equation(
        id=equation_id,
        incidences=frozenset(incidences),
        knowns=frozenset(VariableRef(k, VariableKind.KNOWN) for k in knowns),
        faults=frozenset(VariableRef(f, VariableKind.FAULT) for f in faults),
    )


def model_from_data(data: Dict[str, Any]) -> StructuralModel:
    """Build a validated model from a decoded model document.

    Args:
        data: Decoded JSON object

    Returns:
        The validated StructuralModel

    Raises:
        ModelSyntaxError: If the document does not follow the schema
        ModelError: If the model violates a structural rule

    """
    _check_keys(data, TOP_LEVEL_KEYS, "$")

    name = data.get("name", "")
    if not isinstance(name, str):
        raise ModelSyntaxError('"name" must be a string', path="$.name")

    equations_data = data.get("equations")
    if not isinstance(equations_data, list):
        raise ModelSyntaxError('"equations" must be a list', path="$.equations")

    equations = [
        _parse_equation(item, f"$.equations[{index}]") for index, item in enumerate(equations_data)
    ]

    return StructuralModel(
        name=name,
        equations=equations,
        unknowns=_id_list(data.get("unknowns", []), "$.unknowns"),
        knowns=_id_list(data.get("knowns", []), "$.knowns"),
        faults=_id_list(data.get("faults", []), "$.faults"),
    )


def parse_model(text: str) -> StructuralModel:
    """Parse model-file content into a validated model.

    Equation order matches file order. A "linear" block, if present, is
    ignored here.

    Args:
        text: Model file content

    Returns:
        The validated StructuralModel

    Raises:
        ModelSyntaxError: On malformed JSON (with line/column) or schema errors (with path)
        DuplicateIdentifierError: On duplicate equation or variable ids
        FaultPlacementError: If a fault appears in several equations or none
        DifferentiationError: If an equation differentiates more than one unknown

    Example:
        >>> model = parse_model(Path("models/eq2.json").read_text())
        >>> len(model)
        5

    """
    return model_from_data(_decode(text))


def model_to_data(model: StructuralModel) -> Dict[str, Any]:
    """Convert a model to its canonical document form.

    Incidences are listed sorted by variable, algebraic before
    differentiated; known and fault lists are sorted. "diff" is only written
    when true.
    """
    equations = []
    for equation in model.equations:
        incidences = sorted(
            equation.incidences, key=lambda inc: (inc.variable.id, inc.differentiated)
        )
        entry: Dict[str, Any] = {
            "id": equation.id,
            "unknowns": [
                {"var": inc.variable.id, "diff": True} if inc.differentiated
                else {"var": inc.variable.id}
                for inc in incidences
            ],
        }
        if equation.knowns:
            entry["knowns"] = sorted(equation.known_ids)
        if equation.faults:
            entry["faults"] = sorted(equation.fault_ids)
        equations.append(entry)

    return {
        "name": model.name,
        "unknowns": list(model.unknowns),
        "knowns": list(model.knowns),
        "faults": list(model.faults),
        "equations": equations,
    }


def serialize_model(model: StructuralModel) -> str:
    """Serialize a model to canonical JSON text.

    ``parse_model(serialize_model(m)) == m`` holds for every valid model.
    """
    return json.dumps(model_to_data(model), indent=2, ensure_ascii=False) + "\n"


def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ModelSyntaxError(f"{path}: not valid UTF-8 at byte {e.start}") from e


def load_model(path: Union[str, Path]) -> StructuralModel:
    """Read and parse a model file.

    Raises:
        OSError: If the file cannot be read
        ModelError: If the content is invalid or not UTF-8

    """
    return parse_model(_read(path))


def load_document(
    path: Union[str, Path],
) -> Tuple[StructuralModel, Optional["LinearStaticModel"]]:
    """Read a model file together with its optional linear block.

    Returns:
        Tuple of (structural model, linear model or None)

    Raises:
        OSError: If the file cannot be read
        ModelError: If the structural part or the linear block is invalid

    """
    from ..linres.linear_model import parse_linear_block

    data = _decode(_read(path))
    model = model_from_data(data)
    linear = None
    if "linear" in data:
        linear = parse_linear_block(model, data["linear"])
    return model, linear
