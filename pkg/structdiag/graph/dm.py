"""Coarse Dulmage-Mendelsohn decomposition and PSO/MSO classification.

The decomposition splits a bipartite structure into an overdetermined part
(more equations than unknowns), an exactly determined part and an
underdetermined part. From a maximum matching:

    - m_plus/x_plus are the rows/columns reachable by alternating paths from
      unmatched rows;
    - m_minus/x_minus are the rows/columns reachable by alternating paths from
      unmatched columns;
    - m_zero/x_zero are the remainder.

Equations in m_plus only contain x_plus unknowns, and equations in m_zero
contain no x_minus unknown.
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Set, Tuple

import networkx as nx

from ..cache.subset_cache import get_subset_cache
from ..model.structural import StructuralModel
from ..model.types import EquationSet
from ..utils.config import Config
from ..utils.exceptions import AnalysisError, NotPSOError, OracleBoundExceededError
from .bipartite import BipartiteStructure, MatchingResult, bipartite_structure, maximum_matching

_ROOT = ("root", "")


@dataclass(frozen=True)
class DmResult:
    """Coarse DM decomposition of an equation set.

    Attributes:
        m_plus: Overdetermined equations
        m_zero: Exactly determined equations
        m_minus: Underdetermined equations
        x_plus: Unknowns of the overdetermined part
        x_zero: Unknowns of the exactly determined part
        x_minus: Unknowns of the underdetermined part
        matching: The maximum matching the decomposition was built from

    """

    m_plus: EquationSet
    m_zero: EquationSet
    m_minus: EquationSet
    x_plus: FrozenSet[str]
    x_zero: FrozenSet[str]
    x_minus: FrozenSet[str]
    matching: MatchingResult

    def to_dict(self) -> dict:
        """Serializable form with sorted id lists."""
        return {
            "m_plus": list(self.m_plus),
            "m_zero": list(self.m_zero),
            "m_minus": list(self.m_minus),
            "x_plus": sorted(self.x_plus),
            "x_zero": sorted(self.x_zero),
            "x_minus": sorted(self.x_minus),
            "matching": sorted([row, col] for row, col in self.matching.pairs),
        }


def _alternating_reach(
    structure: BipartiteStructure, matching: MatchingResult, from_rows: bool
) -> Tuple[Set[str], Set[str]]:
    """Rows and columns reachable by alternating paths from unmatched vertices.

    From the row side, free edges are walked row -> column and matched edges
    column -> row; from the column side the orientation is reversed.
    """
    row_mates = matching.row_mates()
    col_mates = matching.col_mates()

    graph = nx.DiGraph()
    graph.add_node(_ROOT)
    for row, col in structure.edges:
        if from_rows:
            graph.add_edge(("r", row), ("c", col))
        else:
            graph.add_edge(("c", col), ("r", row))
    for row, col in matching.pairs:
        if from_rows:
            graph.add_edge(("c", col), ("r", row))
        else:
            graph.add_edge(("r", row), ("c", col))

    if from_rows:
        sources = [("r", row) for row in structure.rows if row not in row_mates]
    else:
        sources = [("c", col) for col in structure.cols if col not in col_mates]
    for source in sources:
        graph.add_edge(_ROOT, source)

    reached = nx.descendants(graph, _ROOT)
    rows = {name for side, name in reached if side == "r"}
    cols = {name for side, name in reached if side == "c"}
    return rows, cols


def coarse_decomposition(structure: BipartiteStructure) -> DmResult:
    """Coarse DM decomposition of an arbitrary bipartite structure.

    Used directly by operators that decompose a restricted structure, for
    example the algebraic block of a semi-explicit DAE.

    Args:
        structure: The bipartite structure

    Returns:
        The decomposition

    """
    matching = maximum_matching(structure)

    plus_rows, plus_cols = _alternating_reach(structure, matching, from_rows=True)
    minus_rows, minus_cols = _alternating_reach(structure, matching, from_rows=False)

    rows = set(structure.rows)
    cols = set(structure.cols)
    return DmResult(
        m_plus=EquationSet(plus_rows),
        m_zero=EquationSet(rows - plus_rows - minus_rows),
        m_minus=EquationSet(minus_rows),
        x_plus=frozenset(plus_cols),
        x_zero=frozenset(cols - plus_cols - minus_cols),
        x_minus=frozenset(minus_cols),
        matching=matching,
    )


def dm_decompose(model: StructuralModel, subset: Iterable[str]) -> DmResult:
    """Coarse DM decomposition of an equation subset.

    Args:
        model: Host model
        subset: Equation ids

    Returns:
        The decomposition; all parts are empty for the empty subset

    Raises:
        UnknownIdentifierError: If a member is not an equation of the model

    Example:
        >>> dm = dm_decompose(eq2, eq2.all_equations())
        >>> list(dm.m_plus)
        ['e1', 'e2', 'e3', 'e4', 'e5']

    """
    return coarse_decomposition(bipartite_structure(model, subset))


def _plus_rows(model: StructuralModel, members: EquationSet) -> EquationSet:
    structure = bipartite_structure(model, members)
    matching = maximum_matching(structure)
    rows, _ = _alternating_reach(structure, matching, from_rows=True)
    return EquationSet(rows)


def overdetermined_part(model: StructuralModel, subset: Iterable[str]) -> EquationSet:
    """The overdetermined part M+, the largest PSO subset.

    Results are memoized in the shared subset cache when enabled.

    Args:
        model: Host model
        subset: Equation ids

    Returns:
        M+ of the subset; empty when the subset has no redundancy

    """
    members = model.resolve(subset)
    if not members:
        return members

    if not Config().enable_subset_cache:
        return _plus_rows(model, members)

    cache = get_subset_cache()
    cached = cache.get(model.fingerprint, "plus", members)
    if cached is not None:
        return cached
    result = _plus_rows(model, members)
    cache.put(model.fingerprint, "plus", members, result)
    return result


def is_pso(model: StructuralModel, subset: Iterable[str]) -> bool:
    """Whether a subset is nonempty and equal to its overdetermined part."""
    members = model.resolve(subset)
    return bool(members) and overdetermined_part(model, members) == members


def redundancy(model: StructuralModel, subset: Iterable[str]) -> int:
    """Redundancy: equations minus unknowns of a PSO set.

    Args:
        model: Host model
        subset: A PSO set, or the empty set

    Returns:
        The redundancy; 0 for the empty set

    Raises:
        NotPSOError: If the subset is nonempty and not PSO

    Example:
        >>> redundancy(eq2, eq2.all_equations())
        3

    """
    members = model.resolve(subset)
    if not members:
        return 0
    if overdetermined_part(model, members) != members:
        raise NotPSOError(f"not a PSO set: {members}")
    return len(members) - len(model.unknowns_of(members))


class PsoClass(str, Enum):
    """Classification of an equation set by overdetermination."""

    NOT_PSO = "not-PSO"
    PSO = "PSO"
    MSO = "MSO"


def _minimal_by_removal(model: StructuralModel, members: EquationSet) -> bool:
    return all(not overdetermined_part(model, members - {e}) for e in members)


def classify_pso(model: StructuralModel, subset: Iterable[str]) -> PsoClass:
    """Classify a subset as not-PSO, PSO or MSO.

    MSO is decided twice, by redundancy one and by checking that removing any
    equation leaves no PSO subset; the two must agree.

    Raises:
        AnalysisError: If the two MSO criteria disagree

    Example:
        >>> classify_pso(eq2, eq2.subset("e1", "e2", "e5"))
        <PsoClass.MSO: 'MSO'>

    """
    members = model.resolve(subset)
    if not is_pso(model, members):
        return PsoClass.NOT_PSO

    by_redundancy = redundancy(model, members) == 1
    by_minimality = _minimal_by_removal(model, members)
    if by_redundancy != by_minimality:
        raise AnalysisError(
            f"MSO criteria disagree on {members}: redundancy one is {by_redundancy}, "
            f"minimality is {by_minimality}"
        )
    return PsoClass.MSO if by_redundancy else PsoClass.PSO


def is_minimal_pso(model: StructuralModel, subset: Iterable[str]) -> bool:
    """Check that a PSO set has no proper PSO subset by enumerating all of them.

    Raises:
        OracleBoundExceededError: If the set is larger than the oracle bound

    """
    members = model.resolve(subset)
    bound = Config().oracle_bound
    if len(members) > bound:
        raise OracleBoundExceededError(
            f"minimality enumeration needs |M| <= {bound}, got {len(members)}"
        )
    if not is_pso(model, members):
        return False
    for size in range(1, len(members)):
        for candidate in itertools.combinations(members, size):
            if is_pso(model, candidate):
                return False
    return True
