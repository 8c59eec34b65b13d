"""Bipartite structure and maximum matching.

An equation set induces a bipartite graph between its equations (rows) and
the unknowns they contain (columns). Differentiated and algebraic occurrences
of the same unknown merge into one edge. Operators that need the structural
rank of a column block build a restricted structure over a subset of rows,
columns and edges and match on that.
"""

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Optional, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from ..model.structural import StructuralModel
from ..model.types import Equation
from ..utils.exceptions import ModelError

Edge = Tuple[str, str]


@dataclass(frozen=True)
class BipartiteStructure:
    """Equations-versus-unknowns incidence graph.

    Attributes:
        rows: Equation ids in canonical order
        cols: Unknown ids in canonical order
        edges: (equation id, unknown id) pairs

    """

    rows: Tuple[str, ...]
    cols: Tuple[str, ...]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        """Check that every edge endpoint is a row or column.

        Raises:
            ModelError: If an edge refers to a missing row or column

        """
        rows = set(self.rows)
        cols = set(self.cols)
        for row, col in self.edges:
            if row not in rows or col not in cols:
                raise ModelError(f"Edge ({row!r}, {col!r}) has an endpoint outside the structure")

    @classmethod
    def from_model(
        cls,
        model: StructuralModel,
        subset: Iterable[str],
        incidence: Optional[Callable[[Equation], Iterable[str]]] = None,
        columns: Optional[Iterable[str]] = None,
    ) -> "BipartiteStructure":
        """Build the structure of a subset.

        Args:
            model: Host model
            subset: Equation ids forming the rows
            incidence: Unknowns of an equation that count as edges; defaults to
                every unknown, any occurrence kind
            columns: Restrict the columns to these unknowns; defaults to every
                unknown reached by an edge

        Returns:
            The bipartite structure

        """
        members = model.resolve(subset)
        incidence = incidence or (lambda equation: equation.unknowns)
        allowed = None if columns is None else frozenset(columns)

        edges = set()
        for equation_id in members:
            for unknown in incidence(model.equation(equation_id)):
                if allowed is None or unknown in allowed:
                    edges.add((equation_id, unknown))

        cols = allowed if allowed is not None else {col for _, col in edges}
        return cls(rows=members.members, cols=tuple(sorted(cols)), edges=frozenset(edges))

    def neighbours(self, row: str) -> FrozenSet[str]:
        """Columns adjacent to a row."""
        return frozenset(col for r, col in self.edges if r == row)

    def render(self) -> str:
        """Render the bi-adjacency matrix as a text grid with X marks.

        Example:
            >>> print(bipartite_structure(model, model.all_equations()).render())
               x1 x2 x3
            e1 X  .  X
            e2 .  X  X
            e3 X  .  X

        """
        row_width = max((len(row) for row in self.rows), default=0)
        col_width = max((len(col) for col in self.cols), default=1)

        lines = [" " * row_width + "".join(f" {col:<{col_width}}" for col in self.cols)]
        for row in self.rows:
            cells = "".join(
                f" {('X' if (row, col) in self.edges else '.'):<{col_width}}" for col in self.cols
            )
            lines.append(f"{row:<{row_width}}{cells}")
        return "\n".join(line.rstrip() for line in lines)


def bipartite_structure(model: StructuralModel, subset: Iterable[str]) -> BipartiteStructure:
    """Structural bipartite graph of a subset with merged occurrence edges."""
    return BipartiteStructure.from_model(model, subset)


@dataclass(frozen=True)
class MatchingResult:
    """A maximum matching of a bipartite structure.

    Attributes:
        pairs: Vertex-disjoint (row, column) edges

    """

    pairs: FrozenSet[Edge]

    @property
    def size(self) -> int:
        """Number of matched edges."""
        return len(self.pairs)

    def row_mates(self) -> Dict[str, str]:
        """Map from matched row to its column."""
        return dict(self.pairs)

    def col_mates(self) -> Dict[str, str]:
        """Map from matched column to its row."""
        return {col: row for row, col in self.pairs}


def maximum_matching(structure: BipartiteStructure) -> MatchingResult:
    """Compute a maximum-cardinality matching with Hopcroft-Karp.

    Vertices are handed to networkx as integers in canonical row/column
    order so that the result does not depend on string hash randomization.

    Args:
        structure: The bipartite structure

    Returns:
        A maximum matching, deterministic for a given structure

    """
    if not structure.edges:
        return MatchingResult(frozenset())

    offset = len(structure.rows)
    row_index = {row: i for i, row in enumerate(structure.rows)}
    col_index = {col: offset + j for j, col in enumerate(structure.cols)}

    graph = nx.Graph()
    graph.add_nodes_from(range(offset + len(structure.cols)))
    graph.add_edges_from(sorted((row_index[row], col_index[col]) for row, col in structure.edges))

    mate = bipartite.hopcroft_karp_matching(graph, top_nodes=range(offset))
    pairs = frozenset(
        (structure.rows[u], structure.cols[mate[u] - offset]) for u in range(offset) if u in mate
    )
    return MatchingResult(pairs)
