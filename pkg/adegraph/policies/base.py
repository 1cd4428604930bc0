"""Base protocol for move policies driving the reduction search."""
from typing import Any, Iterator, Protocol, Tuple

from ..graph import SignedGraph
from ..moves import MoveRecord


class MovePolicy(Protocol):
    """Which moves a search may apply, and to what kind of state.

    A state is whatever the policy carries along (a SignedGraph for the plain
    modes, a PlaneGraph for checkerboard reduction); the search only looks at
    states through ``graph_of``.
    """

    name: str

    def initial_state(self, graph: SignedGraph) -> Any:
        ...

    def graph_of(self, state: Any) -> SignedGraph:
        ...

    def state_key(self, state: Any) -> Tuple:
        """Whatever beyond the graph class tells two states apart."""
        ...

    def admits(self, graph: SignedGraph, pivot: int, other: int) -> bool:
        """Whether the policy's degree restriction allows the move at all."""
        ...

    def successors(self, state: Any) -> Iterator[Tuple[MoveRecord, Any]]:
        """Applicable moves and resulting states, in (pivot, other) order."""
        ...
