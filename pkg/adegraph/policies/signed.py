"""Move policies over bare signed graphs."""
from typing import Iterator, List, Tuple

from ..errors import NotRepresentableError
from ..graph import SignedGraph
from ..moves import MoveRecord, t_move


def ordered_edge_ends(graph: SignedGraph) -> List[Tuple[int, int]]:
    """Every (pivot, other) pair on an edge, sorted."""
    pairs = []
    for u, v, _ in graph.edges():
        pairs.append((u, v))
        pairs.append((v, u))
    return sorted(pairs)


class TMovePolicy:
    name = "t"

    def initial_state(self, graph: SignedGraph) -> SignedGraph:
        return graph

    def graph_of(self, state: SignedGraph) -> SignedGraph:
        return state

    def state_key(self, state: SignedGraph) -> Tuple:
        return ()

    def admits(self, graph: SignedGraph, pivot: int, other: int) -> bool:
        return graph.has_edge(pivot, other)

    def successors(self, state: SignedGraph) -> Iterator[Tuple[MoveRecord, SignedGraph]]:
        for x, y in ordered_edge_ends(state):
            if not self.admits(state, x, y):
                continue
            try:
                result, record = t_move(state, x, y)
            except NotRepresentableError:
                continue
            yield record, result


class TPrimeMovePolicy(TMovePolicy):
    """t-moves whose non-pivot endpoint has degree at most 3."""

    name = "tprime"

    def admits(self, graph: SignedGraph, pivot: int, other: int) -> bool:
        return graph.has_edge(pivot, other) and graph.degree(other) <= 3
