"""Signed graph value type, switching, canonical keys and text formats."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import (
    GraphFormatError,
    InvalidGraphError,
    SizeBoundError,
    UnknownVertexError,
)

Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Return the unordered edge (u, v) in storage order."""
    return (u, v) if u < v else (v, u)


class SignedGraph:
    """Finite simple graph with +1/-1 edge signs over an ordered vertex list.

    Instances are immutable. The vertex order fixes row/column indices of the
    Gram matrix and of congruence certificates.
    """

    __slots__ = ("_vertices", "_index", "_signs", "_adj")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Mapping[Edge, int] | Iterable[Tuple[int, int, int]] = (),
    ):
        verts = tuple(int(v) for v in vertices)
        index: Dict[int, int] = {}
        for position, v in enumerate(verts):
            if v < 0:
                raise InvalidGraphError(f"Vertex ids must be non-negative, got {v}")
            if v in index:
                raise InvalidGraphError(f"Duplicate vertex id {v}")
            index[v] = position

        items = edges.items() if isinstance(edges, Mapping) else (((u, v), s) for u, v, s in edges)
        signs: Dict[Edge, int] = {}
        for (u, v), s in items:
            if u == v:
                raise InvalidGraphError(f"Loop at vertex {u}")
            for endpoint in (u, v):
                if endpoint not in index:
                    raise UnknownVertexError(f"Edge ({u}, {v}) uses unknown vertex {endpoint}")
            if s not in (1, -1):
                raise InvalidGraphError(f"Edge ({u}, {v}) has sign {s}, expected +1 or -1")
            key = edge_key(u, v)
            if key in signs:
                raise InvalidGraphError(f"Duplicate edge ({u}, {v})")
            signs[key] = int(s)
        self._init(verts, index, signs)

    def _init(self, verts: Tuple[int, ...], index: Dict[int, int], signs: Dict[Edge, int]) -> None:
        adj: Dict[int, Dict[int, int]] = {v: {} for v in verts}
        for (u, v), s in signs.items():
            adj[u][v] = s
            adj[v][u] = s
        self._vertices = verts
        self._index = index
        self._signs = signs
        self._adj = adj

    @classmethod
    def _trusted(cls, verts: Tuple[int, ...], signs: Dict[Edge, int],
                 index: Optional[Dict[int, int]] = None) -> "SignedGraph":
        """Build without validation; callers guarantee the invariants."""
        graph = cls.__new__(cls)
        graph._init(verts, index if index is not None else {v: i for i, v in enumerate(verts)}, signs)
        return graph

    # -- accessors -------------------------------------------------------

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def signs(self) -> Mapping[Edge, int]:
        return self._signs

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def index_of(self, v: int) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(f"Unknown vertex {v}") from None

    def sign(self, u: int, v: int) -> int:
        """Sign of edge (u, v), or 0 when absent."""
        return self._adj.get(u, {}).get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return self.sign(u, v) != 0

    def neighbors(self, v: int) -> Mapping[int, int]:
        """Neighbor -> sign mapping of v."""
        if v not in self._adj:
            raise UnknownVertexError(f"Unknown vertex {v}")
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self._adj.values()), default=0)

    def edge_count(self) -> int:
        return len(self._signs)

    def edges(self) -> List[Tuple[int, int, int]]:
        """Edges as sorted (u, v, sign) triples with u < v."""
        return [(u, v, s) for (u, v), s in sorted(self._signs.items())]

    def negative_edges(self) -> List[Edge]:
        return [e for e, s in sorted(self._signs.items()) if s < 0]

    # -- derived graphs --------------------------------------------------

    def with_signs(self, signs: Dict[Edge, int]) -> "SignedGraph":
        """Same vertex list, new edge set (trusted: keys must be valid edges)."""
        return SignedGraph._trusted(self._vertices, signs, self._index)

    def induced(self, subset: Iterable[int]) -> "SignedGraph":
        """Induced subgraph, keeping this graph's vertex order."""
        keep = set(subset)
        missing = keep - set(self._index)
        if missing:
            raise UnknownVertexError(f"Unknown vertices {sorted(missing)}")
        verts = tuple(v for v in self._vertices if v in keep)
        signs = {e: s for e, s in self._signs.items() if e[0] in keep and e[1] in keep}
        return SignedGraph._trusted(verts, signs)

    def reorder(self, order: Sequence[int]) -> "SignedGraph":
        """Same graph with the vertex list permuted to ``order``."""
        order = tuple(order)
        if sorted(order) != sorted(self._vertices):
            raise InvalidGraphError("Permutation must list every vertex exactly once")
        return SignedGraph._trusted(order, dict(self._signs))

    def components(self) -> List[List[int]]:
        """Connected components, each in vertex order, ordered by first vertex."""
        seen: set[int] = set()
        result = []
        for start in self._vertices:
            if start in seen:
                continue
            seen.add(start)
            queue = deque([start])
            members = {start}
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        members.add(w)
                        queue.append(w)
            result.append([v for v in self._vertices if v in members])
        return result

    def is_connected(self) -> bool:
        return len(self._vertices) > 0 and len(self.components()) == 1

    def cycle_rank(self) -> int:
        """Dimension of the cycle space: E - V + #components."""
        return self.edge_count() - len(self) + len(self.components())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        for (u, v), s in sorted(self._signs.items()):
            graph.add_edge(u, v, sign=s)
        return graph

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._signs == other._signs

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._signs.items())))

    def __repr__(self) -> str:
        edges = " ".join(f"{u}{'+' if s > 0 else '-'}{v}" for u, v, s in self.edges())
        return f"SignedGraph(vertices={list(self._vertices)}, edges=[{edges}])"


# -- builders ------------------------------------------------------------


def from_networkx(graph: nx.Graph, default_sign: int = 1) -> SignedGraph:
    """Signed graph from a networkx graph; edge attribute ``sign`` is honored."""
    verts = sorted(graph.nodes())
    edges = {edge_key(u, v): int(data.get("sign", default_sign)) for u, v, data in graph.edges(data=True)}
    return SignedGraph(verts, edges)


def path_graph(k: int, signs: Optional[Sequence[int]] = None) -> SignedGraph:
    signs = list(signs) if signs is not None else [1] * max(k - 1, 0)
    return SignedGraph(range(k), [(i, i + 1, signs[i]) for i in range(k - 1)])


def cycle_graph(n: int, negatives: int = 0) -> SignedGraph:
    """n-cycle 0-1-...-(n-1)-0 whose first ``negatives`` edges are negative."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    return SignedGraph(range(n), [(u, v, -1 if i < negatives else 1) for i, (u, v) in enumerate(edges)])


def star_graph(leaves: int) -> SignedGraph:
    """Hub 0 joined positively to leaves 1..leaves."""
    return SignedGraph(range(leaves + 1), [(0, i, 1) for i in range(1, leaves + 1)])


def complete_graph(n: int, sign: int = 1) -> SignedGraph:
    return SignedGraph(range(n), [(u, v, sign) for u in range(n) for v in range(u + 1, n)])


def wheel_graph(rim: int) -> SignedGraph:
    """Hub 0 joined to a rim cycle 1..rim, all edges positive."""
    spokes = [(0, i, 1) for i in range(1, rim + 1)]
    rim_edges = [(i, i % rim + 1, 1) for i in range(1, rim + 1)]
    return SignedGraph(range(rim + 1), spokes + rim_edges)


# -- Gram matrix -----------------------------------------------------------


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric integer matrix 2I + A(G)."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise InvalidGraphError("Gram matrix must be square")
            if row[i] != 2:
                raise InvalidGraphError(f"Gram diagonal entry {i} is {row[i]}, expected 2")
            for j, value in enumerate(row):
                if value != self.rows[j][i]:
                    raise InvalidGraphError("Gram matrix must be symmetric")
                if i != j and value not in (-1, 0, 1):
                    raise InvalidGraphError(f"Gram entry ({i}, {j}) is {value}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "GramMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=object).reshape(self.n, self.n)

    def to_graph(self, vertices: Optional[Sequence[int]] = None) -> SignedGraph:
        """Signed graph whose Gram matrix is this one."""
        verts = tuple(vertices) if vertices is not None else tuple(range(self.n))
        edges = {
            (verts[i], verts[j]) if verts[i] < verts[j] else (verts[j], verts[i]): self.rows[i][j]
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.rows[i][j]
        }
        return SignedGraph(verts, edges)


def gram_matrix(g: SignedGraph) -> GramMatrix:
    n = len(g)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
    for (u, v), s in g.signs.items():
        i, j = g.index_of(u), g.index_of(v)
        rows[i][j] = s
        rows[j][i] = s
    return GramMatrix(tuple(tuple(row) for row in rows))


# -- switching ---------------------------------------------------------------


def switch(g: SignedGraph, v: int) -> SignedGraph:
    """Flip the sign of every edge incident to v."""
    g.index_of(v)
    signs = dict(g.signs)
    for w in g.neighbors(v):
        key = edge_key(v, w)
        signs[key] = -signs[key]
    return g.with_signs(signs)


def switch_many(g: SignedGraph, vertices: Iterable[int]) -> SignedGraph:
    flip = set(vertices)
    for v in flip:
        g.index_of(v)
    signs = {
        (u, w): (-s if (u in flip) != (w in flip) else s)
        for (u, w), s in g.signs.items()
    }
    return g.with_signs(signs)


def spanning_potentials(g: SignedGraph) -> Dict[int, int]:
    """BFS spanning forest potentials p with p(child) = p(parent) * sign.

    Switching at every vertex with p = -1 makes all forest edges positive.
    Roots are the first vertex of each component (in vertex order).
    """
    potential: Dict[int, int] = {}
    for root in g.vertices:
        if root in potential:
            continue
        potential[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.neighbors(u)):
                if w not in potential:
                    potential[w] = potential[u] * g.sign(u, w)
                    queue.append(w)
    return potential


def tree_normalize(g: SignedGraph) -> Tuple[SignedGraph, List[int]]:
    """Switch so that a BFS spanning forest is all-positive.

    Returns the switched graph and the (sorted) switch list reproducing it.
    """
    potential = spanning_potentials(g)
    flips = sorted(v for v, p in potential.items() if p < 0)
    return switch_many(g, flips), flips


# -- canonical key -------------------------------------------------------------


def canonical_key(g: SignedGraph, max_vertices: int = 10) -> Tuple:
    """Key equal for two graphs iff they are isomorphic up to switching.

    Minimizes the row sequence over connected-prefix vertex orders. Each
    vertex is switched so that its edge to the earliest placed neighbor is
    positive, so the rows only record switching-invariant data.
    """
    n = len(g)
    if n > max_vertices:
        raise SizeBoundError(f"canonical_key supports at most {max_vertices} vertices, got {n}")

    beam: List[Tuple[Tuple[int, ...], Dict[int, int]]] = [((), {})]
    rows = []
    for _ in range(n):
        best_row = None
        next_beam: List[Tuple[Tuple[int, ...], Dict[int, int]]] = []
        for order, potential in beam:
            placed = set(order)
            unplaced = [v for v in g.vertices if v not in placed]
            frontier = [v for v in unplaced if any(u in placed for u in g.neighbors(v))]
            for v in frontier or unplaced:
                row, p = _canonical_row(g, order, potential, v)
                if best_row is None or row < best_row:
                    best_row = row
                    next_beam = []
                if row == best_row:
                    extended = dict(potential)
                    extended[v] = p
                    next_beam.append((order + (v,), extended))
        rows.append(best_row)
        beam = next_beam
    return (n, tuple(rows))


def _canonical_row(g: SignedGraph, order: Tuple[int, ...], potential: Dict[int, int], v: int):
    nbrs = g.neighbors(v)
    parent = next((u for u in order if u in nbrs), None)
    p = 1 if parent is None else potential[parent] * nbrs[parent]
    codes = []
    for u in order:
        s = nbrs.get(u, 0)
        if s == 0:
            codes.append(0)
        else:
            codes.append(1 if s * potential[u] * p > 0 else 2)
    return (len(nbrs), tuple(codes)), p


def labeled_key(g: SignedGraph) -> Tuple:
    """Exact key of the labeled switching class (no isomorphism quotient)."""
    normalized, _ = tree_normalize(g)
    return (normalized.vertices, tuple(normalized.edges()))


# -- text format ---------------------------------------------------------------


def iter_directives(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Yield (line number, tokens) for every non-blank, non-comment line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_vertex_id(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: vertex id {token!r} is not an integer") from None
    if value < 0:
        raise GraphFormatError(f"line {lineno}: vertex id {value} is negative")
    return value


def parse_sign(token: str, lineno: int) -> int:
    if token in ("+", "+1"):
        return 1
    if token in ("-", "-1", "−"):
        return -1
    raise GraphFormatError(f"line {lineno}: sign {token!r} must be + or -")


def parse_graph_directives(
    directives: Iterable[Tuple[int, List[str]]],
    headers: Tuple[str, ...] = ("signed",),
    extra: Optional[Dict[str, object]] = None,
) -> Tuple[SignedGraph, str]:
    """Shared parser for the `graph` family of text formats.

    ``extra`` maps additional directive names to callbacks ``fn(lineno, tokens)``.
    Returns the graph and the header kind.
    """
    vertices: List[int] = []
    edges: List[Tuple[int, int, int]] = []
    kind = None
    for lineno, tokens in directives:
        head = tokens[0]
        if kind is None:
            if head != "graph" or len(tokens) != 2 or tokens[1] not in headers:
                expected = " or ".join(f"'graph {h}'" for h in headers)
                raise GraphFormatError(f"line {lineno}: expected header {expected}")
            kind = tokens[1]
            continue
        if head == "v":
            if len(tokens) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'v <id>'")
            vertices.append(parse_vertex_id(tokens[1], lineno))
        elif head == "e":
            if len(tokens) not in (3, 4):
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v> <+|->'")
            sign = parse_sign(tokens[3], lineno) if len(tokens) == 4 else 1
            edges.append((parse_vertex_id(tokens[1], lineno), parse_vertex_id(tokens[2], lineno), sign))
        elif extra and head.rstrip(":") in extra:
            extra[head.rstrip(":")](lineno, tokens)  # type: ignore[operator]
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {head!r}")
    if kind is None:
        raise GraphFormatError("empty input: missing 'graph' header")
    return SignedGraph(vertices, edges), kind


def parse_graph(text: str) -> SignedGraph:
    graph, _ = parse_graph_directives(iter_directives(text))
    return graph


def load_graph(path: Path | str) -> SignedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def format_graph(g: SignedGraph, header: str = "signed") -> str:
    lines = [f"graph {header}"]
    lines.extend(f"v {v}" for v in g.vertices)
    lines.extend(f"e {u} {v} {'+' if s > 0 else '-'}" for u, v, s in g.edges())
    return "\n".join(lines) + "\n"


def to_dot(g: SignedGraph, name: str = "G") -> str:
    """DOT rendering; negative edges are dashed."""
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in g.vertices)
    for u, v, s in g.edges():
        if s > 0:
            lines.append(f'  {u} -- {v} [label="+"];')
        else:
            lines.append(f'  {u} -- {v} [label="−", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
