"""Plane oriented graphs, checkerboard validation and checkerboard-level moves."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import (
    ChecksFailedError,
    EmbeddingError,
    EulerViolationError,
    GraphFormatError,
    NotCheckerboardError,
    NotRepresentableError,
    SizeBoundError,
)
from .graph import Edge, SignedGraph, edge_key, format_graph, iter_directives, labeled_key, parse_graph_directives, parse_vertex_id
from .moves import MoveRecord, t_prime_move
from .policies.signed import ordered_edge_ends

Dart = Tuple[int, int]
Rotation = Dict[int, Tuple[int, ...]]

DEFAULT_MAX_ROTATIONS = 200_000


def trace_faces(rotation: Mapping[int, Sequence[int]]) -> List[Tuple[Dart, ...]]:
    """Faces of a rotation system, each starting at (and numbered by) its smallest dart."""
    successor: Dict[Dart, int] = {}
    for v, order in rotation.items():
        for i, u in enumerate(order):
            successor[(v, u)] = order[(i + 1) % len(order)]
    darts = sorted((v, u) for v, order in rotation.items() for u in order)
    seen: Set[Dart] = set()
    found = []
    for start in darts:
        if start in seen:
            continue
        walk = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            walk.append(dart)
            u, v = dart
            dart = (v, successor[(v, u)])
        found.append(tuple(walk))
    return found


@dataclass(frozen=True)
class Face:
    index: int
    darts: Tuple[Dart, ...]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(u for u, _ in self.darts)

    @property
    def length(self) -> int:
        return len(self.darts)

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.darts)

    def orientation(self, directions: Mapping[Edge, Dart]) -> int:
        """+1 if every dart follows its edge direction, -1 if every dart opposes it, else 0."""
        forward = [directions[edge_key(u, v)] == (u, v) for u, v in self.darts]
        if all(forward):
            return 1
        if not any(forward):
            return -1
        return 0


@dataclass(frozen=True)
class PlaneGraph:
    """A signed graph with a rotation system, edge directions and outer-face choice.

    ``outer_darts`` names one dart per component lying on its unbounded face;
    components without one use their longest face (lowest index on ties).
    """

    graph: SignedGraph
    rotation: Mapping[int, Tuple[int, ...]] = field(default_factory=dict)
    directions: Mapping[Edge, Dart] = field(default_factory=dict)
    outer_darts: Tuple[Dart, ...] = ()

    def __post_init__(self) -> None:
        g = self.graph
        unknown = set(self.rotation) - set(g.vertices)
        if unknown:
            raise EmbeddingError(f"Rotation given for unknown vertices {sorted(unknown)}")
        rotation: Rotation = {}
        for v in g.vertices:
            nbrs = g.neighbors(v)
            order = self.rotation.get(v)
            if order is None and len(nbrs) <= 2:
                order = sorted(nbrs)
            order = tuple(order or ())
            if len(order) != len(set(order)) or set(order) != set(nbrs):
                raise EmbeddingError(
                    f"Rotation at {v} is {list(order)}, neighbors are {sorted(nbrs)}"
                )
            rotation[v] = order

        directions: Dict[Edge, Dart] = {}
        for key, dart in self.directions.items():
            tail, head = dart
            normalized = edge_key(*key)
            if normalized != edge_key(tail, head):
                raise EmbeddingError(f"Direction {tail}->{head} does not match edge {normalized}")
            directions[normalized] = (tail, head)
        missing = set(g.signs) - set(directions)
        extra = set(directions) - set(g.signs)
        if missing or extra:
            raise EmbeddingError(
                f"Directions must cover exactly the edges (missing {sorted(missing)}, extra {sorted(extra)})"
            )
        for u, v in self.outer_darts:
            if not g.has_edge(u, v):
                raise EmbeddingError(f"Outer dart ({u}, {v}) is not an edge")

        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "directions", directions)
        object.__setattr__(self, "outer_darts", tuple(self.outer_darts))

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        found = tuple(Face(i, darts) for i, darts in enumerate(trace_faces(self.rotation)))
        for component in self.graph.components():
            members = set(component)
            edges = sum(1 for u, v in self.graph.signs if u in members)
            if edges == 0:
                continue
            count = sum(1 for face in found if face.darts[0][0] in members)
            if len(members) - edges + count != 2:
                raise EulerViolationError(
                    f"Component {sorted(members)}: V - E + F = {len(members)} - {edges} + {count} != 2"
                )
        return found

    def face_of(self, dart: Dart) -> Face:
        for face in self.faces:
            if dart in face.darts:
                return face
        raise EmbeddingError(f"({dart[0]}, {dart[1]}) is not a dart")

    @cached_property
    def outer_faces(self) -> Tuple[int, ...]:
        chosen = []
        for component in self.graph.components():
            members = set(component)
            mine = [f for f in self.faces if f.darts[0][0] in members]
            if not mine:
                continue
            explicit = [f for f in mine if any(d in f.darts for d in self.outer_darts)]
            if explicit:
                chosen.append(explicit[0].index)
            else:
                chosen.append(max(mine, key=lambda f: (f.length, -f.index)).index)
        return tuple(sorted(chosen))

    @property
    def bounded_faces(self) -> Tuple[Face, ...]:
        outer = set(self.outer_faces)
        return tuple(f for f in self.faces if f.index not in outer)

    def with_graph(self, graph: SignedGraph) -> "PlaneGraph":
        """Same embedding over a re-signed payload."""
        return replace(self, graph=graph)

    def induced(self, vertices: Sequence[int]) -> "PlaneGraph":
        """Restriction to a union of whole components."""
        keep = set(vertices)
        sub = self.graph.induced(vertices)
        for v in keep:
            if any(w not in keep for w in self.graph.neighbors(v)):
                raise EmbeddingError("Restriction must keep whole components")
        return PlaneGraph(
            sub,
            {v: self.rotation[v] for v in sub.vertices},
            {key: d for key, d in self.directions.items() if key[0] in keep},
            tuple(d for d in self.outer_darts if d[0] in keep),
        )


def faces(p: PlaneGraph) -> List[Face]:
    return list(p.faces)


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    face: Optional[int] = None
    cycle: Tuple[int, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "face": self.face, "cycle": list(self.cycle)}


@dataclass(frozen=True)
class CheckerboardReport:
    valid: bool
    coloring: Optional[Dict[int, int]] = None
    violation: Optional[Violation] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "coloring": {str(k): v for k, v in sorted(self.coloring.items())} if self.coloring is not None else None,
            "violation": self.violation.to_dict() if self.violation else None,
        }


def bounded_dual(p: PlaneGraph) -> nx.Graph:
    """Bounded faces, joined when they share an edge."""
    bounded = {f.index for f in p.bounded_faces}
    dual = nx.Graph()
    dual.add_nodes_from(sorted(bounded))
    owner = {dart: f.index for f in p.faces for dart in f.darts}
    for (u, v), face in sorted(owner.items()):
        other = owner[(v, u)]
        if face in bounded and other in bounded and face != other:
            dual.add_edge(face, other)
    return dual


def _odd_cycle(graph: nx.Graph) -> Tuple[int, ...]:
    for cycle in nx.cycle_basis(graph):
        if len(cycle) % 2 == 1:
            return tuple(cycle)
    return ()


def validate_checkerboard(p: PlaneGraph) -> CheckerboardReport:
    for face in p.bounded_faces:
        if not face.is_simple() or face.orientation(p.directions) == 0:
            return CheckerboardReport(False, violation=Violation("face-not-directed", face=face.index))
    dual = bounded_dual(p)
    if not nx.is_bipartite(dual):
        return CheckerboardReport(False, violation=Violation("odd-dual-cycle", cycle=_odd_cycle(dual)))
    return CheckerboardReport(True, coloring=dict(sorted(nx.bipartite.color(dual).items())))


# -- moves ---------------------------------------------------------------------


def _insert_next_to(order: Tuple[int, ...], anchor: int, item: int, after: bool) -> Tuple[int, ...]:
    i = order.index(anchor) + (1 if after else 0)
    return order[:i] + (item,) + order[i:]


def _choose_outer(candidate: PlaneGraph, preferred: Set[Dart]) -> Tuple[Dart, ...]:
    chosen = []
    for component in candidate.graph.components():
        members = set(component)
        mine = [f for f in candidate.faces if f.darts[0][0] in members]
        if not mine:
            continue
        keep = next((f for f in mine if preferred.intersection(f.darts)), None)
        if keep is None:
            keep = max(mine, key=lambda f: (f.length, -f.index))
        chosen.append(keep.darts[0])
    return tuple(chosen)


def _face_directions(candidate: PlaneGraph, added: Set[Edge]) -> Optional[List[Dict[Edge, Dart]]]:
    """Directions for the new edges that keep every bounded face directed.

    A bounded face holding an old edge fixes the sense of its new edges. New
    edges left free by every face get both directions. None on a conflict.
    """
    forced: Dict[Edge, Dart] = {}
    for face in candidate.bounded_faces:
        old = next(((u, v) for u, v in face.darts if edge_key(u, v) not in added), None)
        if old is None:
            continue
        sense = candidate.directions[edge_key(*old)] == old
        for u, v in face.darts:
            key = edge_key(u, v)
            if key in added:
                dart = (u, v) if sense else (v, u)
                if forced.setdefault(key, dart) != dart:
                    return None
    free = sorted(added - set(forced))
    options = []
    for flips in itertools.product((False, True), repeat=len(free)):
        chosen = dict(forced)
        for key, flip in zip(free, flips):
            chosen[key] = (key[1], key[0]) if flip else key
        options.append(chosen)
    return options


def checkerboard_move(p: PlaneGraph, x: int, y: int) -> Tuple[PlaneGraph, MoveRecord]:
    """t'-move on the payload with a local repair of the embedding.

    Edges removed by the move leave the rotations. Each new edge (x, w) is
    tried on either side of y in the rotations at x and at w; its direction
    follows the bounded faces it borders. The first repair that yields a
    checkerboard graph wins. The outer face follows a surviving dart of the
    old one.
    """
    result, record = t_prime_move(p.graph, x, y)
    before, after = set(p.graph.signs), set(result.signs)
    removed = before - after
    added = sorted(after - before)
    added_set = set(added)

    rotation = dict(p.rotation)
    for u, v in removed:
        rotation[u] = tuple(w for w in rotation[u] if w != v)
        rotation[v] = tuple(w for w in rotation[v] if w != u)
    directions = {key: d for key, d in p.directions.items() if key not in removed}
    # placeholders until the faces are known
    directions.update({key: key for key in added})
    preferred = {d for index in p.outer_faces for d in p.faces[index].darts if edge_key(*d) in after}

    for choice in itertools.product((False, True), repeat=2 * len(added)):
        rot = dict(rotation)
        for k, key in enumerate(added):
            w = key[0] if key[1] == x else key[1]
            after_at_x, after_at_w = choice[2 * k: 2 * k + 2]
            rot[x] = _insert_next_to(rot[x], y, w, after_at_x)
            rot[w] = _insert_next_to(rot[w], y, x, after_at_w)
        try:
            candidate = PlaneGraph(result, rot, directions)
            candidate = replace(candidate, outer_darts=_choose_outer(candidate, preferred))
            options = _face_directions(candidate, added_set)
        except EmbeddingError:
            continue
        for chosen in options or ():
            repaired = replace(candidate, directions={**directions, **chosen})
            if validate_checkerboard(repaired).valid:
                return repaired, record
    raise ChecksFailedError(f"t'-move at ({x}, {y}) leaves no checkerboard embedding under local repair")


# -- embedding search ------------------------------------------------------------


def rotation_systems(component: nx.Graph, max_rotations: int = DEFAULT_MAX_ROTATIONS, *, unique_if_3_connected: bool = True) -> Iterator[Rotation]:
    """Rotation systems of a connected graph, first neighbor of each vertex fixed."""
    nodes = sorted(component.nodes)
    if unique_if_3_connected and len(nodes) >= 4 and nx.node_connectivity(component) >= 3:
        # 3-connected planar graphs embed uniquely up to reflection
        _, embedding = nx.check_planarity(component)
        yield {v: tuple(embedding.neighbors_cw_order(v)) for v in nodes}
        return
    total = math.prod(math.factorial(max(component.degree(v) - 1, 0)) for v in nodes)
    if total > max_rotations:
        raise SizeBoundError(f"{total} rotation systems exceed the limit of {max_rotations}")
    choices = []
    for v in nodes:
        nbrs = sorted(component[v])
        if not nbrs:
            choices.append([(v, ())])
        else:
            choices.append([(v, (nbrs[0],) + rest) for rest in itertools.permutations(nbrs[1:])])
    for combo in itertools.product(*choices):
        yield dict(combo)


def _embed_component(component: nx.Graph, max_rotations: int) -> Optional[Tuple[Rotation, Dict[Edge, Dart], Tuple[Dart, ...]]]:
    if component.number_of_edges() == 0:
        return {v: () for v in component.nodes}, {}, ()
    vertex_count, edge_count = component.number_of_nodes(), component.number_of_edges()
    for rotation in rotation_systems(component, max_rotations):
        walks = trace_faces(rotation)
        if vertex_count - edge_count + len(walks) != 2:
            continue
        owner = {dart: i for i, walk in enumerate(walks) for dart in walk}
        for outer in range(len(walks)):
            bounded = [i for i in range(len(walks)) if i != outer]
            if any(len({u for u, _ in walks[i]}) != len(walks[i]) for i in bounded):
                continue
            dual = nx.Graph()
            dual.add_nodes_from(bounded)
            for (u, v), face in owner.items():
                other = owner[(v, u)]
                if face != outer and other != outer and face != other:
                    dual.add_edge(face, other)
            if not nx.is_bipartite(dual):
                continue
            coloring = nx.bipartite.color(dual)
            directions: Dict[Edge, Dart] = {}
            for i in bounded:
                for u, v in walks[i]:
                    directions[edge_key(u, v)] = (u, v) if coloring[i] == 0 else (v, u)
            for u, v in component.edges:
                directions.setdefault(edge_key(u, v), edge_key(u, v))
            return rotation, directions, (walks[outer][0],)
    return None


def checkerboard_embedding(g: SignedGraph, max_rotations: int = DEFAULT_MAX_ROTATIONS) -> Optional[PlaneGraph]:
    """Some checkerboard embedding of g, or None when there is none."""
    underlying = g.to_networkx()
    planar, _ = nx.check_planarity(underlying)
    if not planar:
        return None
    rotation: Rotation = {}
    directions: Dict[Edge, Dart] = {}
    outer: List[Dart] = []
    for component in g.components():
        found = _embed_component(underlying.subgraph(component).copy(), max_rotations)
        if found is None:
            return None
        rot, dirs, darts = found
        rotation.update(rot)
        directions.update(dirs)
        outer.extend(darts)
    return PlaneGraph(g, rotation, directions, tuple(outer))


# -- reduction -------------------------------------------------------------------


class CheckerboardPolicy:
    """t'-moves realized on a plane embedding, kept only when the result stays checkerboard."""

    name = "checkerboard"

    def __init__(self, max_rotations: int = DEFAULT_MAX_ROTATIONS):
        self.max_rotations = max_rotations

    def initial_state(self, graph: SignedGraph) -> PlaneGraph:
        embedding = checkerboard_embedding(graph, self.max_rotations)
        if embedding is None:
            raise NotCheckerboardError("Graph has no checkerboard embedding")
        return embedding

    def graph_of(self, state: PlaneGraph) -> SignedGraph:
        return state.graph

    def state_key(self, state: PlaneGraph) -> Tuple:
        """Labeled payload with its rotations, directions and outer faces."""
        return (
            labeled_key(state.graph),
            tuple(sorted(state.rotation.items())),
            tuple(sorted(state.directions.items())),
            state.outer_faces,
        )

    def admits(self, graph: SignedGraph, pivot: int, other: int) -> bool:
        return graph.has_edge(pivot, other) and graph.degree(other) <= 3

    def successors(self, state: PlaneGraph) -> Iterator[Tuple[MoveRecord, PlaneGraph]]:
        for x, y in ordered_edge_ends(state.graph):
            if not self.admits(state.graph, x, y):
                continue
            try:
                result, record = checkerboard_move(state, x, y)
            except (NotRepresentableError, ChecksFailedError):
                continue
            yield record, result


def reduce_plane(p: PlaneGraph, *, limits=None) -> List["ReductionResult"]:
    """Checkerboard-mode reduction of every component, starting from this embedding."""
    from .reducer import reduce_to_ade

    report = validate_checkerboard(p)
    if not report.valid:
        raise NotCheckerboardError(f"Not a checkerboard graph: {report.violation.kind}")
    return [
        reduce_to_ade(p.graph.induced(component), "checkerboard", limits=limits, plane=p.induced(component))
        for component in p.graph.components()
    ]


# -- text format -----------------------------------------------------------------


def parse_plane_graph(text: str) -> PlaneGraph:
    rotation: Rotation = {}
    directions: Dict[Edge, Dart] = {}
    outer: List[int] = []

    def on_dir(lineno: int, tokens: List[str]) -> None:
        if len(tokens) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'dir <tail> <head>'")
        tail, head = parse_vertex_id(tokens[1], lineno), parse_vertex_id(tokens[2], lineno)
        key = edge_key(tail, head)
        if key in directions:
            raise GraphFormatError(f"line {lineno}: duplicate direction for edge {key}")
        directions[key] = (tail, head)

    def on_rot(lineno: int, tokens: List[str]) -> None:
        rest = [t for t in tokens[1:] if t != ":"]
        if not rest:
            raise GraphFormatError(f"line {lineno}: expected 'rot <v>: <neighbors>'")
        v = parse_vertex_id(rest[0].rstrip(":"), lineno)
        if v in rotation:
            raise GraphFormatError(f"line {lineno}: duplicate rotation for vertex {v}")
        rotation[v] = tuple(parse_vertex_id(t, lineno) for t in rest[1:])

    def on_outer(lineno: int, tokens: List[str]) -> None:
        if len(tokens) != 2 or not tokens[1].isdigit():
            raise GraphFormatError(f"line {lineno}: expected 'outer <face-index>'")
        outer.append(int(tokens[1]))

    graph, _ = parse_graph_directives(
        iter_directives(text), headers=("plane",), extra={"dir": on_dir, "rot": on_rot, "outer": on_outer}
    )
    plane = PlaneGraph(graph, rotation, directions)
    if outer:
        darts = []
        for index in outer:
            if index >= len(plane.faces):
                raise EmbeddingError(f"outer face {index} does not exist ({len(plane.faces)} faces)")
            darts.append(plane.faces[index].darts[0])
        plane = replace(plane, outer_darts=tuple(darts))
    return plane


def load_plane_graph(path: Path | str) -> PlaneGraph:
    return parse_plane_graph(Path(path).read_text(encoding="utf-8"))


def format_plane_graph(p: PlaneGraph) -> str:
    lines = format_graph(p.graph, header="plane").splitlines()
    lines.extend(f"dir {t} {h}" for t, h in (p.directions[key] for key in sorted(p.directions)))
    lines.extend(f"rot {v}: {' '.join(str(w) for w in p.rotation[v])}" for v in p.graph.vertices if p.rotation[v])
    lines.extend(f"outer {index}" for index in p.outer_faces)
    return "\n".join(lines) + "\n"
