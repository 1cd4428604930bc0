"""Reduction of positive signed graphs to ADE diagrams, with certificates."""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .certificates import (
    CycleReport,
    MinorCertificate,
    all_cycles_positive,
    default_catalog,
    find_forbidden_minor,
    find_induced_non_positive_cycle,
)
from .errors import (
    DisconnectedGraphError,
    InvalidGraphError,
    NotPositiveError,
    SearchExhaustedError,
)
from .graph import SignedGraph, canonical_key, gram_matrix, labeled_key, tree_normalize
from .linalg import DefinitenessReport, definiteness
from .moves import (
    CongruenceCertificate,
    MoveRecord,
    ReductionTranscript,
    apply_move,
    certificate,
    verify_certificate,
)
from .policies import MovePolicy, create_policy

FAMILIES = ("A", "D", "E")


@dataclass(frozen=True)
class ADEType:
    family: str
    rank: int
    vertex_map: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not valid_rank(self.family, self.rank):
            raise InvalidGraphError(f"No Dynkin diagram {self.family}{self.rank}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "rank": self.rank,
            "name": self.name,
            "vertex_map": list(self.vertex_map),
            "determinant": expected_det(self),
        }


def valid_rank(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family == "D":
        return rank >= 4
    if family == "E":
        return rank in (6, 7, 8)
    return False


def expected_det(t: ADEType) -> int:
    if t.family == "A":
        return t.rank + 1
    if t.family == "D":
        return 4
    return {6: 3, 7: 2, 8: 1}[t.rank]


def identify_type(n: int, det: int) -> Optional[Tuple[str, int]]:
    """ADE (family, rank) with the given vertex count and determinant, if any."""
    for family in FAMILIES:
        if valid_rank(family, n) and expected_det(ADEType(family, n)) == det:
            return family, n
    return None


def ade_diagram(family: str, rank: int) -> SignedGraph:
    """All-positive diagram on 0..rank-1 in canonical vertex order."""
    if not valid_rank(family, rank):
        raise InvalidGraphError(f"No Dynkin diagram {family}{rank}")
    if family == "A":
        edges = [(i, i + 1, 1) for i in range(rank - 1)]
    else:
        branch = 1 if family == "D" else 2
        edges = [(i, i + 1, 1) for i in range(rank - 2)] + [(branch, rank - 1, 1)]
    return SignedGraph(range(rank), edges)


# -- recognition ---------------------------------------------------------------


def _walk(g: SignedGraph, previous: int, current: int) -> List[int]:
    """Vertices of the arm starting at ``current``, walking away from ``previous``."""
    arm = [current]
    while g.degree(current) == 2:
        previous, current = current, next(w for w in g.neighbors(current) if w != previous)
        arm.append(current)
    return arm


def recognize_ade(g: SignedGraph) -> Optional[ADEType]:
    n = len(g)
    if n == 0 or g.edge_count() != n - 1 or not g.is_connected():
        return None
    if n == 1:
        return ADEType("A", 1, g.vertices)
    degrees = {v: g.degree(v) for v in g.vertices}
    branch = [v for v, d in degrees.items() if d >= 3]
    if not branch:
        start = min(v for v, d in degrees.items() if d == 1)
        end_path = [start] + _walk(g, start, next(iter(g.neighbors(start)))) if n > 1 else [start]
        return ADEType("A", n, tuple(end_path))
    if len(branch) != 1 or degrees[branch[0]] != 3:
        return None
    center = branch[0]
    arms = sorted((_walk(g, center, w) for w in g.neighbors(center)), key=lambda arm: (len(arm), arm[0]))
    lengths = tuple(len(arm) for arm in arms)
    if lengths[0] == 1 and lengths[1] == 1:
        # D4 has three unit arms; the lowest remaining one continues the path
        path, leaf = sorted(arms[1:], key=lambda arm: (-len(arm), arm[0]))
        vertex_map = (arms[0][0], center) + tuple(path) + (leaf[0],)
        return ADEType("D", n, vertex_map)
    if lengths[0] == 1 and lengths[1] == 2 and lengths[2] in (2, 3, 4):
        vertex_map = (arms[1][1], arms[1][0], center) + tuple(arms[2]) + (arms[0][0],)
        return ADEType("E", n, vertex_map)
    return None


def peel_order(g: SignedGraph) -> List[int]:
    """Order whose every prefix induces a connected subgraph.

    Built backwards by repeatedly removing a non-cut vertex of lowest degree
    (largest id on ties).
    """
    if not g.is_connected():
        raise DisconnectedGraphError("peel_order needs a connected graph")
    remaining = g.to_networkx()
    removed: List[int] = []
    while remaining.number_of_nodes() > 1:
        cut = set(nx.articulation_points(remaining))
        candidates = [v for v in remaining.nodes if v not in cut]
        victim = max(candidates, key=lambda v: (-remaining.degree(v), v))
        removed.append(victim)
        remaining.remove_node(victim)
    removed.extend(remaining.nodes)
    return removed[::-1]


# -- search --------------------------------------------------------------------


@dataclass(frozen=True)
class SearchLimits:
    max_depth: int = 25
    max_expansions: int = 20000
    canonical_max_vertices: int = 10
    cycle_max_vertices: int = 12
    miner_max_vertices: int = 9

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "SearchLimits":
        search = config.get("search", {})
        limits = config.get("limits", {})
        return cls(
            max_depth=int(search.get("max_depth", cls.max_depth)),
            max_expansions=int(search.get("max_expansions", cls.max_expansions)),
            canonical_max_vertices=int(limits.get("canonical_max_vertices", cls.canonical_max_vertices)),
            cycle_max_vertices=int(limits.get("cycle_max_vertices", cls.cycle_max_vertices)),
            miner_max_vertices=int(limits.get("miner_max_vertices", cls.miner_max_vertices)),
        )


def search_key(g: SignedGraph, limits: SearchLimits) -> Tuple:
    if len(g) <= limits.canonical_max_vertices:
        return canonical_key(g, limits.canonical_max_vertices)
    return labeled_key(g)


def reduction_score(g: SignedGraph) -> Tuple[int, int, int]:
    return (g.edge_count(), g.cycle_rank(), g.max_degree())


def degree_score(g: SignedGraph) -> Tuple[int, int, int]:
    excess = sum(max(0, g.degree(v) - 3) for v in g.vertices)
    return (excess, g.edge_count(), g.max_degree())


def is_diagram(g: SignedGraph) -> bool:
    return recognize_ade(g) is not None


def best_first_search(
    start: Any,
    policy: MovePolicy,
    goal: Callable[[SignedGraph], bool],
    score: Callable[[SignedGraph], Tuple],
    limits: SearchLimits,
) -> Tuple[List[MoveRecord], Any]:
    """Deterministic best-first search over policy moves.

    States are memoized on their isomorphism-and-switching class together
    with the policy's state key; ties in the score are broken by depth, then
    lexicographically on the (pivot, other) sequence of the path.
    """
    counter = itertools.count()
    graph = policy.graph_of(start)
    seen = {(search_key(graph, limits), policy.state_key(start))}
    heap: List[Tuple] = [(score(graph), 0, (), next(counter), start, ())]
    expansions = 0
    while heap:
        _, depth, _, _, state, path = heapq.heappop(heap)
        graph = policy.graph_of(state)
        if goal(graph):
            return list(path), state
        if depth >= limits.max_depth:
            continue
        expansions += 1
        if expansions > limits.max_expansions:
            raise SearchExhaustedError(
                f"{policy.name}-search gave up after {limits.max_expansions} expansions"
            )
        for record, successor in policy.successors(state):
            successor_graph = policy.graph_of(successor)
            key = (search_key(successor_graph, limits), policy.state_key(successor))
            if key in seen:
                continue
            seen.add(key)
            new_path = path + (record,)
            order = tuple((m.pivot, m.other) for m in new_path)
            heapq.heappush(
                heap, (score(successor_graph), depth + 1, order, next(counter), successor, new_path)
            )
    raise SearchExhaustedError(
        f"{policy.name}-search exhausted {len(seen)} states without reaching the goal"
    )


# -- reduction -----------------------------------------------------------------


@dataclass(frozen=True)
class ReductionResult:
    report: DefinitenessReport
    ade: Optional[ADEType] = None
    transcript: Optional[ReductionTranscript] = None
    certificate: Optional[CongruenceCertificate] = None
    minor: Optional[MinorCertificate] = None
    cycle: Optional[CycleReport] = None
    mode: str = "t"

    @property
    def success(self) -> bool:
        return self.ade is not None

    def verified(self) -> bool:
        if not self.success:
            return False
        return verify_certificate(
            gram_matrix(self.transcript.start), self.certificate, gram_matrix(self.transcript.end)
        )

    def to_dict(self, include_certificate: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "status": "ade" if self.success else "non_positive",
            "mode": self.mode,
            "definiteness": self.report.to_dict(),
        }
        if self.success:
            data["type"] = self.ade.to_dict()
            data["transcript"] = self.transcript.to_dict(self.certificate if include_certificate else None)
            data["verified"] = self.verified()
        else:
            data["minor"] = self.minor.to_dict() if self.minor else None
            data["cycle"] = self.cycle.to_dict() if self.cycle else None
        return data


def _failure(g: SignedGraph, report: DefinitenessReport, limits: SearchLimits, mode: str) -> ReductionResult:
    minor = find_forbidden_minor(g, default_catalog(limits.miner_max_vertices))
    cycle = None
    if len(g) <= limits.cycle_max_vertices:
        cycle = find_induced_non_positive_cycle(g, limits.cycle_max_vertices)
    return ReductionResult(report=report, minor=minor, cycle=cycle, mode=mode)


def _degree_normalize_moves(g: SignedGraph, policy: MovePolicy, limits: SearchLimits) -> List[MoveRecord]:
    if g.max_degree() <= 3:
        return []
    path, _ = best_first_search(g, policy, lambda h: h.max_degree() <= 3, degree_score, limits)
    return path


def degree_normalize(
    g: SignedGraph, mode: str = "tprime", limits: Optional[SearchLimits] = None
) -> Tuple[SignedGraph, ReductionTranscript]:
    """Bring every vertex to degree <= 3 by moves of the given mode."""
    if mode not in ("t", "tprime"):
        raise ValueError(f"degree_normalize supports modes 't' and 'tprime', got {mode!r}")
    limits = limits or SearchLimits()
    report = definiteness(gram_matrix(g))
    if not report.positive:
        raise NotPositiveError(report)
    moves = _degree_normalize_moves(g, create_policy(mode), limits)
    transcript = ReductionTranscript.record(g, moves)
    return transcript.end, transcript


def _stage_moves(stage: SignedGraph, policy: MovePolicy, limits: SearchLimits) -> List[MoveRecord]:
    try:
        moves = _degree_normalize_moves(stage, policy, limits)
    except SearchExhaustedError:
        moves = []
    for record in moves:
        stage = apply_move(stage, record)
    path, _ = best_first_search(stage, policy, is_diagram, reduction_score, limits)
    return moves + path


def _staged_moves(g: SignedGraph, policy: MovePolicy, limits: SearchLimits) -> List[MoveRecord]:
    """Grow a diagram along the peel order, resolving one reinserted vertex at a time.

    The moves found on each prefix are replayed on the whole graph. If the
    policy would reject a replayed move there (a t'-move whose other endpoint
    has gained degree through later vertices) a global search takes over.
    """
    order = peel_order(g)
    current = g
    applied: List[MoveRecord] = []
    for k in range(2, len(order) + 1):
        stage = current.induced(order[:k])
        if is_diagram(stage):
            continue
        try:
            stage_moves = _stage_moves(stage, policy, limits)
        except SearchExhaustedError:
            return best_first_search(g, policy, is_diagram, reduction_score, limits)[0]
        for record in stage_moves:
            if not policy.admits(current, record.pivot, record.other):
                return best_first_search(g, policy, is_diagram, reduction_score, limits)[0]
            current = apply_move(current, record)
            applied.append(record)
    return applied


def _present_canonically(g: SignedGraph, moves: List[MoveRecord]) -> Tuple[ADEType, ReductionTranscript]:
    """Append a Permute into diagram order and Switches making it all-positive."""
    transcript = ReductionTranscript.record(g, moves)
    ade = recognize_ade(transcript.end)
    if ade is None:
        raise SearchExhaustedError("Reduction ended on a graph that is not an ADE diagram")
    extra: List[MoveRecord] = []
    if tuple(ade.vertex_map) != transcript.end.vertices:
        extra.append(MoveRecord.permute(ade.vertex_map))
    reordered = transcript.end.reorder(ade.vertex_map)
    _, flips = tree_normalize(reordered)
    extra.extend(MoveRecord.switch(v) for v in flips)
    return ade, transcript.extended(extra)


def reduce_to_ade(
    g: SignedGraph,
    mode: str = "t",
    *,
    limits: Optional[SearchLimits] = None,
    plane: Optional[Any] = None,
) -> ReductionResult:
    """Reduce a connected signed graph to its ADE diagram, or certify non-positivity.

    In checkerboard mode ``plane`` fixes the starting embedding (a PlaneGraph
    over ``g``); otherwise one is searched for.
    """
    limits = limits or SearchLimits()
    if not g.is_connected():
        raise DisconnectedGraphError("reduce_to_ade needs a connected graph; use reduce_components")
    report = definiteness(gram_matrix(g))
    if not report.positive:
        return _failure(g, report, limits, mode)

    policy = create_policy(mode)
    normalized, flips = tree_normalize(g)
    moves = [MoveRecord.switch(v) for v in flips]
    if mode == "checkerboard":
        start = policy.initial_state(normalized) if plane is None else plane.with_graph(normalized)
        moves += best_first_search(start, policy, is_diagram, reduction_score, limits)[0]
    else:
        moves += _staged_moves(normalized, policy, limits)

    ade, transcript = _present_canonically(g, moves)
    return ReductionResult(
        report=report,
        ade=ade,
        transcript=transcript,
        certificate=certificate(transcript),
        mode=mode,
    )


def reduce_components(
    g: SignedGraph, mode: str = "t", *, limits: Optional[SearchLimits] = None
) -> List[ReductionResult]:
    """One reduction result per connected component (a forest of ADE types)."""
    return [reduce_to_ade(g.induced(component), mode, limits=limits) for component in g.components()]


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    graph: SignedGraph
    definiteness: DefinitenessReport
    all_cycles_positive: Optional[bool]
    failing_cycle: Optional[CycleReport]
    non_positive_cycle: Optional[CycleReport]
    minor: Optional[MinorCertificate]
    components: Tuple[ReductionResult, ...] = field(default_factory=tuple)

    @property
    def positive(self) -> bool:
        return self.definiteness.positive

    @property
    def types(self) -> List[ADEType]:
        return [result.ade for result in self.components if result.ade is not None]

    def to_dict(self, include_certificate: bool = False) -> Dict[str, Any]:
        return {
            "vertices": len(self.graph),
            "edges": self.graph.edge_count(),
            "positive": self.positive,
            "definiteness": self.definiteness.to_dict(),
            "all_cycles_positive": self.all_cycles_positive,
            "failing_cycle": self.failing_cycle.to_dict() if self.failing_cycle else None,
            "non_positive_cycle": self.non_positive_cycle.to_dict() if self.non_positive_cycle else None,
            "minor": self.minor.to_dict() if self.minor else None,
            "types": [t.name for t in self.types],
            "components": [r.to_dict(include_certificate) for r in self.components],
        }


def classify(
    g: SignedGraph, mode: str = "t", *, limits: Optional[SearchLimits] = None
) -> ClassificationReport:
    limits = limits or SearchLimits()
    report = definiteness(gram_matrix(g))
    cycles_ok: Optional[bool] = None
    failing = induced = None
    if len(g) <= limits.cycle_max_vertices:
        cycles_ok, failing = all_cycles_positive(g, limits.cycle_max_vertices)
        induced = find_induced_non_positive_cycle(g, limits.cycle_max_vertices)
    minor = None
    components: Tuple[ReductionResult, ...] = ()
    if report.positive:
        components = tuple(reduce_components(g, mode, limits=limits))
    else:
        minor = find_forbidden_minor(g, default_catalog(limits.miner_max_vertices))
    return ClassificationReport(g, report, cycles_ok, failing, induced, minor, components)


def summarize_types(types: Sequence[ADEType]) -> str:
    return " + ".join(t.name for t in types) if types else "(empty)"
