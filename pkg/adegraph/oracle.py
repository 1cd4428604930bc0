"""Brute-force enumerators and independent oracles for cross-checking the engine."""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .certificates import (
    all_cycles_positive,
    check_minor_certificate,
    find_forbidden_minor,
    mine_minimal_minors,
    nonisomorphic_trees,
)
from .errors import (
    ChecksFailedError,
    NotRepresentableError,
    SearchExhaustedError,
    SizeBoundError,
)
from .graph import Edge, SignedGraph, canonical_key, edge_key, format_graph, from_networkx, gram_matrix, wheel_graph
from .linalg import DefinitenessReport, MatrixLike, Verdict, as_rows, check_witness, definiteness, integer_vector
from .moves import MoveRecord, ReductionTranscript, apply_move, certificate, step_matrix, t_move, t_prime_move, verify_certificate
from .plane import (
    DEFAULT_MAX_ROTATIONS,
    PlaneGraph,
    checkerboard_embedding,
    checkerboard_move,
    rotation_systems,
    trace_faces,
    validate_checkerboard,
)
from .policies.signed import ordered_edge_ends
from .reducer import SearchLimits, expected_det, reduce_to_ade

MODULI = ("isomorphism+switching", "isomorphism", "none")
SIGNINGS = ("all", "positive-cycles-only", "unsigned")
FAMILIES = ("all", "trees")

SIGNED_MAX_VERTICES = 8
TREE_MAX_VERTICES = 10
LABELED_MAX_VERTICES = 5
BRUTE_FORCE_MAX_VERTICES = 10


@dataclass(frozen=True)
class EnumerationSpec:
    max_vertices: int
    connected: bool = True
    modulo: str = "isomorphism+switching"
    signing: str = "all"
    family: str = "all"
    min_vertices: int = 1

    def __post_init__(self) -> None:
        if self.modulo not in MODULI:
            raise ValueError(f"Unknown modulo {self.modulo!r}. Valid options: {', '.join(MODULI)}")
        if self.signing not in SIGNINGS:
            raise ValueError(f"Unknown signing {self.signing!r}. Valid options: {', '.join(SIGNINGS)}")
        if self.family not in FAMILIES:
            raise ValueError(f"Unknown family {self.family!r}. Valid options: {', '.join(FAMILIES)}")
        bound = TREE_MAX_VERTICES if self.family == "trees" else SIGNED_MAX_VERTICES
        if self.modulo == "none":
            bound = min(bound, LABELED_MAX_VERTICES)
        if self.max_vertices > bound:
            raise SizeBoundError(
                f"Enumeration of {self.family} graphs (modulo {self.modulo}) supports at most "
                f"{bound} vertices, got {self.max_vertices}"
            )


# -- unsigned graphs -------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _atlas() -> Dict[int, Tuple[nx.Graph, ...]]:
    groups: Dict[int, List[nx.Graph]] = {}
    for graph in nx.graph_atlas_g():
        groups.setdefault(graph.number_of_nodes(), []).append(graph)
    return {n: tuple(graphs) for n, graphs in groups.items()}


@functools.lru_cache(maxsize=None)
def _eight_vertex_graphs() -> Tuple[nx.Graph, ...]:
    """All graphs on 8 vertices: every one is a 7-vertex graph plus a vertex."""
    buckets: Dict[str, List[nx.Graph]] = {}
    found: List[nx.Graph] = []
    for base in _atlas()[7]:
        for size in range(8):
            for subset in itertools.combinations(range(7), size):
                graph = base.copy()
                graph.add_node(7)
                graph.add_edges_from((7, v) for v in subset)
                key = nx.weisfeiler_lehman_graph_hash(graph)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(graph, other) for other in bucket):
                    continue
                bucket.append(graph)
                found.append(graph)
    return tuple(found)


def unsigned_graphs(n: int, connected: bool = True, family: str = "all") -> List[nx.Graph]:
    """Unlabeled graphs on exactly n vertices, in a fixed order."""
    if family == "trees":
        return list(nonisomorphic_trees(n))
    if n <= 7:
        graphs = list(_atlas()[n])
    elif n == 8:
        graphs = list(_eight_vertex_graphs())
    else:
        raise SizeBoundError(f"Unsigned enumeration supports at most 8 vertices, got {n}")
    if connected:
        graphs = [g for g in graphs if nx.is_connected(g)]
    return graphs


def _labeled_graphs(n: int, connected: bool, family: str) -> Iterator[nx.Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(p for i, p in enumerate(pairs) if mask >> i & 1)
        if connected and not nx.is_connected(graph):
            continue
        if family == "trees" and not nx.is_forest(graph):
            continue
        yield graph


# -- symmetry ----------------------------------------------------------------------


def _compose(h: Tuple[int, ...], g: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(h[g[i]] for i in range(len(g)))


def _closure(generators: Sequence[Tuple[int, ...]], n: int) -> set:
    identity = tuple(range(n))
    group = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for element in frontier:
            for gen in generators:
                product = _compose(gen, element)
                if product not in group:
                    group.add(product)
                    fresh.append(product)
        frontier = fresh
    return group


def automorphism_generators(graph: nx.Graph) -> List[Tuple[int, ...]]:
    """A generating set of Aut(graph), nodes assumed to be 0..n-1."""
    n = graph.number_of_nodes()
    generators: List[Tuple[int, ...]] = []
    group = _closure(generators, n)
    for mapping in GraphMatcher(graph, graph).isomorphisms_iter():
        perm = tuple(mapping[v] for v in range(n))
        if perm not in group:
            generators.append(perm)
            group = _closure(generators, n)
    return generators


class _SigningSpace:
    """Signings of a fixed graph as bitmasks, with symmetry and switching actions."""

    def __init__(self, graph: nx.Graph, switching: bool):
        self.graph = graph
        self.edges: List[Edge] = sorted(edge_key(u, v) for u, v in graph.edges)
        self.switching = switching
        self.tree_steps: List[Tuple[int, int]] = []
        self.roots: List[int] = []
        tree = set()
        for component in sorted(nx.connected_components(graph), key=min):
            root = min(component)
            self.roots.append(root)
            for parent, child in nx.bfs_edges(graph, root, sort_neighbors=sorted):
                self.tree_steps.append((parent, child))
                tree.add(edge_key(parent, child))
        self.free = [e for e in self.edges if e not in tree] if switching else list(self.edges)

    @property
    def size(self) -> int:
        return 1 << len(self.free)

    def signs(self, mask: int) -> Dict[Edge, int]:
        signs = {e: 1 for e in self.edges}
        for i, e in enumerate(self.free):
            if mask >> i & 1:
                signs[e] = -1
        return signs

    def encode(self, signs: Dict[Edge, int]) -> int:
        potential = {root: 1 for root in self.roots}
        if self.switching:
            for parent, child in self.tree_steps:
                potential[child] = potential[parent] * signs[edge_key(parent, child)]
        mask = 0
        for i, (u, v) in enumerate(self.free):
            value = signs[(u, v)] * potential.get(u, 1) * potential.get(v, 1) if self.switching else signs[(u, v)]
            if value < 0:
                mask |= 1 << i
        return mask

    def orbit_representatives(self, generators: Sequence[Tuple[int, ...]]) -> Iterator[int]:
        seen = set()
        for mask in range(self.size):
            if mask in seen:
                continue
            yield mask
            seen.add(mask)
            stack = [mask]
            while stack:
                signs = self.signs(stack.pop())
                for perm in generators:
                    image = self.encode({edge_key(perm[u], perm[v]): s for (u, v), s in signs.items()})
                    if image not in seen:
                        seen.add(image)
                        stack.append(image)


def _signed(graph: nx.Graph, signs: Dict[Edge, int]) -> SignedGraph:
    return SignedGraph(sorted(graph.nodes), [(u, v, s) for (u, v), s in sorted(signs.items())])


def enumerate_graphs(spec: EnumerationSpec) -> Iterator[SignedGraph]:
    """Every graph the enumeration spec selects, duplicate-free and in a deterministic order."""
    for n in range(max(spec.min_vertices, 1), spec.max_vertices + 1):
        if spec.modulo == "none":
            bases: Iterator[nx.Graph] = _labeled_graphs(n, spec.connected, spec.family)
        else:
            bases = iter(unsigned_graphs(n, spec.connected, spec.family))
        for base in bases:
            if spec.signing == "unsigned":
                yield from_networkx(base)
                continue
            space = _SigningSpace(base, switching=spec.modulo == "isomorphism+switching")
            if spec.modulo == "none":
                masks: Iterator[int] = iter(range(space.size))
            else:
                masks = space.orbit_representatives(automorphism_generators(base))
            for mask in masks:
                g = _signed(base, space.signs(mask))
                if spec.signing == "positive-cycles-only" and not all_cycles_positive(g, max(n, 3))[0]:
                    continue
                yield g


def positive_graphs(max_n: int, canonical_max_vertices: int = 10) -> List[SignedGraph]:
    """Connected positive signed graphs up to isomorphism and switching.

    Grown one vertex at a time: deleting a suitable vertex from a connected
    positive graph leaves a connected positive graph.
    """
    level = [SignedGraph([0], [])]
    found = list(level)
    for n in range(2, max_n + 1):
        fresh: Dict[Tuple, SignedGraph] = {}
        for base in level:
            for pattern in itertools.product((0, 1, -1), repeat=n - 1):
                if not any(pattern):
                    continue
                edges = base.edges() + [(v, n - 1, s) for v, s in zip(base.vertices, pattern) if s]
                g = SignedGraph(range(n), edges)
                if not definiteness(gram_matrix(g)).positive:
                    continue
                fresh.setdefault(canonical_key(g, canonical_max_vertices), g)
        level = [fresh[key] for key in sorted(fresh)]
        found.extend(level)
    return found


# -- independent definiteness --------------------------------------------------------


class _PrincipalMinors:
    """Principal and bordered minors of one matrix, keyed by vertex bitmask.

    ``border(S)[p][q]`` is det of M[S, S] bordered by row p and column q
    appended last. A set's minors come from any parent S - {u} with a nonzero
    minor through Sylvester's determinant identity. Cofactor expansion covers
    sets whose parents are all singular.
    """

    def __init__(self, rows: List[List[int]]):
        self.rows = rows
        self.n = len(rows)
        self._minors: Dict[int, int] = {0: 1}
        self._borders: Dict[int, List[List[int]]] = {0: rows}
        self._cofactors: Dict[Tuple[int, int], int] = {}

    def cofactor(self, row_mask: int, col_mask: int) -> int:
        """det(M[rows, cols]) in sorted order by Laplace expansion along the top row."""
        if row_mask == 0:
            return 1
        key = (row_mask, col_mask)
        cached = self._cofactors.get(key)
        if cached is not None:
            return cached
        r = (row_mask & -row_mask).bit_length() - 1
        rest = row_mask & ~(1 << r)
        total = 0
        position = 0
        for c in range(self.n):
            if not col_mask >> c & 1:
                continue
            if self.rows[r][c]:
                sign = -1 if position % 2 else 1
                total += sign * self.rows[r][c] * self.cofactor(rest, col_mask & ~(1 << c))
            position += 1
        self._cofactors[key] = total
        return total

    def _parent(self, mask: int) -> Optional[int]:
        for u in range(self.n - 1, -1, -1):
            if mask >> u & 1 and self.minor(mask & ~(1 << u)) != 0:
                return u
        return None

    def minor(self, mask: int) -> int:
        value = self._minors.get(mask)
        if value is None:
            u = self._parent(mask)
            if u is None:
                value = self.cofactor(mask, mask)
            else:
                value = self.border(mask & ~(1 << u))[u][u]
            self._minors[mask] = value
        return value

    def border(self, mask: int) -> List[List[int]]:
        table = self._borders.get(mask)
        if table is None:
            table = self._compute_border(mask)
            self._borders[mask] = table
        return table

    def _compute_border(self, mask: int) -> List[List[int]]:
        n = self.n
        outside = [p for p in range(n) if not mask >> p & 1]
        table = [[0] * n for _ in range(n)]
        u = self._parent(mask)
        if u is None:
            # callers only border sets with a nonzero minor
            for p in outside:
                for q in outside:
                    # move row p and column q from sorted position to last
                    shift = bin(mask >> p).count("1") + bin(mask >> q).count("1")
                    sign = -1 if shift % 2 else 1
                    table[p][q] = sign * self.cofactor(mask | 1 << p, mask | 1 << q)
            return table
        parent = mask & ~(1 << u)
        b = self.border(parent)
        d = self.minor(parent)
        pivot = b[u][u]
        for i, p in enumerate(outside):
            bp = b[p]
            for q in outside[i:]:
                value = (bp[q] * pivot - bp[u] * b[u][q]) // d
                table[p][q] = value
                table[q][p] = value
        return table


def brute_force_definiteness(m: MatrixLike) -> DefinitenessReport:
    """Sylvester's test over every principal minor.

    Minors are scanned by size and the scan stops at the first size holding a
    negative one. The witness comes from the adjugate of the smallest failing
    principal submatrix.
    """
    rows = as_rows(m)
    n = len(rows)
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise SizeBoundError(f"Brute-force definiteness supports at most {BRUTE_FORCE_MAX_VERTICES} rows, got {n}")
    table = _PrincipalMinors(rows)
    leading = tuple(table.minor((1 << k) - 1) for k in range(1, n + 1))

    negative: Optional[int] = None
    zero: Optional[int] = None
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            s = sum(1 << i for i in combo)
            value = table.minor(s)
            if value < 0 and negative is None:
                negative = s
            elif value == 0 and zero is None:
                zero = s
        if negative is not None:
            break
    if negative is None and zero is None:
        return DefinitenessReport(Verdict.POSITIVE_DEFINITE, None, leading)

    subset = negative if negative is not None else zero
    members = [i for i in range(n) if subset >> i & 1]

    def adj(a: int, b: int) -> int:
        sign = -1 if (members.index(a) + members.index(b)) % 2 else 1
        return sign * table.cofactor(subset & ~(1 << b), subset & ~(1 << a))

    diagonal = {s: adj(s, s) for s in members}
    if negative is None:
        pivot = next(s for s in members if diagonal[s] != 0)
        x = {a: adj(a, pivot) for a in members}
        verdict = Verdict.POSITIVE_SEMIDEFINITE
    else:
        pivot = next((s for s in members if diagonal[s] > 0), None)
        if pivot is not None:
            x = {a: adj(a, pivot) for a in members}
        else:
            s, t = next((s, t) for s in members for t in members if s != t and adj(s, t) != 0)
            sign = 1 if adj(s, t) > 0 else -1
            x = {a: adj(a, s) + sign * adj(a, t) for a in members}
        verdict = Verdict.INDEFINITE
    witness = integer_vector([x.get(i, 0) for i in range(n)])
    return DefinitenessReport(verdict, witness, leading)


# -- suites ------------------------------------------------------------------------


@dataclass
class SuiteReport:
    suite: str
    params: Dict[str, Any]
    counts: Dict[str, int] = field(default_factory=dict)
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def bump(self, key: str, amount: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + amount

    def fail(self, reason: str, graph: Optional[SignedGraph] = None, **extra: Any) -> None:
        entry: Dict[str, Any] = {"reason": reason}
        if graph is not None:
            entry["graph"] = format_graph(graph)
        entry.update(extra)
        self.failures.append(entry)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "counts": dict(sorted(self.counts.items())),
            "failures": self.failures,
        }


def _progress(quiet: bool, message: str) -> None:
    if not quiet:
        print(f"[INFO] {message}")


def definiteness_agreement(max_n: int = 7, *, quiet: bool = True) -> SuiteReport:
    """Kernel verdicts match the principal-minor test on every enumerated graph."""
    report = SuiteReport("definiteness", {"max_n": max_n})
    for n in range(1, max_n + 1):
        _progress(quiet, f"definiteness: {n} vertices")
        for g in enumerate_graphs(EnumerationSpec(n, min_vertices=n)):
            m = gram_matrix(g)
            fast, slow = definiteness(m, witness=False), brute_force_definiteness(m)
            report.bump("graphs")
            report.bump(f"verdict:{fast.verdict.value}")
            if fast.verdict is not slow.verdict or fast.determinant != slow.determinant:
                report.fail("verdicts disagree", g, fast=fast.verdict.value, brute_force=slow.verdict.value)
            elif not slow.positive and not check_witness(m, slow):
                report.fail("brute-force witness does not verify", g)
    return report


def _embeddable(g: SignedGraph, max_rotations: int) -> Optional[bool]:
    try:
        return checkerboard_embedding(g, max_rotations) is not None
    except SizeBoundError:
        return None


def exhaustive_equivalence_check(
    max_n: int = 6,
    modes: Sequence[str] = ("t", "tprime"),
    *,
    limits: Optional[SearchLimits] = None,
    max_rotations: int = DEFAULT_MAX_ROTATIONS,
    quiet: bool = True,
) -> SuiteReport:
    """Reduction succeeds exactly on positive graphs, with verified certificates."""
    limits = limits or SearchLimits()
    report = SuiteReport("equivalence", {"max_n": max_n, "modes": list(modes)})
    for n in range(1, max_n + 1):
        _progress(quiet, f"equivalence: {n} vertices")
        for g in enumerate_graphs(EnumerationSpec(n, min_vertices=n)):
            verdict = definiteness(gram_matrix(g))
            report.bump("graphs")
            report.bump("positive" if verdict.positive else "non_positive")
            names = {}
            for mode in modes:
                try:
                    result = reduce_to_ade(g, mode, limits=limits)
                except SearchExhaustedError as e:
                    embeddable = _embeddable(g, max_rotations) if mode == "tprime" else True
                    if embeddable is False:
                        report.bump(f"outside_hypothesis:{mode}")
                    else:
                        report.bump(f"exhausted:{mode}")
                        report.fail(f"search exhausted in mode {mode}: {e}", g)
                    continue
                if result.success != verdict.positive:
                    report.fail(f"mode {mode} disagrees with definiteness", g)
                    continue
                if not result.success:
                    if result.minor is not None or result.cycle is not None:
                        report.bump("witnessed_non_positive")
                    continue
                if not result.verified():
                    report.fail(f"certificate does not verify in mode {mode}", g)
                if result.ade.rank != len(g) or expected_det(result.ade) != verdict.determinant:
                    report.fail(f"(n, det) does not match {result.ade.name}", g)
                names[mode] = result.ade.name
            if len(set(names.values())) > 1:
                report.fail("modes disagree on the type", g, types=names)
            if names:
                report.bump(f"type:{next(iter(names.values()))}")
    return report


def _degree_claim(
    suite: str, max_n: int, violates: Callable[[SignedGraph], bool], max_rotations: int, quiet: bool
) -> SuiteReport:
    report = SuiteReport(suite, {"max_n": max_n})
    _progress(quiet, f"{suite}: growing positive graphs up to {max_n} vertices")
    for g in positive_graphs(max_n):
        report.bump("positive")
        if not violates(g):
            continue
        report.bump("candidates")
        embeddable = _embeddable(g, max_rotations)
        if embeddable is None:
            report.bump("undecided")
        elif embeddable:
            report.fail("checkerboard-embeddable counterexample", g)
    return report


def low_degree_check(max_n: int = 7, *, max_rotations: int = DEFAULT_MAX_ROTATIONS, quiet: bool = True) -> SuiteReport:
    """Positive checkerboard graphs on >= 3 vertices have a vertex of degree 2 or 3."""
    def violates(g: SignedGraph) -> bool:
        return len(g) >= 3 and not any(g.degree(v) in (2, 3) for v in g.vertices)

    return _degree_claim("lemma33", max_n, violates, max_rotations, quiet)


def degree6_check(max_n: int = 7, *, max_rotations: int = DEFAULT_MAX_ROTATIONS, quiet: bool = True) -> SuiteReport:
    """Positive checkerboard graphs have maximum degree at most 6."""
    return _degree_claim("degree6", max_n, lambda g: g.max_degree() > 6, max_rotations, quiet)


def coherence_check(max_n: int = 7, *, max_rotations: int = DEFAULT_MAX_ROTATIONS, quiet: bool = True) -> SuiteReport:
    """Compare "every bounded face is a directed cycle" with full checkerboard validity.

    Runs over every plane embedding, outer face and edge orientation of the
    connected graphs on at most max_n vertices. 3-connected graphs use their
    unique embedding, since reflection keeps every face. Orientations are
    generated face by face; edges on no bounded face are counted, not tried.
    """
    report = SuiteReport("coherence", {"max_n": max_n})
    for n in range(1, max_n + 1):
        _progress(quiet, f"coherence: {n} vertices")
        for base in unsigned_graphs(n):
            if not nx.check_planarity(base)[0]:
                continue
            g = from_networkx(base)
            try:
                systems = list(rotation_systems(base, max_rotations))
            except SizeBoundError:
                report.bump("skipped_graphs")
                continue
            report.bump("plane_graphs")
            for rotation in systems:
                walks = trace_faces(rotation)
                if g.edge_count() and n - g.edge_count() + len(walks) != 2:
                    continue
                report.bump("embeddings")
                for outer in range(max(len(walks), 1)):
                    _coherence_outer(report, g, rotation, walks, outer)
    return report


def _coherence_outer(report: SuiteReport, g: SignedGraph, rotation, walks, outer: int) -> None:
    edges = sorted(g.signs)
    report.bump("orientations", 1 << len(edges))
    bounded = [walk for i, walk in enumerate(walks) if i != outer]
    if any(len({u for u, _ in walk}) != len(walk) for walk in bounded):
        return
    free = len(edges) - len({edge_key(u, v) for walk in bounded for u, v in walk})
    outer_dart = (walks[outer][0],) if walks else ()
    for senses in range(1 << len(bounded)):
        dirs: Dict[Edge, Tuple[int, int]] = {}
        consistent = True
        for i, walk in enumerate(bounded):
            for u, v in walk:
                dart = (u, v) if senses >> i & 1 else (v, u)
                if dirs.setdefault(edge_key(u, v), dart) != dart:
                    consistent = False
                    break
            if not consistent:
                break
        if not consistent:
            continue
        # outer-only edges never touch a bounded face, so one orientation stands for all
        report.bump("coherent", 1 << free)
        for e in edges:
            dirs.setdefault(e, e)
        plane = PlaneGraph(g, rotation, dirs, outer_dart)
        if validate_checkerboard(plane).valid:
            report.bump("valid", 1 << free)
        else:
            report.bump("coherent_only", 1 << free)
            report.fail("coherent faces but invalid checkerboard", g, rotation={str(v): list(r) for v, r in rotation.items()})


def w7_check() -> SuiteReport:
    """Every signing of the 7-vertex wheel with all cycles positive is non-positive."""
    report = SuiteReport("w7", {"signings": "rim edges, spokes positive"})
    wheel = wheel_graph(6)
    rim = [e for e in sorted(wheel.signs) if 0 not in e]
    for mask in range(1 << len(rim)):
        signs = dict(wheel.signs)
        for i, e in enumerate(rim):
            if mask >> i & 1:
                signs[e] = -1
        g = wheel.with_signs(signs)
        report.bump("signings")
        cycles_ok, _ = all_cycles_positive(g)
        positive = definiteness(gram_matrix(g)).positive
        if cycles_ok:
            report.bump("all_cycles_positive")
        if positive:
            report.bump("positive")
        if cycles_ok and positive:
            report.fail("positive wheel signing", g)
    return report


EXPECTED_MINORS = {5: {"D~4"}, 6: {"D~5"}, 7: {"D~6", "E~6"}, 8: {"D~7", "E~7"}, 9: {"D~8", "E~8"}}


def miner_completeness_check(max_n: int = 9, graph_max_n: int = 7, *, quiet: bool = True) -> SuiteReport:
    """The mined catalog is the expected list and certifies every small non-positive graph.

    Every non-positive tree on at most max_n vertices must contain a catalog
    pattern. Every connected non-positive graph on at most graph_max_n
    vertices must contain a non-positive cycle or a catalog pattern.
    """
    report = SuiteReport("completeness", {"max_n": max_n, "graph_max_n": graph_max_n})
    catalog = mine_minimal_minors(max_n)
    expected = {name for n, names in EXPECTED_MINORS.items() if n <= max_n for name in names}
    found = set(catalog.names())
    report.counts["patterns"] = len(catalog.patterns)
    if found != expected:
        report.fail("catalog differs from the expected list", missing=sorted(expected - found), extra=sorted(found - expected))
    for pattern in catalog.patterns:
        if not check_witness(gram_matrix(pattern.graph), definiteness(gram_matrix(pattern.graph))):
            report.fail(f"kernel witness of {pattern.name} does not verify")
    for n in range(1, max_n + 1):
        _progress(quiet, f"completeness: trees on {n} vertices")
        for tree in nonisomorphic_trees(n):
            g = from_networkx(tree)
            report.bump("trees")
            if definiteness(gram_matrix(g)).positive:
                continue
            report.bump("non_positive_trees")
            cert = find_forbidden_minor(g, catalog)
            if cert is None or not check_minor_certificate(g, cert, catalog):
                report.fail("non-positive tree without a catalog pattern", g)
    for n in range(1, min(graph_max_n, max_n) + 1):
        _progress(quiet, f"completeness: signed graphs on {n} vertices")
        for g in enumerate_graphs(EnumerationSpec(n, min_vertices=n)):
            report.bump("graphs")
            if definiteness(gram_matrix(g), witness=False).positive:
                continue
            report.bump("non_positive_graphs")
            cycles_ok, _ = all_cycles_positive(g)
            if not cycles_ok:
                report.bump("by_cycle")
                continue
            cert = find_forbidden_minor(g, catalog)
            if cert is not None and check_minor_certificate(g, cert, catalog):
                report.bump("by_pattern")
            else:
                report.fail("non-positive graph with positive cycles and no catalog pattern", g)
    return report


def _random_graph(rng: random.Random, max_vertices: int) -> SignedGraph:
    n = rng.randint(2, max_vertices)
    edges = [
        (u, v, rng.choice((1, -1)))
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < 0.4
    ]
    return SignedGraph(range(n), edges)


def random_transcript(rng: random.Random, max_vertices: int = 9, max_moves: int = 30) -> ReductionTranscript:
    """A replayable transcript of t-moves, switches and permutations on a random graph."""
    start = _random_graph(rng, max_vertices)
    current = start
    moves: List[MoveRecord] = []
    for _ in range(rng.randint(1, max_moves)):
        roll = rng.random()
        if roll < 0.15:
            record = MoveRecord.switch(rng.choice(current.vertices))
        elif roll < 0.2:
            order = list(current.vertices)
            rng.shuffle(order)
            record = MoveRecord.permute(order)
        else:
            pairs = ordered_edge_ends(current)
            if not pairs:
                continue
            x, y = rng.choice(pairs)
            try:
                _, record = t_move(current, x, y)
            except NotRepresentableError:
                continue
        current = apply_move(current, record)
        moves.append(record)
    return ReductionTranscript(start, tuple(moves), current)


def certificate_soundness_check(
    trials: int = 1000, seed: int = 20240501, max_vertices: int = 9, max_moves: int = 30
) -> SuiteReport:
    report = SuiteReport("congruence", {"trials": trials, "seed": seed, "max_vertices": max_vertices, "max_moves": max_moves})
    rng = random.Random(seed)
    for _ in range(trials):
        transcript = random_transcript(rng, max_vertices, max_moves)
        report.bump("transcripts")
        report.bump("moves", len(transcript.moves))
        cert = certificate(transcript)
        if verify_certificate(gram_matrix(transcript.start), cert, gram_matrix(transcript.end)):
            report.bump("verified")
        else:
            report.fail("certificate does not verify", transcript.start, moves=[m.to_dict() for m in transcript.moves])
    return report


def _shared_embedding(cache: Dict[Any, Any], g: SignedGraph, max_rotations: int) -> Optional[PlaneGraph]:
    """checkerboard_embedding of g, searched once per underlying labeled graph."""
    key = (tuple(g.vertices), frozenset(g.signs))
    if key not in cache:
        try:
            cache[key] = checkerboard_embedding(g, max_rotations)
        except SizeBoundError as e:
            cache[key] = e
    found = cache[key]
    if isinstance(found, SizeBoundError):
        raise found
    return found.with_graph(g) if found is not None else None


def checkerboard_move_check(
    max_n: int = 7, *, max_rotations: int = DEFAULT_MAX_ROTATIONS, quiet: bool = True
) -> SuiteReport:
    """Accepted checkerboard moves keep determinant, verdict and checkerboard validity."""
    report = SuiteReport("moves", {"max_n": max_n})
    embeddings: Dict[Any, Any] = {}
    for n in range(1, max_n + 1):
        _progress(quiet, f"moves: {n} vertices")
        for g in enumerate_graphs(EnumerationSpec(n, min_vertices=n)):
            try:
                plane = _shared_embedding(embeddings, g, max_rotations)
            except SizeBoundError:
                report.bump("undecided")
                continue
            if plane is None:
                continue
            report.bump("plane_graphs")
            before = gram_matrix(g)
            verdict = definiteness(before, witness=False)
            for x, y in ordered_edge_ends(g):
                if g.degree(y) > 3:
                    continue
                report.bump("attempted")
                try:
                    moved, record = checkerboard_move(plane, x, y)
                except NotRepresentableError:
                    report.bump("not_representable")
                    continue
                except ChecksFailedError:
                    report.bump("checks_failed")
                    continue
                report.bump("accepted")
                after = gram_matrix(moved.graph)
                moved_verdict = definiteness(after, witness=False)
                problems = []
                if moved.graph != t_prime_move(g, x, y)[0]:
                    problems.append("payload differs from the t'-move")
                if moved_verdict.verdict is not verdict.verdict:
                    problems.append("verdict changed")
                if moved_verdict.determinant != verdict.determinant:
                    problems.append("determinant changed")
                if not validate_checkerboard(moved).valid:
                    problems.append("result is not checkerboard")
                if not verify_certificate(before, step_matrix(g, record), after):
                    problems.append("congruence does not verify")
                for problem in problems:
                    report.fail(problem, g, move=record.to_dict())
    return report


SUITES = ("definiteness", "equivalence", "lemma33", "low-degree", "degree6", "coherence", "w7", "completeness", "congruence", "moves")


def run_suite(name: str, config: Dict[str, Any], max_n: Optional[int] = None, *, quiet: bool = True) -> SuiteReport:
    """Run a suite by name with parameters drawn from the config."""
    oracle = config.get("oracle", {})
    limits_section = config.get("limits", {})
    default_n = int(oracle.get("max_n", 6))
    rotations = int(limits_section.get("embedding_max_rotations", DEFAULT_MAX_ROTATIONS))
    if name == "definiteness":
        return definiteness_agreement(max_n or 7, quiet=quiet)
    if name == "equivalence":
        return exhaustive_equivalence_check(
            max_n or default_n, limits=SearchLimits.from_config(config), max_rotations=rotations, quiet=quiet
        )
    if name in ("lemma33", "low-degree"):
        return low_degree_check(max_n or default_n, max_rotations=rotations, quiet=quiet)
    if name == "degree6":
        return degree6_check(max_n or default_n, max_rotations=rotations, quiet=quiet)
    if name == "coherence":
        return coherence_check(max_n or 7, max_rotations=rotations, quiet=quiet)
    if name == "w7":
        return w7_check()
    if name == "completeness":
        return miner_completeness_check(max_n or int(limits_section.get("miner_max_vertices", 9)), quiet=quiet)
    if name == "congruence":
        return certificate_soundness_check(
            int(oracle.get("certificate_trials", 1000)), int(oracle.get("seed", 20240501)), max_vertices=max_n or 9
        )
    if name == "moves":
        return checkerboard_move_check(max_n or 7, max_rotations=rotations, quiet=quiet)
    raise ValueError(f"Unknown oracle suite: {name}. Valid options: {', '.join(SUITES)}")
