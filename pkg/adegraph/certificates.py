"""Non-positivity certificates: cycle parity, forbidden induced trees, miner."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .errors import SizeBoundError
from .graph import SignedGraph, cycle_graph, from_networkx, gram_matrix
from .linalg import definiteness


@dataclass(frozen=True)
class CycleReport:
    cycle: Tuple[int, ...]
    length: int
    negative_count: int
    positive: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "cycle": list(self.cycle),
            "length": self.length,
            "negative_count": self.negative_count,
            "positive": self.positive,
        }


def _canonical_rotation(cycle: List[int]) -> Tuple[int, ...]:
    k = cycle.index(min(cycle))
    rotated = cycle[k:] + cycle[:k]
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def cycle_report(g: SignedGraph, cycle: Tuple[int, ...]) -> CycleReport:
    n = len(cycle)
    negatives = sum(1 for i in range(n) if g.sign(cycle[i], cycle[(i + 1) % n]) < 0)
    return CycleReport(cycle, n, negatives, (negatives - n) % 2 == 1)


def enumerate_cycles(g: SignedGraph, max_vertices: int = 12) -> List[CycleReport]:
    """Every simple cycle of the underlying graph, sorted by (length, vertices)."""
    if len(g) > max_vertices:
        raise SizeBoundError(f"Cycle enumeration supports at most {max_vertices} vertices, got {len(g)}")
    cycles = {
        _canonical_rotation(list(c))
        for c in nx.simple_cycles(g.to_networkx())
        if len(c) >= 3
    }
    return [cycle_report(g, c) for c in sorted(cycles, key=lambda c: (len(c), c))]


def all_cycles_positive(g: SignedGraph, max_vertices: int = 12) -> Tuple[bool, Optional[CycleReport]]:
    """(True, None) when every cycle is positive, else (False, first failing cycle)."""
    for report in enumerate_cycles(g, max_vertices):
        if not report.positive:
            return False, report
    return True, None


def find_induced_non_positive_cycle(g: SignedGraph, max_vertices: int = 12) -> Optional[CycleReport]:
    """A non-positive cycle without chords: its own Gram form is singular."""
    for report in enumerate_cycles(g, max_vertices):
        if report.positive:
            continue
        if g.induced(report.cycle).edge_count() == report.length:
            return report
    return None


# -- forbidden patterns ------------------------------------------------------


@dataclass(frozen=True)
class MinorPattern:
    name: str
    alias: str
    graph: SignedGraph
    determinant: int
    kernel: Optional[Tuple[int, ...]]

    def manifest_entry(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "alias": self.alias,
            "vertices": len(self.graph),
            "determinant": self.determinant,
            "kernel": list(self.kernel) if self.kernel is not None else None,
        }


@dataclass(frozen=True)
class MinorCatalog:
    patterns: Tuple[MinorPattern, ...]

    def names(self) -> List[str]:
        return [p.name for p in self.patterns]

    def get(self, name: str) -> MinorPattern:
        for pattern in self.patterns:
            if pattern.name == name:
                return pattern
        raise KeyError(name)

    def manifest(self) -> List[Dict[str, object]]:
        return [p.manifest_entry() for p in self.patterns]


@dataclass(frozen=True)
class MinorCertificate:
    pattern_name: str
    embedded_vertices: Tuple[Tuple[int, int], ...]

    def host_vertices(self) -> Tuple[int, ...]:
        return tuple(host for _, host in self.embedded_vertices)

    def to_dict(self) -> Dict[str, object]:
        return {
            "pattern": self.pattern_name,
            "embedding": {str(p): h for p, h in self.embedded_vertices},
        }


def find_forbidden_minor(g: SignedGraph, catalog: MinorCatalog) -> Optional[MinorCertificate]:
    """First catalog pattern (catalog order) occurring as an induced subgraph."""
    host = g.to_networkx()
    for pattern in catalog.patterns:
        if len(pattern.graph) > len(g):
            continue
        matcher = GraphMatcher(host, pattern.graph.to_networkx())
        for mapping in matcher.subgraph_isomorphisms_iter():
            inverse = sorted((p, h) for h, p in mapping.items())
            return MinorCertificate(pattern.name, tuple(inverse))
    return None


def check_minor_certificate(g: SignedGraph, cert: MinorCertificate, catalog: MinorCatalog) -> bool:
    """The embedded vertices induce the pattern's underlying graph exactly."""
    pattern = catalog.get(cert.pattern_name).graph
    mapping = dict(cert.embedded_vertices)
    if sorted(mapping) != sorted(pattern.vertices) or len(set(mapping.values())) != len(mapping):
        return False
    for a in pattern.vertices:
        for b in pattern.vertices:
            if a < b and pattern.has_edge(a, b) != g.has_edge(mapping[a], mapping[b]):
                return False
    return True


# -- miner -------------------------------------------------------------------


def nonisomorphic_trees(n: int) -> Iterator[nx.Graph]:
    """Unlabeled trees on n vertices (n >= 1)."""
    if n == 1:
        single = nx.Graph()
        single.add_node(0)
        yield single
        return
    yield from nx.nonisomorphic_trees(n)


def _is_positive(g: SignedGraph) -> bool:
    return definiteness(gram_matrix(g)).positive


def _is_minimal_non_positive(g: SignedGraph) -> bool:
    if _is_positive(g):
        return False
    return all(_is_positive(g.induced(v for v in g.vertices if v != drop)) for drop in g.vertices)


def _arm_lengths(tree: SignedGraph, center: int) -> List[int]:
    lengths = []
    for start in sorted(tree.neighbors(center)):
        previous, current, length = center, start, 1
        while tree.degree(current) == 2:
            previous, current = current, next(w for w in tree.neighbors(current) if w != previous)
            length += 1
        lengths.append(length)
    return sorted(lengths)


def _affine_name(tree: SignedGraph) -> Tuple[str, str]:
    degrees = sorted((tree.degree(v) for v in tree.vertices), reverse=True)
    n = len(tree)
    if degrees[0] == 4 and n == 5:
        return "D~4", "X"
    branch = [v for v in tree.vertices if tree.degree(v) == 3]
    if len(branch) == 2 and degrees[0] == 3:
        return f"D~{n - 1}", "D~"
    if len(branch) == 1 and degrees[0] == 3:
        arms = tuple(_arm_lengths(tree, branch[0]))
        named = {(2, 2, 2): ("E~6", "Y"), (1, 3, 3): ("E~7", "T"), (1, 2, 5): ("E~8", "E")}
        if arms in named:
            return named[arms]
    return f"tree-{n}-{''.join(str(d) for d in degrees)}", ""


def mine_minimal_minors(max_n: int = 9) -> MinorCatalog:
    """Minimal non-positive trees and cycle classes on at most max_n vertices."""
    if max_n > 10:
        raise SizeBoundError(f"Miner supports max_n <= 10, got {max_n}")
    patterns: List[MinorPattern] = []
    for n in range(1, max_n + 1):
        for tree in nonisomorphic_trees(n):
            g = from_networkx(tree)
            if not _is_minimal_non_positive(g):
                continue
            report = definiteness(gram_matrix(g))
            name, alias = _affine_name(g)
            patterns.append(MinorPattern(name, alias, g, report.determinant, report.witness))
        if n >= 3:
            # a cycle qualifies only if both switching classes are non-positive
            classes = [cycle_graph(n, negatives) for negatives in (0, 1)]
            if all(_is_minimal_non_positive(c) for c in classes):
                report = definiteness(gram_matrix(classes[0]))
                patterns.append(MinorPattern(f"C{n}", "", classes[0], report.determinant, report.witness))
    patterns.sort(key=lambda p: (len(p.graph), p.name))
    return MinorCatalog(tuple(patterns))


@functools.lru_cache(maxsize=None)
def default_catalog(max_n: int = 9) -> MinorCatalog:
    return mine_minimal_minors(max_n)
