"""Positive braid words, their brick bases, linking graphs and Seifert forms."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import BraidSyntaxError, IndexOutOfRangeError, NonPositiveGeneratorError
from .graph import GramMatrix, SignedGraph
from .linalg import DefinitenessReport, Inertia, definiteness, determinant, inertia, to_object_array
from .reducer import ADEType, ReductionResult, SearchLimits, reduce_components

_GENERATOR = re.compile(r"^[sσ]?(-?\d+)$")
_STRANDS = re.compile(r"^strands=(\d+)$")


@dataclass(frozen=True)
class BraidWord:
    strand_count: int
    letters: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.strand_count < 2:
            raise BraidSyntaxError(f"A braid needs at least 2 strands, got {self.strand_count}")
        if not self.letters:
            raise BraidSyntaxError("Braid word is empty")
        for k in self.letters:
            if k < 1:
                raise NonPositiveGeneratorError(f"Generator index must be >= 1, got {k}")
            if k >= self.strand_count:
                raise IndexOutOfRangeError(
                    f"Generator s{k} needs at least {k + 1} strands, braid has {self.strand_count}"
                )

    def columns(self) -> List[int]:
        return sorted(set(self.letters))

    def __str__(self) -> str:
        return " ".join(f"s{k}" for k in self.letters)


def parse_braid(text: str, strands: Optional[int] = None) -> BraidWord:
    """Parse ``s1 s2 s1`` or ``1 2 1``, optionally prefixed by ``strands=<s>``."""
    tokens = text.replace(",", " ").split()
    if tokens:
        match = _STRANDS.match(tokens[0])
        if match:
            strands = int(match.group(1))
            tokens = tokens[1:]
    if not tokens:
        raise BraidSyntaxError("Braid word is empty")
    letters = []
    for token in tokens:
        match = _GENERATOR.match(token)
        if not match:
            raise BraidSyntaxError(f"Unrecognized braid token {token!r}")
        index = int(match.group(1))
        if index < 1:
            raise NonPositiveGeneratorError(f"Only positive generators are supported, got {token!r}")
        letters.append(index)
    count = strands if strands is not None else max(letters) + 1
    return BraidWord(count, tuple(letters))


@dataclass(frozen=True)
class Brick:
    """Two consecutive occurrences of the same generator (letter positions)."""

    column: int
    start: int
    end: int


def bricks(b: BraidWord) -> List[Brick]:
    positions: Dict[int, List[int]] = {}
    for position, k in enumerate(b.letters):
        positions.setdefault(k, []).append(position)
    found = [
        Brick(column, occ[i], occ[i + 1])
        for column, occ in positions.items()
        for i in range(len(occ) - 1)
    ]
    return sorted(found, key=lambda brick: brick.start)


def _linking(p: Brick, q: Brick) -> int:
    """Seifert entry V[p, q] for bricks ordered p.start < q.start."""
    if p.column == q.column:
        return -1 if q.start == p.end else 0
    if abs(p.column - q.column) == 1 and q.start < p.end < q.end:
        return 1 if q.column == p.column + 1 else -1
    return 0


@dataclass(frozen=True)
class SeifertForm:
    """Upper unitriangular V; ``symmetrized`` is M = V + V^T."""

    rows: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def to_numpy(self) -> np.ndarray:
        return to_object_array(self.rows) if self.rows else np.zeros((0, 0), dtype=object)

    @property
    def symmetrized(self) -> GramMatrix:
        v = self.to_numpy()
        return GramMatrix.from_rows((v + v.T).tolist())


def seifert_form(b: BraidWord) -> SeifertForm:
    basis = bricks(b)
    r = len(basis)
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        rows[i][i] = 1
        for j in range(i + 1, r):
            rows[i][j] = _linking(basis[i], basis[j])
    return SeifertForm(tuple(tuple(row) for row in rows))


def linking_graph(b: BraidWord) -> Tuple[SignedGraph, SeifertForm]:
    """Signed graph on bricks 0..r-1 whose Gram form is V + V^T."""
    form = seifert_form(b)
    return form.symmetrized.to_graph(), form


def signature(form: SeifertForm) -> int:
    return inertia(form.symmetrized).signature if form.rank else 0


@dataclass(frozen=True)
class LinkClassification:
    braid: BraidWord
    graph: SignedGraph
    form: SeifertForm
    inertia: Inertia
    determinant: int
    report: DefinitenessReport
    components: Tuple[ReductionResult, ...] = ()

    @property
    def rank(self) -> int:
        return self.form.rank

    @property
    def signature(self) -> int:
        return self.inertia.signature

    @property
    def maximal_signature(self) -> bool:
        return self.signature == self.rank

    @property
    def types(self) -> List[ADEType]:
        return [r.ade for r in self.components if r.ade is not None]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "braid": str(self.braid),
            "strands": self.braid.strand_count,
            "rank": self.rank,
            "signature": self.signature,
            "determinant": self.determinant,
            "maximal_signature": self.maximal_signature,
            "definiteness": self.report.to_dict(),
            "seifert": [list(row) for row in self.form.rows],
            "types": [t.name for t in self.types],
            "components": [r.to_dict(include_certificate=False) for r in self.components],
        }


def classify_link(
    b: BraidWord, mode: str = "t", *, reduce: bool = True, limits: Optional[SearchLimits] = None
) -> LinkClassification:
    """Signature data of the closure, plus ADE types when the form is definite."""
    graph, form = linking_graph(b)
    m = form.symmetrized
    report = definiteness(m)
    components: Tuple[ReductionResult, ...] = ()
    if reduce and report.positive:
        components = tuple(reduce_components(graph, mode, limits=limits))
    return LinkClassification(
        braid=b,
        graph=graph,
        form=form,
        inertia=inertia(m) if form.rank else Inertia(0, 0, 0),
        determinant=determinant(m),
        report=report,
        components=components,
    )
