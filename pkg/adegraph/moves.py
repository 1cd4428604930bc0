"""t-moves, transcripts and unimodular congruence certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import (
    DegreeTooHighError,
    DimensionMismatchError,
    GraphFormatError,
    MoveError,
    NoSuchEdgeError,
    NotRepresentableError,
    TranscriptReplayError,
)
from .graph import GramMatrix, SignedGraph, edge_key, format_graph, gram_matrix, parse_graph, switch
from .linalg import MatrixLike, determinant, identity, to_object_array


class MoveKind(str, Enum):
    TMOVE = "tmove"
    SWITCH = "switch"
    PERMUTE = "permute"


@dataclass(frozen=True)
class MoveRecord:
    kind: MoveKind
    pivot: Optional[int] = None
    other: Optional[int] = None
    epsilon: Optional[int] = None
    vertex: Optional[int] = None
    permutation: Optional[Tuple[int, ...]] = None

    @classmethod
    def tmove(cls, pivot: int, other: int, epsilon: int) -> "MoveRecord":
        return cls(MoveKind.TMOVE, pivot=pivot, other=other, epsilon=epsilon)

    @classmethod
    def switch(cls, vertex: int) -> "MoveRecord":
        return cls(MoveKind.SWITCH, vertex=vertex)

    @classmethod
    def permute(cls, order: Sequence[int]) -> "MoveRecord":
        return cls(MoveKind.PERMUTE, permutation=tuple(order))

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is MoveKind.TMOVE:
            return {"kind": self.kind.value, "pivot": self.pivot, "other": self.other, "epsilon": self.epsilon}
        if self.kind is MoveKind.SWITCH:
            return {"kind": self.kind.value, "vertex": self.vertex}
        return {"kind": self.kind.value, "permutation": list(self.permutation or ())}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MoveRecord":
        try:
            kind = MoveKind(data["kind"])
            if kind is MoveKind.TMOVE:
                return cls.tmove(int(data["pivot"]), int(data["other"]), int(data["epsilon"]))
            if kind is MoveKind.SWITCH:
                return cls.switch(int(data["vertex"]))
            return cls.permute([int(v) for v in data["permutation"]])
        except (KeyError, ValueError, TypeError) as e:
            raise GraphFormatError(f"Malformed move record {data!r}: {e}") from None

    def __str__(self) -> str:
        if self.kind is MoveKind.TMOVE:
            return f"t[{self.pivot},{self.other}] eps={self.epsilon:+d}"
        if self.kind is MoveKind.SWITCH:
            return f"switch {self.vertex}"
        return f"permute {list(self.permutation or ())}"


# -- moves -------------------------------------------------------------------


def t_move(g: SignedGraph, x: int, y: int) -> Tuple[SignedGraph, MoveRecord]:
    """t-move on edge (x, y) with pivot x.

    Every other neighbor v of y has its edge to x toggled: created with sign
    -eps * sign(y, v), or removed when it already carries exactly that
    opposite value. Finally sign(x, y) becomes -eps.
    """
    eps = g.sign(x, y)
    if eps == 0:
        g.index_of(x)
        g.index_of(y)
        raise NoSuchEdgeError(x, y)
    signs = dict(g.signs)
    x_nbrs = g.neighbors(x)
    for v, s_yv in g.neighbors(y).items():
        if v == x:
            continue
        updated = x_nbrs.get(v, 0) - eps * s_yv
        key = edge_key(x, v)
        if updated == 0:
            del signs[key]
        elif updated in (1, -1):
            signs[key] = updated
        else:
            raise NotRepresentableError(x, y, v)
    signs[edge_key(x, y)] = -eps
    return g.with_signs(signs), MoveRecord.tmove(x, y, eps)


def t_prime_move(g: SignedGraph, x: int, y: int) -> Tuple[SignedGraph, MoveRecord]:
    """t-move restricted to deg(y) in {1, 2, 3}."""
    if not g.has_edge(x, y):
        g.index_of(x)
        g.index_of(y)
        raise NoSuchEdgeError(x, y)
    degree = g.degree(y)
    if degree > 3:
        raise DegreeTooHighError(y, degree)
    return t_move(g, x, y)


def underlying_t_move(graph: nx.Graph, x: int, y: int) -> nx.Graph:
    """Sign-forgetting shadow of a t-move: toggle x's edges to N(y) - {x}."""
    if not graph.has_edge(x, y):
        raise NoSuchEdgeError(x, y)
    result = graph.copy()
    for v in graph.neighbors(y):
        if v == x:
            continue
        if result.has_edge(x, v):
            result.remove_edge(x, v)
        else:
            result.add_edge(x, v)
    return result


def apply_move(g: SignedGraph, move: MoveRecord) -> SignedGraph:
    if move.kind is MoveKind.TMOVE:
        current = g.sign(move.pivot, move.other)
        if current == 0:
            raise NoSuchEdgeError(move.pivot, move.other)
        if current != move.epsilon:
            raise MoveError(
                f"Recorded sign {move.epsilon:+d} on ({move.pivot}, {move.other}) "
                f"does not match current sign {current:+d}"
            )
        return t_move(g, move.pivot, move.other)[0]
    if move.kind is MoveKind.SWITCH:
        return switch(g, move.vertex)
    return g.reorder(move.permutation or ())


def apply_transcript(start: SignedGraph, moves: Iterable[MoveRecord]) -> SignedGraph:
    g = start
    for index, move in enumerate(moves):
        try:
            g = apply_move(g, move)
        except MoveError as e:
            raise TranscriptReplayError(index, e) from e
        except ValueError as e:
            raise TranscriptReplayError(index, e) from e
    return g


@dataclass(frozen=True)
class ReductionTranscript:
    start: SignedGraph
    moves: Tuple[MoveRecord, ...]
    end: SignedGraph

    @classmethod
    def record(cls, start: SignedGraph, moves: Iterable[MoveRecord]) -> "ReductionTranscript":
        moves = tuple(moves)
        return cls(start, moves, apply_transcript(start, moves))

    def replays(self) -> bool:
        return apply_transcript(self.start, self.moves) == self.end

    def extended(self, moves: Iterable[MoveRecord]) -> "ReductionTranscript":
        moves = tuple(moves)
        return ReductionTranscript(self.start, self.moves + moves, apply_transcript(self.end, moves))

    def to_dict(self, certificate: Optional["CongruenceCertificate"] = None) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "start": format_graph(self.start),
            "moves": [move.to_dict() for move in self.moves],
            "end": format_graph(self.end),
        }
        if certificate is not None:
            data["certificate"] = [list(row) for row in certificate.rows]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReductionTranscript":
        try:
            start = parse_graph(data["start"])
            end = parse_graph(data["end"])
            moves = tuple(MoveRecord.from_dict(m) for m in data["moves"])
        except KeyError as e:
            raise GraphFormatError(f"Transcript is missing field {e}") from None
        return cls(start, moves, end)


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceCertificate:
    """Unimodular U with U^T gram(start) U = gram(end)."""

    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_array(cls, array: np.ndarray) -> "CongruenceCertificate":
        return cls(tuple(tuple(int(x) for x in row) for row in array))

    def to_numpy(self) -> np.ndarray:
        return to_object_array(self.rows) if self.rows else identity(0)

    @property
    def determinant(self) -> int:
        return determinant(self.rows)


def step_matrix(g: SignedGraph, move: MoveRecord) -> np.ndarray:
    """Elementary matrix of one move, indexed by g's vertex order."""
    n = len(g)
    step = identity(n)
    if move.kind is MoveKind.TMOVE:
        # column op C_j -> C_j - eps * C_i
        i, j = g.index_of(move.other), g.index_of(move.pivot)
        step[i, j] = -move.epsilon
    elif move.kind is MoveKind.SWITCH:
        k = g.index_of(move.vertex)
        step[k, k] = -1
    else:
        step = identity(0) if n == 0 else np.zeros((n, n), dtype=object)
        for a, v in enumerate(move.permutation or ()):
            step[g.index_of(v), a] = 1
    return step


def certificate(transcript: ReductionTranscript) -> CongruenceCertificate:
    g = transcript.start
    u = identity(len(g))
    for index, move in enumerate(transcript.moves):
        try:
            u = u @ step_matrix(g, move)
            g = apply_move(g, move)
        except (MoveError, ValueError) as e:
            raise TranscriptReplayError(index, e) from e
    return CongruenceCertificate.from_array(u)


def verify_certificate(m0: MatrixLike, u: MatrixLike | CongruenceCertificate, m1: MatrixLike) -> bool:
    """True iff |det u| = 1 and u^T m0 u = m1 exactly."""
    if isinstance(u, CongruenceCertificate):
        u = u.rows
    a0, au, a1 = to_object_array(m0), to_object_array(u), to_object_array(m1)
    n = a0.shape[0]
    if a0.shape != (n, n) or au.shape != (n, n) or a1.shape != (n, n):
        raise DimensionMismatchError(
            f"Shapes do not agree: {a0.shape}, {au.shape}, {a1.shape}"
        )
    if abs(determinant(au)) != 1:
        return False
    return bool(np.array_equal(au.T @ a0 @ au, a1))


def verify_transcript(transcript: ReductionTranscript,
                      cert: Optional[CongruenceCertificate] = None) -> bool:
    """Replay check plus certificate check (the certificate is rebuilt if omitted)."""
    if not transcript.replays():
        return False
    cert = cert if cert is not None else certificate(transcript)
    return verify_certificate(gram_matrix(transcript.start), cert, gram_matrix(transcript.end))


# -- JSON ----------------------------------------------------------------------


def transcript_to_json(transcript: ReductionTranscript,
                       cert: Optional[CongruenceCertificate] = None, indent: int = 2) -> str:
    return json.dumps(transcript.to_dict(cert), indent=indent, sort_keys=True, ensure_ascii=False)


def transcript_from_json(text: str) -> Tuple[ReductionTranscript, Optional[CongruenceCertificate]]:
    """Parse a transcript document; a full ``reduce --json`` document is accepted too."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"Invalid JSON: {e}") from None
    if isinstance(data, dict) and "transcript" in data and isinstance(data["transcript"], dict):
        data = data["transcript"]
    if not isinstance(data, dict):
        raise GraphFormatError("Transcript document must be a JSON object")
    transcript = ReductionTranscript.from_dict(data)
    rows = data.get("certificate")
    cert = CongruenceCertificate(tuple(tuple(int(x) for x in row) for row in rows)) if rows is not None else None
    return transcript, cert


def gram_pair(transcript: ReductionTranscript) -> Tuple[GramMatrix, GramMatrix]:
    return gram_matrix(transcript.start), gram_matrix(transcript.end)
