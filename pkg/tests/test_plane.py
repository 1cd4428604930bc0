"""Tests for plane graphs, checkerboard validation and checkerboard reduction."""
from dataclasses import replace

import networkx as nx
import pytest

from adegraph.errors import (
    EmbeddingError,
    EulerViolationError,
    GraphFormatError,
    NotCheckerboardError,
    SizeBoundError,
)
from adegraph.graph import SignedGraph, complete_graph, edge_key, format_graph, path_graph
from adegraph.moves import MoveRecord
from adegraph.plane import (
    CheckerboardPolicy,
    PlaneGraph,
    bounded_dual,
    checkerboard_embedding,
    checkerboard_move,
    faces,
    format_plane_graph,
    load_plane_graph,
    parse_plane_graph,
    reduce_plane,
    rotation_systems,
    trace_faces,
    validate_checkerboard,
)
from adegraph.oracle import positive_graphs
from adegraph.reducer import reduce_to_ade

DIAMOND = """\
graph plane
v 0
v 1
v 2
v 3
e 0 1 +
e 1 2 +
e 0 2 +
e 1 3 +
e 2 3 +
dir 0 1
dir 1 2
dir 2 0
dir 3 1
dir 2 3
rot 1: 0 2 3
rot 2: 0 3 1
"""


def _triangle_plane(directions):
    return PlaneGraph(complete_graph(3), directions=directions)


def _directed_triangle():
    return _triangle_plane({(0, 1): (0, 1), (1, 2): (1, 2), (0, 2): (2, 0)})


def test_trace_faces_of_triangle():
    found = trace_faces({0: (1, 2), 1: (0, 2), 2: (0, 1)})
    assert found == [((0, 1), (1, 2), (2, 0)), ((0, 2), (2, 1), (1, 0))]


def test_triangle_faces_and_outer_choice():
    p = _directed_triangle()
    assert [f.length for f in faces(p)] == [3, 3]
    assert p.outer_faces == (0,)
    assert [f.index for f in p.bounded_faces] == [1]


def test_directed_triangle_is_checkerboard():
    report = validate_checkerboard(_directed_triangle())
    assert report.valid
    assert report.coloring == {1: 0}
    assert report.to_dict()["violation"] is None


def test_mixed_face_is_not_directed():
    p = _triangle_plane({(0, 1): (0, 1), (1, 2): (1, 2), (0, 2): (0, 2)})
    report = validate_checkerboard(p)
    assert not report.valid
    assert report.violation.kind == "face-not-directed"
    assert report.violation.face == 1


def test_diamond_faces_and_dual():
    p = parse_plane_graph(DIAMOND)
    assert [f.length for f in p.faces] == [3, 4, 3]
    assert p.outer_faces == (1,)
    assert p.face_of((2, 1)).index == 2
    dual = bounded_dual(p)
    assert sorted(dual.edges()) == [(0, 2)]
    report = validate_checkerboard(p)
    assert report.valid
    assert report.coloring[0] != report.coloring[2]


def test_explicit_outer_face_changes_bounded_faces():
    p = parse_plane_graph(DIAMOND + "outer 0\n")
    assert p.outer_faces == (0,)
    report = validate_checkerboard(p)
    assert not report.valid
    assert report.violation.kind == "face-not-directed"


def test_non_planar_rotation_violates_euler():
    rotation = {0: (1, 2, 3), 1: (0, 2, 3), 2: (0, 1, 3), 3: (0, 1, 2)}
    directions = {(u, v): (u, v) for u, v, _ in complete_graph(4).edges()}
    p = PlaneGraph(complete_graph(4), rotation, directions)
    with pytest.raises(EulerViolationError):
        _ = p.faces


def test_plane_graph_validation_errors():
    star = SignedGraph(range(4), [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    dirs = {(0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3)}
    with pytest.raises(EmbeddingError):
        PlaneGraph(star, {}, dirs)
    with pytest.raises(EmbeddingError):
        PlaneGraph(star, {0: (1, 2)}, dirs)
    with pytest.raises(EmbeddingError):
        PlaneGraph(star, {0: (1, 2, 3)}, {(0, 1): (0, 1)})
    with pytest.raises(EmbeddingError):
        PlaneGraph(star, {0: (1, 2, 3)}, {**dirs, (0, 1): (0, 2)})
    with pytest.raises(EmbeddingError):
        PlaneGraph(star, {0: (1, 2, 3)}, dirs, outer_darts=((1, 2),))
    with pytest.raises(EmbeddingError):
        PlaneGraph(star, {7: ()}, dirs)


def test_face_of_unknown_dart():
    with pytest.raises(EmbeddingError):
        _directed_triangle().face_of((0, 5))


def test_induced_requires_whole_components():
    with pytest.raises(EmbeddingError):
        _directed_triangle().induced([0, 1])


def test_rotation_systems_three_connected_is_unique():
    systems = list(rotation_systems(nx.complete_graph(4)))
    assert len(systems) == 1
    assert len(trace_faces(systems[0])) == 4


def test_rotation_systems_enumerates_small_graphs():
    systems = list(rotation_systems(nx.cycle_graph(4)))
    assert len(systems) == 1
    diamond = nx.Graph([(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)])
    assert len(list(rotation_systems(diamond))) == 4


def test_rotation_systems_size_bound():
    with pytest.raises(SizeBoundError):
        next(rotation_systems(nx.complete_graph(5), max_rotations=100, unique_if_3_connected=False))


def test_checkerboard_embedding_found_for_pendant_triangle():
    g = SignedGraph(range(4), [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1)])
    p = checkerboard_embedding(g)
    assert p is not None
    assert validate_checkerboard(p).valid


def test_trees_embed_trivially():
    p = checkerboard_embedding(path_graph(4))
    assert len(p.faces) == 1
    assert validate_checkerboard(p).valid


def test_k4_has_no_checkerboard_embedding():
    assert checkerboard_embedding(complete_graph(4)) is None
    with pytest.raises(NotCheckerboardError):
        CheckerboardPolicy().initial_state(complete_graph(4))
    with pytest.raises(NotCheckerboardError):
        reduce_to_ade(complete_graph(4), "checkerboard")


def test_non_planar_graph_has_no_embedding():
    assert checkerboard_embedding(complete_graph(5)) is None


def test_checkerboard_move_on_triangle():
    result, record = checkerboard_move(_directed_triangle(), 0, 1)
    assert record == MoveRecord.tmove(0, 1, 1)
    assert result.graph.edges() == [(0, 1, -1), (1, 2, 1)]
    assert validate_checkerboard(result).valid
    assert set(result.directions) == {(0, 1), (1, 2)}


def test_checkerboard_policy_successors_stay_checkerboard():
    policy = CheckerboardPolicy()
    start = policy.initial_state(complete_graph(3))
    moves = list(policy.successors(start))
    assert moves
    assert all(validate_checkerboard(state).valid for _, state in moves)


def test_reduce_in_checkerboard_mode():
    g = SignedGraph(range(4), [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1)])
    result = reduce_to_ade(g, "checkerboard")
    assert result.ade.name == "A4"
    assert result.mode == "checkerboard"
    assert result.verified()


def test_reduce_plane_uses_given_embedding():
    results = reduce_plane(_directed_triangle())
    assert [r.ade.name for r in results] == ["A3"]
    assert results[0].verified()


def test_reduce_plane_rejects_invalid_embedding():
    p = _triangle_plane({(0, 1): (0, 1), (1, 2): (1, 2), (0, 2): (0, 2)})
    with pytest.raises(NotCheckerboardError):
        reduce_plane(p)


def test_plane_format_is_parseable():
    p = parse_plane_graph(DIAMOND)
    text = format_plane_graph(p)
    assert text.startswith("graph plane\n")
    assert "outer 1" in text
    again = parse_plane_graph(text)
    assert again.rotation == p.rotation
    assert again.directions == p.directions
    assert again.outer_faces == p.outer_faces


def test_load_plane_graph(tmp_path):
    path = tmp_path / "diamond.pg"
    path.write_text(DIAMOND, encoding="utf-8")
    assert load_plane_graph(path).graph.edge_count() == 5


@pytest.mark.parametrize(
    "text, error",
    [
        ("graph signed\nv 0\n", GraphFormatError),
        ("graph plane\nv 0\nv 1\ne 0 1\ndir 0 1\ndir 1 0\n", GraphFormatError),
        ("graph plane\nv 0\nv 1\ne 0 1\ndir 0\n", GraphFormatError),
        ("graph plane\nv 0\nv 1\ne 0 1\ndir 0 1\nrot\n", GraphFormatError),
        ("graph plane\nv 0\nv 1\ne 0 1\ndir 0 1\nouter x\n", GraphFormatError),
        ("graph plane\nv 0\nv 1\ne 0 1\ndir 0 1\nouter 3\n", EmbeddingError),
        ("graph plane\nv 0\nv 1\ne 0 1\n", EmbeddingError),
    ],
)
def test_parse_plane_graph_errors(text, error):
    with pytest.raises(error):
        parse_plane_graph(text)


def _pinned(p):
    """Same plane graph with its outer faces named explicitly."""
    return replace(p, outer_darts=tuple(p.faces[i].darts[0] for i in p.outer_faces))


def _relabeled(p, mapping):
    g = p.graph
    graph = SignedGraph([mapping[v] for v in g.vertices], [(mapping[u], mapping[v], s) for u, v, s in g.edges()])
    return PlaneGraph(
        graph,
        {mapping[v]: tuple(mapping[w] for w in order) for v, order in p.rotation.items()},
        {edge_key(mapping[a], mapping[b]): (mapping[a], mapping[b]) for a, b in p.directions.values()},
        tuple((mapping[a], mapping[b]) for a, b in p.outer_darts),
    )


def _shifted(p, k):
    rotation = {v: order[k % len(order):] + order[:k % len(order)] if order else order for v, order in p.rotation.items()}
    return PlaneGraph(p.graph, rotation, p.directions, p.outer_darts)


_BOARDS = [
    _directed_triangle(),
    _triangle_plane({(0, 1): (0, 1), (1, 2): (1, 2), (0, 2): (0, 2)}),
    parse_plane_graph(DIAMOND),
    parse_plane_graph(DIAMOND.replace("dir 2 3", "dir 3 2")),
    PlaneGraph(
        complete_graph(4),
        {v: tuple(order) for v, order in nx.check_planarity(nx.complete_graph(4))[1].get_data().items()},
        {(0, 1): (0, 1), (0, 2): (2, 0), (0, 3): (0, 3), (1, 2): (1, 2), (1, 3): (3, 1), (2, 3): (2, 3)},
    ),
    checkerboard_embedding(SignedGraph(range(5), [(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1), (3, 4, -1)])),
]


@pytest.mark.parametrize("board", _BOARDS)
@pytest.mark.parametrize("mapping", [{0: 4, 1: 0, 2: 3, 3: 1, 4: 2}, {0: 10, 1: 11, 2: 12, 3: 13, 4: 14}])
def test_validate_checkerboard_ignores_labels(board, mapping):
    pinned = _pinned(board)
    mapping = {v: mapping[v] for v in pinned.graph.vertices}
    before = validate_checkerboard(pinned)
    after = validate_checkerboard(_relabeled(pinned, mapping))
    assert after.valid == before.valid
    assert (after.violation.kind if after.violation else None) == (before.violation.kind if before.violation else None)
    if before.valid:
        assert len(after.coloring) == len(before.coloring)


@pytest.mark.parametrize("board", _BOARDS)
@pytest.mark.parametrize("k", [1, 2])
def test_validate_checkerboard_ignores_rotation_start(board, k):
    pinned = _pinned(board)
    before = validate_checkerboard(pinned)
    after = validate_checkerboard(_shifted(pinned, k))
    assert after.to_dict() == before.to_dict()


@pytest.mark.parametrize("n", range(3, 7))
def test_checkerboard_reduction_covers_positive_plane_graphs(n):
    graphs = [g for g in positive_graphs(n) if len(g) == n and checkerboard_embedding(g) is not None]
    assert graphs
    for g in graphs:
        result = reduce_to_ade(g, "checkerboard")
        assert result.success, format_graph(g)
        assert result.verified()
        assert result.ade.name == reduce_to_ade(g, "t").ade.name


def test_checkerboard_move_adds_edges_with_face_directions():
    # the move at (0, 1) closes the path 0-1-2 into a triangle
    p = checkerboard_embedding(path_graph(3))
    result, record = checkerboard_move(p, 0, 1)
    assert result.graph.has_edge(0, 2)
    assert validate_checkerboard(result).valid
    assert set(result.directions) == {(0, 1), (0, 2), (1, 2)}
    assert [f.length for f in result.bounded_faces] == [3]


def test_checkerboard_search_keeps_embeddings_apart():
    policy = CheckerboardPolicy()
    start = policy.initial_state(complete_graph(3))
    flipped = replace(start, directions={key: (d[1], d[0]) for key, d in start.directions.items()})
    assert validate_checkerboard(flipped).valid
    assert policy.state_key(start) != policy.state_key(flipped)
