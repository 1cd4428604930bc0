"""Tests for ADE recognition, reduction search and classification."""
import pytest

from adegraph.errors import DisconnectedGraphError, InvalidGraphError, NotPositiveError, SearchExhaustedError
from adegraph.graph import (
    SignedGraph,
    complete_graph,
    cycle_graph,
    gram_matrix,
    path_graph,
    star_graph,
    switch_many,
)
from adegraph.linalg import determinant
from adegraph.moves import t_move
from adegraph.reducer import (
    ADEType,
    SearchLimits,
    ade_diagram,
    classify,
    degree_normalize,
    expected_det,
    identify_type,
    peel_order,
    recognize_ade,
    reduce_components,
    reduce_to_ade,
    summarize_types,
)


def _scrambled(g, moves):
    for x, y in moves:
        g, _ = t_move(g, x, y)
    return g


def _assert_canonical(result, family, rank):
    assert result.success
    assert result.ade.family == family
    assert result.ade.rank == rank
    assert result.verified()
    assert abs(result.certificate.determinant) == 1
    assert result.transcript.replays()
    assert gram_matrix(result.transcript.end) == gram_matrix(ade_diagram(family, rank))


def test_ade_type_validation():
    assert ADEType("D", 4).name == "D4"
    with pytest.raises(InvalidGraphError):
        ADEType("D", 3)
    with pytest.raises(InvalidGraphError):
        ADEType("E", 9)
    with pytest.raises(InvalidGraphError):
        ADEType("B", 2)


@pytest.mark.parametrize(
    "family, rank, det",
    [("A", 1, 2), ("A", 7, 8), ("D", 4, 4), ("D", 9, 4), ("E", 6, 3), ("E", 7, 2), ("E", 8, 1)],
)
def test_diagram_determinants(family, rank, det):
    assert expected_det(ADEType(family, rank)) == det
    assert determinant(gram_matrix(ade_diagram(family, rank))) == det


def test_identify_type():
    assert identify_type(5, 6) == ("A", 5)
    assert identify_type(5, 4) == ("D", 5)
    assert identify_type(6, 3) == ("E", 6)
    assert identify_type(3, 4) == ("A", 3)
    assert identify_type(5, 3) is None


@pytest.mark.parametrize("family, rank", [("A", 1), ("A", 5), ("D", 4), ("D", 6), ("E", 6), ("E", 7), ("E", 8)])
def test_recognize_diagram_in_canonical_order(family, rank):
    ade = recognize_ade(ade_diagram(family, rank))
    assert ade.name == f"{family}{rank}"
    assert ade.vertex_map == tuple(range(rank))


def test_recognize_ignores_signs_and_labels():
    g = SignedGraph([7, 3, 5, 9], [(7, 3, -1), (3, 5, 1), (3, 9, -1)])
    ade = recognize_ade(g)
    assert ade.name == "D4"
    assert ade.vertex_map[1] == 3


@pytest.mark.parametrize(
    "g",
    [
        star_graph(4),
        cycle_graph(4, 1),
        SignedGraph(range(7), [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1), (5, 6, 1)]),
        SignedGraph(range(3), [(0, 1, 1)]),
        SignedGraph([], []),
    ],
)
def test_recognize_rejects_non_diagrams(g):
    assert recognize_ade(g) is None


def test_peel_order_keeps_prefixes_connected():
    g = SignedGraph(range(6), [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 5, 1), (5, 2, 1)])
    order = peel_order(g)
    assert sorted(order) == list(range(6))
    for k in range(1, 7):
        assert g.induced(order[:k]).is_connected()
    assert peel_order(path_graph(4)) == [0, 1, 2, 3]


def test_peel_order_requires_connected_graph():
    with pytest.raises(DisconnectedGraphError):
        peel_order(SignedGraph(range(2), []))


def test_search_limits_defaults():
    limits = SearchLimits()
    assert (limits.max_depth, limits.max_expansions) == (25, 20000)


def test_reduce_diagram_needs_no_moves():
    result = reduce_to_ade(path_graph(4))
    _assert_canonical(result, "A", 4)
    assert result.transcript.moves == ()


@pytest.mark.parametrize(
    "g, family, rank",
    [
        (complete_graph(3), "A", 3),
        (complete_graph(4), "A", 4),
        (complete_graph(5), "A", 5),
        (star_graph(3), "D", 4),
        (cycle_graph(4, 1), "D", 4),
        (cycle_graph(5, 0), "D", 5),
        (switch_many(path_graph(5, signs=[1, -1, 1, -1]), [2]), "A", 5),
    ],
)
def test_reduce_to_ade_in_t_mode(g, family, rank):
    _assert_canonical(reduce_to_ade(g, "t"), family, rank)


def test_reduce_scrambled_e6():
    g = _scrambled(ade_diagram("E", 6), [(2, 1), (3, 2), (5, 2)])
    assert recognize_ade(g) is None
    result = reduce_to_ade(g)
    _assert_canonical(result, "E", 6)
    assert result.to_dict()["type"]["determinant"] == 3


def test_reduce_in_tprime_mode():
    _assert_canonical(reduce_to_ade(complete_graph(4), "tprime"), "A", 4)
    _assert_canonical(reduce_to_ade(cycle_graph(4, 1), "tprime"), "D", 4)


def test_reduce_non_positive_returns_minor():
    result = reduce_to_ade(star_graph(4))
    assert not result.success
    assert not result.verified()
    assert result.minor.pattern_name == "D~4"
    data = result.to_dict()
    assert data["status"] == "non_positive"
    assert data["minor"]["pattern"] == "D~4"


def test_reduce_non_positive_cycle_returns_cycle():
    result = reduce_to_ade(cycle_graph(4, 0))
    assert result.minor is None
    assert result.cycle.cycle == (0, 1, 2, 3)
    assert result.report.verdict.value == "PositiveSemidefinite"


def test_reduce_requires_connected_graph():
    with pytest.raises(DisconnectedGraphError):
        reduce_to_ade(SignedGraph(range(3), [(0, 1, 1)]))


def test_reduce_components_one_result_per_component():
    g = SignedGraph(range(5), [(0, 1, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1)])
    results = reduce_components(g)
    assert [r.ade.name for r in results] == ["A2", "A3"]


def test_search_budget_exhaustion_raises():
    with pytest.raises(SearchExhaustedError):
        reduce_to_ade(complete_graph(4), limits=SearchLimits(max_expansions=0))


def test_result_to_dict_can_omit_certificate():
    result = reduce_to_ade(complete_graph(3))
    assert "certificate" in result.to_dict()["transcript"]
    assert "certificate" not in result.to_dict(include_certificate=False)["transcript"]
    assert result.to_dict()["verified"] is True


def test_degree_normalize_brings_degrees_down():
    g = complete_graph(5)
    normalized, transcript = degree_normalize(g, mode="t")
    assert normalized.max_degree() <= 3
    assert transcript.replays()
    assert transcript.end == normalized


def test_degree_normalize_is_identity_on_low_degree():
    normalized, transcript = degree_normalize(path_graph(4))
    assert normalized == path_graph(4)
    assert transcript.moves == ()


def test_degree_normalize_rejects_bad_input():
    with pytest.raises(NotPositiveError):
        degree_normalize(star_graph(4))
    with pytest.raises(ValueError):
        degree_normalize(path_graph(3), mode="checkerboard")


def test_classify_positive_forest():
    g = SignedGraph(range(5), [(0, 1, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1)])
    report = classify(g)
    assert report.positive
    assert report.all_cycles_positive is True
    assert [t.name for t in report.types] == ["A2", "A3"]
    assert summarize_types(report.types) == "A2 + A3"
    assert report.to_dict()["types"] == ["A2", "A3"]


def test_classify_non_positive_graph():
    report = classify(star_graph(4))
    assert not report.positive
    assert report.types == []
    assert report.minor.pattern_name == "D~4"
    assert report.all_cycles_positive is True


def test_classify_reports_failing_cycle():
    report = classify(cycle_graph(6, 0))
    assert not report.positive
    assert report.all_cycles_positive is False
    assert report.failing_cycle.length == 6
    assert report.non_positive_cycle.cycle == (0, 1, 2, 3, 4, 5)


def test_summarize_empty():
    assert summarize_types([]) == "(empty)"
