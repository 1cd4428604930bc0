"""Tests for cycle parity checks and forbidden induced trees."""
import pytest

from adegraph.certificates import (
    MinorCertificate,
    all_cycles_positive,
    check_minor_certificate,
    cycle_report,
    default_catalog,
    enumerate_cycles,
    find_forbidden_minor,
    find_induced_non_positive_cycle,
    nonisomorphic_trees,
)
from adegraph.errors import SizeBoundError
from adegraph.graph import SignedGraph, complete_graph, cycle_graph, path_graph, star_graph


@pytest.fixture(scope="module")
def catalog():
    return default_catalog(7)


def test_triangle_parity():
    plus = complete_graph(3)
    assert cycle_report(plus, (0, 1, 2)).positive
    minus = SignedGraph([0, 1, 2], [(0, 1, 1), (1, 2, 1), (0, 2, -1)])
    report = cycle_report(minus, (0, 1, 2))
    assert report.negative_count == 1
    assert not report.positive


def test_even_cycle_needs_odd_negatives():
    assert not cycle_report(cycle_graph(4, 0), (0, 1, 2, 3)).positive
    assert cycle_report(cycle_graph(4, 1), (0, 1, 2, 3)).positive


def test_enumerate_cycles_of_k4():
    cycles = enumerate_cycles(complete_graph(4))
    assert [c.length for c in cycles] == [3, 3, 3, 3, 4, 4, 4]
    assert cycles[0].cycle == (0, 1, 2)


def test_enumerate_cycles_size_bound():
    with pytest.raises(SizeBoundError):
        enumerate_cycles(path_graph(13), max_vertices=12)


def test_all_cycles_positive_reports_first_failure():
    ok, failing = all_cycles_positive(path_graph(4))
    assert ok and failing is None
    # the all-positive 4-cycle inside K4 has no negative edge and length 4
    ok, failing = all_cycles_positive(complete_graph(4))
    assert not ok
    assert failing.length == 4
    ok, failing = all_cycles_positive(cycle_graph(4, 0))
    assert not ok
    assert failing.cycle == (0, 1, 2, 3)
    assert failing.to_dict()["negative_count"] == 0


def test_induced_non_positive_cycle_skips_chorded_cycles():
    # 4-cycle 0-1-2-3 with chord 0-2; only the chordless triangle fails
    g = SignedGraph(
        range(4),
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, -1)],
    )
    report = find_induced_non_positive_cycle(g)
    assert report is not None
    assert report.length == 3
    assert g.induced(report.cycle).edge_count() == 3


def test_induced_non_positive_cycle_none_for_positive_graph():
    assert find_induced_non_positive_cycle(cycle_graph(5, 0)) is None


def test_nonisomorphic_trees_counts():
    assert [sum(1 for _ in nonisomorphic_trees(n)) for n in range(1, 8)] == [1, 1, 1, 2, 3, 6, 11]


def test_default_catalog_contains_affine_trees(catalog):
    assert catalog.names() == ["D~4", "D~5", "D~6", "E~6"]
    d4 = catalog.get("D~4")
    assert d4.alias == "X"
    assert d4.determinant == 0
    assert len(d4.kernel) == 5
    assert catalog.get("E~6").alias == "Y"


def test_catalog_unknown_name(catalog):
    with pytest.raises(KeyError):
        catalog.get("C9")


def test_catalog_manifest(catalog):
    entries = catalog.manifest()
    assert entries[0]["name"] == "D~4"
    assert entries[0]["vertices"] == 5
    assert all(entry["determinant"] == 0 for entry in entries)


def test_find_forbidden_minor_in_star(catalog):
    g = star_graph(4)
    cert = find_forbidden_minor(g, catalog)
    assert cert is not None
    assert cert.pattern_name == "D~4"
    assert sorted(cert.host_vertices()) == [0, 1, 2, 3, 4]
    assert check_minor_certificate(g, cert, catalog)


def test_find_forbidden_minor_ignores_signs(catalog):
    g = SignedGraph(range(5), [(0, i, -1) for i in range(1, 5)])
    assert find_forbidden_minor(g, catalog).pattern_name == "D~4"


def test_find_forbidden_minor_none_for_dynkin_path(catalog):
    assert find_forbidden_minor(path_graph(6), catalog) is None


def test_check_minor_certificate_rejects_forgery(catalog):
    g = path_graph(5)
    pattern = catalog.get("D~4").graph
    forged = MinorCertificate("D~4", tuple(zip(pattern.vertices, g.vertices)))
    assert not check_minor_certificate(g, forged, catalog)
    short = MinorCertificate("D~4", ((pattern.vertices[0], 0),))
    assert not check_minor_certificate(g, short, catalog)
