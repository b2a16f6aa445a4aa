import asyncio
from collections import Counter

import pytest

from classifier import (
    SMOOTHABLE_THIRD_EDGE, DiagramClassifier, TripleLabel, candidate_graphs, chain_family_from_arrangement,
    chain_records, classify_graph, edge_decorations, enumerate_smoothing_diagrams, germ_triangle_classes,
    labeled_graph_count, single_edge_classes, triple_points_c4, two_edge_chain_family,
)
from complex_model import affine_germ_complex, projective_space_complex, triangle_germ_class
from diagrams import SmoothingDiagram, canonical_form
from errors import InconsistentInput, SizeGuard
from golden_p4 import GOLDEN_DIMENSIONS, golden_encodings, verify_classification
from leaf_analysis import smoothing_diagram_of


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 2), (3, 8), (4, 41), (5, 253)])
def test_labeled_graph_count(n, expected):
    assert labeled_graph_count(n) == expected


def test_candidate_graphs_on_five_vertices():
    graphs = candidate_graphs(5)
    assert len(graphs) == 11
    assert sum(g.orbit_size for g in graphs) == 253
    descriptions = {g.description: g for g in graphs}
    assert descriptions["C5"].orbit_size == 12
    assert descriptions["C4+K1"].has_even_cycle
    assert descriptions["5K1"].edges == ()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 7])
def test_candidate_graph_orbits_are_conserved(n):
    assert sum(g.orbit_size for g in candidate_graphs(n)) == labeled_graph_count(n)


def test_edge_decorations(p4):
    decorations = edge_decorations(p4, (0, 1))
    assert len(decorations) == 6
    assert {2: 2} in decorations and {3: 1, 4: 1} in decorations
    assert len(edge_decorations(projective_space_complex(3), (0, 1))) == 15

    germ = affine_germ_complex(3)
    assert edge_decorations(germ, (0, 1), max_order=2) == [{}, {2: 1}, {2: 2}]
    with pytest.raises(InconsistentInput):
        edge_decorations(germ, (0, 1))


def test_classify_graph_finds_both_pentagons(p4):
    pentagon = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    outcome = classify_graph(p4, pentagon)
    found = {canonical_form(r.diagram).encoding for r in outcome["realizations"]}
    golden = golden_encodings()
    assert len(found) == 2
    assert all(golden[encoding] == 1 for encoding in found)
    assert all(r.dimension == 1 for r in outcome["realizations"])


def test_size_guards():
    for n in [0, 4]:
        with pytest.raises(SizeGuard):
            DiagramClassifier(n)
    with pytest.raises(SizeGuard):
        single_edge_classes(1)


def test_p2_has_one_class():
    classifier = DiagramClassifier(1)
    entries = asyncio.run(classifier.classify())
    assert len(entries) == 1
    assert entries[0].dimension == 1
    assert entries[0].edge_count == 3
    assert entries[0].orbit_size == 1
    assert classifier.stats["classes"] == 1
    assert classifier.stats["histogram"] == {"1": 1}


def test_single_edge_classes_on_p4():
    entries = single_edge_classes(2)
    assert len(entries) == 2
    assert all(e.dimension == 4 and e.orbit_size == 30 for e in entries)
    for entry in entries:
        assert smoothing_diagram_of(entry.witness) == entry.representative


def test_triple_points():
    points = triple_points_c4()
    assert len(points) == 10
    orbits = Counter((p.label, p.orbit_size) for p in points)
    assert orbits == {(TripleLabel.E6, 1): 1, (TripleLabel.E7, 3): 3, (TripleLabel.E8, 6): 6}
    e6 = points[0]
    assert e6.to_json() == {"biresidues": ["1/3", "1/3", "1/3"], "orders": [2, 2, 2], "label": "E6tilde",
                            "singularity": "T_{3,3,3}", "orbit_size": 1}
    assert sum(p.biresidues[0] + p.biresidues[1] + p.biresidues[2] == 1 for p in points) == 10


def test_triple_points_have_three_smoothable_edges():
    for point in triple_points_c4():
        diagram = smoothing_diagram_of(triangle_germ_class(*point.biresidues))
        m1, m2, m3 = point.orders
        expected = {(0, 1): {2: m1}, (1, 2): {0: m2}, (0, 2): {1: m3}}
        assert diagram == SmoothingDiagram.build(3, expected)


def test_two_edge_chain_family():
    assert two_edge_chain_family(1, 1) == ((2, 2, 0), False)
    assert two_edge_chain_family(2, 5) == ((6, 3, 9), True)
    with pytest.raises(InconsistentInput):
        two_edge_chain_family(3, 2)


@pytest.mark.parametrize("m", range(11))
def test_chain_law_matches_stratum(m):
    for n in range(m, 11):
        closed_form = two_edge_chain_family(m, n)
        assert chain_family_from_arrangement(m, n) == closed_form
        assert closed_form[1] == ((m, n) in SMOOTHABLE_THIRD_EDGE)


def test_chain_records():
    records = chain_records(3)
    kinds = Counter(r.kind for r in records)
    assert kinds == {"generic": 1, "single": 4, "double": 10}
    single = next(r for r in records if r.kind == "single" and r.orders == (2,))
    assert single.to_json() == {"kind": "single", "orders": [2], "label": "T_{∞,∞,3}", "line": "2*b1 - b2 - b3 = 0"}
    double = next(r for r in records if r.kind == "double" and r.orders == (1, 3))
    assert double.biresidues == (4, 2, 2)
    assert double.third_edge_smoothable is True


@pytest.mark.slow
def test_bounded_germ_search_matches_triple_points():
    realizations = germ_triangle_classes(max_order=5)
    full = {
        (r.diagram.orders_of((0, 1)).get(2, 0), r.diagram.orders_of((1, 2)).get(0, 0),
         r.diagram.orders_of((0, 2)).get(1, 0))
        for r in realizations if len(r.diagram.edges) == 3
    }
    assert full == {p.orders for p in triple_points_c4()}
    assert all(r.dimension == 1 for r in realizations if len(r.diagram.edges) == 3)


@pytest.mark.slow
def test_p4_classification_matches_golden_table():
    entries = enumerate_smoothing_diagrams(2)
    assert len(entries) == 40
    assert dict(Counter(e.dimension for e in entries)) == GOLDEN_DIMENSIONS
    verify_classification(entries)
    assert sum(e.orbit_size for e in entries if e.edge_count == 0) == 1
    for entry in entries:
        assert smoothing_diagram_of(entry.witness) == entry.representative


@pytest.mark.slow
def test_pruning_does_not_change_classification():
    pruned = enumerate_smoothing_diagrams(2, use_combinatorial_pruning=True)
    unpruned = enumerate_smoothing_diagrams(2, use_combinatorial_pruning=False)
    assert [e.to_json() for e in pruned] == [e.to_json() for e in unpruned]


@pytest.mark.slow
def test_parallel_classification_is_deterministic():
    sequential = enumerate_smoothing_diagrams(2)
    parallel = enumerate_smoothing_diagrams(2, parallel=True)
    assert [e.to_json() for e in sequential] == [e.to_json() for e in parallel]
