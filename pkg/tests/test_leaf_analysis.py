from fractions import Fraction

import pytest

from complex_model import (
    ChernMode, LogClass, affine_germ_complex, chart_to_full, custom_complex, is_nondegenerate,
    projective_space_complex, triangle_germ_class,
)
from diagrams import SmoothingDiagram, validate_combinatorial
from errors import DegenerateStratum, NotAFace, UnsupportedComplex, ZeroBiresidue
from exact_linalg import QMatrix
from leaf_analysis import (
    analyze_class, characteristic_census, edge_order, edge_orders, edge_reports, is_characteristic,
    is_edge_resonant, is_edge_smoothable, is_holonomic, residue_vector, smoothing_diagram_of,
)


def test_running_germ_is_holonomic(running_germ):
    assert is_holonomic(running_germ) == (True, [])


def test_zero_sum_germ_is_not_holonomic():
    assert is_holonomic(triangle_germ_class(1, 1, -2)) == (False, [(0, 1, 2)])


def test_characteristic_census(running_germ):
    assert characteristic_census(running_germ) == [(), (0, 1), (0, 2), (1, 2)]
    assert characteristic_census(triangle_germ_class(1, 1, -2)) == [(), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert is_characteristic(running_germ, ())
    assert not is_characteristic(running_germ, (1,))


def test_edge_orders_of_cyclic_germs(running_germ):
    for edge in [(0, 1), (1, 2), (0, 2)]:
        assert list(edge_orders(running_germ, edge).values()) == [2]

    e8 = triangle_germ_class(3, 2, 1)
    assert edge_order(e8, (0, 1), 2) == 1
    assert edge_order(e8, (1, 2), 0) == 2
    assert edge_order(e8, (0, 2), 1) == 5


def test_edge_order_ignores_orientation_and_scale():
    log_class = triangle_germ_class(3, 2, 1)
    assert edge_order(log_class, (1, 0), 2) == edge_order(log_class, (0, 1), 2)
    assert edge_order(log_class.scale(Fraction(-7, 2)), (0, 2), 1) == 5


def test_edge_order_errors(p4_block_class):
    with pytest.raises(NotAFace):
        edge_order(p4_block_class, (0, 1), 0)
    with pytest.raises(ZeroBiresidue):
        edge_order(triangle_germ_class(0, 1, 1), (0, 1), 2)


def test_resonance():
    log_class = triangle_germ_class(1, 1, -1)
    assert edge_order(log_class, (0, 2), 1) == -2
    assert is_edge_resonant(log_class, (0, 2))
    assert not is_edge_resonant(log_class, (0, 1))
    assert not is_edge_resonant(triangle_germ_class(1, 1, 1), (0, 1))


def test_residue_vector(running_germ):
    solution, total = residue_vector(running_germ, (0, 1), 2)
    assert solution == (-1, -1)
    assert total == -2
    with pytest.raises(DegenerateStratum):
        residue_vector(triangle_germ_class(0, 1, 1), (0, 1), 2)
    with pytest.raises(NotAFace):
        residue_vector(running_germ, (0, 1), 1)


def test_smoothing_diagram_of_running_germ(running_germ):
    diagram = smoothing_diagram_of(running_germ)
    assert diagram == SmoothingDiagram.build(3, {(0, 1): {2: 2}, (1, 2): {0: 2}, (0, 2): {1: 2}})


def test_smoothing_diagram_of_block_class(p4_block_class):
    diagram = smoothing_diagram_of(p4_block_class)
    assert diagram.decorations() == {(1, 2): {0: 2}, (3, 4): {0: 2}}
    assert is_edge_smoothable(p4_block_class, (1, 2))
    assert not is_edge_smoothable(p4_block_class, (0, 1))
    assert not is_edge_smoothable(p4_block_class, (1, 3))


def test_unsupported_complex_is_refused():
    complex_ = custom_complex(3, [[0, 1, 2]], simply_connected_strata=True, chern_mode=ChernMode.UNSUPPORTED)
    log_class = LogClass(complex_, QMatrix.skew_from_upper(3, [1, 1, 1]))
    with pytest.raises(UnsupportedComplex):
        is_edge_smoothable(log_class, (0, 1))
    with pytest.raises(UnsupportedComplex):
        smoothing_diagram_of(log_class)
    # Порядки и резонанс от режима Черна не зависят
    assert all(not r.smoothable for r in edge_reports(log_class))


def test_analyze_report(running_germ):
    report = analyze_class(running_germ)
    assert report["nondegenerate"] is True
    assert report["holonomic"] is True
    assert report["violating_simplices"] == []
    assert len(report["edges"]) == 3
    assert all(e["smoothable"] and not e["resonant"] for e in report["edges"])
    assert report["edges"][0] == {"edge": [0, 1], "biresidue": "1", "orders": {"2": "2"},
                                  "resonant": False, "smoothable": True}


def test_analyze_zero_class():
    report = analyze_class(LogClass(projective_space_complex(2), QMatrix.zeros(5)))
    assert report["nondegenerate"] is False
    assert report["edges"] == []
    assert report["diagram"] == {"vertices": 5, "edges": []}


@pytest.mark.property
def test_edge_orders_sum_to_two_on_projective_space(make_skew):
    for _ in range(1000):
        log_class = chart_to_full(make_skew(4, bound=3))
        for edge in log_class.complex.edges():
            if log_class.matrix[edge] == 0:
                continue
            assert sum(edge_orders(log_class, edge).values()) == 2


@pytest.mark.property
def test_diagrams_of_nondegenerate_classes_pass_combinatorial_checks(rng):
    p4 = projective_space_complex(2)
    checked = 0
    while checked < 1000:
        chart = QMatrix.skew_from_upper(4, [rng.randint(-2, 2) for _ in range(6)])
        log_class = chart_to_full(chart)
        if not is_nondegenerate(log_class):
            continue
        checked += 1
        assert validate_combinatorial(smoothing_diagram_of(log_class), p4) == []


def test_zero_edge_without_opposite_vertices_is_refused():
    log_class = LogClass(affine_germ_complex(2), QMatrix.zeros(2))
    with pytest.raises(ZeroBiresidue):
        edge_orders(log_class, (0, 1))
    with pytest.raises(ZeroBiresidue):
        is_edge_resonant(log_class, (0, 1))
    assert not is_edge_smoothable(log_class, (0, 1))


def _nonzero_edges(log_class):
    return [edge for edge in log_class.complex.edges() if log_class.matrix[edge] != 0]


@pytest.mark.property
def test_edge_order_invariant_under_orientation_and_scale(make_skew, rng):
    for _ in range(1000):
        log_class = chart_to_full(make_skew(4, bound=3))
        factor = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
        scaled = log_class.scale(factor)
        for i, j in _nonzero_edges(log_class):
            for k in log_class.complex.opposite_vertices((i, j)):
                order = edge_order(log_class, (i, j), k)
                assert edge_order(log_class, (j, i), k) == order
                assert edge_order(scaled, (i, j), k) == order


@pytest.mark.property
def test_residue_sum_is_minus_edge_order(make_skew):
    for _ in range(1000):
        log_class = chart_to_full(make_skew(4, bound=3))
        for edge in _nonzero_edges(log_class):
            for k in log_class.complex.opposite_vertices(edge):
                assert residue_vector(log_class, edge, k)[1] == -edge_order(log_class, edge, k)


@pytest.mark.property
def test_smoothing_diagram_commutes_with_relabeling(rng):
    for _ in range(1000):
        chart = QMatrix.skew_from_upper(4, [rng.randint(-2, 2) for _ in range(6)])
        log_class = chart_to_full(chart)
        perm = list(range(5))
        rng.shuffle(perm)
        assert smoothing_diagram_of(log_class.permuted(perm)) == smoothing_diagram_of(log_class).relabel(perm)
