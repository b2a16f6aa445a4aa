from fractions import Fraction

import pytest

from complex_model import triangle_germ_class
from errors import (
    Degenerate, DegenerateSimplex, NotAFace, NotHolonomic, OddDimension, ParseError, UnsupportedComplex,
)
from exact_linalg import QMatrix
from germ_cohomology import (
    GermClass, PoincarePolynomial, cocycle_data, cohomology_report, contributing_simplices,
    deformation_summary, germ_class_of, germ_from_json, germ_holonomic_violations, germ_is_nondegenerate,
    germ_to_json, hp2_dimension, poisson_poincare,
)


def test_running_example_poincare(germ_class_111):
    assert poisson_poincare(germ_class_111).coefficients == (1, 3, 6, 4)


def test_germ_class_of_triangle_matches_fixture(running_germ, germ_class_111):
    assert germ_class_of(running_germ) == germ_class_111


def test_poincare_with_one_resonant_edge():
    g = germ_class_of(triangle_germ_class(1, 1, -1))
    assert poisson_poincare(g).coefficients == (1, 3, 5, 3)


def test_poincare_of_symplectic_plane():
    g = GermClass(2, QMatrix.from_rows([[0, 1], [-1, 0]]))
    assert poisson_poincare(g).coefficients == (1, 2, 2)


def test_poincare_of_pure_symplectic_germ():
    g = GermClass(0, QMatrix.from_rows([[0, 1], [-1, 0]]))
    assert poisson_poincare(g).coefficients == (1,)


def test_non_holonomic_germ_is_refused_before_degeneracy():
    g = germ_class_of(triangle_germ_class(1, 1, -2))
    assert not germ_is_nondegenerate(g)
    with pytest.raises(NotHolonomic) as info:
        poisson_poincare(g)
    assert info.value.violators == [(0, 1, 2)]
    assert info.value.exit_code == 5


def test_degenerate_germ():
    g = GermClass(2, QMatrix.zeros(2))
    with pytest.raises(Degenerate):
        poisson_poincare(g)
    with pytest.raises(OddDimension):
        germ_is_nondegenerate(GermClass(1, QMatrix.zeros(3)))


def test_holonomic_violations(germ_class_111):
    assert germ_holonomic_violations(germ_class_111) == []


def test_cocycle_data(germ_class_111):
    data = cocycle_data(germ_class_111, (1, 0))
    assert data.simplex == (0, 1)
    assert data.t == {2: 2}
    assert data.alpha == {0: 1, 1: -1}
    assert data.contributes
    assert data.to_json() == {"simplex": [0, 1], "t": {"2": "2"}, "alpha": {"0": "1", "1": "-1"}}


def test_cocycle_data_errors(germ_class_111):
    with pytest.raises(DegenerateSimplex):
        cocycle_data(germ_class_111, (0,))
    with pytest.raises(NotAFace):
        cocycle_data(germ_class_111, (0, 3))
    g = germ_class_of(triangle_germ_class(0, 1, 1))
    with pytest.raises(DegenerateSimplex):
        cocycle_data(g, (0, 1))


def test_contributing_simplices(germ_class_111):
    simplices = [d.simplex for d in contributing_simplices(germ_class_111)]
    assert simplices == [(), (0, 1), (0, 2), (1, 2)]
    resonant = germ_class_of(triangle_germ_class(1, 1, -1))
    assert [d.simplex for d in contributing_simplices(resonant)] == [(), (0, 1), (1, 2)]


def test_hp2_matches_poincare_coefficient(germ_class_111):
    assert hp2_dimension(germ_class_111) == 6
    assert hp2_dimension(triangle_germ_class(1, 1, -1)) == 5


@pytest.mark.property
def test_hp2_is_second_poincare_coefficient(rng):
    checked = 0
    while checked < 1000:
        b = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3)]
        log_class = triangle_germ_class(*b)
        g = germ_class_of(log_class)
        if not germ_is_nondegenerate(g) or germ_holonomic_violations(g):
            continue
        if any(x == 0 for x in b):
            continue
        checked += 1
        coefficients = poisson_poincare(g).coefficients
        assert coefficients[0] == 1
        assert coefficients[1] == 3
        assert hp2_dimension(g) == coefficients[2]


def test_relabeling_divisor_preserves_poincare():
    g = germ_class_of(triangle_germ_class(3, 2, 1))
    for perm in [(1, 0, 2), (2, 0, 1), (0, 2, 1)]:
        assert poisson_poincare(g.permuted(perm)) == poisson_poincare(g)


def test_poincare_polynomial_formatting():
    assert str(PoincarePolynomial((1, 3, 6, 4))) == "1 + 3t + 6t^2 + 4t^3"
    assert PoincarePolynomial((1, 2, 0, 0)).coefficients == (1, 2)
    assert PoincarePolynomial((1, 3, 6, 4)).evaluate(1) == 14


def test_deformation_summary(running_germ, p4_block_class):
    assert deformation_summary(running_germ) == {
        "smoothable_edges": 3, "hp2": 6, "local_components": 8, "weakly_nonresonant": True,
    }
    assert deformation_summary(p4_block_class) == {
        "smoothable_edges": 2, "hp2": 8, "local_components": 4, "weakly_nonresonant": True,
    }


def test_germ_json(germ_class_111, running_germ):
    assert germ_from_json(germ_to_json(germ_class_111)) == germ_class_111
    payload = {"complex": {"kind": "germ", "vertices": 3}, "matrix": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]}
    assert germ_from_json(payload) == germ_class_111
    for bad in [[], {"n_divisor": -1, "matrix": []}, {"n_divisor": 2}, {"n_divisor": 3, "matrix": [[0, 1]]}]:
        with pytest.raises(ParseError):
            germ_from_json(bad)


def test_germ_from_json_rejects_projective_class():
    payload = {"complex": {"kind": "P2n", "n": 1}, "chart": [[0, 1], [-1, 0]]}
    with pytest.raises(UnsupportedComplex):
        germ_from_json(payload)


def test_cohomology_report(germ_class_111):
    report = cohomology_report(germ_class_111)
    assert report["poincare"] == [1, 3, 6, 4]
    assert report["hp2"] == 6
    assert [d["simplex"] for d in report["contributing_simplices"]] == [[], [0, 1], [0, 2], [1, 2]]
