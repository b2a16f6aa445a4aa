from fractions import Fraction

import pytest

from complex_model import (
    ChernMode, ComplexKind, LogClass, affine_germ_complex, biresidue, chart_to_full, class_from_json,
    class_to_json, complex_from_json, complex_to_json, custom_complex, free_rank, full_to_chart,
    is_nondegenerate, minimal_germ_matrix, projective_space_complex, triangle_germ_class,
)
from errors import BadVertex, NotAFace, NotSkew, OddSize, ParseError, UnsupportedComplex
from exact_linalg import QMatrix, pfaffian


def test_projective_space_faces():
    p4 = projective_space_complex(2)
    assert p4.num_vertices == 5
    assert len(p4.edges()) == 10
    assert len(p4.facets()) == 5
    assert not p4.is_face(range(5))
    assert p4.is_face((0, 2, 3))
    assert p4.opposite_vertices((1, 3)) == [0, 2, 4]
    assert p4.chern_mode is ChernMode.SUM_EQUALS_TWO


def test_p2_orders_live_at_third_vertex():
    p2 = projective_space_complex(1)
    assert not p2.is_face((0, 1, 2))
    assert p2.opposite_vertices((0, 1)) == [2]


def test_affine_germ_and_custom_complex():
    germ = affine_germ_complex(3)
    assert germ.facets() == [(0, 1, 2)]
    assert germ.opposite_vertices((0, 2)) == [1]

    square = custom_complex(4, [[0, 1], [1, 2], [2, 3], [0, 3]])
    assert square.kind is ComplexKind.CUSTOM
    assert square.opposite_vertices((0, 1)) == []
    assert not square.is_face((0, 2))


def test_custom_complex_rejects_out_of_range_vertex():
    with pytest.raises(ParseError):
        custom_complex(3, [[0, 3]])


def test_require_face_and_vertex():
    p4 = projective_space_complex(2)
    with pytest.raises(NotAFace):
        p4.require_face(range(5))
    with pytest.raises(BadVertex):
        p4.require_vertex(5)


def test_free_rank():
    assert free_rank(projective_space_complex(3)) == 6
    assert free_rank(affine_germ_complex(3)) == 3
    with pytest.raises(UnsupportedComplex):
        free_rank(custom_complex(2, [[0, 1]]))


def test_log_class_checks_row_sums():
    p2 = projective_space_complex(1)
    with pytest.raises(ParseError):
        LogClass(p2, QMatrix.skew_from_upper(3, [1, 0, 0]))
    with pytest.raises(NotSkew):
        LogClass(affine_germ_complex(2), QMatrix.from_rows([[0, 1], [1, 0]]))


def test_chart_to_full_has_zero_row_sums(p4_block_class):
    matrix = p4_block_class.matrix
    for i in range(5):
        assert sum(matrix.row(i)) == 0
    assert matrix.row(0) == (0, 1, -1, 1, -1)
    assert full_to_chart(p4_block_class, 0).to_rows() == [
        [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0],
    ]


def test_chart_to_full_rejects_odd_chart():
    with pytest.raises(OddSize):
        chart_to_full(QMatrix.skew_from_upper(3, [1, 2, 3]))


def test_biresidue_is_principal_submatrix(p4_block_class):
    b = biresidue(p4_block_class, (2, 0))
    assert b.to_rows() == [[0, -1], [1, 0]]


def test_minimal_germ_matrix_pfaffian():
    # Окаймленная матрица треугольника: Pf = −(b₀₁ + b₁₂ + b₂₀)
    for b01, b12, b20 in [(1, 1, 1), (3, 2, 1), (1, 1, -2), (Fraction(1, 2), 5, -3)]:
        block = triangle_germ_class(b01, b12, b20).matrix
        bordered = minimal_germ_matrix(block)
        assert bordered.rows == 4
        assert pfaffian(bordered) == -(Fraction(b01) + b12 + b20)


def test_is_nondegenerate_by_kind(p4_block_class):
    assert is_nondegenerate(p4_block_class)
    assert is_nondegenerate(triangle_germ_class(1, 1, 1))
    assert not is_nondegenerate(triangle_germ_class(1, 1, -2))
    zero = LogClass(projective_space_complex(2), QMatrix.zeros(5))
    assert not is_nondegenerate(zero)
    custom = LogClass(custom_complex(2, [[0, 1]]), QMatrix.skew_from_upper(2, [1]))
    with pytest.raises(UnsupportedComplex):
        is_nondegenerate(custom)


@pytest.mark.property
def test_nondegeneracy_does_not_depend_on_chart(make_skew):
    for _ in range(1000):
        log_class = chart_to_full(make_skew(4, bound=2))
        verdicts = {is_nondegenerate(log_class, v) for v in range(5)}
        assert len(verdicts) == 1


@pytest.mark.property
def test_relabeling_preserves_nondegeneracy(make_skew, rng):
    for _ in range(1000):
        log_class = chart_to_full(make_skew(4, bound=2))
        perm = list(range(5))
        rng.shuffle(perm)
        assert is_nondegenerate(log_class.permuted(perm)) == is_nondegenerate(log_class)


def test_class_json_round_trip(p4_block_class):
    payload = class_to_json(p4_block_class)
    assert payload["complex"] == {"kind": "P2n", "vertices": 5, "simply_connected_strata": True,
                                  "chern_mode": "sum2", "n": 2}
    assert class_from_json(payload) == p4_block_class


def test_class_from_chart():
    payload = {"complex": {"kind": "P2n", "n": 1}, "chart": [[0, "1/2"], ["-1/2", 0]]}
    log_class = class_from_json(payload)
    assert log_class.matrix.row(0) == (0, Fraction(1, 2), Fraction(-1, 2))


@pytest.mark.parametrize("payload", [
    [],
    {"matrix": [[0]]},
    {"complex": {"kind": "torus"}, "matrix": [[0]]},
    {"complex": {"kind": "germ", "vertices": 2}, "matrix": [[0, 1.5], [-1.5, 0]]},
    {"complex": {"kind": "germ", "vertices": 2}, "matrix": [[0, 1], [1, 0]]},
    {"complex": {"kind": "P2n", "n": 1}, "chart": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]},
    {"complex": {"kind": "custom", "vertices": 2, "facets": [[0, 1]], "chern_mode": "maybe"},
     "matrix": [[0, 1], [-1, 0]]},
    {"complex": {"kind": "custom", "vertices": True, "facets": [[0]], "chern_mode": "vacuous"}, "matrix": [[0]]},
])
def test_class_from_json_rejects_malformed(payload):
    with pytest.raises(ParseError):
        class_from_json(payload)


def test_custom_complex_json_round_trip():
    complex_ = custom_complex(3, [[0, 1], [1, 2]], simply_connected_strata=True, chern_mode=ChernMode.VACUOUS)
    restored = complex_from_json(complex_to_json(complex_))
    assert restored == complex_
