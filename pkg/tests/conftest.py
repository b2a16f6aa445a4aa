import random
from fractions import Fraction

import pytest

from complex_model import chart_to_full, projective_space_complex, triangle_germ_class
from exact_linalg import QMatrix
from germ_cohomology import GermClass


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def p4():
    return projective_space_complex(2)


@pytest.fixture
def running_germ():
    """Росток-треугольник с циклическими бивычетами (1, 1, 1)"""
    return triangle_germ_class(1, 1, 1)


@pytest.fixture
def germ_class_111():
    """Росток на C^4: три направления дивизора и одно симплектическое"""
    return GermClass(3, QMatrix.from_rows([
        [0, 1, -1, -1],
        [-1, 0, 1, -1],
        [1, -1, 0, -1],
        [1, 1, 1, 0],
    ]))


@pytest.fixture
def p4_block_class():
    """Блочно-диагональная карта diag(J, J) на P^4"""
    return chart_to_full(QMatrix.from_rows([
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
    ]))


@pytest.fixture
def make_skew(rng):
    """Случайная кососимметричная матрица с малыми рациональными элементами"""
    def build(size: int, bound: int = 5) -> QMatrix:
        upper = [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(size * (size - 1) // 2)]
        return QMatrix.skew_from_upper(size, upper)
    return build
