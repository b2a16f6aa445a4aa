"""
Линейный страт S_{Γ,m} в пространстве классов: уравнения диаграммы,
размерность, символические сертификаты общности и точные свидетели
"""

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from complex_model import (
    ChernMode, ComplexKind, DualComplex, LogClass, chart_to_full, is_nondegenerate,
    matrix_to_json,
)
from configs import RANDOM_SEED, WITNESS_POINTS_PER_RADIUS, WITNESS_RADIUS_CAP
from diagrams import SmoothingDiagram, to_json as diagram_to_json
from errors import InconsistentInput, NotAFace, SizeMismatch, UnsupportedComplex
from exact_linalg import QMatrix, QPoly, evaluate_matrix, kernel_basis, pfaffian, pfaffian_symbolic, rank
from leaf_analysis import smoothing_diagram_of
from utils import log

Edge = Tuple[int, int]


class VerdictKind(Enum):
    REALIZABLE = "Realizable"
    EMPTY_OR_DEGENERATE = "EmptyOrDegenerate"
    EDGE_FORCED_ZERO = "EdgeForcedZero"
    EXTRA_SMOOTHABLE_EDGE = "ExtraSmoothableEdge"
    NOT_A_STRATUM = "NotAStratum"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    edge: Optional[Edge] = None
    decoration: Optional[Tuple[Tuple[int, int], ...]] = None
    reason: str = ""

    @property
    def is_realizable(self) -> bool:
        return self.kind is VerdictKind.REALIZABLE

    def to_json(self) -> Dict:
        payload = {"kind": self.kind.value}
        if self.edge is not None:
            payload["edge"] = list(self.edge)
        if self.decoration is not None:
            payload["decoration"] = {str(k): m for k, m in self.decoration}
        if self.reason:
            payload["reason"] = self.reason
        return payload


@dataclass
class Stratum:
    diagram: SmoothingDiagram
    subspace_basis: List[QMatrix]
    dimension: int
    witness: Optional[LogClass]
    verdict: Verdict
    complex: Optional[DualComplex] = field(default=None, repr=False)


# ============================================================================
# ОБЪЕМЛЮЩЕЕ ПРОСТРАНСТВО И УРАВНЕНИЯ
# ============================================================================
def ambient_basis(complex_: DualComplex) -> List[QMatrix]:
    """
    Базис пространства полных матриц классов

    P^{2n}: единичные кососимметричные матрицы карты x₀ ≠ 0, поднятые
    chart_to_full (кососимметричные матрицы с нулевыми суммами строк).
    Аффинный росток: все единичные кососимметричные матрицы.
    """
    if complex_.kind is ComplexKind.PROJECTIVE_SPACE:
        size = 2 * complex_.n
        basis = []
        for a in range(size):
            for b in range(a + 1, size):
                upper = [int((i, j) == (a, b)) for i in range(size) for j in range(i + 1, size)]
                basis.append(chart_to_full(QMatrix.skew_from_upper(size, upper)).matrix)
        return basis
    if complex_.kind is ComplexKind.AFFINE_GERM:
        size = complex_.num_vertices
        return [
            QMatrix.skew_from_upper(size, [int((i, j) == (a, b)) for i in range(size) for j in range(i + 1, size)])
            for a in range(size) for b in range(a + 1, size)
        ]
    raise UnsupportedComplex("линейный страт определен только для P^{2n} и аффинных ростков")


def _check_diagram(d: SmoothingDiagram, complex_: DualComplex) -> None:
    if d.num_vertices != complex_.num_vertices:
        raise SizeMismatch(f"диаграмма на {d.num_vertices} вершинах, комплекс на {complex_.num_vertices}")
    for edge in d.sorted_edges():
        if not complex_.is_face(edge):
            raise NotAFace(f"ребро {edge[0]}-{edge[1]} не является гранью комплекса")
        opposite = complex_.opposite_vertices(edge)
        for k in d.orders_of(edge):
            if k not in opposite:
                raise InconsistentInput(f"порядок ребра {edge[0]}-{edge[1]} в вершине {k}, не образующей грань")


def _entry_row(basis: Sequence[QMatrix], i: int, j: int) -> List[Fraction]:
    return [m[i, j] for m in basis]


def _order_row(basis: Sequence[QMatrix], edge: Edge, k: int, order: int) -> List[Fraction]:
    """Коэффициенты формы B̂_jk + B̂_ki − m·B̂_ij"""
    i, j = edge
    return [m[j, k] + m[k, i] - order * m[i, j] for m in basis]


def edge_rows(basis: Sequence[QMatrix], complex_: DualComplex, edge: Edge, orders: Dict[int, int]) -> List[List[Fraction]]:
    """Уравнения одного ребра Γ: по строке на противоположную вершину"""
    return [_order_row(basis, edge, k, orders.get(k, 0)) for k in complex_.opposite_vertices(edge)]


def _diagram_rows(d: SmoothingDiagram, complex_: DualComplex, basis: Sequence[QMatrix]) -> List[List[Fraction]]:
    rows = []
    for edge in d.sorted_edges():
        rows.extend(edge_rows(basis, complex_, edge, d.orders_of(edge)))
    return rows


def constraint_matrix(d: SmoothingDiagram, complex_: DualComplex) -> QMatrix:
    """
    Система B̂_jk + B̂_ki − m·B̂_ij = 0 в координатах ambient_basis

    По строке на пару (ребро Γ, противоположная вершина).
    """
    basis = ambient_basis(complex_)
    _check_diagram(d, complex_)
    return QMatrix.from_rows(_diagram_rows(d, complex_, basis), len(basis))


def _combine(basis: Sequence[QMatrix], coefficients: Sequence, size: int) -> QMatrix:
    result = QMatrix.zeros(size)
    for c, m in zip(coefficients, basis):
        if c:
            result = result + m.scale(c)
    return result


def subspace_of(ambient: Sequence[QMatrix], rows: List[List[Fraction]], size: int) -> List[QMatrix]:
    system = QMatrix.from_rows(rows, len(ambient))
    return [_combine(ambient, v, size) for v in kernel_basis(system)]


def solve_stratum(d: SmoothingDiagram, complex_: DualComplex) -> Tuple[List[QMatrix], int]:
    """
    Returns:
        (базис W в виде полных матриц, dim W = dim ambient − rank)
    """
    ambient = ambient_basis(complex_)
    _check_diagram(d, complex_)
    basis = subspace_of(ambient, _diagram_rows(d, complex_, ambient), complex_.num_vertices)
    return basis, len(basis)


# ============================================================================
# ФОРМЫ НА ПОДПРОСТРАНСТВЕ
# ============================================================================
def edge_vanishes(basis: Sequence[QMatrix], edge: Edge) -> bool:
    """Бивычет ребра тождественно нулевой на подпространстве"""
    return not any(_entry_row(basis, *edge))


def edge_form(basis: Sequence[QMatrix], edge: Edge) -> QPoly:
    """Бивычет ребра как линейная форма в координатах базиса"""
    i, j = edge
    return QPoly.linear(_entry_row(basis, i, j))


def _pfaffian_matrix(basis: Sequence[QMatrix], complex_: DualComplex) -> List[List[QPoly]]:
    variables = len(basis)
    if complex_.kind is ComplexKind.PROJECTIVE_SPACE:
        indices = list(range(1, complex_.num_vertices))
        return [[QPoly.linear(_entry_row(basis, i, j)) for j in indices] for i in indices]
    size = complex_.num_vertices
    block = [[QPoly.linear(_entry_row(basis, i, j)) for j in range(size)] for i in range(size)]
    if size % 2 == 0:
        return block
    # Окаймление одним симплектическим направлением (нормальная форма ростка)
    minus_one = QPoly.constant(-1, variables)
    one = QPoly.constant(1, variables)
    bordered = [row + [minus_one] for row in block]
    bordered.append([one] * size + [QPoly(variables)])
    return bordered


def restricted_pfaffian(basis: Sequence[QMatrix], complex_: DualComplex) -> QPoly:
    """Пфаффиан карты x₀ ≠ 0 (или матрицы ростка) как многочлен на W"""
    return pfaffian_symbolic(_pfaffian_matrix(basis, complex_))


def pfaffian_vanishes(basis: Sequence[QMatrix], complex_: DualComplex, rng: Optional[random.Random] = None,
                      trials: int = 3) -> bool:
    """
    Тождественно ли равен нулю пфаффиан на W

    Ненулевое значение в случайной рациональной точке - точный сертификат;
    если все пробы нулевые, решает символическое разложение.
    """
    if not basis:
        return True
    rng = rng or random.Random(RANDOM_SEED)
    matrix = _pfaffian_matrix(basis, complex_)
    for _ in range(trials):
        point = [rng.randint(-97, 97) for _ in basis]
        if pfaffian(evaluate_matrix(matrix, point)) != 0:
            return False
    return pfaffian_symbolic(matrix).is_zero()


def _proportional_constant(target: Sequence[Fraction], base: Sequence[Fraction]) -> Optional[Fraction]:
    """c с target = c·base, либо None (base ненулевой)"""
    if rank(QMatrix.from_rows([list(base), list(target)])) > 1:
        return None
    pivot = next(p for p, b in enumerate(base) if b)
    return target[pivot] / base[pivot]


@dataclass
class _EdgeProfile:
    """Поведение ребра вне Γ в общей точке W"""
    generic_decoration: Optional[Dict[int, int]] = None
    first_free_vertex: Optional[int] = None


def _edge_profile(basis: Sequence[QMatrix], complex_: DualComplex, edge: Edge) -> Optional[_EdgeProfile]:
    """None, если бивычет ребра тождественно нулевой на W"""
    i, j = edge
    base = _entry_row(basis, i, j)
    if not any(base):
        return None
    decoration: Dict[int, int] = {}
    generic = True
    profile = _EdgeProfile()
    for k in complex_.opposite_vertices(edge):
        c = _proportional_constant(_order_row(basis, edge, k, 0), base)
        if c is None:
            if profile.first_free_vertex is None:
                profile.first_free_vertex = k
            generic = False
        elif c.denominator != 1 or c < 0:
            generic = False
        elif c:
            decoration[k] = int(c)
    if generic and complex_.chern_mode is ChernMode.SUM_EQUALS_TWO and sum(decoration.values()) != 2:
        generic = False
    if generic:
        profile.generic_decoration = decoration
    return profile


# ============================================================================
# РЕАЛИЗУЕМОСТЬ
# ============================================================================
def _failure(d, basis, verdict, complex_) -> Stratum:
    return Stratum(d, list(basis), len(basis), None, verdict, complex_)


def is_realizable(d: SmoothingDiagram, complex_: DualComplex, rng: Optional[random.Random] = None) -> Stratum:
    """
    Полный вердикт для диаграммы

    Ребра вне Γ, сглаживаемые в общей точке W, зануляются (добавляется
    уравнение B̂ = 0) до стабилизации. Если после этого пфаффиан или
    бивычет ребра Γ тождественно нулевые - ExtraSmoothableEdge с первым
    таким ребром; без добавленных уравнений - EmptyOrDegenerate или
    EdgeForcedZero. Иначе ищется целочисленный свидетель.

    Лишнее сглаживаемое ребро не дает отказ сразу: вердикт
    ExtraSmoothableEdge выносится только после уточнения W, поэтому
    размерность может быть меньше, чем у solve_stratum (на P^4 совпадает).
    """
    if complex_.chern_mode is ChernMode.UNSUPPORTED or not complex_.simply_connected_strata:
        raise UnsupportedComplex("реализуемость требует режима Черна и односвязных стратов")
    ambient = ambient_basis(complex_)
    _check_diagram(d, complex_)
    size = complex_.num_vertices
    rows = _diagram_rows(d, complex_, ambient)
    gamma = d.sorted_edges()
    outside = [e for e in complex_.edges() if e not in d.edges]
    forced: List[Tuple[Edge, Dict[int, int]]] = []

    while True:
        basis = subspace_of(ambient, rows, size)
        failure = None
        if not basis or pfaffian_vanishes(basis, complex_, rng):
            failure = Verdict(VerdictKind.EMPTY_OR_DEGENERATE, reason="пфаффиан тождественно равен нулю на страте")
        else:
            for edge in gamma:
                if edge_vanishes(basis, edge):
                    failure = Verdict(VerdictKind.EDGE_FORCED_ZERO, edge=edge,
                                      reason=f"бивычет ребра {edge[0]}-{edge[1]} равен нулю на страте")
                    break
        if failure is not None:
            if forced:
                edge, decoration = forced[0]
                failure = Verdict(VerdictKind.EXTRA_SMOOTHABLE_EDGE, edge=edge,
                                  decoration=tuple(sorted(decoration.items())),
                                  reason=f"ребро {edge[0]}-{edge[1]} сглаживаемо в общей точке страта")
            log("Arrangement", f"❌ {failure.kind.value}: {diagram_to_json(d)['edges']}", level=2)
            return _failure(d, basis, failure, complex_)

        profiles = {edge: _edge_profile(basis, complex_, edge) for edge in outside}
        newly_forced = [
            (edge, p.generic_decoration) for edge, p in profiles.items()
            if p is not None and p.generic_decoration is not None
        ]
        if not newly_forced:
            break
        forced.extend(newly_forced)
        for edge, _ in newly_forced:
            rows.append(_entry_row(ambient, *edge))

    avoid = [restricted_pfaffian(basis, complex_)] + [edge_form(basis, e) for e in gamma]
    if complex_.chern_mode is ChernMode.SUM_EQUALS_TWO:
        for edge, profile in profiles.items():
            if profile is None or profile.first_free_vertex is None:
                continue
            base = _entry_row(basis, *edge)
            free = _order_row(basis, edge, profile.first_free_vertex, 0)
            for m in range(3):
                avoid.append(QPoly.linear([a - m * b for a, b in zip(free, base)]))

    def accept(candidate: LogClass) -> bool:
        return is_nondegenerate(candidate) and smoothing_diagram_of(candidate) == d

    witness = find_witness(basis, avoid, complex_, accept)
    if witness is None:
        verdict = Verdict(VerdictKind.NOT_A_STRATUM, reason="witness search exhausted")
        log("Arrangement", f"⚠️ Свидетель не найден до радиуса {WITNESS_RADIUS_CAP}", level=1)
        return _failure(d, basis, verdict, complex_)
    return Stratum(d, basis, len(basis), witness, Verdict(VerdictKind.REALIZABLE), complex_)


# ============================================================================
# ПОИСК СВИДЕТЕЛЯ
# ============================================================================
def _box_points(dimension: int, radius: int):
    side = 2 * radius + 1
    if side ** dimension <= WITNESS_POINTS_PER_RADIUS:
        yield from product(range(-radius, radius + 1), repeat=dimension)
        return
    sampler = random.Random(RANDOM_SEED + radius)
    for _ in range(WITNESS_POINTS_PER_RADIUS):
        yield tuple(sampler.randint(-radius, radius) for _ in range(dimension))


def _candidate_points(dimension: int):
    for s in range(dimension):
        yield tuple(int(t == s) for t in range(dimension))
    radius = 1
    while radius <= WITNESS_RADIUS_CAP:
        yield from _box_points(dimension, radius)
        radius *= 2


def find_witness(
        basis: Sequence[QMatrix],
        avoid: Sequence[QPoly],
        complex_: DualComplex,
        accept: Optional[Callable[[LogClass], bool]] = None
) -> Optional[LogClass]:
    """
    Целочисленная комбинация базиса, на которой все многочлены avoid ненулевые

    Сначала перебираются векторы базиса, затем кубы радиуса 1, 2, 4, ...
    Малые кубы перебираются полностью, большие - выборкой с фиксированным зерном.

    Args:
        basis: Базис подпространства (полные матрицы)
        avoid: Многочлены от len(basis) переменных
        complex_: Комплекс класса-свидетеля
        accept: Дополнительная точная проверка кандидата

    Returns:
        LogClass или None, если достигнут предел радиуса
    """
    for poly in avoid:
        if poly.is_zero():
            raise InconsistentInput(f"многочлен {poly!r} тождественно равен нулю на подпространстве")
    size = complex_.num_vertices
    if not basis:
        candidate = LogClass(complex_, QMatrix.zeros(size))
        if all(p.evaluate(()) != 0 for p in avoid) and (accept is None or accept(candidate)):
            return candidate
        return None
    checked = 0
    for point in _candidate_points(len(basis)):
        if not any(point) or any(p.evaluate(point) == 0 for p in avoid):
            continue
        checked += 1
        candidate = LogClass(complex_, _combine(basis, point, size))
        if accept is None or accept(candidate):
            log("Arrangement", f"🎯 Свидетель найден после {checked} кандидатов", level=2)
            return candidate
    return None


def stratum_to_json(stratum: Stratum) -> Dict:
    return {
        "diagram": diagram_to_json(stratum.diagram),
        "dimension": stratum.dimension,
        "verdict": stratum.verdict.kind.value,
        "verdict_detail": stratum.verdict.to_json(),
        "witness": matrix_to_json(stratum.witness.matrix) if stratum.witness is not None else None,
    }
