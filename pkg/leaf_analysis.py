"""
Поточечные критерии для класса: характеристические листы, голономность,
вычеты, резонанс, сглаживаемые ребра и диаграмма сглаживания класса
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from complex_model import (
    ChernMode, ComplexKind, LogClass, biresidue, is_nondegenerate,
)
from diagrams import SmoothingDiagram, to_json as diagram_to_json
from errors import DegenerateStratum, NotAFace, SingularMatrix, UnsupportedComplex, ZeroBiresidue
from exact_linalg import in_column_space, inverse
from utils import format_rational, log

Edge = Tuple[int, int]


@dataclass
class EdgeOrderReport:
    """Порядки ребра во всех противоположных вершинах"""
    edge: Edge
    orders: Dict[int, Fraction]
    biresidue: Fraction
    resonant: bool = False
    smoothable: bool = False

    def to_json(self) -> Dict:
        return {
            "edge": list(self.edge),
            "biresidue": format_rational(self.biresidue),
            "orders": {str(k): format_rational(v) for k, v in sorted(self.orders.items())},
            "resonant": self.resonant,
            "smoothable": self.smoothable,
        }


def is_characteristic(log_class: LogClass, simplex: Iterable[int]) -> bool:
    """Вектор (1,…,1) лежит в образе B_Δ; для пустого симплекса всегда True"""
    b = biresidue(log_class, simplex)
    if b.rows == 0:
        return True
    return in_column_space(b, [1] * b.rows)


def is_holonomic(log_class: LogClass) -> Tuple[bool, List[Tuple[int, ...]]]:
    """
    Голономность: ни для одной грани нечетной мощности (1,…,1) не лежит в образе B_Δ

    Returns:
        (голономен, нарушающие симплексы по возрастанию)
    """
    violators = [
        face for face in log_class.complex.sorted_faces()
        if len(face) % 2 == 1 and is_characteristic(log_class, face)
    ]
    return not violators, violators


def _require_edge(log_class: LogClass, edge: Edge) -> Edge:
    i, j = edge
    return log_class.complex.require_face((i, j))


def edge_order(log_class: LogClass, edge: Edge, k: int) -> Fraction:
    """
    Порядок ребра {i, j} в вершине k: (B̂_jk + B̂_ki) / B̂_ij

    Не зависит от ориентации ребра и от умножения класса на скаляр.
    """
    i, j = edge
    key = _require_edge(log_class, edge)
    if k not in log_class.complex.opposite_vertices(key):
        raise NotAFace(f"вершина {k} не образует грань с ребром {key[0]}-{key[1]}")
    b = log_class.matrix
    if b[i, j] == 0:
        raise ZeroBiresidue(f"бивычет ребра {key[0]}-{key[1]} равен нулю")
    return (b[j, k] + b[k, i]) / b[i, j]


def edge_orders(log_class: LogClass, edge: Edge) -> Dict[int, Fraction]:
    key = _require_edge(log_class, edge)
    if log_class.matrix[key] == 0:
        raise ZeroBiresidue(f"бивычет ребра {key[0]}-{key[1]} равен нулю")
    return {k: edge_order(log_class, key, k) for k in log_class.complex.opposite_vertices(key)}


def residue_vector(log_class: LogClass, simplex: Iterable[int], k: int) -> Tuple[Tuple[Fraction, ...], Fraction]:
    """
    Вычет детерминантной связности вдоль компоненты k на страте Δ

    Args:
        log_class: Класс
        simplex: Грань Δ с невырожденным B_Δ
        k: Вершина вне Δ; Δ ∪ {k} - грань (на P^{2n} годится любая вершина вне Δ)

    Returns:
        (B_Δ⁻¹·A, (1,…,1)·B_Δ⁻¹·A), где A = (B̂_ik) по i ∈ Δ
    """
    complex_ = log_class.complex
    key = complex_.require_face(simplex)
    complex_.require_vertex(k)
    if k in key:
        raise NotAFace(f"вершина {k} уже лежит в {list(key)}")
    if complex_.kind is not ComplexKind.PROJECTIVE_SPACE and not complex_.is_face(key + (k,)):
        raise NotAFace(f"{sorted(key + (k,))} не является гранью комплекса")
    b = biresidue(log_class, key)
    try:
        b_inv = inverse(b)
    except SingularMatrix:
        raise DegenerateStratum(f"бивычет симплекса {list(key)} вырожден")
    column = [log_class.matrix[i, k] for i in key]
    solution = b_inv.apply(column)
    return solution, sum(solution, Fraction(0))


def _is_negative_integer(value: Fraction) -> bool:
    return value.denominator == 1 and value < 0


def is_edge_resonant(log_class: LogClass, edge: Edge) -> bool:
    """Резонанс: некоторый порядок ребра - отрицательное целое"""
    return any(_is_negative_integer(m) for m in edge_orders(log_class, edge).values())


def _require_supported(log_class: LogClass) -> None:
    complex_ = log_class.complex
    if not complex_.simply_connected_strata:
        raise UnsupportedComplex("страты комплекса не отмечены односвязными: монодромия не вычисляется")
    if complex_.chern_mode is ChernMode.UNSUPPORTED:
        raise UnsupportedComplex("для комплекса не задан режим условия на класс Черна")


def _smoothable_orders(log_class: LogClass, orders: Dict[int, Fraction]) -> bool:
    if any(m.denominator != 1 or m < 0 for m in orders.values()):
        return False
    if log_class.complex.chern_mode is ChernMode.SUM_EQUALS_TWO:
        return sum(orders.values()) == 2
    return True


def is_edge_smoothable(log_class: LogClass, edge: Edge) -> bool:
    """
    Ребро сглаживаемо, если B̂ ≠ 0, все порядки в Z_{>=0} и
    (в режиме SumEqualsTwo) их сумма равна 2
    """
    _require_supported(log_class)
    i, j = _require_edge(log_class, edge)
    if log_class.matrix[i, j] == 0:
        return False
    return _smoothable_orders(log_class, edge_orders(log_class, (i, j)))


def smoothing_diagram_of(log_class: LogClass) -> SmoothingDiagram:
    """Диаграмма сглаживания: все сглаживаемые ребра с их порядками"""
    _require_supported(log_class)
    decorations = {}
    for edge in log_class.complex.edges():
        if log_class.matrix[edge] == 0:
            continue
        orders = edge_orders(log_class, edge)
        if _smoothable_orders(log_class, orders):
            decorations[edge] = {k: int(m) for k, m in orders.items()}
    return SmoothingDiagram.build(log_class.complex.num_vertices, decorations)


def characteristic_census(log_class: LogClass) -> List[Tuple[int, ...]]:
    """Грани с характеристическими листами, по (размер, лексикографически)"""
    return [face for face in log_class.complex.sorted_faces() if is_characteristic(log_class, face)]


def edge_reports(log_class: LogClass) -> List[EdgeOrderReport]:
    """Отчеты по ребрам с ненулевым бивычетом"""
    reports = []
    check_smoothable = True
    try:
        _require_supported(log_class)
    except UnsupportedComplex:
        check_smoothable = False
    for edge in log_class.complex.edges():
        value = log_class.matrix[edge]
        if value == 0:
            continue
        orders = edge_orders(log_class, edge)
        reports.append(EdgeOrderReport(
            edge=edge,
            orders=orders,
            biresidue=value,
            resonant=any(_is_negative_integer(m) for m in orders.values()),
            smoothable=check_smoothable and _smoothable_orders(log_class, orders),
        ))
    return reports


def analyze_class(log_class: LogClass, chart_vertex: int = 0) -> Dict:
    """
    Сводный отчет команды analyze

    Args:
        log_class: Класс
        chart_vertex: Карта для пфаффиана (только для P^{2n})

    Returns:
        Словарь в формате отчета analyze
    """
    if log_class.complex.kind is ComplexKind.PROJECTIVE_SPACE:
        nondegenerate = is_nondegenerate(log_class, chart_vertex)
    else:
        nondegenerate = is_nondegenerate(log_class)
    holonomic, violators = is_holonomic(log_class)
    reports = edge_reports(log_class)
    diagram = smoothing_diagram_of(log_class)
    log("Analyze", f"📊 Невырожден: {nondegenerate}, голономен: {holonomic}, "
                   f"сглаживаемых ребер: {len(diagram.edges)}", level=2)
    return {
        "nondegenerate": nondegenerate,
        "holonomic": holonomic,
        "violating_simplices": [list(s) for s in violators],
        "characteristic": [list(s) for s in characteristic_census(log_class)],
        "edges": [r.to_json() for r in reports],
        "diagram": diagram_to_json(diagram),
    }
