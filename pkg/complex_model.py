"""
Дуальный комплекс дивизора с нормальными пересечениями и класс
логарифмической симплектической формы, заданный полной матрицей бивычетов
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from errors import BadVertex, NotAFace, NotSkew, OddSize, ParseError, UnsupportedComplex
from exact_linalg import QMatrix, pfaffian
from utils import format_rational, parse_rational

Simplex = Tuple[int, ...]
Edge = Tuple[int, int]


class ComplexKind(Enum):
    PROJECTIVE_SPACE = "P2n"
    AFFINE_GERM = "germ"
    CUSTOM = "custom"


class ChernMode(Enum):
    SUM_EQUALS_TWO = "sum2"
    VACUOUS = "vacuous"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class DualComplex:
    """
    Дуальный комплекс: вершины - компоненты дивизора, k-подмножества -
    страты коразмерности k. Грани замкнуты вниз и включают пустой симплекс.
    """
    num_vertices: int
    faces: FrozenSet[Simplex]
    kind: ComplexKind
    simply_connected_strata: bool
    chern_mode: ChernMode
    n: Optional[int] = None

    def is_face(self, simplex: Iterable[int]) -> bool:
        return tuple(sorted(simplex)) in self.faces

    def require_face(self, simplex: Iterable[int]) -> Simplex:
        key = tuple(sorted(simplex))
        if len(set(key)) != len(key) or key not in self.faces:
            raise NotAFace(f"{list(key)} не является гранью комплекса")
        return key

    def faces_of_size(self, size: int) -> List[Simplex]:
        return sorted(f for f in self.faces if len(f) == size)

    def sorted_faces(self) -> List[Simplex]:
        """Грани по возрастанию размера, внутри размера - лексикографически"""
        return sorted(self.faces, key=lambda f: (len(f), f))

    def edges(self) -> List[Edge]:
        return self.faces_of_size(2)

    def facets(self) -> List[Simplex]:
        """Максимальные грани"""
        maximal = []
        for face in self.sorted_faces():
            if not any(len(other) > len(face) and set(face) <= set(other) for other in self.faces):
                maximal.append(face)
        return maximal

    def opposite_vertices(self, edge: Edge) -> List[int]:
        """
        Вершины k, в которых определены порядки ребра {i, j}

        Для P^{2n} это все остальные вершины: при n >= 2 каждая тройка
        является гранью, а при n = 1 порядок в третьей вершине тождественно
        равен 2 благодаря нулевым суммам строк.
        """
        i, j = sorted(edge)
        if self.kind is ComplexKind.PROJECTIVE_SPACE:
            return [k for k in range(self.num_vertices) if k not in (i, j)]
        return [k for k in range(self.num_vertices) if k not in (i, j) and self.is_face((i, j, k))]

    def require_vertex(self, vertex: int) -> int:
        if not isinstance(vertex, int) or not 0 <= vertex < self.num_vertices:
            raise BadVertex(f"вершина {vertex!r} вне диапазона 0..{self.num_vertices - 1}")
        return vertex


def _downward_closure(facets: Iterable[Iterable[int]]) -> FrozenSet[Simplex]:
    faces = {()}
    for facet in facets:
        facet = tuple(sorted(set(facet)))
        for size in range(1, len(facet) + 1):
            faces.update(combinations(facet, size))
    return frozenset(faces)


def projective_space_complex(n: int) -> DualComplex:
    """
    Граница симплекса: 2n+1 вершин, гранями служат подмножества размера <= 2n

    Args:
        n: Половина размерности P^{2n}, n >= 1
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n должно быть целым >= 1, получено {n!r}")
    vertices = range(2 * n + 1)
    return DualComplex(
        num_vertices=2 * n + 1,
        faces=_downward_closure(combinations(vertices, 2 * n)),
        kind=ComplexKind.PROJECTIVE_SPACE,
        simply_connected_strata=True,
        chern_mode=ChernMode.SUM_EQUALS_TWO,
        n=n,
    )


def affine_germ_complex(d: int) -> DualComplex:
    """Полный симплекс на d вершинах (координатные гиперплоскости в C^d)"""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d должно быть целым >= 1, получено {d!r}")
    return DualComplex(
        num_vertices=d,
        faces=_downward_closure([range(d)]),
        kind=ComplexKind.AFFINE_GERM,
        simply_connected_strata=True,
        chern_mode=ChernMode.VACUOUS,
    )


def custom_complex(
        num_vertices: int,
        facets: Iterable[Iterable[int]],
        simply_connected_strata: bool = False,
        chern_mode: ChernMode = ChernMode.UNSUPPORTED
) -> DualComplex:
    """Комплекс, заданный списком граней; каждая вершина обязана входить в грань"""
    facets = [list(f) for f in facets]
    for facet in facets:
        for v in facet:
            if not isinstance(v, int) or not 0 <= v < num_vertices:
                raise ParseError(f"вершина {v!r} грани {facet} вне диапазона 0..{num_vertices - 1}")
    faces = _downward_closure(facets)
    faces = faces | frozenset((v,) for v in range(num_vertices))
    return DualComplex(
        num_vertices=num_vertices,
        faces=faces,
        kind=ComplexKind.CUSTOM,
        simply_connected_strata=simply_connected_strata,
        chern_mode=chern_mode,
    )


def free_rank(complex_: DualComplex) -> int:
    """Ранг H¹ тора X°: 2n для P^{2n}, число вершин для ростка"""
    if complex_.kind is ComplexKind.PROJECTIVE_SPACE:
        return 2 * complex_.n
    if complex_.kind is ComplexKind.AFFINE_GERM:
        return complex_.num_vertices
    raise UnsupportedComplex("ранг b₁(X°) известен только для P^{2n} и аффинных ростков")


# ============================================================================
# КЛАСС КОГОМОЛОГИЙ
# ============================================================================
@dataclass(frozen=True)
class LogClass:
    """Класс в H²(X°), хранящийся через все бивычеты B̂_ij сразу"""
    complex: DualComplex
    matrix: QMatrix

    def __post_init__(self):
        size = self.complex.num_vertices
        if (self.matrix.rows, self.matrix.cols) != (size, size):
            raise ParseError(
                f"матрица {self.matrix.rows}x{self.matrix.cols} не подходит для {size} вершин"
            )
        if not self.matrix.is_skew():
            raise NotSkew("матрица бивычетов не кососимметрична")
        if self.complex.kind is ComplexKind.PROJECTIVE_SPACE:
            for i in range(size):
                if sum(self.matrix.row(i)) != 0:
                    raise ParseError(f"сумма строки {i} матрицы класса на P^{2 * self.complex.n} не равна нулю")

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[i, j]

    def scale(self, factor) -> "LogClass":
        return LogClass(self.complex, self.matrix.scale(factor))

    def permuted(self, perm: Sequence[int]) -> "LogClass":
        """σ·класс: вершина v переходит в perm[v]"""
        return LogClass(self.complex, self.matrix.permuted(perm))


def chart_to_full(chart: QMatrix) -> LogClass:
    """
    Поднимает матрицу карты x₀ ≠ 0 до полной матрицы на 2n+1 вершинах

    dlog(x_i/x_0) = dlog x_i − dlog x_0, поэтому B̂_ij = chart_ij при i, j >= 1
    и B̂_0k = Σ_j chart_kj; все суммы строк полной матрицы равны нулю.
    """
    if not chart.is_skew():
        raise NotSkew("матрица карты не кососимметрична")
    if chart.rows % 2 or chart.rows == 0:
        raise OddSize(f"матрица карты должна иметь четный положительный размер, получено {chart.rows}")
    n = chart.rows // 2
    size = chart.rows + 1
    data = [[Fraction(0)] * size for _ in range(size)]
    for i in range(chart.rows):
        for j in range(chart.rows):
            data[i + 1][j + 1] = chart[i, j]
    for k in range(chart.rows):
        row_sum = sum(chart.row(k), Fraction(0))
        data[0][k + 1] = row_sum
        data[k + 1][0] = -row_sum
    return LogClass(projective_space_complex(n), QMatrix.from_rows(data))


def full_to_chart(log_class: LogClass, deleted_vertex: int) -> QMatrix:
    """Подматрица 2n×2n без строки и столбца удаленной вершины"""
    complex_ = log_class.complex
    if complex_.kind is not ComplexKind.PROJECTIVE_SPACE:
        raise UnsupportedComplex("карты определены только для P^{2n}")
    complex_.require_vertex(deleted_vertex)
    kept = [v for v in range(complex_.num_vertices) if v != deleted_vertex]
    return log_class.matrix.principal(kept)


def biresidue(log_class: LogClass, simplex: Iterable[int]) -> QMatrix:
    """Главная подматрица B̂[Δ₀, Δ₀] в порядке возрастания вершин"""
    key = log_class.complex.require_face(simplex)
    return log_class.matrix.principal(list(key))


def minimal_germ_matrix(divisor_block: QMatrix) -> QMatrix:
    """
    Матрица ростка минимальной размерности для бивычетов на d компонентах

    При четном d это сама матрица B, при нечетном добавляется одно
    симплектическое направление, столбец которого состоит из −1
    (нормальная форма dz ∧ Σ dlog y_i).
    """
    d = divisor_block.rows
    if d % 2 == 0:
        return divisor_block
    data = [list(divisor_block.row(i)) + [Fraction(-1)] for i in range(d)]
    data.append([Fraction(1)] * d + [Fraction(0)])
    return QMatrix.from_rows(data)


def is_nondegenerate(log_class: LogClass, chart_vertex: int = 0) -> bool:
    """
    Невырожденность класса

    P^{2n}: пфаффиан карты без вершины chart_vertex отличен от нуля.
    Аффинный росток: пфаффиан матрицы ростка минимальной размерности.
    """
    complex_ = log_class.complex
    if complex_.kind is ComplexKind.PROJECTIVE_SPACE:
        return pfaffian(full_to_chart(log_class, chart_vertex)) != 0
    if complex_.kind is ComplexKind.AFFINE_GERM:
        return pfaffian(minimal_germ_matrix(log_class.matrix)) != 0
    raise UnsupportedComplex("невырожденность для произвольного комплекса не определена")


def triangle_germ_class(b01, b12, b20) -> LogClass:
    """Росток на трех компонентах с циклическими бивычетами (B̂₀₁, B̂₁₂, B̂₂₀)"""
    b01, b12, b20 = Fraction(b01), Fraction(b12), Fraction(b20)
    return LogClass(affine_germ_complex(3), QMatrix.skew_from_upper(3, [b01, -b20, b12]))


# ============================================================================
# JSON
# ============================================================================
def complex_to_json(complex_: DualComplex) -> Dict:
    payload = {
        "kind": complex_.kind.value,
        "vertices": complex_.num_vertices,
        "simply_connected_strata": complex_.simply_connected_strata,
        "chern_mode": complex_.chern_mode.value,
    }
    if complex_.kind is ComplexKind.PROJECTIVE_SPACE:
        payload["n"] = complex_.n
    if complex_.kind is ComplexKind.CUSTOM:
        payload["facets"] = [list(f) for f in complex_.facets()]
    return payload


def complex_from_json(payload: Dict) -> DualComplex:
    """
    Читает комплекс из JSON

    {"kind": "P2n", "n": 2}, {"kind": "germ", "vertices": 3} или
    {"kind": "custom", "vertices": N, "facets": [...], "simply_connected_strata": bool,
     "chern_mode": "sum2" | "vacuous" | "unsupported"}
    """
    if not isinstance(payload, dict):
        raise ParseError("комплекс должен быть JSON-объектом")
    kind = payload.get("kind")
    try:
        if kind == ComplexKind.PROJECTIVE_SPACE.value:
            n = payload.get("n")
            if n is None and isinstance(payload.get("vertices"), int):
                n = (payload["vertices"] - 1) // 2
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ParseError(f"P2n: поле 'n' должно быть целым >= 1, получено {n!r}")
            return projective_space_complex(n)
        if kind == ComplexKind.AFFINE_GERM.value:
            d = payload.get("vertices")
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise ParseError(f"germ: поле 'vertices' должно быть целым >= 1, получено {d!r}")
            return affine_germ_complex(d)
        if kind == ComplexKind.CUSTOM.value:
            num_vertices = payload.get("vertices")
            facets = payload.get("facets")
            if (not isinstance(num_vertices, int) or isinstance(num_vertices, bool) or num_vertices < 1
                    or not isinstance(facets, list)):
                raise ParseError("custom: нужны поля 'vertices' и 'facets'")
            if not all(isinstance(f, list) for f in facets):
                raise ParseError("custom: 'facets' должен быть списком списков вершин")
            return custom_complex(
                num_vertices,
                facets,
                simply_connected_strata=bool(payload.get("simply_connected_strata", False)),
                chern_mode=ChernMode(payload.get("chern_mode", ChernMode.UNSUPPORTED.value)),
            )
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e))
    raise ParseError(f"неизвестный вид комплекса {kind!r}")


def matrix_to_json(matrix: QMatrix) -> List[List[str]]:
    return [[format_rational(x) for x in matrix.row(i)] for i in range(matrix.rows)]


def matrix_from_json(payload, name: str = "matrix") -> QMatrix:
    if not isinstance(payload, list) or not all(isinstance(r, list) for r in payload):
        raise ParseError(f"{name}: ожидался список строк")
    rows = [[parse_rational(x, f"{name}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(payload)]
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise ParseError(f"{name}: строки разной длины")
    return QMatrix.from_rows(rows, width)


def class_to_json(log_class: LogClass) -> Dict:
    return {"complex": complex_to_json(log_class.complex), "matrix": matrix_to_json(log_class.matrix)}


def class_from_json(payload: Dict) -> LogClass:
    """
    Читает класс: {"complex": ..., "matrix": [[...]]}

    Для P2n вместо "matrix" можно задать "chart" (матрица карты 2n×2n).
    """
    if not isinstance(payload, dict) or "complex" not in payload:
        raise ParseError("класс должен быть объектом с полем 'complex'")
    complex_ = complex_from_json(payload["complex"])
    if "chart" in payload and complex_.kind is ComplexKind.PROJECTIVE_SPACE:
        chart = matrix_from_json(payload["chart"], "chart")
        if chart.rows != 2 * complex_.n or not chart.is_skew():
            raise ParseError(f"chart: нужна кососимметричная матрица {2 * complex_.n}x{2 * complex_.n}")
        return chart_to_full(chart)
    if "matrix" not in payload:
        raise ParseError("класс должен содержать 'matrix' (или 'chart' для P2n)")
    matrix = matrix_from_json(payload["matrix"])
    if not matrix.is_skew():
        raise ParseError("matrix: матрица не кососимметрична")
    return LogClass(complex_, matrix)
