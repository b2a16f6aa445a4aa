"""
Когомологии Пуассона торически-инвариантных ростков

Многочлен Пуанкаре по весовому разложению, данные коциклов (t, α),
размерность HP² и сводка деформаций.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from complex_model import (
    ComplexKind, LogClass, affine_germ_complex, free_rank, matrix_from_json, matrix_to_json,
    minimal_germ_matrix, class_from_json,
)
from errors import (
    Degenerate, DegenerateSimplex, NotAFace, NotHolonomic, OddDimension, ParseError,
    SingularMatrix, UnsupportedComplex,
)
from exact_linalg import QMatrix, in_column_space, inverse, pfaffian
from leaf_analysis import smoothing_diagram_of
from utils import format_rational, log

Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class GermClass:
    """
    Росток на C^N: индексы 0..n_divisor-1 - направления дивизора y,
    остальные - симплектические направления p
    """
    n_divisor: int
    full_matrix: QMatrix

    def __post_init__(self):
        if not self.full_matrix.is_skew():
            raise ParseError("матрица ростка не кососимметрична")
        if not 0 <= self.n_divisor <= self.full_matrix.rows:
            raise ParseError(
                f"n_divisor = {self.n_divisor} вне диапазона 0..{self.full_matrix.rows}"
            )

    @property
    def size(self) -> int:
        return self.full_matrix.rows

    def divisor_block(self, simplex: Sequence[int] = None) -> QMatrix:
        indices = list(range(self.n_divisor)) if simplex is None else list(simplex)
        return self.full_matrix.principal(indices)

    def scale(self, factor) -> "GermClass":
        return GermClass(self.n_divisor, self.full_matrix.scale(factor))

    def permuted(self, perm: Sequence[int]) -> "GermClass":
        """Перенумерация направлений дивизора; perm - перестановка 0..n_divisor-1"""
        full = list(perm) + list(range(self.n_divisor, self.size))
        return GermClass(self.n_divisor, self.full_matrix.permuted(full))


@dataclass(frozen=True)
class PoincarePolynomial:
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    def evaluate(self, t: int) -> int:
        return sum(c * t ** i for i, c in enumerate(self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for power, c in enumerate(self.coefficients):
            if not c:
                continue
            monomial = "" if power == 0 else ("t" if power == 1 else f"t^{power}")
            coefficient = str(c) if c != 1 or not monomial else ""
            parts.append(coefficient + monomial)
        return " + ".join(parts)


@dataclass(frozen=True)
class CocycleData:
    simplex: Simplex
    t: Dict[int, Fraction]
    alpha: Dict[int, Fraction]

    @property
    def contributes(self) -> bool:
        return all(v.denominator == 1 and v >= 0 for v in self.t.values())

    def to_json(self) -> Dict:
        return {
            "simplex": list(self.simplex),
            "t": {str(k): format_rational(v) for k, v in sorted(self.t.items())},
            "alpha": {str(i): format_rational(v) for i, v in sorted(self.alpha.items())},
        }


# ============================================================================
# НЕВЫРОЖДЕННОСТЬ И ГОЛОНОМНОСТЬ
# ============================================================================
def germ_is_nondegenerate(g: GermClass) -> bool:
    if g.size % 2:
        raise OddDimension(f"матрица ростка нечетного размера {g.size}")
    return pfaffian(g.full_matrix) != 0


def germ_holonomic_violations(g: GermClass) -> List[Simplex]:
    """Нечетные подмножества Δ дивизора с (1,…,1) в образе B_Δ"""
    violators = []
    for size in range(1, g.n_divisor + 1, 2):
        for simplex in combinations(range(g.n_divisor), size):
            if in_column_space(g.divisor_block(simplex), [1] * size):
                violators.append(simplex)
    return violators


# ============================================================================
# КОЦИКЛЫ
# ============================================================================
def _require_divisor_simplex(g: GermClass, simplex) -> Simplex:
    key = tuple(sorted(simplex))
    if len(set(key)) != len(key) or any(not 0 <= i < g.n_divisor for i in key):
        raise NotAFace(f"{list(key)} не является подмножеством индексов дивизора 0..{g.n_divisor - 1}")
    return key


def cocycle_data(g: GermClass, simplex: Sequence[int]) -> CocycleData:
    """
    Показатели представителя класса для симплекса Δ

    t_k = −Σ_{i,j∈Δ} (B_Δ⁻¹)_ij B_jk для k ∉ Δ, α_i = Σ_{j∈Δ} (B_Δ⁻¹)_ji
    """
    key = _require_divisor_simplex(g, simplex)
    if not key:
        return CocycleData((), {}, {})
    if len(key) % 2:
        raise DegenerateSimplex(f"бивычет симплекса нечетного размера {list(key)} необратим")
    try:
        b_inv = inverse(g.divisor_block(key))
    except SingularMatrix:
        raise DegenerateSimplex(f"бивычет симплекса {list(key)} необратим")

    size = len(key)
    t = {}
    for k in range(g.n_divisor):
        if k in key:
            continue
        total = Fraction(0)
        for a in range(size):
            for b in range(size):
                total += b_inv[a, b] * g.full_matrix[key[b], k]
        t[k] = -total
    alpha = {key[a]: sum((b_inv[b, a] for b in range(size)), Fraction(0)) for a in range(size)}
    return CocycleData(key, t, alpha)


def contributing_simplices(g: GermClass) -> List[CocycleData]:
    """Симплексы с обратимым B_Δ и всеми t_k ∈ Z_{>=0}, по (размер, лексикографически)"""
    result = []
    for size in range(0, g.n_divisor + 1, 2):
        for simplex in combinations(range(g.n_divisor), size):
            try:
                data = cocycle_data(g, simplex)
            except DegenerateSimplex:
                continue
            if data.contributes:
                result.append(data)
    return result


def poisson_poincare(g: GermClass) -> PoincarePolynomial:
    """
    P(t) = Σ t^{|Δ|}·(1+t)^{n−|Δ|} по вкладывающим симплексам

    Raises:
        NotHolonomic: с перечнем нарушающих подмножеств
        Degenerate: если пфаффиан равен нулю
    """
    violators = germ_holonomic_violations(g)
    if violators:
        raise NotHolonomic(violators)
    if not germ_is_nondegenerate(g):
        raise Degenerate("форма ростка вырождена (пфаффиан равен нулю)")

    n = g.n_divisor
    coefficients = [0] * (n + 1)
    for data in contributing_simplices(g):
        s = len(data.simplex)
        for i in range(n - s + 1):
            coefficients[s + i] += comb(n - s, i)
    polynomial = PoincarePolynomial(tuple(coefficients))
    log("Cohomology", f"📊 P(t) = {polynomial}", level=2)
    return polynomial


# ============================================================================
# HP² И ДЕФОРМАЦИИ
# ============================================================================
def germ_class_of(log_class: LogClass) -> GermClass:
    """Росток минимальной размерности для класса на аффинном ростке"""
    if log_class.complex.kind is not ComplexKind.AFFINE_GERM:
        raise UnsupportedComplex("росток строится только для класса на аффинном ростке")
    return GermClass(log_class.complex.num_vertices, minimal_germ_matrix(log_class.matrix))


def germ_to_log_class(g: GermClass) -> LogClass:
    return LogClass(affine_germ_complex(g.n_divisor), g.divisor_block())


def hp2_dimension(class_or_germ: Union[LogClass, GermClass]) -> int:
    """dim HP² = b₂(X°) + число сглаживаемых ребер"""
    if isinstance(class_or_germ, GermClass):
        if class_or_germ.n_divisor == 0:
            return 0
        log_class = germ_to_log_class(class_or_germ)
    else:
        log_class = class_or_germ
    return comb(free_rank(log_class.complex), 2) + len(smoothing_diagram_of(log_class).edges)


def deformation_summary(log_class: LogClass) -> Dict:
    """
    Сводка локальной картины деформаций

    k сглаживаемых ребер дают 2^k поддиаграмм сглаживания. Слабая
    нерезонансность гарантирована для P^{2n} и аффинных ростков, для
    остальных комплексов вердикт не выносится (None).
    """
    k = len(smoothing_diagram_of(log_class).edges)
    kind = log_class.complex.kind
    weakly_nonresonant: Optional[bool] = True if kind in (ComplexKind.PROJECTIVE_SPACE, ComplexKind.AFFINE_GERM) else None
    return {
        "smoothable_edges": k,
        "hp2": comb(free_rank(log_class.complex), 2) + k,
        "local_components": 2 ** k,
        "weakly_nonresonant": weakly_nonresonant,
    }


# ============================================================================
# JSON
# ============================================================================
def germ_to_json(g: GermClass) -> Dict:
    return {"n_divisor": g.n_divisor, "matrix": matrix_to_json(g.full_matrix)}


def germ_from_json(payload: Dict) -> GermClass:
    """
    {"n_divisor": n, "matrix": [[...]]} или класс на аффинном ростке
    ({"complex": {"kind": "germ", ...}, "matrix": ...}), который
    дополняется до ростка минимальной размерности
    """
    if not isinstance(payload, dict):
        raise ParseError("росток должен быть JSON-объектом")
    if "complex" in payload:
        return germ_class_of(class_from_json(payload))
    n_divisor = payload.get("n_divisor")
    if not isinstance(n_divisor, int) or isinstance(n_divisor, bool) or n_divisor < 0:
        raise ParseError(f"поле 'n_divisor' должно быть целым >= 0, получено {n_divisor!r}")
    if "matrix" not in payload:
        raise ParseError("росток должен содержать 'matrix'")
    matrix = matrix_from_json(payload["matrix"])
    if not matrix.is_square:
        raise ParseError("matrix: матрица ростка должна быть квадратной")
    return GermClass(n_divisor, matrix)


def cohomology_report(g: GermClass) -> Dict:
    polynomial = poisson_poincare(g)
    return {
        "poincare": list(polynomial.coefficients),
        "contributing_simplices": [data.to_json() for data in contributing_simplices(g)],
        "hp2": hp2_dimension(g),
    }
