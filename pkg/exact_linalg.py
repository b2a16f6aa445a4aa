"""
Точная линейная алгебра над рациональными числами

QMatrix - плотная матрица из Fraction, QPoly - разреженный многочлен от
нескольких переменных с рациональными коэффициентами. Исключение Гаусса
выполняется без дробей (схема Барейса) по строкам, приведенным к целым.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from configs import MAX_MATRIX_SIZE, PFAFFIAN_EXPANSION_MAX
from errors import DimensionMismatch, NotSkew, OddSize, SingularMatrix, SizeGuard

Rational = Fraction
Vector = Tuple[Fraction, ...]


def to_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class QMatrix:
    """Плотная матрица над Q, элементы хранятся построчно"""
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("размеры матрицы должны быть неотрицательны")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"ожидалось {self.rows * self.cols} элементов, получено {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))

    # ------------------------------------------------------------------
    # Конструкторы
    # ------------------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        """
        Строит матрицу из списка строк

        Args:
            rows: Строки матрицы (числа, Fraction или строки "p/q")
            cols: Число столбцов, обязательно для матрицы без строк

        Returns:
            QMatrix
        """
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        for r in rows:
            if len(r) != width:
                raise DimensionMismatch("строки матрицы разной длины")
        return cls(len(rows), width, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "QMatrix":
        return cls(size, size, tuple(Fraction(int(i == j)) for i in range(size) for j in range(size)))

    @classmethod
    def skew_from_upper(cls, size: int, upper: Sequence) -> "QMatrix":
        """Кососимметричная матрица по верхним элементам, перечисленным построчно"""
        expected = size * (size - 1) // 2
        if len(upper) != expected:
            raise DimensionMismatch(f"для размера {size} нужно {expected} верхних элементов")
        data = [[Fraction(0)] * size for _ in range(size)]
        it = iter(upper)
        for i in range(size):
            for j in range(i + 1, size):
                value = Fraction(next(it))
                data[i][j] = value
                data[j][i] = -value
        return cls.from_rows(data, size)

    # ------------------------------------------------------------------
    # Доступ
    # ------------------------------------------------------------------
    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_skew(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self[i, j] == -self[j, i]
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    # ------------------------------------------------------------------
    # Операции
    # ------------------------------------------------------------------
    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def scale(self, factor) -> "QMatrix":
        factor = Fraction(factor)
        return QMatrix(self.rows, self.cols, tuple(factor * x for x in self.entries))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("сложение матриц разного размера")
        return QMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QMatrix":
        return self.scale(-1)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"умножение {self.rows}x{self.cols} на {other.rows}x{other.cols}")
        data = []
        for i in range(self.rows):
            row = self.row(i)
            for j in range(other.cols):
                data.append(sum((row[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return QMatrix(self.rows, other.cols, tuple(data))

    def apply(self, vector: Sequence) -> Vector:
        """Произведение матрицы на вектор-столбец"""
        vector = to_vector(vector)
        if len(vector) != self.cols:
            raise DimensionMismatch(f"вектор длины {len(vector)} для матрицы с {self.cols} столбцами")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vector)), Fraction(0))
            for i in range(self.rows)
        )

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "QMatrix":
        return QMatrix(
            len(row_indices), len(col_indices),
            tuple(self[i, j] for i in row_indices for j in col_indices),
        )

    def principal(self, indices: Sequence[int]) -> "QMatrix":
        return self.submatrix(indices, indices)

    def with_column(self, vector: Sequence) -> "QMatrix":
        """Матрица [m | v]"""
        vector = to_vector(vector)
        if len(vector) != self.rows:
            raise DimensionMismatch(f"вектор длины {len(vector)} для матрицы с {self.rows} строками")
        data = []
        for i in range(self.rows):
            data.extend(self.row(i))
            data.append(vector[i])
        return QMatrix(self.rows, self.cols + 1, tuple(data))

    def permuted(self, perm: Sequence[int]) -> "QMatrix":
        """
        Одновременная перестановка строк и столбцов: P·m·Pᵀ

        Элемент (i, j) переходит в позицию (perm[i], perm[j]).
        """
        size = self.rows
        data = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(size):
                data[perm[i]][perm[j]] = self[i, j]
        return QMatrix.from_rows(data, size)


# ============================================================================
# ИСКЛЮЧЕНИЕ ГАУССА
# ============================================================================
def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_rows(m: QMatrix) -> List[List[int]]:
    """Каждая строка умножается на НОК знаменателей: пространство строк не меняется"""
    result = []
    for i in range(m.rows):
        row = m.row(i)
        scale = reduce(_lcm, (x.denominator for x in row), 1)
        result.append([int(x * scale) for x in row])
    return result


def _bareiss_echelon(rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """
    Ступенчатый вид без дробей (Барейс)

    Опорный элемент - первый ненулевой в столбце, столбцы слева направо.
    Деление на предыдущий опорный элемент точное (тождество Сильвестра).

    Returns:
        (ненулевые строки ступенчатого вида, номера опорных столбцов)
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    previous = 1
    r = 0
    pivots: List[int] = []
    for c in range(ncols):
        if r >= nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, nrows):
            lead = rows[i][c]
            for j in range(c + 1, ncols):
                rows[i][j] = (pivot * rows[i][j] - lead * rows[r][j]) // previous
            rows[i][c] = 0
        previous = pivot
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _rref(m: QMatrix) -> Tuple[List[List[Fraction]], List[int]]:
    """Приведенный ступенчатый вид: Барейс, затем обратный ход в Fraction"""
    echelon, pivots = _bareiss_echelon(_integer_rows(m), m.cols)
    reduced = [[Fraction(x) for x in row] for row in echelon]
    for idx in reversed(range(len(reduced))):
        c = pivots[idx]
        lead = reduced[idx][c]
        reduced[idx] = [x / lead for x in reduced[idx]]
        for above in range(idx):
            factor = reduced[above][c]
            if factor:
                reduced[above] = [a - factor * b for a, b in zip(reduced[above], reduced[idx])]
    return reduced, pivots


def rank(m: QMatrix) -> int:
    """Ранг над Q точным исключением"""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_bareiss_echelon(_integer_rows(m), m.cols)[1])


def in_column_space(m: QMatrix, v: Sequence) -> bool:
    """
    Лежит ли вектор в образе матрицы

    Args:
        m: Матрица
        v: Вектор длины rows(m)

    Returns:
        True iff rank([m | v]) = rank(m)
    """
    v = to_vector(v)
    if len(v) != m.rows:
        raise DimensionMismatch(f"вектор длины {len(v)} для матрицы с {m.rows} строками")
    if m.rows == 0:
        return True
    return rank(m.with_column(v)) == rank(m)


def kernel_basis(m: QMatrix) -> List[Vector]:
    """
    Базис правого ядра

    Каждому свободному столбцу f соответствует вектор с единицей в позиции f,
    нулями в остальных свободных позициях и значениями опорных переменных
    из приведенного ступенчатого вида.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(m.cols)) for j in range(m.cols)]
    reduced, pivots = _rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * m.cols
        vector[free] = Fraction(1)
        for idx, c in enumerate(pivots):
            vector[c] = -reduced[idx][free]
        basis.append(tuple(vector))
    return basis


def _check_size(m: QMatrix, operation: str) -> None:
    if max(m.rows, m.cols) > MAX_MATRIX_SIZE:
        raise SizeGuard(f"{operation}: размер {m.rows}x{m.cols} больше {MAX_MATRIX_SIZE}")


def inverse(m: QMatrix) -> QMatrix:
    """
    Точная обратная матрица

    Raises:
        SingularMatrix: если ранг меньше размера
    """
    if not m.is_square:
        raise DimensionMismatch("обратная матрица определена только для квадратной")
    _check_size(m, "inverse")
    size = m.rows
    if size == 0:
        return m
    augmented = QMatrix.from_rows(
        [list(m.row(i)) + [Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    )
    reduced, pivots = _rref(augmented)
    if pivots[:size] != list(range(size)) or len(pivots) < size:
        raise SingularMatrix(f"матрица {size}x{size} вырождена (ранг {rank(m)})")
    return QMatrix.from_rows([row[size:] for row in reduced[:size]])


def determinant(m: QMatrix) -> Fraction:
    """Определитель схемой Барейса на целочисленных строках"""
    if not m.is_square:
        raise DimensionMismatch("определитель определен только для квадратной матрицы")
    _check_size(m, "determinant")
    size = m.rows
    if size == 0:
        return Fraction(1)
    rows = _integer_rows(m)
    scale = 1
    for i in range(size):
        row_scale = reduce(_lcm, (x.denominator for x in m.row(i)), 1)
        scale *= row_scale
    sign = 1
    previous = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if rows[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]) // previous
            rows[i][k] = 0
        previous = rows[k][k]
    return Fraction(sign * rows[size - 1][size - 1], scale)


# ============================================================================
# ПФАФФИАНЫ
# ============================================================================
def _check_pfaffian_input(m: QMatrix) -> None:
    if not m.is_square:
        raise NotSkew("пфаффиан определен только для квадратной матрицы")
    if not m.is_skew():
        raise NotSkew("матрица не кососимметрична")
    if m.rows % 2:
        raise OddSize(f"пфаффиан матрицы нечетного размера {m.rows}")
    _check_size(m, "pfaffian")


def _pfaffian_expansion(entry, indices: Tuple[int, ...], memo: Dict, zero, one):
    """Разложение по первой строке с мемоизацией по набору индексов"""
    if not indices:
        return one
    if indices in memo:
        return memo[indices]
    first = indices[0]
    total = zero
    for pos in range(1, len(indices)):
        a = entry(first, indices[pos])
        if a == zero:
            continue
        rest = indices[1:pos] + indices[pos + 1:]
        term = a * _pfaffian_expansion(entry, rest, memo, zero, one)
        total = total + term if pos % 2 == 1 else total - term
    memo[indices] = total
    return total


def _pfaffian_elimination(m: QMatrix) -> Fraction:
    """Кососимметричное исключение: конгруэнции с определителем 1 сохраняют пфаффиан"""
    size = m.rows
    a = m.to_rows()
    result = Fraction(1)
    for k in range(0, size, 2):
        u, w = k, k + 1
        pivot_col = next((j for j in range(w, size) if a[u][j] != 0), None)
        if pivot_col is None:
            return Fraction(0)
        if pivot_col != w:
            a[w], a[pivot_col] = a[pivot_col], a[w]
            for row in a:
                row[w], row[pivot_col] = row[pivot_col], row[w]
            result = -result
        pivot = a[u][w]
        result *= pivot
        for i in range(w + 1, size):
            alpha = a[u][i] / pivot
            if alpha:
                for j in range(size):
                    a[i][j] -= alpha * a[w][j]
                for j in range(size):
                    a[j][i] -= alpha * a[j][w]
            beta = a[w][i] / a[w][u]
            if beta:
                for j in range(size):
                    a[i][j] -= beta * a[u][j]
                for j in range(size):
                    a[j][i] -= beta * a[j][u]
    return result


def pfaffian(m: QMatrix) -> Fraction:
    """
    Пфаффиан четной кососимметричной матрицы, Pf(m)² = det(m)

    Args:
        m: Кососимметричная матрица четного размера

    Returns:
        Pf(m)

    Raises:
        NotSkew, OddSize
    """
    _check_pfaffian_input(m)
    if m.rows <= PFAFFIAN_EXPANSION_MAX:
        return _pfaffian_expansion(
            lambda i, j: m[i, j], tuple(range(m.rows)), {}, Fraction(0), Fraction(1)
        )
    return _pfaffian_elimination(m)


# ============================================================================
# МНОГОЧЛЕНЫ
# ============================================================================
Exponent = Tuple[int, ...]


class QPoly:
    """
    Разреженный многочлен над Q от фиксированного числа переменных

    Нулевые коэффициенты не хранятся. Порядок термов при печати -
    градуированный лексикографический (старшие степени первыми).
    """

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: int, terms: Optional[Mapping[Exponent, object]] = None):
        self.variables = variables
        self._terms: Dict[Exponent, Fraction] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != variables:
                raise DimensionMismatch(
                    f"показатель {exponent} не подходит для {variables} переменных"
                )
            coefficient = Fraction(coefficient)
            if coefficient:
                self._terms[exponent] = self._terms.get(exponent, Fraction(0)) + coefficient
                if not self._terms[exponent]:
                    del self._terms[exponent]

    # ------------------------------------------------------------------
    @classmethod
    def constant(cls, value, variables: int) -> "QPoly":
        return cls(variables, {(0,) * variables: value})

    @classmethod
    def variable(cls, index: int, variables: int) -> "QPoly":
        exponent = tuple(int(i == index) for i in range(variables))
        return cls(variables, {exponent: 1})

    @classmethod
    def linear(cls, coefficients: Sequence, constant=0) -> "QPoly":
        """Линейная форма Σ cᵢ·xᵢ + constant"""
        variables = len(coefficients)
        terms = {(0,) * variables: constant}
        for i, c in enumerate(coefficients):
            terms[tuple(int(k == i) for k in range(variables))] = c
        return cls(variables, terms)

    # ------------------------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def evaluate(self, point: Sequence) -> Fraction:
        point = to_vector(point)
        if len(point) != self.variables:
            raise DimensionMismatch(f"точка размерности {len(point)} для {self.variables} переменных")
        total = Fraction(0)
        for exponent, coefficient in self._terms.items():
            value = coefficient
            for x, e in zip(point, exponent):
                if e:
                    value *= x ** e
            total += value
        return total

    # ------------------------------------------------------------------
    def _coerce(self, other) -> "QPoly":
        if isinstance(other, QPoly):
            if other.variables != self.variables:
                raise DimensionMismatch("многочлены от разного числа переменных")
            return other
        return QPoly.constant(other, self.variables)

    def __add__(self, other) -> "QPoly":
        other = self._coerce(other)
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, Fraction(0)) + coefficient
        return QPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._coerce(other)
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                terms[exponent] = terms.get(exponent, Fraction(0)) + c1 * c2
        return QPoly(self.variables, terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == QPoly.constant(other, self.variables)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exponent, coefficient in self.sorted_terms():
            monomial = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exponent) if e
            )
            if not monomial:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append(monomial)
            elif coefficient == -1:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{coefficient}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")


PolyMatrix = Sequence[Sequence[QPoly]]


def evaluate_matrix(m: PolyMatrix, point: Sequence) -> QMatrix:
    """Подставляет рациональную точку в матрицу многочленов"""
    return QMatrix.from_rows([[p.evaluate(point) for p in row] for row in m], len(m))


def pfaffian_symbolic(m: PolyMatrix) -> QPoly:
    """
    Пфаффиан матрицы многочленов разложением по первой строке

    Args:
        m: Квадратная кососимметричная матрица из QPoly четного размера

    Returns:
        QPoly (детерминированное разложение)
    """
    size = len(m)
    if any(len(row) != size for row in m):
        raise NotSkew("пфаффиан определен только для квадратной матрицы")
    if size > MAX_MATRIX_SIZE:
        raise SizeGuard(f"pfaffian_symbolic: размер {size} больше {MAX_MATRIX_SIZE}")
    if size % 2:
        raise OddSize(f"пфаффиан матрицы нечетного размера {size}")
    if size == 0:
        return QPoly.constant(1, 0)
    variables = m[0][0].variables
    for i in range(size):
        if not m[i][i].is_zero():
            raise NotSkew("на диагонали кососимметричной матрицы не нуль")
        for j in range(i + 1, size):
            if not (m[i][j] + m[j][i]).is_zero():
                raise NotSkew("матрица многочленов не кососимметрична")
    zero = QPoly(variables)
    one = QPoly.constant(1, variables)
    return _pfaffian_expansion(lambda i, j: m[i][j], tuple(range(size)), {}, zero, one)
