"""
Иерархия исключений logsymp

Каждый класс несет код выхода для CLI:
0 - успех, 2 - ошибка разбора, 3 - неподдерживаемый комплекс,
4 - ограничение размера, 5 - нарушено предусловие, 6 - расхождение с эталоном
"""

from typing import List, Sequence, Tuple


class LogSympError(Exception):
    """Базовое исключение logsymp"""
    exit_code = 1


# ============================================================================
# ВХОДНЫЕ ДАННЫЕ
# ============================================================================
class ParseError(LogSympError):
    """Некорректный JSON или нарушение схемы"""
    exit_code = 2


class UnsupportedFormat(ParseError):
    """Формат вывода не подходит для команды"""


class UnsupportedComplex(LogSympError):
    """Комплекс без поддерживаемого режима Черна или с неодносвязными стратами"""
    exit_code = 3


class SizeGuard(LogSympError):
    """Превышено ограничение размера"""
    exit_code = 4


# ============================================================================
# ПРЕДУСЛОВИЯ
# ============================================================================
class PreconditionError(LogSympError):
    exit_code = 5


class NotHolonomic(PreconditionError):
    """Класс не голономен; хранит нарушающие подмножества"""

    def __init__(self, violators: Sequence[Tuple[int, ...]]):
        self.violators: List[Tuple[int, ...]] = [tuple(v) for v in violators]
        listed = ", ".join("{" + ",".join(map(str, v)) + "}" for v in self.violators)
        super().__init__(f"класс не голономен, нарушители: {listed}")


class Degenerate(PreconditionError):
    """Вырожденная форма (пфаффиан равен нулю)"""


class DegenerateSimplex(PreconditionError):
    """Бивычет симплекса необратим"""


class OddDimension(PreconditionError):
    """Полная матрица ростка нечетного размера"""


# ============================================================================
# ЛИНЕЙНАЯ АЛГЕБРА
# ============================================================================
class SingularMatrix(PreconditionError):
    pass


class NotSkew(PreconditionError):
    pass


class OddSize(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


# ============================================================================
# МОДЕЛЬ
# ============================================================================
class NotAFace(PreconditionError):
    pass


class BadVertex(PreconditionError):
    pass


class ZeroBiresidue(PreconditionError):
    pass


class DegenerateStratum(PreconditionError):
    pass


class ValencyTooHigh(PreconditionError):
    pass


class SizeMismatch(PreconditionError):
    pass


class InconsistentInput(PreconditionError):
    pass


class GoldenMismatch(LogSympError):
    """Классификация не совпала с эталонной таблицей P^4"""
    exit_code = 6


class InvariantViolation(LogSympError):
    """Нарушен внутренний инвариант (сохранение орбит, повторная проверка классов)"""
