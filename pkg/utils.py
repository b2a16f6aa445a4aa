"""
Утилиты: разбор и печать рациональных чисел, валидация, кэширование, диагностика
"""
import sys
from collections import OrderedDict
from fractions import Fraction
from typing import Any, Hashable, Optional

from configs import LOG_LEVEL
from errors import ParseError


def log(tag: str, message: str, level: int = 1) -> None:
    """
    Печатает диагностическое сообщение в stderr с тегом модуля

    Args:
        tag: Тег источника, например "Classifier"
        message: Текст сообщения
        level: Минимальный LOG_LEVEL, при котором сообщение выводится
    """
    if LOG_LEVEL >= level:
        print(f"[{tag}] {message}", file=sys.stderr)


def is_valid_rational(value: Any) -> bool:
    """
    Проверяет, можно ли точно прочитать значение как рациональное число

    Принимаются целые числа и строки вида "p/q" или "p".
    Числа с плавающей точкой не принимаются: вся арифметика точная.

    Args:
        value: Значение для проверки

    Returns:
        True если значение валидно
    """
    if value is None or isinstance(value, (bool, float)):
        return False
    if isinstance(value, (int, Fraction)):
        return True
    if not isinstance(value, str):
        return False
    text = value.strip()
    if not text or "." in text or "e" in text.lower():
        return False
    try:
        Fraction(text)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def parse_rational(value: Any, name: str = "значение") -> Fraction:
    """
    Читает рациональное число из JSON-значения

    Args:
        value: Целое число или строка "p/q"
        name: Название поля для сообщения об ошибке

    Returns:
        Fraction в несократимом виде
    """
    if not is_valid_rational(value):
        raise ParseError(f"{name}: ожидалось рациональное число 'p/q', получено {value!r}")
    return Fraction(value.strip()) if isinstance(value, str) else Fraction(value)


def format_rational(value: Fraction) -> str:
    """Печатает рациональное число как "p/q" (или "p" при q = 1)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_valid_order(value: Any) -> bool:
    """Порядок ребра диаграммы - целое неотрицательное число"""
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def parse_vertex(value: Any, num_vertices: int, name: str = "вершина") -> int:
    """Читает номер вершины (число или строка-ключ JSON) и проверяет диапазон"""
    if isinstance(value, int) and not isinstance(value, bool):
        vertex = value
    elif isinstance(value, str) and value.strip().isdigit():
        vertex = int(value)
    else:
        raise ParseError(f"{name}: ожидался номер вершины, получено {value!r}")
    if not 0 <= vertex < num_vertices:
        raise ParseError(f"{name}: вершина {vertex} вне диапазона 0..{num_vertices - 1}")
    return vertex


class LRUCache:
    """
    Кэш канонических форм фиксированного размера

    При переполнении вытесняется запись, к которой дольше всего не обращались.
    Ключи - неизменяемые диаграммы, поэтому записи не устаревают.
    """

    def __init__(self, max_size: int = 100):
        self.max_size = max(1, max_size)
        self._entries: OrderedDict = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """Значение по ключу или None; попадание делает запись самой свежей"""
        try:
            value = self._entries[key]
        except KeyError:
            self.misses += 1
            return None
        self._entries.move_to_end(key)
        self.hits += 1
        return value

    def put(self, key: Hashable, value: Any) -> None:
        self._entries[key] = value
        self._entries.move_to_end(key)
        while len(self._entries) > self.max_size:
            self._entries.popitem(last=False)

    def clear(self) -> None:
        self._entries.clear()
        self.hits = self.misses = 0

    def size(self) -> int:
        return len(self._entries)

    def hit_rate(self) -> float:
        """Доля попаданий (для диагностики уровня 2)"""
        total = self.hits + self.misses
        return self.hits / total if total else 0.0
