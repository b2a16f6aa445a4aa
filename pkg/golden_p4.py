"""
Эталонная классификация для P^4: 40 диаграмм и размерности их стратов

Используется только флагом --verify-golden и тестами; перечислитель
эту таблицу не читает.
"""

from collections import Counter
from typing import Dict, List, Sequence, Tuple

from diagrams import SmoothingDiagram, canonical_form
from errors import GoldenMismatch

# Запись ребра: "ij": {k: 2} - порядок 2 в вершине k, или "ij": (a, b) - порядки 1 в a и b
_TABLE: List[Tuple[int, Dict]] = [
    # Размерность 1
    (1, {"34": {1: 2}, "23": {0: 2}, "12": {4: 2}, "01": {3: 2}, "04": {2: 2}}),
    (1, {"34": (0, 2), "23": (1, 4), "12": (3, 0), "01": (2, 4), "04": (1, 3)}),
    (1, {"01": (2, 3), "04": {3: 2}, "12": (0, 4), "23": {4: 2}}),
    (1, {"04": {3: 2}, "01": {4: 2}, "12": {3: 2}, "23": {4: 2}}),
    (1, {"04": (1, 2), "01": {4: 2}, "12": {3: 2}, "23": (1, 0)}),
    (1, {"23": {1: 2}, "34": {1: 2}, "04": {1: 2}}),
    (1, {"23": {1: 2}, "34": (2, 0), "04": {1: 2}}),
    (1, {"23": (1, 4), "34": {1: 2}, "04": (3, 1)}),
    (1, {"23": {4: 2}, "34": {1: 2}, "04": {3: 2}}),
    (1, {"23": (1, 0), "34": (2, 0), "04": (2, 1)}),
    (1, {"23": (4, 0), "34": {1: 2}, "04": {1: 2}}),
    (1, {"23": {1: 2}, "34": (1, 0), "04": {1: 2}}),
    (1, {"23": (4, 0), "34": (1, 0), "04": {1: 2}}),
    (1, {"23": (4, 0), "34": {0: 2}, "04": {1: 2}}),
    (1, {"23": (0, 4), "34": (2, 0), "04": {1: 2}}),
    (1, {"12": {3: 2}, "01": {4: 2}, "34": (2, 0)}),
    (1, {"12": {0: 2}, "01": {4: 2}, "34": (1, 2)}),
    (1, {"12": (4, 3), "01": (4, 2), "34": {0: 2}}),
    (1, {"12": {0: 2}, "01": (4, 2), "34": {0: 2}}),
    # Размерность 2
    (2, {"01": {2: 2}, "02": {1: 2}, "12": {0: 2}}),
    (2, {"01": (3, 4), "12": (3, 4)}),
    (2, {"01": (3, 4), "12": {0: 2}}),
    (2, {"01": {4: 2}, "12": {3: 2}}),
    (2, {"01": (3, 4), "12": {3: 2}}),
    (2, {"01": {3: 2}, "12": {3: 2}}),
    (2, {"12": (0, 3), "01": {3: 2}}),
    (2, {"01": (2, 4), "12": {3: 2}}),
    (2, {"12": (0, 3), "01": (3, 4)}),
    (2, {"01": (2, 3), "12": (0, 3)}),
    (2, {"01": (2, 3), "12": (0, 4)}),
    (2, {"01": {2: 2}, "12": (0, 4)}),
    (2, {"01": {2: 2}, "12": {3: 2}}),
    # Размерность 3
    (3, {"04": {1: 2}, "23": {1: 2}}),
    (3, {"04": (2, 3), "23": {1: 2}}),
    # Размерность 2: две непересекающиеся пары
    (2, {"04": (2, 1), "23": (1, 0)}),
    (2, {"04": {2: 2}, "23": (1, 0)}),
    (2, {"04": {2: 2}, "23": {0: 2}}),
    # Размерность 4: одно ребро
    (4, {"34": {1: 2}}),
    (4, {"34": (0, 2)}),
    # Размерность 6: пустая диаграмма
    (6, {}),
]

GOLDEN_DIMENSIONS = {1: 19, 2: 16, 3: 2, 4: 2, 6: 1}


def _decoration(value) -> Dict[int, int]:
    if isinstance(value, dict):
        return dict(value)
    a, b = value
    return {a: 1, b: 1}


def golden_diagrams() -> List[Tuple[SmoothingDiagram, int]]:
    """(диаграмма, размерность страта) для всех 40 классов"""
    result = []
    for dimension, edges in _TABLE:
        decorations = {(int(key[0]), int(key[1])): _decoration(value) for key, value in edges.items()}
        result.append((SmoothingDiagram.build(5, decorations), dimension))
    return result


def golden_encodings() -> Dict[bytes, int]:
    return {canonical_form(d).encoding: dimension for d, dimension in golden_diagrams()}


def verify_classification(entries: Sequence) -> None:
    """
    Сверяет классификацию P^4 с эталоном

    Args:
        entries: Список ClassEntry

    Raises:
        GoldenMismatch: с перечнем расхождений
    """
    expected = golden_encodings()
    found = {e.canonical.encoding: e.dimension for e in entries}
    problems = []
    if len(entries) != len(_TABLE):
        problems.append(f"классов {len(entries)}, ожидалось {len(_TABLE)}")
    missing = [enc for enc in expected if enc not in found]
    extra = [enc for enc in found if enc not in expected]
    if missing:
        problems.append(f"нет {len(missing)} эталонных классов: {', '.join(e.hex() for e in missing)}")
    if extra:
        problems.append(f"лишние классы: {', '.join(e.hex() for e in extra)}")
    for encoding, dimension in expected.items():
        if encoding in found and found[encoding] != dimension:
            problems.append(f"класс {encoding.hex()}: размерность {found[encoding]}, ожидалась {dimension}")
    histogram = dict(Counter(found.values()))
    if not problems and histogram != GOLDEN_DIMENSIONS:
        problems.append(f"гистограмма размерностей {histogram} != {GOLDEN_DIMENSIONS}")
    if problems:
        raise GoldenMismatch("классификация P^4 не совпала с эталоном: " + "; ".join(problems))
