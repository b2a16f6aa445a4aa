"""
Перебор и классификация диаграмм сглаживания

P^{2n}: графы валентности <= 2 с точностью до изоморфизма, декорации ребер,
отсечение по линейной алгебре, канонизация и проверка реализуемости.
Росток на треугольнике: тройные точки и семейства цепочек.
"""

import asyncio
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from arrangement import (
    ambient_basis, edge_rows, edge_vanishes, is_realizable, pfaffian_vanishes,
    solve_stratum, subspace_of,
)
from complex_model import (
    ChernMode, DualComplex, LogClass, affine_germ_complex, matrix_to_json, projective_space_complex,
)
from configs import BATCH_SIZE, MAX_SPACE_N, PROGRESS_EVERY, RANDOM_SEED, THREADS
from diagrams import (
    CanonicalForm, SmoothingDiagram, canonical_cache_info, canonical_labeling, decompose,
    to_json as diagram_to_json, validate_combinatorial,
)
from errors import InconsistentInput, InvariantViolation, SizeGuard
from leaf_analysis import is_edge_smoothable
from utils import format_rational, log

Edge = Tuple[int, int]

# Пары (m, n), для которых третье ребро двойной цепочки сглаживаемо
SMOOTHABLE_THIRD_EDGE = frozenset({(1, 2), (1, 3), (1, 5), (2, 2), (2, 5), (3, 3)})


# ============================================================================
# ТИПЫ
# ============================================================================
@dataclass(frozen=True)
class Realization:
    diagram: SmoothingDiagram
    dimension: int
    witness: LogClass


@dataclass(frozen=True)
class ClassEntry:
    canonical: CanonicalForm
    representative: SmoothingDiagram
    dimension: int
    witness: LogClass
    orbit_size: int

    @property
    def edge_count(self) -> int:
        return len(self.representative.edges)

    def sort_key(self) -> Tuple:
        return self.edge_count, self.dimension, self.canonical.encoding

    def to_json(self) -> Dict:
        return {
            "encoding": self.canonical.hex(),
            "edges": self.edge_count,
            "dimension": self.dimension,
            "orbit_size": self.orbit_size,
            "diagram": diagram_to_json(self.representative),
            "witness": matrix_to_json(self.witness.matrix),
        }


class TripleLabel(Enum):
    E6 = "E6tilde"
    E7 = "E7tilde"
    E8 = "E8tilde"


_TRIPLE_LABELS = {
    (2, 2, 2): (TripleLabel.E6, "T_{3,3,3}"),
    (1, 3, 3): (TripleLabel.E7, "T_{2,4,4}"),
    (1, 2, 5): (TripleLabel.E8, "T_{2,3,6}"),
}


@dataclass(frozen=True)
class TriplePoint:
    """Точка (b₁:b₂:b₃), где все три ребра треугольника сглаживаемы"""
    biresidues: Tuple[Fraction, Fraction, Fraction]
    orders: Tuple[int, int, int]
    label: TripleLabel
    orbit_size: int

    @property
    def singularity(self) -> str:
        return _TRIPLE_LABELS[tuple(sorted(self.orders))][1]

    def to_json(self) -> Dict:
        return {
            "biresidues": [format_rational(b) for b in self.biresidues],
            "orders": list(self.orders),
            "label": self.label.value,
            "singularity": self.singularity,
            "orbit_size": self.orbit_size,
        }


@dataclass(frozen=True)
class ChainRecord:
    """Прямая или точка на плоскости бивычетов ростка-треугольника"""
    kind: str
    orders: Tuple[int, ...]
    label: str
    biresidues: Optional[Tuple[int, int, int]] = None
    line: Optional[str] = None
    third_edge_smoothable: Optional[bool] = None

    def to_json(self) -> Dict:
        payload = {"kind": self.kind, "orders": list(self.orders), "label": self.label}
        if self.biresidues is not None:
            payload["biresidues"] = list(self.biresidues)
        if self.line is not None:
            payload["line"] = self.line
        if self.third_edge_smoothable is not None:
            payload["third_edge_smoothable"] = self.third_edge_smoothable
        return payload


@dataclass(frozen=True)
class CandidateGraph:
    """Представитель орбиты графов валентности <= 2 на помеченных вершинах"""
    num_vertices: int
    edges: Tuple[Edge, ...]
    orbit_size: int
    description: str
    has_even_cycle: bool = False


# ============================================================================
# ГРАФЫ ВАЛЕНТНОСТИ <= 2
# ============================================================================
def _component_types(num_vertices: int) -> List[Tuple[str, int]]:
    cycles = [("C", k) for k in range(num_vertices, 2, -1)]
    paths = [("P", k) for k in range(num_vertices, 1, -1)]
    return cycles + paths + [("K", 1)]


def _component_multisets(remaining: int, types: List[Tuple[str, int]], start: int = 0):
    if remaining == 0:
        yield []
        return
    for index in range(start, len(types)):
        kind, size = types[index]
        if size <= remaining:
            for rest in _component_multisets(remaining - size, types, index):
                yield [(kind, size)] + rest


def _component_automorphisms(kind: str, size: int) -> int:
    if kind == "C":
        return 2 * size
    if kind == "P":
        return 2
    return 1


def candidate_graphs(num_vertices: int) -> List[CandidateGraph]:
    """
    Графы валентности <= 2 с точностью до изоморфизма

    Граф - мультимножество компонент (циклы длины >= 3, пути, изолированные
    вершины), размещенных на последовательных вершинах: сначала циклы,
    затем пути. Размер орбиты N!/|Aut|.
    """
    graphs = []
    for components in _component_multisets(num_vertices, _component_types(num_vertices)):
        edges: List[Edge] = []
        vertex = 0
        automorphisms = 1
        for (kind, size), count in Counter(components).items():
            automorphisms *= factorial(count) * _component_automorphisms(kind, size) ** count
        for kind, size in components:
            block = list(range(vertex, vertex + size))
            edges.extend(zip(block, block[1:]))
            if kind == "C":
                edges.append((block[0], block[-1]))
            vertex += size
        counts = Counter(components)
        description = "+".join(
            f"{count}{kind}{size}" if count > 1 else f"{kind}{size}"
            for (kind, size), count in counts.items()
        )
        graphs.append(CandidateGraph(
            num_vertices=num_vertices,
            edges=tuple(sorted(edges)),
            orbit_size=factorial(num_vertices) // automorphisms,
            description=description,
            has_even_cycle=any(kind == "C" and size % 2 == 0 for kind, size in components),
        ))
    return graphs


def labeled_graph_count(num_vertices: int) -> int:
    """
    Число помеченных графов валентности <= 2 (независимый подсчет)

    a(N) = Σ_k C(N−1, k−1)·c(k)·a(N−k), где c(k) - число связных таких
    графов на k помеченных вершинах: 1, 1 и k!/2 + (k−1)!/2 при k >= 3.
    """
    def connected(k: int) -> int:
        if k <= 2:
            return 1
        return factorial(k) // 2 + factorial(k - 1) // 2

    counts = [1]
    for total in range(1, num_vertices + 1):
        counts.append(sum(
            comb(total - 1, k - 1) * connected(k) * counts[total - k] for k in range(1, total + 1)
        ))
    return counts[num_vertices]


# ============================================================================
# ДЕКОРАЦИИ И ПЕРЕБОР (воркер)
# ============================================================================
def edge_decorations(complex_: DualComplex, edge: Edge, max_order: Optional[int] = None) -> List[Dict[int, int]]:
    """
    Допустимые порядки ребра

    SumEqualsTwo: (2 в одной вершине) или (1, 1 в двух), всего
    (2n−1) + C(2n−1, 2) вариантов. Иначе - все порядки 0..max_order.
    """
    opposite = complex_.opposite_vertices(edge)
    if complex_.chern_mode is ChernMode.SUM_EQUALS_TWO:
        return [{k: 2} for k in opposite] + [{a: 1, b: 1} for a, b in combinations(opposite, 2)]
    if max_order is None:
        raise InconsistentInput("для ростка нужен предел порядков max_order")
    return [
        {k: m for k, m in zip(opposite, orders) if m}
        for orders in product(range(max_order + 1), repeat=len(opposite))
    ]


def classify_graph(
        complex_: DualComplex,
        edges: Sequence[Edge],
        use_combinatorial_pruning: bool = True,
        max_order: Optional[int] = None
) -> Dict:
    """
    Все реализуемые декорации одного графа

    Обход в глубину по ребрам; частичная декорация отбрасывается, если
    ее страт нулевой, бивычет ребра Γ на нем тождественно нулевой или
    пфаффиан тождественно нулевой (все три свойства наследуются
    при добавлении ребер).

    Returns:
        {"realizations": [Realization], "leaves": int, "pruned": int}
    """
    edges = [tuple(e) for e in edges]
    size = complex_.num_vertices
    ambient = ambient_basis(complex_)
    rng = random.Random(RANDOM_SEED)
    cycle_vertices: Dict[Edge, frozenset] = {}
    if use_combinatorial_pruning and complex_.chern_mode is ChernMode.SUM_EQUALS_TWO:
        _, cycles = decompose(SmoothingDiagram.build(size, {e: {} for e in edges}))
        for cycle in cycles:
            members = frozenset(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                cycle_vertices[(min(a, b), max(a, b))] = members

    options = []
    for edge in edges:
        decorations = edge_decorations(complex_, edge, max_order)
        if edge in cycle_vertices:
            decorations = [dec for dec in decorations if set(dec) <= cycle_vertices[edge]]
        options.append(decorations)

    realizations: List[Realization] = []
    counters = {"leaves": 0, "pruned": 0}

    def visit(index: int, chosen: Dict[Edge, Dict[int, int]], rows: List) -> None:
        if index == len(edges):
            counters["leaves"] += 1
            if counters["leaves"] % PROGRESS_EVERY == 0:
                log("Classifier", f"   граф {edges}: листьев {counters['leaves']}", level=2)
            d = SmoothingDiagram.build(size, chosen)
            stratum = is_realizable(d, complex_, rng)
            if stratum.verdict.is_realizable:
                realizations.append(Realization(d, stratum.dimension, stratum.witness))
            return
        edge = edges[index]
        for decoration in options[index]:
            extended = rows + edge_rows(ambient, complex_, edge, decoration)
            basis = subspace_of(ambient, extended, size)
            if (not basis
                    or any(edge_vanishes(basis, e) for e in edges[:index + 1])
                    or pfaffian_vanishes(basis, complex_, rng)):
                counters["pruned"] += 1
                continue
            visit(index + 1, {**chosen, edge: decoration}, extended)

    visit(0, {}, [])
    return {"realizations": realizations, **counters}


# ============================================================================
# КЛАССИФИКАТОР P^{2n}
# ============================================================================
class DiagramClassifier:
    """
    Классификация диаграмм сглаживания на P^{2n}

    Графы-кандидаты обрабатываются батчами через asyncio.gather; при
    parallel=True каждый граф считается в пуле процессов.
    """

    def __init__(self, n: int, use_combinatorial_pruning: bool = True, parallel: bool = False,
                 workers: Optional[int] = None):
        if not isinstance(n, int) or not 1 <= n <= min(MAX_SPACE_N, 3):
            raise SizeGuard(f"классификация поддерживается для 1 <= n <= {min(MAX_SPACE_N, 3)}, получено n = {n}")
        self.n = n
        self.complex = projective_space_complex(n)
        self.use_combinatorial_pruning = use_combinatorial_pruning
        self.parallel = parallel
        self.workers = max(1, workers or THREADS)
        self.stats: Dict = {}

    async def _with_semaphore(self, semaphore: asyncio.Semaphore, coro):
        async with semaphore:
            return await coro

    async def _classify_one(self, graph: CandidateGraph, executor: Optional[ProcessPoolExecutor]) -> Dict:
        if executor is None:
            return classify_graph(self.complex, graph.edges, self.use_combinatorial_pruning)
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(
            executor, classify_graph, self.complex, graph.edges, self.use_combinatorial_pruning
        )

    def _check_conservation(self, graphs: List[CandidateGraph]) -> None:
        total = sum(g.orbit_size for g in graphs)
        expected = labeled_graph_count(self.complex.num_vertices)
        if total != expected:
            raise InvariantViolation(f"сумма орбит графов {total} != числу помеченных графов {expected}")

    async def classify(self) -> List[ClassEntry]:
        """
        Returns:
            Классы диаграмм, отсортированные по (число ребер, размерность, кодировка)
        """
        start_time = time.time()
        graphs = candidate_graphs(self.complex.num_vertices)
        self._check_conservation(graphs)
        if self.use_combinatorial_pruning:
            graphs = [g for g in graphs if not g.has_even_cycle]

        log("Classifier", f"🚀 P^{2 * self.n}: {len(graphs)} графов-кандидатов, "
                          f"отсечение {'вкл' if self.use_combinatorial_pruning else 'выкл'}, "
                          f"{'процессов: ' + str(self.workers) if self.parallel else 'последовательно'}")

        semaphore = asyncio.Semaphore(self.workers)
        executor = ProcessPoolExecutor(max_workers=self.workers) if self.parallel else None
        outcomes: List[Dict] = []
        try:
            for i in range(0, len(graphs), BATCH_SIZE):
                batch = graphs[i:i + BATCH_SIZE]
                tasks = [self._with_semaphore(semaphore, self._classify_one(g, executor)) for g in batch]
                results = await asyncio.gather(*tasks, return_exceptions=True)
                for result in results:
                    if isinstance(result, BaseException):
                        raise result
                outcomes.extend(results)
                log("Classifier", f"📊 Прогресс: {len(outcomes)}/{len(graphs)} графов")
        finally:
            if executor is not None:
                executor.shutdown()

        entries = self._merge(outcomes)
        self._recheck(entries)

        histogram = Counter(e.dimension for e in entries)
        self.stats = {
            "space": f"P{2 * self.n}",
            "graphs": len(graphs),
            "leaves": sum(o["leaves"] for o in outcomes),
            "pruned": sum(o["pruned"] for o in outcomes),
            "realizations": sum(len(o["realizations"]) for o in outcomes),
            "classes": len(entries),
            "histogram": {str(k): histogram[k] for k in sorted(histogram)},
            "pruning": self.use_combinatorial_pruning,
            "parallel": self.parallel,
            "duration_sec": round(time.time() - start_time, 3),
        }
        log("Classifier", f"✅ Найдено классов: {len(entries)} за {self.stats['duration_sec']}с "
                          f"(листьев {self.stats['leaves']}, отсечено {self.stats['pruned']})")
        log("Classifier", f"💾 Кэш канонических форм: {canonical_cache_info()}", level=2)
        return entries

    def _merge(self, outcomes: List[Dict]) -> List[ClassEntry]:
        seen: Dict[bytes, ClassEntry] = {}
        for outcome in outcomes:
            for realization in outcome["realizations"]:
                entry = make_entry(realization)
                seen.setdefault(entry.canonical.encoding, entry)
        return sorted(seen.values(), key=ClassEntry.sort_key)

    def _recheck(self, entries: List[ClassEntry]) -> None:
        for entry in entries:
            violations = validate_combinatorial(entry.representative, self.complex)
            if violations:
                raise InvariantViolation(
                    f"класс {entry.canonical.hex()} нарушает комбинаторные условия: "
                    + "; ".join(v.detail for v in violations)
                )


def make_entry(realization: Realization) -> ClassEntry:
    """Канонический представитель; свидетель переставляется вместе с ним"""
    form, perm = canonical_labeling(realization.diagram)
    return ClassEntry(
        canonical=form,
        representative=realization.diagram.relabel(perm),
        dimension=realization.dimension,
        witness=realization.witness.permuted(perm),
        orbit_size=form.orbit_size,
    )


def enumerate_smoothing_diagrams(n: int, use_combinatorial_pruning: bool = True,
                                 parallel: bool = False) -> List[ClassEntry]:
    classifier = DiagramClassifier(n, use_combinatorial_pruning, parallel)
    return asyncio.run(classifier.classify())


def single_edge_classes(n: int) -> List[ClassEntry]:
    """Классы с одним ребром: порядок (2) и порядок (1, 1)"""
    if not isinstance(n, int) or not 2 <= n <= min(MAX_SPACE_N, 3):
        raise SizeGuard(f"классы с одним ребром считаются для 2 <= n <= {min(MAX_SPACE_N, 3)}, получено n = {n}")
    complex_ = projective_space_complex(n)
    outcome = classify_graph(complex_, [(0, 1)])
    entries: Dict[bytes, ClassEntry] = {}
    for realization in outcome["realizations"]:
        entry = make_entry(realization)
        entries.setdefault(entry.canonical.encoding, entry)
    return sorted(entries.values(), key=ClassEntry.sort_key)


# ============================================================================
# РОСТОК НА ТРЕУГОЛЬНИКЕ
# ============================================================================
def triple_points_c4() -> List[TriplePoint]:
    """
    Все точки с тремя сглаживаемыми ребрами: Σ 1/(m_i + 1) = 1

    Знаменатели m_i + 1 не превосходят 6, поэтому перебор конечен.
    """
    points = []
    for a, b in product(range(2, 7), repeat=2):
        rest = 1 - Fraction(1, a) - Fraction(1, b)
        if rest <= 0 or rest.numerator != 1 or rest.denominator < 2:
            continue
        c = rest.denominator
        orders = (a - 1, b - 1, c - 1)
        label, _ = _TRIPLE_LABELS[tuple(sorted(orders))]
        points.append(TriplePoint(
            biresidues=(Fraction(1, a), Fraction(1, b), Fraction(1, c)),
            orders=orders,
            label=label,
            orbit_size=len(set(_permutations3(orders))),
        ))
    return sorted(points, key=lambda p: (p.label.value, p.orders))


def _permutations3(values: Tuple[int, int, int]):
    a, b, c = values
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


def two_edge_chain_family(m: int, n: int) -> Tuple[Tuple[int, int, int], bool]:
    """
    Двойная цепочка: ребро 0-1 порядка m в вершине 2, ребро 1-2 порядка n в вершине 0

    Returns:
        ((B̂₀₁, B̂₁₂, B̂₂₀) с точностью до масштаба, сглаживаемо ли третье ребро)
    """
    if not 0 <= m <= n:
        raise InconsistentInput(f"нужно 0 <= m <= n, получено m = {m}, n = {n}")
    return (n + 1, m + 1, n * m - 1), (m, n) in SMOOTHABLE_THIRD_EDGE


def chain_diagram(m: int, n: int) -> SmoothingDiagram:
    return SmoothingDiagram.build(3, {(0, 1): {2: m}, (1, 2): {0: n}})


def chain_family_from_arrangement(m: int, n: int) -> Tuple[Tuple[Fraction, Fraction, Fraction], bool]:
    """
    То же, что two_edge_chain_family, но через решение системы уравнений страта

    Бивычеты нормированы так, что B̂₀₁ = n + 1.
    """
    complex_ = affine_germ_complex(3)
    basis, dimension = solve_stratum(chain_diagram(m, n), complex_)
    if dimension != 1:
        raise InvariantViolation(f"страт двойной цепочки ({m}, {n}) имеет размерность {dimension}, ожидалась 1")
    matrix = basis[0]
    scale = Fraction(n + 1) / matrix[0, 1]
    biresidues = (matrix[0, 1] * scale, matrix[1, 2] * scale, matrix[2, 0] * scale)
    generic = LogClass(complex_, matrix)
    return biresidues, is_edge_smoothable(generic, (0, 2))


def chain_records(max_order: int) -> List[ChainRecord]:
    """
    Прямые и точки плоскости бивычетов ростка-треугольника с порядками <= max_order

    Общая точка - T_{∞,∞,∞}; прямая одного ребра порядка m - T_{∞,∞,m+1};
    точка двойной цепочки (m, n) - T_{∞,m+1,n+1}.
    """
    if max_order < 0:
        raise InconsistentInput(f"max_order должен быть >= 0, получено {max_order}")
    records = [ChainRecord(kind="generic", orders=(), label="T_{∞,∞,∞}")]
    for m in range(max_order + 1):
        records.append(ChainRecord(
            kind="single", orders=(m,), label=f"T_{{∞,∞,{m + 1}}}", line=f"{m}*b1 - b2 - b3 = 0",
        ))
    for m in range(max_order + 1):
        for n in range(m, max_order + 1):
            biresidues, third = two_edge_chain_family(m, n)
            records.append(ChainRecord(
                kind="double", orders=(m, n), label=f"T_{{∞,{m + 1},{n + 1}}}",
                biresidues=biresidues, third_edge_smoothable=third,
            ))
    return records


def germ_triangle_classes(max_order: int, use_combinatorial_pruning: bool = True) -> List[Realization]:
    """
    Все реализуемые декорированные диаграммы на треугольнике с порядками <= max_order

    Помеченные диаграммы, без факторизации по симметриям.
    """
    if max_order < 0:
        raise InconsistentInput(f"max_order должен быть >= 0, получено {max_order}")
    complex_ = affine_germ_complex(3)
    realizations = []
    edges = complex_.edges()
    for size in range(len(edges) + 1):
        for subset in combinations(edges, size):
            outcome = classify_graph(complex_, subset, use_combinatorial_pruning, max_order)
            realizations.extend(outcome["realizations"])
    log("Classifier", f"📊 Росток-треугольник, порядки <= {max_order}: реализуемых диаграмм {len(realizations)}", level=2)
    return realizations
