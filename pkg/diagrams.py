"""
Диаграммы сглаживания (Γ, m): ребра с неотрицательными целыми порядками
в противоположных вершинах

Проверка комбинаторных ограничений, канонические формы под перестановками
вершин, разложение на цепи и циклы, DOT и JSON.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from configs import CACHE_SIZE, ENABLE_CACHE, MAX_CANONICAL_VERTICES
from complex_model import ChernMode, DualComplex
from errors import ParseError, SizeGuard, SizeMismatch, ValencyTooHigh
from utils import LRUCache, is_valid_order, parse_vertex

Edge = Tuple[int, int]
OrderItem = Tuple[Edge, int, int]


@dataclass(frozen=True)
class SmoothingDiagram:
    """
    Предсглаживающая диаграмма

    orders хранится разреженно: кортеж ((i, j), k, m) с m > 0,
    отсортированный по ребру и вершине.
    """
    num_vertices: int
    edges: frozenset
    orders: Tuple[OrderItem, ...] = ()

    @classmethod
    def build(cls, num_vertices: int, decorations: Mapping[Edge, Mapping[int, int]]) -> "SmoothingDiagram":
        """
        Собирает диаграмму из словаря {ребро: {вершина: порядок}}

        Ребра нормализуются к (i < j), нулевые порядки отбрасываются.
        """
        if not isinstance(num_vertices, int) or num_vertices < 0:
            raise ParseError(f"число вершин должно быть неотрицательным целым, получено {num_vertices!r}")
        edges = set()
        orders = []
        for edge, edge_orders in decorations.items():
            i, j = edge
            if i == j or not (0 <= i < num_vertices and 0 <= j < num_vertices):
                raise ParseError(f"ребро {edge} некорректно для {num_vertices} вершин")
            key = (min(i, j), max(i, j))
            if key in edges:
                raise ParseError(f"ребро {key} указано дважды")
            edges.add(key)
            for k, m in edge_orders.items():
                if not 0 <= k < num_vertices or k in key:
                    raise ParseError(f"порядок ребра {key} в недопустимой вершине {k}")
                if not is_valid_order(m):
                    raise ParseError(f"порядок ребра {key} в вершине {k} должен быть целым >= 0, получено {m!r}")
                if m:
                    orders.append((key, k, m))
        return cls(num_vertices, frozenset(edges), tuple(sorted(orders)))

    @classmethod
    def empty(cls, num_vertices: int) -> "SmoothingDiagram":
        return cls(num_vertices, frozenset(), ())

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def orders_of(self, edge: Edge) -> Dict[int, int]:
        key = (min(edge), max(edge))
        return {k: m for e, k, m in self.orders if e == key}

    def decorations(self) -> Dict[Edge, Dict[int, int]]:
        return {e: self.orders_of(e) for e in self.sorted_edges()}

    def valency(self, vertex: int) -> int:
        return sum(1 for e in self.edges if vertex in e)

    def relabel(self, perm: Sequence[int]) -> "SmoothingDiagram":
        """σ·d: вершина v переходит в perm[v]"""
        decorations = {
            (perm[i], perm[j]): {perm[k]: m for k, m in self.orders_of((i, j)).items()}
            for i, j in self.edges
        }
        return SmoothingDiagram.build(self.num_vertices, decorations)

    def without_edges(self, removed: Iterable[Edge]) -> "SmoothingDiagram":
        removed = {(min(e), max(e)) for e in removed}
        decorations = {e: o for e, o in self.decorations().items() if e not in removed}
        return SmoothingDiagram.build(self.num_vertices, decorations)


@dataclass(frozen=True)
class CanonicalForm:
    encoding: bytes
    orbit_size: int

    def hex(self) -> str:
        return self.encoding.hex()


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


# ============================================================================
# КОМБИНАТОРНЫЕ ОГРАНИЧЕНИЯ
# ============================================================================
def _components(d: SmoothingDiagram) -> Tuple[List[List[int]], List[List[int]]]:
    adjacency: Dict[int, List[int]] = {}
    for i, j in d.sorted_edges():
        adjacency.setdefault(i, []).append(j)
        adjacency.setdefault(j, []).append(i)
    for neighbours in adjacency.values():
        neighbours.sort()

    seen = set()
    chains, cycles = [], []
    # Сначала цепи: обход от концевых вершин
    for start in sorted(v for v, nb in adjacency.items() if len(nb) == 1):
        if start in seen:
            continue
        path = [start]
        seen.add(start)
        previous, current = None, start
        while True:
            nxt = [v for v in adjacency[current] if v != previous and v not in seen]
            if not nxt:
                break
            previous, current = current, nxt[0]
            path.append(current)
            seen.add(current)
        chains.append(path)
    # Оставшиеся вершины лежат на циклах
    for start in sorted(adjacency):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        current = start
        while True:
            nxt = [v for v in adjacency[current] if v not in seen]
            if not nxt:
                break
            current = nxt[0]
            cycle.append(current)
            seen.add(current)
        cycles.append(cycle)
    return chains, cycles


def decompose(d: SmoothingDiagram) -> Tuple[List[List[int]], List[List[int]]]:
    """
    Разбивает диаграмму валентности <= 2 на цепи и циклы

    Returns:
        (chains, cycles) - списки вершин в порядке обхода; цепь начинается
        с меньшего конца, цикл - с минимальной вершины и ее меньшего соседа
    """
    high = [v for v in range(d.num_vertices) if d.valency(v) > 2]
    if high:
        raise ValencyTooHigh(f"вершины валентности > 2: {high}")
    return _components(d)


def validate_combinatorial(d: SmoothingDiagram, complex_: DualComplex) -> List[Violation]:
    """
    Необходимые условия реализуемости диаграммы

    Валентность, четные циклы и порядки вне цикла проверяются в любом
    режиме; сумма порядков = 2 - только в режиме SumEqualsTwo (P^{2n}).

    Returns:
        Список нарушений; пустой список - все условия выполнены
    """
    violations = []
    for (i, j), k, m in d.orders:
        if k not in complex_.opposite_vertices((i, j)):
            violations.append(Violation("BadOrderVertex", f"ребро {i}-{j}: вершина {k} не образует с ним грань"))

    for v in range(d.num_vertices):
        valency = d.valency(v)
        if valency > 2:
            violations.append(Violation("ValencyViolation", f"вершина {v} имеет валентность {valency}"))

    if not any(v.kind == "ValencyViolation" for v in violations):
        _, cycles = _components(d)
        for cycle in cycles:
            if len(cycle) % 2 == 0:
                violations.append(Violation("EvenCycle", f"цикл четной длины {len(cycle)}: {cycle}"))
            members = set(cycle)
            cycle_edges = {(min(a, b), max(a, b)) for a, b in zip(cycle, cycle[1:] + cycle[:1])}
            for (i, j), k, m in d.orders:
                if (i, j) in cycle_edges and k not in members:
                    violations.append(Violation(
                        "CycleContainment", f"ребро {i}-{j} цикла {cycle} имеет порядок {m} вне цикла (в {k})"
                    ))

    if complex_.chern_mode is not ChernMode.SUM_EQUALS_TWO:
        return violations
    for edge in d.sorted_edges():
        total = sum(d.orders_of(edge).values())
        if total != 2:
            violations.append(Violation("OrderSum", f"ребро {edge[0]}-{edge[1]}: сумма порядков {total} != 2"))
    return violations


# ============================================================================
# КАНОНИЧЕСКАЯ ФОРМА
# ============================================================================
_canonical_cache = LRUCache(max_size=CACHE_SIZE)


def _tokens(d: SmoothingDiagram, perm: Sequence[int]) -> Tuple[int, ...]:
    relabeled = []
    for i, j in d.edges:
        a, b = perm[i], perm[j]
        orders = sorted((perm[k], m) for k, m in d.orders_of((i, j)).items())
        relabeled.append(((min(a, b), max(a, b)), orders))
    relabeled.sort()
    tokens = [d.num_vertices, len(relabeled)]
    for (a, b), orders in relabeled:
        tokens.extend((a, b, len(orders)))
        for k, m in orders:
            tokens.extend((k, m))
    return tuple(tokens)


def canonical_labeling(d: SmoothingDiagram) -> Tuple[CanonicalForm, Tuple[int, ...]]:
    """
    Перебор всех перестановок вершин

    Returns:
        (форма, перестановка perm с d.relabel(perm) = канонический представитель)
    """
    if d.num_vertices > MAX_CANONICAL_VERTICES:
        raise SizeGuard(f"канонизация перебором: {d.num_vertices} вершин больше {MAX_CANONICAL_VERTICES}")
    if ENABLE_CACHE:
        cached = _canonical_cache.get(d)
        if cached is not None:
            return cached

    best: Optional[Tuple[int, ...]] = None
    best_perm: Tuple[int, ...] = tuple(range(d.num_vertices))
    stabilizer = 0
    for perm in permutations(range(d.num_vertices)):
        tokens = _tokens(d, perm)
        if best is None or tokens < best:
            best, best_perm, stabilizer = tokens, perm, 1
        elif tokens == best:
            stabilizer += 1

    encoding = b"".join(t.to_bytes(2, "big") for t in best)
    result = (CanonicalForm(encoding, factorial(d.num_vertices) // stabilizer), best_perm)
    if ENABLE_CACHE:
        _canonical_cache.put(d, result)
    return result


def canonical_cache_info() -> Dict:
    return {
        "size": _canonical_cache.size(),
        "hits": _canonical_cache.hits,
        "hit_rate": round(_canonical_cache.hit_rate(), 3),
    }


def canonical_form(d: SmoothingDiagram) -> CanonicalForm:
    return canonical_labeling(d)[0]


def canonical_representative(d: SmoothingDiagram) -> SmoothingDiagram:
    return d.relabel(canonical_labeling(d)[1])


def are_isomorphic(a: SmoothingDiagram, b: SmoothingDiagram) -> bool:
    if a.num_vertices != b.num_vertices:
        raise SizeMismatch(f"диаграммы на {a.num_vertices} и {b.num_vertices} вершинах")
    return canonical_form(a).encoding == canonical_form(b).encoding


def automorphism_count(d: SmoothingDiagram) -> int:
    """|Aut(d)| = N! / размер орбиты"""
    return factorial(d.num_vertices) // canonical_form(d).orbit_size


def subdiagrams(d: SmoothingDiagram) -> List[SmoothingDiagram]:
    """Все поддиаграммы: удаление ребер с сохранением остальных порядков"""
    edges = d.sorted_edges()
    result = []
    for size in range(len(edges), -1, -1):
        for removed in combinations(edges, len(edges) - size):
            result.append(d.without_edges(removed))
    return result


# ============================================================================
# ВЫВОД
# ============================================================================
def edge_label(orders: Mapping[int, int]) -> str:
    if not orders:
        return "m=0"
    return ",".join(f"m={m}@v{k}" for k, m in sorted(orders.items()))


def to_dot(d: SmoothingDiagram, name: str = "smoothing_diagram") -> str:
    """Graphviz: все вершины комплекса, ребра диаграммы выделены, порядки - метки"""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(d.num_vertices):
        lines.append(f"  v{v};")
    for i, j in d.sorted_edges():
        lines.append(f'  v{i} -- v{j} [color=red, penwidth=2, label="{edge_label(d.orders_of((i, j)))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(d: SmoothingDiagram) -> Dict:
    return {
        "vertices": d.num_vertices,
        "edges": [
            {"e": [i, j], "orders": {str(k): m for k, m in sorted(d.orders_of((i, j)).items())}}
            for i, j in d.sorted_edges()
        ],
    }


def from_json(payload: Dict) -> SmoothingDiagram:
    """{"vertices": N, "edges": [{"e": [i, j], "orders": {"k": m}}]}"""
    if not isinstance(payload, dict):
        raise ParseError("диаграмма должна быть JSON-объектом")
    num_vertices = payload.get("vertices")
    if not isinstance(num_vertices, int) or isinstance(num_vertices, bool) or num_vertices < 0:
        raise ParseError(f"поле 'vertices' должно быть целым >= 0, получено {num_vertices!r}")
    edges = payload.get("edges", [])
    if not isinstance(edges, list):
        raise ParseError("поле 'edges' должно быть списком")
    decorations = {}
    for item in edges:
        if not isinstance(item, dict) or not isinstance(item.get("e"), list) or len(item["e"]) != 2:
            raise ParseError(f"ребро должно иметь вид {{'e': [i, j], 'orders': {{...}}}}, получено {item!r}")
        i = parse_vertex(item["e"][0], num_vertices, "e[0]")
        j = parse_vertex(item["e"][1], num_vertices, "e[1]")
        orders = item.get("orders", {})
        if not isinstance(orders, dict):
            raise ParseError(f"ребро {i}-{j}: 'orders' должен быть объектом")
        edge_orders = {parse_vertex(k, num_vertices, f"вершина порядка ребра {i}-{j}"): m for k, m in orders.items()}
        if (i, j) in decorations or (j, i) in decorations:
            raise ParseError(f"ребро {i}-{j} указано дважды")
        decorations[(i, j)] = edge_orders
    return SmoothingDiagram.build(num_vertices, decorations)
