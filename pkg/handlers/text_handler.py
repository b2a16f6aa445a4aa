from typing import Dict, List, Optional

from diagrams import edge_label, to_json as diagram_to_json
from handlers.base_handler import FormatHandler


def _diagram_text(payload: Dict) -> str:
    if not payload["edges"]:
        return "∅"
    parts = []
    for item in payload["edges"]:
        i, j = item["e"]
        orders = {int(k): m for k, m in item["orders"].items()}
        parts.append(f"{i}{j}[{edge_label(orders)}]")
    return " ".join(parts)


class TextFormatHandler(FormatHandler):
    """Человекочитаемые таблицы тех же данных"""

    name = "text"

    def render_classification(self, entries: List, space: str) -> str:
        lines = [f"{'=' * 80}", f"📊 КЛАССЫ ДИАГРАММ СГЛАЖИВАНИЯ {space}: {len(entries)}", f"{'=' * 80}"]
        for i, e in enumerate(entries, start=1):
            payload = e.to_json()
            lines.append(
                f"{i:3d}. dim={e.dimension} орбита={e.orbit_size:4d} ребер={e.edge_count}  "
                f"{_diagram_text(payload['diagram'])}"
            )
        return "\n".join(lines) + "\n"

    def render_triple_points(self, points: List, chains: Optional[List] = None) -> str:
        lines = [f"🔺 ТРОЙНЫЕ ТОЧКИ: {len(points)}"]
        for p in points:
            data = p.to_json()
            lines.append(f"   {p.label.value:8s} {data['singularity']:10s} порядки {p.orders}  "
                         f"бивычеты ({', '.join(data['biresidues'])})  орбита {p.orbit_size}")
        if chains is not None:
            lines.append(f"\n🔗 ЦЕПОЧКИ: {len(chains)}")
            for c in chains:
                extra = c.line or (f"бивычеты {c.biresidues}, третье ребро: "
                                   f"{'сглаживаемо' if c.third_edge_smoothable else 'нет'}" if c.biresidues else "")
                lines.append(f"   {c.label:16s} {c.kind:8s} {extra}")
        return "\n".join(lines) + "\n"

    def render_analysis(self, report: Dict) -> str:
        lines = [
            f"Невырожден: {'✅' if report['nondegenerate'] else '❌'}",
            f"Голономен:  {'✅' if report['holonomic'] else '❌'}",
        ]
        if report["violating_simplices"]:
            lines.append(f"   нарушители: {report['violating_simplices']}")
        lines.append(f"Характеристические грани: {report['characteristic']}")
        lines.append("Ребра:")
        for e in report["edges"]:
            flags = ("сглаживаемо " if e["smoothable"] else "") + ("резонансно" if e["resonant"] else "")
            orders = ", ".join(f"{k}: {v}" for k, v in e["orders"].items())
            lines.append(f"   {e['edge'][0]}-{e['edge'][1]}  B={e['biresidue']:>6s}  порядки {{{orders}}}  {flags}")
        lines.append(f"Диаграмма: {_diagram_text(report['diagram'])}")
        if "deformations" in report:
            d = report["deformations"]
            lines.append(f"HP²: {d['hp2']}, локальных компонент: {d['local_components']}")
        return "\n".join(lines) + "\n"

    def render_cohomology(self, report: Dict) -> str:
        terms = " + ".join(
            f"{c}" if i == 0 else (f"{c}t" if i == 1 else f"{c}t^{i}")
            for i, c in enumerate(report["poincare"]) if c
        )
        lines = [f"P(t) = {terms or '0'}", f"dim HP² = {report['hp2']}", "Вклады:"]
        for s in report["contributing_simplices"]:
            lines.append(f"   Δ={s['simplex']}  t={s['t']}  α={s['alpha']}")
        return "\n".join(lines) + "\n"

    def render_stratum(self, report: Dict) -> str:
        lines = [
            f"Диаграмма: {_diagram_text(report['diagram'])}",
            f"Размерность: {report['dimension']}",
            f"Вердикт: {report['verdict']}",
        ]
        if report["witness"] is not None:
            lines.append("Свидетель:")
            lines.extend("   " + " ".join(f"{x:>5s}" for x in row) for row in report["witness"])
        return "\n".join(lines) + "\n"

    def render_diagram(self, diagram) -> str:
        return _diagram_text(diagram_to_json(diagram)) + "\n"

    def render_runs(self, summary: Dict) -> str:
        lines = [f"📈 Запусков за {summary['hours']} ч: {summary['runs']}"]
        for command, count in sorted(summary["by_command"].items()):
            lines.append(f"   {command}: {count}")
        for space, classes in sorted(summary["last_classes_by_space"].items()):
            lines.append(f"   {space}: {classes} классов (последний запуск)")
        return "\n".join(lines) + "\n"
