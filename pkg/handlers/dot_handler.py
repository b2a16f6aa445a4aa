from typing import Dict, List

from diagrams import from_json as diagram_from_json, to_dot
from handlers.base_handler import FormatHandler


class DotFormatHandler(FormatHandler):
    """Graphviz: одна диаграмма или набор графов (по одному на класс)"""

    name = "dot"

    def render_classification(self, entries: List, space: str) -> str:
        width = len(str(len(entries)))
        return "".join(
            to_dot(e.representative, name=f"{space}_class_{i:0{width}d}_dim{e.dimension}")
            for i, e in enumerate(entries, start=1)
        )

    def render_analysis(self, report: Dict) -> str:
        return to_dot(diagram_from_json(report["diagram"]))

    def render_stratum(self, report: Dict) -> str:
        return to_dot(diagram_from_json(report["diagram"]), name=f"stratum_{report['verdict']}")

    def render_diagram(self, diagram) -> str:
        return to_dot(diagram)
