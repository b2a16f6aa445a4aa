import json
from typing import Dict, List, Optional

from diagrams import to_json as diagram_to_json
from handlers.base_handler import FormatHandler


class JsonFormatHandler(FormatHandler):
    """Машиночитаемый вывод (формат по умолчанию)"""

    name = "json"

    @staticmethod
    def _dump(payload) -> str:
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    def render_classification(self, entries: List, space: str) -> str:
        return self._dump([e.to_json() for e in entries])

    def render_triple_points(self, points: List, chains: Optional[List] = None) -> str:
        payload = {"triple_points": [p.to_json() for p in points]}
        if chains is not None:
            payload["chains"] = [c.to_json() for c in chains]
        return self._dump(payload)

    def render_analysis(self, report: Dict) -> str:
        return self._dump(report)

    def render_cohomology(self, report: Dict) -> str:
        return self._dump(report)

    def render_stratum(self, report: Dict) -> str:
        return self._dump(report)

    def render_diagram(self, diagram) -> str:
        return self._dump(diagram_to_json(diagram))

    def render_runs(self, summary: Dict) -> str:
        return self._dump(summary)
