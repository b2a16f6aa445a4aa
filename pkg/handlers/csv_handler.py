import csv
import io
from typing import Dict, List, Optional

from diagrams import edge_label
from handlers.base_handler import FormatHandler


class CsvFormatHandler(FormatHandler):
    """Табличный вывод: строка заголовка и по строке на запись"""

    name = "csv"

    @staticmethod
    def _write(header: List[str], rows: List[List]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()

    def render_classification(self, entries: List, space: str) -> str:
        return self._write(
            ["encoding", "edges", "dimension", "orbit_size"],
            [[e.canonical.hex(), e.edge_count, e.dimension, e.orbit_size] for e in entries],
        )

    def render_triple_points(self, points: List, chains: Optional[List] = None) -> str:
        rows = [
            ["triple", " ".join(map(str, p.orders)), p.label.value,
             " ".join(p.to_json()["biresidues"]), p.orbit_size, ""]
            for p in points
        ]
        for c in chains or []:
            rows.append([
                c.kind, " ".join(map(str, c.orders)), c.label,
                " ".join(map(str, c.biresidues)) if c.biresidues else (c.line or ""),
                "", "" if c.third_edge_smoothable is None else c.third_edge_smoothable,
            ])
        return self._write(["kind", "orders", "label", "biresidues", "orbit_size", "third_edge_smoothable"], rows)

    def render_analysis(self, report: Dict) -> str:
        return self._write(
            ["edge", "biresidue", "orders", "resonant", "smoothable"],
            [
                [f"{e['edge'][0]}-{e['edge'][1]}", e["biresidue"],
                 " ".join(f"{k}:{v}" for k, v in e["orders"].items()), e["resonant"], e["smoothable"]]
                for e in report["edges"]
            ],
        )

    def render_cohomology(self, report: Dict) -> str:
        return self._write(["degree", "dimension"], [[i, c] for i, c in enumerate(report["poincare"])])

    def render_diagram(self, diagram) -> str:
        return self._write(
            ["edge", "orders"],
            [[f"{i}-{j}", edge_label(diagram.orders_of((i, j)))] for i, j in diagram.sorted_edges()],
        )

    def render_runs(self, summary: Dict) -> str:
        rows = []
        for entry in summary["entries"]:
            run = entry["run"]
            rows.append([entry["timestamp"], run.get("command", ""), run.get("space", ""),
                         run.get("classes", ""), run.get("duration_sec", "")])
        return self._write(["timestamp", "command", "space", "classes", "duration_sec"], rows)
