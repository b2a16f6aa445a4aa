from typing import Dict, List, Optional

from errors import UnsupportedFormat


class FormatHandler:
    """
    Базовый обработчик формата вывода

    Каждый метод возвращает готовый текст для stdout. Команды, которые
    формат не поддерживает, завершаются UnsupportedFormat (код выхода 2).
    """

    name = "base"

    def _unsupported(self, command: str):
        raise UnsupportedFormat(f"формат {self.name} не поддерживается командой {command}")

    def render_classification(self, entries: List, space: str) -> str:
        self._unsupported("classify")

    def render_triple_points(self, points: List, chains: Optional[List] = None) -> str:
        self._unsupported("triple-points")

    def render_analysis(self, report: Dict) -> str:
        self._unsupported("analyze")

    def render_cohomology(self, report: Dict) -> str:
        self._unsupported("cohomology")

    def render_stratum(self, report: Dict) -> str:
        self._unsupported("stratum")

    def render_diagram(self, diagram) -> str:
        self._unsupported("render")

    def render_runs(self, summary: Dict) -> str:
        self._unsupported("runs")
