"""
Модуль для логирования запусков классификации и других команд
"""

import csv
import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

from configs import RUNS_LOG_FILE, SAVE_RUNS_TO_FILE


class RunLogger:
    """Журнал запусков: JSON-строки в logs/runs.log и статистика сессии"""

    def __init__(self, enabled: Optional[bool] = None, log_file: Optional[Path] = None):
        self.enabled = SAVE_RUNS_TO_FILE if enabled is None else enabled
        self.runs_log = Path(log_file) if log_file is not None else RUNS_LOG_FILE
        self.logs_dir = self.runs_log.parent

        # Статистика за текущую сессию
        self.session_runs: List[Dict] = []
        self.session_start = datetime.now()

        # Счетчики
        self.total_logged = 0
        self.classes_found = 0
        self.longest_run: Optional[Dict] = None

    def log_run(self, command: str, run: Dict) -> None:
        """
        Записывает запуск в файл и память

        Args:
            command: Имя команды CLI
            run: Данные запуска (для classify - статистика классификатора)
        """
        entry = {
            'timestamp': datetime.now().isoformat(),
            'run': {'command': command, **run},
        }

        self.session_runs.append(entry)
        self.total_logged += 1
        self.classes_found += run.get('classes', 0)
        if self.longest_run is None or run.get('duration_sec', 0) > self.longest_run.get('duration_sec', 0):
            self.longest_run = entry['run']

        if not self.enabled:
            return

        try:
            self.logs_dir.mkdir(parents=True, exist_ok=True)
            with open(self.runs_log, 'a', encoding='utf-8') as f:
                f.write(json.dumps(entry, ensure_ascii=False) + '\n')
        except Exception as e:
            print(f"⚠️  Ошибка при логировании запуска: {e}", file=sys.stderr)

    def get_session_statistics(self) -> Dict:
        """Возвращает статистику текущей сессии"""
        uptime = datetime.now() - self.session_start
        commands: Dict[str, int] = {}
        for entry in self.session_runs:
            name = entry['run']['command']
            commands[name] = commands.get(name, 0) + 1
        return {
            'session_start': self.session_start.isoformat(),
            'uptime_seconds': uptime.total_seconds(),
            'total_runs': self.total_logged,
            'classes_found': self.classes_found,
            'longest_run': self.longest_run,
            'commands': commands,
        }

    def print_session_summary(self) -> None:
        """Выводит сводку по текущей сессии в stderr"""
        stats = self.get_session_statistics()
        out = sys.stderr

        print(f"\n{'=' * 80}", file=out)
        print("📊 СТАТИСТИКА СЕССИИ", file=out)
        print(f"{'=' * 80}", file=out)
        print(f"⏱️  Время работы: {stats['uptime_seconds']:.1f} с", file=out)
        print(f"🎯 Запусков: {stats['total_runs']}", file=out)
        print(f"🧩 Найдено классов: {stats['classes_found']}", file=out)
        if stats['longest_run']:
            run = stats['longest_run']
            print(f"🐢 Самый долгий: {run['command']} {run.get('space', '')} "
                  f"({run.get('duration_sec', 0)} с)", file=out)
        print(f"{'=' * 80}\n", file=out)

    def load_recent_runs(self, hours: float = 24) -> List[Dict]:
        """
        Загружает недавние запуски из лога

        Args:
            hours: Количество часов для загрузки

        Returns:
            Список записей {'timestamp', 'run'}
        """
        if not self.runs_log.exists():
            return []

        runs = []
        cutoff_time = datetime.now().timestamp() - (hours * 3600)

        try:
            with open(self.runs_log, 'r', encoding='utf-8') as f:
                for line in f:
                    try:
                        entry = json.loads(line.strip())
                        entry_time = datetime.fromisoformat(entry['timestamp']).timestamp()

                        if entry_time >= cutoff_time:
                            runs.append(entry)
                    except (json.JSONDecodeError, KeyError, ValueError):
                        continue
            return runs

        except Exception as e:
            print(f"⚠️  Ошибка при загрузке журнала: {e}", file=sys.stderr)
            return []

    def summarize_recent(self, hours: float = 24) -> Dict:
        """Сводка по журналу за последние N часов"""
        runs = self.load_recent_runs(hours)
        by_command: Dict[str, int] = {}
        by_space: Dict[str, int] = {}
        for entry in runs:
            run = entry['run']
            by_command[run.get('command', '?')] = by_command.get(run.get('command', '?'), 0) + 1
            if run.get('command') == 'classify':
                space = run.get('space', '?')
                by_space[space] = run.get('classes', 0)
        return {
            'hours': hours,
            'runs': len(runs),
            'by_command': by_command,
            'last_classes_by_space': by_space,
            'entries': runs,
        }

    def export_to_csv(self, output_file: Optional[Path] = None, hours: float = 24) -> Optional[Path]:
        """Экспортирует запуски classify в CSV"""
        if output_file is None:
            output_file = self.logs_dir / f"runs_{datetime.now().strftime('%Y%m%d_%H%M%S')}.csv"

        runs = [e for e in self.load_recent_runs(hours) if e['run'].get('command') == 'classify']

        if not runs:
            print("⚠️  Нет данных для экспорта", file=sys.stderr)
            return None

        try:
            with open(output_file, 'w', newline='', encoding='utf-8') as f:
                writer = csv.writer(f)

                # Заголовки
                writer.writerow([
                    'Timestamp',
                    'Space',
                    'Classes',
                    'Graphs',
                    'Leaves',
                    'Pruned',
                    'Pruning',
                    'Parallel',
                    'Duration s',
                    'Histogram',
                ])

                # Данные
                for entry in runs:
                    run = entry['run']
                    histogram = run.get('histogram', {})
                    writer.writerow([
                        entry['timestamp'],
                        run.get('space', ''),
                        run.get('classes', 0),
                        run.get('graphs', 0),
                        run.get('leaves', 0),
                        run.get('pruned', 0),
                        run.get('pruning', ''),
                        run.get('parallel', ''),
                        run.get('duration_sec', 0),
                        ' '.join(f"{k}:{v}" for k, v in histogram.items()),
                    ])

            print(f"\n✅ Данные экспортированы в {output_file}", file=sys.stderr)
            return Path(output_file)

        except Exception as e:
            print(f"❌ Ошибка при экспорте в CSV: {e}", file=sys.stderr)
            return None
