"""
logsymp - командная строка для диаграмм сглаживания лог-симплектических структур

Команды:
    analyze <class.json>        слоения, голономность и ребра класса
    classify --space P4         классификация диаграмм на P^{2n}
    triple-points [--chains]    тройные точки ростка-треугольника
    cohomology <germ.json>      многочлен Пуанкаре когомологий Пуассона
    render <diagram.json>       диаграмма в формате DOT
    stratum <diagram.json>      страт и вердикт реализуемости
    runs [--hours H]            журнал запусков

Результаты печатаются в stdout, диагностика - в stderr.
"""

import argparse
import asyncio
import json
import re
import sys
import time
import traceback
from pathlib import Path
from typing import List, Optional

from arrangement import is_realizable, stratum_to_json
from classifier import DiagramClassifier, chain_records, triple_points_c4
from complex_model import DualComplex, affine_germ_complex, class_from_json, projective_space_complex
from configs import DEBUG, LOG_LEVEL, THREADS, validate_config
from diagrams import from_json as diagram_from_json
from errors import LogSympError, ParseError
from germ_cohomology import cohomology_report, deformation_summary, germ_from_json
from golden_p4 import verify_classification
from handlers import FORMATS, get_handler
from leaf_analysis import analyze_class
from run_logger import RunLogger
from utils import log

_SPACE_PATTERN = re.compile(r"^P(\d+)$")


# ============================================================================
# ВВОД
# ============================================================================
def load_json(path: str):
    """Читает JSON-файл ("-" - stdin); любые ошибки чтения дают ParseError"""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: некорректный JSON ({e.msg}, строка {e.lineno})")
    except OSError as e:
        raise ParseError(f"{path}: не удалось прочитать файл ({e.strerror})")


def parse_space(value: str) -> int:
    """'P4' -> n = 2; размер проверяет классификатор"""
    match = _SPACE_PATTERN.match(value.strip().upper())
    if not match or int(match.group(1)) % 2 or int(match.group(1)) == 0:
        raise ParseError(f"пространство должно иметь вид P<2n>, например P4; получено {value!r}")
    return int(match.group(1)) // 2


def stratum_complex(space: str, num_vertices: int) -> DualComplex:
    if space.lower() == "germ":
        return affine_germ_complex(num_vertices)
    return projective_space_complex(parse_space(space))


# ============================================================================
# КОМАНДЫ
# ============================================================================
def cmd_analyze(args, logger: RunLogger) -> str:
    log_class = class_from_json(load_json(args.file))
    report = analyze_class(log_class, chart_vertex=args.chart_vertex)
    report["deformations"] = deformation_summary(log_class)
    logger.log_run("analyze", {"file": args.file, "holonomic": report["holonomic"]})
    return get_handler(args.format).render_analysis(report)


def cmd_classify(args, logger: RunLogger) -> str:
    handler = get_handler(args.format)
    n = parse_space(args.space)
    if args.verify_golden and n != 2:
        raise ParseError("--verify-golden доступен только для --space P4")
    classifier = DiagramClassifier(
        n,
        use_combinatorial_pruning=not args.no_pruning,
        parallel=args.parallel,
        workers=args.workers,
    )
    entries = asyncio.run(classifier.classify())
    logger.log_run("classify", classifier.stats)

    if args.verify_golden:
        verify_classification(entries)
        log("Classify", "✅ Классификация совпала с эталоном P^4")
    return handler.render_classification(entries, space=f"P{2 * n}")


def cmd_triple_points(args, logger: RunLogger) -> str:
    handler = get_handler(args.format)
    points = triple_points_c4()
    chains = chain_records(args.max_order) if args.chains else None
    logger.log_run("triple-points", {"points": len(points), "chains": len(chains or [])})
    return handler.render_triple_points(points, chains)


def cmd_cohomology(args, logger: RunLogger) -> str:
    handler = get_handler(args.format)
    report = cohomology_report(germ_from_json(load_json(args.file)))
    logger.log_run("cohomology", {"file": args.file, "poincare": report["poincare"]})
    return handler.render_cohomology(report)


def cmd_render(args, logger: RunLogger) -> str:
    handler = get_handler(args.format)
    return handler.render_diagram(diagram_from_json(load_json(args.file)))


def cmd_stratum(args, logger: RunLogger) -> str:
    handler = get_handler(args.format)
    diagram = diagram_from_json(load_json(args.file))
    complex_ = stratum_complex(args.space, diagram.num_vertices)
    start_time = time.time()
    report = stratum_to_json(is_realizable(diagram, complex_))
    logger.log_run("stratum", {
        "space": args.space,
        "verdict": report["verdict"],
        "dimension": report["dimension"],
        "duration_sec": round(time.time() - start_time, 3),
    })
    return handler.render_stratum(report)


def cmd_runs(args, logger: RunLogger) -> str:
    handler = get_handler(args.format)
    summary = logger.summarize_recent(args.hours)
    if args.export:
        logger.export_to_csv(Path(args.export), hours=args.hours)
    return handler.render_runs(summary)


# ============================================================================
# РАЗБОР АРГУМЕНТОВ
# ============================================================================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logsymp",
        description="Диаграммы сглаживания лог-симплектических структур с нормальными пересечениями",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_format(sub, default: str = "json"):
        sub.add_argument("--format", choices=sorted(FORMATS), default=default,
                         help=f"формат вывода (по умолчанию {default})")

    analyze = subparsers.add_parser("analyze", help="анализ класса из JSON-файла")
    analyze.add_argument("file")
    analyze.add_argument("--chart-vertex", type=int, default=0,
                         help="вершина, карта которой используется для пфаффиана на P^{2n}")
    add_format(analyze)
    analyze.set_defaults(func=cmd_analyze)

    classify = subparsers.add_parser("classify", help="классификация диаграмм на P^{2n}")
    classify.add_argument("--space", default="P4", help="P2, P4 или P6")
    classify.add_argument("--no-pruning", action="store_true", help="без комбинаторного отсечения")
    classify.add_argument("--parallel", action="store_true", help="пул процессов")
    classify.add_argument("--workers", type=int, default=THREADS, help="число процессов для --parallel")
    classify.add_argument("--verify-golden", action="store_true", help="сверить P^4 с эталоном")
    add_format(classify)
    classify.set_defaults(func=cmd_classify)

    triple = subparsers.add_parser("triple-points", help="тройные точки ростка-треугольника")
    triple.add_argument("--chains", action="store_true", help="добавить прямые и двойные прямые")
    triple.add_argument("--max-order", type=int, default=3, help="макс. порядок для --chains")
    add_format(triple)
    triple.set_defaults(func=cmd_triple_points)

    cohomology = subparsers.add_parser("cohomology", help="когомологии Пуассона ростка")
    cohomology.add_argument("file")
    add_format(cohomology)
    cohomology.set_defaults(func=cmd_cohomology)

    render = subparsers.add_parser("render", help="диаграмма в формате DOT")
    render.add_argument("file")
    add_format(render, default="dot")
    render.set_defaults(func=cmd_render)

    stratum = subparsers.add_parser("stratum", help="страт диаграммы и вердикт")
    stratum.add_argument("file")
    stratum.add_argument("--space", default="P4", help="P2, P4, P6 или germ")
    add_format(stratum)
    stratum.set_defaults(func=cmd_stratum)

    runs = subparsers.add_parser("runs", help="журнал запусков")
    runs.add_argument("--hours", type=float, default=24)
    runs.add_argument("--export", metavar="PATH", help="экспорт запусков classify в CSV")
    add_format(runs)
    runs.set_defaults(func=cmd_runs)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа

    Returns:
        Код выхода: 0 - успех, 2 - разбор, 3 - комплекс не поддерживается,
        4 - ограничение размера, 5 - нарушено предусловие, 6 - эталон
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logger = RunLogger()
    try:
        validate_config()
        output = args.func(args, logger)
    except LogSympError as e:
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("\n⌨️  Прервано пользователем", file=sys.stderr)
        return 130
    except Exception as e:
        print(f"❌ Критическая ошибка: {e}", file=sys.stderr)
        if DEBUG:
            traceback.print_exc()
        return 1

    sys.stdout.write(output)
    if LOG_LEVEL >= 1 and args.command == "classify":
        logger.print_session_summary()
    return 0


if __name__ == "__main__":
    sys.exit(main())
