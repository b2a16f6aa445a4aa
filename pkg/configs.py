# configs.py
# Конфигурация logsymp: лимиты точной арифметики, поиск свидетелей, классификатор
import os
import sys
from pathlib import Path
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent
ENV_PATH = BASE_DIR / ".env"
if ENV_PATH.exists():
    load_dotenv(ENV_PATH)


def _env_flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("true", "1", "yes")


# ============================================================================
# ТОЧНАЯ ЛИНЕЙНАЯ АЛГЕБРА
# ============================================================================
# Максимальный размер матрицы (строки и столбцы)
MAX_MATRIX_SIZE = int(os.getenv("LOGSYMP_MAX_MATRIX_SIZE", 40))

# До этого размера пфаффиан считается разложением по первой строке,
# дальше - кососимметричным исключением
PFAFFIAN_EXPANSION_MAX = int(os.getenv("LOGSYMP_PFAFFIAN_EXPANSION_MAX", 8))

# ============================================================================
# ПОИСК СВИДЕТЕЛЕЙ (точки страта)
# ============================================================================
# Радиус перебора удваивается от 1 до этого предела
WITNESS_RADIUS_CAP = int(os.getenv("LOGSYMP_WITNESS_RADIUS_CAP", 2 ** 16))

# Сколько точек проверять на одном радиусе, если куб больше
WITNESS_POINTS_PER_RADIUS = int(os.getenv("LOGSYMP_WITNESS_POINTS_PER_RADIUS", 4096))

# Зерно для случайного предфильтра и выборки точек (детерминизм)
RANDOM_SEED = int(os.getenv("LOGSYMP_RANDOM_SEED", 20240601))

# ============================================================================
# КЛАССИФИКАЦИЯ
# ============================================================================
# Ограничение на n для P^{2n}
MAX_SPACE_N = int(os.getenv("LOGSYMP_MAX_SPACE_N", 3))

# Канонизация перебором всех перестановок - не больше 10 вершин
MAX_CANONICAL_VERTICES = int(os.getenv("LOGSYMP_MAX_CANONICAL_VERTICES", 10))

# Количество процессов для --parallel
THREADS = int(os.getenv("LOGSYMP_THREADS", os.cpu_count() or 1))

# Размер батча задач для asyncio.gather
BATCH_SIZE = int(os.getenv("LOGSYMP_BATCH_SIZE", 100))

# При LOG_LEVEL = 2 прогресс перебора печатается каждые N листьев
PROGRESS_EVERY = int(os.getenv("LOGSYMP_PROGRESS_EVERY", 500))

# ============================================================================
# КЭШИРОВАНИЕ
# ============================================================================
ENABLE_CACHE = _env_flag("LOGSYMP_ENABLE_CACHE", "True")
CACHE_SIZE = int(os.getenv("LOGSYMP_CACHE_SIZE", 4096))

# ============================================================================
# ЛОГИРОВАНИЕ
# ============================================================================
LOGS_DIR = Path(os.getenv("LOGSYMP_LOGS_DIR", str(BASE_DIR / "logs")))

# Сохранять ли записи о запусках в файл (папка создается при первой записи)
SAVE_RUNS_TO_FILE = _env_flag("LOGSYMP_SAVE_RUNS", "False")
RUNS_LOG_FILE = LOGS_DIR / "runs.log"

# Уровень детализации диагностики (stderr)
# 0 = ничего
# 1 = стандарт (этапы и итоги)
# 2 = максимум (+ каждый кандидат)
LOG_LEVEL = int(os.getenv("LOGSYMP_LOG_LEVEL", 1))

# ============================================================================
# DEBUG MODE
# ============================================================================
DEBUG = _env_flag("DEBUG", "False")


# ============================================================================
# ВЫВОД КОНФИГУРАЦИИ
# ============================================================================
def print_config_summary():
    """Выводит сводку конфигурации в stderr (stdout занят результатами)"""
    out = sys.stderr
    print("\n" + "=" * 80, file=out)
    print("⚙️  КОНФИГУРАЦИЯ LOGSYMP", file=out)
    print("=" * 80, file=out)
    print(f"🧮 Макс. размер матрицы: {MAX_MATRIX_SIZE}", file=out)
    print(f"🧮 Пфаффиан разложением до размера: {PFAFFIAN_EXPANSION_MAX}", file=out)
    print(f"\n🎯 ПОИСК СВИДЕТЕЛЕЙ:", file=out)
    print(f"   • Предел радиуса: {WITNESS_RADIUS_CAP}", file=out)
    print(f"   • Точек на радиус: {WITNESS_POINTS_PER_RADIUS}", file=out)
    print(f"   • Зерно: {RANDOM_SEED}", file=out)
    print(f"\n⚡ КЛАССИФИКАЦИЯ:", file=out)
    print(f"   • Макс. n: {MAX_SPACE_N}", file=out)
    print(f"   • Процессов: {THREADS}", file=out)
    print(f"   • Размер батча: {BATCH_SIZE}", file=out)
    print(f"💾 КЭШИРОВАНИЕ: {'✅ Включено' if ENABLE_CACHE else '❌ Выключено'}", file=out)
    if ENABLE_CACHE:
        print(f"   • Размер: {CACHE_SIZE}", file=out)
    print(f"\n📝 ЛОГИРОВАНИЕ:", file=out)
    print(f"   • Уровень: {LOG_LEVEL}", file=out)
    print(f"   • Сохранение запусков: {'Да' if SAVE_RUNS_TO_FILE else 'Нет'} ({RUNS_LOG_FILE})", file=out)
    print("=" * 80 + "\n", file=out)


def validate_config():
    """Проверяет корректность конфигурации"""
    errors = []
    warnings = []

    if MAX_MATRIX_SIZE < 2:
        errors.append("LOGSYMP_MAX_MATRIX_SIZE должен быть >= 2")

    if PFAFFIAN_EXPANSION_MAX < 2:
        errors.append("LOGSYMP_PFAFFIAN_EXPANSION_MAX должен быть >= 2")

    if WITNESS_RADIUS_CAP < 1:
        errors.append("LOGSYMP_WITNESS_RADIUS_CAP должен быть >= 1")

    if WITNESS_POINTS_PER_RADIUS < 1:
        errors.append("LOGSYMP_WITNESS_POINTS_PER_RADIUS должен быть >= 1")

    if THREADS < 1:
        errors.append("LOGSYMP_THREADS должен быть >= 1")

    if BATCH_SIZE < 1:
        errors.append("LOGSYMP_BATCH_SIZE должен быть >= 1")

    if PROGRESS_EVERY < 1:
        errors.append("LOGSYMP_PROGRESS_EVERY должен быть >= 1")

    if MAX_CANONICAL_VERTICES > 10:
        warnings.append("LOGSYMP_MAX_CANONICAL_VERTICES > 10: перебор 11! перестановок очень медленный")

    if MAX_SPACE_N > 3:
        warnings.append("LOGSYMP_MAX_SPACE_N > 3: классификация для P^8 не поддерживается")

    if PFAFFIAN_EXPANSION_MAX > 12:
        warnings.append("LOGSYMP_PFAFFIAN_EXPANSION_MAX > 12: разложение растет как (n-1)!!")

    if errors:
        print("\n❌ КРИТИЧЕСКИЕ ОШИБКИ КОНФИГУРАЦИИ:", file=sys.stderr)
        for error in errors:
            print(f"   • {error}", file=sys.stderr)
        raise ValueError("Исправьте ошибки конфигурации перед запуском")

    if warnings:
        print("\n⚠️  ПРЕДУПРЕЖДЕНИЯ КОНФИГУРАЦИИ:", file=sys.stderr)
        for warning in warnings:
            print(f"   • {warning}", file=sys.stderr)

    return True


if __name__ == "__main__":
    print_config_summary()
    try:
        validate_config()
        print("✅ Конфигурация валидна", file=sys.stderr)
    except ValueError as e:
        print(f"\n❌ {e}", file=sys.stderr)
