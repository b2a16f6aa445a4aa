"""Обработчики форматов вывода CLI"""

from handlers.base_handler import FormatHandler
from handlers.csv_handler import CsvFormatHandler
from handlers.dot_handler import DotFormatHandler
from handlers.json_handler import JsonFormatHandler
from handlers.text_handler import TextFormatHandler
from errors import UnsupportedFormat

FORMATS = {
    "json": JsonFormatHandler,
    "csv": CsvFormatHandler,
    "dot": DotFormatHandler,
    "text": TextFormatHandler,
}


def get_handler(name: str) -> FormatHandler:
    """Возвращает обработчик формата по имени"""
    if name not in FORMATS:
        raise UnsupportedFormat(f"неизвестный формат {name!r}, доступны: {', '.join(FORMATS)}")
    return FORMATS[name]()
