from fractions import Fraction

import pytest

import utils
from errors import ParseError
from utils import LRUCache, format_rational, is_valid_order, is_valid_rational, parse_rational, parse_vertex


@pytest.mark.parametrize("value, expected", [
    (3, Fraction(3)),
    ("3/6", Fraction(1, 2)),
    (" -4/2 ", Fraction(-2)),
    (Fraction(5, 7), Fraction(5, 7)),
])
def test_parse_rational(value, expected):
    assert parse_rational(value) == expected


@pytest.mark.parametrize("value", [1.5, "1.5", "1e3", True, None, "", "1/0", "abc", [1]])
def test_parse_rational_rejects_inexact_values(value):
    assert not is_valid_rational(value)
    with pytest.raises(ParseError):
        parse_rational(value, "b01")


def test_format_rational():
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(0) == "0"


def test_is_valid_order():
    assert is_valid_order(0) and is_valid_order(5)
    assert not is_valid_order(-1)
    assert not is_valid_order(True)
    assert not is_valid_order(2.0)


def test_parse_vertex():
    assert parse_vertex(2, 3) == 2
    assert parse_vertex("1", 3) == 1
    for bad in [3, -1, "x", True, 1.0]:
        with pytest.raises(ParseError):
            parse_vertex(bad, 3)


def test_lru_cache_evicts_least_recently_used():
    cache = LRUCache(max_size=2)
    cache.put("a", 1)
    cache.put("b", 2)
    assert cache.get("a") == 1
    cache.put("c", 3)
    assert cache.get("b") is None
    assert cache.get("a") == 1 and cache.get("c") == 3
    assert cache.size() == 2
    assert (cache.hits, cache.misses) == (3, 1)
    assert cache.hit_rate() == 0.75

    cache.clear()
    assert cache.size() == 0 and cache.hits == 0


def test_log_respects_level(capsys, monkeypatch):
    monkeypatch.setattr(utils, "LOG_LEVEL", 1)
    utils.log("Test", "видно")
    utils.log("Test", "скрыто", level=2)
    err = capsys.readouterr().err
    assert "[Test] видно" in err
    assert "скрыто" not in err
