import logging

import pytest

from arrkit_topology import Arrangement

from arrkit_cli.cache import ResultCache, cache_key


@pytest.fixture
def lines():
    return Arrangement.from_coefficients("two lines", [(1, 0, 0), (0, 1, 0)], ambient_dim=2)


def test_key_depends_on_everything(lines):
    other = Arrangement.from_coefficients("other", [(1, 0, 0), (1, 1, 0)], ambient_dim=2)
    base = cache_key(lines, "charvar", {"p": 2})
    assert base == cache_key(lines.with_name("renamed"), "charvar", {"p": 2})
    assert base != cache_key(other, "charvar", {"p": 2})
    assert base != cache_key(lines, "charvar", {"p": 3})
    assert base != cache_key(lines, "hall", {"p": 2})
    assert base != cache_key(lines, "charvar", {"p": 2}, version="999")


def test_hits_after_first_store(tmp_path, lines):
    cache = ResultCache(tmp_path)
    calls = []

    def compute():
        calls.append(1)
        return {"b1": 21, "by_depth": {1: 15}}

    first = cache.get_or_compute(lines, "betti-cover", {"N": 2}, compute)
    second = cache.get_or_compute(lines, "betti-cover", {"N": 2}, compute)
    assert first == second == {"b1": 21, "by_depth": {"1": 15}}
    assert len(calls) == 1
    assert (cache.hits, cache.misses) == (1, 1)
    assert len(list(tmp_path.rglob("*.json"))) == 1
    assert not list(tmp_path.rglob("*.tmp"))


def test_corrupt_entry_is_recomputed(tmp_path, lines, caplog):
    cache = ResultCache(tmp_path)
    cache.get_or_compute(lines, "hall", {}, lambda: {"delta_S3": 15})
    (entry,) = tmp_path.rglob("*.json")
    entry.write_text("{not json", encoding="utf-8")
    with caplog.at_level(logging.WARNING, logger="arrkit_cli.cache"):
        value = cache.get_or_compute(lines, "hall", {}, lambda: {"delta_S3": 16})
    assert value == {"delta_S3": 16}
    assert "corrupt" in caplog.text


def test_disabled_cache_always_computes(lines):
    cache = ResultCache(None)
    values = iter([1, 2])
    assert cache.get_or_compute(lines, "x", {}, lambda: next(values)) == 1
    assert cache.get_or_compute(lines, "x", {}, lambda: next(values)) == 2


def test_version_bump_invalidates(tmp_path, lines):
    ResultCache(tmp_path, version="1").get_or_compute(lines, "x", {}, lambda: "old")
    assert ResultCache(tmp_path, version="2").get_or_compute(lines, "x", {}, lambda: "new") == "new"
    assert ResultCache(tmp_path, version="1").get_or_compute(lines, "x", {}, lambda: "newer") == "old"
