from decimal import Decimal, localcontext

import pytest

from thaicurate.manifest import (
    ManifestEntry,
    ManifestParseError,
    display_hours,
    read_manifest,
    stats,
    write_manifest,
)


def _entry(path="a.wav", duration="1.0", text="สวัสดี", **kw):
    return ManifestEntry(path, duration, text, **kw)


def test_entry_validation():
    with pytest.raises(ValueError):
        ManifestEntry("", "1.0", "x")
    with pytest.raises(ValueError):
        ManifestEntry("a.wav", "-1", "x")
    assert _entry().duration == Decimal("1.0")


def test_read_valid(tmp_path):
    path = tmp_path / "m.jsonl"
    path.write_text(
        '{"audio_filepath": "a.wav", "duration": 1.5, "text": "ก"}\n'
        '{"audio_filepath": "b.wav", "duration": 2, "text": "ข", "source": "s1"}\n'
        '{"audio_filepath": "c.wav", "duration": 0.25, "text": "ค", "dialect": "isan"}\n',
        encoding="utf-8",
    )
    result = read_manifest(path)
    assert [e.audio_filepath for e in result.entries] == ["a.wav", "b.wav", "c.wav"]
    assert result.entries[0].duration == Decimal("1.5")
    assert result.entries[1].source == "s1"
    assert result.entries[2].dialect == "isan"
    assert result.errors == []


def test_read_empty_file(tmp_path):
    path = tmp_path / "m.jsonl"
    path.write_text("", encoding="utf-8")
    assert read_manifest(path).entries == []


def test_missing_field_fail_fast(tmp_path):
    path = tmp_path / "m.jsonl"
    path.write_text(
        '{"audio_filepath": "a.wav", "duration": 1.5, "text": "ก"}\n'
        '{"audio_filepath": "b.wav", "text": "ข"}\n',
        encoding="utf-8",
    )
    with pytest.raises(ManifestParseError) as exc:
        read_manifest(path)
    assert exc.value.line_no == 2


def test_skip_and_collect(tmp_path):
    path = tmp_path / "m.jsonl"
    path.write_text(
        'not json\n'
        '{"audio_filepath": "a.wav", "duration": 1, "text": "ก"}\n'
        '{"audio_filepath": "", "duration": 1, "text": "ข"}\n',
        encoding="utf-8",
    )
    result = read_manifest(path, fail_fast=False)
    assert len(result.entries) == 1
    assert [e.line_no for e in result.errors] == [1, 3]


def test_roundtrip_identity(tmp_path):
    entries = [
        _entry("a.wav", "1.25", "หนึ่ง", source="s"),
        _entry("b.wav", "7.4845", "สอง", dialect="isan"),
        _entry("c.wav", "3", "สาม"),
    ]
    path = tmp_path / "out.jsonl"
    write_manifest(entries, path)
    back = read_manifest(path).entries
    assert back == entries


def test_write_field_order(tmp_path):
    path = tmp_path / "out.jsonl"
    write_manifest([_entry("a.wav", "1.5", "ก", source="s", dialect="d")], path)
    line = path.read_text(encoding="utf-8").strip()
    assert line.index('"audio_filepath"') < line.index('"duration"')
    assert line.index('"duration"') < line.index('"text"')
    assert line.index('"text"') < line.index('"source"')
    assert line.index('"source"') < line.index('"dialect"')


def test_stats_grouping_and_exactness():
    entries = [
        _entry("a", "1800", "x", source="s1"),
        _entry("b", "1800", "x", source="s1"),
        _entry("c", "900", "x", source="s2"),
        _entry("d", "0.1", "x"),
    ]
    report = stats(entries, group_key="source")
    by_key = {g.key: g for g in report.groups}
    assert by_key["s1"].hours == Decimal("1")
    assert by_key["s1"].utterances == 2
    assert by_key["s2"].hours == Decimal("0.25")
    assert "(none)" in by_key
    assert report.total_utterances == 4
    with localcontext() as ctx:
        ctx.prec = 50
        assert sum(g.hours for g in report.groups) == report.total_hours
    assert sum(g.utterances for g in report.groups) == report.total_utterances


def test_stats_without_grouping():
    report = stats([_entry("a", "3600", "x"), _entry("b", "1800", "x")])
    assert len(report.groups) == 1
    assert report.groups[0].key == "all"
    assert report.total_hours == Decimal("1.5")


def test_stats_empty():
    report = stats([])
    assert report.total_hours == 0
    assert report.total_utterances == 0
    assert report.groups == []


def test_stats_no_float_drift():
    # 0.1 hours each in seconds; binary floats would drift over 1000 adds
    entries = (_entry(f"{i}.wav", "360", "x") for i in range(1000))
    report = stats(entries)
    assert report.total_hours == Decimal("100")


def test_display_rounding_half_up():
    assert display_hours(Decimal("1.005")) == "1.01"
    assert display_hours(Decimal("302.99")) == "302.99"
    assert display_hours(Decimal("10999.1"), places=1) == "10999.1"


def test_bad_group_key():
    with pytest.raises(ValueError):
        stats([], group_key="speaker")


def test_format_table_contains_totals():
    table = stats([_entry("a", "3600", "x", source="s1")], "source").format_table()
    assert "TOTAL" in table
    assert "s1" in table
