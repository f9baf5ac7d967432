import json
from datetime import datetime, timedelta, timezone
from fractions import Fraction

import pytest

from src.common.config import CliConfig, load_presets, read_config_file, resolve_config
from src.common.errors import NotInCI, PTooSmall, ParseError, UsageError, WallPoint, exit_code_for
from src.common.fingerprint import fingerprint
from src.common.output import dumps_canonical, render, to_jsonable
from src.common.storage import MAX_RUNS, HistoryStore, write_json_atomic
from src.common.time import format_datetime, format_relative, hours_since, parse_iso

NOW = datetime(2026, 3, 10, 12, 0, tzinfo=timezone.utc)


class TestConfig:
    def write_presets(self, tmp_path):
        path = tmp_path / "presets.json"
        path.write_text(json.dumps({"presets": {"small": {"type": "A2", "p": 5, "box": 10}}}))
        return path

    def test_layering(self, tmp_path):
        presets = self.write_presets(tmp_path)
        conf = tmp_path / "alcalc.conf"
        conf.write_text("p = 7  # override the preset\nformat=json\n")
        cfg = resolve_config("small", conf, {"box": 12, "seed": None}, presets_path=presets)
        assert cfg.type_spec == "A2"
        assert cfg.p == 7
        assert cfg.box == 12
        assert cfg.seed == 0
        assert cfg.output_format == "json"

    def test_unknown_preset(self, tmp_path):
        with pytest.raises(UsageError):
            resolve_config("missing", presets_path=self.write_presets(tmp_path))

    def test_missing_presets_file_means_none(self, tmp_path):
        assert load_presets(tmp_path / "nothing.json") == {}

    def test_bad_config_lines(self, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("type A2\n")
        with pytest.raises(UsageError):
            read_config_file(conf)
        conf.write_text("colour=blue\n")
        with pytest.raises(UsageError):
            resolve_config(config_path=conf)
        conf.write_text("p=five\n")
        with pytest.raises(UsageError):
            resolve_config(config_path=conf)
        with pytest.raises(UsageError):
            read_config_file(tmp_path / "absent.conf")

    def test_require(self):
        with pytest.raises(UsageError):
            CliConfig(p=5).require()
        with pytest.raises(UsageError):
            CliConfig(type_spec="A1").require()
        assert CliConfig(type_spec="A1", p=5).require().p == 5


class TestHistoryStore:
    def test_record_and_reload(self, history_file):
        store = HistoryStore(history_file)
        store.record("abc", {"passed": True})
        store.save()

        reloaded = HistoryStore(history_file)
        runs = reloaded.runs("abc")
        assert len(runs) == 1
        assert runs[0]["passed"] is True
        assert runs[0]["fingerprint"] == "abc"
        assert reloaded.last_run() == runs[0]["recorded_at"]

    def test_runs_are_capped_per_key(self, history_file):
        store = HistoryStore(history_file)
        for i in range(MAX_RUNS + 3):
            store.record("abc", {"index": i})
        runs = store.runs("abc")
        assert len(runs) == MAX_RUNS
        assert {r["index"] for r in runs} == set(range(3, MAX_RUNS + 3))

    def test_corrupt_file_falls_back_to_defaults(self, history_file):
        history_file.write_text("{broken")
        store = HistoryStore(history_file)
        assert store.runs() == []
        assert store.last_run() is None

    def test_atomic_write_leaves_no_temp_files(self, tmp_path):
        target = tmp_path / "nested" / "out.json"
        write_json_atomic(target, {"b": 1, "a": [1, 2]}, ".out_")
        assert json.loads(target.read_text()) == {"a": [1, 2], "b": 1}
        write_json_atomic(target, {"a": 3}, ".out_")
        assert json.loads(target.read_text()) == {"a": 3}
        assert [p.name for p in target.parent.iterdir()] == ["out.json"]

    def test_failed_write_keeps_old_file(self, tmp_path):
        target = tmp_path / "out.json"
        write_json_atomic(target, {"a": 1}, ".out_")
        with pytest.raises(TypeError):
            write_json_atomic(target, {"a": object()}, ".out_")
        assert json.loads(target.read_text()) == {"a": 1}
        assert [p.name for p in tmp_path.iterdir()] == ["out.json"]


def test_fingerprint_is_stable_and_skips_none():
    a = fingerprint("verify", "A2", p=5, seed=0)
    assert a == fingerprint("verify", "A2", seed=0, p=5, levis=None)
    assert a != fingerprint("verify", "A2", p=7, seed=0)
    assert len(a) == 16


class TestTime:
    def test_parse_iso(self):
        assert parse_iso("2026-03-10T12:00:00") == NOW
        assert parse_iso("not a date") is None
        assert parse_iso(None) is None
        assert parse_iso("") is None
        assert parse_iso(datetime(2026, 3, 10, 12)) == NOW
        assert parse_iso(NOW) is NOW

    @pytest.mark.parametrize("delta,text", [
        (timedelta(seconds=10), "just now"),
        (timedelta(minutes=12), "12 minutes ago"),
        (timedelta(hours=3), "3 hours ago"),
        (timedelta(hours=30), "yesterday"),
        (timedelta(days=5), "5 days ago"),
        (timedelta(hours=-1), "in the future"),
    ])
    def test_format_relative(self, delta, text):
        assert format_relative(NOW - delta, now=NOW) == text

    def test_format_relative_never(self):
        assert format_relative(None) == "never"
        assert hours_since("2026-03-10T09:00:00+00:00", now=NOW) == 3

    def test_format_datetime(self):
        assert format_datetime(NOW) == "Mar 10, 2026 at 12:00 UTC"
        assert format_datetime("garbage") == "N/A"


class TestOutput:
    def test_canonical_json(self):
        assert dumps_canonical({"b": (1, 2), "a": Fraction(3, 2)}) == '{"a":"3/2","b":[1,2]}'
        assert to_jsonable({3, 1, 2}) == [1, 2, 3]

    def test_render_text(self):
        assert render(True) == "true"
        assert render((1, -2)) == "1,-2"
        assert render({"d": 1}) == "d: 1"
        assert render({"d": 1}, "json") == '{"d":1}'


def test_exit_codes():
    assert exit_code_for(None) == 0
    assert exit_code_for(WallPoint("on a wall")) == 1
    assert exit_code_for(NotInCI("outside")) == 1
    assert exit_code_for(PTooSmall("small")) == 1
    assert exit_code_for(ParseError("bad")) == 1
    assert exit_code_for(UsageError("flags")) == 64
    assert exit_code_for(RuntimeError("boom")) == 1


def test_error_details_are_json_ready():
    e = WallPoint("on a wall", weight=(4,), beta=1)
    assert e.to_dict() == {"error": "WallPoint", "message": "on a wall", "weight": [4], "beta": 1}
    assert e.weight == (4,)
    assert str(e) == "WallPoint: on a wall"
