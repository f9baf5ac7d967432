import json
from pathlib import Path

import pytest

from src.main import parse_weight, run
from src.common.errors import ParseError

REPO_ROOT = Path(__file__).resolve().parents[1]
SL2 = ["--type", "A1", "--p", "5"]


@pytest.fixture(autouse=True)
def repo_cwd(monkeypatch):
    monkeypatch.chdir(REPO_ROOT)


def call(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, "--format", "json", *argv)
    assert code == 0
    return json.loads(out)


def test_parse_weight():
    assert parse_weight("1,-2") == (1, -2)
    assert parse_weight("8") == (8,)
    with pytest.raises(ParseError):
        parse_weight("1,x")


def test_d(capsys):
    assert call(capsys, *SL2, "d", "--weight", "8")[:2] == (0, "1")
    data = call_json(capsys, *SL2, "d", "--weight", "8", "--walls")
    assert data["n"] == [1]
    assert {w["n"] for w in data["walls"]} == {1, 2}


def test_ni_inside_levi(capsys):
    assert call(capsys, *SL2, "--I", "1", "ni", "--weight", "0")[:2] == (0, "2")
    assert call(capsys, *SL2, "ni", "--weight", "0")[:2] == (0, "1")


def test_orbit_rep_and_dot(capsys):
    assert call(capsys, *SL2, "--I", "1", "orbit-rep", "--weight", "13")[:2] == (0, "3")
    assert call(capsys, *SL2, "dot", "--element", "s[1,1]*s[1,0]", "--weight", "0")[:2] == (0, "10")


def test_uparrow_with_negative_weight(capsys):
    assert call(capsys, *SL2, "uparrow", "--mu=-2", "--lam", "10")[:2] == (0, "true")
    assert call(capsys, *SL2, "uparrow", "--mu", "8", "--lam", "0")[:2] == (0, "false")


def test_domexp_json(capsys):
    data = call_json(capsys, *SL2, "domexp", "--weight", "10")
    assert data["word"] == "5:1,0:1"
    assert data["prefix_targets"] == [[0], [8], [10]]


def test_mu(capsys):
    data = call_json(capsys, *SL2, "mu", "--s", "s[1,1]")
    assert data == {"lambda_star": [0], "mu": [4], "s": "s[1,1]"}


def test_tilt_product(capsys):
    data = call_json(capsys, *SL2, "tilt-product", "--word", "5:1,0:1")
    assert [t["label"] for t in data["zbar"]["terms"]] == [[-2], [0], [8], [10]]
    assert all(t["coeff"] == "1" for t in data["nabla"]["terms"])


def test_tilt_check(capsys):
    data = call_json(capsys, *SL2, "tilt-check", "--weight", "0", "--s", "s[1,1]")
    assert data["top_coeff"] == 1
    assert data["transwall"] == {"tag": "one-plus-lower", "parts": [[8]], "remainder": {"d_below": 1, "multiplicities": "unknown"}}


def test_translate_standard_inside_levi(capsys):
    data = call_json(capsys, *SL2, "--I", "1", "translate", "--s", "s[1,1]", "--direction", "onto",
                     "--label", "0", "--basis", "NABLA")
    assert data["basis"] == "NABLA"
    assert data["terms"] == [{"label": [4], "coeff": "2"}]


def test_theta_from_json_char(capsys):
    char = json.dumps({"basis": "ZBAR", "block": [0], "terms": [{"label": [0], "coeff": 1}]})
    data = call_json(capsys, *SL2, "theta", "--s", "s[1,1]", "--char", char)
    assert [t["label"] for t in data["terms"]] == [[0], [8]]


def test_sections(capsys):
    data = call_json(capsys, *SL2, "--I", "1", "sections", "--label", "0", "--basis", "NABLA", "--hom", "0")
    assert data["skeleton"]["sizes"] == [{"label": [0], "count": 1}]
    assert data["hom"] == {"label": [0], "deltabar": 1, "delta": 2}

    data = call_json(capsys, *SL2, "--I", "1", "sections", "--label", "0", "--basis", "NABLA",
                     "--s", "s[1,1]", "--transform", "theta", "--kind", "DELTA")
    assert data["skeleton"]["kind"] == "DELTA"
    assert data["skeleton"]["sizes"] == [{"label": [0], "count": 4}]


def test_table_then_peel(capsys, tmp_path):
    path = tmp_path / "a1.json"
    code, _, _ = call(capsys, *SL2, "table", "--d-min", "-1", "--d-max", "2", "--out", str(path))
    assert code == 0
    assert path.exists()
    data = call_json(capsys, *SL2, "peel", "--weight", "10", "--table", str(path))
    assert data["multiplicities"] == [
        {"label": [-2], "count": 1},
        {"label": [0], "count": 1},
        {"label": [10], "count": 1},
    ]


def test_verify_without_saving(capsys):
    code, out, _ = call(capsys, *SL2, "--I", "1", "verify", "--no-save", "--samples", "10")
    assert code == 0
    first = json.loads(out.splitlines()[0])
    assert first["check"] == "config"
    assert first["levis"] == [[1]]


def test_verify_history(capsys, history_file):
    code, _, _ = call(capsys, *SL2, "--I", "1", "verify", "--samples", "10", "--history-file", str(history_file))
    assert code == 0
    rows = call_json(capsys, "verify", "--history", "--history-file", str(history_file))
    assert len(rows) == 1
    assert rows[0]["passed"] is True


def test_preset_and_config_file(capsys, tmp_path):
    assert call(capsys, "--preset", "sl2-levi", "ni", "--weight", "0")[:2] == (0, "2")
    conf = tmp_path / "alcalc.conf"
    conf.write_text("# sl2 inside its Levi\ntype=A1\np=5\nI=1\n")
    assert call(capsys, "--config", str(conf), "ni", "--weight", "0")[:2] == (0, "2")
    # flags win over the file
    assert call(capsys, "--config", str(conf), "--I", "", "ni", "--weight", "0")[:2] == (0, "1")


class TestExitCodes:
    def test_domain_error(self, capsys):
        code, _, err = call(capsys, *SL2, "d", "--weight", "4")
        assert code == 1
        assert "WallPoint" in err

    def test_domain_error_as_json(self, capsys):
        code, _, err = call(capsys, *SL2, "--format", "json", "domexp", "--weight", "4")
        assert code == 1
        assert json.loads(err)["error"] == "NotRegular"

    def test_p_too_small(self, capsys):
        code, _, err = call(capsys, "--type", "A2", "--p", "2", "describe")
        assert code == 1
        assert "PTooSmall" in err

    @pytest.mark.parametrize("argv", [
        ["d", "--weight", "8"],
        [*SL2, "bogus"],
        [*SL2, "d"],
        ["--preset", "nope", *SL2, "describe"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert call(capsys, *argv)[0] == 64
