import json
import math

import numpy as np
import pytest

from polyshadow.cli import main, parse_pair, parse_range, parse_vector


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_volume_simplex_json(capsys):
    code, out, err = run(capsys, "volume", "simplex", "--n", "3", "--direction", "1,1,-1,-1", "--format", "json")
    assert code == 0 and "normalized" in err
    assert json.loads(out)["volume"] == pytest.approx(1.0)


def test_volume_cube_with_oracle(capsys):
    code, out, _ = run(capsys, "volume", "cube", "--n", "3", "--direction", "1,1,1", "--oracle", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["volume"] == pytest.approx(math.sqrt(3))
    assert any("oracle" in k for k in d)


def test_volume_planar(capsys):
    code, out, _ = run(capsys, "volume", "cube", "--n", "4", "--pair", "trig", "--planar", "--format", "json")
    assert code == 0 and json.loads(out)["volume"] == pytest.approx(1 / math.tan(math.pi / 8))


def test_non_zero_sum_simplex_is_usage_error(capsys):
    code, _, err = run(capsys, "volume", "simplex", "--n", "3", "--direction", "1,0,0,0")
    assert code == 2 and "zero-sum" in err
    code, out, _ = run(capsys, "volume", "simplex", "--n", "3", "--direction", "1,0,0,0", "--zero-sum",
                       "--format", "json")
    assert code == 0


def test_lp_csv(capsys):
    code, out, _ = run(capsys, "lp", "simplex", "--n", "2", "--p", "2", "--direction", "1,-1,0", "--format", "csv")
    rows = dict(line.split(",", 1) for line in out.strip().splitlines()[1:])
    assert code == 0 and float(rows["h_p^p"]) == pytest.approx(2.598076211353316)


def test_extremal_tables(capsys):
    code, out, _ = run(capsys, "extremal", "simplex-proj", "--n", "5", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["max"] == pytest.approx(0.125, abs=1e-12)
    assert d["min"] == pytest.approx(0.07216878364870323, abs=1e-12)
    code, out, _ = run(capsys, "extremal", "fp", "--m", "4", "--p", "3", "--format", "json")
    assert code == 0 and json.loads(out)["min"] == pytest.approx(0.5)


def test_verify_exit_codes(capsys, tmp_path):
    path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "nazarov", "--n", "3..4", "--out", str(path))
    assert code == 0 and "PASS" in out
    assert json.loads(path.read_text())["passed"] is True
    with pytest.raises(SystemExit) as e:
        main(["verify", "bogus"])
    assert e.value.code == 2


def test_section_emit(capsys, tmp_path):
    path = tmp_path / "poly.csv"
    code, out, _ = run(capsys, "section", "--n", "3", "--pair", "trig", "--emit", str(path), "--format", "json")
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "s,t" and len(lines) == 7
    assert json.loads(out)["mahler_product"] == pytest.approx(9.0)


def test_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("POLYSHADOW_SEED", "17")
    code, out, _ = run(capsys, "volume", "cube", "--n", "3", "--direction", "random", "--format", "json")
    a = json.loads(out)
    code, out, _ = run(capsys, "volume", "cube", "--n", "3", "--direction", "random", "--seed", "17", "--format", "json")
    assert a == json.loads(out) and a["seed"] == 17


def test_parsers(tmp_path):
    assert np.array_equal(parse_vector("e2", 3), [0, 1, 0])
    p = parse_pair("e1,-e3", 3)
    assert np.array_equal(p.v, [0, 0, -1])
    f = tmp_path / "pair.txt"
    f.write_text("1,0,0\n1,1,0\n")
    assert np.allclose(parse_pair(f"@{f}", 3).v, [0, 1, 0])
    assert parse_range("3..5") == (3, 5) and parse_range("4") == (4, 4)
    for bad in ("5..3", "x"):
        with pytest.raises(ValueError):
            parse_range(bad)
    with pytest.raises(ValueError):
        parse_vector("1,2", 3)
    with pytest.raises(ValueError):
        parse_pair("e1,e1", 3)
