import json

import pytest

from rmtk import __version__
from rmtk.cli import run

FAST = [
    ["sample", "--beta", "2", "--size", "4", "--draws", "2", "--seed", "7"],
    ["sample", "--beta", "4", "--size", "5", "--histogram", "4", "--range=-3,3"],
    ["sample", "--ensemble", "wishart", "--size", "5", "--p", "10"],
    ["density", "--points", "11"],
    ["density", "--quartic-t=-1/2", "--points", "11"],
    ["density", "--mp-u", "4", "--points", "11"],
    ["spacing", "--size", "40", "--draws", "3", "--bins", "6"],
    ["ortho", "--N", "4"],
    ["gap", "--points", "6", "--m", "32"],
    ["tw", "--points", "4", "--m", "32"],
    ["maps", "--mu", "4,4", "--t-order", "1"],
    ["toprec", "--g", "0", "--n", "1", "--t-order", "1", "--mu-max", "3"],
    ["angular", "--X", "0,1", "--Y", "0,2", "--mc-samples", "500"],
]


def _run(tmp_path, argv, fmt=None, name="out"):
    out = tmp_path / name
    extra = ["--format", fmt] if fmt else []
    code = run(argv + extra + ["--out", str(out)])
    return code, out.read_text() if out.exists() else None


def test_maps_example(tmp_path):
    code, text = _run(tmp_path, ["maps", "--mu", "4", "--t-order", "0"])
    assert code == 0
    doc = json.loads(text)
    assert doc["mu"] == [4]
    rows = {r["g"]: (r["coeff_num"], r["coeff_den"]) for r in doc["table"]}
    assert rows == {0: (2, 1), 1: (1, 1)}


def test_bogus_subcommand(capsys):
    assert run(["bogus"]) == 2


def test_unknown_flag(capsys):
    assert run(["gap", "--bogus", "1"]) == 2
    assert "--bogus" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["sample", "--size", "x"], "--size"),
        (["sample", "--size", "0"], "--size"),
        (["sample", "--beta", "3"], "--beta"),
        (["sample", "--seed", "-1"], "--seed"),
        (["angular", "--X", "0,0", "--Y", "0,1"], "--X"),
        (["density", "--mp-u", "1/2"], "--mp-u"),
        (["toprec", "--g", "1", "--n", "2", "--mu", "2"], "--mu"),
        (["tw", "--s-min", "-20"], "--s-min"),
    ],
)
def test_usage_errors_name_flag(argv, flag, capsys):
    assert run(argv) == 2
    assert flag in capsys.readouterr().err


def test_unwritable(tmp_path, capsys):
    assert run(["gap", "--points", "5", "--out", str(tmp_path / "missing" / "x.csv")]) == 3
    assert "cannot write" in capsys.readouterr().err


def test_deterministic(tmp_path):
    argv = ["sample", "--beta", "2", "--size", "4", "--draws", "1", "--seed", "7"]
    a = _run(tmp_path, argv, name="a")[1]
    b = _run(tmp_path, argv, name="b")[1]
    assert a == b
    assert "# beta,N,seed,draw\n# 2,4,7,0\n" in a
    assert len([ln for ln in a.splitlines() if not ln.startswith("#")]) == 4


@pytest.mark.parametrize("argv", FAST, ids=lambda a: a[0])
def test_csv_header(tmp_path, argv):
    code, text = _run(tmp_path, argv, "csv")
    assert code == 0
    lines = text.split("\n")
    assert lines[0] == f"# rmtk {__version__}"
    assert lines[1] == f"# subcommand: {argv[0]}"
    assert lines[2].startswith("# params: ")
    json.loads(lines[2][len("# params: "):])
    assert lines[3].startswith("# seed: ")
    assert "\r" not in text and text.endswith("\n")


@pytest.mark.parametrize("argv", FAST, ids=lambda a: a[0])
def test_json_header_roundtrip(tmp_path, argv):
    code, text = _run(tmp_path, argv, "json")
    assert code == 0
    doc = json.loads(text)
    h = doc["header"]
    assert h["version"] == __version__ and h["subcommand"] == argv[0]
    assert isinstance(h["params"], dict) and isinstance(h["seed"], int)
    assert json.loads(json.dumps(doc)) == doc


def test_rationals_in_header(tmp_path):
    _, text = _run(tmp_path, ["density", "--quartic-t=-1/2", "--points", "5"], "json")
    assert json.loads(text)["header"]["params"]["quartic_t"] == {"num": -1, "den": 2}


def test_ortho_schema(tmp_path):
    _, text = _run(tmp_path, ["ortho", "--N", "3"])
    doc = json.loads(text)
    assert set(doc) == {"header", "gamma", "S", "h", "ZN"}
    assert doc["gamma"][2] == pytest.approx(2**0.5)
    assert len(doc["ZN"]) == 3


def test_toprec_schema(tmp_path):
    _, text = _run(tmp_path, ["toprec", "--g", "1", "--n", "1", "--t-order", "1", "--mu", "4"])
    rows = json.loads(text)["coefficients"]
    assert [(r["g"], r["n"], r["mu"], r["q"], r["num"], r["den"]) for r in rows] == [(1, 1, [4], 0, 1, 1), (1, 1, [4], 1, 15, 1)]


def test_angular_schema(tmp_path):
    _, text = _run(tmp_path, ["angular", "--X", "0,1", "--Y", "0,2", "--mc-samples", "2000"])
    doc = json.loads(text)
    assert abs(doc["Z_formula"] - doc["Z_mc"]) < 4 * doc["stderr"]
    assert [sum(r) for r in doc["morozov"]] == pytest.approx([1, 1], abs=1e-12)


def test_seed_changes_output(tmp_path):
    a = _run(tmp_path, ["sample", "--size", "3", "--seed", "1"], name="a")[1]
    b = _run(tmp_path, ["sample", "--size", "3", "--seed", "2"], name="b")[1]
    assert a != b


def test_selftest(tmp_path):
    code, text = _run(tmp_path, ["selftest"])
    assert code == 0
    assert text.count("PASS criterion") == 5


def test_potential_file(tmp_path):
    from rmtk.model import Potential

    path = tmp_path / "v.json"
    path.write_text(Potential.from_terms({2: 1, 4: 1}, "rational").to_json())
    code, text = _run(tmp_path, ["density", "--potential", str(path), "--points", "21"], name="d")
    assert code == 0
    rows = [ln.split(",") for ln in text.splitlines() if not ln.startswith("#")][1:]
    assert max(float(r[1]) for r in rows) > 0
    code, text = _run(tmp_path, ["ortho", "--potential", str(path), "--N", "4"], name="o")
    assert code == 0 and json.loads(text)["S"][0] == 0.0
    assert run(["ortho", "--potential", str(tmp_path / "missing.json")]) == 2
