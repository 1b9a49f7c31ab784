import json

import pytest

from charscheme.builder import _data_dir
from charscheme.cli import main

IDEALS = _data_dir("ideals")
PRES = _data_dir("presentations")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce_text(capsys):
    code, out, _ = run(capsys, "reduce", "a b a", "--gens", "a,b")
    assert code == 0
    assert out.strip() == "t_ab*t_a - t_b"


def test_reduce_identity(capsys):
    assert run(capsys, "reduce", "e", "--gens", "a")[1].strip() == "2"


def test_reduce_json_is_stable(capsys):
    _, a, _ = run(capsys, "reduce", "a^-1 b c", "--gens", "a,b,c", "--format", "json")
    _, b, _ = run(capsys, "reduce", "a^-1 b c", "--gens", "a,b,c", "--format", "json")
    assert a == b
    data = json.loads(a)
    assert data["command"] == "reduce"
    assert data["flags"]["gens"] == "a,b,c"
    assert data["ring"][-1] == "t_abc"


def test_ideal_json(capsys):
    code, out, _ = run(capsys, "ideal", str(PRES / "trefoil.txt"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ring"] == ["t_a", "t_b", "t_ab"]
    assert "t_a - t_b" in data["generators"]


def test_ideal_rank_four_note(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("gens: a b c d\nrel: a b a^-1 b^-1\n")
    code, out, _ = run(capsys, "ideal", str(f), "--format", "json")
    assert code == 0
    assert "note" in json.loads(out)


def test_member_and_dim(capsys):
    code, out, _ = run(capsys, "member", "t_a - t_b", str(IDEALS / "trefoil_simple.json"))
    assert code == 0 and out.startswith("true")
    code, out, _ = run(capsys, "dim", str(IDEALS / "whitehead_triple_orbit.json"))
    assert code == 0 and out.strip() == "2"


def test_radical_member(capsys, tmp_path):
    f = tmp_path / "sq.json"
    f.write_text(json.dumps({"ring": ["x", "y"], "generators": ["x^2", "y"]}))
    code, out, _ = run(capsys, "radical-member", "x", str(f))
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "member", "x", str(f))
    assert out.startswith("false")


def test_intersect_and_quotient(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps({"ring": ["x", "y"], "generators": ["x"]}))
    b.write_text(json.dumps({"ring": ["x", "y"], "generators": ["y"]}))
    _, out, _ = run(capsys, "intersect", str(a), str(b))
    assert out.strip() == "x*y"
    ab = tmp_path / "ab.json"
    ab.write_text(json.dumps({"ring": ["x", "y"], "generators": ["x*y"]}))
    _, out, _ = run(capsys, "quotient", str(ab), str(b))
    assert out.strip() == "x"


def test_gb(capsys):
    code, out, _ = run(capsys, "gb", str(IDEALS / "trefoil_simple.json"))
    assert code == 0 and out.strip()


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "gb", str(IDEALS / "M2_I.json"), "--order", "lex", "--max-pairs", "1")
    assert code == 3
    assert "budget" in err


@pytest.mark.parametrize("argv", [
    ["reduce", "a z", "--gens", "a,b"],
    ["gb", "/no/such/file.json"],
    ["verify", "no_such_case"],
    ["frobnicate"],
    ["oracle", "--gens", "0"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "trefoil")
    assert code == 0
    assert "fail" not in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "z_z4", "--format", "json")
    assert code == 0
    assert {r["status"] for r in json.loads(out)["results"]} == {"pass"}


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--count", "50", "--seed", "7")
    assert code == 0
    assert "checked 50 pairs, 0 failures" in out
