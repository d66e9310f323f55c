import json

import pytest

from trinperm.cli import EXIT_DISAGREE, EXIT_OK, EXIT_USAGE, main, read_poly
from trinperm.mvpoly import P


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pp_check_text(capsys):
    code, out, _ = run(capsys, "pp-check", "--n", "2", "--a", "0x1", "--b", "0x1:0x0")
    assert code == EXIT_OK
    assert "all agree: true" in out and "PP=true" in out


def test_pp_check_not_pp(capsys):
    code, out, _ = run(capsys, "pp-check", "--n", "2", "--a", "0x2", "--b", "0x2:0x0", "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["command"] == "pp-check"
    assert [r["pp"] for r in d["results"] if "pp" in r] == [False, False, False]
    assert d["summary"]["fail"] == 0


@pytest.mark.parametrize("argv", [
    ["pp-check", "--n", "2", "--a", "0x1", "--b", "0x1z"],
    ["pp-check", "--n", "2", "--a", "0x0", "--b", "0x1:0x0"],
    ["pp-check", "--n", "2"],
    ["replay", "--stages", "foo"],
    ["verify-theorem"],
    ["poly", "gcd", "a+1", "--var", "a"],
    ["poly", "resultant", "a^", "a", "--var", "a"],
    ["poly", "gcd", "a*b+1", "a+1", "--var", "a"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["pp-check", "--method", "bogus"])
    assert exc.value.code == EXIT_USAGE


def test_verify_theorem_json_is_byte_stable(capsys):
    argv = ["verify-theorem", "--n", "3", "--json", "--no-timings"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == EXIT_OK and first == second
    d = json.loads(first)
    assert d["summary"] == {"pass": 2, "fail": 0, "wall_ms": 0.0}
    assert d["results"][1]["pp_count"] == 3


def test_poly_tools(capsys):
    assert run(capsys, "poly", "resultant", "@E2", "@E3", "--var", "a")[1].strip() == "b1^17*k^2"
    assert run(capsys, "poly", "gcd", "a^2+1", "a+1", "--var", "a")[1].strip() == "a+1"
    code, out, _ = run(capsys, "poly", "pseudo-rem", "@h1+b1^8*@h1p", "@h2", "--var", "k")
    assert (code, out.strip()) == (EXIT_OK, "0")


def test_read_poly_references():
    assert read_poly("@E2+@E2").is_zero()
    assert read_poly("a*b1") == P("a*b1")


def test_replay_single_stage(capsys):
    code, out, _ = run(capsys, "replay", "--stages", "base_field", "--json", "--no-timings")
    assert code == EXIT_OK
    d = json.loads(out)
    assert {r["stage"] for r in d["results"]} == {"base_field"}
    assert all(r["millis"] == 0.0 for r in d["results"])


def test_moduli(capsys):
    code, out, _ = run(capsys, "moduli")
    assert code == EXIT_OK and out.strip()


def test_disagreement_exits_2(capsys, monkeypatch):
    import trinperm.cli as cli
    monkeypatch.setattr(cli, "is_pp_mu", lambda inst: False)
    code, out, _ = run(capsys, "pp-check", "--n", "2", "--a", "0x1", "--b", "0x1:0x0")
    assert code == EXIT_DISAGREE == 2
    assert "all agree: false" in out
