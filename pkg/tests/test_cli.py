import json

from affmta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_reduce_and_bracket(capsys):
    code, out = run(capsys, "reduce", "e(1)e(2)")
    assert code == 0 and out.out.strip() == "0"
    code, out = run(capsys, "bracket", "f(2)", "e(-2)", "--level", "1")
    assert code == 0 and out.out.strip() == "2 - h(0)"
    code, out = run(capsys, "bracket", "e(1)", "f(-1)", "--level", "k")
    assert out.out.strip() == "k + h(0)"


def test_zhu(capsys):
    code, out = run(capsys, "zhu")
    assert code == 0 and out.out.startswith("dimension 5")


def test_unit(capsys):
    code, out = run(capsys, "unit", "--d", "1")
    assert code == 0 and "e(-1) (x) 1 (x) f(1)" in out.out


def test_exit_codes(capsys):
    assert run(capsys, "verify-unit", "--d", "1")[0] == 0
    assert run(capsys, "verify-unit", "--d", "2", "--regime", "exact", "--jobs", "1")[0] == 3
    assert run(capsys, "replay", "FIRSTREL")[0] == 2
    assert run(capsys, "replay", "THIRDREL")[0] == 3
    assert run(capsys, "verify-nonexistence", "--level", "-2", "--samples", "5")[0] == 0
    assert run(capsys, "audit-relations", "--window", "3")[0] == 2
    assert run(capsys, "audit-relations", "--restrict-replay")[0] == 0


def test_usage_errors(capsys):
    for argv in (["frobnicate"], ["verify-unit", "--d", "0"], ["verify-unit", "--d", "2", "--window", "3"],
                 ["bracket", "e(1)", "f(", "--level", "1"], ["replay", "--bind", "r"], ["replay", "NOPE"],
                 ["verify-nonexistence", "--level", "one"]):
        code, out = run(capsys, *argv)
        assert code == 1, argv
        assert out.err


def test_json_is_stable_across_jobs(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify-unit", "--d", "2..3", "--pairs", "both", "--format", "json"]
    main(argv + ["--jobs", "1", "--output", str(a)])
    main(argv + ["--jobs", "3", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert len(data) == 4 and all("metadata" in r for r in data)
    assert capsys.readouterr().out == ""


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0 and "verified" in out.out
