import json

from hnnkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce(capsys):
    code, out, _ = run(capsys, "--m", "2", "--n", "3", "reduce", "a^-1 b^3 a")
    assert code == 0
    assert out == "b^2\n"


def test_icc_not_icc_text(capsys):
    code, out, _ = run(capsys, "--m", "2", "--n", "2", "icc")
    assert code == 0
    assert out == "NOT_ICC witness: b^2\n"


def test_domj(capsys):
    code, out, _ = run(capsys, "--m", "2", "--n", "3", "domj", "--j", "2")
    assert code == 0
    assert out == "9\n"


def test_normal_and_len(capsys):
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "normal", "b a b^5")
    assert out == "b^7 a b\n"
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "len", "a^-1 b a")
    assert out == "2\n"


def test_eq(capsys):
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "eq", "a b^2 a^-1", "b^3")
    assert out == "true\n"
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "eq", "b", "b^2")
    assert out == "false\n"


def test_orbit_sorted(capsys):
    _, out, _ = run(capsys, "--m", "2", "--n", "-2", "orbit", "b^2", "--radius", "2")
    assert out == "b^-2\nb^2\n"


def test_folner_with_ratio(capsys):
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "folner", "--k", "10", "--gamma", "a")
    lines = out.strip().splitlines()
    assert lines[0].startswith("exponents: ")
    assert len(lines[0].split()) == 12
    assert lines[1] == "ratio: 2/9"


def test_classify_and_fixed(capsys):
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "classify", "a")
    assert out == "HYPERBOLIC translation_length=1\n"
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "classify", "b^3")
    assert out == "ELLIPTIC fixes 1\n"
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "fixed", "b", "--radius", "1")
    assert out == "1\ntouches_boundary: false\n"


def test_witness_unbounded(capsys):
    _, out, _ = run(capsys, "--m", "4", "--n", "2", "witness-unbounded")
    lines = out.strip().splitlines()
    assert lines[0] == "gamma: b^2"
    assert lines[1:4] == ["1", "a", "a^2"]


def test_escape(capsys):
    _, out, _ = run(capsys, "--m", "2", "--n", "3", "escape", "b^3", "--max", "10")
    assert out == "2\n"


def test_escape_hypothesis_violation_exit_2(capsys):
    code, _, err = run(capsys, "--m", "4", "--n", "2", "escape", "b^2", "--max", "5")
    assert code == 2
    assert err.startswith("error:") and err.count("\n") == 1


def test_parse_error_exit_1(capsys):
    code, _, err = run(capsys, "--m", "2", "--n", "3", "reduce", "c")
    assert code == 1
    assert err.startswith("error:") and err.count("\n") == 1


def test_missing_group_exit_1(capsys):
    code, _, err = run(capsys, "reduce", "b")
    assert code == 1
    assert "group" in err


def test_bad_flag_exit_1(capsys):
    code, _, err = run(capsys, "--m", "x", "--n", "3", "reduce", "b")
    assert code == 1
    assert err.count("\n") == 1


def test_zd_mode(capsys):
    _, out, _ = run(capsys, "--matrix", "2,1;1,1", "reduce", "t^-1 e1 e2 t")
    assert out == "e1^3 e2^2\n"
    code, out, _ = run(capsys, "--matrix", "0,-1;1,1", "icc")
    assert code == 0 and out.startswith("NOT_ICC witness: ")


def test_zd_rejects_bs_only_commands(capsys):
    code, _, err = run(capsys, "--matrix", "2,1;1,1", "domj", "--j", "2")
    assert code == 1
    assert "BS mode" in err


def test_json_round_trips(capsys):
    cases = [
        (["--m", "2", "--n", "3", "--json", "reduce", "a^-1 b^3 a"], {"word": "b^2"}),
        (["--m", "2", "--n", "3", "--json", "eq", "b", "b"], {"equal": True}),
        (["--m", "2", "--n", "3", "--json", "len", "a"], {"length": 1}),
        (
            ["--m", "2", "--n", "2", "--json", "icc"],
            {"status": "NOT_ICC", "witness": ["b^2"], "evidence": None},
        ),
        (["--m", "2", "--n", "3", "--json", "domj", "--j", "2"], {"generator": 9}),
        (["--m", "2", "--n", "3", "--json", "escape", "b", "--max", "6"], {"exponent": 1}),
    ]
    for argv, expected in cases:
        code = main(argv)
        out, _ = capsys.readouterr()
        assert code == 0
        assert json.loads(out) == expected


def test_json_folner_ratio(capsys):
    code = main(["--m", "2", "--n", "3", "--json", "folner", "--k", "10", "--gamma", "a"])
    out, _ = capsys.readouterr()
    data = json.loads(out)
    assert code == 0
    assert data["k"] == 10
    assert data["ratio"] == "2/9"
    assert data["exponents"][0] == 2 * 3**11


def test_tree_dot_output(capsys):
    code, out, _ = run(capsys, "--m", "2", "--n", "3", "tree-dot", "--radius", "1")
    assert code == 0
    assert out.startswith("digraph")
    assert '"a^-1" -> "1";' in out


def test_byte_identical_repeat_runs(capsys):
    argv = ["--m", "2", "--n", "3", "orbit", "b^3", "--radius", "3"]
    main(argv)
    first, _ = capsys.readouterr()
    main(argv)
    second, _ = capsys.readouterr()
    assert first == second
    argv = ["--m", "2", "--n", "3", "tree-dot", "--radius", "2", "--gamma", "b^3"]
    main(argv)
    first, _ = capsys.readouterr()
    main(argv)
    second, _ = capsys.readouterr()
    assert first == second
