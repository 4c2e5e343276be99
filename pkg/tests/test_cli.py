"""End-to-end checks of the command line: output text and exit codes."""

import json

import pytest

from repwords.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- classify ---------------------------------------------------------------


def test_classify_admissible(capsys):
    code, out, _ = run(capsys, "classify", "2", "3", "1")
    assert code == 0
    assert out == "admissible F=-31/50\n"


def test_classify_inadmissible(capsys):
    code, out, _ = run(capsys, "classify", "2", "5", "1")
    assert code == 0
    assert out == "inadmissible F=3/10\n"


def test_classify_rejects_bad_triple(capsys):
    code, _, err = run(capsys, "classify", "1", "3", "1")
    assert code == 2
    assert "error:" in err


# -- search -----------------------------------------------------------------


def test_search_csv(capsys):
    code, out, err = run(
        capsys,
        *"search --q 2 --n 3 --l 1 --b-lo 2 --b-hi 30".split(),
    )
    assert code == 0 and err == ""
    assert out.splitlines() == [
        "q,n,l,b,y,c,w",
        "2,3,1,18,49,7,(7)",
        "2,3,1,22,39,3,(3)",
        "2,3,1,22,78,12,(12)",
        "2,3,1,30,133,19,(19)",
    ]


def test_search_jsonl(capsys):
    code, out, _ = run(
        capsys,
        *"search --q 2 --n 3 --l 1 --b-lo 2 --b-hi 20 --format jsonl".split(),
    )
    assert code == 0
    (line,) = out.splitlines()
    obj = json.loads(line)
    assert obj == {
        "q": "2",
        "n": "3",
        "l": "1",
        "b": "18",
        "y": "49",
        "c": "7",
        "w": ["7"],
    }


def test_search_rejects_bad_range(capsys):
    code, _, err = run(capsys, *"search --q 2 --n 3 --l 1 --b-lo 30 --b-hi 2".split())
    assert code == 2
    assert "error:" in err


def test_search_checkpoint_resume(capsys, tmp_path):
    cp = str(tmp_path / "run.jsonl")
    args = "search --q 2 --n 3 --l 1 --b-lo 2 --b-hi 30 --checkpoint".split()
    code1, out1, _ = run(capsys, *args, cp)
    code2, out2, _ = run(capsys, *args, cp)
    assert code1 == code2 == 0
    assert out1 == out2
    assert '"triple"' in (tmp_path / "run.jsonl").read_text()


def test_search_foreign_checkpoint(capsys, tmp_path):
    p = tmp_path / "other.jsonl"
    p.write_text('{"triple": ["3", "2", "1"]}\n')
    code, _, err = run(
        capsys, *"search --q 2 --n 3 --l 1 --b-lo 2 --b-hi 9 --checkpoint".split(), str(p)
    )
    assert code == 3
    assert "checkpoint" in err


def test_search_unresolved_warning(capsys):
    code, out, err = run(
        capsys,
        *"search --q 2 --n 2 --l 59 --b-lo 5 --b-hi 5 --factor-budget 1".split(),
    )
    assert code == 0
    assert out.splitlines() == ["q,n,l,b,y,c,w"]
    assert "base 5 unresolved" in err


# -- generate ---------------------------------------------------------------


def test_generate_sporadic_family(capsys):
    code, out, _ = run(capsys, *"generate --triple 2,3,1 --count 2".split())
    assert code == 0
    assert out.splitlines() == [
        "q,n,l,b,y,c,w",
        "2,3,1,22,39,3,(3)",
        "2,3,1,313,543,3,(3)",
    ]


def test_generate_single_word_family(capsys):
    code, out, _ = run(capsys, *"generate --triple 7,2,1 --count 2".split())
    assert code == 0
    assert out.splitlines() == [
        "q,n,l,b,y,c,w",
        "7,2,1,127,2,1,(1)",
        "7,2,1,2186,3,1,(1)",
    ]


def test_generate_22(capsys):
    code, out, _ = run(capsys, *"generate --triple 2,2,1 --count 3".split())
    assert code == 0
    assert out.splitlines() == [
        "q,n,l,b,y,c,w",
        "2,2,1,24,10,4,(4)",
        "2,2,1,48,14,4,(4)",
        "2,2,1,120,22,4,(4)",
    ]


def test_generate_jsonl(capsys):
    code, out, _ = run(
        capsys, *"generate --triple 2,3,1 --count 1 --format jsonl".split()
    )
    assert code == 0
    assert json.loads(out)["b"] == "22"


def test_generate_no_family(capsys):
    code, _, err = run(capsys, *"generate --triple 2,5,1 --count 1".split())
    assert code == 2
    assert "no infinite family" in err


def test_generate_count_must_be_positive(capsys):
    code, _, err = run(capsys, *"generate --triple 2,3,1 --count 0".split())
    assert code == 2
    assert "--count" in err


def test_generate_bijective(capsys):
    code, out, _ = run(
        capsys, *"generate --triple 2,2,3 --system bijective --count 2".split()
    )
    assert code == 0
    assert out.splitlines() == [
        "b,l,y,w",
        '2,3,9,"(1,2,1)"',
        '3,3,28,"(2,3,1)"',
    ]


def test_generate_bijective_needs_22(capsys):
    for triple in ("2,3,2", "2,2,1"):
        code, _, err = run(
            capsys, "generate", "--triple", triple, "--system", "bijective", "--count", "1"
        )
        assert code == 2
        assert "bijective" in err


def test_generate_fibonacci(capsys):
    code, out, _ = run(
        capsys, *"generate --triple 2,2,1 --system fibonacci --count 1".split()
    )
    assert code == 0
    assert out.splitlines() == [
        "param,y,w",
        "1,5236,100001010010010000",
    ]


def test_generate_fibonacci_jsonl(capsys):
    code, out, _ = run(
        capsys,
        *"generate --triple 2,2,1 --system fibonacci --count 1 --format jsonl".split(),
    )
    assert code == 0
    assert json.loads(out) == {
        "param": "1",
        "y": "5236",
        "w": "100001010010010000",
    }


def test_generate_fibonacci_needs_22(capsys):
    code, _, err = run(
        capsys, *"generate --triple 3,2,1 --system fibonacci --count 1".split()
    )
    assert code == 2
    assert "fibonacci" in err


# -- verify -----------------------------------------------------------------


def test_verify_one_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--corpus", "triple_231")
    assert code == 0
    assert out.splitlines()[-1] == "corpus triple_231: 25/25 rows pass"


def test_verify_all_builtin(capsys):
    code, out, _ = run(capsys, "verify", "--pattern-n-max", "3")
    assert code == 0
    assert "corpus sporadic: 8/8 rows pass" in out
    assert "corpus fibonacci_squares: 22/22 rows pass" in out


def test_verify_failing_corpus(capsys, tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("q,n,l,b,y,c,w\n2,3,1,18,49,8,(8)\n")
    code, out, _ = run(capsys, "verify", "--corpus", str(p))
    assert code == 1
    assert "FAIL" in out


def test_verify_malformed_corpus(capsys, tmp_path):
    p = tmp_path / "broken.csv"
    p.write_text("q,n,l,b,y,c,w\n2,3,1\n")
    code, _, err = run(capsys, "verify", "--corpus", str(p))
    assert code == 2
    assert "broken:2" in err


def test_verify_unknown_name(capsys):
    code, _, err = run(capsys, "verify", "--corpus", "nope")
    assert code == 2
    assert "no such corpus" in err


# -- factor -----------------------------------------------------------------


def test_factor_output(capsys):
    code, out, _ = run(capsys, *"factor --b 10 --n 3 --l 1".split())
    assert code == 0 and out == "3 * 37\n"
    code, out, _ = run(capsys, *"factor --b 2 --n 6 --l 1".split())
    assert code == 0 and out == "3^2 * 7\n"


def test_factor_budget_exhausted(capsys):
    code, _, err = run(capsys, *"factor --b 5 --n 2 --l 59 --budget 1".split())
    assert code == 1
    assert "error:" in err


def test_factor_rejects_bad_base(capsys):
    code, _, err = run(capsys, *"factor --b 1 --n 3 --l 1".split())
    assert code == 2
    assert "error:" in err


# -- repr -------------------------------------------------------------------


def test_repr_systems(capsys):
    for argv, expected in [
        ("repr --x 100 --base 3", "(1,0,2,0,1)@3"),
        ("repr --x 100 --base 3 --system bijective", "(3,1,3,1)@3"),
        ("repr --x 100 --system zeckendorf", "1000010100"),
        ("repr --x 100 --system fibonacci", "1000010100"),
    ]:
        code, out, _ = run(capsys, *argv.split())
        assert code == 0
        assert out == expected + "\n"


def test_repr_validation(capsys):
    for argv in [
        "repr --x -1 --base 10",
        "repr --x 5",
        "repr --x 5 --base 1",
        "repr --x 5 --base 3 --system zeckendorf",
    ]:
        code, _, err = run(capsys, *argv.split())
        assert code == 2, argv
        assert "error:" in err


# -- argparse plumbing ------------------------------------------------------


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--triple", "2,3", "--count", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
