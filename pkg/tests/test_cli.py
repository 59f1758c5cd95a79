import json

import pytest

from ceiso.cli import EXIT_DISAGREE, EXIT_PASS, EXIT_USAGE, main


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_invariant_monogenic(tmp_path, capsys):
    f = write(tmp_path, "p.txt", "variety cs\ngenerators 1\nrel x0^2 = x0^5\n")
    assert main(["invariant", f]) == EXIT_PASS
    assert capsys.readouterr().out == "index=2 period=3\n"


def test_invariant_abelian_and_gamma(tmp_path, capsys):
    f = write(tmp_path, "g.txt", "variety ag\ngenerators 1\nrel 6x0 = 0\n")
    main(["invariant", f])
    assert capsys.readouterr().out == "rank=0 factors=[6]\n"
    f = write(tmp_path, "m.txt", "variety cm\ngenerators 2\n")
    main(["invariant", f])
    assert capsys.readouterr().out == "gamma: undefined (free)\n"


def test_reduce_writes_trace(tmp_path, capsys):
    f = write(tmp_path, "t.trace", "0 5\nstabilized\n")
    assert main(["reduce", "emin-to-cs1", f, "--horizon", "4"]) == EXIT_PASS
    assert capsys.readouterr().out == "0 72\nstabilized\n"


def test_iso(tmp_path, capsys):
    a = write(tmp_path, "a", "variety ag\ngenerators 1\nrel 4x0 = 0\n")
    b = write(tmp_path, "b", "variety ag\ngenerators 1\nrel 2x0 = 0\n")
    assert main(["iso", a, b]) == EXIT_PASS
    assert capsys.readouterr().out.startswith("NonIsomorphic\n")


def test_ordinal(capsys):
    assert main(["ordinal", "w^2*2", "+", "w", "+", "3", "--bound", "w^3"]) == EXIT_PASS
    assert capsys.readouterr().out == "cnf: w^2*2 + w + 3\ncode below w^3: 58\n"
    main(["ordinal", "--decode", "20", "--bound", "w^2"])
    assert capsys.readouterr().out.startswith("cnf: 5\n")


@pytest.mark.parametrize("argv", [
    ["reduce", "nope", "missing.trace"],
    ["invariant", "/no/such/file"],
    ["ordinal"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_bad_config(tmp_path):
    assert main(["verify", write(tmp_path, "c.json", "{not json")]) == EXIT_USAGE
    assert main(["verify", write(tmp_path, "d.json", json.dumps({"colour": 1}))]) == EXIT_USAGE
    assert main(["verify", write(tmp_path, "e.json", json.dumps({"criteria": [99]}))]) == EXIT_USAGE


def test_verify_empty_and_negative_control(tmp_path):
    out = tmp_path / "r.txt"
    assert main(["verify", "configs/empty.json", "--out", str(out)]) == EXIT_PASS
    assert out.read_text().splitlines()[-1] == "PASS"
    assert main(["verify", "configs/negative-control.json", "--out", str(out)]) == EXIT_DISAGREE
    assert out.read_text().splitlines()[-1] == "FAIL"


def test_gen_is_seeded(tmp_path):
    for d in ("a", "b"):
        assert main(["gen", "shift-pairs", "--seed", "4", "--count", "3", "--out", str(tmp_path / d)]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert len(names) == 9
    assert all((tmp_path / "a" / n).read_text() == (tmp_path / "b" / n).read_text() for n in names)
    assert main(["gen", "bogus", "--out", str(tmp_path)]) == EXIT_USAGE
