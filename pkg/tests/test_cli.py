import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from eigenscheme import cli
from eigenscheme.eigenideal import JordanSpec
from eigenscheme.formats import format_matrix, load_matrix, parse_matrix, parse_spec
from eigenscheme.errors import ParseError
from eigenscheme.groebner import Ideal, ideal_equal, intersect
from eigenscheme.jordanstruct import basis_G
from eigenscheme.matrix import QMatrix
from eigenscheme.qpoly import Ring, parse_poly

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def golden_ideal(name, n):
    ring = Ring.flat(n)
    lines = (GOLDEN / name).read_text().split("\n")
    return Ideal(ring, tuple(parse_poly(s, ring) for s in lines if s.strip()))


# -- formats --------------------------------------------------------------------

def test_matrix_text_and_json_agree():
    A = load_matrix(DATA / "worked_a1.txt")
    rec = json.dumps({"rows": 3, "cols": 3, "entries": [["4", "0", "1"], ["2", "3", "2"],
                                                        ["1", "0", "4"]]})
    assert parse_matrix(rec) == A
    assert parse_matrix(format_matrix(A)) == A


def test_matrix_rationals_and_comments():
    A = parse_matrix("2 2  # header\n1/2 -3\n0 7/4\n")
    assert A.row(0) == (0.5, -3)


@pytest.mark.parametrize("text", ["2 2\n1 2\n3\n", "x y\n", "1 1\nfoo\n", '{"rows": 1}',
                                  '{"rows": 1, "cols": 2, "entries": ["1"]}', ""])
def test_matrix_parse_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_spec_parsing():
    spec = parse_spec((DATA / "three_blocks.json").read_text())
    assert spec == JordanSpec.single(0, [(4, 1), (3, 1), (2, 1)])
    assert parse_spec(json.dumps(spec.to_data())) == spec
    with pytest.raises(ParseError):
        parse_spec('[{"lambda": "1", "blocks": [[1, 1], [2, 1]]}]')
    with pytest.raises(ParseError):
        parse_spec("[{")


# -- golden files ---------------------------------------------------------------

def test_gb_golden_first_worked_matrix():
    code, out, _ = run("gb", "--matrix", str(DATA / "worked_a1.txt"))
    assert code == 0
    assert out == (GOLDEN / "gb_worked_a1.txt").read_text()
    ring = Ring.flat(3)
    x1, x2, x3 = ring.gens()
    meet = intersect(Ideal(ring, (x1 + x3,)), Ideal(ring, (x2 - 2 * x3, x1 - x3)))
    assert ideal_equal(golden_ideal("gb_worked_a1.txt", 3), meet)


def test_gb_golden_second_worked_matrix():
    code, out, _ = run("gb", "--matrix", str(DATA / "worked_a2.txt"))
    assert code == 0
    assert out == (GOLDEN / "gb_worked_a2.txt").read_text()
    ring = Ring.flat(3)
    x1, x2, x3 = ring.gens()
    meet = intersect(Ideal(ring, (x1 + x2 + 2 * x3, x3 ** 2)), Ideal(ring, (x2, x3)))
    assert ideal_equal(golden_ideal("gb_worked_a2.txt", 3), meet)


def test_gb_golden_three_blocks():
    code, out, _ = run("gb", "--spec", str(DATA / "three_blocks.json"))
    assert code == 0
    assert out == (GOLDEN / "gb_three_blocks.txt").read_text()
    G = basis_G(JordanSpec.single(0, [(4, 1), (3, 1), (2, 1)]))
    assert out.splitlines() == G.lines()


def test_decompose_golden():
    code, out, _ = run("decompose", "--matrix", str(DATA / "worked_a2.txt"), "--format", "json")
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / "decompose_worked_a2.json").read_text())
    comps = json.loads(out)["components"]
    assert [(c["lambda"], c["dimension"], c["degree"]) for c in comps] == [("1", 0, 2), ("2", 0, 1)]


# -- verbs ------------------------------------------------------------------------

def test_ideal_verb():
    code, out, _ = run("ideal", "--matrix", str(DATA / "worked_a1.txt"), "--format", "json")
    assert code == 0
    assert len(json.loads(out)["generators"]) == 3


def test_gb_lex():
    code, out, _ = run("gb", "--matrix", str(DATA / "worked_a2.txt"), "--order", "lex",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["order"] == "lex"
    ring = Ring.flat(3)
    I = Ideal(ring, tuple(parse_poly(s, ring) for s in data["basis"]))
    assert ideal_equal(I, golden_ideal("gb_worked_a2.txt", 3))


def test_diagonalizable_identity():
    code, out, _ = run("diagonalizable", "--matrix", str(DATA / "identity.txt"))
    assert code == 0
    assert out.split() == ["ideal:", "yes", "oracle:", "yes", "agree:", "yes"]


def test_diagonalizable_worked_matrices():
    _, out, _ = run("diagonalizable", "--matrix", str(DATA / "worked_a2.txt"), "--format", "json")
    assert json.loads(out) == {"ideal": False, "oracle": False, "agree": True}
    _, out, _ = run("diagonalizable", "--matrix", str(DATA / "worked_a1.txt"), "--format", "json")
    assert json.loads(out) == {"ideal": True, "oracle": True, "agree": True}


def test_jordan_verb():
    code, out, _ = run("jordan", "--matrix", str(DATA / "worked_a2.txt"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["oracle"] == [{"lambda": "1", "blocks": [[2, 1]]}, {"lambda": "2", "blocks": [[1, 1]]}]


def test_jordan_verb_on_spec():
    code, out, _ = run("jordan", "--spec", str(DATA / "three_blocks.json"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["ideal"] == json.loads((DATA / "three_blocks.json").read_text())


def test_hilbert_verb():
    code, out, _ = run("hilbert", "--spec", '[{"lambda": "0", "blocks": [[2, 1]]}]')
    assert code == 0 and out.split() == ["1", "2", "2", "2", "2", "2", "2", "2", "2"]
    code, out, _ = run("hilbert", "--spec", str(DATA / "three_blocks.json"), "--component", "2",
                       "--format", "json")
    values = json.loads(out)["values"]
    assert code == 0 and values[1:] == [3 * (t + 1) for t in range(1, 9)]


def test_disc_degree_verb():
    code, out, _ = run("disc-degree", "-r", "3", "--seed", "42")
    assert code == 0 and out.strip() == "6"
    code, out, _ = run("disc-degree", "-r", "4", "--seed", "7", "--format", "json")
    assert json.loads(out) == {"r": 4, "seed": 7, "degree": 12}


# -- failures and exit codes ----------------------------------------------------

def error_record(err):
    lines = err.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_irrational_spectrum_exit_two():
    for verb in ("decompose", "jordan", "diagonalizable"):
        code, out, err = run(verb, "--matrix", str(DATA / "rotation.json"))
        assert code == 2 and out == ""
        rec = error_record(err)
        assert rec["error"] == "UnsupportedFieldError" and rec["factor"] == "t^2 + 1"


def test_rotation_ideal_still_computed():
    code, out, _ = run("gb", "--matrix", str(DATA / "rotation.json"))
    assert code == 0 and out.strip() == "x1^2 + x2^2"


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["gb"],
    ["gb", "--matrix", "missing-file.txt"],
    ["gb", "--matrix", "a", "--spec", "b"],
    ["disc-degree"],
    ["disc-degree", "-r", "3", "--seed", "-4"],
    ["hilbert", "--spec", "[{\"lambda\": 0, \"blocks\": [[2, 1]]}]", "--tmax", "2"],
    ["gb", "--format", "xml", "--matrix", "x"],
])
def test_usage_errors_exit_one(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert error_record(err)["exit"] == 1


def test_degenerate_sample_exit_three(monkeypatch):
    from eigenscheme import oracle
    from eigenscheme.errors import DegenerateSampleError

    def degenerate(r, seed):
        raise DegenerateSampleError(f"seed {seed}: discriminant vanishes")

    monkeypatch.setattr(oracle, "discriminant_degree_experiment", degenerate)
    code, out, err = run("disc-degree", "-r", "3", "--seed", "5")
    assert code == 3 and out == ""
    assert error_record(err)["error"] == "DegenerateSampleError"


def test_cap_exit_three():
    code, out, err = run("gb", "--matrix", str(DATA / "worked_a1.txt"), "--max-pairs", "0")
    assert code == 3 and out == ""
    assert error_record(err)["error"] == "GroebnerCapError"


def test_disagreement_exit_three(monkeypatch):
    from eigenscheme import oracle

    monkeypatch.setattr(oracle, "diagonalizable_oracle", lambda A: False)
    code, out, err = run("diagonalizable", "--matrix", str(DATA / "identity.txt"))
    assert code == 3
    assert "agree: no" in out
    assert error_record(err)["error"] == "Disagreement"


def test_json_output_deterministic():
    a = run("decompose", "--spec", str(DATA / "three_blocks.json"), "--format", "json")
    b = run("decompose", "--spec", str(DATA / "three_blocks.json"), "--format", "json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eigenscheme", "disc-degree", "-r", "2",
                           "--seed", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
