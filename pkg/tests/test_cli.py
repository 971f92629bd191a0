import contextlib
import io
import json
import subprocess
import sys

import pytest

from wildinv.cli import parse_additive_poly, run
from wildinv.errors import ValidationError


def cap(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


def test_report_monomial_shorthand():
    code, out = cap(["report", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["swan"] == {"num": 1, "den": 1}
    assert doc["verdict"]["kind"] == "primitive"


def test_swan_subcommand():
    code, out = cap(["swan", "-p", "3", "-e", "1", "-dR", "4", "-m", "3"])
    assert code == 0
    assert json.loads(out) == {"swan": 3}


def test_validation_exit_code():
    code, out = cap(["report", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "3"])
    assert code == 2
    assert "prime to p" in json.loads(out)["error"]


def test_unknown_subcommand():
    with contextlib.redirect_stderr(io.StringIO()):
        code = run(["nonsense"])
    assert code == 1


def test_full_coefficient_list_and_degree_check():
    code, out = cap(["report", "-p", "3", "-f", "2", "-R", "0,0;1,0", "-e", "1", "-m", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["kind"] == "imprimitive"
    assert doc["verdict"]["induction"]["F_prime_degree"] == 3
    # length mismatch with the declared degree is a validation error
    code, out = cap(["report", "-p", "3", "-f", "2", "-R", "0,0;1,0", "-e", "2", "-m", "1"])
    assert code == 2


def test_parse_additive_poly():
    R = parse_additive_poly("1", 3, 1, 2)
    assert R.p_degree == 2 and R.coeffs[-1] == R.base.one()
    R2 = parse_additive_poly("1;0;2", 3, 1, 2)
    assert R2.coeffs[0] == R2.base.one()
    with pytest.raises(ValidationError):
        parse_additive_poly("1;0;0", 3, 1, 2)  # a_e = 0
    with pytest.raises(ValidationError):
        parse_additive_poly("1,2,3", 3, 2, 0)  # too many coordinates


def test_other_subcommands():
    code, out = cap(["anisotropy", "-p", "3", "-f", "2", "-R", "1", "-e", "1", "-m", "2"])
    assert code == 0 and json.loads(out)["completely_anisotropic"] is False
    code, out = cap(["primitivity", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "primitive_unramified_unstable"
    code, out = cap(["quotient", "-p", "3", "-f", "2", "-R", "1", "-e", "1", "-m", "2"])
    doc = json.loads(out)
    assert code == 0 and doc["induction"]["e_prime"] == 0
    code, out = cap(["rootsystem", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "1"])
    doc = json.loads(out)
    assert code == 0 and doc["root_system"]["type"] == "A"
    code, out = cap(["count", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "1"])
    doc = json.loads(out)
    assert code == 0 and doc["supersingular"] is True
    code, out = cap(["prime", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "1"])
    doc = json.loads(out)
    assert code == 0 and doc["e_poly_prime"] is True
    assert doc["transport"]["irreducible"] and doc["transport"]["reciprocal"]


def test_input_file_mode(tmp_path):
    spec = {"p": 3, "f": 1, "R": "1", "e": 1, "m": 2, "flags": {}}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(spec))
    code, out = cap(["report", "--input", str(path)])
    assert code == 0
    assert json.loads(out)["verdict"]["kind"] == "primitive_unramified_unstable"


def test_input_file_text_form(tmp_path):
    # the canonical additive-polynomial text form is accepted in file mode
    from wildinv.addpoly import AdditivePoly, format_additive_poly
    from wildinv.ff import field_create

    F9 = field_create(3, 2)
    R = AdditivePoly(F9, [F9.zero(), F9.one()])
    spec = {
        "p": 3,
        "f": 2,
        "R": format_additive_poly(R),
        "e": 1,
        "m": 2,
        "flags": {"oracle": True},
    }
    path = tmp_path / "in.json"
    path.write_text(json.dumps(spec))
    code, out = cap(["report", "--input", str(path)])
    assert code == 0
    assert json.loads(out)["verdict"]["kind"] == "imprimitive"


def test_subprocess_entry():
    r = subprocess.run(
        [sys.executable, "-m", "wildinv.cli", "swan", "-p", "5", "-e", "1", "-dR", "6", "-m", "1"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"swan": 1}


def test_output_is_single_json_document():
    code, out = cap(["report", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "1"])
    json.loads(out)  # parses as exactly one document
    assert out.endswith("\n")


def test_guard_exceeded_is_validation_exit():
    code, out = cap(["anisotropy", "-p", "3", "-f", "1", "-R", "0;0;1;1", "-e", "3", "-m", "1"])
    assert code == 2
    assert "guard" in json.loads(out)["error"]


def test_malformed_inputs_exit_2():
    cases = [
        ["report", "-p", "4", "-f", "1", "-R", "1", "-e", "1", "-m", "1"],  # p not prime
        ["report", "-p", "3", "-f", "0", "-R", "1", "-e", "1", "-m", "1"],  # f < 1
        ["report", "-p", "3", "-f", "1", "-R", "0", "-e", "0", "-m", "1"],  # R = 0
        ["report", "-p", "2", "-f", "1", "-R", "1", "-e", "0", "-m", "1"],  # (p,e) = (2,0)
        ["report", "-p", "3", "-f", "1", "-R", "x", "-e", "1", "-m", "1"],  # junk coeff
        ["count", "-p", "3", "-f", "1", "-R", "1", "-e", "1"],  # missing -m
        ["rootsystem", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "2"],  # precondition
    ]
    for argv in cases:
        import contextlib
        import io

        with contextlib.redirect_stderr(io.StringIO()):
            code, _ = cap(argv)
        assert code == 2, argv


def test_count_max_k_and_oracle_flags():
    code, out = cap(["count", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "1", "--max-k", "3"])
    assert code == 0
    assert len(json.loads(out)["counts"]) == 3
    code, out = cap(
        ["report", "-p", "3", "-f", "1", "-R", "1", "-e", "1", "-m", "2", "--oracle"]
    )
    assert code == 0
    assert json.loads(out)["verdict"]["kind"] == "primitive_unramified_unstable"
