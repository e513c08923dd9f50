import json

import pytest

from infhecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code or 0, out, err


def test_center(capsys):
    code, out, _ = run(capsys, "center", "--z", "Delta")
    assert code == 0
    assert "q_z = -1/4*Delta^2 + 1/4*Delta" in out
    assert "central: true" in out and "fixed by j: true" in out


def test_center_json(capsys):
    code, out, _ = run(capsys, "center", "--z", "Delta", "--json")
    data = json.loads(out)
    assert data["central"] is True
    assert data["q_z"]["coeffs"] == ["0", "1/4", "-1/4"]


def test_fg(capsys):
    code, out, _ = run(capsys, "fg", "--n", "3")
    assert "f_3 = 6*Delta^2 + 20*Delta + 14" in out
    assert "g_3 = -21*Delta^2 - 47*Delta - 27" in out
    assert "methods agree: true" in out


def test_nf_and_comm(capsys):
    assert "x*y" in run(capsys, "nf", "y*x")[1]
    _, out, _ = run(capsys, "comm", "e", "f")
    assert out.strip() == "h"
    _, out, _ = run(capsys, "comm", "v_1", "vs_1", "--family", "gln", "--n", "2", "--beta0", "1", "--beta1", "1")
    assert "E_11" in out


def test_signed_values(capsys):
    code, out, _ = run(capsys, "verma", "--lambda", "-1/2", "--depth", "2")
    assert code == 0 and "lambda = -1/2" in out


def test_verma(capsys):
    code, out, _ = run(capsys, "verma", "--lambda", "0", "--depth", "4")
    assert code == 0
    assert "dim V(lambda) by depth: [1, 0, 0, 0, 0]" in out
    assert "SES:" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "nf", "e+*f")
    assert code == 2
    assert "offset 2" in err and err.rstrip().endswith("^")


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["families", "build", "--family", "so2n", "--n", "2"])
    assert info.value.code == 2
    assert run(capsys, "families", "build", "--family", "sp2n", "--n", "2", "--beta1", "1")[0] == 2


def test_verify_failing_criterion(capsys):
    code, out, _ = run(capsys, "verify", "--criterion", "7")
    assert code == 1
    assert "[FAIL]  7." in out


def test_verify_passing_criterion(capsys):
    code, out, _ = run(capsys, "verify", "--criterion", "1", "--criterion", "2")
    assert code == 0
    assert "2/2 criteria passed" in out


def test_abelian_and_families(capsys):
    assert "true" in run(capsys, "abelian", "l5", "--n", "2", "--z", "1")[1]
    _, out, _ = run(capsys, "families", "central", "--family", "gln", "--n", "2")
    assert out.count("central: true") == 2
