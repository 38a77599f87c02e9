import json

import pytest

from motivic_dtpt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def term(payload, exps):
    return next(t["coeff"] for t in payload["terms"] if t["exps"] == exps)


def test_compute_pt(capsys):
    code, out = run(capsys, "compute", "--n0", "1", "--n1", "1", "--partition", "BT",
                    "--series", "pt", "-r", "1", "--max-s-degree", "2")
    assert code == 0
    assert term(json.loads(out), [1, 1]) == [[0, "1"]]


def test_compute_points_and_euler(capsys):
    args = ["compute", "--n0", "1", "--n1", "0", "--partition", "B", "--series", "points",
            "-r", "2", "--max-s-degree", "1"]
    code, out = run(capsys, *args)
    assert code == 0 and term(json.loads(out), [1]) == [[2, "1"], [4, "1"]]
    code, out = run(capsys, *args, "--euler")
    assert code == 0 and term(json.loads(out), [1]) == 2


def test_compute_text_and_floored(capsys):
    code, out = run(capsys, "compute", "--series", "dt", "-r", "2", "--max-s-degree", "2",
                    "--l-floor", "-4", "--strategy", "both", "--format", "text")
    assert code == 0 and "s^1 T1^0 :" in out
    code, out = run(capsys, "compute", "--series", "universal", "--max-s-degree", "1", "--l-floor", "-2")
    assert code == 0 and json.loads(out)["lFloor"] == -2


def test_compute_is_deterministic(capsys):
    args = ["compute", "--n0", "2", "--n1", "1", "--partition", "BTB", "--series", "dt",
            "-r", "3", "--max-s-degree", "2"]
    assert run(capsys, *args) == run(capsys, *args)


def test_verify_all_partitions(capsys):
    code, out = run(capsys, "verify", "--n0", "1", "--n1", "1", "--all-partitions",
                    "-r", "2", "--max-s-degree", "3")
    assert code == 0 and json.loads(out)["pass"]
    code, out = run(capsys, "verify", "--n0", "2", "--n1", "1", "--all-partitions",
                    "-r", "1", "--max-s-degree", "3")
    reports = json.loads(out)["reports"]
    assert code == 0 and any(r["identity"] == "rank_one_dt" for r in reports)


def test_verify_threads(capsys, monkeypatch):
    args = ["verify", "--n0", "2", "--n1", "1", "--all-partitions", "-r", "1", "--max-s-degree", "2"]
    serial = run(capsys, *args)
    monkeypatch.setenv("MOTIVIC_DTPT_THREADS", "2")
    assert run(capsys, *args) == serial


def test_verify_failure_exit_code(capsys, monkeypatch):
    from motivic_dtpt import series as S
    real = S.z_alpha_factors
    monkeypatch.setattr(S, "z_alpha_factors",
                        lambda root, r, n, odd: [(t + 2, s, e) for t, s, e in real(root, r, n, odd)])
    code, out = run(capsys, "verify", "-r", "2", "--max-s-degree", "2")
    assert code == 1 and not json.loads(out)["pass"]


@pytest.mark.parametrize("argv,code_name", [
    (["verify", "--custom-zeta", "1,-1"], "NonGenericZeta"),
    (["compute", "--n0", "1", "--n1", "2"], "BadRange"),
    (["compute", "--partition", "BB"], "BadCounts"),
    (["compute", "--series", "custom"], "BadConfig"),
    (["compute", "--series", "universal"], "MissingFloor"),
    (["compute", "--euler", "--l-floor", "-2"], "BadConfig"),
    (["compute", "--custom-zeta", "1+x,1", "--series", "custom"], "BadZeta"),
    (["frobnicate"], "BadConfig"),
])
def test_error_objects(capsys, argv, code_name):
    code, out = run(capsys, *argv)
    err = json.loads(out)["error"]
    assert code == 2 and err["code"] == code_name and err["module"]


def test_custom_zeta_verify(capsys):
    code, out = run(capsys, "verify", "--custom-zeta", "1+eps,-2", "--max-s-degree", "2")
    assert code == 0 and len(json.loads(out)["reports"]) == 2


def test_quiver_and_partitions(capsys):
    code, out = run(capsys, "quiver", "--n0", "4", "--n1", "2", "--partition", "BTBBTB")
    data = json.loads(out)
    assert code == 0 and data["loops"] == [0, 3] and len(data["curves"]["types"]) == 5
    code, out = run(capsys, "quiver", "--dot", "-r", "1")
    assert "inf -> 0" in out
    code, out = run(capsys, "partitions", "--n0", "2", "--n1", "2", "--format", "text")
    assert out.split("\n")[0] == "2 2 BBTT" and len(out.strip().split("\n")) == 6
