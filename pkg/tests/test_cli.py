import json
import subprocess
import sys

import pytest

from kl_oracle import canonical
from mikado.cli import main
from mikado.coxeter import preset

EX36 = '{"type": "halfspace", "spanning": [[1, 0, 0], [2, 2, 1]], "positive": [0, 1, 0]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_infinite_dihedral(capsys):
    code, out, _ = run(capsys, "group", "-S", "I2inf", "-f", "json")
    d = json.loads(out)
    assert code == 0 and d["valid"] and d["cartan"] == [[2, -2], [-2, 2]] and not d["finite"]


def test_group_rejections(tmp_path, capsys):
    bad = tmp_path / "m5.json"
    bad.write_text(json.dumps({"system": {"coxeter_matrix": [[1, 5], [5, 1]]}}))
    code, _, err = run(capsys, "group", "-c", str(bad))
    assert code == 2 and "m(s,t) = 5" in err
    asym = tmp_path / "asym.yaml"
    asym.write_text("system:\n  coxeter_matrix: [[1, 3], [4, 1]]\n")
    code, _, err = run(capsys, "group", "-c", str(asym))
    assert code == 2 and "not symmetric" in err


def test_all_config_errors_reported_together(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("system: A2\nradius: -1\nformat: xml\nbogus: 1\nbiclosed:\n  X: {type: nope}\n")
    code, _, err = run(capsys, "ball", "-c", str(cfg))
    assert code == 2 and len(err.strip().splitlines()) == 4


def test_kl(capsys):
    code, out, _ = run(capsys, "kl", "s", "-S", "A2", "-f", "json")
    d = json.loads(out)
    assert code == 0 and d["cprime_T"] == [["e", "v"], ["s", "v"]]
    code, out, _ = run(capsys, "kl", "e", "-S", "A2", "-f", "json")
    assert json.loads(out)["cprime_T"] == [["e", "1"]]
    code, out, _ = run(capsys, "kl", "sts", "-S", "A2", "-f", "json")
    W = preset("A2")
    want = canonical(W, W.element("sts"))
    got = {w: p for w, p in json.loads(out)["cprime_H"]}
    assert got == {str(w): str(p) for w, p in want.items()}


def test_lift_rank3(capsys):
    code, out, _ = run(capsys, "lift", "tsr", "-S", "U3", "-A", EX36)
    assert code == 0 and out == "t s^-1 r\n"
    code, out, _ = run(capsys, "lift", "--eval", "t s^-1 r", "-S", "U3", "-f", "json")
    assert json.loads(out)["hecke_T"] == [["tr", "-1 + v^2"], ["tsr", "v^2"]]


def test_order_dihedral_dot(capsys):
    code, out, _ = run(capsys, "order", "-S", "I2inf", "-L", "4", "-A", "half:1,-1")
    assert code == 0 and out.startswith("digraph")
    labels = [line.split('"')[1] for line in out.splitlines() if "label=" in line]
    assert labels == ["tsts (-4)", "sts (-3)", "ts (-2)", "s (-1)", "e (0)", "t (1)", "st (2)", "tst (3)",
                      "stst (4)"]
    edges = [line.strip() for line in out.splitlines() if "->" in line]
    assert edges == [f"n{i} -> n{i + 1};" for i in range(8)]


def test_enumerate_and_twisted_basis(capsys):
    code, out, _ = run(capsys, "enumerate", "-S", "I2inf", "-L", "3", "-A", "half:1,-1", "--s", "s", "-f", "csv")
    assert code == 0 and [r.split(",")[1] for r in out.splitlines()[1:]] == ["sts", "ts", "s", "e", "t", "st"]
    code, out, _ = run(capsys, "twisted-basis", "s", "-S", "I2inf", "-A", "half:1,-1", "--expand", "s",
                       "-f", "json")
    d = json.loads(out)
    assert d["braid"] == "s^-1" and d["expand_cprime"]["coefficients"] == [["e", "v^-1"], ["s", "v^-1"]]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "inverse-positivity", "-S", "A2", "--x", "s", "--y", "t")
    assert code == 0 and "verdict:   holds" in out
    code, _, err = run(capsys, "verify", "bogus", "-S", "A2")
    assert code == 2 and "unknown statement" in err
    code, _, err = run(capsys, "verify", "threeparam", "-S", "A2")
    assert code == 2 and "--w" in err


def test_verify_certificate_failure_exit_code(capsys):
    bad = '{"type": "explicit", "roots": [[1, 0], [0, 1]], "depth": 9}'
    code, out, _ = run(capsys, "verify", "threeparam", "-S", "I2inf", "--w", "s", "-A", bad)
    assert code == 1 and "certificate failed" in out


def test_depth_exceeded_exit_code(capsys):
    shallow = '{"type": "explicit", "roots": [[1, 0]], "depth": 1}'
    code, _, err = run(capsys, "verify", "threeparam", "-S", "I2inf", "--w", "stst", "-A", shallow)
    assert code == 2 and "depth exceeded" in err


def test_evidence_does_not_affect_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "conjecture", "-S", "U3", "--x", "tsr", "-A", EX36)
    assert code == 0 and "(evidence)" in out


def test_sweep_summary_csv(capsys, tmp_path):
    target = tmp_path / "summary.csv"
    code, out, _ = run(capsys, "sweep", "-S", "A2", "-L", "3", "-f", "csv", "-o", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "statement,kind,system,parameters,verdict,violations"
    assert all(line.endswith("holds,0") for line in lines[1:]) and len(lines) > 300


def test_sweep_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text(
        "system: I2inf\nradius: 4\nbiclosed:\n  H: {type: halfspace, covector: [1, -1]}\n"
        "sweep:\n  statements: [threeparam, conjecture]\n  families: [inversion]\n")
    code, out, _ = run(capsys, "sweep", "-c", str(cfg), "-f", "json")
    d = json.loads(out)
    assert code == 0 and d["summary"]["counts"]["threeparam"]["holds"] == 9 * 10


def test_format_errors(capsys):
    code, _, err = run(capsys, "kl", "s", "-S", "A2", "-f", "dot")
    assert code == 2 and "DOT" in err
    code, _, err = run(capsys, "ball", "-S", "A2")
    assert code == 2 and "--radius" in err


def test_output_is_deterministic_bytes():
    cmd = [sys.executable, "-m", "mikado.cli", "sweep", "-S", "B2", "-L", "4", "-f", "json", "--full",
           "--statements", "threeparam,doubletwist", "--limit", "40"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--jobs", "2"], capture_output=True, check=True).stdout
    assert a == b and len(a) > 1000


@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_ball_formats(capsys, fmt):
    code, out, _ = run(capsys, "ball", "-S", "I2inf", "-L", "3", "-f", fmt)
    assert code == 0
    if fmt == "json":
        assert json.loads(out)["size"] == 7
