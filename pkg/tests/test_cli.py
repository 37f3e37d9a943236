import json
import subprocess
import sys

import pytest

from ldtop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_homology_circle(capsys):
    r = run_json(capsys, "homology", "circle", "--dim", "1")
    assert r["results"]["rank"] == 1 and r["results"]["torsion"] == []


def test_homology_point_dim3(capsys):
    assert run_json(capsys, "homology", "point", "--dim", "3")["results"]["rank"] == 0


def test_colimit_line(capsys):
    r = run_json(capsys, "homology", "line", "--colimit", "--dim", "0", "--stages", "6")
    assert r["results"]["colimit"] == {"rank": 1, "torsion": []}
    assert r["verdicts"]["stable"] is True
    assert len(r["results"]["stages"]) == 6


def test_relative_homology(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("S 0 1\nS 1 2\nS 0 2\n")
    r = run_json(capsys, "homology", "disk", "--relative", str(f), "--dim", "2")
    assert r["results"]["rank"] == 1 and r["verdicts"]["exact"] is True


def test_cover(capsys):
    r = run_json(capsys, "cover", "circle", "--subgroup", "a a")
    assert r["results"]["sheets"] == 2 and r["verdicts"]["verified"] is True


def test_connect_example_5_4(capsys):
    r = run_json(capsys, "connect", "example_5_4")["results"]
    assert r["connected"] is False and r["op"] is False
    assert r["ps"] == {"witness": "(0, +inf)"}
    assert r["e"] == {"none": 3}


def test_connect_schema_file(capsys, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("STAGE n>=1: (-n, n)\n")
    r = run_json(capsys, "connect", str(f), "--k", "1")
    assert r["results"]["connected"] is True and r["results"]["ps"] == {"none": 1}


def test_whitehead(capsys):
    assert run_json(capsys, "whitehead", "disk-to-point")["verdicts"]["verdict"] == "equivalence-certified"
    r = run_json(capsys, "whitehead", "circle-double")
    assert r["results"]["verdict"] == "not-equivalence" and r["results"]["failed_degree"] == 1
    assert run_json(capsys, "whitehead", "torus-identity", "--cosets", "500")["results"]["verdict"] \
        == "undetermined"
    r = run_json(capsys, "whitehead", "--source", "interval", "--target", "point", "--map", "0:0,1:0")
    assert r["verdicts"]["certified"] is True


def test_pi1_and_hurewicz(capsys):
    r = run_json(capsys, "pi1", "rp2")
    assert r["verdicts"]["trivial"] is False
    r = run_json(capsys, "hurewicz", "sphere")
    assert r["results"]["pi2"] == {"rank": 1, "torsion": []} and r["verdicts"]["h1_agrees"]


def test_glue(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("PART\nS 0 1\nS 1 2\nS 0 2\nPART\nS 0 1\nS 1 2\nS 0 2\nGLUE 0 1 0:0 1:1\n")
    r = run_json(capsys, "glue", str(f))
    assert r["results"]["euler"] == -1
    assert r["results"]["homology"][1] == {"rank": 2, "torsion": []}


def test_text_format(capsys):
    code, out, _ = run(capsys, "homology", "torus", "--format", "text")
    assert code == 0 and "H_1 = Z^2" in out
    code, out, _ = run(capsys, "--format", "text", "fixtures")
    assert "example_5_4" in out


def test_deterministic_json(capsys):
    _, a, _ = run(capsys, "connect", "example_5_4")
    _, b, _ = run(capsys, "connect", "example_5_4")
    assert a == b
    _, c, _ = run(capsys, "cover", "wedge2", "--subgroup", "a a a", "--subgroup", "b A")
    _, d, _ = run(capsys, "cover", "wedge2", "--subgroup", "a a a", "--subgroup", "b A")
    assert c == d
    assert "timing_s" in json.loads(run(capsys, "--timing", "fixtures")[1])


@pytest.mark.parametrize("argv,code", [
    (["homology", "no-such-thing"], 2),
    (["bogus"], 2),
    (["cover", "circle", "--subgroup", "z"], 2),
    (["homology", "circle", "--relative", "disk"], 3),
    (["whitehead", "--source", "circle", "--target", "point", "--map", "0:0"], 3),
    (["pi1", "torus", "--cosets", "abc"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("LDTOP_COSETS", "20")
    assert run(capsys, "cover", "torus", "--radius", "3")[0] == 4


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "ldtop.cli", "homology", "circle", "--dim", "0"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["results"]["rank"] == 1
