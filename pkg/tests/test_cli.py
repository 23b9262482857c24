import json
import os
import subprocess
import sys

import pytest

from csmanifolds.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from csmanifolds.notation import format_object, parse_object, record_from_json
from spaces import octahedron, pinched, rp2_6, torus7


def write(tmp_path, name, obj, inv=None):
    p = tmp_path / name
    p.write_text(format_object(obj, inv))
    return str(p)


def test_enumerate_text(capsys):
    assert main(["enumerate", "--m", "3"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("n=6 f=(6, 12, 8) H=(1, 0, 1) orientable")
    assert "# classes: 1" in out
    assert "# orientable: 1, non-orientable: 0" in out


def test_enumerate_summary_m5(capsys):
    assert main(["enumerate", "--m", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "# classes: 56" in out
    assert "# (1, 0, 1): 16" in out and "# (1, 2, 1): 29" in out and "# (1, 1+Z2, 0): 11" in out
    assert "# orientable: 45, non-orientable: 11" in out


def test_enumerate_json_roundtrip(tmp_path, capsys):
    out = tmp_path / "m4.jsonl"
    assert main(["enumerate", "--m", "4", "--format", "json", "-o", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert len(lines) == 5
    for line in lines:
        rec = record_from_json(line)
        assert json.loads(line)["n"] == rec["n"] == 8


def test_enumerate_homology_filter(capsys):
    assert main(["enumerate", "--m", "4", "--homology", "1,2,1"]) == EXIT_OK
    assert "# classes: 1" in capsys.readouterr().out


def test_enumerate_jobs_same_bytes(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["enumerate", "--m", "5", "--jobs", "1", "-o", str(a)]) == EXIT_OK
    assert main(["enumerate", "--m", "5", "--jobs", "2", "-o", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_enumerate_jobs_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CSM_JOBS", "2")
    assert main(["enumerate", "--m", "3"]) == EXIT_OK


def test_enumerate_checkpoint(tmp_path, capsys):
    ck = str(tmp_path / "c.ckpt")
    assert main(["enumerate", "--m", "4", "--checkpoint", ck]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["enumerate", "--m", "4", "--checkpoint", ck, "--resume"]) == EXIT_OK
    assert capsys.readouterr().out == first


def test_enumerate_three_dim(capsys):
    assert main(["enumerate", "--m", "4", "--dim", "3"]) == EXIT_OK
    assert "H=(1, 0, 0, 1)" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["enumerate", "--m", "2"],
    ["enumerate", "--m", "3", "--dim", "3"],
    ["enumerate", "--m", "3", "--jobs", "0"],
    ["enumerate"],
    ["construct", "quad"],
    ["construct", "hexagon", "--k", "0"],
    ["construct", "seed", "--name", "sphere"],
    ["construct", "dual"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_io_errors(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "missing.txt")]) == EXIT_IO
    assert main(["enumerate", "--m", "3", "-o", str(tmp_path / "no" / "dir.txt")]) == EXIT_IO
    assert "cannot" in capsys.readouterr().err


def test_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("facets:\n1,2,&\n")
    assert main(["verify", str(p)]) == EXIT_USAGE


def test_construct_quad(tmp_path, capsys):
    out = tmp_path / "q2.txt"
    assert main(["construct", "quad", "--genus", "2", "-o", str(out)]) == EXIT_OK
    report = capsys.readouterr().out
    assert "# n: 62" in report and "# chi: -2" in report
    assert "# orientable: yes, genus 2" in report
    obj, inv = parse_object(out.read_text()).build()
    assert obj.n == 62 and inv is not None
    assert main(["verify", str(out)]) == EXIT_OK
    assert "CS: yes" in capsys.readouterr().out


def test_construct_dual_of_cube(tmp_path, capsys):
    cube = tmp_path / "cube.txt"
    assert main(["construct", "seed", "--name", "cube", "-o", str(cube)]) == EXIT_OK
    assert main(["construct", "dual", "--input", str(cube)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "# n: 6" in out and "# f-vector: (6, 12, 8)" in out


def test_construct_hexagon(capsys):
    assert main(["construct", "hexagon", "--k", "1", "-o", os.devnull]) == EXIT_OK
    # the 36-vertex member is not polyhedral
    assert main(["construct", "hexagon", "--k", "2", "-o", os.devnull]) == EXIT_VERIFY
    assert "# polyhedral: no" in capsys.readouterr().out


def test_construct_connected_sum(tmp_path, capsys):
    t = tmp_path / "t.txt"
    assert main(["construct", "seed", "--name", "example-torus", "-o", str(t)]) == EXIT_OK
    out = tmp_path / "sum.txt"
    assert main(["construct", "connected-sum", "--input", str(t), "--input", str(t),
                 "--glue", "123 > 123", "-o", str(out)]) == EXIT_OK
    assert "# f-vector: (18, 66, 44)" in capsys.readouterr().out
    assert main(["construct", "connected-sum", "--input", str(t), "--input", str(t),
                 "--glue", "125 > 123"]) == EXIT_VERIFY


def test_verify_surfaces(tmp_path, capsys):
    assert main(["verify", write(tmp_path, "t.txt", torus7())]) == EXIT_OK
    out = capsys.readouterr().out
    assert "manifold: yes" in out and "orientable: yes genus 1" in out
    assert "tightness: tight: yes" in out
    assert main(["verify", write(tmp_path, "r.txt", rp2_6())]) == EXIT_OK
    assert "orientable: no genus 1" in capsys.readouterr().out


def test_verify_failures(tmp_path, capsys):
    assert main(["verify", write(tmp_path, "p.txt", pinched())]) == EXIT_VERIFY
    assert "manifold: no (link of 1 not a single cycle)" in capsys.readouterr().out
    from csmanifolds.symmetry import Involution
    bad = Involution.from_pairs([(1, 2), (3, 4), (5, 6)])
    assert main(["verify", write(tmp_path, "o.txt", octahedron(), bad)]) == EXIT_VERIFY
    assert "CS: no" in capsys.readouterr().out


def test_verify_cs_tight(tmp_path, capsys):
    from csmanifolds.symmetry import Involution
    path = write(tmp_path, "o.txt", octahedron(), Involution.canonical(6))
    assert main(["verify", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "CS: yes" in out and "tightness: CS-tight: yes" in out


def test_homology_and_canon(tmp_path, capsys):
    path = write(tmp_path, "r.txt", rp2_6())
    assert main(["homology", path]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1,Z2,0"
    assert main(["homology", path, "--tuple"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "(1, Z2, 0)"
    assert main(["canon", path, "--classify", "plain"]) == EXIT_OK
    digest = capsys.readouterr().out.strip()
    relabeled = rp2_6().relabel(lambda v: 7 - v)
    assert main(["canon", write(tmp_path, "s.txt", relabeled), "--classify", "plain"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == digest


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "csmanifolds", "enumerate", "--m", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "# classes: 1" in r.stdout
    r = subprocess.run([sys.executable, "-m", "csmanifolds", "--help"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "enumerate" in r.stdout
