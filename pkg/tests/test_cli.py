import os
import subprocess
import sys

import pytest

from medianlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_median(capsys):
    assert run(capsys, "check-median", "file:q3.json")[:2] == (0, "median\n")
    code, out, _ = run(capsys, "check-median", "file:c6.json")
    assert code == 1 and out == "not median: (v0, v2, v4) has 0 medians\n"
    code, out, _ = run(capsys, "check-median", "lattice:2", "--radius", "2")
    assert code == 0 and "radius 2" in out


def test_median_and_geodesic(capsys):
    assert run(capsys, "median", "file:q3.json", "000", "011", "101")[:2] == (0, "001\n")
    assert run(capsys, "median", "lattice:2", "(0,0)", "(2,0)", "(0,2)")[1] == "(0,0)\n"
    assert run(capsys, "geodesic", "file:c6.json", "v0", "v3")[1] == "v0,v1,v2,v3\n"
    assert run(capsys, "geodesic", "lattice:1", "(0)", "(3)")[1] == "(0),(1),(2),(3)\n"
    code, out, err = run(capsys, "median", "file:c6.json", "v0", "v2", "v4")
    assert code == 1 and "NotMedian" in err


def test_hyperplanes_text_and_dot(capsys):
    code, out, _ = run(capsys, "hyperplanes", "file:q3.json")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3 and all(len(ln.split(": ")[1].split()) == 4 for ln in lines)
    code, out, _ = run(capsys, "hyperplanes", "file:q3.json", "--format", "dot")
    assert out.startswith("graph G {") and out.count(" -- ") == 12
    code, out, _ = run(capsys, "hyperplanes", "lattice:1", "--radius", "2")
    assert out.splitlines() == ["(-1)-(0): (-1)-(0)", "(-2)-(-1): (-2)-(-1)", "(0)-(1): (0)-(1)", "(1)-(2): (1)-(2)"]
    code, _, err = run(capsys, "hyperplanes", "file:c6.json")
    assert code == 1 and "NotVerifiedMedian" in err


def test_separators_carrier_halfspace(capsys):
    code, out, _ = run(capsys, "separators", "lattice:2", "(0,0)", "(1,2)")
    assert out.splitlines()[-1] == "count 3"
    assert run(capsys, "carrier", "file:c6.json", "v0", "v1")[0] == 1
    assert run(capsys, "carrier", "file:p3.json", "l", "m")[1] == "l m\n"
    assert run(capsys, "halfspace", "lattice:1", "(0)", "(1)", "--radius", "2")[1] == "(-2) (-1) (0)\n"
    assert run(capsys, "halfspace", "lattice:1", "(0)", "(1)", "--side", "far", "--radius", "2")[1] == "(1) (2)\n"
    code, _, err = run(capsys, "carrier", "file:q3.json", "000", "011")
    assert code == 2 and "not adjacent" in err


def test_normalize_then_apply_round_trip(capsys, tmp_path):
    code, script, _ = run(capsys, "normalize-path", "file:q3.json", "--path", "000,100,110,010")
    assert code == 0
    assert script == "# start 000,100,110,010\nflip 1 010\nremove-backtrack 2\n# end 000,010\n"
    f = tmp_path / "m.moves"
    f.write_text(script)
    code, out, _ = run(capsys, "apply-moves", "file:q3.json", "--path", "000,100,110,010", "--moves", str(f))
    assert (code, out.splitlines()[-1]) == (0, "000,010")
    assert run(capsys, "apply-moves", "file:q3.json", "--path", "000,100,110,010", "--moves", "q3.moves")[0] == 0


def test_normalize_to_second_path(capsys, tmp_path):
    code, script, _ = run(capsys, "normalize-path", "lattice:2", "--path", "(0,0),(1,0),(1,1)",
                          "--to", "(0,0),(0,1),(1,1)")
    assert code == 0 and "flip 1 (0,1)" in script
    f = tmp_path / "m.moves"
    f.write_text(script)
    out = run(capsys, "apply-moves", "lattice:2", "--path", "(0,0),(1,0),(1,1)", "--moves", str(f))[1]
    assert out.splitlines()[-1] == "(0,0),(0,1),(1,1)"


def test_apply_moves_errors(capsys, tmp_path):
    bad = tmp_path / "bad.moves"
    bad.write_text("remove-backtrack 1\n")
    code, _, err = run(capsys, "apply-moves", "file:q3.json", "--path", "000,001,011", "--moves", str(bad))
    assert code == 1 and "IllegalMove" in err
    bad.write_text("frobnicate 1\n")
    code, _, err = run(capsys, "apply-moves", "file:q3.json", "--path", "000,001", "--moves", str(bad))
    assert code == 2 and "bad.moves:1:1:" in err
    code, _, err = run(capsys, "normalize-path", "file:q3.json", "--path", "000,011")
    assert code == 1


def test_apply_moves_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("flip 1 010\nremove-backtrack 2\n"))
    code, out, _ = run(capsys, "apply-moves", "file:q3.json", "--path", "000,100,110,010", "--moves", "-")
    assert code == 0 and out.splitlines()[-1] == "000,010"


def test_raag_commands(capsys):
    assert run(capsys, "raag-reduce", "path_abc.gamma", "c b a")[1] == "b c a\n"
    assert run(capsys, "raag-reduce", "edgeless:a,b", "a a^-1")[1] == "1\n"
    assert run(capsys, "raag-eq", "complete:a,b", "a b", "b a")[0] == 0
    assert run(capsys, "raag-eq", "edgeless:a,b", "a b", "b a")[0] == 1
    code, _, err = run(capsys, "raag-reduce", "edgeless:a,b", "a z")
    assert code == 1 and "UnknownGenerator" in err
    assert run(capsys, "raag-reduce", "edgeless:a,b", "a^2")[0] == 2


def test_inversion_and_orbits(capsys):
    code, out, _ = run(capsys, "check-inversion", "edge_swap.action")
    assert code == 1 and out.startswith("inversion: s inverts a-b")
    assert run(capsys, "check-inversion", "p3_reflection.action")[:2] == (0, "no inversion (whole graph)\n")
    assert run(capsys, "check-inversion", "lattice1.action", "--radius", "5")[1] == "no inversion (radius 5)\n"
    code, out, _ = run(capsys, "orbits", "lattice2.action")
    assert "gamma edges: tx-ty" in out and "scope: radius 3" in out
    code, out, _ = run(capsys, "orbits", "f2.action", "--format", "dot")
    # the explored ball, edges coloured by orbit
    assert out.startswith("graph") and out.count(" -- ") == 52
    assert out.count('label="a"') == out.count('label="b"') == 26
    assert run(capsys, "orbits", "edge_swap.action")[0] == 1


def test_theta_commands(capsys):
    assert run(capsys, "theta", "f2.action", "--word", "a b a^-1")[1] == "a b a^-1\n"
    assert run(capsys, "theta", "lattice1.action", "--word", "t t t")[1] == "t t t\n"
    assert run(capsys, "theta", "p3_reflection.action", "--word", "r")[1] == "1\n"
    code, _, err = run(capsys, "theta", "f2.action", "--word", "c")
    assert code == 1 and "UnknownGenerator" in err
    code, out, _ = run(capsys, "verify-hom", "lattice2.action", "--samples", "30")
    assert code == 0 and out.startswith("homomorphism: checked 30, failures 0")
    code, out, _ = run(capsys, "basepoint-check", "f2.action", "--basepoint", "a", "--samples", "20", "--length", "3")
    assert code == 0 and "failures 0" in out


def test_ledger_commands(capsys):
    assert run(capsys, "phi", "ledger.json", "exotic")[1] == "+1[nonrational_class] -1[plane]\n"
    code, out, _ = run(capsys, "phi-path", "ledger.json", "exotic")
    assert code == 0 and out.splitlines()[-1] == "+1[nonrational_class] -1[plane]"
    code, out, _ = run(capsys, "check-witness", "ledger.json")
    assert code == 0 and out.splitlines()[-1] == "8 witnesses checked"
    assert run(capsys, "obstruction", "ledger.json", "--target", "exotic")[0] == 1
    assert run(capsys, "obstruction", "ledger.json", "--target", "plane_involution")[0] == 0
    assert run(capsys, "obstruction", "ledger.json", "--target", "exotic", "--generators", "exotic_inv")[0] == 0
    assert run(capsys, "phi", "ledger.json", "nope")[0] == 2


def test_bad_witness_reported(capsys, tmp_path):
    f = tmp_path / "l.json"
    f.write_text('{"universe": ["k", "h"], "maps": [{"name": "f", "H": ["h"], "K": ["k", "k"]},'
                 ' {"name": "c", "H": ["h"], "K": ["k"]}, {"name": "id"}],'
                 ' "witnesses": [{"f": "f", "g": "id", "composite": "c"}]}')
    code, out, _ = run(capsys, "check-witness", str(f))
    assert code == 1 and out.startswith("FAIL") and "+1[k]" in out


def test_usage_errors(capsys):
    assert run(capsys, "median", "file:nope.json", "a", "b", "c")[0] == 2
    assert run(capsys, "median", "file:bad_loop.json", "a", "b", "c")[0] == 2
    assert run(capsys, "median", "file:q3.json", "000", "001")[0] == 2
    assert run(capsys, "geodesic", "lattice:2", "(0,0)", "(1)")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2


def _cli(args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run([sys.executable, "-m", "medianlab.cli", *args], capture_output=True, text=True, env=env,
                          cwd=os.environ["MEDIANLAB_FIXTURES"])


@pytest.mark.parametrize("args", [
    ["orbits", "f2.action"],
    ["hyperplanes", "file:q3.json", "--format", "dot"],
    ["verify-hom", "f2.action", "--samples", "20"],
    ["normalize-path", "lattice:2", "--path", "(0,0),(1,0),(1,1),(0,1),(0,2)", "--to", "(0,0),(0,1),(0,2)"],
])
def test_output_independent_of_hash_seed(args):
    a, b = _cli(args, 1), _cli(args, 12345)
    assert a.returncode == b.returncode == 0, a.stderr
    assert a.stdout == b.stdout and a.stdout
