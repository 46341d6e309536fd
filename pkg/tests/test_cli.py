from fractions import Fraction as F
import json
import subprocess
import sys

import pytest

from overrot.cli import EX_DATAERR, EX_PRECONDITION, EX_USAGE, execute
from overrot.formats import read_pattern, read_plmap
from overrot.kneading import kneading, nu_prime
from overrot.patterns import over_rotation_pair
from overrot.unimodal import over_rotation_interval


def run(*argv):
    r = execute(argv)
    assert r.code == 0, r.summary
    return json.loads(r.artifact)


def test_gamma():
    assert execute(["gamma", "2", "5"]).artifact == '{"orp":[2,5],"overtwist":true,"pattern":[3,5,4,2,1]}\n'
    assert run("gamma", "1", "2", "--prime")["pattern"] == [3, 4, 3, 1]


def test_rotint():
    assert run("rotint", "data/gamma25.map") == {"interval": ["2/5", "1/2"], "exact": True}
    out = run("rotint", "quadratic:3.83")
    (lo, hi), right = out["interval"]
    assert not out["exact"] and right == "1/2"
    assert abs(F(lo) - F(1, 3)) <= F(1, 1000) and abs(F(hi) - F(1, 3)) <= F(1, 1000)


def test_order():
    assert run("order", "3", "5") == {"sharper": True}
    assert run("order", "5", "3") == {"sharper": False}
    assert run("order", "--pairs", "1", "3", "1", "2") == {"forces": True}


def test_orp_and_overtwist():
    assert run("orp", "data/gamma25.pat") == {"orp": [2, 5], "rho": "2/5"}
    out = run("overtwist", "data/gamma25.pat")
    assert out["overtwist"] and out["code"] == ["0/1", "1/5", "2/5", "4/5", "3/5"]


def test_nu_and_kneading():
    assert run("nu", "2", "5") == {"nu": "(RLRRC)*"}
    assert run("nu", "1", "2", "--prime") == {"nu_prime": "RLR*"}
    assert run("nu", "--real", "0.381966", "--len", "10") == {"nu": "RLRRLRRRRL…@10"}
    assert run("kneading", "data/gamma25.map", "--len", "20") == {"kneading": "(RLRRC)*"}
    assert run("rho-from-kneading", "(RLRRC)*") == {"exact": True, "method": "kneading", "rho": "2/5"}


def test_census():
    out = run("census", "--max-period", "5")["overtwists"]
    assert out["5"] == [[2, 3, 4, 5, 1], [3, 5, 4, 2, 1]]  # gamma 1/5 and gamma 2/5
    assert out["2"] == [[2, 1]] and out["3"] == [[2, 3, 1]]
    assert execute(["census", "--max-period", "11"]).code == EX_USAGE


def test_census_allow_large_parses():
    # only parsing is checked; the actual period-11 census is too slow for a unit test
    from overrot.cli import build_parser

    a = build_parser().parse_args(["census", "--max-period", "11", "--allow-large"])
    assert a.allow_large and a.max_period == 11


def test_compare_verdicts():
    out = run("compare", "--lemma", "3.2", "quadratic:4", "quadratic:7/2")
    assert out["holds"] is True
    out = run("compare", "--lemma", "3.7", "quadratic:7/2", "quadratic:4")
    assert out["holds"] is False and out["witnesses"]
    out = run("compare", "--lemma", "3.1", "quadratic:4", "quadratic:4")
    assert out["holds"] is True


def test_sweep_csv(tmp_path):
    r = execute(["sweep", "data/scaled_tent.fam"])
    assert r.code == 0 and r.artifact.startswith("nu,rho_lo,rho_hi,exact,flags\n")
    dest = tmp_path / "out.csv"
    out = run("sweep", "data/scaled_tent.fam", "--csv", str(dest))
    assert dest.read_text() == r.artifact
    assert out["rows"] == 9 and out["monotone"] is True


@pytest.mark.parametrize("argv,code", [
    (["bogus"], EX_USAGE),
    ([], EX_USAGE),
    (["gamma", "x", "5"], EX_USAGE),
    (["nu"], EX_USAGE),
    (["order", "3"], EX_USAGE),
    (["rotint", "nofile.map"], EX_DATAERR),
    (["orp", "tests/nonexistent.pat"], EX_DATAERR),
    (["rho-from-kneading", "RXL*"], EX_DATAERR),
    (["orp", "data/divergent.pat"], EX_PRECONDITION),
    (["gamma", "2", "4"], EX_PRECONDITION),
    (["nu", "3", "5"], EX_PRECONDITION),
])
def test_exit_codes(argv, code):
    r = execute(argv)
    assert r.code == code, r.summary
    assert r.artifact == "" and r.summary


def test_precondition_message_is_stage_tagged():
    r = execute(["orp", "data/divergent.pat"])
    assert "[orp]" in r.summary and "horseshoe" in r.summary


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.map"
    p.write_text("# rotint-v1\n0 0\n1/2 one\n1 0\n")
    assert execute(["rotint", str(p)]).code == EX_DATAERR


@pytest.mark.parametrize("argv", [["gamma", "3", "8"], ["rotint", "data/gamma25.map"], ["census", "--max-period", "6"],
                                  ["overtwist", "data/gamma13.pat", "--phi", "crossing"],
                                  ["sweep", "data/scaled_tent.fam"]])
def test_byte_identical(argv):
    assert execute(argv).artifact == execute(argv).artifact


def test_roundtrip_with_library():
    P = read_pattern("data/gamma25.pat")
    pair = over_rotation_pair(P)
    assert run("orp", "data/gamma25.pat")["orp"] == list(pair.as_tuple())
    f = read_plmap("data/gamma25.map")
    I = over_rotation_interval(f)
    assert run("rotint", "data/gamma25.map")["interval"] == [f"{I.left.value}", f"{I.right}"]
    assert run("kneading", "data/gamma25.map")["kneading"] == str(kneading(f, 64))
    assert run("nu", "2", "5", "--prime")["nu_prime"] == str(nu_prime(2, 5))


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "overrot.cli", "order", "3", "5"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == '{"sharper":true}\n'
    out = subprocess.run([sys.executable, "-m", "overrot.cli", "bogus"], capture_output=True, text=True)
    assert out.returncode == EX_USAGE and out.stderr
