import json
import subprocess
import sys

import pytest

from cyclequiv.algebra import gf, parse_poly
from cyclequiv.cli import run
from cyclequiv.cosets import coset_table, parse_multiset


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_equiv_worked_example(capsys):
    code, out, _ = cli(capsys, "equiv", "--q", "2", "--n", "14", "--a", "{1,2,4}^2", "--b", "{3,5,6}^2")
    assert (code, out.strip()) == (0, "equivalent e=5 b=0")


def test_equiv_accepts_polynomials(capsys):
    code, out, _ = cli(capsys, "equiv", "--q", "2", "--n", "14", "--a", "x^6 + x^4 + 1", "--b", "[1010001]")
    assert (code, out.strip()) == (0, "equivalent e=5 b=0")


def test_equiv_unknown_and_oracle(capsys):
    args = ["equiv", "--q", "3", "--n", "8", "--a", "{0,1,3,4}", "--b", "{1,2,3,6}"]
    code, out, _ = cli(capsys, *args)
    assert (code, out.strip()) == (1, "unknown none")
    code, out, _ = cli(capsys, *args, "--mode", "literal")
    assert code == 1
    code, out, _ = cli(capsys, *args, "--oracle-cap", "100000000")
    assert code == 0 and out.startswith("equivalent")


def test_equiv_inequivalent(capsys):
    code, out, _ = cli(capsys, "equiv", "--q", "2", "--n", "7", "--a", "{0}", "--b", "{1}")
    assert (code, out.strip()) == (2, "inequivalent none")


def test_equiv_json_round_trips(capsys):
    code, out, _ = cli(capsys, "equiv", "--q", "3", "--n", "8", "--a", "{1,3}", "--b", "{5,7}",
                       "--format", "json")
    data = json.loads(out)
    T = coset_table(3, 8)
    assert parse_multiset(data["a"], T) == parse_multiset("{1,3}", T)
    assert parse_poly(data["gen_b"], gf(3)).degree == 2
    assert data["witness"] is not None and code == 0


def test_cosets_output(capsys):
    code, out, _ = cli(capsys, "cosets", "--q", "2", "--n", "14")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("n = 7 * 2^1")
    assert [ln.split("\t")[0] for ln in lines[1:]] == ["{0}", "{1,2,4}", "{3,5,6}"]
    for ln in lines[1:]:
        assert parse_poly(ln.split("\t")[2], gf(2)).degree == int(ln.split("\t")[1])


def test_partition_to_file_and_stdout(capsys, tmp_path):
    out_file = tmp_path / "p.txt"
    code, out, err = cli(capsys, "partition", "--q", "2", "--n", "7", "--out", str(out_file))
    assert code == 0 and "5 classes" in out
    code, out, _ = cli(capsys, "partition", "--q", "2", "--n", "7", "--quiet")
    assert out == out_file.read_text()


def test_partition_budget_refusal(capsys):
    code, _, err = cli(capsys, "partition", "--q", "2", "--n", "127", "--budget", "10")
    assert code == 64 and "exceeds" in err


def test_mindist_cyclic_and_qc(capsys):
    code, out, _ = cli(capsys, "mindist", "--q", "2", "--n", "7", "--gen", "[1101]", "--witness")
    assert code == 0 and out.startswith("[7,4,3]_2 cert=exact")
    word = out.strip().splitlines()[1].split()[1]
    assert word.count("1") == 3
    code, out, _ = cli(capsys, "mindist", "--q", "3", "--qc", "20,3", "--gen", "[21]",
                       "--f2", "[2200021200110200111]", "--f3", "[0012002212221102101]")
    assert code == 0 and out.startswith("[60,19,22]_3 cert=exact")


def test_mindist_bounds_only_exit(capsys):
    code, out, _ = cli(capsys, "mindist", "--q", "2", "--n", "7", "--gen", "[1101]", "--upper-only")
    assert code == 1 and "cert=upper" in out


def test_mindist_check_polynomial(capsys):
    code, out, _ = cli(capsys, "mindist", "--q", "2", "--n", "7", "--gen", "[11]", "--check")
    assert code == 0 and out.startswith("[7,1,7]_2")


@pytest.mark.parametrize("argv,needle", [
    (["mindist", "--q", "6", "--n", "7", "--gen", "[1]"], "--q 6"),
    (["mindist", "--q", "2", "--gen", "[1101]"], "--n is required"),
    (["mindist", "--q", "3", "--qc", "20", "--gen", "[21]"], "--qc expects"),
    (["mindist", "--q", "3", "--qc", "20,3", "--gen", "[21]", "--f2", "[1]"], "needs 2"),
    (["equiv", "--q", "2", "--n", "7", "--a", "{0", "--b", "{1}"], "position"),
    (["equiv", "--q", "3", "--n", "8", "--a", "[12x]", "--b", "{1}"], "token 3"),
    (["search", "--q", "3"], "either --m"),
    (["verify", "--manifest", "/nonexistent/file"], "No such file"),
])
def test_errors_exit_64(capsys, argv, needle):
    code, _, err = cli(capsys, *argv)
    assert code == 64 and needle in err


def test_bad_flag_exits_64(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["equiv", "--bogus"])
    assert exc.value.code == 64


def test_no_arguments_prints_usage():
    proc = subprocess.run([sys.executable, "-m", "cyclequiv.cli"], capture_output=True, text=True)
    assert proc.returncode == 64
    assert "usage" in proc.stderr.lower()


def test_search_sweep_and_out(capsys, tmp_path):
    dest = tmp_path / "r.txt"
    code, out, _ = cli(capsys, "search", "--q", "2", "--n", "7", "--out", str(dest), "--quiet")
    assert code == 0 and out == dest.read_text()
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert [ln.split()[:4] for ln in body] == [["2", "7", "7", "1"], ["2", "7", "6", "2"],
                                               ["2", "7", "4", "3"], ["2", "7", "3", "4"],
                                               ["2", "7", "1", "7"]]


def test_search_forced_and_derive(capsys, tmp_path):
    force = tmp_path / "force.txt"
    force.write_text("[21] [2200021200110200111] [0012002212221102101]\n")
    code, out, _ = cli(capsys, "search", "--q", "3", "--m", "20", "--ell", "3", "--trials", "0",
                       "--force", str(force), "--derive", "--quiet")
    assert code == 0
    rows = [ln.split() for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0][:6] == ["3", "60", "19", "22", "22", "exact"]
    assert any(r[:4] == ["3", "59", "18", "22"] and r[5] == "exact" for r in rows)


def test_verify_small_manifest(capsys, tmp_path):
    man = tmp_path / "m.manifest"
    man.write_text("ham 2 7 4 3 exact cyclic(g=[1101])\nno 2 7 4 4 exact cyclic(g=[1101])\n")
    res = tmp_path / "out.json"
    code, out, _ = cli(capsys, "verify", "--manifest", str(man), "--out", str(res), "--quiet")
    assert code == 1
    assert out.splitlines()[0].startswith("PASS ham")
    assert out.splitlines()[1].startswith("FAIL no")
    assert out.strip().endswith("1/2 entries passed")
    assert [r["ok"] for r in json.loads(res.read_text())] == [True, False]
    code, out, _ = cli(capsys, "verify", "--manifest", str(man), "--only", "ham", "--quiet")
    assert code == 0


def test_verify_shipped_subset(capsys):
    code, out, _ = cli(capsys, "verify", "--only", "bk-56-42-6,bk-60-53-4", "--quiet")
    assert code == 0 and "2/2 entries passed" in out
