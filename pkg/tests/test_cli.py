import json
import subprocess
import sys

import pytest

from fixref.cli import main
from fixref.formats import parse_instance

REPORT_KEYS = {"problem", "parameters", "answer", "witness", "work"}


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return put


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


C4 = "graph 4 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\n"
K2 = "graph 2 1\ne 0 1\n"
SWAPS = "group 8\n(0 1)\n(2 3)\n(4 5)\n(6 7)\n"


def test_cobase_on_four_transpositions(capsys, files):
    code, rep = run_json(capsys, "cobase", files("g.txt", SWAPS), "--k", "3", "--oracle", "--verify")
    assert code == 0
    assert rep["witness"] == [0, 2, 4]
    assert rep["oracle_agreement"] and rep["verified"]
    assert REPORT_KEYS <= set(rep)


def test_classify_rigid_k2_is_no(capsys, files):
    code, out, _ = run(capsys, "classify", files("k2.txt", K2), "--class", "rigid")
    assert code == 1
    assert "answer: no" in out


def test_k_search_with_oracle(capsys, files):
    code, rep = run_json(capsys, "k-search", files("c4.txt", C4), "--class", "discrete",
                         "--k", "2", "--oracle", "--verify")
    assert code == 0
    assert rep["oracle_agreement"] is True and rep["verified"] is True
    assert rep["witness"] == [0, 1]


def test_bad_file_exits_2(capsys, files):
    code, _, err = run(capsys, "refine", files("bad.txt", "graph 1 1\ne 0 0\n"))
    assert code == 2 and "self-loop" in err


def test_wrong_kind_exits_2(capsys, files):
    code, _, err = run(capsys, "min-base", files("c4.txt", C4))
    assert code == 2 and "group" in err


def test_discrete_l_needs_rounds(capsys, files):
    code, _, err = run(capsys, "classify", files("c4.txt", C4), "--class", "discrete-l")
    assert code == 2


def test_missing_required_argument_exits_2(files):
    with pytest.raises(SystemExit) as exc:
        main(["cobase", files("g.txt", SWAPS)])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["refine", "G", "--oracle"],
    ["refine", "G", "--rounds", "1", "--oracle"],
    ["classify", "G", "--class", "refinable", "--oracle"],
    ["classify", "G", "--class", "discrete-l", "--l", "1", "--oracle"],
    ["min-fixing-set", "G", "--oracle", "--verify"],
    ["cofix", "G", "--k", "1", "--oracle", "--verify"],
    ["color-valence", "G", "--k", "1", "--d", "1"],
    ["nk-discrete", "G", "--k", "2", "--oracle", "--verify"],
    ["kernelize", "G", "--k", "1", "--oracle"],
    ["autgroup", "G", "--oracle"],
    ["min-base", "S", "--oracle", "--verify"],
    ["greedy-base", "S", "--verify"],
])
def test_commands_report_schema(capsys, files, argv):
    g = files("c4.txt", C4)
    s = files("s.txt", SWAPS)
    argv = [g if a == "G" else s if a == "S" else a for a in argv]
    code, rep = run_json(capsys, *argv)
    assert code in (0, 1)
    assert REPORT_KEYS <= set(rep)
    assert rep.get("oracle_agreement", True) is True
    assert rep.get("verified", True) is True


def test_solve_3bounded(capsys, files):
    path = files("p.txt", "graph 4 2\nc 2 1\nc 3 1\ne 0 2\ne 1 3\n")
    code, rep = run_json(capsys, "solve-3bounded", path, "--class", "discrete", "--oracle", "--verify")
    assert code == 0 and rep["minimum"] == 1 and rep["oracle_agreement"]


def test_solve_3bounded_rejects_large_class(capsys, files):
    code, _, _ = run(capsys, "solve-3bounded", files("e.txt", "graph 4 0\n"), "--class", "discrete")
    assert code == 2


def test_generators_write_instances(capsys, tmp_path):
    out = tmp_path / "x.txt"
    man = tmp_path / "x.json"
    code, _, _ = run(capsys, "gen-circuit", "--inputs", "3", "--gates", "3", "--k", "1",
                     "--seed", "5", "--out", str(out), "--manifest", str(man))
    assert code == 0
    inst = parse_instance(out.read_text())
    assert inst.kind == "graph" and inst.label.startswith("k=1")
    manifest = json.loads(man.read_text())
    assert manifest["construction"] == "gen-circuit" and manifest["parameters"]["seed"] == 5


@pytest.mark.parametrize("argv,kind", [
    (["gen-cfi"], "graph"),
    (["gen-sat-group", "--vars", "3", "--clauses", "2"], "group"),
    (["gen-rigid-graph", "--vars", "2", "--clauses", "2"], "graph"),
    (["gen-domset", "--n", "4", "--k", "1", "--l", "2"], "graph"),
    (["gen-domset", "--n", "4", "--p", "0.9", "--k", "1", "--l", "1", "--variant", "uncolored"], "graph"),
])
def test_generators_print_instances(capsys, argv, kind):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert parse_instance(out).kind == kind


def test_generated_domset_label_matches_search(capsys, tmp_path):
    out = tmp_path / "d.txt"
    run(capsys, "gen-domset", "--n", "4", "--k", "1", "--l", "1", "--seed", "3", "--out", str(out))
    label = parse_instance(out.read_text()).label
    code, rep = run_json(capsys, "k-search", str(out), "--class", "discrete-l", "--l", "1", "--k", "1")
    assert ("dominating_set=yes" in label) == rep["answer"]


def test_stdin_and_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fixref.cli", "autgroup", "-", "--json"],
                          input=C4, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 8


def test_jobs_from_environment(monkeypatch, capsys, files):
    monkeypatch.setenv("FIXREF_JOBS", "2")
    code, rep = run_json(capsys, "k-search", files("c4.txt", C4), "--class", "discrete", "--k", "2")
    assert code == 0 and rep["witness"] == [0, 1]
