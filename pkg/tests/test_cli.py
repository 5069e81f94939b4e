"""Command-line surface: every subcommand, output formats, file
output, exit codes, and byte determinism."""

import json
import subprocess
import sys

import pytest

from f1kgw.cli import main


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


def test_axioms_text(capsys):
    rc, out = run(["axioms", "--max-size", "2"], capsys)
    assert rc == 0
    assert "result: ALL PASS" in out


def test_axioms_json_is_sorted_and_newline_terminated(capsys):
    rc, out = run(["axioms", "--max-size", "2", "--output", "json"], capsys)
    assert rc == 0
    assert out.endswith("\n") and not out.endswith("\n\n")
    data = json.loads(out)
    assert data["ok"] is True
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"


def test_axioms_jobs_do_not_change_bytes(capsys):
    _, one = run(["axioms", "--max-size", "2", "--jobs", "1", "--output", "json"], capsys)
    _, two = run(["axioms", "--max-size", "2", "--jobs", "2", "--output", "json"], capsys)
    assert one == two


def test_forms_counts(capsys):
    rc, out = run(["forms", "--max-size", "4"], capsys)
    assert rc == 0
    assert "size 4: 10 forms" in out
    assert "total: 18" in out


def test_decompose_worked_example(capsys):
    rc, out = run(["decompose", "inv:(1 2)(3)"], capsys)
    assert rc == 0
    assert out == (
        "form: inv:(1 2)(3)\n"
        "decomposition: H(1) ⊕ id_1\n"
        "isometry: [0,1,2,3]:3->3\n"
        "automorphisms: 2\n"
    )


def test_decompose_edge_names(capsys):
    assert run(["decompose", "inv:()"], capsys)[1].splitlines()[1] == "decomposition: 0"
    assert (
        run(["decompose", "inv:(1)(2)"], capsys)[1].splitlines()[1]
        == "decomposition: id_2"
    )
    assert (
        run(["decompose", "inv:(1 2)"], capsys)[1].splitlines()[1]
        == "decomposition: H(1)"
    )


def test_decompose_rejects_bad_literal(capsys):
    rc = main(["decompose", "inv:(1 3)"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "error:" in captured.err


def test_k0_routes_agree(capsys):
    rc, out = run(["k0", "--max-size", "3", "--output", "json"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["routes_agree"] is True
    assert data["group"] == {"rank": 1, "torsion": []}


def test_gw0(capsys):
    rc, out = run(["gw0", "--max-size", "4"], capsys)
    assert rc == 0
    assert "GW0 at max size 4: Z" in out
    assert "hermitian span components at size 4: 5" in out


def test_witt_json_shape(capsys):
    rc, out = run(["witt", "--max-size", "4", "--output", "json"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert set(data) == {"invariant", "max_size", "monoid", "classes", "completion"}
    assert data["invariant"] == "W0"
    assert data["completion"] == {"rank": 1, "torsion": []}


def test_qcat_hom_table(capsys):
    rc, out = run(["qcat", "--max-size", "2"], capsys)
    assert rc == 0
    assert "span category: 3 objects, 14 morphisms" in out
    assert "hom(0, 2): 4" in out


def test_qhcat_json(capsys):
    rc, out = run(["qhcat", "--max-size", "2", "--output", "json"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert len(data["objects"]) == 4


def test_qcat_dot(capsys):
    rc, out = run(["qcat", "--max-size", "2", "--output", "dot"], capsys)
    assert rc == 0
    assert out.startswith("digraph")


def test_suites_exit_zero(capsys):
    rc, out = run(["suites", "--max-size", "2"], capsys)
    assert rc == 0
    assert out.count("result: ALL PASS") == 4


def test_export_to_file(tmp_path, capsys):
    target = tmp_path / "completion.json"
    rc, out = run(
        ["export", "--what", "completion", "--max-size", "2", "--out", str(target)],
        capsys,
    )
    assert rc == 0
    data = json.loads(target.read_text())
    assert set(data) >= {"objects", "homs", "comp"}
    # stdout stays quiet when writing to a file
    assert out == ""


def test_export_dot(capsys):
    rc, out = run(["export", "--what", "qcat", "--max-size", "2", "--output", "dot"], capsys)
    assert rc == 0
    assert out.startswith("digraph")


def test_unknown_command_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_console_script_round_trip():
    # the installed entry point and byte determinism across processes
    cmd = [sys.executable, "-m", "f1kgw.cli", "witt", "--max-size", "3", "--output", "json"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["invariant"] == "W0"
