import csv
import io
import json

import pytest

from sliceburnside.cli import main, parse_slice
from sliceburnside.groups import GroupError, group_from_spec


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_group_summary(capsys):
    code, out, _ = run_cli(capsys, "group", "heis:3")
    assert code == 0
    assert "order: 27" in out
    assert "slice_classes: 38" in out


def test_group_summary_json(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "group", "dihedral:8")
    assert code == 0
    info = json.loads(out)
    assert info["order"] == 8
    assert info["subgroups"] == 10


def test_marks_csv(capsys):
    code, out, _ = run_cli(capsys, "marks", "cyclic:4")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    n = len(rows) - 1
    assert all(len(r) == n + 1 for r in rows)
    # header labels match row labels
    assert [r[0] for r in rows[1:]] == rows[0][1:]


def test_idempotents_json(capsys):
    code, out, _ = run_cli(capsys, "idempotents", "cyclic:2")
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 3
    for coeffs in payload.values():
        for value in coeffs.values():
            num, den = value.split("/")
            int(num), int(den)


def test_mul_command(capsys):
    code, out, _ = run_cli(capsys, "mul", "cyclic:2", "T=*;S=", "T=*;S=")
    assert code == 0
    assert out.strip() == "(T=0.1|S=0): 2/1"
    code, out, _ = run_cli(
        capsys, "--format", "json", "mul", "cyclic:2", "T=*;S=", "T=*;S="
    )
    assert json.loads(out) == {"(T=0.1|S=0)": "2/1"}


def test_mul_with_debug_oracle(capsys):
    code, out, _ = run_cli(
        capsys, "--debug-oracle", "mul", "dihedral:8", "T=*;S=g1", "T=*;S=g4"
    )
    assert code == 0


def test_mconst_command(capsys):
    code, out, _ = run_cli(capsys, "mconst", "cyclic:2", "", "g1")
    assert code == 0
    assert out.strip() == "(0/1, 0/1, 1/1)"
    code, out, _ = run_cli(capsys, "--format", "json", "mconst", "elab:2^3", "", "g1,g2")
    payload = json.loads(out)
    assert payload["m_supplement"] == "3/1"


def test_tslices_command(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "tslices", "elab:3^2")
    assert code == 0
    labels = json.loads(out)
    assert "(T=0.1.2.3.4.5.6.7.8|S=0.1.2.3.4.5.6.7.8)" in labels


def test_bgroups_command(capsys):
    code, out, _ = run_cli(capsys, "bgroups", "--max-order", "9", "--prime", "3")
    assert code == 0
    assert out.split() == ["C1", "C3xC3"]


def test_ideal_dim_command(capsys):
    code, out, _ = run_cli(capsys, "ideal-dim", "heis:3", "--family", "J3")
    assert code == 0 and out.strip() == "4"
    code, out, _ = run_cli(capsys, "ideal-dim", "cyclic:1", "--family", "J1")
    assert code == 0 and out.strip() == "0"
    code, out, err = run_cli(capsys, "ideal-dim", "cyclic:6", "--family", "J1")
    assert code == 0
    assert "p-groups" in err


def test_minimal_groups_command(capsys):
    code, out, _ = run_cli(
        capsys, "minimal-groups", "--family", "J3", "--prime", "3", "--bound", "27"
    )
    assert code == 0
    assert sorted(out.split()) == ["C3xC3xC3", "C9xC3", "H27", "M27"]


def test_closure_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "--format", "json",
        "closure", "--seed", "cyclic:1:T=*;S=*", "--prime", "2", "--bound", "8",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["universe_bounded"] is True
    assert payload["lower_bound_of_ideal_trace"] is True
    assert len(payload["members"]) > 10


def test_closure_with_proper_top(capsys):
    code, out, _ = run_cli(
        capsys,
        "closure", "--seed", "cyclic:4:T=g2;S=", "--prime", "2", "--bound", "8",
    )
    assert code == 0
    assert "C2:S=0" in out


def test_check_family_command(capsys):
    code, out, _ = run_cli(
        capsys, "check-family", "--family", "J1", "--prime", "2", "--bound", "8"
    )
    assert code == 0
    assert "PASS" in out
    code, out, _ = run_cli(
        capsys,
        "--format", "json",
        "check-family", "--family", "S_CYCLIC", "--prime", "2", "--bound", "8",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    assert payload["preimage_violations"]


def test_usage_errors_exit_two(capsys):
    assert run_cli(capsys, "group", "bogus:1")[0] == 2
    assert run_cli(capsys, "mul", "cyclic:2", "T=*;S=", "T=g0;S=g9")[0] == 2
    assert run_cli(capsys, "mconst", "dihedral:8", "", "g4")[0] == 2  # not normal
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_output_is_deterministic(capsys):
    a = run_cli(capsys, "idempotents", "dihedral:8")
    b = run_cli(capsys, "idempotents", "dihedral:8")
    assert a == b


def test_parse_slice_forms():
    g = group_from_spec("dihedral:8")
    t, s = parse_slice("T=*;S=g1", g)
    assert len(t) == 8 and len(s) == 4
    t, s = parse_slice("T=1,4;S=", g)
    assert len(s) == 1 and set(s) <= set(t)
    with pytest.raises(GroupError):
        parse_slice("T=g1;S=g4", g)  # bottom not inside top
    with pytest.raises(GroupError):
        parse_slice("X=g1;S=g1", g)
    with pytest.raises(GroupError):
        parse_slice("T=*", g)
