import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import FIXTURES, solvable_triple
from vertexforms.algebra import GF2, GF3
from vertexforms.cli import main
from vertexforms.forms_rect import enumerate_six
from vertexforms.grid import (
    BoundarySpec,
    GridShape,
    LatticeState,
    boundary_of,
    serialize_boundary,
    serialize_state,
)
from vertexforms.yangbaxter import (
    VertexWeights,
    serialize_weights,
    weights_from_vector,
)

FIXTURE = str(FIXTURES / "rect_5x3.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


def write_weights(tmp_path, name, w):
    p = tmp_path / name
    p.write_text(serialize_weights(w))
    return str(p)


def zero_boundary_file(tmp_path, shape, field):
    b = BoundarySpec(
        shape=shape, field=field,
        f_bottom=(0,) * shape.m, f_top=(0,) * shape.m,
        g_left=(0,) * shape.n, g_right=(0,) * shape.n,
    )
    p = tmp_path / f"zb_{field.name}.json"
    p.write_text(serialize_boundary(b))
    return str(p)


def test_count_six(capsys):
    code, doc = run_json(capsys, "count", "--m", "2", "--n", "2")
    assert code == 0 and doc == {"count": 82}


def test_count_check_colorings(capsys):
    code, doc = run_json(
        capsys, "count", "--m", "2", "--n", "2", "--check-colorings"
    )
    assert code == 0
    assert doc == {"states": 82, "colorings": 246, "match": True}


def test_count_eight(capsys):
    code, doc = run_json(capsys, "count", "--model", "eight", "--m", "2", "--n", "2")
    assert code == 0 and doc == {"total": 256}


def test_count_eight_with_boundary(capsys, tmp_path):
    bfile = zero_boundary_file(tmp_path, GridShape(2, 2), GF2)
    code, doc = run_json(
        capsys, "count", "--model", "eight", "--m", "2", "--n", "2",
        "--boundary", bfile,
    )
    assert code == 0 and doc == {"count": 2}


def test_count_toroidal(capsys):
    code, doc = run_json(capsys, "count", "--model", "toroidal", "--m", "2", "--n", "2")
    assert code == 0 and doc == {"count": 18}


def test_count_six_with_boundary(capsys, tmp_path):
    bfile = zero_boundary_file(tmp_path, GridShape(2, 2), GF3)
    want = sum(
        1
        for st in enumerate_six(GridShape(2, 2))
        if boundary_of(st).edge_tuple() == (0,) * 8
    )
    code, doc = run_json(
        capsys, "count", "--m", "2", "--n", "2", "--boundary", bfile
    )
    assert code == 0 and doc == {"count": want}


def test_enumerate_six_json(capsys):
    code, doc = run_json(capsys, "enumerate", "--m", "2", "--n", "2")
    assert code == 0
    assert doc["count"] == 82 and len(doc["states"]) == 82
    assert set(doc["states"][0]) == {"m", "n", "field", "f", "g"}


def test_enumerate_six_csv(capsys):
    code, out, err = run(capsys, "enumerate", "--m", "2", "--n", "2",
                         "--format", "csv")
    assert code == 0 and err == ""
    lines = out.strip().splitlines()
    assert lines[0].startswith("f[1][1],")
    assert len(lines) == 83
    assert len(lines[0].split(",")) == GridShape(2, 2).edge_count


def test_enumerate_toroidal_rejects_boundary(capsys, tmp_path):
    bfile = zero_boundary_file(tmp_path, GridShape(2, 2), GF3)
    code, out, err = run(
        capsys, "enumerate", "--model", "toroidal", "--m", "2", "--n", "2",
        "--boundary", bfile,
    )
    assert code == 2 and "error:" in err


def test_count_toroidal_rejects_boundary(capsys, tmp_path):
    bfile = zero_boundary_file(tmp_path, GridShape(2, 2), GF3)
    code, out, err = run(
        capsys, "count", "--model", "toroidal", "--m", "2", "--n", "2",
        "--boundary", bfile,
    )
    assert code == 2 and "error:" in err


def test_verify_state_fixture(capsys):
    code, doc = run_json(capsys, "verify", "state", "--in", FIXTURE)
    assert code == 0 and doc == {"admissible": True}


def test_verify_state_inadmissible(capsys, tmp_path):
    bad = LatticeState(
        shape=GridShape(2, 2), field=GF3,
        f=[[1, 0, 0], [0, 0, 0]], g=[[0, 0]] * 3,
    )
    p = tmp_path / "bad.json"
    p.write_text(serialize_state(bad))
    code, doc = run_json(capsys, "verify", "state", "--in", str(p))
    assert code == 1
    assert doc["admissible"] is False
    assert doc["counterexample"]["vertex"] == [1, 1]
    assert len(doc["counterexample"]["edges"]) == 4


def test_verify_state_eight_model(capsys, tmp_path):
    ok = LatticeState(
        shape=GridShape(2, 2), field=GF2,
        f=[[1, 1, 1], [0, 0, 0]], g=[[0, 0]] * 3,
    )
    p = tmp_path / "ok8.json"
    p.write_text(serialize_state(ok))
    code, doc = run_json(capsys, "verify", "state", "--in", str(p),
                         "--model", "eight")
    assert code == 0 and doc == {"admissible": True}


def test_verify_poincare_exhaustive(capsys):
    code, doc = run_json(capsys, "verify", "poincare", "--m", "2", "--n", "2")
    assert code == 0
    assert doc["passed"] is True
    assert doc["mode"] == "exhaustive" and doc["checked"] == 6561


def test_verify_poincare_random(capsys):
    code, doc = run_json(
        capsys, "verify", "poincare", "--m", "4", "--n", "4", "--samples", "20"
    )
    assert code == 0
    assert doc["mode"] == "random" and doc["checked"] == 20


def test_verify_bijection(capsys):
    code, doc = run_json(
        capsys, "verify", "bijection", "--m", "2", "--n", "2", "--samples", "50"
    )
    assert code == 0
    assert doc["passed"] is True and doc["checked"] == 82 * 3 + 50


def test_verify_cohomology_exhaustive(capsys):
    code, doc = run_json(capsys, "verify", "cohomology", "--m", "2", "--n", "2")
    assert code == 0
    assert doc["mode"] == "exhaustive" and doc["checked"] == 243


def test_verify_cohomology_random(capsys):
    code, doc = run_json(
        capsys, "verify", "cohomology", "--m", "4", "--n", "2", "--samples", "30"
    )
    assert code == 0
    assert doc["mode"] == "random" and doc["checked"] == 30


def test_verify_cohomology_bad_period(capsys):
    code, out, err = run(capsys, "verify", "cohomology", "--m", "3", "--n", "2")
    assert code == 2 and "rejected" in err


def test_verify_sparse_fibers(capsys):
    code, doc = run_json(capsys, "verify", "sparse-fibers", "--m", "2", "--n", "2")
    assert code == 0
    assert doc["passed"] is True and doc["states"] == 18
    assert len(doc["fibers"]) == 11
    assert all(
        set(e) == {"h", "r_choices", "s_choices", "fiber_size"}
        for e in doc["fibers"]
    )


def test_verify_sparse_fibers_csv(capsys):
    code, out, err = run(
        capsys, "verify", "sparse-fibers", "--m", "2", "--n", "2",
        "--format", "csv",
    )
    assert code == 0 and err == ""
    lines = out.strip().splitlines()
    assert lines[0] == "h,r_choices,s_choices,fiber_size"
    assert len(lines) == 12


def test_verify_defect_rank(capsys):
    code, doc = run_json(capsys, "verify", "defect-rank", "--m", "2", "--n", "2")
    assert code == 0
    assert doc["rank"] == 4 and doc["expected_rank"] == 4
    assert doc["total_states"] == 256 and doc["brute_total"] == 256
    assert doc["valid_boundaries"] == 128 and doc["passed"] is True


def solvable_files(tmp_path):
    R, S, T = solvable_triple(
        Fraction(1, 3), Fraction(1, 5), Fraction(1, 7),
        Fraction(2), Fraction(3, 2), Fraction(5, 3),
    )
    return (
        write_weights(tmp_path, "r.json", R),
        write_weights(tmp_path, "s.json", S),
        write_weights(tmp_path, "t.json", T),
    )


def test_ybe_check_solvable(capsys, tmp_path):
    rf, sf, tf = solvable_files(tmp_path)
    code, doc = run_json(capsys, "ybe", "check", "--r", rf, "--s", sf, "--t", tf)
    assert code == 0 and doc == {"commutator_zero": True}


def test_ybe_check_failure_exit_code(capsys, tmp_path):
    rf, sf, tf = solvable_files(tmp_path)
    other = write_weights(tmp_path, "id.json", VertexWeights(1, 2, 3, 4, 5, 6, 7, 8))
    code, doc = run_json(capsys, "ybe", "check", "--r", other, "--s", sf, "--t", tf)
    assert code == 1 and doc == {"commutator_zero": False}


def test_ybe_residuals(capsys, tmp_path):
    rf = write_weights(tmp_path, "r.json",
                       weights_from_vector((0, 0, 0, 0, 1, 1, 0, 0)))
    sf = write_weights(tmp_path, "s.json",
                       weights_from_vector((0, 0, 0, 0, 1, 2, 0, 0)))
    code, doc = run_json(capsys, "ybe", "residuals", "--r", rf, "--s", sf, "--t", rf)
    assert code == 0
    assert doc["all_zero"] is False
    assert len(doc["residuals64"]) == 64 and len(doc["residuals28"]) == 28
    nonzero = [k for k, e in enumerate(doc["residuals28"]) if e["value"] != "0"]
    assert nonzero == [24]
    assert doc["residuals28"][24]["label"].startswith("eq7")


def test_ybe_residuals_csv(capsys, tmp_path):
    rf, sf, tf = solvable_files(tmp_path)
    code, out, err = run(capsys, "ybe", "residuals", "--r", rf, "--s", sf,
                         "--t", tf, "--format", "csv")
    assert code == 0 and err == ""
    lines = out.strip().splitlines()
    assert lines[0] == "kind,index,label,value"
    assert len(lines) == 1 + 64 + 28


def test_ybe_conditions_pass(capsys, tmp_path):
    _, sf, tf = solvable_files(tmp_path)
    code, doc = run_json(capsys, "ybe", "conditions", "--s", sf, "--t", tf)
    assert code == 0 and doc["all_hold"] is True


def test_ybe_conditions_fail(capsys, tmp_path):
    sf = write_weights(tmp_path, "sb.json", VertexWeights(2, 3, 5, 7, 2, 3, 2, 5))
    tf = write_weights(tmp_path, "tb.json", VertexWeights(1, 2, 3, 4, 5, 6, 7, 8))
    code, doc = run_json(capsys, "ybe", "conditions", "--s", sf, "--t", tf)
    assert code == 1 and doc["all_hold"] is False


def test_ybe_conditions_zero_weight(capsys, tmp_path):
    sf = write_weights(tmp_path, "sid.json", VertexWeights.identity())
    tf = write_weights(tmp_path, "tfull.json", VertexWeights(1, 1, 1, 1, 1, 1, 1, 1))
    code, out, err = run(capsys, "ybe", "conditions", "--s", sf, "--t", tf)
    assert code == 2 and "nonzero" in err


def test_ybe_solve_identity(capsys, tmp_path):
    f = write_weights(tmp_path, "id.json", VertexWeights.identity())
    code, doc = run_json(capsys, "ybe", "solve", "--s", f, "--t", f)
    assert code == 0
    assert doc["dimension"] == 8
    assert doc["witness_commutator_zero"] is True
    assert set(doc["witness"]) == {
        "a1", "a-1", "b1", "b-1", "c1", "c-1", "d1", "d-1"
    }


def test_ybe_solve_scan_miss(capsys, tmp_path):
    from conftest import baxter_weights

    f = write_weights(tmp_path, "bx.json",
                      baxter_weights(Fraction(1, 5), Fraction(1, 7)))
    code, doc = run_json(capsys, "ybe", "solve", "--s", f, "--t", f)
    assert code == 1
    assert doc["dimension"] == 1
    assert doc["witness"] is None
    assert doc["message"] == "none found in scan"


def test_partition_six(capsys, tmp_path):
    f = write_weights(tmp_path, "u6.json", VertexWeights(1, 1, 1, 1, 1, 1, 0, 0))
    code, doc = run_json(capsys, "partition", "--m", "2", "--n", "2",
                         "--weights", f)
    assert code == 0 and doc == {"value": "82"}


def test_partition_eight_with_boundary(capsys, tmp_path):
    f = write_weights(tmp_path, "u8.json", weights_from_vector((1,) * 8))
    bfile = zero_boundary_file(tmp_path, GridShape(2, 2), GF2)
    code, doc = run_json(capsys, "partition", "--model", "eight", "--m", "2",
                         "--n", "2", "--weights", f, "--boundary", bfile)
    assert code == 0 and doc == {"value": "2"}


def test_partition_six_rejects_d_weights(capsys, tmp_path):
    f = write_weights(tmp_path, "u8.json", weights_from_vector((1,) * 8))
    code, out, err = run(capsys, "partition", "--m", "2", "--n", "2",
                         "--weights", f)
    assert code == 2 and "d1 = d-1 = 0" in err


def test_size_guard_exits_2(capsys):
    code, out, err = run(capsys, "count", "--m", "9", "--n", "9")
    assert code == 2 and "guard" in err


def test_missing_file_exits_2(capsys):
    code, out, err = run(capsys, "verify", "state", "--in", "no_such_file.json")
    assert code == 2 and "cannot read" in err


def test_boundary_shape_mismatch_exits_2(capsys, tmp_path):
    bfile = zero_boundary_file(tmp_path, GridShape(2, 3), GF2)
    code, out, err = run(capsys, "count", "--model", "eight", "--m", "2",
                         "--n", "2", "--boundary", bfile)
    assert code == 2 and "requested (2, 2)" in err


def test_boundary_field_mismatch_exits_2(capsys, tmp_path):
    bfile = zero_boundary_file(tmp_path, GridShape(2, 2), GF3)
    code, out, err = run(capsys, "count", "--model", "eight", "--m", "2",
                         "--n", "2", "--boundary", bfile)
    assert code == 2 and "expected F2" in err


def test_bad_shape_exits_2(capsys):
    code, out, err = run(capsys, "count", "--m", "1", "--n", "2")
    assert code == 2 and "m, n >= 2" in err


def test_unknown_command_exits_2(capsys):
    code = main(["frobnicate"])
    capsys.readouterr()
    assert code == 2


def test_console_script_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "vertexforms.cli", "count", "--m", "2", "--n", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"count": 82}
