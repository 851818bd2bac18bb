import json
from pathlib import Path

import pytest

from quiddity.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_verify_char2_product(capsys):
    code, data, _ = run_json(
        capsys, "verify", "--ring", "Z/2xZ/2", "--tuple", "(1,1),(1,1),(1,1)"
    )
    assert code == 0
    assert data["verdict"] == "quiddity"
    assert data["sign"] == "+1 (char-2 canonical)"


def test_verify_signs(capsys):
    code, data, _ = run_json(capsys, "verify", "--ring", "Z/5", "--tuple", "0,0")
    assert code == 0 and data["sign"] == "-1"
    code, data, _ = run_json(capsys, "verify", "--ring", "Z[10]", "--tuple", "2,2")
    assert code == 0 and data["verdict"] == "not_quiddity" and data["sign"] is None


def test_sum(capsys):
    code, data, _ = run_json(
        capsys, "sum", "--ring", "Z[10]", "--tuple", "4,1,-1", "--tuple", "2,0,2,-3"
    )
    assert code == 0
    assert data["result"] == "1,1,1,0,2"


def test_canon(capsys):
    code, data, _ = run_json(capsys, "canon", "--ring", "Z/4", "--tuple", "2,0,2,0")
    assert code == 0
    assert data["canonical"] == "0,2,0,2"


def test_reduce_witness_shape(capsys):
    code, data, _ = run_json(
        capsys, "reduce", "--ring", "Z/2", "--tuple", "1,1,1,1,1,1"
    )
    assert code == 0
    assert data["reducible"] is True
    w = data["witness"]
    assert set(w) == {"sigma", "l", "b", "c"}
    assert w["sigma"] == {"rot": 0, "refl": False}
    assert w["l"] == 3
    assert w["b"] == ["1", "1", "1"]


def test_reduce_bounded(capsys):
    code, data, _ = run_json(
        capsys,
        "reduce", "--ring", "Z[50]xZ[50]",
        "--tuple", "(1,2),(4,1),(1,4),(2,1),(2,2),(2,2)",
        "--window", "12",
    )
    assert code == 0
    assert data["bounded"] is True and data["window"] == 12
    assert data["reducible"] is False
    assert "bounded evidence" in data["note"]


def test_enumerate(capsys):
    code, data, _ = run_json(capsys, "enumerate", "--ring", "Z/2", "--n", "4")
    assert code == 0
    assert data["count"] == 3
    assert data["tuples"] == ["0,0,0,0", "0,1,0,1", "1,0,1,0"]


def test_enumerate_csv(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--ring", "Z/2", "--n", "4", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines() == ["tuple", '"0,0,0,0"', '"0,1,0,1"', '"1,0,1,0"']


GOLDEN_CASES = [
    ("Z/2", 8, "classify_Z2.json"),
    ("Z/3", 8, "classify_Z3.json"),
    ("Z/4", 8, "classify_Z4.json"),
    ("Z/5", 8, "classify_Z5.json"),
    ("Z/6", 8, "classify_Z6.json"),
    ("Z/2xZ/2", 8, "classify_Z2xZ2.json"),
    ("Z/2xZ/3", 8, "classify_Z2xZ3.json"),
    ("Z/2xZ/4", 8, "classify_Z2xZ4.json"),
    ("F4", 10, "classify_F4.json"),
]


@pytest.mark.parametrize("ring,mx,fname", GOLDEN_CASES)
def test_classify_matches_golden_file(capsys, ring, mx, fname):
    code, out, _ = run(capsys, "classify", "--ring", ring, "--max", str(mx))
    assert code == 0
    assert out == (GOLDEN / fname).read_text()


def test_classify_workers_byte_identical(capsys):
    outputs = []
    for k in ("1", "2", "8"):
        code, out, err = run(
            capsys, "classify", "--ring", "Z/2xZ/3", "--max", "6", "--workers", k
        )
        assert code == 0
        assert err.startswith("wall_secs=")
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_enumerate_workers_byte_identical(capsys):
    outputs = []
    for k in ("1", "2", "8"):
        code, out, _ = run(
            capsys, "enumerate", "--ring", "Z/2xZ/4", "--n", "5", "--workers", k
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_classify_csv(capsys):
    code, out, _ = run(
        capsys, "classify", "--ring", "Z/2", "--max", "6", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines() == ["size,tuple", '3,"1,1,1"', '4,"0,0,0,0"']


def test_classify_budget_exhaustion_exits_2(capsys):
    code, out, _ = run(
        capsys, "classify", "--ring", "Z/5", "--max", "8", "--budget-nodes", "300"
    )
    assert code == 2
    data = json.loads(out)
    assert data["partial"] is True
    assert data["exhausted_to"] < 8


def test_wall_clock_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("QUIDDITY_BUDGET_SECS", "0.000001")
    code, out, _ = run(capsys, "classify", "--ring", "Z/6", "--max", "8")
    assert code == 2
    assert json.loads(out)["partial"] is True


def test_lmax(capsys):
    code, data, _ = run_json(capsys, "lmax", "--ring", "F4", "--max", "11")
    assert code == 0
    assert data["observed_max"] == 9
    assert data["exhausted_to"] == 11


def test_count44(capsys):
    code, data, _ = run_json(capsys, "count44", "--alphabet", "02", "--n", "6")
    assert code == 0
    assert data["count"] == 16
    code, data, _ = run_json(capsys, "count44", "--alphabet", "pm1", "--n", "6")
    assert code == 0 and data["count"] == 16
    code, data, _ = run_json(
        capsys, "count44", "--alphabet", "02", "--n", "4", "--extensions"
    )
    assert code == 0 and data["count"] == 4 and len(data["extensions"]) == 4


def test_polygon_listing_and_coverage(capsys):
    code, data, _ = run_json(capsys, "polygon", "--n", "4")
    assert code == 0
    assert data["count"] == 3
    code, data, _ = run_json(capsys, "polygon", "--n", "6", "--coverage")
    assert code == 0
    assert data["matches"] is True


def test_polygon_json_and_svg(capsys, tmp_path):
    svg = tmp_path / "dec.svg"
    code, data, _ = run_json(
        capsys,
        "polygon",
        "--json", '{"n": 6, "diagonals": [[2,6],[3,6],[4,6]]}',
        "--ring", "Z/7",
        "--svg", str(svg),
    )
    assert code == 0
    assert data["quiddity_mod2"] == "1,0,0,0,1,0"
    # fan from vertex 6: counts (1,2,2,2,1,4), a dihedral image of the
    # vertex-2 fan shape (1,4,1,2,2,2)
    assert data["quiddity"] == "1,2,2,2,1,4"
    assert svg.exists() and svg.stat().st_size > 0
    assert svg.read_text().lstrip().startswith("<?xml")


def test_polygon_index_selection(capsys):
    code, data, _ = run_json(
        capsys, "polygon", "--n", "5", "--kind", "tri", "--index", "0"
    )
    assert code == 0
    assert data["index"] == 0
    assert len(data["cells"]) == 3


def test_transfer_tuple(capsys):
    code, data, _ = run_json(
        capsys,
        "transfer", "--morphism", "crt:2,3", "--tuple", "(1,1),(1,1),(1,1)",
    )
    assert code == 0
    assert data["image"] == "1,1,1"
    assert data["codomain"] == "Z/6"


def test_transfer_report_equals_direct_classification(capsys):
    code, via, _ = run(capsys, "transfer", "--morphism", "crt:2,3", "--max", "8")
    assert code == 0
    code, direct, _ = run(capsys, "classify", "--ring", "Z/6", "--max", "8")
    assert code == 0
    assert json.loads(via)["sizes"] == json.loads(direct)["sizes"]


def test_witness0(capsys):
    code, data, _ = run_json(
        capsys, "witness0", "--ring", "Z[50]xZ[50]", "--n", "6", "--window", "12"
    )
    assert code == 0
    assert data["tuple"] == "(1,2),(4,1),(1,4),(2,1),(2,2),(2,2)"
    assert data["sign"] == "-1"
    assert data["bounded_search"]["reducible"] is False
    assert data["bounded_search"]["window"] == 12


def test_domain_errors_exit_1(capsys):
    assert run(capsys, "verify", "--ring", "Z/1", "--tuple", "1,1")[0] == 1
    assert run(capsys, "verify", "--ring", "Z/5", "--tuple", "1,X")[0] == 1
    assert run(capsys, "count44", "--alphabet", "02", "--n", "5")[0] == 1
    assert run(capsys, "witness0", "--ring", "Z/6", "--n", "5")[0] == 1


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "no-such-command")[0] == 1
    assert run(capsys, "classify", "--ring", "Z/4")[0] == 1  # missing --max
    assert run(capsys, "classify", "--ring", "Z/4", "--max", "4", "--bogus")[0] == 1
    _, _, err = run(capsys, "no-such-command")
    assert "usage" in err.lower()
