import json
import subprocess
import sys

import pytest

from prodquot import __version__
from prodquot.cli import cmd_classify, cmd_signatures, main, verify_example
from prodquot.errors import ActionNotFreeError
from prodquot.groups import make_abelian
from prodquot.sgs import SphericalSystem, build_structure, enumerate_tuples


def run(*args):
    return subprocess.run(
        [sys.executable, "-m", "prodquot", *args], capture_output=True, text=True, check=False
    )


def run_main(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def classify_report():
    return cmd_classify(60)


def test_classify_report_contents(classify_report):
    assert classify_report["schema"] == 1
    assert classify_report["version"] == __version__
    assert "timing" not in classify_report
    groups = classify_report["result"]["groups"]
    assert [g["invariant_factors"] for g in groups] == [[2, 2, 2], [3, 3], [2, 2, 2, 2], [5, 5]]
    assert [g["class_count"] for g in groups] == [1, 1, 1, 2]
    assert [c["h1"] for g in groups for c in g["classes"]] == [[2] * 6, [3] * 4, [2] * 4, [5, 5], [5, 5]]
    # lossless JSON round trip
    text = json.dumps(classify_report, sort_keys=True)
    assert json.loads(text) == classify_report


def test_classify_small_and_cap(capsys, monkeypatch):
    code, out, _ = run_main(capsys, "classify", "--max-order", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["groups"] == []
    monkeypatch.setenv("PRODQUOT_CAP", "10")
    code, _, err = run_main(capsys, "classify", "--max-order", "11")
    assert code == 2 and "cap" in err


def test_classify_markdown(capsys):
    code, out, _ = run_main(capsys, "classify", "--max-order", "10")
    assert code == 0
    assert "| (Z/2)^3 | 8 | 2^5 / 2^6 | 3, 5 | 151200 | 1 | 5 | 151200 | (Z/2)^6 |" in out
    assert "(Z/3)^2" in out


def test_classify_deterministic_across_jobs(capsys):
    outputs = set()
    for jobs in ("1", "2", "4"):
        code, out, _ = run_main(
            capsys, "classify", "--max-order", "30", "--format", "json", "--jobs", jobs, "--no-class-check"
        )
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_timing_only_on_request(capsys):
    code, out, _ = run_main(capsys, "classify", "--max-order", "8", "--format", "json", "--timing")
    assert code == 0 and "seconds" in json.loads(out)["timing"]


def test_non_abelian_sweep_is_a_usage_error(capsys):
    code, _, err = run_main(capsys, "classify", "--no-abelian-only")
    assert code == 2 and "non-abelian" in err


@pytest.mark.parametrize("fid, genera", [(1, [4, 21]), (3, [5, 16]), (4, [3, 9]), (5, [3, 13])])
def test_verify_examples_passing(fid, genera):
    rep = verify_example(fid)
    assert rep["passed"], rep["checks"]
    assert rep["genera"] == genera
    assert rep["invariants"]["K2"] == 8 and rep["invariants"]["chi"] == 1
    assert [c["check"] for c in rep["checks"]] == ["orders", "product", "generation", "freeness", "genera", "invariants"]


def test_verify_example_two_reports_product_failure(capsys):
    rep = verify_example(2)
    assert not rep["passed"]
    assert rep["first_failure"] == "product"
    assert "reversed" in rep["checks"][1]["detail"]
    code, out, err = run_main(capsys, "verify-examples", "--id", "2", "--format", "json")
    assert code == 1
    assert "example 2 failed at check 'product'" in err
    assert json.loads(out)["result"]["all_passed"] is False


def test_verify_examples_bad_id(capsys):
    code, _, err = run_main(capsys, "verify-examples", "--id", "9")
    assert code == 2 and "unknown example" in err


def write_structure(tmp_path, factors, sigs, name):
    G = make_abelian(factors)
    L1, L2 = enumerate_tuples(G, sigs[0]), enumerate_tuples(G, sigs[1])
    for a in L1:
        for b in L2:
            try:
                st = build_structure(SphericalSystem(G, a), SphericalSystem(G, b))
            except ActionNotFreeError:
                continue
            path = tmp_path / name
            path.write_text(json.dumps(st.to_json()), encoding="utf-8")
            return path
    raise AssertionError("no free structure found")


def test_homology_command(tmp_path, capsys):
    path = write_structure(tmp_path, (5, 5), ((5, 5, 5), (5, 5, 5)), "beauville.json")
    code, out, _ = run_main(capsys, "homology", "--in", str(path), "--format", "json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["h1"] == [5, 5]
    assert res["invariants"] == {"chi": 1, "K2": 8, "pg": 0, "q": 0, "e": 4}
    assert res["orbifold_abelianizations"] == [[5, 5], [5, 5]]
    path = write_structure(tmp_path, (2, 2, 2, 2), ((2,) * 5, (2,) * 5), "z2_4.json")
    code, out, _ = run_main(capsys, "homology", "--in", str(path))
    assert code == 0 and "[2, 2, 2, 2]" in out


def test_homology_rejects_bad_input(tmp_path, capsys):
    a5 = {
        "group": "perm:5:(1 2 3),(3 4 5)",
        "systems": [
            {"tuple": ["(1 2 3)", "(3 4 5)", "(4 3 2)", "(2 1 5)"]},
            {"tuple": ["(2 4)(3 5)", "(2 1 3 4 5)", "(1 2 3 4 5)"]},
        ],
    }
    path = tmp_path / "a5.json"
    path.write_text(json.dumps(a5), encoding="utf-8")
    code, _, err = run_main(capsys, "homology", "--in", str(path))
    assert code == 2 and "not abelian" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": "ab:5,5"}', encoding="utf-8")
    code, _, err = run_main(capsys, "homology", "--in", str(bad))
    assert code == 2
    bad.write_text("not json", encoding="utf-8")
    assert run_main(capsys, "homology", "--in", str(bad))[0] == 2
    assert run_main(capsys, "homology", "--in", str(tmp_path / "missing.json"))[0] == 2


def test_signatures_command(capsys):
    rep = cmd_signatures("ab:5,5")
    assert rep["result"]["pairs"] == [{"signatures": [[5, 5, 5], [5, 5, 5]], "genera": [6, 6]}]
    rep = cmd_signatures("ab:2,2,2")
    assert rep["result"]["pairs"] == [{"signatures": [[2] * 5, [2] * 6], "genera": [3, 5]}]
    assert cmd_signatures("ab:4,4")["result"]["pairs"]
    code, out, _ = run_main(capsys, "signatures", "--group", "ab:3,3")
    assert code == 0 and "| 3^4 / 3^4 | 4, 4 |" in out
    code, _, err = run_main(capsys, "signatures", "--group", "ab:2,3")
    assert code == 2
    code, _, err = run_main(capsys, "signatures", "--group", "nonsense")
    assert code == 2


def test_subprocess_entry_point(tmp_path):
    out = tmp_path / "report.json"
    proc = run("signatures", "--group", "ab:5,5", "--format", "json", "--out", str(out))
    assert proc.returncode == 0 and proc.stdout == ""
    assert json.loads(out.read_text(encoding="utf-8"))["input"] == {"group": "ab:5,5"}
    proc = run("verify-examples", "--id", "5")
    assert proc.returncode == 0 and "Example 5: PASS" in proc.stdout
    proc = run("bogus")
    assert proc.returncode == 2
