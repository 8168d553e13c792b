import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "sring.cli", *args], capture_output=True, text=True
    )


def test_validate_bad_partition(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": "4", "classes": [["0"], ["1"], ["2", "3"]]}))
    r = run_cli("validate", "--group", "4", "--partition", str(bad))
    assert r.returncode == 2
    assert "NotInverseClosed" in r.stdout


def test_validate_good_and_round_trip(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"group": "4", "classes": [["0"], ["2"], ["1", "3"]]}))
    r = run_cli("validate", "--partition", str(good))
    assert r.returncode == 0
    emitted = json.loads(r.stdout)
    again = tmp_path / "again.json"
    again.write_text(r.stdout)
    r2 = run_cli("validate", "--partition", str(again))
    assert r2.returncode == 0 and json.loads(r2.stdout) == emitted


def test_missing_file():
    r = run_cli("validate", "--partition", "/nonexistent/never.json")
    assert r.returncode == 2


def test_schurian_expect_flag(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"group": "4", "classes": [["0"], ["2"], ["1", "3"]]}))
    r = run_cli("schurian", "--partition", str(good), "--expect-schurian")
    assert r.returncode == 0 and json.loads(r.stdout)["schurian"] is True


def test_repro_t2_json():
    r = run_cli("repro", "t2", "--p", "3")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["schurian"] is False
    assert data["classes_match"] is True
    assert data["group"] == "8x2x3"


def test_enumerate_jsonl(tmp_path):
    out = tmp_path / "e4.jsonl"
    r = run_cli("enumerate", "--group", "2x2", "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 5
    for line in lines:
        entry = json.loads(line)
        assert entry["group"] == "2x2"
        assert entry["schurian"] is True


def test_deterministic_output():
    a = run_cli("enumerate", "--group", "4").stdout
    b = run_cli("enumerate", "--group", "4").stdout
    assert a == b


def test_dual_and_cyclotomic(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"group": "4", "classes": [["0"], ["2"], ["1", "3"]]}))
    r = run_cli("dual", "--partition", str(good))
    assert r.returncode == 0
    assert json.loads(r.stdout)["classes"] == [["0"], ["1", "3"], ["2"]]
    r = run_cli("cyclotomic", "--partition", str(good))
    assert json.loads(r.stdout)["cyclotomic"] is True
    r = run_cli("normal", "--partition", str(good))
    assert json.loads(r.stdout)["normal"] is True


def test_tensor_cli(tmp_path):
    p1 = tmp_path / "t2.json"
    p1.write_text(json.dumps({"group": "2", "classes": [["0"], ["1"]]}))
    p2 = tmp_path / "t3.json"
    p2.write_text(json.dumps({"group": "3", "classes": [["0"], ["1", "2"]]}))
    r = run_cli("tensor", "--partition", str(p1), "--partition2", str(p2))
    assert r.returncode == 0
    assert json.loads(r.stdout)["group"] == "2x3"


def test_classify_cli(tmp_path):
    from sring.constructions import tensor
    from sring.groups import make_group
    from sring.srings import full_group_ring, partition_to_json, trivial_sring

    A = tensor(trivial_sring(make_group([2, 2])), full_group_ring(make_group([3])))
    path = tmp_path / "a.json"
    path.write_text(partition_to_json(A))
    r = run_cli("classify", "--partition", str(path))
    assert r.returncode == 0
    assert "tensor" in json.loads(r.stdout)["clauses"]
