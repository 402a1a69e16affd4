import json
import shutil
import subprocess
import sys

from xmodcat import cli, samples
from xmodcat import groups as g


def write_scenario(tmp_path, name, kind, inputs, options=None):
    path = tmp_path / name
    path.write_text(json.dumps({
        "schema_version": 1, "kind": kind,
        "inputs": inputs, "options": options or {},
    }))
    return str(path)


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_scenario_exit_zero(tmp_path, capsys):
    m = samples.s3_a3_module(False)
    path = write_scenario(tmp_path, "v.json", "validate",
                          {"module": m.to_json()})
    code, out, _ = run_cli(["validate", path], capsys)
    assert code == 0
    assert "result: all-pass" in out


def test_validate_scenario_axiom_failure(tmp_path, capsys):
    m = samples.s3_a3_module(False)
    blob = m.to_json()
    blob["eta"][1][2] = (blob["eta"][1][2] + 1) % m.B.order
    path = write_scenario(tmp_path, "v.json", "validate", {"module": blob})
    code, out, _ = run_cli(["validate", path], capsys)
    assert code == 1
    assert "FAIL" in out and "witness=" in out


def test_classify_scenario_counts(tmp_path, capsys):
    Z2 = g.cyclic(2)
    m = samples.abelian_module(Z2, g.trivial_group(), [0, 0])
    path = write_scenario(
        tmp_path, "c.json", "classify",
        {"module": m.to_json(),
         "Q": {"table": Z2.to_json()["table"], "act": [[0, 1]]},
         "psi": [0, 0]})
    code, out, _ = run_cli(["classify", path], capsys)
    assert code == 0
    assert "class-count: 2" in out
    assert "invariants=[2, 2]" in out and "invariants=[4]" in out


def test_malformed_json_exit_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "validate", "schema_version": 1,\n  broken')
    code, _, err = run_cli(["validate", str(path)], capsys)
    assert code == 2
    assert "line" in err and "column" in err


def test_unsupported_schema_version_exit_two(tmp_path, capsys):
    m = samples.s3_a3_module(False)
    path = tmp_path / "v.json"
    path.write_text(json.dumps({"schema_version": 99, "kind": "validate",
                                "inputs": {"module": m.to_json()}}))
    code, _, err = run_cli(["validate", str(path)], capsys)
    assert code == 2
    assert "schema_version" in err


def test_shape_error_exit_two(tmp_path, capsys):
    m = samples.s3_a3_module(False)
    blob = m.to_json()
    blob["d"] = blob["d"][:-1]  # wrong length boundary table
    path = write_scenario(tmp_path, "v.json", "validate", {"module": blob})
    code, _, err = run_cli(["validate", str(path)], capsys)
    assert code == 2
    assert "module" in err


def test_kind_mismatch_exit_two(tmp_path, capsys):
    m = samples.s3_a3_module(False)
    path = write_scenario(tmp_path, "v.json", "validate",
                          {"module": m.to_json()})
    code, _, err = run_cli(["classify", path], capsys)
    assert code == 2
    assert "does not match" in err


def test_json_report_written(tmp_path, capsys):
    m = samples.s3_a3_module(False)
    path = write_scenario(tmp_path, "v.json", "validate",
                          {"module": m.to_json()})
    out_json = tmp_path / "report.json"
    code, _, _ = run_cli(["validate", path, "--json", str(out_json)], capsys)
    assert code == 0
    blob = json.loads(out_json.read_text())
    assert blob["exit_code"] == 0
    assert blob["report"]["ok"] is True


def test_corpus_matches(capsys):
    code, out, _ = run_cli(["corpus"], capsys)
    assert code == 0
    assert "DIFF" not in out
    assert "match" in out


def test_corpus_detects_mutation(tmp_path, capsys):
    src = cli.default_corpus_dir()
    work = tmp_path / "corpus"
    shutil.copytree(src, work)
    victim = sorted(work.glob("*.expected.txt"))[0]
    victim.write_text(victim.read_text() + "tampered\n")
    code, out, _ = run_cli(["corpus", str(work)], capsys)
    assert code == 1
    assert "DIFF" in out


def test_corpus_update_rewrites(tmp_path, capsys):
    src = cli.default_corpus_dir()
    work = tmp_path / "corpus"
    shutil.copytree(src, work)
    victim = sorted(work.glob("*.expected.txt"))[0]
    victim.write_text("wrong\n")
    code, out, _ = run_cli(["corpus", str(work), "--update"], capsys)
    assert code == 0
    code, out, _ = run_cli(["corpus", str(work)], capsys)
    assert code == 0


def test_reports_byte_identical_across_thread_counts(tmp_path):
    m = samples.q8_i_module(True)
    path = write_scenario(tmp_path, "r.json", "roundtrip",
                          {"module": m.to_json()})
    outputs = set()
    for threads in (1, 2, 8):
        proc = subprocess.run(
            [sys.executable, "-m", "xmodcat.cli", "roundtrip", path,
             "--threads", str(threads)],
            capture_output=True, check=True)
        outputs.add(proc.stdout)
    assert len(outputs) == 1


def test_seed_env_controls_fuzz(tmp_path, capsys, monkeypatch):
    path = write_scenario(tmp_path, "f.json", "check-axioms", {},
                          {"random_count": 3, "seed": 5})
    code, out1, _ = run_cli(["check-axioms", path], capsys)
    assert code == 0
    monkeypatch.setenv("XMODCAT_SEED", "5")
    code, out2, _ = run_cli(["check-axioms", path], capsys)
    assert out1 == out2
    monkeypatch.setenv("XMODCAT_SEED", "6")
    code, out3, _ = run_cli(["check-axioms", path], capsys)
    assert code == 0
