"""Adapter command-line behavior and exit codes."""

from __future__ import annotations

import json
from pathlib import Path

from orgaze.frame_log import load_frame_log
from orgaze_adapter.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = str(DATA / "golden1" / "truth.json")


def test_run_mock_writes_parseable_log(tmp_path, capsys):
    out = tmp_path / "frames.jsonl"
    rc = main(["run", "--video", GOLDEN, "--backend", "mock",
               "--out", str(out)])
    assert rc == 0
    assert f"wrote {out}" in capsys.readouterr().out
    session = load_frame_log(out)
    assert len(session.frames) == 64 * 32


def test_run_is_deterministic_through_the_cli(tmp_path):
    blobs = []
    for name in ("a.jsonl", "b.jsonl"):
        out = tmp_path / name
        assert main(["run", "--video", GOLDEN, "--out", str(out)]) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_run_real_without_assets_exit_3(tmp_path, capsys):
    rc = main(["run", "--video", "clip.mp4", "--backend", "real",
               "--out", str(tmp_path / "o.jsonl")])
    assert rc == 3
    assert "--detector-weights" in capsys.readouterr().err


def test_run_mock_with_assets_exit_3(tmp_path, capsys):
    rc = main(["run", "--video", GOLDEN, "--backend", "mock",
               "--detector-weights", "w.onnx",
               "--out", str(tmp_path / "o.jsonl")])
    assert rc == 3
    assert "no model assets" in capsys.readouterr().err


def test_run_bad_script_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("nope")
    rc = main(["run", "--video", str(bad), "--out", str(tmp_path / "o.jsonl")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err
    assert not (tmp_path / "o.jsonl").exists()


def test_run_wrong_schema_version_exit_2(tmp_path):
    truth = json.loads(Path(GOLDEN).read_bytes())
    truth["schema_version"] = "7"
    bad = tmp_path / "truth.json"
    bad.write_text(json.dumps(truth))
    rc = main(["run", "--video", str(bad), "--out", str(tmp_path / "o.jsonl")])
    assert rc == 2


def test_usage_error_exit_2():
    assert main(["run"]) == 2  # --out is required
    assert main(["no-such-command"]) == 2


def test_calibrate_clean_log(tmp_path, capsys):
    out = tmp_path / "frames.jsonl"
    assert main(["run", "--video", GOLDEN, "--out", str(out)]) == 0
    capsys.readouterr()
    rc = main(["calibrate", "--log", str(out)])
    assert rc == 0
    stdout = capsys.readouterr().out
    assert "ok" in stdout
    assert "violation:" not in stdout


def test_calibrate_json_report(tmp_path, capsys):
    out = tmp_path / "frames.jsonl"
    assert main(["run", "--video", GOLDEN, "--out", str(out)]) == 0
    capsys.readouterr()
    rc = main(["calibrate", "--log", str(out), "--json"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True
    assert report["violations"] == []
    assert report["n_frames"] == 64 * 32


def test_calibrate_flags_violations_exit_1(tmp_path, capsys):
    out = tmp_path / "frames.jsonl"
    assert main(["run", "--video", GOLDEN, "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    record = json.loads(lines[7])
    record["faces"][0]["in_frame"] = 2.0
    lines[7] = json.dumps(record)
    out.write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    rc = main(["calibrate", "--log", str(out)])
    assert rc == 1
    stdout = capsys.readouterr().out
    assert "violation:" in stdout
    assert "1 violation(s)" in stdout


def test_calibrate_missing_file_exit_3(tmp_path, capsys):
    rc = main(["calibrate", "--log", str(tmp_path / "absent.jsonl")])
    assert rc == 3
    assert "cannot read" in capsys.readouterr().err


def test_calibrate_metadata_only_exit_2(tmp_path, capsys):
    log = tmp_path / "meta.jsonl"
    log.write_text('{"session_id":"s","camera_id":"c","fps":25.0,'
                   '"schema_version":"1"}\n')
    rc = main(["calibrate", "--log", str(log)])
    assert rc == 2
    assert "at least one frame" in capsys.readouterr().err
