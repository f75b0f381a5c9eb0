import json
import os
import signal
import subprocess
import sys
import time
from pathlib import Path

import pytest

from cusick.dyadic import parse
from cusick.harness.cli import main
from cusick.harness.sweep import (
    BLOCK,
    RECORD_FIELDS,
    Checkpoint,
    CheckpointError,
    SweepError,
    evaluate,
    export_csv,
    parse_checks,
    sweep,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_ct(capsys):
    code, out, _ = run(capsys, "ct", "3")
    assert code == 0
    assert out.split() == ["11/2^4", "0.687500000000"]


def test_cli_blocks_and_binary_literal(capsys):
    assert run(capsys, "blocks", "149")[1].strip() == "4"
    assert run(capsys, "blocks", "0b10010101")[1].strip() == "4"


def test_cli_bound(capsys):
    code, out, _ = run(capsys, "bound", "--epsilon", "0.6")
    assert code == 0
    lines = out.splitlines()
    assert "N=1" in lines and "m=11" in lines
    M = int(next(x for x in lines if x.startswith("M="))[2:])
    assert f"C={2 * M + 1}" in lines
    assert sum("margin to eps/3" in x for x in lines) == 3


def test_cli_usage_errors(capsys):
    assert run(capsys, "ct", "12x")[0] == 1
    assert run(capsys, "bound", "--epsilon", "1.2")[0] == 1
    assert run(capsys, "omega", "5", "--theta", "1/0")[0] == 1
    assert run(capsys, "sweep", "--from", "1", "--to", "5", "--checks", "bogus", "--out", os.devnull)[0] == 1
    assert run(capsys, "verify-theorem", "--epsilon", "0.5")[0] == 1


def test_cli_misc_commands(capsys):
    code, out, _ = run(capsys, "phi", "3")
    assert code == 0 and out.splitlines()[0].split("\t")[:2] == ["-1", "1/2^1"]
    code, out, _ = run(capsys, "pair", "149")
    assert code == 0 and "t_prime\t235" in out
    code, out, _ = run(capsys, "omega", "3", "--theta", "1/4")
    assert code == 0 and "abs" in out
    code, out, _ = run(capsys, "psi", "3", "-m", "2")
    assert code == 0
    code, out, _ = run(capsys, "patterns", "341")
    assert out.split() == ["0", "4"]
    code, out, _ = run(capsys, "delta", "3", "--k-window", "3")
    assert code == 0 and out.splitlines()[0].startswith("2\t1/2^2")
    code, out, _ = run(capsys, "oracle", "1", "--limit", "4")
    assert "c_t~\t0.750000000000" in out


def test_cli_verify_theorem_unmet(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--epsilon", "0.99", "--t", "5")
    assert code == 0
    assert "hypothesis not met" in out


def test_cli_verify_theorem_construct(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--epsilon", "0.9", "--construct")
    assert code == 0
    assert "holds" in out


def test_parse_checks():
    assert parse_checks("all") == parse_checks(None)
    assert parse_checks("pair,floor") == ("floor", "pair")
    with pytest.raises(ValueError):
        parse_checks("floor,nope")


def test_record_schema():
    record, outcome = evaluate(149)
    assert tuple(record) == RECORD_FIELDS
    assert record["schema"] == 1
    assert 2 in record["argmax_set"]
    ps = parse(record["pair_sum"]["dyadic"])
    assert ps == parse(record["c_t"]["dyadic"]) + parse(record["c_t_prime"]["dyadic"])
    assert all(outcome[x] for x in ("floor", "mass", "symmetry"))


def test_sweep_records_and_summary(tmp_path):
    out = tmp_path / "s.jsonl"
    summary = sweep(1, 3000, out=out)
    lines = out.read_text().splitlines()
    assert len(lines) == 3000
    ts = [int(json.loads(x)["t"]) for x in lines]
    assert ts == list(range(1, 3001))
    assert summary["complete"] and summary["count"] == 3000
    assert sum(summary["hard_failures"].values()) == 0
    rec = json.loads(lines[148])
    assert rec["t"] == "149" and 2 in rec["argmax_set"]
    for line in lines[:50]:
        r = json.loads(line)
        assert tuple(r) == RECORD_FIELDS
        assert parse(r["pair_sum"]["dyadic"]) == parse(r["c_t"]["dyadic"]) + parse(r["c_t_prime"]["dyadic"])


def test_sweep_jobs_determinism(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    sa = sweep(1, 3 * BLOCK + 17, out=a, jobs=1)
    sb = sweep(1, 3 * BLOCK + 17, out=b, jobs=3)
    assert a.read_bytes() == b.read_bytes()
    assert sa == sb


def test_resume_after_partial_run(tmp_path):
    ref = tmp_path / "ref.jsonl"
    full = sweep(5, 4 * BLOCK, out=ref)
    out, ck = tmp_path / "r.jsonl", tmp_path / "r.ckpt"
    part = sweep(5, 4 * BLOCK, out=out, checkpoint=ck, max_blocks=2)
    assert not part["complete"]
    # simulate a torn write after the last checkpoint
    with open(out, "ab") as fh:
        fh.write(b'{"schema":1,"t":"99')
    done = sweep(5, 4 * BLOCK, out=out, checkpoint=ck)
    assert out.read_bytes() == ref.read_bytes()
    assert done == full


def test_resume_rejects_corruption(tmp_path):
    out, ck = tmp_path / "r.jsonl", tmp_path / "r.ckpt"
    sweep(1, 3 * BLOCK, out=out, checkpoint=ck, max_blocks=1)
    data = bytearray(out.read_bytes())
    data[10] ^= 1
    out.write_bytes(bytes(data))
    with pytest.raises(CheckpointError):
        sweep(1, 3 * BLOCK, out=out, checkpoint=ck)
    with pytest.raises(CheckpointError):
        sweep(1, 5 * BLOCK, out=out, checkpoint=ck)
    ck.write_text("garbage\n")
    with pytest.raises(CheckpointError):
        sweep(1, 3 * BLOCK, out=out, checkpoint=ck)


def test_checkpoint_round_trip(tmp_path):
    cp = Checkpoint(1, 10, ("floor",), 5, 123, "ab" * 32, {"count": 5})
    path = tmp_path / "c"
    cp.write(path)
    assert Checkpoint.loads(path.read_text()) == cp
    assert not (tmp_path / "c.tmp").exists()


def test_unwritable_output(tmp_path):
    with pytest.raises(SweepError):
        sweep(1, 10, out=tmp_path / "missing" / "x.jsonl")


def test_csv_export(tmp_path):
    out = tmp_path / "s.jsonl"
    sweep(1, 20, out=out)
    export_csv(out, tmp_path / "s.csv")
    rows = (tmp_path / "s.csv").read_text().splitlines()
    assert rows[0].startswith("t,lambda,t_prime")
    assert rows[3].split(",")[4] == "0.687500000000"


def test_jobs_capped_by_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("CUSICK_MAX_JOBS", "1")
    from cusick.harness.sweep import effective_jobs
    assert effective_jobs(8) == 1


def test_kill_and_resume_subprocess(tmp_path):
    stop = 24 * BLOCK
    ref = tmp_path / "ref.jsonl"
    sweep(1, stop, out=ref)
    out, ck = tmp_path / "k.jsonl", tmp_path / "k.ckpt"
    cmd = [sys.executable, "-m", "cusick", "sweep", "--from", "1", "--to", str(stop),
           "--out", str(out), "--checkpoint", str(ck)]
    proc = subprocess.Popen(cmd, stdout=subprocess.DEVNULL)
    deadline = time.time() + 60
    while not ck.exists() and time.time() < deadline:
        time.sleep(0.01)
    proc.send_signal(signal.SIGKILL)
    proc.wait()
    assert ck.exists()
    code = subprocess.run(cmd, stdout=subprocess.DEVNULL).returncode
    assert code == 0
    assert out.read_bytes() == ref.read_bytes()
