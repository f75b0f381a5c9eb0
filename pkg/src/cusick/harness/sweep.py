"""Range sweeps over ``t`` with JSON-lines output and checkpoint/resume.

Work is cut into contiguous blocks of ``BLOCK`` values of ``t``.  Blocks are
computed in worker processes but written strictly in block order, so the
output bytes do not depend on ``jobs``.  After every block the output is
flushed and a checkpoint (range, last ``t``, byte count, SHA-256 of the
output so far, running summary) is atomically replaced.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from ..bitword import count_blocks, lambda_of, reflect
from ..delta import c_from_spectrum, pair_display, sufficient_condition
from ..dyadic import Dyadic, ONE, parse
from ..spectrum import argmax_set, phi

log = logging.getLogger(__name__)

SCHEMA = 1
BLOCK = 1024
HARD_CHECKS = ("floor", "mass", "symmetry")
SOFT_CHECKS = ("cusick", "pair", "sufficient")
ALL_CHECKS = HARD_CHECKS + SOFT_CHECKS
MAX_JOBS_ENV = "CUSICK_MAX_JOBS"
CHECKPOINT_HEADER = "cusick-sweep-checkpoint v1"
EXAMPLES_KEPT = 20

FIFTEEN_SIXTEENTHS = Fraction(15, 16)
HALF = Fraction(1, 2)

RECORD_FIELDS = (
    "schema", "t", "lambda", "t_prime", "blocks", "c_t", "c_t_prime", "pair_sum",
    "pair_sum_ge_15_16", "cusick_holds", "pair_conjecture_holds", "sufficient_holds",
    "argmax_set", "phi_support",
)


class SweepError(RuntimeError):
    pass


class CheckpointError(SweepError):
    pass


def parse_checks(text: Optional[str]) -> tuple[str, ...]:
    if text is None or text.strip() in ("", "all"):
        return ALL_CHECKS
    names = [x.strip() for x in text.split(",") if x.strip()]
    unknown = [x for x in names if x not in ALL_CHECKS]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(ALL_CHECKS)}")
    return tuple(x for x in ALL_CHECKS if x in names)


def _dyadic_field(x: Dyadic) -> dict:
    return {"dyadic": str(x), "decimal": x.to_decimal(12)}


def evaluate(t: int) -> tuple[dict, dict[str, bool]]:
    """Sweep record for ``t`` plus the outcome of every check (True = passed)."""
    s = phi(t)
    tp = reflect(t)
    sp = phi(tp)
    ct = c_from_spectrum(s)
    ctp = c_from_spectrum(sp)
    total = ct + ctp
    suff, _ = sufficient_condition(s)
    outcome = {
        "floor": total >= FIFTEEN_SIXTEENTHS,
        "mass": s.total() == ONE and sp.total() == ONE,
        # phi(k, t') = phi(-k, t), and the pair sum matches its phi(., t) form
        "symmetry": dict(sp.items()) == dict(s.mirrored().items()) and total == pair_display(s),
        "cusick": ct > HALF,
        "pair": total > 1,
        "sufficient": suff,
    }
    lo, hi = s.support()
    record = {
        "schema": SCHEMA,
        "t": str(t),
        "lambda": lambda_of(t),
        "t_prime": str(tp),
        "blocks": count_blocks(t),
        "c_t": _dyadic_field(ct),
        "c_t_prime": _dyadic_field(ctp),
        "pair_sum": _dyadic_field(total),
        "pair_sum_ge_15_16": outcome["floor"],
        "cusick_holds": outcome["cusick"],
        "pair_conjecture_holds": outcome["pair"],
        "sufficient_holds": suff,
        "argmax_set": sorted(argmax_set(s)),
        "phi_support": [lo, hi],
    }
    return record, outcome


def encode(record: dict) -> bytes:
    return (json.dumps(record, separators=(",", ":")) + "\n").encode()


@dataclass
class Summary:
    """Running tallies; merged block by block in ``t`` order."""

    start: int
    stop: int
    checks: tuple[str, ...]
    count: int = 0
    min_pair_sum: Optional[str] = None
    min_pair_sum_t: Optional[str] = None
    failures: dict = field(default_factory=dict)
    examples: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in self.checks:
            self.failures.setdefault(name, 0)
            self.examples.setdefault(name, [])

    def add(self, t: int, record: dict, outcome: dict[str, bool]) -> None:
        self.count += 1
        ps = parse(record["pair_sum"]["dyadic"])
        if self.min_pair_sum is None or ps < parse(self.min_pair_sum):
            self.min_pair_sum = str(ps)
            self.min_pair_sum_t = str(t)
        for name in self.checks:
            if not outcome[name]:
                self.failures[name] += 1
                if len(self.examples[name]) < EXAMPLES_KEPT:
                    self.examples[name].append(str(t))

    @property
    def hard_failures(self) -> int:
        return sum(self.failures[n] for n in self.checks if n in HARD_CHECKS)

    def to_dict(self) -> dict:
        mn = parse(self.min_pair_sum) if self.min_pair_sum else None
        return {
            "schema": SCHEMA,
            "from": str(self.start),
            "to": str(self.stop),
            "checks": list(self.checks),
            "count": self.count,
            "min_pair_sum": {"dyadic": self.min_pair_sum, "decimal": mn.to_decimal(12)} if mn is not None else None,
            "min_pair_sum_t": self.min_pair_sum_t,
            "hard_failures": {n: self.failures[n] for n in self.checks if n in HARD_CHECKS},
            "flags": {n: self.failures[n] for n in self.checks if n in SOFT_CHECKS},
            "examples": {n: v for n, v in self.examples.items() if v},
        }

    @classmethod
    def from_dict(cls, d: dict, checks: tuple[str, ...]) -> "Summary":
        sm = cls(int(d["from"]), int(d["to"]), checks, count=d["count"])
        if d["min_pair_sum"] is not None:
            sm.min_pair_sum = d["min_pair_sum"]["dyadic"]
        sm.min_pair_sum_t = d["min_pair_sum_t"]
        sm.failures.update(d["hard_failures"])
        sm.failures.update(d["flags"])
        sm.examples.update(d["examples"])
        return sm


def compute_block(start: int, stop: int) -> tuple[bytes, list[tuple[int, dict, dict]]]:
    """Records for ``start <= t <= stop``: encoded bytes and per-``t`` details."""
    chunks, details = [], []
    for t in range(start, stop + 1):
        record, outcome = evaluate(t)
        chunks.append(encode(record))
        details.append((t, record, outcome))
    return b"".join(chunks), details


def _blocks(start: int, stop: int) -> list[tuple[int, int]]:
    return [(a, min(a + BLOCK - 1, stop)) for a in range(start, stop + 1, BLOCK)]


def effective_jobs(jobs: int) -> int:
    cap = os.environ.get(MAX_JOBS_ENV)
    if cap:
        jobs = min(jobs, max(1, int(cap)))
    return max(1, jobs)


# -- checkpoint -----------------------------------------------------------

@dataclass
class Checkpoint:
    start: int
    stop: int
    checks: tuple[str, ...]
    last_t: int
    nbytes: int
    digest: str
    summary: dict

    def dumps(self) -> str:
        return "\n".join([
            CHECKPOINT_HEADER,
            f"range {self.start} {self.stop}",
            f"checks {','.join(self.checks)}",
            f"last_t {self.last_t}",
            f"bytes {self.nbytes}",
            f"sha256 {self.digest}",
            f"summary {json.dumps(self.summary, separators=(',', ':'))}",
        ]) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Checkpoint":
        lines = text.splitlines()
        if not lines or lines[0] != CHECKPOINT_HEADER:
            raise CheckpointError("not a sweep checkpoint")
        try:
            kv = dict(line.split(" ", 1) for line in lines[1:])
            a, b = kv["range"].split()
            return cls(
                start=int(a),
                stop=int(b),
                checks=tuple(kv["checks"].split(",")),
                last_t=int(kv["last_t"]),
                nbytes=int(kv["bytes"]),
                digest=kv["sha256"],
                summary=json.loads(kv["summary"]),
            )
        except (KeyError, ValueError) as exc:
            raise CheckpointError(f"malformed checkpoint: {exc}") from None

    def write(self, path: Path) -> None:
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w") as fh:
            fh.write(self.dumps())
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)


def _resume_state(out: Path, ckpt_path: Path, start: int, stop: int,
                  checks: tuple[str, ...]) -> tuple[int, "hashlib._Hash", int, Summary]:
    cp = Checkpoint.loads(ckpt_path.read_text())
    if (cp.start, cp.stop, cp.checks) != (start, stop, checks):
        raise CheckpointError(
            f"checkpoint is for range {cp.start}..{cp.stop} checks {','.join(cp.checks)}")
    if not out.exists():
        raise CheckpointError(f"output {out} missing for checkpoint")
    h = hashlib.sha256()
    with open(out, "rb") as fh:
        data = fh.read(cp.nbytes)
    if len(data) != cp.nbytes:
        raise CheckpointError("output shorter than checkpoint records")
    h.update(data)
    if h.hexdigest() != cp.digest:
        raise CheckpointError("output digest does not match checkpoint")
    # anything written after the last checkpoint is discarded
    with open(out, "r+b") as fh:
        fh.truncate(cp.nbytes)
    return cp.last_t + 1, h, cp.nbytes, Summary.from_dict(cp.summary, checks)


def sweep(start: int, stop: int, checks: Iterable[str] = ALL_CHECKS, jobs: int = 1,
          out: os.PathLike = "sweep.jsonl", checkpoint: Optional[os.PathLike] = None,
          max_blocks: Optional[int] = None) -> dict:
    """Evaluate every ``start <= t <= stop`` and write one record per line to ``out``.

    If ``checkpoint`` names an existing file the sweep resumes from it after
    verifying the output digest.  ``max_blocks`` stops early (after that many
    blocks in this call) leaving a resumable checkpoint.

    Returns the summary; ``summary["complete"]`` tells whether ``stop`` was reached.
    """
    if start < 1:
        raise ValueError("sweep starts at t >= 1")
    if start > stop:
        raise ValueError(f"empty range {start}..{stop}")
    checks = tuple(x for x in ALL_CHECKS if x in set(checks))
    out = Path(out)
    ckpt_path = Path(checkpoint) if checkpoint is not None else None

    if ckpt_path is not None and ckpt_path.exists():
        first, h, nbytes, summary = _resume_state(out, ckpt_path, start, stop, checks)
        log.info("resuming at t=%d (%d bytes verified)", first, nbytes)
        mode = "ab"
    else:
        first, h, nbytes = start, hashlib.sha256(), 0
        summary = Summary(start, stop, checks)
        mode = "wb"

    try:
        fh = open(out, mode)
    except OSError as exc:
        raise SweepError(f"cannot write {out}: {exc}") from None

    blocks = _blocks(first, stop) if first <= stop else []
    if max_blocks is not None:
        blocks = blocks[:max_blocks]
    jobs = effective_jobs(jobs)
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 and len(blocks) > 1 else None
    try:
        results = (pool.map(compute_block, *zip(*blocks)) if pool and blocks
                   else (compute_block(a, b) for a, b in blocks))
        for (a, b), (payload, details) in zip(blocks, results):
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
            h.update(payload)
            nbytes += len(payload)
            for t, record, outcome in details:
                summary.add(t, record, outcome)
            if ckpt_path is not None:
                Checkpoint(start, stop, checks, b, nbytes, h.hexdigest(), summary.to_dict()).write(ckpt_path)
    finally:
        fh.close()
        if pool is not None:
            pool.shutdown(cancel_futures=True)

    result = summary.to_dict()
    result["complete"] = summary.count == stop - start + 1
    result["sha256"] = h.hexdigest()
    return result


def export_csv(jsonl: os.PathLike, csv_path: os.PathLike) -> None:
    """Spreadsheet view of a sweep: decimal approximations only."""
    cols = ["t", "lambda", "t_prime", "blocks", "c_t", "c_t_prime", "pair_sum",
            "pair_sum_ge_15_16", "cusick_holds", "pair_conjecture_holds", "sufficient_holds"]
    with open(jsonl) as src, open(csv_path, "w", newline="") as dst:
        w = csv.writer(dst)
        w.writerow(cols)
        for line in src:
            r = json.loads(line)
            w.writerow([r[c]["decimal"] if isinstance(r[c], dict) else r[c] for c in cols])
