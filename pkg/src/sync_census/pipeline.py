"""Chunked, resumable execution of class scans and random experiments.

Work is cut into chunks whose boundaries depend only on the run parameters,
never on the worker count: seeded scans chunk the simple-graph seed list,
direct scans chunk by the first destination row, random runs chunk the
sample index range. Chunk results merge by exact integer addition, so the
final aggregates (and any CSV/JSONL rendered from them) are byte-identical
for any worker count. With an output directory, every finished chunk is
checkpointed to disk and a manifest tracks progress; rerunning the same
configuration resumes from the completed chunks.
"""

from __future__ import annotations

import json
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool

from . import isoenum
from .census import DEFAULT_AUTOMATA_BUDGET, BudgetError, census

SEED_CHUNKS_TARGET = 64
SAMPLES_PER_CHUNK = 2000


@dataclass
class ScanOptions:
    with_census: bool = True
    census_mode: str = "reduced"
    budget: int = DEFAULT_AUTOMATA_BUDGET
    candidate_budget: int = isoenum.DEFAULT_DIRECT_BUDGET
    collect_keys: bool = False
    collect_records: bool = False
    collect_hist: bool = True


@dataclass
class ScanOutcome:
    n: int
    k: int
    count: int = 0
    min_sync: int | None = None
    sum_sync: int = 0
    sumsq_sync: int = 0
    totally_sync: int = 0
    attempts: int = 0
    histogram: Counter = field(default_factory=Counter)
    keys: list = field(default_factory=list)
    finished: bool = True
    chunks_done: int = 0
    chunks_total: int = 0
    wall_time_s: float = 0.0


def plan_chunks(kind, n, k, samples=0):
    """Fixed chunk payload list for a run; independent of worker count."""
    if kind == "seeded":
        masks = isoenum.enumerate_simple_graph_masks(n)
        per_chunk = max(1, len(masks) // SEED_CHUNKS_TARGET)
        return [masks[i:i + per_chunk] for i in range(0, len(masks), per_chunk)]
    if kind == "direct":
        nopts = len(isoenum._direct_row_options(n, k))
        return [(i, i + 1) for i in range(nopts)]
    if kind == "random":
        return [(i, min(i + SAMPLES_PER_CHUNK, samples))
                for i in range(0, samples, SAMPLES_PER_CHUNK)]
    raise ValueError(f"unknown chunk kind {kind!r}")


class _Agg:
    """Per-chunk accumulator mirroring the chunk result schema."""

    def __init__(self, opts: ScanOptions):
        self.opts = opts
        self.count = 0
        self.min = None
        self.sum = 0
        self.sumsq = 0
        self.totally = 0
        self.attempts = 0
        self.hist = Counter()
        self.keys = [] if opts.collect_keys else None
        self.records = [] if opts.collect_records else None

    def add(self, key, d, res):
        self.count += 1
        if self.keys is not None:
            self.keys.append(key.hex())
        if res is not None:
            s = res.sync_colorings
            if self.min is None or s < self.min:
                self.min = s
            self.sum += s
            self.sumsq += s * s
            if res.totally_synchronizing:
                self.totally += 1
            if self.opts.collect_hist:
                self.hist[s] += 1
        if self.records is not None:
            rec = {"n": d.n, "k": d.k, "dests": [list(r) for r in d.dests],
                   "key": key.hex()}
            if res is not None:
                rec["census"] = res.to_json_dict()
            self.records.append(rec)

    def pack(self):
        return {
            "count": self.count,
            "min": self.min,
            "sum": self.sum,
            "sumsq": self.sumsq,
            "totally": self.totally,
            "attempts": self.attempts,
            "hist": {str(key): c for key, c in self.hist.items()},
            "keys": self.keys,
            "records": self.records,
        }


def _run_chunk(task):
    kind, n, k, payload, optd, extra = task
    opts = ScanOptions(**optd)
    agg = _Agg(opts)
    if kind == "seeded":
        for mask in payload:
            g = isoenum.simple_graph_from_mask(n, mask)
            for key, d in isoenum.seed_classes(g, k):
                res = census(d, opts.census_mode, opts.budget) if opts.with_census else None
                agg.add(key, d, res)
    elif kind == "direct":
        lo, hi = payload
        for key, d in isoenum.direct_classes_range(n, k, lo, hi):
            res = census(d, opts.census_mode, opts.budget) if opts.with_census else None
            agg.add(key, d, res)
    elif kind == "random":
        from .experiments import RandomModelConfig, _draw_sample

        lo, hi = payload
        cfg = RandomModelConfig(**extra)
        for i in range(lo, hi):
            d, att = _draw_sample(cfg, i)
            agg.attempts += att
            res = census(d, opts.census_mode, opts.budget)
            agg.add(b"", d, res)
    else:
        raise ValueError(f"unknown chunk kind {kind!r}")
    return agg.pack()


def _merge(outcome: ScanOutcome, result: dict, seen_keys):
    outcome.count += result["count"]
    if result["min"] is not None:
        if outcome.min_sync is None or result["min"] < outcome.min_sync:
            outcome.min_sync = result["min"]
    outcome.sum_sync += result["sum"]
    outcome.sumsq_sync += result["sumsq"]
    outcome.totally_sync += result["totally"]
    outcome.attempts += result.get("attempts", 0)
    for key, c in result["hist"].items():
        outcome.histogram[int(key)] += c
    if result["keys"] is not None:
        if seen_keys is not None:
            for key in result["keys"]:
                if key in seen_keys:
                    raise AssertionError(
                        "canonical key collision across chunks: " + key
                    )
                seen_keys.add(key)
        outcome.keys.extend(result["keys"])


def _atomic_write(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


class RunDir:
    """Manifest plus chunk checkpoints under an output directory."""

    def __init__(self, out_dir, params):
        self.out_dir = out_dir
        self.params = params
        self.chunk_dir = os.path.join(out_dir, "chunks")
        self.manifest_path = os.path.join(out_dir, "manifest.json")
        os.makedirs(self.chunk_dir, exist_ok=True)
        self.manifest = self._load_or_init()

    def _load_or_init(self):
        if os.path.exists(self.manifest_path):
            try:
                with open(self.manifest_path) as fh:
                    man = json.load(fh)
            except (OSError, json.JSONDecodeError):
                man = None
            if man is not None and man.get("params") == self.params:
                return man
            # Different configuration: drop stale chunks.
            for name in os.listdir(self.chunk_dir):
                os.remove(os.path.join(self.chunk_dir, name))
        return {
            "params": self.params,
            "completed_chunks": [],
            "finished": False,
            "wall_time_s": 0.0,
        }

    def chunk_path(self, idx, ext="json"):
        return os.path.join(self.chunk_dir, f"chunk_{idx:05d}.{ext}")

    def has_chunk(self, idx):
        return idx in set(self.manifest["completed_chunks"]) and os.path.exists(
            self.chunk_path(idx)
        )

    def load_chunk(self, idx):
        with open(self.chunk_path(idx)) as fh:
            return json.load(fh)

    def save_chunk(self, idx, result):
        slim = dict(result)
        slim["records"] = None  # records go to their own JSONL sidecar
        _atomic_write(self.chunk_path(idx), json.dumps(slim))
        if result.get("records") is not None:
            lines = [json.dumps(rec, separators=(",", ":")) for rec in result["records"]]
            _atomic_write(self.chunk_path(idx, "jsonl"),
                          "".join(line + "\n" for line in lines))
        if idx not in self.manifest["completed_chunks"]:
            self.manifest["completed_chunks"].append(idx)
            self.manifest["completed_chunks"].sort()

    def write_manifest(self, **extra):
        self.manifest.update(extra)
        _atomic_write(self.manifest_path,
                      json.dumps(self.manifest, indent=2, sort_keys=True))


def run_scan(kind, n, k, opts: ScanOptions | None = None, workers=1,
             samples=0, extra=None, run_dir: RunDir | None = None,
             stop_after_chunks=None, on_chunk=None, progress=False):
    """Execute a chunked run and merge results in chunk order.

    on_chunk(idx, result) fires for every chunk, cached or fresh, in
    ascending index order. Chunks reloaded from a run_dir carry
    records=None (their records live in the JSONL sidecars), so record
    consumers should either run without a run_dir or read the sidecars.
    Returns a ScanOutcome whose finished flag is False when
    stop_after_chunks cut the run short.
    """
    opts = opts or ScanOptions()
    if kind == "direct":
        total = isoenum.direct_candidate_count(n, k)
        if total > opts.candidate_budget:
            raise BudgetError(
                f"direct mode would scan {total} labeled tables, over the "
                f"budget of {opts.candidate_budget}"
            )
    t0 = time.monotonic()
    payloads = plan_chunks(kind, n, k, samples)
    optd = opts.__dict__.copy()
    tasks = {}
    for idx, payload in enumerate(payloads):
        if run_dir is not None and run_dir.has_chunk(idx):
            continue
        tasks[idx] = (kind, n, k, payload, optd, extra or {})

    if stop_after_chunks is not None:
        allowed = sorted(tasks)[:stop_after_chunks]
        tasks = {idx: tasks[idx] for idx in allowed}

    fresh = {}
    if tasks:
        order = sorted(tasks)

        def take(idx, result):
            if run_dir is not None:
                run_dir.save_chunk(idx, result)
                run_dir.write_manifest()
                if on_chunk is None:
                    # Records are on disk; no need to keep them in memory.
                    result = dict(result, records=None)
            fresh[idx] = result
            if progress:
                print(f"chunk {idx + 1}/{len(payloads)} done", flush=True)

        if workers > 1:
            with Pool(processes=workers) as pool:
                for idx, result in zip(order, pool.imap(_run_chunk, [tasks[i] for i in order])):
                    take(idx, result)
        else:
            for idx in order:
                take(idx, _run_chunk(tasks[idx]))

    outcome = ScanOutcome(n=n, k=k, chunks_total=len(payloads))
    seen_keys = set() if (kind == "seeded" and opts.collect_keys) else None
    for idx in range(len(payloads)):
        if idx in fresh:
            result = fresh[idx]
        elif run_dir is not None and run_dir.has_chunk(idx):
            result = run_dir.load_chunk(idx)
        else:
            outcome.finished = False
            continue
        outcome.chunks_done += 1
        _merge(outcome, result, seen_keys)
        if on_chunk is not None:
            on_chunk(idx, result)
    outcome.wall_time_s = time.monotonic() - t0
    if run_dir is not None:
        prev = run_dir.manifest.get("wall_time_s", 0.0)
        run_dir.write_manifest(
            chunks_total=len(payloads),
            finished=outcome.finished,
            wall_time_s=prev + outcome.wall_time_s,
            totals={
                "count": str(outcome.count),
                "min": None if outcome.min_sync is None else str(outcome.min_sync),
                "sum": str(outcome.sum_sync),
                "sumsq": str(outcome.sumsq_sync),
                "totally": str(outcome.totally_sync),
                "attempts": str(outcome.attempts),
            },
        )
    return outcome
