"""Verification reports and benchmark sweeps with CSV / JSON output."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from statistics import fmean

from .parameters import AmplitudeVector
from .simulator import (
    DEFAULT_MAX_WIRES,
    SimulationError,
    extract_input_register,
    fidelity,
    simulate,
    trace_distance,
)
from .states import DEFAULT_DENSITY, DEFAULT_DICKE_K, gen_state, parse_family
from .synth import Method, SynthesisOptions, SynthesisResult, synthesize

log = logging.getLogger(__name__)

FIDELITY_TOL = 1e-10
LEAKAGE_TOL = 1e-10

CSV_HEADER = (
    "method,n,family,seed,depth,total,cnot,rot_minus_phase,"
    "fidelity,trace_distance,time_classical_s,time_quantum_s"
).split(",")
TIMING_COLUMNS = ("time_classical_s", "time_quantum_s")


@dataclass(frozen=True)
class VerificationReport:
    fidelity: float
    trace_distance: float
    leakage: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "trace_distance": self.trace_distance,
            "leakage": self.leakage,
            "pass": self.passed,
        }


def verify(target: AmplitudeVector, result: SynthesisResult, max_wires: int = DEFAULT_MAX_WIRES) -> VerificationReport:
    final = simulate(result.circuit, max_wires=max_wires)
    reduced, leakage = extract_input_register(final, result.layout)
    fid = fidelity(target.c, reduced)
    td = trace_distance(target.c, reduced)
    ok = fid >= 1 - FIDELITY_TOL and leakage < LEAKAGE_TOL
    return VerificationReport(fid, td, leakage, ok)


@dataclass(frozen=True)
class BenchConfig:
    methods: tuple[str, ...] = ("osun", "sun", "mott")
    ns: tuple[int, ...] = (2, 3, 4, 5)
    families: tuple[str, ...] = ("random_complex_dense",)
    seeds: int = 20
    simulate: bool = False
    density: float = DEFAULT_DENSITY
    dicke_k: int = DEFAULT_DICKE_K
    options: SynthesisOptions = field(default_factory=SynthesisOptions)
    workers: int = 1
    max_wires: int = DEFAULT_MAX_WIRES


@dataclass(frozen=True)
class BenchRow:
    method: str
    n: int
    family: str
    seed: int
    depth: int
    total: int
    cnot: int
    rot_minus_phase: int
    fidelity: float | None = None
    trace_distance: float | None = None
    time_classical_s: float = 0.0
    time_quantum_s: float | None = None
    leakage: float | None = None

    def csv_fields(self) -> list[str]:
        def fmt(v):
            return "" if v is None else repr(v) if isinstance(v, float) else str(v)

        d = asdict(self)
        out = [fmt(d[k]) for k in CSV_HEADER if k not in TIMING_COLUMNS]
        out += [f"{self.time_classical_s:.6f}", "" if self.time_quantum_s is None else f"{self.time_quantum_s:.6f}"]
        return out


def _width(method: str, n: int) -> int:
    return n if Method(method) is Method.MOTT else 3 * n


def _run_one(job: tuple, config: BenchConfig) -> BenchRow:
    method, n, fam, seed = job
    family = parse_family(fam, n, seed, config.density, config.dicke_k)
    target = gen_state(family)
    start = time.perf_counter()
    result = synthesize(target, method, config.options)
    t_classical = time.perf_counter() - start
    m = result.metrics
    row = dict(
        method=method, n=n, family=family.label, seed=seed, depth=m.depth, total=m.total_gates,
        cnot=m.cnot, rot_minus_phase=m.rot_minus_phase, time_classical_s=t_classical,
    )
    if config.simulate:
        start = time.perf_counter()
        report = verify(target, result, config.max_wires)
        row.update(
            fidelity=report.fidelity, trace_distance=report.trace_distance, leakage=report.leakage,
            time_quantum_s=time.perf_counter() - start,
        )
    return BenchRow(**row)


def bench_jobs(config: BenchConfig) -> list[tuple]:
    jobs = []
    for method, n, fam in product(config.methods, config.ns, config.families):
        family = parse_family(fam, n, 0, config.density, config.dicke_k)
        if not family.compatible():
            log.info("skipping %s at n=%d", fam, n)
            continue
        if config.simulate and _width(method, n) > config.max_wires:
            raise SimulationError(f"{method} at n={n} needs {_width(method, n)} wires, cap is {config.max_wires}")
        for seed in range(config.seeds):
            jobs.append((method, n, fam, seed))
    return jobs


def run_bench(config: BenchConfig) -> list[BenchRow]:
    """One row per (method, n, family, seed), in that nesting order."""
    jobs = bench_jobs(config)
    if config.workers <= 1:
        return [_run_one(j, config) for j in jobs]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(lambda j: _run_one(j, config), jobs))


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def rows_to_json(rows: list[BenchRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=1)


def aggregate(rows: list[BenchRow]) -> list[dict]:
    """Per (method, n, family) means, plus the spread of the structural metrics."""
    groups: dict[tuple, list[BenchRow]] = {}
    for r in rows:
        groups.setdefault((r.method, r.n, r.family), []).append(r)
    out = []
    for (method, n, fam), rs in groups.items():
        entry = {"method": method, "n": n, "family": fam, "samples": len(rs)}
        for key in ("depth", "total", "cnot", "rot_minus_phase"):
            vals = [getattr(r, key) for r in rs]
            entry[key] = fmean(vals)
            entry[f"{key}_spread"] = max(vals) - min(vals)
        for key in ("fidelity", "trace_distance", "time_classical_s", "time_quantum_s"):
            vals = [getattr(r, key) for r in rs if getattr(r, key) is not None]
            entry[key] = fmean(vals) if vals else None
        out.append(entry)
    return out


def aggregate_to_csv(entries: list[dict]) -> str:
    if not entries:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(entries[0]), lineterminator="\n")
    writer.writeheader()
    for e in entries:
        writer.writerow({k: "" if v is None else v for k, v in e.items()})
    return buf.getvalue()
