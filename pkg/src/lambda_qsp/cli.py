"""Command line entry point: ``gen``, ``synth``, ``verify`` and ``bench``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import BenchConfig, aggregate, aggregate_to_csv, rows_to_csv, rows_to_json, run_bench, verify
from .circuit import CircuitError
from .parameters import AmplitudeVector, ParameterError
from .qasm import export_qasm
from .reference import compare
from .simulator import SimulationError
from .states import DEFAULT_DENSITY, DEFAULT_DICKE_K, FamilyError, gen_state, load_state, parse_family, state_to_json
from .synth import Method, SynthesisOptions, synthesize

log = logging.getLogger("lambda_qsp")


def parse_range(text: str) -> tuple[int, ...]:
    """``"2..10"``, ``"2,4,6"`` or ``"5"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return tuple(out)


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in text.split(",") if p.strip())


def resolve_state(spec: str, density: float, dicke_k: int, normalize: bool = False) -> AmplitudeVector:
    """A JSON state file, or a family string ``name:n[:seed]``."""
    path = Path(spec)
    if path.is_file():
        return load_state(path, normalize)
    parts = spec.split(":")
    if len(parts) not in (2, 3):
        raise FamilyError(f"{spec!r} is neither a state file nor a family string like 'ghz:4' or 'random_complex:5:3'")
    seed = int(parts[2]) if len(parts) == 3 else 0
    return gen_state(parse_family(parts[0], int(parts[1]), seed, density, dicke_k))


def _options(args) -> SynthesisOptions:
    return SynthesisOptions(
        apply_phases=not args.no_dph,
        prune_zero_phases=args.prune_zero_phases,
        fanout=args.fanout,
        count_global_phase=args.count_global_phase,
    )


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


def cmd_gen(args) -> int:
    family = parse_family(args.family, args.n, args.seed, args.density, args.dicke_k)
    _emit(state_to_json(gen_state(family)), args.out)
    return 0


def cmd_synth(args) -> int:
    state = resolve_state(args.state, args.density, args.dicke_k, args.normalize)
    result = synthesize(state, args.method, _options(args))
    _emit(export_qasm(result.circuit), args.out)
    if args.metrics:
        payload = result.metrics.to_dict()
        payload["global_phase"] = result.global_phase
        Path(args.metrics).write_text(json.dumps(payload, indent=1) + "\n")
    log.info("%s n=%d: %s", args.method, state.n, result.metrics.to_json())
    return 0


def cmd_verify(args) -> int:
    state = resolve_state(args.state, args.density, args.dicke_k, args.normalize)
    result = synthesize(state, args.method, _options(args))
    report = verify(state, result, args.max_wires)
    payload = report.to_dict()
    payload["metrics"] = result.metrics.to_dict()
    _emit(json.dumps(payload, indent=1), args.out)
    return 0 if report.passed else 1


def cmd_bench(args) -> int:
    config = BenchConfig(
        methods=args.methods,
        ns=args.n,
        families=args.families,
        seeds=args.seeds,
        simulate=args.simulate,
        density=args.density,
        dicke_k=args.dicke_k,
        options=_options(args),
        workers=args.workers,
        max_wires=args.max_wires,
    )
    rows = run_bench(config)
    _emit(rows_to_csv(rows), args.csv)
    if args.json:
        Path(args.json).write_text(rows_to_json(rows) + "\n")
    if args.aggregate:
        Path(args.aggregate).write_text(aggregate_to_csv(aggregate(rows)))
    if args.compare:
        report = []
        for entry in aggregate(rows):
            cls = "real" if entry["family"] in ("random_real_pos_dense", "random_real_pos_sparse") else "complex"
            deltas = compare(entry["method"], cls, entry["n"], entry)
            report.append({"method": entry["method"], "n": entry["n"], "family": entry["family"], "deltas": deltas})
        Path(args.compare).write_text(json.dumps(report, indent=1) + "\n")
    return 0


def _add_synth_flags(p: argparse.ArgumentParser, method: bool = True) -> None:
    if method:
        p.add_argument("--method", choices=[m.value for m in Method], default="osun")
    p.add_argument("--no-dph", action="store_true", help="skip the final phase block (prepare moduli only)")
    p.add_argument("--prune-zero-phases", action="store_true", help="drop phase gates with |angle| < 1e-12")
    p.add_argument("--count-global-phase", action="store_true", help="include the global-phase marker in totals")
    p.add_argument("--fanout", choices=["chain", "doubling"], default="chain", help="copy-register fan-out shape")


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--density", type=float, default=DEFAULT_DENSITY, help="support fraction of sparse random states")
    p.add_argument("--dicke-k", type=int, default=DEFAULT_DICKE_K, help="excitation number of Dicke states")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lambda-qsp", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a target state as JSON")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    _add_family_flags(p)
    p.set_defaults(func=cmd_gen)

    for name, func, helptext in (
        ("synth", cmd_synth, "synthesize a circuit and export QASM"),
        ("verify", cmd_verify, "synthesize, simulate and check a circuit"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--state", required=True, help="state JSON file or family string such as ghz:4")
        p.add_argument("--normalize", action="store_true", help="renormalise a loaded state")
        p.add_argument("--out")
        p.add_argument("--max-wires", type=int, default=30)
        if name == "synth":
            p.add_argument("--metrics", help="write the metrics report here as JSON")
        _add_synth_flags(p)
        _add_family_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("bench", help="run a benchmark sweep")
    p.add_argument("--methods", type=_csv_list, default=("osun", "sun", "mott"))
    p.add_argument("--n", type=parse_range, default=(2, 3, 4, 5))
    p.add_argument("--families", type=_csv_list, default=("random_complex_dense",))
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-wires", type=int, default=30)
    p.add_argument("--csv", help="raw rows (default: stdout)")
    p.add_argument("--json")
    p.add_argument("--aggregate", help="per (method, n, family) means as CSV")
    p.add_argument("--compare", help="deltas against the published metrics as JSON")
    _add_synth_flags(p, method=False)
    _add_family_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (FamilyError, ParameterError, CircuitError, SimulationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
