"""Command-line surface.

Four subcommands over one report pipeline:

- estimate: qubit/gate/savings accounting from a dataset or an inline shape
- simulate: build + run a memory pipeline, report accept probability,
  per-pattern retrieval distribution, depth, optional gate histogram
- classify: per-label affinities for a target row, exact or sampled
- export:   serialize a circuit to OpenQASM 3 text

Reports carry schema_version and the full run configuration; with a fixed
seed the bytes are reproducible. Probabilities are printed with 12
significant digits, percentages as integers.

Exit codes: 0 success, 2 domain/input error, 3 resource (qubit cap) error.
Environment: PQMLAB_MAX_QUBITS overrides the default 26-qubit cap,
PQMLAB_KERNELS picks the state-vector backend (auto|numba|numpy).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .circuits import (
    Algorithm,
    Mode,
    accept_bit,
    depth,
    execute,
    histogram,
    pipeline_circuit,
    retrieval_circuit,
    storage_circuit,
)
from .classifier import (
    _joint_accept_memory,
    build_databases,
    classify,
    default_encoding,
    encode_target,
)
from .dataset import load_csv
from .errors import DomainError, PqmError, ResourceError
from .model import EncodingKind, EncodingScheme
from .qasm import export_qasm
from .resources import Convention, InstanceStats, full_report, omega
from .statevector import probability

SCHEMA_VERSION = 1

_ALGOS = {"pqm": Algorithm.PQM, "ppqm": Algorithm.PPQM, "eppqm": Algorithm.EPPQM}
_MODES = {"ft": Mode.FT, "nisq": Mode.NISQ}
_ENCODINGS = {"onehot": EncodingKind.ONE_HOT, "label": EncodingKind.LABEL}


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _parse_widths(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise DomainError(f"bad --widths {text!r}: expected comma-separated integers")


def _parse_patterns(text: str) -> list[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqmlab",
        description="Quantum associative-memory simulator, estimator and classifier.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, data: bool = True) -> None:
        if data:
            p.add_argument("--data", help="CSV file: header row, categorical columns")
            p.add_argument("--label-col", help="name of the label column in --data")
        p.add_argument("--algo", choices=sorted(_ALGOS), default="pqm")
        p.add_argument("--variant", choices=sorted(_MODES), default="nisq")
        p.add_argument("--nu", type=float, default=1.0, help="relaxation parameter in (0, 1]")
        p.add_argument("--encoding", choices=sorted(_ENCODINGS),
                       help="override the algorithm's default feature encoding")
        p.add_argument("--max-qubits", type=int, default=None,
                       help="state-vector cap (default 26 or PQMLAB_MAX_QUBITS)")
        p.add_argument("--format", choices=["json", "csv", "plain"], default="json")
        p.add_argument("--out", help="write the report here instead of stdout")

    est = sub.add_parser("estimate", help="resource accounting for a dataset shape")
    common(est)
    est.add_argument("--r", type=int, help="stored patterns (inline shape)")
    est.add_argument("--z", type=int, help="feature count (inline shape)")
    est.add_argument("--a", type=int, help="uniform alphabet size (inline shape)")
    est.add_argument("--gamma", type=float, help="fraction of 1 bits in the stored database")
    est.add_argument("--delta", type=float, help="fraction of 1 bits in the target")
    est.add_argument("--omega-grid", action="store_true",
                     help="emit the retrieval X-cost ratio surface instead of a report")

    simp = sub.add_parser("simulate", help="run a storage+retrieval pipeline")
    common(simp)
    simp.add_argument("--patterns", help="comma-separated bit strings to store")
    simp.add_argument("--target", help="target: bit string with --patterns, "
                                       "comma-separated symbols with --data")
    simp.add_argument("--widths", help="comma-separated feature widths (feature-grouped)")
    simp.add_argument("--histogram", action="store_true", help="include gate counts")

    cls = sub.add_parser("classify", help="pick the label whose memory accepts best")
    common(cls)
    cls.add_argument("--target", required=True, help="comma-separated feature symbols")
    cls.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    cls.add_argument("--shots", type=int, default=None, help="samples (sampled mode)")
    cls.add_argument("--seed", type=int, default=None, help="sampling seed")
    cls.add_argument("--policy", choices=["count-all", "discard-unstored"],
                     default="count-all")

    exp = sub.add_parser("export", help="write a circuit as OpenQASM 3")
    common(exp, data=False)
    exp.add_argument("--patterns", required=True, help="comma-separated bit strings")
    exp.add_argument("--target", help="target bit string (retrieval phases)")
    exp.add_argument("--widths", help="comma-separated feature widths (feature-grouped)")
    exp.add_argument("--phase", choices=["pipeline", "storage", "retrieval"],
                     default="pipeline")
    return parser


def _config_echo(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items())}
    cfg.pop("out", None)
    return cfg


def _dataset_shape(args) -> InstanceStats:
    ds = load_csv(args.data, args.label_col)
    sizes = tuple(a.size for a in ds.alphabets)
    return InstanceStats(len(ds.patterns), sizes, args.gamma, args.delta)


def cmd_estimate(args) -> dict:
    if args.omega_grid:
        grid = [
            {"a": a, "delta": _sig12(d / 20), "omega": _sig12(omega(d / 20, a))}
            for a in range(3, 65)
            for d in range(0, 20)
        ]
        return {"omega_grid": grid}
    inline = [args.r, args.z, args.a]
    if args.data:
        if any(v is not None for v in inline):
            raise DomainError("give either --data or the inline shape (--r --z --a), not both")
        if not args.label_col:
            raise DomainError("--data needs --label-col")
        stats = _dataset_shape(args)
    else:
        if any(v is None for v in inline):
            raise DomainError("inline shape needs all of --r, --z, --a")
        stats = InstanceStats.uniform(args.r, args.z, args.a, args.gamma, args.delta)
    report = full_report(stats, _MODES[args.variant]).to_dict()
    if report["omega"] is not None:
        report["omega"] = _sig12(report["omega"])
    if stats.a <= 2:
        report["note"] = ("no encoding advantage: one-hot and label widths "
                          "coincide for alphabets of size <= 2")
    return report


def _pipeline_result(database, target_bits, args, scheme=None) -> dict:
    algorithm = _ALGOS[args.algo]
    mode = _MODES[args.variant]
    if scheme is not None and algorithm is Algorithm.EPPQM:
        widths = scheme.widths
    else:
        widths = _parse_widths(getattr(args, "widths", None))
    pipe = pipeline_circuit(database, target_bits, algorithm, mode,
                            nu=args.nu, widths=widths, measurements=False)
    state = execute(pipe, max_qubits=args.max_qubits)
    accept = accept_bit(mode)
    p_accept = probability(state, pipe.layout.c, accept)
    marg = _joint_accept_memory(state, pipe.layout)
    per_pattern = []
    for bits in database:
        code = int(bits[::-1], 2)
        joint = float(marg[(code << 1) | accept])
        per_pattern.append({
            "pattern": bits,
            "probability": _sig12(joint / p_accept) if p_accept > 1e-300 else None,
        })
    result = {
        "p_accept": _sig12(p_accept),
        "per_pattern": per_pattern,
        "qubits": pipe.layout.total_qubits,
        "depth": depth(pipe),
    }
    if args.histogram:
        result["histogram"] = dict(sorted(histogram(pipe).items()))
    return result


def cmd_simulate(args) -> dict:
    if (args.patterns is None) == (args.data is None):
        raise DomainError("give exactly one of --patterns or --data")
    if args.patterns:
        if not args.target:
            raise DomainError("--patterns needs a bit-string --target")
        return _pipeline_result(_parse_patterns(args.patterns), args.target, args)
    if not args.label_col:
        raise DomainError("--data needs --label-col")
    if not args.target:
        raise DomainError("--data needs a symbol --target")
    ds = load_csv(args.data, args.label_col)
    algorithm = _ALGOS[args.algo]
    kind = _ENCODINGS[args.encoding] if args.encoding else default_encoding(algorithm)
    scheme = EncodingScheme(kind, tuple(a.size for a in ds.alphabets))
    target = encode_target(ds, _parse_patterns(args.target), scheme)
    out = []
    for db in build_databases(ds, scheme):
        entry = _pipeline_result([bp.bits for bp in db.encoded], target.bits, args, scheme)
        out.append({"label": db.label, "stored": db.size,
                    "duplicates_removed": db.duplicates_removed, **entry})
    return {"target": target.bits, "databases": out}


def cmd_classify(args) -> dict:
    if not args.data or not args.label_col:
        raise DomainError("classify needs --data and --label-col")
    if args.mode == "sampled" and args.shots is None:
        args.shots = 10_000
    if args.mode == "exact" and args.shots is not None:
        raise DomainError("--shots only applies to --mode sampled")
    ds = load_csv(args.data, args.label_col)
    kind = _ENCODINGS[args.encoding] if args.encoding else None
    result = classify(
        ds,
        _parse_patterns(args.target),
        _ALGOS[args.algo],
        _MODES[args.variant],
        nu=args.nu,
        encoding=kind,
        shots=args.shots,
        seed=args.seed,
        policy=args.policy,
        max_qubits=args.max_qubits,
    )
    per_label = [
        {"label": a.label, "rho": _sig12(a.rho), "accepted": a.accepted, "shots": a.shots}
        for a in result.per_label
    ]
    return {"per_label": per_label, "chosen_label": result.chosen_label, "tie": result.tie}


def cmd_export(args) -> dict:
    algorithm = _ALGOS[args.algo]
    mode = _MODES[args.variant]
    widths = _parse_widths(args.widths)
    database = _parse_patterns(args.patterns)
    if args.phase == "storage":
        circ = storage_circuit(database, algorithm, mode)
    else:
        if not args.target:
            raise DomainError(f"--phase {args.phase} needs a bit-string --target")
        if args.phase == "retrieval":
            circ = retrieval_circuit(args.target, algorithm, mode, nu=args.nu, widths=widths)
        else:
            circ = pipeline_circuit(database, args.target, algorithm, mode,
                                    nu=args.nu, widths=widths)
    return {"qasm": export_qasm(circ)}


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, value))


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        rows: list = []
        _flatten("", payload["result"], rows)
        lines = ["key,value"]
        for key, val in rows:
            text = "" if val is None else str(val)
            if "," in text or '"' in text:
                text = '"' + text.replace('"', '""') + '"'
            lines.append(f"{key},{text}")
        return "\n".join(lines) + "\n"
    rows = []
    _flatten("", payload["result"], rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


_COMMANDS = {
    "estimate": cmd_estimate,
    "simulate": cmd_simulate,
    "classify": cmd_classify,
    "export": cmd_export,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = _COMMANDS[args.command](args)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except (PqmError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "export":
        text = result["qasm"]
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "config": _config_echo(args),
            "result": result,
        }
        text = _render(payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
