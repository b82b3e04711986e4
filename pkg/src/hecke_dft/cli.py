"""Command-line interface.

Subcommands ``spectrum``, ``kernel``, ``transform`` and ``verify``.  Exit
codes: 0 ok, 1 verification failure, 2 configuration error, 3 length
mismatch, 4 parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import spectral, transform, verify
from .weyl import LatticeConfig

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_SHAPE = 3
EXIT_PARSE = 4

FORMATS = ("json", "csv")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    M: int
    tau: float
    fmt: Optional[str] = None
    precision: int = 15
    seed: int = 0
    tolerances: Dict[str, float] = field(default_factory=dict)

    @property
    def lattice(self) -> LatticeConfig:
        return LatticeConfig(self.M, self.tau)


# --- number formatting ---------------------------------------------------------

def round_sig(x: float, precision: int) -> float:
    """Round to ``precision`` significant digits; idempotent under re-parsing."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    return float(f"{x:.{precision}g}") + 0.0  # + 0.0 turns -0.0 into 0.0


def fmt_num(x: float, precision: int) -> str:
    return f"{round_sig(x, precision):.{precision}g}"


def _complex_pairs(values, precision: int) -> List[List[float]]:
    arr = np.asarray(values, dtype=complex)
    return [[round_sig(v.real, precision), round_sig(v.imag, precision)] for v in arr]


def dumps_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=True) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# --- spectrum --------------------------------------------------------------------

SPECTRUM_COLUMNS = ("m", "xi", "epsilon", "eigenvalue", "dual_weight")


def render_spectrum(cfg: LatticeConfig, fmt: str, precision: int) -> str:
    table = spectral.spectrum(cfg)
    if fmt == "json":
        rows = [
            {
                "m": p.m,
                "xi": round_sig(p.xi, precision),
                "epsilon": p.parity_epsilon,
                "eigenvalue": round_sig(p.eigenvalue, precision),
                "dual_weight": round_sig(p.dual_weight, precision),
            }
            for p in table.points
        ]
        return dumps_json({"M": cfg.M, "tau": cfg.tau, "rows": rows})
    rows = [
        [str(p.m), fmt_num(p.xi, precision), str(p.parity_epsilon), fmt_num(p.eigenvalue, precision),
         fmt_num(p.dual_weight, precision)]
        for p in table.points
    ]
    return _csv_text(SPECTRUM_COLUMNS, rows)


# --- kernel ------------------------------------------------------------------------

def kernel_payload(k: transform.KernelMatrix, precision: int) -> dict:
    r = lambda v: round_sig(v, precision)
    return {
        "M": k.cfg.M,
        "tau": k.cfg.tau,
        "phi": [[r(v) for v in row] for row in k.phi],
        "delta": [r(v) for v in k.delta],
        "delta_hat": [r(v) for v in k.delta_hat],
    }


def dump_kernel(payload: dict, fmt: str, precision: int) -> str:
    if fmt == "json":
        return dumps_json(payload)
    size = len(payload["delta"])
    header = ["index"] + [f"phi_{n}" for n in range(size)] + ["delta", "delta_hat"]
    rows = []
    for i in range(size):
        cells = [str(i)] + [fmt_num(v, precision) for v in payload["phi"][i]]
        cells += [fmt_num(payload["delta"][i], precision), fmt_num(payload["delta_hat"][i], precision)]
        rows.append(cells)
    return _csv_text(header, rows)


def parse_kernel(text: str, fmt: str, M: Optional[int] = None, tau: Optional[float] = None) -> dict:
    """Inverse of :func:`dump_kernel`.  CSV carries no (M, tau), pass them in."""
    if fmt == "json":
        data = json.loads(text)
        for key in ("M", "tau", "phi", "delta", "delta_hat"):
            if key not in data:
                raise ValueError(f"kernel JSON lacks key {key!r}")
        return data
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    size = len(header) - 3
    phi, delta, delta_hat = [], [], []
    for i, row in enumerate(body):
        if len(row) != size + 3 or int(row[0]) != i:
            raise ValueError(f"malformed kernel CSV row {i}")
        phi.append([float(v) for v in row[1:size + 1]])
        delta.append(float(row[size + 1]))
        delta_hat.append(float(row[size + 2]))
    return {"M": M if M is not None else size - 1, "tau": tau, "phi": phi, "delta": delta,
            "delta_hat": delta_hat}


# --- signals -------------------------------------------------------------------------

def parse_signal(text: str, fmt: str) -> np.ndarray:
    """Complex vector from a JSON array of ``[re, im]`` pairs or a CSV with
    columns ``re,im``.  Raises :class:`CliError` (exit 4) naming the entry."""
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"input is not valid JSON: {exc}", EXIT_PARSE) from None
        if not isinstance(data, list):
            raise CliError("input JSON must be an array of [re, im] pairs", EXIT_PARSE)
        out = []
        for i, item in enumerate(data):
            ok = (isinstance(item, list) and len(item) == 2
                  and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item))
            if not ok:
                raise CliError(f"entry {i} is not a [re, im] pair of numbers: {item!r}", EXIT_PARSE)
            if not all(math.isfinite(v) for v in item):
                raise CliError(f"entry {i} is not finite: {item!r}", EXIT_PARSE)
            out.append(complex(item[0], item[1]))
        return np.array(out, dtype=complex)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["re", "im"]:
        raise CliError("CSV input needs the header row 're,im'", EXIT_PARSE)
    out = []
    for i, row in enumerate(rows[1:]):
        if len(row) != 2:
            raise CliError(f"entry {i} has {len(row)} columns, expected 2", EXIT_PARSE)
        try:
            re_, im_ = float(row[0]), float(row[1])
        except ValueError:
            raise CliError(f"entry {i} is not numeric: {row!r}", EXIT_PARSE) from None
        if not (math.isfinite(re_) and math.isfinite(im_)):
            raise CliError(f"entry {i} is not finite: {row!r}", EXIT_PARSE)
        out.append(complex(re_, im_))
    return np.array(out, dtype=complex)


def render_signal(values, fmt: str, precision: int) -> str:
    pairs = _complex_pairs(values, precision)
    if fmt == "json":
        return dumps_json(pairs)
    return _csv_text(("re", "im"), [[fmt_num(a, precision), fmt_num(b, precision)] for a, b in pairs])


# --- verify ----------------------------------------------------------------------------

def run_verify(cfg: LatticeConfig, suite: str, window: Optional[int], seed: int,
               tolerances: Dict[str, float], tamper: bool = False) -> List[verify.SuiteReport]:
    names = verify.SUITES if suite == "all" else (suite,)
    return [verify.run_suite(name, cfg, window=window, seed=seed, tol=tolerances.get(name), tamper=tamper)
            for name in names]


def render_verify(reports: List[verify.SuiteReport], fmt: Optional[str], precision: int) -> str:
    checks = [c for r in reports for c in r.checks]
    notes = [n for r in reports for n in r.notes]
    failed = [c for c in checks if not c.passed]
    if fmt == "json":
        payload = {
            "passed": not failed,
            "checks": [
                {
                    "suite": c.suite,
                    "name": c.name,
                    "passed": c.passed,
                    "exact": c.exact,
                    "deviation": None if c.exact else round_sig(c.deviation, precision),
                    "tolerance": None if c.exact else round_sig(c.tolerance, precision),
                    "detail": c.detail,
                }
                for c in checks
            ],
            "notes": notes,
        }
        return dumps_json(payload)
    if fmt == "csv":
        rows = [[c.suite, c.name, "pass" if c.passed else "fail",
                 "exact" if c.exact else fmt_num(c.deviation, precision),
                 "" if c.exact else fmt_num(c.tolerance, precision)] for c in checks]
        return _csv_text(("suite", "check", "status", "deviation", "tolerance"), rows)
    lines = [c.line() for c in checks]
    lines += [f"NOTE {n}" for n in notes]
    summary = f"{len(checks) - len(failed)}/{len(checks)} checks passed"
    if failed:
        summary += "; failed: " + ", ".join(f"{c.suite}/{c.name}" for c in failed)
    lines.append(summary)
    return "\n".join(lines) + "\n"


# --- argument parsing --------------------------------------------------------------------

def _parse_tolerance(spec: str) -> tuple:
    name, sep, value = spec.partition("=")
    if not sep:
        raise CliError(f"--tol expects suite=value, got {spec!r}", EXIT_CONFIG)
    if name not in verify.SUITES:
        raise CliError(f"--tol names unknown suite {name!r}; known: {', '.join(verify.SUITES)}", EXIT_CONFIG)
    try:
        val = float(value)
    except ValueError:
        raise CliError(f"--tol value for {name} is not a number: {value!r}", EXIT_CONFIG) from None
    if not (val > 0 and math.isfinite(val)):
        raise CliError(f"--tol value for {name} must be positive, got {value}", EXIT_CONFIG)
    return name, val


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(f"{self.prog}: {message}", EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--M", type=int, default=None, help="lattice period, an integer > 1 (verify defaults to 4)")
    common.add_argument("--tau", type=float, default=None, help="Hecke parameter in (0, 1) (verify defaults to 0.5)")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default=None,
                        help="output format (default json; plain text report for verify)")
    common.add_argument("--precision", type=int, default=15, help="significant digits in text output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (unsigned 64-bit)")

    parser = _Parser(prog="hecke-dft", description="Hecke-deformed discrete Fourier transform tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="spectral nodes, parities, eigenvalues, dual weights")
    sub.add_parser("kernel", parents=[common], help="kernel matrix and both weight vectors")
    p = sub.add_parser("transform", parents=[common], help="forward or inverse transform of a signal file")
    p.add_argument("--input", required=True, help="JSON array of [re, im] pairs or CSV with columns re,im")
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--window", type=int, default=None, help="window radius N (default 6M)")
    p.add_argument("--tol", action="append", default=[], metavar="SUITE=VALUE",
                   help="override the tolerance of one suite; repeatable")
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    return parser


VERIFY_DEFAULTS = {"M": 4, "tau": 0.5}


def _run_config(args) -> RunConfig:
    for name, default in VERIFY_DEFAULTS.items():
        if getattr(args, name) is None:
            if args.command != "verify":
                raise CliError(f"hecke-dft {args.command}: --{name} is required", EXIT_CONFIG)
            setattr(args, name, default)
    if not 1 <= args.precision <= 17:
        raise CliError(f"--precision must lie in 1..17, got {args.precision}", EXIT_CONFIG)
    if not 0 <= args.seed < 2**64:
        raise CliError(f"--seed must be an unsigned 64-bit integer, got {args.seed}", EXIT_CONFIG)
    try:
        LatticeConfig(args.M, args.tau)
    except ValueError as exc:
        raise CliError(f"invalid configuration: {exc}", EXIT_CONFIG) from None
    tols = dict(_parse_tolerance(s) for s in getattr(args, "tol", []))
    return RunConfig(args.M, args.tau, args.fmt, args.precision, args.seed, tols)


def _input_format(path: Path, explicit: Optional[str]) -> str:
    if explicit:
        return explicit
    return "csv" if path.suffix.lower() == ".csv" else "json"


def execute(argv: Optional[Sequence[str]] = None) -> tuple:
    """Run the CLI and return ``(exit_code, stdout_text, stderr_text)``."""
    try:
        args = build_parser().parse_args(argv)
        rc = _run_config(args)
        cfg = rc.lattice
        if args.command == "spectrum":
            return EXIT_OK, render_spectrum(cfg, rc.fmt or "json", rc.precision), ""
        if args.command == "kernel":
            fmt = rc.fmt or "json"
            payload = kernel_payload(transform.build_kernel(cfg), rc.precision)
            return EXIT_OK, dump_kernel(payload, fmt, rc.precision), ""
        if args.command == "transform":
            path = Path(args.input)
            fmt = _input_format(path, rc.fmt)
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_CONFIG) from None
            values = parse_signal(text, fmt)
            if values.size != cfg.M + 1:
                idx = values.size if values.size < cfg.M + 1 else cfg.M + 1
                raise CliError(
                    f"signal has {values.size} entries but M={cfg.M} needs {cfg.M + 1}; "
                    f"first offending index {idx}", EXIT_SHAPE)
            k = transform.build_kernel(cfg)
            out = transform.forward(k, values) if args.direction == "forward" else transform.inverse(k, values)
            return EXIT_OK, render_signal(out, fmt, rc.precision), ""
        reports = run_verify(cfg, args.suite, args.window, rc.seed, rc.tolerances, args.tamper)
        text = render_verify(reports, rc.fmt, rc.precision)
        ok = all(r.passed for r in reports)
        return (EXIT_OK if ok else EXIT_VERIFY), text, ""
    except CliError as exc:
        return exc.code, "", f"error: {exc}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code, out, err = execute(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
