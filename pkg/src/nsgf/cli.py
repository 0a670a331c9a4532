"""Command line front end.

Exit codes: 0 success, 2 config error, 3 frame-condition failure, 4 I/O error.
Errors are emitted as a JSON object on stderr.  Log level via NSGF_LOG.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys as _sys

import numpy as np

from . import io
from .approx import error_sweep
from .bapu import bapu_rows
from .corpus import generate_corpus
from .frames import (
    FrameConditionError,
    analyze,
    frame_bapu,
    synthesize,
    validate_painless,
)
from .spaces import NormParams, coeff_norm, ds_norm, equivalence_report, lp_normalized_coeffs

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FRAME = 3
EXIT_IO = 4

log = logging.getLogger("nsgf")


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _load_system(args):
    if not args.config:
        raise CliError("--config is required for this command", EXIT_CONFIG)
    try:
        data = io.load_config(args.config)
    except FileNotFoundError as exc:
        raise CliError(str(exc), EXIT_IO) from exc
    except io.ConfigError as exc:
        raise CliError(str(exc), EXIT_CONFIG) from exc
    try:
        return io.system_from_config(data)
    except FrameConditionError as exc:
        raise CliError(str(exc), EXIT_FRAME) from exc
    except (io.ConfigError, ValueError) as exc:
        raise CliError(str(exc), EXIT_CONFIG) from exc


def _load_signal(args, L):
    if not args.signal:
        raise CliError("--signal is required for this command", EXIT_CONFIG)
    try:
        f = io.read_signal_csv(args.signal)
    except FileNotFoundError as exc:
        raise CliError(str(exc), EXIT_IO) from exc
    except io.ConfigError as exc:
        raise CliError(str(exc), EXIT_CONFIG) from exc
    if f.size != L:
        raise CliError(f"signal has {f.size} samples, config wants {L}", EXIT_CONFIG)
    return f


def _emit(args, payload):
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        _sys.stdout.write(text)


def cmd_verify(args):
    sys_ = _load_system(args)
    report = validate_painless(sys_)
    bapu = frame_bapu(sys_)
    pou_dev = float(np.abs(bapu.psi.sum(axis=0) - 1.0).max())
    A, B = sys_.frame_bounds
    payload = {
        "frame_bounds": {"A": A, "B": B},
        "partition_of_unity_max_deviation": pou_dev,
        "covering": report.to_dict(),
    }
    _emit(args, payload)
    if report.violations:
        raise CliError("; ".join(report.violations), EXIT_FRAME)
    return EXIT_OK


def cmd_analyze(args):
    sys_ = _load_system(args)
    f = _load_signal(args, sys_.L)
    coeffs = analyze(sys_, f)
    _emit(args, io.coeffs_to_dict(sys_, coeffs))
    return EXIT_OK


def cmd_synthesize(args):
    sys_ = _load_system(args)
    if not args.coeffs:
        raise CliError("--coeffs is required for synthesize", EXIT_CONFIG)
    try:
        with open(args.coeffs) as fh:
            coeffs = io.coeffs_from_dict(json.load(fh))
    except FileNotFoundError as exc:
        raise CliError(str(exc), EXIT_IO) from exc
    except (json.JSONDecodeError, io.ConfigError) as exc:
        raise CliError(str(exc), EXIT_CONFIG) from exc
    out = synthesize(sys_, coeffs, windows=args.windows)
    if args.out:
        io.write_signal_csv(args.out, out)
    else:
        io.write_signal_csv("/dev/stdout", out)
    return EXIT_OK


def cmd_dsnorm(args):
    sys_ = _load_system(args)
    f = _load_signal(args, sys_.L)
    bapu = frame_bapu(sys_)
    params = NormParams(p=args.p, q=args.q, s=args.s)
    coeffs = lp_normalized_coeffs(sys_, analyze(sys_, f), sys_.covering, params.p)
    payload = {
        "p": args.p,
        "q": args.q,
        "s": args.s,
        "decomposition_norm": ds_norm(f, bapu, params),
        "coefficient_norm": coeff_norm(coeffs, sys_.covering, params),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_equiv(args):
    sys_ = _load_system(args)
    bapu = frame_bapu(sys_)
    corpus = generate_corpus("mixed", args.corpus_size, sys_.L, args.seed, sys=sys_)
    params = NormParams(p=args.p, q=args.q, s=args.s)
    report = equivalence_report(corpus, sys_, sys_.covering, bapu, params)
    _emit(args, report.to_dict())
    if args.csv_out:
        with open(args.csv_out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["signal_id", "ds_norm", "coeff_norm", "ratio"])
            for i, (dn, cn, r) in enumerate(
                zip(report.ds_norms, report.coeff_norms, report.ratios)
            ):
                writer.writerow([i, repr(dn), repr(cn), repr(r)])
    return EXIT_OK


def cmd_sweep(args):
    sys_ = _load_system(args)
    bapu = frame_bapu(sys_)
    if args.signal:
        f = _load_signal(args, sys_.L)
    else:
        f = generate_corpus("prescribed_decay", 1, sys_.L, args.seed, sys=sys_).signals[0]
    Ns = [int(x) for x in args.N.split(",")]
    try:
        sweep = error_sweep(
            sys_, sys_.covering, bapu, f, Ns, tau=args.tau, p=args.p, s=args.s
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_CONFIG) from exc
    if args.out:
        io.write_sweep_csv(args.out, sweep)
    json_path = (args.out or "sweep") + ".json"
    io.write_json(json_path, sweep.to_dict())
    log.info("sweep written to %s and %s", args.out or "stdout", json_path)
    if not args.out:
        _sys.stdout.write(json.dumps(sweep.to_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_export_bapu(args):
    sys_ = _load_system(args)
    bapu = frame_bapu(sys_)
    path = args.out or "/dev/stdout"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bin", "xi", "T_index", "psi_value"])
        for row in bapu_rows(bapu):
            writer.writerow(row)
    return EXIT_OK


def _loglog_svg(Ns, errors, alpha, title):
    """Minimal deterministic SVG: data polyline plus a -alpha reference slope."""
    width, height, margin = 640, 480, 60
    xs = [math.log10(n) for n in Ns]
    ys = [math.log10(max(e, 1e-300)) for e in errors]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    # reference line with slope -alpha anchored at the first data point
    ref = " ".join(
        f"{px(x):.2f},{py(ys[0] - alpha * (x - xs[0])):.2f}" for x in (x0, x1)
    )
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f"<!-- metadata: {title} -->",
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="black"/>',
        f'<polyline points="{ref}" fill="none" stroke="gray" stroke-dasharray="6,4"/>',
        f'<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="2"/>',
        f'<text x="{width // 2}" y="{height - margin // 3}" text-anchor="middle" '
        f'font-size="14">log10 N</text>',
        f'<text x="{margin // 3}" y="{height // 2}" text-anchor="middle" '
        f'font-size="14" transform="rotate(-90 {margin // 3} {height // 2})">'
        f"log10 error</text>",
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def cmd_plot(args):
    if not args.signal and not args.sweep_csv:
        raise CliError("--sweep-csv is required for plot", EXIT_CONFIG)
    try:
        Ns, errors = io.read_sweep_csv(args.sweep_csv)
    except FileNotFoundError as exc:
        raise CliError(str(exc), EXIT_IO) from exc
    except io.ConfigError as exc:
        raise CliError(str(exc), EXIT_CONFIG) from exc
    alpha = 1.0 / args.tau - 1.0 / args.p
    svg = _loglog_svg(Ns, errors, alpha, f"source={args.sweep_csv} alpha={alpha:g}")
    path = args.out or "/dev/stdout"
    with open(path, "w") as fh:
        fh.write(svg)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "synthesize": cmd_synthesize,
    "dsnorm": cmd_dsnorm,
    "equiv": cmd_equiv,
    "sweep": cmd_sweep,
    "plot": cmd_plot,
    "export-bapu": cmd_export_bapu,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsgf",
        description="Painless nonstationary Gabor frames and decomposition norms",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="frame config JSON")
        p.add_argument("--signal", help="signal CSV (real or real,imag per line)")
        p.add_argument("--coeffs", help="coefficient JSON (synthesize)")
        p.add_argument("--sweep-csv", help="sweep CSV to plot")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--csv-out", help="secondary CSV output (equiv)")
        p.add_argument("--p", type=float, default=2.0)
        p.add_argument("--q", type=float, default=2.0)
        p.add_argument("--s", type=float, default=0.0)
        p.add_argument("--tau", type=float, default=1.0)
        p.add_argument("--N", default="2,4,8,16,32,64,128,256,512")
        p.add_argument("--corpus-size", type=int, default=50)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--windows", choices=["original", "dual", "tight"], default="dual"
        )
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("NSGF_LOG", "WARNING").upper())
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        json.dump({"error": str(exc), "code": exc.code}, _sys.stderr)
        _sys.stderr.write("\n")
        return exc.code
    except OSError as exc:
        json.dump({"error": str(exc), "code": EXIT_IO}, _sys.stderr)
        _sys.stderr.write("\n")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
