"""Thresholding error sweep for a prescribed-decay signal.

Writes a sweep CSV, a JSON summary, and a log-log SVG next to it.

    python3 scripts/jackson_sweep.py --config dyadic_six_channel --beta 1.25
"""

import argparse

import numpy as np

from nsgf import error_sweep, named_config
from nsgf.cli import _loglog_svg
from nsgf.corpus import generate_corpus
from nsgf.frames import frame_bapu
from nsgf.io import write_json, write_sweep_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config", default="dyadic_six_channel")
    ap.add_argument("--L", type=int, default=1024)
    ap.add_argument("--beta", type=float, default=1.25)
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="jackson_sweep.csv")
    args = ap.parse_args()

    sys = named_config(args.config, args.L)
    bapu = frame_bapu(sys)
    f = generate_corpus(
        "prescribed_decay", 1, args.L, args.seed, sys=sys, beta=args.beta
    ).signals[0]
    Ns = [2**k for k in range(1, 10) if 2**k < sys.n_coefficients]
    sweep = error_sweep(sys, sys.covering, bapu, f, Ns, tau=args.tau, p=args.p)

    write_sweep_csv(args.out, sweep)
    write_json(args.out + ".json", sweep.to_dict())
    svg = _loglog_svg(
        sweep.Ns, sweep.errors, sweep.alpha, f"{args.config} beta={args.beta:g}"
    )
    with open(args.out + ".svg", "w") as fh:
        fh.write(svg)

    normed = np.array(sweep.errors) * np.array(Ns) ** sweep.alpha / sweep.source_norm
    print(f"config={args.config}  alpha={sweep.alpha:g}")
    print(f"fitted slope      {sweep.fitted_slope:+.4f}")
    print(f"normalized spread {normed.max() / normed.min():.3f}")
    print(f"wrote {args.out}, {args.out}.json, {args.out}.svg")


if __name__ == "__main__":
    main()
