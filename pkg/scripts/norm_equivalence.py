"""Empirical two-sided norm equivalence constants over a mixed corpus.

    python3 scripts/norm_equivalence.py --config irregular_eight_channel --p 1 --q 1
"""

import argparse

from nsgf import NormParams, equivalence_report, named_config
from nsgf.corpus import generate_corpus
from nsgf.frames import frame_bapu
from nsgf.spaces import appendix_lemma_checks


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config", default="dyadic_six_channel")
    ap.add_argument("--L", type=int, default=1024)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--q", type=float, default=2.0)
    ap.add_argument("--s", type=float, default=0.0)
    ap.add_argument("--corpus-size", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sys = named_config(args.config, args.L)
    bapu = frame_bapu(sys)
    corpus = generate_corpus("mixed", args.corpus_size, args.L, args.seed, sys=sys)
    params = NormParams(p=args.p, q=args.q, s=args.s)
    rep = equivalence_report(corpus, sys, sys.covering, bapu, params)
    print(f"config={args.config}  (p,q,s)=({args.p:g},{args.q:g},{args.s:g})")
    print(f"C1_hat={rep.C1_hat:.4f}  C2_hat={rep.C2_hat:.4f}  "
          f"spread={rep.C2_hat / rep.C1_hat:.4f}  over {len(rep.ratios)} signals")

    checks = appendix_lemma_checks(sys, sys.covering, bapu, seed=args.seed)
    print("band-limited norm comparison constants:")
    for label, v in checks["bandlimited_norm_comparison"].items():
        print(f"  {label}: [{v['min']:.4f}, {v['max']:.4f}]")
    print("multiplier bound constants:")
    for label, v in checks["multiplier_bound"].items():
        print(f"  {label}: [{v['min']:.4f}, {v['max']:.4f}]")


if __name__ == "__main__":
    main()
