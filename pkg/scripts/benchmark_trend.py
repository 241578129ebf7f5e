#!/usr/bin/env python3
"""F1 comparison of raw RPNI vs. the pushdown pipeline on four grammars.

Sparse languages use balanced sampling (the uniform draw yields too few
accepted words to cover both labels in both halves of the split); the
others use the plain uniform protocol.
"""

import argparse
import statistics
import time

from vpalearn import (
    GenConfig,
    PapniConfig,
    builtin,
    evaluate,
    generate_dataset,
    papni_learn,
    rpni_learn,
    split_dataset,
)

SETUP = {
    "balanced_parens": "uniform",
    "anbn": "uniform",
    "arithmetic_expr": "balanced",
    "dyck2": "balanced",
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--total", type=int, default=10000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=73)
    parser.add_argument("--backend", choices=["rpni", "edsm"], default="rpni")
    args = parser.parse_args()

    print(f"{'grammar':<18} {'learner':<7} {'mean_f1':>8} {'std_f1':>8} "
          f"{'mean_size':>10} {'time_s':>8}")
    for grammar, mode in SETUP.items():
        gt = builtin(grammar)
        stats = {"rpni": ([], [], 0.0), "papni": ([], [], 0.0)}
        for repeat in range(args.repeats):
            seed = args.seed + repeat
            cfg = GenConfig(total=args.total, seed=seed, mode=mode)
            train, evl = split_dataset(generate_dataset(gt, cfg), seed=seed)

            t0 = time.perf_counter()
            dfa = rpni_learn(train)
            stats["rpni"] = (stats["rpni"][0] + [evaluate(dfa, evl).f1],
                             stats["rpni"][1] + [dfa.size],
                             stats["rpni"][2] + time.perf_counter() - t0)

            t0 = time.perf_counter()
            vdpa, _ = papni_learn(train, gt.alphabet,
                                  PapniConfig(backend=args.backend))
            stats["papni"] = (stats["papni"][0] + [evaluate(vdpa, evl).f1],
                              stats["papni"][1] + [vdpa.size],
                              stats["papni"][2] + time.perf_counter() - t0)
        for learner, (f1s, sizes, wall) in stats.items():
            print(f"{grammar:<18} {learner:<7} {statistics.fmean(f1s):>8.4f} "
                  f"{statistics.pstdev(f1s):>8.4f} "
                  f"{statistics.fmean(sizes):>10.1f} {wall:>8.3f}")


if __name__ == "__main__":
    main()
