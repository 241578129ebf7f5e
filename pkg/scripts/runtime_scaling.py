#!/usr/bin/env python3
"""Wall-time scaling of raw RPNI vs. the pushdown pipeline.

On uniform balanced-parentheses data almost every sample is rejected and
not well-matched, so the pipeline's filtering step shrinks the learning
problem dramatically while raw RPNI pays for the full prefix tree.
"""

import argparse
import time

from vpalearn import GenConfig, builtin, generate_dataset, papni_learn, rpni_learn


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[5000, 12500, 25000, 50000])
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--grammar", default="balanced_parens")
    args = parser.parse_args()

    gt = builtin(args.grammar)
    print(f"{'samples':>8} {'rpni_s':>8} {'papni_s':>8} {'kept':>8}")
    for total in args.sizes:
        dataset = generate_dataset(gt, GenConfig(total=total, seed=args.seed))
        t0 = time.perf_counter()
        rpni_learn(dataset)
        rpni_t = time.perf_counter() - t0
        t0 = time.perf_counter()
        _, report = papni_learn(dataset, gt.alphabet)
        papni_t = time.perf_counter() - t0
        print(f"{total:>8} {rpni_t:>8.2f} {papni_t:>8.2f} {report.kept:>8}")


if __name__ == "__main__":
    main()
