#!/usr/bin/env python3
"""Tabulate classifier latency over dimension and class counts, and
cross-check each figure against the cycle-stepped simulation."""

import argparse
import random

from signpipe.mdc import ClassCenterFile, PipelineModel, simulate_pipeline


def measured_latency(dims, classes, seed=0):
    rng = random.Random(seed)
    f = ClassCenterFile(dims, classes, 8,
                        [rng.randrange(256) for _ in range(dims * classes)])
    schedule = [[rng.randrange(256) for _ in range(dims)] for _ in range(4)]
    out = simulate_pipeline(PipelineModel(dims, classes), f, schedule)
    return out[0][0]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dims", type=int, default=4)
    ap.add_argument("--max-classes", type=int, default=8)
    args = ap.parse_args()

    header = "D\\C " + "".join(f"{c:>5}" for c in range(2, args.max_classes + 1))
    print(header)
    for d in range(1, args.max_dims + 1):
        row = [f"{d:>3} "]
        for c in range(2, args.max_classes + 1):
            model = PipelineModel(d, c)
            sim = measured_latency(d, c)
            assert sim == model.latency, (d, c, sim, model.latency)
            row.append(f"{model.latency:>5}")
        print("".join(row))
    print("\nall entries confirmed by cycle simulation")


if __name__ == "__main__":
    main()
