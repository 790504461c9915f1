"""Throughput of bind, bundle and cosine at d=10000.

For regression tracking only; there is no pass/fail threshold.

    python benchmarks/bench_ops.py [--dim 10000] [--batch 1000] [--repeat 5]
"""
import argparse
import json
import timeit

import numpy as np

from hypervec import bind, bundle, cosine, cosine_matrix, random_bipolar


def run(dim=10_000, batch=1000, repeat=5, seed=0):
    rng = np.random.default_rng(seed)
    a = random_bipolar(dim, rng)
    b = random_bipolar(dim, rng)
    many = random_bipolar((batch, dim), rng)
    cases = {
        "bind": (lambda: bind(a, b), 1),
        "bundle": (lambda: bundle(a, b), 1),
        "cosine": (lambda: cosine(a, b), 1),
        "bind_batch": (lambda: bind(many, a), batch),
        "cosine_batch": (lambda: cosine_matrix(many, a), batch),
    }
    report = {"dim": dim, "batch": batch}
    for name, (fn, per_call) in cases.items():
        number = max(1, 2000 // per_call)
        best = min(timeit.repeat(fn, number=number, repeat=repeat)) / number
        report[name] = {"seconds_per_call": best, "ops_per_second": per_call / best}
    return report


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dim", type=int, default=10_000)
    p.add_argument("--batch", type=int, default=1000)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    report = run(args.dim, args.batch, args.repeat)
    for name, value in report.items():
        if isinstance(value, dict):
            print(f"{name:>13}: {value['ops_per_second']:14,.0f} vectors/s")
    return report


if __name__ == "__main__":
    print(json.dumps(main(), indent=2))
