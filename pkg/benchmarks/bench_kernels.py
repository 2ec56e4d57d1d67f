"""Benchmark the compiled BFS kernel against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 1000003] [--k 5] [--repeats 3]
"""

import argparse
import time

import numpy as np

from cayleymix import _kernels
from cayleymix._kernels import fallback
from cayleymix.group import make_group, sample_generators


def _bfs_inputs(spec, gens, directed):
    moduli = np.array(spec.side_lengths, dtype=np.int64)
    strides = np.array(spec.strides, dtype=np.int64)
    steps = [np.array(z, dtype=np.int64) for z in gens.elems]
    if not directed:
        steps += [(-s) % moduli for s in steps]
    return moduli, strides, np.ascontiguousarray(np.array(steps, dtype=np.int64)), spec.n


def _time(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1_000_003)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    opts = ap.parse_args()

    spec = make_group([opts.n])
    gens = sample_generators(spec, opts.k, opts.seed)
    print(f"group Z_{opts.n}, k={opts.k}, compiled extension available: {_kernels.HAVE_EXT}")
    for directed in (False, True):
        args = _bfs_inputs(spec, gens, directed)
        t_sel, d_sel = _time(_kernels.bfs_distances, args, opts.repeats)
        t_py, d_py = _time(fallback.bfs_distances, args, opts.repeats)
        assert np.array_equal(d_sel, d_py), "kernel outputs differ"
        label = "directed" if directed else "undirected"
        speed = t_py / t_sel if t_sel > 0 else float("inf")
        print(f"{label:10s}  selected: {t_sel * 1e3:8.1f} ms   fallback: {t_py * 1e3:8.1f} ms   speedup: {speed:5.2f}x")


if __name__ == "__main__":
    main()
