#!/usr/bin/env python3
"""Benchmark the numba Jacobi eigenvalue kernel against the numpy fallback.

Runs hermitian_spectrum over a batch of random density matrices twice, once
with numba enabled and once with QMARGINAL_NO_NUMBA=1, in separate
subprocesses so the import-time kernel selection is honest.  Reports wall
time per call and the maximum deviation between the two runs.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, os, sys, time
import numpy as np
from qmarginal import sampler

dims = json.loads(sys.argv[1])
repeats = int(sys.argv[2])

# warm up so numba compilation is not billed to the timings
sampler.hermitian_spectrum(sampler.random_density(4, 4, seed=0))

results = {}
for dim in dims:
    rho = sampler.random_density(dim, dim, seed=dim)
    start = time.perf_counter()
    for _ in range(repeats):
        spec = sampler.hermitian_spectrum(rho)
    elapsed = (time.perf_counter() - start) / repeats
    results[str(dim)] = {"seconds": elapsed, "spectrum": spec.tolist()}
print(json.dumps(results))
"""


def run_worker(dims, repeats, no_numba):
    env = dict(os.environ)
    if no_numba:
        env["QMARGINAL_NO_NUMBA"] = "1"
    else:
        env.pop("QMARGINAL_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(dims), str(repeats)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", default="4,8,16,32,64",
                        help="comma separated matrix dimensions")
    parser.add_argument("--repeats", type=int, default=50,
                        help="calls per dimension when timing")
    args = parser.parse_args()
    dims = [int(d) for d in args.dims.split(",")]

    fast = run_worker(dims, args.repeats, no_numba=False)
    slow = run_worker(dims, args.repeats, no_numba=True)

    print(f"{'dim':>5} {'numba (ms)':>12} {'numpy (ms)':>12} "
          f"{'speedup':>8} {'max |diff|':>12}")
    for dim in dims:
        key = str(dim)
        a = fast[key]
        b = slow[key]
        diff = max(abs(x - y)
                   for x, y in zip(a["spectrum"], b["spectrum"]))
        ratio = b["seconds"] / a["seconds"] if a["seconds"] else float("inf")
        print(f"{dim:>5} {a['seconds'] * 1e3:>12.3f} "
              f"{b['seconds'] * 1e3:>12.3f} {ratio:>8.2f} {diff:>12.3e}")


if __name__ == "__main__":
    main()
