#!/usr/bin/env python3
"""Benchmark the compiled arithmetic kernel against the pure-Python one.

The kernel's job is coefficient convolution modulo the cyclotomic
polynomial: the innermost loop of every matrix product during group
closure.  Run from the repo root:

    python benchmarks/bench_kernel.py

Measures raw kernel throughput (cache disabled by construction: fresh
random vectors) and an end-to-end closure of the 648-element Hessian
preimage group with each backend.
"""

import os
import random
import subprocess
import sys
import time


def bench_raw(kernel, level_data, reps=20000, seed=7):
    rng = random.Random(seed)
    red, deg = level_data
    vecs = [
        tuple(rng.randrange(-9, 10) for _ in range(deg)) for _ in range(64)
    ]
    t0 = time.perf_counter()
    acc = 0
    for i in range(reps):
        a = vecs[i % 64]
        b = vecs[(i * 7 + 3) % 64]
        out = kernel.conv_reduce(a, b, red, deg)
        acc ^= out[0] & 1
    dt = time.perf_counter() - t0
    return dt, acc


def main():
    from neutrality import _kernel_py
    from neutrality.cyclo import _level

    lv = _level(36)
    level_data = (lv.red, lv.deg)

    backends = [("python", _kernel_py)]
    try:
        from neutrality import _kernel

        backends.append(("cython", _kernel))
    except ImportError:
        print("compiled kernel not available; benchmarking pure Python only")

    reps = 20000
    print(f"raw conv_reduce at level 36 (deg {lv.deg}), {reps} products:")
    base = None
    for name, kernel in backends:
        times = []
        for _ in range(3):
            dt, _ = bench_raw(kernel, level_data, reps)
            times.append(dt)
        best = min(times)
        rate = reps / best
        line = f"  {name:7s} {best*1e6/reps:8.2f} us/product  ({rate:,.0f}/s)"
        if name == "python":
            base = best
        elif base:
            line += f"  speedup x{base/best:.2f}"
        print(line)

    print("\nend-to-end: closure of the 648-element Hessian preimage group")
    script = (
        "import time; t0=time.time(); "
        "from neutrality import catalog; "
        "g = catalog.build().h5_tilde; "
        "print(f'  order {g.order} in {time.time()-t0:.2f}s')"
    )
    for name, env_val in (("python", "1"), ("cython", "")):
        env = dict(os.environ)
        if env_val:
            env["NEUTRALITY_PURE"] = env_val
        else:
            env.pop("NEUTRALITY_PURE", None)
        print(f"  backend={name}", flush=True)
        subprocess.run([sys.executable, "-c", script], env=env, check=True)


if __name__ == "__main__":
    main()
