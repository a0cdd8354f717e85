"""Time the numba and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--papers N] [--repeat R] [--end-to-end]

Kernel timings exclude the first (compiling) call. ``--end-to-end`` also
times corpus generation plus a dispersion run in a fresh interpreter per
backend, which includes import and jit-cache loading.
"""
import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from subfield_impact import kernels


def _inputs(n_papers, seed=0):
    rng = np.random.default_rng(seed)
    n_edges = 20 * n_papers
    cited = rng.integers(0, n_papers, n_edges)
    values = rng.integers(0, 50, n_papers)
    members = rng.integers(0, n_papers, n_papers // 2)
    labels = rng.integers(0, 500, members.size)
    hist_t = rng.integers(0, 1000, 2000)
    hist_r = rng.integers(0, 1000, 2000)
    n_cite = n_papers // 10
    eligible = np.arange(n_cite, n_papers, dtype=np.int64)
    attach = (
        np.arange(n_cite, dtype=np.int64),
        rng.poisson(10, n_cite).astype(np.int64),
        eligible,
        rng.lognormal(0.0, 0.8, eligible.size),
        np.zeros(n_papers, dtype=np.int64),
        0.5,
        rng.random(40 * n_cite + 64),
        64,
    )
    return {
        "count_cited": (cited, n_papers),
        "group_sums": (values, members, labels, 500),
        "success_numerator": (hist_t, hist_r),
        "attach_citations": attach,
    }


def bench_kernels(n_papers, repeat):
    args = _inputs(n_papers)
    rows = []
    for name, a in args.items():
        best = {}
        for backend in kernels.BACKENDS:
            fn = getattr(kernels.backend_module(backend), name)
            fn(*a)  # compile / warm up
            number = 1 if name == "attach_citations" and backend == "numpy" else 5
            best[backend] = min(timeit.repeat(lambda: fn(*a), number=number, repeat=repeat)) / number
        rows.append((name, best["numba"], best["numpy"]))
    return rows


_E2E = """
import sys
from subfield_impact import SynthConfig, generate, subfield_if_dispersion
cfg = SynthConfig.from_json(sys.argv[1])
c = generate(cfg)
subfield_if_dispersion(c, "JA", cfg.years)
"""


def bench_end_to_end(spec):
    out = {}
    for backend in kernels.BACKENDS:
        env = dict(os.environ, SUBFIELD_IMPACT_BACKEND=backend)
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-c", _E2E, spec], env=env, check=True)
        out[backend] = time.perf_counter() - t0
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--papers", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true")
    ap.add_argument("--spec", default=os.path.join(os.path.dirname(__file__), "..", "tests", "data",
                                                    "two_journals_synth.json"))
    args = ap.parse_args()

    print(f"kernels, {args.papers} papers, best of {args.repeat}")
    print(f"{'kernel':<20}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for name, t_nb, t_np in bench_kernels(args.papers, args.repeat):
        print(f"{name:<20}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>10.1f}")
    if args.end_to_end:
        res = bench_end_to_end(args.spec)
        print("\nend to end (generate + dispersion, fresh interpreter)")
        for backend, t in res.items():
            print(f"{backend:<20}{t:>12.2f}")


if __name__ == "__main__":
    main()
