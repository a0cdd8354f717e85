"""Both kernel backends must agree exactly."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subfield_impact import kernels

nb = pytest.importorskip("numba") and kernels.backend_module("numba")
npk = kernels.backend_module("numpy")


def test_env_flag_selects_backend():
    for name in ("numpy", "numba"):
        env = dict(os.environ, SUBFIELD_IMPACT_BACKEND=name)
        out = subprocess.run([sys.executable, "-c", "from subfield_impact import kernels; print(kernels.BACKEND)"],
                             env=env, capture_output=True, text=True, check=True)
        assert out.stdout.strip() == name


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 30), max_size=200), st.integers(31, 40))
def test_count_cited(cited, n):
    a = np.array(cited, dtype=np.int64)
    assert np.array_equal(nb.count_cited(a, n), npk.count_cited(a, n))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 19), st.integers(0, 4)), max_size=100),
       st.lists(st.integers(0, 1000), min_size=20, max_size=20))
def test_group_sums(pairs, values):
    members = np.array([p[0] for p in pairs], dtype=np.int64)
    labels = np.array([p[1] for p in pairs], dtype=np.int64)
    vals = np.array(values, dtype=np.int64)
    expect = np.zeros(5, dtype=np.int64)
    for m, lab in pairs:
        expect[lab] += values[m]
    assert np.array_equal(nb.group_sums(vals, members, labels, 5), expect)
    assert np.array_equal(npk.group_sums(vals, members, labels, 5), expect)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 500), min_size=1, max_size=30), st.lists(st.integers(0, 500), min_size=1, max_size=30))
def test_success_numerator(t, r):
    ht, hr = np.array(t, dtype=np.int64), np.array(r, dtype=np.int64)
    assert nb.success_numerator(ht, hr) == npk.success_numerator(ht, hr)


@pytest.mark.parametrize("alpha", [0.0, 0.7, 1.0])
def test_attach_identical(alpha):
    rng = np.random.default_rng(3)
    n = 300
    eligible = np.arange(100, 300, dtype=np.int64)
    citing = np.arange(0, 100, dtype=np.int64)
    n_refs = rng.poisson(5, 100).astype(np.int64)
    base = rng.uniform(0.1, 3.0, 200)
    u = rng.random(5000)
    outs = []
    for mod in (nb, npk):
        indeg = np.zeros(n, dtype=np.int64)
        src, dst, k, used = mod.attach_citations(citing, n_refs, eligible, base, indeg, alpha, u, 64)
        outs.append((src[:k].tolist(), dst[:k].tolist(), used, indeg.tolist()))
    assert outs[0] == outs[1]
    src, dst, used, indeg = outs[0]
    assert used > 0
    assert len(set(zip(src, dst))) == len(src)
    assert sum(indeg) == len(dst)


def test_attach_reports_exhaustion():
    eligible = np.arange(10, 20, dtype=np.int64)
    u = np.full(3, 0.5)
    _, _, k, used = npk.attach_citations(np.array([0], dtype=np.int64), np.array([5], dtype=np.int64), eligible,
                                         np.ones(10), np.zeros(20, dtype=np.int64), 0.0, u, 64)
    assert used == -1


def test_benchmark_script_runs():
    script = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_kernels.py")
    out = subprocess.run([sys.executable, script, "--papers", "2000", "--repeat", "1"],
                         capture_output=True, text=True, check=True)
    assert "attach_citations" in out.stdout
