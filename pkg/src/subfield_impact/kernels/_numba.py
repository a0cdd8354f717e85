"""numba-compiled kernels (default backend)."""
import numpy as np
from numba import njit

from ._attach import attach_citations as _attach_py

attach_citations = njit(cache=True, nogil=True)(_attach_py)


@njit(cache=True, nogil=True)
def count_cited(cited, n_papers):
    out = np.zeros(n_papers, dtype=np.int64)
    for i in range(cited.shape[0]):
        out[cited[i]] += 1
    return out


@njit(cache=True, nogil=True)
def group_sums(values, members, labels, n_labels):
    out = np.zeros(n_labels, dtype=np.int64)
    for i in range(members.shape[0]):
        out[labels[i]] += values[members[i]]
    return out


@njit(cache=True, nogil=True)
def _success_numerator(hist_t, hist_r):
    size = max(hist_t.shape[0], hist_r.shape[0])
    above = 0
    num = 0
    # descending c so N_t(>c) can be accumulated on the fly
    for c in range(size - 1, -1, -1):
        nt = hist_t[c] if c < hist_t.shape[0] else 0
        nr = hist_r[c] if c < hist_r.shape[0] else 0
        num += (2 * above + nt) * nr
        above += nt
    return num


def success_numerator(hist_t, hist_r):
    return int(_success_numerator(hist_t, hist_r))
