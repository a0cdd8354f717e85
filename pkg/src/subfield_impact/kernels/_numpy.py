"""Vectorised numpy kernels (fallback backend)."""
import numpy as np

from ._attach import attach_citations  # runs as plain Python here

__all__ = ["attach_citations", "count_cited", "group_sums", "success_numerator"]


def count_cited(cited, n_papers):
    """Number of occurrences of each paper index in ``cited``."""
    return np.bincount(cited, minlength=n_papers).astype(np.int64, copy=False)


def group_sums(values, members, labels, n_labels):
    """``out[g] = sum(values[members[i]] for i with labels[i] == g)``, in integers."""
    out = np.zeros(n_labels, dtype=np.int64)
    np.add.at(out, labels, values[members])
    return out


def success_numerator(hist_t, hist_r):
    """Twice the number of (t, r) pairs won by t, ties counting one.

    With ``n_t(c)`` papers of t and ``n_r(c)`` of r holding ``c`` citations,
    returns ``sum_c (2 * N_t(>c) + n_t(c)) * n_r(c)``.
    """
    size = max(hist_t.shape[0], hist_r.shape[0])
    t = np.zeros(size, dtype=np.int64)
    r = np.zeros(size, dtype=np.int64)
    t[: hist_t.shape[0]] = hist_t
    r[: hist_r.shape[0]] = hist_r
    above = t.sum() - np.cumsum(t)
    return int(np.dot(2 * above + t, r))
