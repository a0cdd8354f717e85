"""Weighted citation attachment loop for the synthetic generator.

Written in the numba-compatible subset so the numba backend can jit the very
same function; the numpy backend runs it as plain Python. Both therefore
consume the uniform stream identically and emit identical edges.
"""
import numpy as np


def attach_citations(citing, n_refs, eligible, base_w, indeg, alpha, uniforms, max_tries):
    """Draw ``n_refs[i]`` distinct targets among ``eligible`` for each ``citing[i]``.

    A target's weight is ``base_w[j] * (1 + indeg[eligible[j]]) ** alpha``;
    ``indeg`` (indexed by paper) is updated in place after every citation so
    ``alpha > 0`` gives preferential attachment. Draws use ``uniforms`` in
    order; a reference that keeps hitting already-cited targets is abandoned
    after ``max_tries`` draws.

    Returns ``(out_citing, out_cited, n_edges, n_used)``; ``n_used == -1``
    means the uniform stream ran out and the caller must retry with more.
    """
    m = eligible.shape[0]
    total_refs = 0
    for i in range(n_refs.shape[0]):
        total_refs += n_refs[i]
    out_citing = np.empty(total_refs, dtype=np.int64)
    out_cited = np.empty(total_refs, dtype=np.int64)
    if m == 0 or total_refs == 0:
        return out_citing, out_cited, 0, 0

    # Fenwick tree over target weights, 1-based
    w = np.empty(m, dtype=np.float64)
    tree = np.zeros(m + 1, dtype=np.float64)
    for j in range(m):
        wj = base_w[j]
        if alpha != 0.0:
            wj = wj * (1.0 + indeg[eligible[j]]) ** alpha
        w[j] = wj
        tree[j + 1] += wj
        parent = (j + 1) + ((j + 1) & -(j + 1))
        if parent <= m:
            tree[parent] += tree[j + 1]
    top = 1
    while top * 2 <= m:
        top *= 2

    marked = np.full(m, -1, dtype=np.int64)
    n_out = 0
    pos_u = 0
    n_u = uniforms.shape[0]
    for i in range(citing.shape[0]):
        src = citing[i]
        for _ref in range(n_refs[i]):
            for _try in range(max_tries):
                if pos_u >= n_u:
                    return out_citing, out_cited, n_out, -1
                # total weight is the prefix sum over all m entries
                total = 0.0
                k = m
                while k > 0:
                    total += tree[k]
                    k -= k & -k
                rem = uniforms[pos_u] * total
                pos_u += 1
                pos = 0
                step = top
                while step > 0:
                    nxt = pos + step
                    if nxt <= m and tree[nxt] <= rem:
                        pos = nxt
                        rem -= tree[nxt]
                    step >>= 1
                if pos >= m:
                    pos = m - 1
                if w[pos] <= 0.0 or marked[pos] == i:
                    continue
                marked[pos] = i
                dst = eligible[pos]
                out_citing[n_out] = src
                out_cited[n_out] = dst
                n_out += 1
                indeg[dst] += 1
                if alpha != 0.0:
                    new_w = base_w[pos] * (1.0 + indeg[dst]) ** alpha
                    delta = new_w - w[pos]
                    w[pos] = new_w
                    k = pos + 1
                    while k <= m:
                        tree[k] += delta
                        k += k & -k
                break
    return out_citing, out_cited, n_out, pos_u
