"""Hot loops.  Written in the numba-compatible subset of Python so the same
source runs compiled (default) or interpreted (``RIPSLAB_DISABLE_NUMBA=1``)."""
import numpy as np

from ._accel import USE_NUMBA, njit


@njit
def mod_inverse(a, p):
    # Fermat: a^(p-2) mod p
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@njit
def _grow(arr, need):
    size = arr.shape[0]
    if need <= size:
        return arr
    while size < need:
        size *= 2
    out = np.empty(size, dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit
def reduce_coboundary(indptr, indices, coeffs, n_rows, skip, p):
    """Column reduction of a coboundary matrix over Z/p.

    Column ``j`` lists the cofaces of simplex ``j`` as ascending row indices
    with coefficients in ``[0, p)``.  Columns are processed from the last to
    the first; a column's pivot is its smallest row index.  Columns flagged
    in ``skip`` are cleared (known to be paired already).

    Returns ``(pair_cols, pair_rows, essential_cols)``.
    """
    n_cols = indptr.shape[0] - 1
    owner = np.full(n_rows, -1, dtype=np.int64)
    store_start = np.full(n_cols, -1, dtype=np.int64)
    store_len = np.zeros(n_cols, dtype=np.int64)
    buf_r = np.empty(max(16, indices.shape[0]), dtype=np.int64)
    buf_v = np.empty(max(16, indices.shape[0]), dtype=np.int64)
    buf_used = 0

    work_r = np.empty(64, dtype=np.int64)
    work_v = np.empty(64, dtype=np.int64)
    tmp_r = np.empty(64, dtype=np.int64)
    tmp_v = np.empty(64, dtype=np.int64)

    pair_cols = np.empty(n_cols, dtype=np.int64)
    pair_rows = np.empty(n_cols, dtype=np.int64)
    n_pairs = 0
    essential = np.empty(n_cols, dtype=np.int64)
    n_ess = 0

    for j in range(n_cols - 1, -1, -1):
        if skip[j]:
            continue
        a, b = indptr[j], indptr[j + 1]
        wl = b - a
        work_r = _grow(work_r, wl)
        work_v = _grow(work_v, wl)
        for t in range(wl):
            work_r[t] = indices[a + t]
            work_v[t] = coeffs[a + t]
        while wl > 0:
            piv = work_r[0]
            o = owner[piv]
            if o < 0:
                break
            # stored columns have pivot coefficient 1
            f = (p - work_v[0]) % p
            s0 = store_start[o]
            sl = store_len[o]
            tmp_r = _grow(tmp_r, wl + sl)
            tmp_v = _grow(tmp_v, wl + sl)
            x = 0
            y = 0
            tl = 0
            while x < wl or y < sl:
                if y >= sl or (x < wl and work_r[x] < buf_r[s0 + y]):
                    tmp_r[tl] = work_r[x]
                    tmp_v[tl] = work_v[x]
                    tl += 1
                    x += 1
                elif x >= wl or buf_r[s0 + y] < work_r[x]:
                    tmp_r[tl] = buf_r[s0 + y]
                    tmp_v[tl] = (f * buf_v[s0 + y]) % p
                    tl += 1
                    y += 1
                else:
                    c = (work_v[x] + f * buf_v[s0 + y]) % p
                    if c != 0:
                        tmp_r[tl] = work_r[x]
                        tmp_v[tl] = c
                        tl += 1
                    x += 1
                    y += 1
            work_r, tmp_r = tmp_r, work_r
            work_v, tmp_v = tmp_v, work_v
            wl = tl
        if wl == 0:
            essential[n_ess] = j
            n_ess += 1
            continue
        piv = work_r[0]
        inv = mod_inverse(work_v[0], p)
        buf_r = _grow(buf_r, buf_used + wl)
        buf_v = _grow(buf_v, buf_used + wl)
        for t in range(wl):
            buf_r[buf_used + t] = work_r[t]
            buf_v[buf_used + t] = (work_v[t] * inv) % p
        store_start[j] = buf_used
        store_len[j] = wl
        buf_used += wl
        owner[piv] = j
        pair_cols[n_pairs] = j
        pair_rows[n_pairs] = piv
        n_pairs += 1
    return pair_cols[:n_pairs], pair_rows[:n_pairs], essential[:n_ess]


@njit
def _hyperbolicity_loops(d):
    n = d.shape[0]
    best = 0.0
    for w in range(n):
        for x in range(n):
            dwx = d[w, x]
            for y in range(n):
                dwy = d[w, y]
                dxy = d[x, y]
                for z in range(n):
                    s = dwx + d[y, z]
                    m = max(dwy + d[x, z], dxy + d[w, z])
                    if s - m > best:
                        best = s - m
    return best


def _hyperbolicity_numpy(d):
    best = 0.0
    for w in range(d.shape[0]):
        # axes (x, y, z)
        s = d[w, :, None, None] + d[None, :, :]
        m = np.maximum(d[w, None, :, None] + d[:, None, :], d[:, :, None] + d[w, None, None, :])
        best = max(best, float((s - m).max()))
    return best


def hyperbolicity(d):
    """Four-point slack maximised over ordered quadruples (repeats allowed)."""
    d = np.ascontiguousarray(d, dtype=np.float64)
    if USE_NUMBA:
        return float(_hyperbolicity_loops(d))
    return _hyperbolicity_numpy(d)
