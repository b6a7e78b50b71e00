"""Filtered simplicial complexes: open Vietoris-Rips and open l-infinity Cech.

A :class:`Filtration` stores one block per dimension.  Block ``k`` holds the
``k``-simplices as a ``(m_k, k+1)`` vertex array sorted by (value, lex), which
is all the reduction needs; the global (value, dim, lex) order is produced on
demand by :meth:`Filtration.simplices`.

Semantics are "open": a simplex with value ``v`` belongs to the level-``r``
complex iff ``v < r``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .errors import CapExceeded, InvalidParameter
from .metric_spaces import DistanceMatrix, as_distance_matrix

DEFAULT_SIMPLEX_CAP = 30_000_000
# bound on (rows x candidates) materialised at once during expansion
_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class Simplex:
    vertices: Tuple[int, ...]
    value: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class Filtration:
    """Per-dimension simplex blocks with filtration values.

    Parameters
    ----------
    blocks : list of (vertices, values)
        ``blocks[k]`` is ``(int array (m_k, k+1), float array (m_k,))``,
        already sorted by (value, lexicographic vertices).
    r_max : float
        Values are all strictly below ``r_max`` (or ``r_max`` is infinite).
    """

    semantics = "open"

    def __init__(self, blocks, r_max: float, n_vertices: int):
        self.blocks = [(np.asarray(v, dtype=np.int64), np.asarray(x, dtype=float)) for v, x in blocks]
        self.r_max = float(r_max)
        self.n_vertices = n_vertices

    @property
    def max_dim(self) -> int:
        return len(self.blocks) - 1

    def count(self, dim: Optional[int] = None) -> int:
        if dim is None:
            return sum(len(x) for _, x in self.blocks)
        if dim > self.max_dim:
            return 0
        return len(self.blocks[dim][1])

    def __len__(self):
        return self.count()

    def simplices(self) -> Iterator[Simplex]:
        """Yield every simplex in (value, dimension, lexicographic) order."""
        def block_iter(k):
            verts, vals = self.blocks[k]
            for row, v in zip(verts, vals):
                yield (float(v), k, tuple(int(i) for i in row))

        for v, k, verts in heapq.merge(*(block_iter(k) for k in range(len(self.blocks)))):
            yield Simplex(verts, v)

    def value_map(self) -> dict:
        """Map vertex tuple -> value (for tests and cross-checks)."""
        out = {}
        for verts, vals in self.blocks:
            for row, v in zip(verts, vals):
                out[tuple(int(i) for i in row)] = float(v)
        return out

    def dim_value_multiset(self) -> List[Tuple[int, float]]:
        return sorted((k, float(v)) for k, (_, vals) in enumerate(self.blocks) for v in vals)

    def to_text(self) -> str:
        """Debug export: one ``value dim v0 ... vk`` line per simplex, sorted."""
        lines = []
        for s in self.simplices():
            lines.append(" ".join([repr(s.value), str(s.dim)] + [str(v) for v in s.vertices]))
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self):
        counts = ", ".join(str(self.count(k)) for k in range(len(self.blocks)))
        return f"Filtration(n={self.n_vertices}, counts=[{counts}], r_max={self.r_max})"


def default_r_max(d: DistanceMatrix) -> float:
    """Diameter plus one ulp, so every simplex is present."""
    diam = float(d.d.max()) if d.n > 1 else 0.0
    return float(np.nextafter(diam, np.inf))


def _sort_block(verts, vals):
    # rows arrive lexicographically sorted; a stable sort on value keeps that
    order = np.argsort(vals, kind="stable")
    return verts[order], vals[order]


def _check_cap(total, cap):
    if total > cap:
        raise CapExceeded(int(total))


def vr_filtration(D, max_dim: int, r_max: Optional[float] = None,
                  cap: int = DEFAULT_SIMPLEX_CAP) -> Filtration:
    """Open Vietoris-Rips filtration up to dimension ``max_dim``.

    Every simplex of diameter ``< r_max`` (all of them if ``r_max`` is
    infinite) with at most ``max_dim + 1`` vertices is listed, valued by its
    diameter.  Enumeration expands cliques of the threshold graph.
    """
    D = as_distance_matrix(D)
    if max_dim < 0:
        raise InvalidParameter("max_dim must be >= 0")
    if r_max is None:
        r_max = default_r_max(D)
    if not r_max > 0:
        raise InvalidParameter("r_max must be positive")
    n = D.n
    d = D.d
    adj = d < r_max if math.isfinite(r_max) else np.ones_like(d, dtype=bool)
    np.fill_diagonal(adj, False)

    verts = np.arange(n, dtype=np.int64)[:, None]
    vals = np.zeros(n)
    blocks = [(verts, vals)]
    total = n
    _check_cap(total, cap)
    for _ in range(max_dim):
        verts, vals = _expand_vr(verts, vals, adj, d, cap - total)
        total += len(vals)
        blocks.append((verts, vals))
    blocks = [_sort_block(v, x) for v, x in blocks]
    return Filtration(blocks, r_max, n)


def _expand_vr(verts, vals, adj, d, budget):
    """Cofaces of the given cliques by one vertex larger than their last."""
    m, k = verts.shape
    n = adj.shape[0]
    if m == 0:
        return np.empty((0, k + 1), dtype=np.int64), np.empty(0)
    step = max(1, _CHUNK_CELLS // max(n, 1))
    out_v, out_x = [], []
    produced = 0
    later = np.arange(n)[None, :]
    for start in range(0, m, step):
        c = verts[start:start + step]
        mask = later > c[:, -1:]
        for t in range(k):
            mask &= adj[c[:, t]]
        rows, cols = np.nonzero(mask)
        produced += len(rows)
        _check_cap(produced, budget)
        if len(rows) == 0:
            continue
        base = c[rows]
        x = vals[start:start + step][rows]
        for t in range(k):
            x = np.maximum(x, d[base[:, t], cols])
        out_v.append(np.column_stack([base, cols]))
        out_x.append(x)
    if not out_v:
        return np.empty((0, k + 1), dtype=np.int64), np.empty(0)
    return np.concatenate(out_v).astype(np.int64), np.concatenate(out_x)


def cech_linf_filtration(coords, max_dim: int, r_max: float = math.inf,
                         cap: int = DEFAULT_SIMPLEX_CAP) -> Filtration:
    """Open Cech filtration of a point set in R^m with the l-infinity norm.

    The open l-infinity balls of radius ``r`` around a set of points meet iff,
    coordinate by coordinate, the intervals ``(x - r, x + r)`` meet, i.e. iff
    half the coordinate spread is below ``r`` for every coordinate.  A
    simplex's value is therefore ``0.5 * max_k (max_i x_i[k] - min_i x_i[k])``.
    """
    x = np.asarray(coords, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] == 0:
        raise InvalidParameter("coords must be non-empty")
    if max_dim < 0:
        raise InvalidParameter("max_dim must be >= 0")
    n, m = x.shape
    verts = np.arange(n, dtype=np.int64)[:, None]
    lo, hi = x.copy(), x.copy()
    vals = np.zeros(n)
    blocks = [(verts, vals)]
    total = n
    _check_cap(total, cap)
    for k in range(1, max_dim + 1):
        new_v, new_lo, new_hi, new_x = [], [], [], []
        step = max(1, _CHUNK_CELLS // max(n * m, 1))
        for start in range(0, len(verts), step):
            c = verts[start:start + step]
            cand_lo = np.minimum(lo[start:start + step, None, :], x[None, :, :])
            cand_hi = np.maximum(hi[start:start + step, None, :], x[None, :, :])
            half_spread = 0.5 * (cand_hi - cand_lo).max(axis=2)
            ok = np.arange(n)[None, :] > c[:, -1:]
            if math.isfinite(r_max):
                ok &= half_spread < r_max
            rows, cols = np.nonzero(ok)
            total += len(rows)
            _check_cap(total, cap)
            new_v.append(np.column_stack([c[rows], cols]))
            new_lo.append(cand_lo[rows, cols])
            new_hi.append(cand_hi[rows, cols])
            new_x.append(half_spread[rows, cols])
        if new_v:
            verts = np.concatenate(new_v).astype(np.int64)
            lo, hi, vals = np.concatenate(new_lo), np.concatenate(new_hi), np.concatenate(new_x)
        else:
            verts, vals = np.empty((0, k + 1), dtype=np.int64), np.empty(0)
            lo = hi = np.empty((0, m))
        blocks.append((verts, vals))
    blocks = [_sort_block(v, val) for v, val in blocks]
    return Filtration(blocks, r_max, n)


@dataclass
class CechVrReport:
    ok: bool
    n_simplices: int
    first_mismatch: Optional[dict] = None

    def to_dict(self):
        return {"ok": self.ok, "n_simplices": self.n_simplices, "first_mismatch": self.first_mismatch}


def check_cech_vr(coords, max_dim: int, tol: float = 1e-12) -> CechVrReport:
    """Compare the l-infinity Cech filtration at scale 2 with Vietoris-Rips.

    The two sides come from different code: per-coordinate interval
    intersection for Cech, pairwise l-infinity diameters for Vietoris-Rips.
    """
    x = np.asarray(coords, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    cech = cech_linf_filtration(x, max_dim).value_map()
    n = x.shape[0]
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            d[i, j] = max(abs(a - b) for a, b in zip(x[i], x[j])) if i != j else 0.0
    vr = vr_filtration(DistanceMatrix(d), max_dim, r_max=math.inf).value_map()
    if cech.keys() != vr.keys():
        missing = sorted(set(cech) ^ set(vr))[0]
        return CechVrReport(False, len(vr), {"simplex": list(missing), "reason": "present on one side only"})
    for s in sorted(vr, key=lambda t: (len(t), t)):
        if abs(2.0 * cech[s] - vr[s]) > tol:
            return CechVrReport(False, len(vr), {"simplex": list(s), "cech": cech[s], "vr": vr[s]})
    return CechVrReport(True, len(vr))
