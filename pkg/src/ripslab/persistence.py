"""Persistence barcodes of filtrations by column reduction over Z/p.

Pairs are computed with persistent cohomology and clearing, dimension by
dimension upward; the resulting barcode is the same as the homology one.
Every bar is the half-open interval (birth, death] or (birth, inf).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ._kernels import reduce_coboundary
from .complexes import Filtration
from .errors import InsufficientDimension, InvalidParameter, NoEssentialComponent, NotPrime

INF = math.inf


@dataclass(frozen=True, order=True)
class Interval:
    """The bar (birth, death]; ``death`` may be ``inf``."""

    birth: float
    death: float
    dim: int = 0

    def __post_init__(self):
        if not self.birth >= 0:
            raise InvalidParameter(f"birth must be >= 0, got {self.birth}")
        if not self.birth < self.death:
            raise InvalidParameter(f"empty interval ({self.birth}, {self.death}]")

    @property
    def length(self) -> float:
        return self.death - self.birth

    @property
    def essential(self) -> bool:
        return math.isinf(self.death)

    def __contains__(self, r):
        return self.birth < r <= self.death if not self.essential else r > self.birth


def is_prime(p: int) -> bool:
    if int(p) != p or p < 2:
        return False
    p = int(p)
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Barcode:
    """Multiset of intervals grouped by homology dimension.

    Equality compares the field and the sorted per-dimension multisets
    exactly; empty dimensions are ignored.
    """

    def __init__(self, dims: Optional[Dict[int, Iterable]] = None, field_char: int = 2):
        if not is_prime(field_char):
            raise NotPrime(f"{field_char} is not prime")
        self.field_char = int(field_char)
        self._dims: Dict[int, Tuple[Tuple[float, float], ...]] = {}
        for k, bars in (dims or {}).items():
            pairs = []
            for bar in bars:
                if isinstance(bar, Interval):
                    b, d = bar.birth, bar.death
                else:
                    b, d = bar
                b, d = float(b), float(d)
                Interval(b, d, int(k))  # validates
                pairs.append((b, d))
            if pairs:
                self._dims[int(k)] = tuple(sorted(pairs))

    @property
    def dims(self) -> List[int]:
        return sorted(self._dims)

    def pairs(self, k: int) -> Tuple[Tuple[float, float], ...]:
        return self._dims.get(k, ())

    def intervals(self, k: Optional[int] = None) -> List[Interval]:
        ks = self.dims if k is None else [k]
        return [Interval(b, d, j) for j in ks for b, d in self.pairs(j)]

    def max_dim(self) -> int:
        return max(self._dims) if self._dims else -1

    def restrict(self, max_dim: int) -> "Barcode":
        return Barcode({k: v for k, v in self._dims.items() if k <= max_dim}, self.field_char)

    def __eq__(self, other):
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.field_char == other.field_char and self._dims == other._dims

    def __hash__(self):
        return hash((self.field_char, tuple(sorted(self._dims.items()))))

    def __repr__(self):
        body = ", ".join(f"H{k}: {list(v)}" for k, v in sorted(self._dims.items()))
        return f"Barcode(F{self.field_char}; {body})"


# --- boundary bookkeeping -------------------------------------------------

def _binomials(n: int, kmax: int) -> np.ndarray:
    table = np.zeros((n + 1, kmax + 1), dtype=np.int64)
    for v in range(n + 1):
        for k in range(kmax + 1):
            c = math.comb(v, k)
            if c >= 2**62:
                raise OverflowError("simplex index space too large for int64 keys")
            table[v, k] = c
    return table


def _keys(verts: np.ndarray, binom: np.ndarray) -> np.ndarray:
    # combinatorial number system: sum_t C(v_t, t+1) over ascending vertices
    key = np.zeros(len(verts), dtype=np.int64)
    for t in range(verts.shape[1]):
        key += binom[verts[:, t], t + 1]
    return key


def coboundary_matrix(filtration: Filtration, k: int, p: int):
    """CSR coboundary from ``k``-simplices (columns) to ``k+1``-simplices (rows).

    Row/column indices are positions within the per-dimension blocks, which
    are already in filtration order.  Coefficients are in ``[0, p)``.
    """
    verts_k, _ = filtration.blocks[k]
    verts_up, _ = filtration.blocks[k + 1]
    n_cols, n_rows = len(verts_k), len(verts_up)
    if n_rows == 0:
        return (np.zeros(n_cols + 1, dtype=np.int64), np.empty(0, dtype=np.int64),
                np.empty(0, dtype=np.int64), n_rows)
    binom = _binomials(filtration.n_vertices, k + 2)
    keys = _keys(verts_k, binom)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    m = k + 2
    cols = np.empty((n_rows, m), dtype=np.int64)
    signs = np.empty((n_rows, m), dtype=np.int64)
    for t in range(m):
        facet = np.delete(verts_up, t, axis=1)
        pos = np.searchsorted(sorted_keys, _keys(facet, binom))
        cols[:, t] = order[pos]
        signs[:, t] = 1 if t % 2 == 0 else p - 1
    rows = np.repeat(np.arange(n_rows, dtype=np.int64), m)
    cols = cols.ravel()
    signs = signs.ravel() % p
    perm = np.lexsort((rows, cols))
    indices = rows[perm]
    coeffs = signs[perm]
    indptr = np.zeros(n_cols + 1, dtype=np.int64)
    np.cumsum(np.bincount(cols, minlength=n_cols), out=indptr[1:])
    return indptr, indices, coeffs, n_rows


def persistence_pairs(filtration: Filtration, homology_max_dim: int, p: int = 2):
    """Raw pairing: per dimension ``k``, ``(pairs, essential)`` where pairs are
    (k-simplex position, (k+1)-simplex position) within the blocks."""
    out = []
    cleared = np.zeros(filtration.count(0), dtype=bool)
    for k in range(homology_max_dim + 1):
        indptr, indices, coeffs, n_rows = coboundary_matrix(filtration, k, p)
        cols, rows, ess = reduce_coboundary(indptr, indices, coeffs, n_rows, cleared, p)
        out.append((np.column_stack([cols, rows]), ess))
        cleared = np.zeros(n_rows, dtype=bool)
        cleared[rows] = True
    return out


def compute_barcode(filtration: Filtration, p: int = 2, homology_max_dim: int = 1) -> Barcode:
    """Barcode of the filtration's persistent homology with Z/p coefficients
    in dimensions ``0..homology_max_dim``.  Zero-length pairs are dropped."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if homology_max_dim < 0:
        raise InvalidParameter("homology_max_dim must be >= 0")
    if filtration.max_dim < homology_max_dim + 1:
        raise InsufficientDimension(
            f"filtration has max_dim {filtration.max_dim}; need {homology_max_dim + 1} "
            f"for deaths in dimension {homology_max_dim}")
    dims = {}
    for k, (pairs, ess) in enumerate(persistence_pairs(filtration, homology_max_dim, p)):
        births = filtration.blocks[k][1]
        deaths = filtration.blocks[k + 1][1]
        b = births[pairs[:, 0]]
        d = deaths[pairs[:, 1]]
        keep = b < d
        bars = list(zip(b[keep].tolist(), d[keep].tolist()))
        bars += [(float(x), INF) for x in births[ess]]
        dims[k] = bars
    return Barcode(dims, p)


def reduced_barcode(b: Barcode) -> Barcode:
    """Drop exactly one (0, inf) bar from dimension 0."""
    h0 = list(b.pairs(0))
    try:
        h0.remove((0.0, INF))
    except ValueError:
        raise NoEssentialComponent("no (0, inf) bar in dimension 0") from None
    dims = {k: b.pairs(k) for k in b.dims}
    dims[0] = h0
    return Barcode(dims, b.field_char)


def vr_barcode(D, homology_max_dim: int = 1, p: int = 2, r_max: Optional[float] = None) -> Barcode:
    """Convenience: Vietoris-Rips filtration plus reduction in one call."""
    from .complexes import vr_filtration

    f = vr_filtration(D, homology_max_dim + 1, r_max)
    return compute_barcode(f, p, homology_max_dim)
