"""Barcode calculus: bottleneck distance, Kunneth products, wedge sums, and
closed-form barcodes of a few model spaces."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import FieldMismatch, InvalidParameter
from .persistence import INF, Barcode, Interval, reduced_barcode


@dataclass
class Matching:
    pairs: List[Tuple[int, int]] = field(default_factory=list)
    unmatched1: List[int] = field(default_factory=list)
    unmatched2: List[int] = field(default_factory=list)
    cost: float = 0.0

    def to_dict(self):
        return {"pairs": [list(p) for p in self.pairs], "unmatched1": list(self.unmatched1),
                "unmatched2": list(self.unmatched2), "cost": self.cost}


def _as_pairs(bars) -> List[Tuple[float, float]]:
    out = []
    for bar in bars:
        if isinstance(bar, Interval):
            out.append((bar.birth, bar.death))
        else:
            b, d = bar
            out.append((float(b), float(d)))
    return out


def pair_cost(i, j) -> float:
    """l-infinity distance between two bars; essential bars only match essential ones."""
    (a, b), (c, d) = i, j
    ie, je = math.isinf(b), math.isinf(d)
    if ie and je:
        return abs(a - c)
    if ie or je:
        return INF
    return max(abs(a - c), abs(b - d))


def matching_cost(m1, m2, pairs) -> float:
    """Cost of a partial matching given as index pairs, straight from the definition."""
    m1, m2 = _as_pairs(m1), _as_pairs(m2)
    used1 = {i for i, _ in pairs}
    used2 = {j for _, j in pairs}
    cost = 0.0
    for i, j in pairs:
        cost = max(cost, pair_cost(m1[i], m2[j]))
    for idx, (a, b) in enumerate(m1):
        if idx not in used1:
            cost = max(cost, (b - a) / 2)
    for idx, (a, b) in enumerate(m2):
        if idx not in used2:
            cost = max(cost, (b - a) / 2)
    return cost


def _finite_feasible(f1, f2, eps):
    """Perfect matching of the diagonal-augmented bipartite graph at threshold eps."""
    m1, m2 = len(f1), len(f2)
    size = m1 + m2
    if size == 0:
        return True, []
    rows, cols = [], []
    for i, I in enumerate(f1):
        for j, J in enumerate(f2):
            if pair_cost(I, J) <= eps:
                rows.append(i)
                cols.append(j)
        if (I[1] - I[0]) / 2 <= eps:
            rows.append(i)
            cols.append(m2 + i)
    for j, J in enumerate(f2):
        if (J[1] - J[0]) / 2 <= eps:
            rows.append(m1 + j)
            cols.append(j)
        for i in range(m1):
            rows.append(m1 + j)
            cols.append(m2 + i)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    match = maximum_bipartite_matching(graph, perm_type="column")
    if (match < 0).any():
        return False, []
    pairs = [(i, int(match[i])) for i in range(m1) if match[i] < m2]
    return True, pairs


def bottleneck(bars1, bars2) -> Tuple[float, Matching]:
    """Exact bottleneck distance between two single-dimension barcodes.

    Finite bars: binary search over the candidate costs with a bipartite
    feasibility test.  Essential bars are matched among themselves in
    sorted birth order; a surplus on either side makes the distance inf.
    """
    m1, m2 = _as_pairs(bars1), _as_pairs(bars2)
    fin1 = [i for i, (_, d) in enumerate(m1) if not math.isinf(d)]
    fin2 = [j for j, (_, d) in enumerate(m2) if not math.isinf(d)]
    ess1 = sorted((i for i, (_, d) in enumerate(m1) if math.isinf(d)), key=lambda i: m1[i][0])
    ess2 = sorted((j for j, (_, d) in enumerate(m2) if math.isinf(d)), key=lambda j: m2[j][0])

    matching = Matching()
    if len(ess1) != len(ess2):
        matching.pairs = list(zip(ess1, ess2))
        matching.unmatched1 = fin1 + ess1[len(ess2):]
        matching.unmatched2 = fin2 + ess2[len(ess1):]
        matching.cost = INF
        return INF, matching
    ess_cost = max((abs(m1[i][0] - m2[j][0]) for i, j in zip(ess1, ess2)), default=0.0)

    f1 = [m1[i] for i in fin1]
    f2 = [m2[j] for j in fin2]
    cand = {0.0}
    cand.update((b - a) / 2 for a, b in f1)
    cand.update((b - a) / 2 for a, b in f2)
    cand.update(pair_cost(I, J) for I in f1 for J in f2)
    cand = sorted(cand)
    lo, hi = 0, len(cand) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        ok, pairs = _finite_feasible(f1, f2, cand[mid])
        if ok:
            best = (mid, pairs)
            hi = mid - 1
        else:
            lo = mid + 1
    fin_cost, fin_pairs = cand[best[0]], best[1]
    pairs = [(fin1[i], fin2[j]) for i, j in fin_pairs] + list(zip(ess1, ess2))
    used1 = {i for i, _ in pairs}
    used2 = {j for _, j in pairs}
    matching.pairs = sorted(pairs)
    matching.unmatched1 = [i for i in range(len(m1)) if i not in used1]
    matching.unmatched2 = [j for j in range(len(m2)) if j not in used2]
    value = max(fin_cost, ess_cost)
    matching.cost = value
    return value, matching


def bottleneck_barcodes(b1: Barcode, b2: Barcode, dim: int) -> Tuple[float, Matching]:
    if b1.field_char != b2.field_char:
        raise FieldMismatch(f"F{b1.field_char} vs F{b2.field_char}")
    return bottleneck(b1.pairs(dim), b2.pairs(dim))


def intersect(i, j):
    """(a,b] cap (c,d] = (max(a,c), min(b,d)], or None when empty."""
    (a, b), (c, d) = i, j
    lo, hi = max(a, c), min(b, d)
    return (lo, hi) if lo < hi else None


def kunneth_product(b1: Barcode, b2: Barcode) -> Barcode:
    """Barcode of the l-infinity product from the factors' barcodes:
    all nonempty pairwise intersections, dimensions adding."""
    if b1.field_char != b2.field_char:
        raise FieldMismatch(f"F{b1.field_char} vs F{b2.field_char}")
    dims = {}
    for i in b1.dims:
        for j in b2.dims:
            bars = dims.setdefault(i + j, [])
            for I in b1.pairs(i):
                for J in b2.pairs(j):
                    cap = intersect(I, J)
                    if cap is not None:
                        bars.append(cap)
    return Barcode(dims, b1.field_char)


def wedge_sum(b1: Barcode, b2: Barcode) -> Barcode:
    """Barcode of a metric gluing: reduced barcodes united, one (0, inf) restored."""
    if b1.field_char != b2.field_char:
        raise FieldMismatch(f"F{b1.field_char} vs F{b2.field_char}")
    r1, r2 = reduced_barcode(b1), reduced_barcode(b2)
    dims = {}
    for r in (r1, r2):
        for k in r.dims:
            dims.setdefault(k, []).extend(r.pairs(k))
    dims.setdefault(0, []).append((0.0, INF))
    return Barcode(dims, b1.field_char)


def point_barcode(field_char: int = 2) -> Barcode:
    return Barcode({0: [(0.0, INF)]}, field_char)


# --- closed forms ------------------------------------------------------------

def oracle_circle(radius: float = 1.0, l_max: int = 0, field_char: int = 2) -> Barcode:
    """Geodesic circle of radius ``radius``: one bar
    (2 pi r l/(2l+1), 2 pi r (l+1)/(2l+3)] in each odd dimension 2l+1."""
    if not radius > 0:
        raise InvalidParameter("radius must be positive")
    if l_max < 0:
        raise InvalidParameter("l_max must be >= 0")

    def scale(num, den):
        return 2 * math.pi * radius * num / den

    dims = {0: [(0.0, INF)]}
    for l in range(l_max + 1):
        dims[2 * l + 1] = [(scale(l, 2 * l + 1), scale(l + 1, 2 * l + 3))]
    return Barcode(dims, field_char)


def oracle_linf_sphere(n: int, field_char: int = 2) -> Barcode:
    """Round unit sphere in R^n under the l-infinity norm: one bar (0, 2/sqrt(n)] in dimension n-1."""
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    return Barcode({0: [(0.0, INF)], n - 1: [(0.0, 2 / math.sqrt(n))]}, field_char)


def oracle_linf_square(n: int, field_char: int = 2) -> Barcode:
    """Boundary of the l-infinity cube [-1, 1]^n: one bar (0, 2] in dimension n-1."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    if n == 1:
        return Barcode({0: [(0.0, INF), (0.0, 2.0)]}, field_char)
    return Barcode({0: [(0.0, INF)], n - 1: [(0.0, 2.0)]}, field_char)


def oracle_sphere_fundamental(n: int) -> Interval:
    """The bar (0, arccos(-1/(n+1))] of the geodesic n-sphere in dimension n."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    return Interval(0.0, math.acos(-1.0 / (n + 1)), n)


def max_persistence(b: Barcode, k: int) -> float:
    """Longest bar length in dimension k (0 if none, inf if an essential bar exists)."""
    return max((d - a for a, d in b.pairs(k)), default=0.0)
