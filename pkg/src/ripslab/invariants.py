"""Metric invariants (diameter, radius, k-spread, hyperbolicity, filling-radius
estimators) and the bounds that tie them to Vietoris-Rips bar lengths."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import _kernels
from .barcode_ops import max_persistence
from .errors import BudgetExceeded, DomainError, InvalidParameter
from .metric_spaces import as_distance_matrix
from .persistence import Barcode

SUBSET_BUDGET = 1 << 20
BOUND_TOL = 1e-9
# rows of (subset x point) examined per vectorised batch
_BATCH = 1 << 16


def diameter(D) -> float:
    D = as_distance_matrix(D)
    return float(D.d.max()) if D.n > 1 else 0.0


def _subset_count(n, k):
    return sum(math.comb(n, s) for s in range(1, k + 1))


def _best_of_size(d, s, best):
    n = d.shape[0]
    win_val, win_set = best
    it = combinations(range(n), s)
    while True:
        chunk = np.fromiter((i for c in _take(it, _BATCH // max(n, 1) + 1) for i in c), dtype=np.int64)
        if chunk.size == 0:
            break
        A = chunk.reshape(-1, s)
        cover = d[:, A].min(axis=2).max(axis=0)
        if s > 1:
            sub = d[A[:, :, None], A[:, None, :]]
            diam = sub.reshape(len(A), -1).max(axis=1)
        else:
            diam = np.zeros(len(A))
        val = np.maximum(diam, cover)
        i = int(np.argmin(val))
        if val[i] < win_val:
            win_val, win_set = float(val[i]), tuple(int(v) for v in A[i])
    return win_val, win_set


def _take(it, k):
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


def spread_k(D, k: int, budget: int = SUBSET_BUDGET) -> Tuple[float, Tuple[int, ...]]:
    """Smallest max(diam A, covering radius of A) over subsets A with |A| <= k.

    Returns the value and a minimising subset.
    """
    D = as_distance_matrix(D)
    if not 1 <= k <= D.n:
        raise InvalidParameter(f"k must be in [1, {D.n}], got {k}")
    if _subset_count(D.n, k) > budget:
        raise BudgetExceeded(f"{_subset_count(D.n, k)} subsets exceed budget {budget}")
    best = (math.inf, ())
    for s in range(1, k + 1):
        best = _best_of_size(D.d, s, best)
    return best


def spread_profile(D, k_max: int, budget: int = SUBSET_BUDGET) -> Dict[int, float]:
    """spread_k for k = 1..k_max in one pass (each subset size scanned once)."""
    D = as_distance_matrix(D)
    if _subset_count(D.n, k_max) > budget:
        raise BudgetExceeded(f"{_subset_count(D.n, k_max)} subsets exceed budget {budget}")
    out = {}
    best = (math.inf, ())
    for s in range(1, k_max + 1):
        best = _best_of_size(D.d, s, best)
        out[s] = best[0]
    return out


def max_affordable_k(n: int, budget: int = SUBSET_BUDGET) -> int:
    k = 0
    while k < n and _subset_count(n, k + 1) <= budget:
        k += 1
    return k


def spread(D, k_budget: Optional[int] = None, budget: int = SUBSET_BUDGET) -> float:
    """min over k <= k_budget of spread_k.  Exact for k_budget = n (the default)."""
    D = as_distance_matrix(D)
    k_budget = D.n if k_budget is None else k_budget
    if not 1 <= k_budget <= D.n:
        raise InvalidParameter(f"k_budget must be in [1, {D.n}]")
    return spread_k(D, k_budget, budget)[0]


def radius(D) -> float:
    D = as_distance_matrix(D)
    return float(D.d.max(axis=1).min())


def hyperbolicity(D) -> float:
    D = as_distance_matrix(D)
    return max(0.0, _kernels.hyperbolicity(D.d))


def jung_psi(n: int, D: float) -> float:
    """Radius of the covering ball for a subset of the n-sphere of diameter D.

    Evaluated as ``atan2(sqrt(1 - c), sqrt(c))`` with
    ``c = (1 + (n+1) cos D)/(n+2)``, both factors rewritten with half-angle
    sines so the endpoints come out exact (0 at D=0, pi/2 at the top).
    """
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    top = math.acos(-1.0 / (n + 1))
    if not 0.0 <= D <= top:
        raise DomainError(f"D={D} outside [0, {top}]")
    # (n+2)(1-c) = 2(n+1) sin^2(D/2);  (n+2)c = -2(n+1) sin((D+top)/2) sin((D-top)/2)
    one_minus = 2 * (n + 1) * math.sin(D / 2) ** 2
    c = -2 * (n + 1) * math.sin((D + top) / 2) * math.sin((D - top) / 2)
    return math.atan2(math.sqrt(one_minus), math.sqrt(max(c, 0.0)))


def sfillrad(b: Barcode, k: int) -> float:
    """Half the longest bar in dimension k."""
    return 0.5 * max_persistence(b, k)


def fillrad_estimate(b: Barcode, k: int, birth_tol: float = 0.0) -> float:
    """Half the longest dimension-k bar born at (or within ``birth_tol`` of) 0."""
    return 0.5 * max((d - a for a, d in b.pairs(k) if a <= birth_tol), default=0.0)


@dataclass
class Bound:
    name: str
    satisfied: bool
    lhs: float
    rhs: float
    asserted: bool

    def to_dict(self):
        return asdict(self)


@dataclass
class InvariantReport:
    diameter: float
    radius: float
    spread_k: Dict[int, float]
    spread: float
    spread_exact: bool
    hyperbolicity: float
    sfillrad: Dict[int, float]
    fillrad_estimate: Dict[int, float]
    bounds: List[Bound] = field(default_factory=list)

    @property
    def asserted_ok(self) -> bool:
        return all(b.satisfied for b in self.bounds if b.asserted)

    def to_dict(self):
        d = asdict(self)
        d["spread_k"] = {str(k): v for k, v in self.spread_k.items()}
        d["sfillrad"] = {str(k): v for k, v in self.sfillrad.items()}
        d["fillrad_estimate"] = {str(k): v for k, v in self.fillrad_estimate.items()}
        return d


def bounds_report(D, b: Barcode, k_budget: Optional[int] = None, budget: int = SUBSET_BUDGET,
                  birth_tol: float = 0.0, tol: float = BOUND_TOL) -> InvariantReport:
    """Evaluate the bar-length bounds for every bar of dimension >= 1.

    Asserted (hold for every compact space): length <= spread, and
    death <= spread_1 for bars born after 0.  Reported only (they need a
    geodesic space): length <= 2/3 diam, death <= 2 hyp.  Essential bars
    (left by a truncated filtration) are skipped.
    """
    D = as_distance_matrix(D)
    k_max = D.n if k_budget is None else k_budget
    k_max = min(k_max, max_affordable_k(D.n, budget))
    profile = spread_profile(D, k_max, budget)
    spr = min(profile.values())
    diam = diameter(D)
    hyp = hyperbolicity(D)
    rad = profile[1]
    finite = [(k, a, d) for k in b.dims if k >= 1 for a, d in b.pairs(k) if not math.isinf(d)]
    max_len = max((d - a for _, a, d in finite), default=0.0)
    max_late_death = max((d for _, a, d in finite if a > 0), default=0.0)
    max_death = max((d for _, _, d in finite), default=0.0)
    bounds = [
        Bound("length <= spread", max_len <= spr + tol, max_len, spr, True),
        Bound("death <= spread_1 (birth > 0)", max_late_death <= rad + tol, max_late_death, rad, True),
        Bound("length <= 2/3 diam (geodesic only)", max_len <= 2 * diam / 3 + tol, max_len, 2 * diam / 3, False),
        Bound("death <= 2 hyp (geodesic only)", max_death <= 2 * hyp + tol, max_death, 2 * hyp, False),
    ]
    return InvariantReport(
        diameter=diam,
        radius=rad,
        spread_k=profile,
        spread=spr,
        spread_exact=k_max == D.n,
        hyperbolicity=hyp,
        sfillrad={k: sfillrad(b, k) for k in b.dims},
        fillrad_estimate={k: fillrad_estimate(b, k, birth_tol) for k in b.dims},
        bounds=bounds,
    )
