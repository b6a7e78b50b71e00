"""l-infinity geometry over a finite index set: the Kuratowski embedding,
distance to its image, and Katz's geodesic bicombing."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidParameter
from .metric_spaces import as_distance_matrix

TOL = 1e-9


def linf_norm(f) -> float:
    f = np.asarray(f, dtype=float)
    return float(np.abs(f).max()) if f.size else 0.0


def linf_dist(f, g) -> float:
    f, g = np.asarray(f, dtype=float), np.asarray(g, dtype=float)
    if f.shape != g.shape:
        raise DimensionMismatch(f"{f.shape} vs {g.shape}")
    return linf_norm(f - g)


def kuratowski(D) -> np.ndarray:
    """Row ``i`` is the function d(x_i, .); the map is an isometry into l-infinity."""
    return np.array(as_distance_matrix(D).d)


def delta_X(f, K) -> float:
    """l-infinity distance from ``f`` to the nearest Kuratowski row."""
    f = np.asarray(f, dtype=float)
    K = np.asarray(K, dtype=float)
    if K.ndim != 2 or f.shape != (K.shape[1],):
        raise DimensionMismatch(f"f has shape {f.shape}, rows have length {K.shape[-1]}")
    return float(np.abs(K - f[None, :]).max(axis=1).min())


def katz_bicombing(f, g, t: float) -> np.ndarray:
    """Point at time ``t`` on Katz's geodesic from ``f`` to ``g``.

    Every coordinate moves toward its target at the common speed
    ``||f - g||`` and stops on arrival.
    """
    f, g = np.asarray(f, dtype=float), np.asarray(g, dtype=float)
    if f.shape != g.shape:
        raise DimensionMismatch(f"{f.shape} vs {g.shape}")
    if not 0.0 <= t <= 1.0:
        raise InvalidParameter(f"t must lie in [0, 1], got {t}")
    step = t * linf_norm(f - g)
    return np.where(f >= g, np.maximum(f - step, g), np.minimum(f + step, g))


@dataclass
class KatzReport:
    endpoints: bool
    geodesic: bool
    lipschitz_first: bool
    lipschitz_second: bool
    consistency: bool
    ball_convexity: bool
    # conical would need the sharper constant 1 in the first argument; not guaranteed
    conical_first_arg: bool

    @property
    def all_six(self) -> bool:
        return all((self.endpoints, self.geodesic, self.lipschitz_first,
                    self.lipschitz_second, self.consistency, self.ball_convexity))

    def to_dict(self):
        d = asdict(self)
        d["all_six"] = self.all_six
        return d


def katz_property_check(f, g, h, s: float, t: float, lam: float = 0.5, r: float = None,
                        tol: float = TOL) -> KatzReport:
    """Numerically evaluate the six bicombing properties at one sample.

    ``lam`` is the reparametrisation used for consistency and ``r`` the
    intermediate time for ball convexity (defaults to the midpoint of [s, t]).
    """
    if not 0.0 <= s <= t <= 1.0:
        raise InvalidParameter("need 0 <= s <= t <= 1")
    f, g, h = (np.asarray(v, dtype=float) for v in (f, g, h))
    r = 0.5 * (s + t) if r is None else r
    gk = katz_bicombing
    fg = linf_dist(f, g)
    fh = linf_dist(f, h)
    gh = linf_dist(g, h)

    endpoints = bool(np.allclose(gk(f, g, 0.0), f, rtol=0, atol=tol)
                     and np.allclose(gk(f, g, 1.0), g, rtol=0, atol=tol))
    geodesic = abs(linf_dist(gk(f, g, s), gk(f, g, t)) - (t - s) * fg) <= tol
    first = linf_dist(gk(f, g, t), gk(h, g, t))
    lipschitz_first = first <= 2 * fh + tol
    conical_first = first <= (1 - t) * fh + tol
    lipschitz_second = linf_dist(gk(f, g, t), gk(f, h, t)) <= gh + tol
    phi, psi = gk(f, g, s), gk(f, g, t)
    consistency = linf_dist(gk(phi, psi, lam), gk(f, g, (1 - lam) * s + lam * t)) <= tol
    ball_convexity = linf_dist(gk(f, g, r), h) <= max(linf_dist(phi, h), linf_dist(psi, h)) + tol
    return KatzReport(endpoints, bool(geodesic), bool(lipschitz_first), bool(lipschitz_second),
                      bool(consistency), bool(ball_convexity), bool(conical_first))


def is_conical_at(f, f2, g, g2, t: float, tol: float = TOL) -> bool:
    """Whether ||gk(f,g,t) - gk(f',g',t)|| <= (1-t)||f-f'|| + t||g-g'|| holds here."""
    lhs = linf_dist(katz_bicombing(f, g, t), katz_bicombing(f2, g2, t))
    rhs = (1 - t) * linf_dist(f, f2) + t * linf_dist(g, g2)
    return lhs <= rhs + tol


def is_reversible_at(f, g, t: float, tol: float = TOL) -> bool:
    """Whether gk(f,g,t) == gk(g,f,1-t) holds here."""
    return linf_dist(katz_bicombing(f, g, t), katz_bicombing(g, f, 1 - t)) <= tol
