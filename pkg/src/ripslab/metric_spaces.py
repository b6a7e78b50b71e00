"""Finite metric spaces: validation, samplers, products, gluings, perturbations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    AsymmetricEntry,
    IndexOutOfRange,
    InvalidParameter,
    NegativeEntry,
    NonzeroDiagonal,
    NotSquare,
    SizeMismatch,
    SizeOverflow,
    SlackTooSmall,
    TriangleViolation,
)

TOL = 1e-9
MAX_PRODUCT_POINTS = 4096

SPACE_KINDS = (
    "circle-geodesic",
    "sphere-geodesic",
    "circle-linf",
    "sphere-linf",
    "box-boundary-linf",
    "tree",
    "explicit",
)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """A validated finite metric space.

    Build instances through :func:`validate` or one of the samplers; the
    constructor itself does not check the metric axioms.
    """

    d: np.ndarray
    labels: Optional[tuple] = None
    coords: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        d = np.array(self.d, dtype=float)
        d.setflags(write=False)
        object.__setattr__(self, "d", d)
        if self.coords is not None:
            c = np.array(self.coords, dtype=float)
            if c.ndim == 1:
                c = c[:, None]
            c.setflags(write=False)
            object.__setattr__(self, "coords", c)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"DistanceMatrix(n={self.n})"


def _first_triangle_violation(d: np.ndarray, tol: float):
    n = d.shape[0]
    for i in range(n):
        # through[j, k] = d[i, j] + d[j, k]
        through = d[i, :, None] + d
        bad = d[i, None, :] > through + tol
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return i, int(j), int(k)
    return None


def validate(raw, labels=None, coords=None, tol: float = TOL) -> DistanceMatrix:
    """Check the metric axioms on ``raw`` and return a :class:`DistanceMatrix`.

    Symmetry and the triangle inequality are checked up to ``tol`` (absolute).
    The returned matrix is exactly symmetric with a zero diagonal.
    """
    d = np.asarray(raw, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {d.shape}")
    n = d.shape[0]
    bad = ~np.isfinite(d) | (d < 0)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NegativeEntry(int(i), int(j))
    diag = np.abs(np.diag(d)) > tol
    if diag.any():
        raise NonzeroDiagonal(int(np.argmax(diag)))
    asym = np.abs(d - d.T) > tol
    if asym.any():
        i, j = np.argwhere(asym)[0]
        raise AsymmetricEntry(int(i), int(j))
    hit = _first_triangle_violation(d, tol)
    if hit is not None:
        raise TriangleViolation(*hit)
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    if labels is not None and len(labels) != n:
        raise InvalidParameter("labels length does not match matrix size")
    if coords is not None and len(coords) != n:
        raise InvalidParameter("coords length does not match matrix size")
    return DistanceMatrix(d, labels=labels, coords=coords)


def _check_count(count):
    if int(count) != count or count < 1:
        raise InvalidParameter(f"count must be a positive integer, got {count!r}")


def _check_dim(dim):
    if int(dim) != dim or dim < 1:
        raise InvalidParameter(f"dimension must be a positive integer, got {dim!r}")


def linf_pairwise(coords: np.ndarray) -> np.ndarray:
    c = np.asarray(coords, dtype=float)
    return np.abs(c[:, None, :] - c[None, :, :]).max(axis=2)


def sample_circle(count: int, radius: float = 1.0) -> DistanceMatrix:
    """``count`` equally spaced points on the circle of radius ``radius``
    with the geodesic (arc-length) metric."""
    _check_count(count)
    if not radius > 0:
        raise InvalidParameter("radius must be positive")
    idx = np.arange(count)
    gap = np.abs(idx[:, None] - idx[None, :])
    steps = np.minimum(gap, count - gap)
    d = radius * (2 * np.pi * steps / count)
    return validate(d)


def _unit_gaussians(count, ambient, seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((count, ambient))
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    # a zero draw has probability zero, but keep the sampler total
    norms[norms == 0] = 1.0
    return x / norms


def sphere_geodesic_distances(x: np.ndarray) -> np.ndarray:
    g = np.clip(x @ x.T, -1.0, 1.0)
    d = np.arccos(g)
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return d


def sample_sphere(count: int, dim: int, seed: int = 0) -> DistanceMatrix:
    """Seeded uniform sample of the unit ``dim``-sphere (in R^(dim+1)), geodesic metric in radians."""
    _check_count(count)
    _check_dim(dim)
    x = _unit_gaussians(count, dim + 1, seed)
    return validate(sphere_geodesic_distances(x), coords=x)


def sample_linf_sphere(count: int, dim: int, seed: int = 0) -> DistanceMatrix:
    """Points of the round unit sphere in R^dim, measured with the l-infinity norm.

    For ``dim == 2`` the points are equally spaced on the unit circle; for
    higher ``dim`` they are seeded uniform samples.  Coordinates are kept.
    """
    _check_count(count)
    _check_dim(dim)
    if dim == 1:
        x = np.array([[1.0], [-1.0]])[: min(count, 2)]
    elif dim == 2:
        theta = 2 * np.pi * np.arange(count) / count
        x = np.column_stack([np.cos(theta), np.sin(theta)])
    else:
        x = _unit_gaussians(count, dim, seed)
    return validate(linf_pairwise(x), coords=x)


def sample_box_boundary(count: int, dim: int, seed: int = 0) -> DistanceMatrix:
    """Points on the boundary of the cube [-1, 1]^dim under the l-infinity norm.

    ``dim == 1`` gives the two points {-1, 1}; ``dim == 2`` walks the square's
    perimeter at equal arc-length steps; higher ``dim`` samples faces uniformly.
    """
    _check_count(count)
    _check_dim(dim)
    if dim == 1:
        x = np.array([[-1.0], [1.0]])[: min(count, 2)]
    elif dim == 2:
        s = 8.0 * np.arange(count) / count
        side = np.minimum((s // 2).astype(int), 3)
        u = s - 2.0 * side - 1.0
        x = np.empty((count, 2))
        starts = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
        dirs = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
        x = starts[side] + dirs[side] * (u + 1.0)[:, None]
    else:
        rng = np.random.default_rng(seed)
        x = rng.uniform(-1.0, 1.0, size=(count, dim))
        face = rng.integers(0, dim, size=count)
        sign = rng.choice([-1.0, 1.0], size=count)
        x[np.arange(count), face] = sign
    return validate(linf_pairwise(x), coords=x)


def sample_tree(count: int, seed: int = 0) -> DistanceMatrix:
    """Path metric of a seeded random weighted tree on ``count`` vertices."""
    _check_count(count)
    rng = np.random.default_rng(seed)
    d = np.zeros((count, count))
    for i in range(1, count):
        parent = int(rng.integers(0, i))
        w = float(rng.uniform(0.5, 1.5))
        d[i, :i] = d[parent, :i] + w
        d[i, parent] = w
        d[:i, i] = d[i, :i]
    return validate(d)


def random_space(n: int, seed: int, ambient_dim: int = 2, offset: float = 0.0) -> DistanceMatrix:
    """Euclidean distances of ``n`` seeded uniform points in the unit cube,
    plus ``offset`` on every off-diagonal entry.

    A positive offset is still a metric and gives every triple a triangle
    slack of at least ``offset``.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 1.0, size=(n, ambient_dim))
    d = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2))
    d = d + offset * (1.0 - np.eye(n))
    return validate(d)


def from_spec(spec: dict) -> DistanceMatrix:
    """Build a space from a SpaceSpec mapping (see README for the keys)."""
    kind = spec.get("kind")
    count = spec.get("count", 1)
    seed = spec.get("seed", 0)
    dim = spec.get("dim", 2)
    if kind == "circle-geodesic":
        return sample_circle(count, spec.get("radius", 1.0))
    if kind == "sphere-geodesic":
        return sample_sphere(count, dim, seed)
    if kind == "circle-linf":
        return sample_linf_sphere(count, 2, seed)
    if kind == "sphere-linf":
        return sample_linf_sphere(count, dim, seed)
    if kind == "box-boundary-linf":
        return sample_box_boundary(count, dim, seed)
    if kind == "tree":
        return sample_tree(count, seed)
    if kind == "explicit":
        if "d" not in spec:
            raise InvalidParameter("explicit space needs a 'd' matrix")
        return validate(spec["d"], labels=spec.get("labels"), coords=spec.get("coords"))
    raise InvalidParameter(f"unknown space kind {kind!r}; expected one of {SPACE_KINDS}")


def linf_product(a: DistanceMatrix, b: DistanceMatrix, max_points: int = MAX_PRODUCT_POINTS) -> DistanceMatrix:
    """l-infinity product; point ``(i, j)`` gets index ``i * b.n + j``."""
    na, nb = a.n, b.n
    if na * nb > max_points:
        raise SizeOverflow(f"product has {na * nb} points, cap is {max_points}")
    d = np.maximum(a.d[:, None, :, None], b.d[None, :, None, :]).reshape(na * nb, na * nb)
    la = a.labels or tuple(str(i) for i in range(na))
    lb = b.labels or tuple(str(j) for j in range(nb))
    labels = [f"({x},{y})" for x in la for y in lb]
    return DistanceMatrix(d, labels=labels)


def metric_glue(a: DistanceMatrix, b: DistanceMatrix, p: int, q: int) -> DistanceMatrix:
    """Wedge of ``a`` and ``b`` identifying ``a``'s point ``p`` with ``b``'s point ``q``.

    The first ``a.n`` points are ``a``'s (unchanged); ``b``'s points other
    than ``q`` follow in their original order.
    """
    if not 0 <= p < a.n:
        raise IndexOutOfRange(f"p={p} not in [0, {a.n})")
    if not 0 <= q < b.n:
        raise IndexOutOfRange(f"q={q} not in [0, {b.n})")
    keep = [j for j in range(b.n) if j != q]
    na, m = a.n, len(keep)
    d = np.zeros((na + m, na + m))
    d[:na, :na] = a.d
    bk = b.d[np.ix_(keep, keep)]
    d[na:, na:] = bk
    cross = a.d[:, p][:, None] + b.d[q, keep][None, :]
    d[:na, na:] = cross
    d[na:, :na] = cross.T
    return DistanceMatrix(d)


def min_triangle_slack(a: DistanceMatrix) -> float:
    """Smallest d(i,j) + d(j,k) - d(i,k) over distinct triples (inf if n < 3)."""
    d = a.d
    n = a.n
    if n < 3:
        return float("inf")
    best = np.inf
    for j in range(n):
        s = d[:, j, None] + d[j, None, :] - d
        s[j, :] = np.inf
        s[:, j] = np.inf
        np.fill_diagonal(s, np.inf)
        best = min(best, float(s.min()))
    return best


def perturb(a: DistanceMatrix, eps: float, seed: int = 0) -> DistanceMatrix:
    """Add seeded symmetric noise in [-eps, eps] to every off-diagonal entry.

    Refuses (``SlackTooSmall``) when the noise could break the triangle
    inequality or make an entry negative.
    """
    if eps < 0:
        raise InvalidParameter("eps must be non-negative")
    if eps == 0:
        return a
    off = a.d[~np.eye(a.n, dtype=bool)]
    limit = min(min_triangle_slack(a) / 3.0, float(off.min()) if off.size else np.inf)
    if eps > limit:
        raise SlackTooSmall(limit)
    rng = np.random.default_rng(seed)
    noise = np.triu(rng.uniform(-eps, eps, size=(a.n, a.n)), k=1)
    noise = noise + noise.T
    return validate(a.d + noise, labels=a.labels, coords=None)


def linf_distortion(a: DistanceMatrix, b: DistanceMatrix) -> float:
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} points vs {b.n} points")
    return float(np.abs(a.d - b.d).max())


def diameter(a: DistanceMatrix) -> float:
    return float(a.d.max()) if a.n > 1 else 0.0


def as_distance_matrix(x) -> DistanceMatrix:
    if isinstance(x, DistanceMatrix):
        return x
    return validate(x)
