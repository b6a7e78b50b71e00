"""Seeded property suites, shared by the ``suite`` CLI subcommand and the
acceptance tests."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .barcode_ops import bottleneck, kunneth_product, oracle_circle, wedge_sum
from .complexes import check_cech_vr
from .invariants import sfillrad
from .linf_lab import is_conical_at, is_reversible_at, katz_bicombing, katz_property_check
from .metric_spaces import (
    linf_distortion,
    linf_product,
    metric_glue,
    perturb,
    random_space,
    sample_circle,
    sample_linf_sphere,
)
from .persistence import vr_barcode

SUITES = ("cech-vr", "katz", "kunneth", "wedge", "oracle-circle", "stability")


@dataclass
class SuiteResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "details": self.details,
                "seconds": self.seconds}


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def cech_vr_suite(trials: int = 100, seed: int = 0, max_points: int = 10, max_dim: int = 3,
                  circle_points: int = 16) -> SuiteResult:
    """Cech (scale 2) == Vietoris-Rips for random point sets in R^3_inf and the l-inf circle."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        n = int(rng.integers(1, max_points + 1))
        x = rng.uniform(-1, 1, size=(n, 3))
        rep = check_cech_vr(x, max_dim)
        if not rep.ok:
            failures.append({"trial": trial, "mismatch": rep.first_mismatch})
    circle = sample_linf_sphere(circle_points, 2)
    circle_rep = check_cech_vr(circle.coords, max_dim)
    return SuiteResult("cech-vr", not failures and circle_rep.ok,
                       {"trials": trials, "failures": failures, "linf_circle_ok": circle_rep.ok})


def katz_counterexamples() -> dict:
    f = np.array([0.0, 0.0])
    g = np.array([4.0, 5.0])
    g2 = np.array([1.0, 5.0])
    # conical fails for t in [max(4/5, 1/5), 1)
    conical_fails = all(not is_conical_at(f, f, g, g2, t) for t in (0.8, 0.85, 0.9, 0.99))
    # reversible fails for t in (0, min(4/5, 1/5)] (and elsewhere too)
    reversible_fails = all(not is_reversible_at(f, g, t) for t in (0.05, 0.1, 0.2))
    return {
        "conical_fails": conical_fails,
        "reversible_fails": reversible_fails,
        "gamma(0,(4,5),0.2)": katz_bicombing(f, g, 0.2).tolist(),
        "gamma((4,5),0,0.8)": katz_bicombing(g, f, 0.8).tolist(),
    }


@_timed
def katz_suite(trials: int = 1000, seed: int = 0, dim: int = 5) -> SuiteResult:
    """Six bicombing properties on random triples, plus the two negative examples."""
    rng = np.random.default_rng(seed)
    failures = []
    conical_violations = 0
    for trial in range(trials):
        f, g, h = rng.normal(scale=3.0, size=(3, dim))
        s, t = np.sort(rng.uniform(0, 1, size=2))
        lam = float(rng.uniform(0, 1))
        r = float(rng.uniform(s, t))
        rep = katz_property_check(f, g, h, float(s), float(t), lam=lam, r=r)
        if not rep.all_six:
            failures.append({"trial": trial, **rep.to_dict()})
        conical_violations += not rep.conical_first_arg
    cx = katz_counterexamples()
    passed = not failures and cx["conical_fails"] and cx["reversible_fails"]
    return SuiteResult("katz", passed, {"trials": trials, "failures": failures[:5],
                                        "conical_first_arg_violations": conical_violations,
                                        "counterexamples": cx})


def _random_small_space(rng, lo, hi):
    n = int(rng.integers(lo, hi + 1))
    return random_space(n, int(rng.integers(0, 2**31)))


@_timed
def kunneth_suite(trials: int = 50, seed: int = 0, max_points: int = 6, homology_max_dim: int = 2,
                  field_char: int = 2) -> SuiteResult:
    """barcode(A x B) == kunneth_product(barcode(A), barcode(B)) in dims 0..homology_max_dim."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        a = _random_small_space(rng, 1, max_points)
        b = _random_small_space(rng, 1, max_points)
        ba = vr_barcode(a, homology_max_dim, field_char)
        bb = vr_barcode(b, homology_max_dim, field_char)
        direct = vr_barcode(linf_product(a, b), homology_max_dim, field_char)
        formula = kunneth_product(ba, bb).restrict(homology_max_dim)
        if direct != formula:
            failures.append({"trial": trial, "n_a": a.n, "n_b": b.n})
    return SuiteResult("kunneth", not failures, {"trials": trials, "failures": failures,
                                                 "homology_max_dim": homology_max_dim})


@_timed
def wedge_suite(trials: int = 50, seed: int = 0, max_points: int = 7, homology_max_dim: int = 3,
                field_char: int = 2) -> SuiteResult:
    """barcode(A glued to B) == wedge_sum(barcode(A), barcode(B))."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        a = _random_small_space(rng, 1, max_points)
        b = _random_small_space(rng, 1, max_points)
        p, q = int(rng.integers(0, a.n)), int(rng.integers(0, b.n))
        ba = vr_barcode(a, homology_max_dim, field_char)
        bb = vr_barcode(b, homology_max_dim, field_char)
        direct = vr_barcode(metric_glue(a, b, p, q), homology_max_dim, field_char)
        if direct != wedge_sum(ba, bb):
            failures.append({"trial": trial, "n_a": a.n, "n_b": b.n, "p": p, "q": q})
    return SuiteResult("wedge", not failures, {"trials": trials, "failures": failures,
                                               "homology_max_dim": homology_max_dim})


@_timed
def oracle_circle_suite(n: int = 64, max_dim: int = 2) -> SuiteResult:
    """Equally spaced circle sample vs the closed-form dgm_1, within 2 pi / n."""
    D = sample_circle(n, 1.0)
    b = vr_barcode(D, max_dim - 1)
    dist, _ = bottleneck(b.pairs(1), oracle_circle(1.0, 0).pairs(1))
    tol = 2 * math.pi / n
    return SuiteResult("oracle-circle", dist <= tol, {"n": n, "bottleneck": dist, "tolerance": tol,
                                                      "dgm1": [list(x) for x in b.pairs(1)]})


@_timed
def stability_suite(trials: int = 20, seed: int = 0, eps: float = 0.01, n_points: int = 10,
                    homology_max_dim: int = 2) -> SuiteResult:
    """Bottleneck and sFillRad move by at most the l-inf distortion under perturbation."""
    rng = np.random.default_rng(seed)
    worst_db = 0.0
    worst_fill = 0.0
    failures = []
    for trial in range(trials):
        # offset gives triangle slack >= 0.05 > 3 * eps
        X = random_space(n_points, int(rng.integers(0, 2**31)), offset=0.05)
        Y = perturb(X, eps, int(rng.integers(0, 2**31)))
        dist = linf_distortion(X, Y)
        bx = vr_barcode(X, homology_max_dim)
        by = vr_barcode(Y, homology_max_dim)
        for k in range(homology_max_dim + 1):
            db, _ = bottleneck(bx.pairs(k), by.pairs(k))
            worst_db = max(worst_db, db)
            if db > eps or db > dist:
                failures.append({"trial": trial, "dim": k, "bottleneck": db, "distortion": dist})
            if k >= 1:
                gap = abs(sfillrad(bx, k) - sfillrad(by, k))
                worst_fill = max(worst_fill, gap)
                if gap > eps:
                    failures.append({"trial": trial, "dim": k, "sfillrad_gap": gap})
    return SuiteResult("stability", not failures, {"trials": trials, "eps": eps,
                                                   "worst_bottleneck": worst_db,
                                                   "worst_sfillrad_gap": worst_fill,
                                                   "failures": failures})


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    if name == "cech-vr":
        return cech_vr_suite(seed=seed)
    if name == "katz":
        return katz_suite(seed=seed)
    if name == "kunneth":
        return kunneth_suite(seed=seed)
    if name == "wedge":
        return wedge_suite(seed=seed)
    if name == "oracle-circle":
        return oracle_circle_suite()
    if name == "stability":
        return stability_suite(seed=seed)
    raise ValueError(f"unknown suite {name!r}")
