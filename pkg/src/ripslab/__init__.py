"""Vietoris-Rips persistence of finite metric spaces.

The most used entry points are re-exported here; see the submodules for the
rest.
"""
from .barcode_ops import (
    bottleneck,
    kunneth_product,
    max_persistence,
    oracle_circle,
    oracle_linf_sphere,
    oracle_linf_square,
    oracle_sphere_fundamental,
    wedge_sum,
)
from .complexes import Filtration, Simplex, cech_linf_filtration, check_cech_vr, vr_filtration
from .metric_spaces import (
    DistanceMatrix,
    linf_distortion,
    linf_product,
    metric_glue,
    perturb,
    sample_circle,
    sample_linf_sphere,
    sample_sphere,
    validate,
)
from .persistence import Barcode, Interval, compute_barcode, reduced_barcode, vr_barcode

__all__ = [
    "Barcode", "DistanceMatrix", "Filtration", "Interval", "Simplex",
    "bottleneck", "cech_linf_filtration", "check_cech_vr", "compute_barcode",
    "kunneth_product", "linf_distortion", "linf_product", "max_persistence",
    "metric_glue", "oracle_circle", "oracle_linf_sphere", "oracle_linf_square",
    "oracle_sphere_fundamental", "perturb", "reduced_barcode", "sample_circle",
    "sample_linf_sphere", "sample_sphere", "validate", "vr_barcode",
    "vr_filtration", "wedge_sum",
]
__version__ = "0.1.0"
