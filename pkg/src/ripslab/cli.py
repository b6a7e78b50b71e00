"""Command-line interface.

Exit status: 0 success, 1 domain/IO error, 2 usage error, 3 failed check
(``--assert`` on ``invariants``, or a failing ``suite``).
"""
import functools
import json
import sys

import click
import numpy as np

from . import io as rio
from .barcode_ops import (
    bottleneck_barcodes,
    kunneth_product,
    oracle_circle,
    oracle_linf_sphere,
    oracle_linf_square,
    oracle_sphere_fundamental,
    wedge_sum,
)
from .complexes import check_cech_vr, default_r_max, vr_filtration
from .errors import RipsLabError
from .invariants import bounds_report
from .metric_spaces import SPACE_KINDS, from_spec
from .persistence import Barcode, compute_barcode
from .suites import SUITES, katz_suite, run_suite

EXIT_DOMAIN = 1
EXIT_ASSERT = 3


def _emit(payload, out):
    text = payload if isinstance(payload, str) else rio.dumps(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (RipsLabError, OSError, json.JSONDecodeError) as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_DOMAIN)
    return wrapper


field_opt = click.option("--field", "field_char", default=2, show_default=True, help="Prime coefficient field.")
max_dim_opt = click.option("--max-dim", default=1, show_default=True, help="Highest homology dimension.")
r_max_opt = click.option("--r-max", type=float, default=None, help="Filtration cutoff (default: diameter + 1 ulp).")
out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout).")


@click.group()
def main():
    """Vietoris-Rips barcodes of finite metric spaces and their calculus."""


@main.command()
@click.option("--kind", type=click.Choice(SPACE_KINDS), default=None)
@click.option("--count", type=int, default=8, show_default=True)
@click.option("--radius", type=float, default=1.0, show_default=True)
@click.option("--dim", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="SpaceSpec JSON file; overrides the other options.")
@out_opt
@domain_errors
def sample(kind, count, radius, dim, seed, spec_path, out):
    """Sample a metric space; writes CSV when --out ends in .csv, JSON otherwise."""
    if spec_path:
        with open(spec_path) as fh:
            spec = json.load(fh)
    elif kind is None:
        raise click.UsageError("give --kind or --spec")
    else:
        spec = {"kind": kind, "count": count, "radius": radius, "dim": dim, "seed": seed}
    D = from_spec(spec)
    if out and out.lower().endswith(".csv"):
        _emit(rio.matrix_to_csv(D), out)
    else:
        _emit(rio.matrix_to_dict(D), out)


def _barcode_for(path, field_char, max_dim, r_max):
    D = rio.read_matrix(path)
    full = default_r_max(D)
    r = full if r_max is None else r_max
    f = vr_filtration(D, max_dim + 1, r)
    b = compute_barcode(f, field_char, max_dim)
    truncated = r_max is not None and r_max <= (float(D.d.max()) if D.n > 1 else 0.0)
    return D, b, truncated, r


@main.command()
@click.argument("matrix", type=click.Path(exists=True, dir_okay=False))
@field_opt
@max_dim_opt
@r_max_opt
@out_opt
@click.option("--svg", type=click.Path(dir_okay=False), default=None, help="Also write an SVG rendering.")
@domain_errors
def barcode(matrix, field_char, max_dim, r_max, out, svg):
    """Vietoris-Rips barcode of a distance matrix (CSV or JSON)."""
    _, b, truncated, r = _barcode_for(matrix, field_char, max_dim, r_max)
    payload = rio.barcode_to_dict(b)
    payload["truncated"] = truncated
    payload["r_max"] = r
    if truncated:
        payload["warning"] = "r_max is not above the diameter; some finite deaths may be reported as inf"
    _emit(payload, out)
    if svg:
        _emit(rio.render_svg(b), svg)


@main.command()
@click.argument("barcode1", type=click.Path(exists=True, dir_okay=False))
@click.argument("barcode2", type=click.Path(exists=True, dir_okay=False))
@click.option("--dim", type=int, default=1, show_default=True)
@out_opt
@domain_errors
def bottleneck(barcode1, barcode2, dim, out):
    """Bottleneck distance between two barcode JSON files in one dimension."""
    b1, b2 = rio.read_barcode(barcode1), rio.read_barcode(barcode2)
    dist, matching = bottleneck_barcodes(b1, b2, dim)
    _emit({"dim": dim, "distance": dist, "matching": matching.to_dict()}, out)


@main.command()
@click.argument("matrix", type=click.Path(exists=True, dir_okay=False))
@field_opt
@max_dim_opt
@r_max_opt
@click.option("--k-budget", type=int, default=None, help="Largest subset size for spread (default: all).")
@click.option("--birth-tol", type=float, default=0.0, show_default=True,
              help="Bars born at or below this count as born at 0 for the FillRad estimate.")
@click.option("--assert", "assert_flag", is_flag=True, help="Exit 3 if an asserted bound fails.")
@out_opt
@domain_errors
def invariants(matrix, field_char, max_dim, r_max, k_budget, birth_tol, assert_flag, out):
    """Metric invariants and bar-length bounds for a distance matrix."""
    D, b, truncated, _ = _barcode_for(matrix, field_char, max_dim, r_max)
    report = bounds_report(D, b, k_budget=k_budget, birth_tol=birth_tol)
    payload = report.to_dict()
    payload["truncated"] = truncated
    _emit(payload, out)
    if assert_flag and not report.asserted_ok:
        click.echo("error: asserted bound violated", err=True)
        sys.exit(EXIT_ASSERT)


@main.command()
@click.argument("barcode1", type=click.Path(exists=True, dir_okay=False))
@click.argument("barcode2", type=click.Path(exists=True, dir_okay=False))
@out_opt
@domain_errors
def kunneth(barcode1, barcode2, out):
    """Barcode of the l-infinity product from the factors' barcodes."""
    _emit(rio.barcode_to_dict(kunneth_product(rio.read_barcode(barcode1), rio.read_barcode(barcode2))), out)


@main.command()
@click.argument("barcode1", type=click.Path(exists=True, dir_okay=False))
@click.argument("barcode2", type=click.Path(exists=True, dir_okay=False))
@out_opt
@domain_errors
def wedge(barcode1, barcode2, out):
    """Barcode of a metric gluing from the pieces' barcodes."""
    _emit(rio.barcode_to_dict(wedge_sum(rio.read_barcode(barcode1), rio.read_barcode(barcode2))), out)


@main.command()
@click.argument("kind", type=click.Choice(["circle", "linf-sphere", "linf-square", "sphere-fundamental"]))
@click.option("--n", type=int, default=2, show_default=True, help="Dimension parameter.")
@click.option("--radius", type=float, default=1.0, show_default=True)
@click.option("--l-max", type=int, default=0, show_default=True)
@field_opt
@out_opt
@domain_errors
def oracle(kind, n, radius, l_max, field_char, out):
    """Closed-form barcodes of model spaces."""
    if kind == "circle":
        b = oracle_circle(radius, l_max, field_char)
    elif kind == "linf-sphere":
        b = oracle_linf_sphere(n, field_char)
    elif kind == "linf-square":
        b = oracle_linf_square(n, field_char)
    else:
        bar = oracle_sphere_fundamental(n)
        b = Barcode({n: [(bar.birth, bar.death)]}, field_char)
    _emit(rio.barcode_to_dict(b), out)


def _read_coords(path):
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        if "coords" not in data:
            raise RipsLabError("JSON input has no 'coords' field")
        return np.asarray(data["coords"], dtype=float)
    return np.loadtxt(path, delimiter=",", ndmin=2)


@main.command("cech-check")
@click.argument("points", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-dim", default=3, show_default=True)
@out_opt
@domain_errors
def cech_check(points, max_dim, out):
    """Check that the l-infinity Cech filtration at scale 2 equals Vietoris-Rips."""
    rep = check_cech_vr(_read_coords(points), max_dim)
    _emit(rep.to_dict(), out)
    if not rep.ok:
        sys.exit(EXIT_ASSERT)


@main.command("bicombing-check")
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--dim", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@out_opt
@domain_errors
def bicombing_check(trials, dim, seed, out):
    """Katz bicombing property report on random triples plus the known counterexamples."""
    res = katz_suite(trials=trials, seed=seed, dim=dim)
    _emit(res.to_dict(), out)
    if not res.passed:
        sys.exit(EXIT_ASSERT)


@main.command()
@click.argument("name", type=click.Choice(SUITES))
@click.option("--seed", type=int, default=0, show_default=True)
@out_opt
@domain_errors
def suite(name, seed, out):
    """Run a named property suite and print a pass/fail report."""
    res = run_suite(name, seed=seed)
    _emit(res.to_dict(), out)
    if not res.passed:
        sys.exit(EXIT_ASSERT)


@main.command()
@click.argument("barcode_file", type=click.Path(exists=True, dir_okay=False))
@out_opt
@domain_errors
def render(barcode_file, out):
    """Render a barcode JSON file as SVG."""
    _emit(rio.render_svg(rio.read_barcode(barcode_file)), out)


if __name__ == "__main__":  # pragma: no cover
    main()
