import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exhaustive_bottleneck
from ripslab.barcode_ops import (
    bottleneck,
    bottleneck_barcodes,
    intersect,
    kunneth_product,
    matching_cost,
    max_persistence,
    oracle_circle,
    oracle_linf_sphere,
    oracle_linf_square,
    oracle_sphere_fundamental,
    point_barcode,
    wedge_sum,
)
from ripslab.errors import FieldMismatch, InvalidParameter, NoEssentialComponent
from ripslab.persistence import INF, Barcode

finite_bar = st.tuples(st.integers(0, 6), st.integers(1, 6)).map(lambda t: (float(t[0]), float(t[0] + t[1])))
ess_bar = st.integers(0, 6).map(lambda b: (float(b), INF))
bars = st.lists(st.one_of(finite_bar, finite_bar, ess_bar), max_size=5)


def test_bottleneck_examples():
    assert bottleneck([(0, 2)], [])[0] == 1.0
    assert bottleneck([(0, 1)], [(0, 1.2)])[0] == pytest.approx(0.2)
    assert bottleneck([(0, INF)], [(0.5, INF)])[0] == 0.5
    assert bottleneck([(0, INF)], [])[0] == INF
    assert bottleneck([], [])[0] == 0.0


def test_bottleneck_matching_cost_consistent():
    m1 = [(0, 4), (1, 2), (0, INF)]
    m2 = [(0.5, 4.5), (3, INF)]
    value, matching = bottleneck(m1, m2)
    assert value == 3.0
    assert matching_cost(m1, m2, matching.pairs) == value
    assert matching.cost == value
    assert sorted(matching.unmatched1 + [i for i, _ in matching.pairs]) == [0, 1, 2]


@settings(max_examples=200, deadline=None)
@given(bars, bars)
def test_bottleneck_vs_exhaustive(m1, m2):
    value, matching = bottleneck(m1, m2)
    assert value == exhaustive_bottleneck(m1, m2)
    if not math.isinf(value):
        assert matching_cost(m1, m2, matching.pairs) == value


@settings(max_examples=100, deadline=None)
@given(bars, bars, bars)
def test_bottleneck_pseudometric(a, b, c):
    ab, ba = bottleneck(a, b)[0], bottleneck(b, a)[0]
    assert ab == ba
    assert bottleneck(a, a)[0] == 0.0
    assert ab <= bottleneck(a, c)[0] + bottleneck(c, b)[0] + 1e-12


def test_bottleneck_field_mismatch():
    with pytest.raises(FieldMismatch):
        bottleneck_barcodes(Barcode({}, 2), Barcode({}, 3), 0)


def test_intersect():
    assert intersect((0, 2), (1, 3)) == (1, 2)
    assert intersect((0, 1), (1, 2)) is None
    assert intersect((0, INF), (1, INF)) == (1, INF)


def test_kunneth_examples():
    circle = Barcode({0: [(0, INF)], 1: [(1, 2)]})
    prod = kunneth_product(circle, circle)
    assert prod.pairs(0) == ((0.0, INF),)
    assert prod.pairs(1) == ((1.0, 2.0), (1.0, 2.0))
    assert prod.pairs(2) == ((1.0, 2.0),)
    assert kunneth_product(circle, point_barcode()) == circle


def test_kunneth_disjoint_bars_vanish():
    a = Barcode({0: [(0, INF)], 1: [(0, 1)]})
    b = Barcode({0: [(0, INF)], 1: [(1, 2)]})
    assert kunneth_product(a, b).pairs(2) == ()


@settings(max_examples=50, deadline=None)
@given(bars, bars)
def test_kunneth_commutative(m1, m2):
    a = Barcode({0: [(0, INF)], 1: m1})
    b = Barcode({0: [(0, INF)], 1: m2, 2: m1})
    assert kunneth_product(a, b) == kunneth_product(b, a)


def test_wedge_examples():
    a = Barcode({0: [(0, INF), (0, 1)], 1: [(1, 2)]})
    b = Barcode({0: [(0, INF)], 1: [(0.5, 3)]})
    w = wedge_sum(a, b)
    assert w.pairs(0) == ((0.0, 1.0), (0.0, INF))
    assert w.pairs(1) == ((0.5, 3.0), (1.0, 2.0))
    assert wedge_sum(a, point_barcode()) == a
    with pytest.raises(NoEssentialComponent):
        wedge_sum(Barcode({1: [(0, 1)]}), a)


def test_oracle_circle():
    b = oracle_circle(1.0, 1)
    assert b.pairs(1) == ((0.0, 2 * math.pi / 3),)
    (birth, death), = b.pairs(3)
    assert birth == pytest.approx(2 * math.pi / 3) and death == pytest.approx(4 * math.pi / 5)
    assert b.pairs(1)[0][1] == birth  # consecutive bars share endpoints exactly
    assert oracle_circle(2.0, 0).pairs(1) == ((0.0, 4 * math.pi / 3),)
    with pytest.raises(InvalidParameter):
        oracle_circle(0.0)


def test_other_oracles():
    (b0, d0), = oracle_linf_sphere(2).pairs(1)
    assert b0 == 0.0 and d0 == pytest.approx(math.sqrt(2), abs=1e-15)
    assert oracle_linf_sphere(4).pairs(3) == ((0.0, 1.0),)
    assert oracle_linf_square(3).pairs(2) == ((0.0, 2.0),)
    assert oracle_linf_square(1).pairs(0) == ((0.0, 2.0), (0.0, INF))
    bar = oracle_sphere_fundamental(2)
    assert bar.death == pytest.approx(math.acos(-1 / 3)) and bar.dim == 2
    bar1 = oracle_sphere_fundamental(1)
    assert bar1.death == pytest.approx(2 * math.pi / 3)


def test_max_persistence():
    b = Barcode({1: [(0, 1), (2, 5)], 2: [(0, INF)]})
    assert max_persistence(b, 1) == 3.0
    assert max_persistence(b, 2) == INF
    assert max_persistence(b, 7) == 0.0
