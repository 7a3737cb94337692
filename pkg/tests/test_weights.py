import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clusterline import weights as wt
from clusterline.errors import InvalidWeightVector
from clusterline.weights import WeightType


def test_rejects_small_weights():
    with pytest.raises(InvalidWeightVector):
        WeightType((1, 2))


def test_rejects_wrong_lambda_count():
    with pytest.raises(InvalidWeightVector):
        WeightType((2, 3, 5), ("a", "b"))


def test_parse():
    W = WeightType.parse("2,3,5")
    assert W.p == (2, 3, 5) and W.t == 3 and W.rank_k0 == 9


def test_normal_form_carries():
    W = WeightType((2, 3, 5))
    e = wt.normal_form([3, -1, 7], 0, W)
    assert e.a == (1, 2, 2) and e.m == 1 + (-1) + 1


def test_delta_values():
    W = WeightType((2, 3, 5))
    assert W.p_lcm == 30
    assert wt.delta(wt.c_gen(W), W) == 30
    assert wt.delta(wt.x_gen(1, W), W) == 15
    assert wt.delta(wt.x_gen(3, W), W) == 6


def test_omega_normal_form_and_degree():
    for ps in [(2, 3, 5), (2, 2, 2, 2), (3, 3, 3)]:
        W = WeightType(ps)
        om = wt.omega(W)
        assert om.a == tuple(p - 1 for p in ps)
        assert om.m == (W.t - 2) - W.t
        chi = wt.euler_characteristic(W)
        assert wt.delta(om, W) == -W.p_lcm * chi


weight_lists = st.lists(st.integers(2, 6), min_size=2, max_size=4)


@given(weight_lists, st.lists(st.integers(-9, 9), min_size=4, max_size=4),
       st.integers(-3, 3), st.lists(st.integers(-9, 9), min_size=4, max_size=4),
       st.integers(-3, 3))
def test_group_laws(ps, a1, m1, a2, m2):
    W = WeightType(ps)
    x = wt.normal_form(a1[:W.t], m1, W)
    y = wt.normal_form(a2[:W.t], m2, W)
    assert wt.add(x, y, W) == wt.add(y, x, W)
    assert wt.add(x, wt.neg(x, W), W) == wt.zero(W)
    assert wt.sub(wt.add(x, y, W), y, W) == x
    assert wt.delta(wt.add(x, y, W), W) == wt.delta(x, W) + wt.delta(y, W)


def test_classification_table():
    cases = {
        (2, 2): wt.DOMESTIC, (2, 3, 5): wt.DOMESTIC,
        (2, 2, 7): wt.DOMESTIC,
        (2, 2, 2, 2): wt.TUBULAR, (3, 3, 3): wt.TUBULAR,
        (2, 4, 4): wt.TUBULAR, (2, 3, 6): wt.TUBULAR,
        (2, 3, 7): wt.WILD, (2, 2, 2, 3): wt.WILD,
    }
    for ps, kind in cases.items():
        r = wt.classify(WeightType(ps))
        assert r.kind == kind, ps
        assert r.chi == Fraction(2) - sum(Fraction(p - 1, p) for p in ps)


def test_picard_torsion_order():
    for ps in [(2, 2), (2, 3, 5), (2, 2, 2, 2), (2, 4, 4), (6, 10)]:
        W = WeightType(ps)
        expected = math.prod(ps) // W.p_lcm
        assert wt.picard_torsion_order(W) == expected
