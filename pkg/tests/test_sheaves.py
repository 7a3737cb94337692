import random

import pytest

from clusterline import ktheory as kt
from clusterline import sheaves as sh
from clusterline import weights as wt
from clusterline.errors import NotInSet
from clusterline.sheaves import ClusterTiltingSet, SheafObject
from clusterline.weights import WeightType


W235 = WeightType((2, 3, 5))
W2222 = WeightType((2, 2, 2, 2))


def all_torsion(W, armmax=None):
    out = []
    for i in range(1, W.t + 1):
        p = W.p[i - 1]
        for k in range(p):
            for n in range(1, p):
                out.append(SheafObject.torsion(W, i, k, n))
    return out


def some_lines(W, rng, count):
    return [SheafObject.line(wt.normal_form(
        [rng.randrange(p) for p in W.p], rng.randint(-2, 2), W))
        for _ in range(count)]


def test_parse_fmt_roundtrip():
    rng = random.Random(3)
    for W in (W235, W2222):
        objs = all_torsion(W) + some_lines(W, rng, 15)
        for X in objs:
            assert sh.parse_object(X.fmt(), W) == X


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        sh.parse_object("L(1,2)", W235)
    with pytest.raises(ValueError):
        sh.parse_object("T(9,0,1)", W235)
    with pytest.raises(ValueError):
        sh.parse_object("T(2,0,3)", W235)   # length must stay below p_i = 3


def test_serre_duality():
    rng = random.Random(4)
    for W in (W235, W2222):
        objs = all_torsion(W) + some_lines(W, rng, 8)
        for _ in range(200):
            X, Y = rng.choice(objs), rng.choice(objs)
            assert sh.ext_dim(X, Y, W) == sh.hom_dim(Y, X.tau(W), W)


def test_hom_minus_ext_is_euler_form():
    rng = random.Random(5)
    for W in (W235, W2222):
        E = sh.euler_data(W)
        objs = all_torsion(W) + some_lines(W, rng, 8)
        for _ in range(200):
            X, Y = rng.choice(objs), rng.choice(objs)
            lhs = sh.hom_dim(X, Y, W) - sh.ext_dim(X, Y, W)
            assert lhs == kt.euler_form(sh.k_class(X, E), sh.k_class(Y, E), E)


def test_structure_sheaf_detects_socle_index():
    # hom(O, T(i,k,1)) is 1 exactly for the simple at tube index 0
    O = SheafObject.line(wt.zero(W235))
    for i in range(1, 4):
        for k in range(W235.p[i - 1]):
            S = SheafObject.torsion(W235, i, k, 1)
            assert sh.hom_dim(O, S, W235) == (1 if k == 0 else 0)
            assert sh.hom_dim(S, O, W235) == 0


def test_torsion_k_class_matches_composition_series():
    E = sh.euler_data(W235)
    X = SheafObject.torsion(W235, 2, 1, 2)
    expected = sh.simple_class(2, -1, E) + sh.simple_class(2, 0, E)
    assert sh.k_class(X, E) == expected
    assert kt.rank(sh.k_class(X, E)) == 0


def test_tau_commutes_with_coxeter_on_k():
    rng = random.Random(6)
    for W in (W235, W2222):
        E = sh.euler_data(W)
        objs = all_torsion(W) + some_lines(W, rng, 8)
        for X in objs:
            assert sh.k_class(X.tau(W), E) == kt.tau_K(sh.k_class(X, E), E)


def test_no_maps_from_torsion_to_lines():
    O = SheafObject.line(wt.zero(W235))
    for T in all_torsion(W235):
        assert sh.hom_dim(T, O, W235) == 0
        assert sh.ext_dim(O, T, W235) == 0


def test_ideal_examples():
    # finite-length factorization of the degree-one maps
    W = WeightType((2, 2, 2))
    O = SheafObject.line(wt.zero(W))
    S1 = SheafObject.torsion(W, 1, 0, 1)
    assert sh.ideal_dim(S1, O, W) == 1
    Oc = SheafObject.line(wt.c_gen(W235))
    O5 = SheafObject.line(wt.zero(W235))
    assert sh.ideal_dim(Oc, O5, W235) == 1
    assert sh.ideal_dim(O5, Oc, W235) == 0


def test_ideal_vanishes_line_to_torsion():
    for T in all_torsion(W235):
        O = SheafObject.line(wt.zero(W235))
        assert sh.ideal_dim(O, T, W235) == sh.ext_dim(O, T.tau(W235, -1), W235)


def test_canonical_and_squid_are_tilting():
    for ps in [(2, 2), (2, 3, 5), (2, 2, 2, 2), (3, 3, 3)]:
        W = WeightType(ps)
        for T in (sh.canonical_tilting(W), sh.squid_tilting(W)):
            ok, cert = sh.is_tilting(W, T.members)
            assert ok, (ps, cert)
            assert len(T) == W.rank_k0


def test_canonical_tilting_members_for_2_2():
    W = WeightType((2, 2))
    T = sh.canonical_tilting(W)
    assert sorted(X.fmt() for X in T.members) == [
        "L(0,0;0)", "L(0,0;1)", "L(0,1;0)", "L(1,0;0)"]


def test_dropping_a_member_fails_cardinality():
    W = W235
    T = sh.canonical_tilting(W)
    ok, cert = sh.is_tilting(W, T.members[:-1])
    assert not ok and cert["ext_matrix"] is None


def test_wrong_simples_are_not_tilting():
    W = WeightType((2, 2, 2))
    O = SheafObject.line(wt.zero(W))
    objs = [O, SheafObject.line(wt.c_gen(W))]
    # take the simples the structure sheaf does NOT map onto
    objs += [SheafObject.torsion(W, i, 1, 1) for i in range(1, 4)]
    assert all(sh.hom_dim(O, S, W) == 0 for S in objs[2:])
    ok, cert = sh.is_tilting(W, objs)
    assert not ok
    assert any(x != 0 for row in cert["ext_matrix"] for x in row)


def test_mutation_example_and_involution():
    W = W235
    T = sh.canonical_tilting(W)
    M = sh.parse_object("L(0,0,4;0)", W)
    T2, Mstar, dims = sh.mutate(T, M)
    assert Mstar.fmt() == "T(3,0,1)"
    assert sorted(dims) == [0, 1]
    ok, _ = sh.is_tilting(W, T2.members)
    assert ok
    T3, Mback, _ = sh.mutate(T2, Mstar)
    assert Mback == M and T3 == T


def test_mutate_requires_membership():
    T = sh.canonical_tilting(W235)
    with pytest.raises(NotInSet):
        sh.mutate(T, SheafObject.torsion(W235, 1, 0, 1))


def test_replay_squid_step_counts_and_target():
    for ps in [(2, 2), (2, 3, 5), (2, 2, 2, 2)]:
        W = WeightType(ps)
        T, trace = sh.replay_squid(W)
        assert len(trace) == sum(p - 1 for p in ps)
        assert T == sh.squid_tilting(W)
        assert all(step["tilting"] for step in trace)


def test_line_twist_preserves_tilting():
    # the Picard action: shifting every member by a generator keeps
    # every set along the replay tilting
    W = WeightType((2, 2, 2))
    T, _ = sh.replay_squid(W)
    g = wt.x_gen(1, W)
    for sgn in (1, -1):
        shifted = []
        for X in T.members:
            if X.is_line:
                shifted.append(
                    SheafObject.line(wt.add(X.x, wt.smul(sgn, g, W), W)))
            else:
                # twisting torsion by x_i moves the socle index in its arm
                k = X.k + (sgn if X.i == 1 else 0)
                shifted.append(SheafObject.torsion(W, X.i, k, X.n))
        ok, cert = sh.is_tilting(W, shifted)
        assert ok, cert
