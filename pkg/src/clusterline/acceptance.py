"""Batch verification suites: one callable per acceptance criterion.

Each suite returns {"name", "ok", "detail"}; run_suites drives them and
is shared by the CLI `verify` subcommand and the test suite.  All
randomness is seeded; all arithmetic is exact.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from . import fz, hereditary as hd, ktheory as kt, sheaves as sh, tube
from . import weights as wt
from .ktheory import SlopeQ
from .linalg import mat_vec, smith_diagonal
from .weights import WeightType


def _result(name, ok, detail):
    return {"name": name, "ok": bool(ok), "detail": detail}


def suite_classification():
    t0 = time.time()
    table = {
        (2, 2): "domestic", (2, 2, 2): "domestic", (2, 3, 3): "domestic",
        (2, 3, 4): "domestic", (2, 3, 5): "domestic",
        (2, 2, 2, 2): "tubular", (3, 3, 3): "tubular",
        (2, 4, 4): "tubular", (2, 3, 6): "tubular",
        (2, 3, 7): "wild",
    }
    for n in range(2, 8):
        table[(2, 2, n)] = "domestic"
    bad = []
    for ps, kind in table.items():
        r = wt.classify(WeightType(ps))
        if r.kind != kind:
            bad.append((ps, r.kind))
        if kind == "tubular" and r.chi != Fraction(0):
            bad.append((ps, "chi", r.chi))
    dt = time.time() - t0
    return _result("classification",
                   not bad and dt < 1.0,
                   f"{len(table)} weight types in {dt:.3f}s" +
                   (f"; failures {bad}" if bad else ""))


def _sheaf_universe(W, mmax=3):
    lines = [sh.SheafObject.line(wt.LElement(a, m))
             for m in range(-mmax, mmax + 1)
             for a in itertools.product(*(range(p) for p in W.p))]
    tors = [sh.SheafObject.torsion(W, i, k, n)
            for i in range(1, W.t + 1)
            for k in range(W.p[i - 1]) for n in range(1, W.p[i - 1])]
    return lines + tors


def suite_euler_identity():
    t0 = time.time()
    bad = 0
    pairs = 0
    for ps in [(2, 2, 2), (2, 3, 5), (2, 2, 2, 2)]:
        W = WeightType(ps)
        E = sh.euler_data(W)
        uni = _sheaf_universe(W)
        classes = [sh.k_class(X, E) for X in uni]
        gys = [mat_vec(E.G, list(c.coeffs)) for c in classes]
        for a, X in enumerate(uni):
            cx = classes[a].coeffs
            for b, Y in enumerate(uni):
                pairs += 1
                lhs = sh.hom_dim(X, Y, W) - sh.ext_dim(X, Y, W)
                rhs = sum(x * g for x, g in zip(cx, gys[b]))
                if lhs != rhs:
                    bad += 1
    dt = time.time() - t0
    return _result("euler-identity", bad == 0 and dt < 30,
                   f"{pairs} pairs, {bad} mismatches, {dt:.1f}s")


def suite_radical():
    issues = []
    for ps in [(2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6)]:
        E = kt.build_euler(WeightType(ps))
        if len(E.R_basis) != 2:
            issues.append((ps, "rank", len(E.R_basis)))
            continue
        u, v = (kt.KClass(tuple(b)) for b in E.R_basis)
        for a, b in [(u, u), (u, v), (v, u), (v, v)]:
            if kt.euler_form(a, b, E) != -kt.euler_form(b, a, E):
                issues.append((ps, "skew"))
        # saturation: the Smith form of the basis matrix has unit invariants
        diag = [d for d in smith_diagonal(E.R_basis) if d != 0]
        if any(abs(d) != 1 for d in diag):
            issues.append((ps, "saturation", diag))
    for ps in [(2, 2), (2, 2, 2), (2, 3, 3), (2, 3, 4), (2, 3, 5)]:
        E = kt.build_euler(WeightType(ps))
        if len(E.R_basis) != 1:
            issues.append((ps, "rank", len(E.R_basis)))
    return _result("radical", not issues, f"issues: {issues}" if issues
                   else "rank 2 + skew + saturated (tubular); rank 1 (domestic)")


def suite_tube_oracle():
    t0 = time.time()
    bad = 0
    count = 0
    for p in (1, 2, 3, 4):
        for i in range(p):
            for n in range(1, 11):
                for j in range(p):
                    for m in range(1, 11):
                        X = tube.TubeObject(p, i, n)
                        Y = tube.TubeObject(p, j, m)
                        count += 1
                        if tube.hom_dim(X, Y) != tube.oracle_hom_dim(X, Y):
                            bad += 1
    dt = time.time() - t0
    return _result("tube-oracle", bad == 0 and dt < 60,
                   f"{count} pairs, {bad} mismatches, {dt:.1f}s")


def suite_yoneda():
    viols = []
    for p in (1, 2, 3, 4):
        r = tube.check_yoneda_lemma(p, 6)
        viols += r["violations"]
    return _result("yoneda", not viols,
                   f"{len(viols)} violations over p in 1..4, n_max=6")


def suite_graded_composition():
    rng = random.Random(20260823)
    bad = []
    for trial in range(200):
        p = rng.choice((2, 3))
        objs = [tube.TubeObject(p, i, n) for i in range(p)
                for n in range(1, 4)]
        X, Y, Z, U = (rng.choice(objs) for _ in range(4))
        f = tube.random_graded(X, Y, rng)
        g = tube.random_graded(Y, Z, rng)
        h = tube.random_graded(Z, U, rng)
        lhs = tube.compose_graded(h, tube.compose_graded(g, f))
        rhs = tube.compose_graded(tube.compose_graded(h, g), f)
        if lhs.deg0 != rhs.deg0 or lhs.deg1 != rhs.deg1:
            bad.append((trial, "assoc"))
        f1 = tube.GradedHom.zero(X, Y)
        f1.deg1 = [Fraction(rng.randint(-2, 2)) for _ in f1.deg1]
        g1 = tube.GradedHom.zero(Y, Z)
        g1.deg1 = [Fraction(rng.randint(-2, 2)) for _ in g1.deg1]
        if not tube.compose_graded(g1, f1).is_zero():
            bad.append((trial, "deg1*deg1"))
    return _result("graded-composition", not bad,
                   f"200 random triples, failures: {bad}" if bad
                   else "200 random triples: associative, deg1*deg1 = 0")


def suite_squid_replay():
    issues = []
    for ps in [(2, 2, 2), (2, 3, 4), (2, 3, 5)]:
        W = WeightType(ps)
        T, trace = sh.replay_squid(W)
        if len(trace) != sum(p - 1 for p in ps):
            issues.append((ps, "steps", len(trace)))
        if not all(st["tilting"] for st in trace):
            issues.append((ps, "intermediate not tilting"))
        if not all(sorted(st["ext_dims"]) == [0, 1] for st in trace):
            issues.append((ps, "exchange dims"))
        if T != sh.squid_tilting(W):
            issues.append((ps, "endpoint"))
    return _result("squid-replay", not issues,
                   f"issues: {issues}" if issues else
                   "3 weight types: step counts, rigidity, endpoints all correct")


def suite_ideal_table():
    rng = random.Random(7)
    issues = []
    for ps in [(2, 2, 2), (2, 3, 5), (2, 2, 2, 2)]:
        W = WeightType(ps)
        uni = _sheaf_universe(W, mmax=2)
        lines = [X for X in uni if X.is_line]
        tors = [X for X in uni if not X.is_line]
        # case 1 exhaustively: no degree-one maps from lines into torsion
        for X in lines:
            for Y in tors:
                if sh.ideal_dim(X, Y, W) != 0:
                    issues.append((ps, "case1", X.fmt(), Y.fmt()))
        for _ in range(50):
            X, Y = rng.choice(uni), rng.choice(uni)
            ideal = sh.ideal_dim(X, Y, W)
            h0, h1 = sh.cluster_hom_dims(X, Y, W)
            if ideal != h1:
                issues.append((ps, "deg1", X.fmt(), Y.fmt()))
            if not X.is_line and Y.is_line:
                # torsion-to-line morphisms are entirely degree one
                if h0 != 0 or ideal != h0 + h1:
                    issues.append((ps, "torsion-to-line", X.fmt(), Y.fmt()))
    return _result("ideal-table", not issues,
                   f"issues: {issues[:5]}" if issues else
                   "case-1 zeros exhaustive; 50 mixed pairs per type consistent")


def suite_exchange_regularity():
    t0 = time.time()
    S = hd.StarQuiver(WeightType((2, 2, 2)))
    init = [hd.SP(v) for v in S.vertices]
    g = hd.exchange_bfs(S, init, depth=3)
    bad = [lbl for lbl, d in g["dist"].items()
           if d < 3 and g["degree"][lbl] != 5]
    dt = time.time() - t0
    return _result("exchange-regularity", not bad and dt < 60,
                   f"{len(g['nodes'])} nodes, {len(g['edges'])} edges, "
                   f"non-5-regular expanded nodes: {len(bad)}, {dt:.1f}s")


def _walk_slices(W, n_slices, seed):
    """Walk through slices by categorical sink/source mutations, checking
    FZ agreement of the slice quivers at every step."""
    S = hd.StarQuiver(W)
    eng = hd.ClusterEngine(S, 8)
    rng = random.Random(seed)
    node = eng.key([hd.PP(0, v) for v in S.vertices])
    bad = []
    for step in range(n_slices):
        members = [eng.objects[i] for i in node]
        sq = hd.slice_quiver(S, members)
        labels = sorted(S.vertices)
        Q = fz.MutQuiver.from_arrows(labels, sq)
        outd = {v: 0 for v in labels}
        ind = {v: 0 for v in labels}
        for u, v in sq:
            outd[u] += 1
            ind[v] += 1
        v = rng.choice([v for v in labels if outd[v] == 0 or ind[v] == 0])
        obj = next(X for X in members if X.v == v)
        node, _ = eng.mutate_key(node, eng.index[obj])
        new_members = [eng.objects[i] for i in node]
        if not hd.find_slice(S, new_members):
            bad.append((step, v, "left slices"))
            break
        Q2 = fz.MutQuiver.from_arrows(labels,
                                      hd.slice_quiver(S, new_members))
        if Q2.B != fz.fz_mutate(Q, labels.index(v)).B:
            bad.append((step, v, "fz mismatch"))
    return bad


def suite_apr_fz():
    bad = _walk_slices(WeightType((2, 2)), 20, 11)
    bad += _walk_slices(WeightType((2, 2, 2)), 20, 12)
    return _result("apr-fz", not bad,
                   f"failures: {bad}" if bad else
                   "20 slices each in the two models: slice quiver mutation = FZ")


def suite_connectedness():
    S = hd.StarQuiver(WeightType((2, 2, 2)))
    eng = hd.ClusterEngine(S, 6)
    init = [hd.SP(v) for v in S.vertices]
    issues = []
    for seed in range(25):
        rng = random.Random(1000 + seed)
        node = eng.initial_cluster()
        for _ in range(rng.randint(1, 6)):
            try:
                node, _ = eng.mutate_key(node, rng.choice(sorted(node)))
            except hd.WindowExhausted:
                pass
        members = [eng.objects[i] for i in node]
        g = hd.exchange_bfs(S, members, depth=10, window=6, target=init)
        if g["target_distance"] is None:
            issues.append(("cluster", seed))
    proj = [hd.PP(0, v) for v in S.vertices]
    for seed in range(10):
        rng = random.Random(2000 + seed)
        node = eng.key(proj)
        for _ in range(rng.randint(1, 5)):
            for i in sorted(node, key=lambda _: rng.random()):
                try:
                    new, _ = eng.mutate_key(node, i)
                except hd.WindowExhausted:
                    continue
                if all(eng.objects[x].is_bundle for x in new):
                    node = new
                    break
        try:
            hd.slice_path(S, [eng.objects[i] for i in node],
                          depth=8, window=6)
        except hd.DepthExhausted:
            issues.append(("slice", seed))
    return _result("connectedness", not issues,
                   f"failures: {issues}" if issues else
                   "25/25 clusters reach the initial cluster; 10/10 bundle "
                   "clusters reach a slice")


def suite_presentation():
    issues = []
    for ps in [(2, 2, 2), (2, 3, 5), (3, 3, 3)]:
        P = fz.canonical_cluster_presentation(*ps)
        if P.quiver.n != 2 + sum(p - 1 for p in ps):
            issues.append((ps, "vertices"))
        if len(P.quiver.arrows()) != sum(ps) + 1:
            issues.append((ps, "arrows"))
        if len(P.relations) != 1 + sum(ps):
            issues.append((ps, "relations"))
    rep = fz.mutation_class_bfs(fz.canonical_cluster_presentation(2, 2, 2).quiver)
    # frozen value: computed once by this exhaustive BFS and pinned
    if rep["class_size"] != 10 or rep["truncated"]:
        issues.append(("class", rep))
    return _result("presentation", not issues,
                   f"issues: {issues}" if issues else
                   f"counts ok; (2,2,2) mutation class size {rep['class_size']}")


def suite_rational_circle():
    rng = random.Random(13)
    issues = []
    inf = SlopeQ.infinity()
    for _ in range(200):
        if rng.random() < 0.05:
            q = inf
        else:
            d = rng.randint(-50, 50)
            r = rng.randint(0, 50)
            if (d, r) == (0, 0):
                d = 1
            q = SlopeQ(d, r)
        w = kt.word_for_slope(q)
        if kt.apply_word(w, inf) != q:
            issues.append(("roundtrip", str(q)))
        if len(w) > 2 * q.height().bit_length() + 4:
            issues.append(("length", str(q), len(w)))
    # sigma, rho act on (rank, deg) coordinates of R with determinant 1,
    # hence preserve the skew Gram form on the radical of (2,2,2,2)
    E = kt.build_euler(WeightType((2, 2, 2, 2)))
    r1, r2 = (kt.KClass(tuple(b)) for b in E.R_basis)
    M = [[kt.rank(r1), kt.rank(r2)], [kt.deg(r1, E), kt.deg(r2, E)]]
    detM = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    s = kt.euler_form(r1, r2, E)
    for gen in (((1, 0), (1, 1)), ((1, 1), (0, 1))):   # sigma, rho on (r,d)
        det = gen[0][0] * gen[1][1] - gen[0][1] * gen[1][0]
        if det != 1:
            issues.append(("det", gen))
        # conjugate into the R basis and check integrality
        GM = [[gen[0][0] * M[0][0] + gen[0][1] * M[1][0],
               gen[0][0] * M[0][1] + gen[0][1] * M[1][1]],
              [gen[1][0] * M[0][0] + gen[1][1] * M[1][0],
               gen[1][0] * M[0][1] + gen[1][1] * M[1][1]]]
        A = [[Fraction(M[1][1] * GM[0][j] - M[0][1] * GM[1][j], detM)
              for j in range(2)],
             [Fraction(-M[1][0] * GM[0][j] + M[0][0] * GM[1][j], detM)
              for j in range(2)]]
        if any(x.denominator != 1 for row in A for x in row):
            issues.append(("lattice", gen))
        detA = A[0][0] * A[1][1] - A[0][1] * A[1][0]
        if detA != 1 or s == 0:
            issues.append(("form", gen, detA))
    return _result("rational-circle", not issues,
                   f"issues: {issues[:5]}" if issues else
                   "200 slopes round-trip within the length bound; "
                   "generators preserve the skew form on R")


SUITES = {
    "classification": suite_classification,
    "euler-identity": suite_euler_identity,
    "radical": suite_radical,
    "tube-oracle": suite_tube_oracle,
    "yoneda": suite_yoneda,
    "graded-composition": suite_graded_composition,
    "squid-replay": suite_squid_replay,
    "ideal-table": suite_ideal_table,
    "exchange-regularity": suite_exchange_regularity,
    "apr-fz": suite_apr_fz,
    "connectedness": suite_connectedness,
    "presentation": suite_presentation,
    "rational-circle": suite_rational_circle,
}


def run_suites(names=None):
    names = list(SUITES) if not names else list(names)
    return [SUITES[n]() for n in names]
