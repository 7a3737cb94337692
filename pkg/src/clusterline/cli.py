"""Command-line interface.

Every subcommand emits a JSON object carrying the weight sequence and
the tool version; graph-producing subcommands can additionally write
DOT, CSV and rendered figure files.  Exit codes: 0 success, 1 domain
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import fz, hereditary as hd, ktheory as kt, report, sheaves as sh
from . import tube
from . import weights as wt
from .acceptance import SUITES, run_suites
from .errors import ClusterlineError
from .ktheory import SlopeQ
from .weights import WeightType


def _emit(payload, W=None, stream=None):
    if stream is None:
        stream = sys.stdout
    out = {"weights": ",".join(str(p) for p in W.p) if W else None,
           "tool_version": __version__}
    out.update(payload)
    json.dump(out, stream, sort_keys=True, default=str)
    stream.write("\n")


def _weights(args) -> WeightType:
    return WeightType.parse(args.weights, getattr(args, "lam", "") or "")


def _load_set(path):
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data["set"]
    return list(data)


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="clusterline",
        description="Exact workbench for cluster categories of canonical "
                    "algebras.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def wflag(p):
        p.add_argument("--weights", required=True,
                       help="comma-separated weight sequence, e.g. 2,3,5")
        p.add_argument("--lam", default="",
                       help="optional parameter labels (echoed only)")
        return p

    wflag(sub.add_parser("classify", help="representation type and chi"))

    p = wflag(sub.add_parser("kth", help="K-theory data"))
    p.add_argument("what", choices=["gram", "coxeter", "radical"])

    p = wflag(sub.add_parser("slope-word",
                             help="Moebius word reaching a slope from inf"))
    p.add_argument("q", help="slope d/r, integer, or inf")

    p = sub.add_parser("interval", help="slope interval membership")
    p.add_argument("r")
    p.add_argument("p")
    p.add_argument("q")

    p = sub.add_parser("tube", help="cluster tube calculus")
    tsub = p.add_subparsers(dest="tcmd", required=True)
    th = tsub.add_parser("hom", help="hom/ext dims between tube objects")
    for name in ("p", "i", "n", "j", "m"):
        th.add_argument(name, type=int)
    for name, hlp in (("check-yp", "dualized restriction-map check"),
                      ("check-ar", "AR-sequence exactness check")):
        tc = tsub.add_parser(name, help=hlp)
        tc.add_argument("p", type=int)
        tc.add_argument("nmax", type=int)

    for name in ("hom", "ideal"):
        p = wflag(sub.add_parser(name))
        p.add_argument("X")
        p.add_argument("Y")

    p = wflag(sub.add_parser("tilt", help="tilting sets"))
    p.add_argument("what", choices=["canonical", "squid", "check"])
    p.add_argument("file", nargs="?", help="JSON set file (for check)")

    wflag(sub.add_parser("replay-squid",
                         help="mutation trace from T_can to T_sq"))

    p = wflag(sub.add_parser("mutate", help="exchange one sheaf summand"))
    p.add_argument("file", help="JSON array of object strings")
    p.add_argument("M", help="member to exchange, e.g. L(0,0,4;0)")
    p.add_argument("--window", type=int, default=2)

    p = wflag(sub.add_parser("exchange",
                             help="BFS exchange graph (hereditary model)"))
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--dot", help="write DOT graph here")
    p.add_argument("--png", help="render figure here")
    p.add_argument("--csv", help="write edge list here")

    p = wflag(sub.add_parser("reduce-torsion",
                             help="remove regular summands by exchanges"))
    p.add_argument("file", help="JSON array of model object labels")
    p.add_argument("--depth", type=int, default=32)
    p.add_argument("--window", type=int, default=8)

    p = sub.add_parser("fz", help="quiver mutation")
    fsub = p.add_subparsers(dest="fcmd", required=True)
    fm = fsub.add_parser("mutate")
    fm.add_argument("file", help="JSON {labels, B}")
    fm.add_argument("k", type=int)
    fc = fsub.add_parser("class")
    fc.add_argument("file")
    fc.add_argument("--depth", type=int, default=None)
    fc.add_argument("--cap", type=int, default=200000)
    fp = fsub.add_parser("canonical-presentation")
    for name in ("p1", "p2", "p3"):
        fp.add_argument(name, type=int)
    for q in (fm, fc, fp):
        q.add_argument("--dot", help="write DOT quiver here")
        q.add_argument("--png", help="render figure here")

    p = sub.add_parser("verify", help="run acceptance suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="run only the named suite (repeatable)")
    return ap


def _quiver_from_file(path):
    with open(path) as fh:
        data = json.load(fh)
    return fz.MutQuiver(tuple(data["labels"]),
                        tuple(tuple(r) for r in data["B"]))


def _quiver_out(Q, args):
    if getattr(args, "dot", None):
        with open(args.dot, "w") as fh:
            fh.write(report.dot_quiver(Q.labels, Q.arrows()))
    if getattr(args, "png", None):
        report.render_graph(Q.labels, Q.arrows(), args.png, directed=True)


def _run(args) -> int:
    if args.cmd == "classify":
        W = _weights(args)
        r = wt.classify(W)
        _emit({"chi": str(r.chi), "type": r.kind,
               "lambda": list(W.lam),
               "picard_torsion_order": wt.picard_torsion_order(W)}, W)
    elif args.cmd == "kth":
        W = _weights(args)
        E = kt.build_euler(W)
        if args.what == "gram":
            _emit({"basis": [str(v) for v in E.vertices], "gram": E.G}, W)
        elif args.what == "coxeter":
            _emit({"coxeter": E.Phi}, W)
        else:
            _emit({"radical_rank": len(E.R_basis),
                   "radical_basis": E.R_basis}, W)
    elif args.cmd == "slope-word":
        W = _weights(args)
        q = SlopeQ.parse(args.q)
        w = kt.word_for_slope(q)
        _emit({"slope": str(q), "word": str(w), "length": len(w),
               "check": str(kt.apply_word(w, SlopeQ.infinity()))}, W)
    elif args.cmd == "interval":
        r, p, q = (SlopeQ.parse(s) for s in (args.r, args.p, args.q))
        _emit({"contains": kt.slope_interval_contains(r, p, q)})
    elif args.cmd == "tube":
        if args.tcmd == "hom":
            X = tube.TubeObject(args.p, args.i, args.n)
            Y = tube.TubeObject(args.p, args.j, args.m)
            _emit({"hom": tube.hom_dim(X, Y), "ext": tube.ext_dim(X, Y),
                   "cluster": list(tube.cluster_hom_dims(X, Y))})
        elif args.tcmd == "check-yp":
            _emit(tube.check_yoneda_lemma(args.p, args.nmax))
        else:
            _emit(tube.ar_sequence_check(args.p, args.nmax))
    elif args.cmd in ("hom", "ideal"):
        W = _weights(args)
        X = sh.parse_object(args.X, W)
        Y = sh.parse_object(args.Y, W)
        if args.cmd == "hom":
            _emit({"hom": sh.hom_dim(X, Y, W), "ext": sh.ext_dim(X, Y, W),
                   "cluster": list(sh.cluster_hom_dims(X, Y, W))}, W)
        else:
            _emit({"ideal_dim": sh.ideal_dim(X, Y, W)}, W)
    elif args.cmd == "tilt":
        W = _weights(args)
        if args.what == "check":
            if not args.file:
                raise SystemExit(2)
            objs = [sh.parse_object(s, W) for s in _load_set(args.file)]
            ok, cert = sh.is_tilting(W, objs)
            _emit({"tilting": ok, "certificate": cert}, W)
        else:
            T = (sh.canonical_tilting if args.what == "canonical"
                 else sh.squid_tilting)(W)
            ok, _ = sh.is_tilting(W, T.members)
            _emit({"set": [X.fmt() for X in T.members], "tilting": ok}, W)
    elif args.cmd == "replay-squid":
        W = _weights(args)
        T, trace = sh.replay_squid(W)
        _emit({"steps": len(trace), "trace": trace,
               "final": [X.fmt() for X in T.members]}, W)
    elif args.cmd == "mutate":
        W = _weights(args)
        objs = [sh.parse_object(s, W) for s in _load_set(args.file)]
        T = sh.ClusterTiltingSet.of(W, objs)
        M = sh.parse_object(args.M, W)
        T2, Mstar, dims = sh.mutate(T, M, args.window)
        _emit({"removed": M.fmt(), "added": Mstar.fmt(),
               "ext_dims": list(dims),
               "set": [X.fmt() for X in T2.members]}, W)
    elif args.cmd == "exchange":
        W = _weights(args)
        S = hd.StarQuiver(W)
        init = [hd.SP(v) for v in S.vertices]
        g = hd.exchange_bfs(S, init, depth=args.depth, window=args.window)
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(report.dot_graph(g["nodes"], g["edges"]))
        if args.csv:
            report.write_edges_csv(g["edges"], args.csv)
        if args.png:
            report.render_graph(g["nodes"], g["edges"], args.png)
        _emit({"nodes": len(g["nodes"]), "edges": len(g["edges"]),
               "regular_degree": len(S.vertices)}, W)
    elif args.cmd == "reduce-torsion":
        W = _weights(args)
        S = hd.StarQuiver(W)
        members = [hd.parse_indec(s) for s in _load_set(args.file)]
        res = hd.reduce_torsion(S, members, depth=args.depth,
                                window=args.window)
        _emit(res, W)
    elif args.cmd == "fz":
        if args.fcmd == "mutate":
            Q = fz.fz_mutate(_quiver_from_file(args.file), args.k)
            _quiver_out(Q, args)
            _emit({"labels": list(Q.labels),
                   "B": [list(r) for r in Q.B]})
        elif args.fcmd == "class":
            Q = _quiver_from_file(args.file)
            _quiver_out(Q, args)
            _emit(fz.mutation_class_bfs(Q, depth=args.depth,
                                        node_cap=args.cap))
        else:
            P = fz.canonical_cluster_presentation(args.p1, args.p2, args.p3)
            _quiver_out(P.quiver, args)
            _emit({"labels": list(P.quiver.labels),
                   "B": [list(r) for r in P.quiver.B],
                   "relations": list(P.relations)})
    elif args.cmd == "verify":
        results = run_suites(args.suite)
        ok = all(r["ok"] for r in results)
        _emit({"results": results, "ok": ok})
        return 0 if ok else 1
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return _run(args)
    except ClusterlineError as e:
        json.dump({"error": e.code, "detail": str(e)}, sys.stdout)
        sys.stdout.write("\n")
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as e:
        json.dump({"error": "invalid_input", "detail": str(e)}, sys.stdout)
        sys.stdout.write("\n")
        return 1
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2


if __name__ == "__main__":
    sys.exit(main())
