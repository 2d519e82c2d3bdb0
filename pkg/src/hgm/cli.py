"""``hgm`` command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on data errors. Every error
is written to stderr prefixed with ``error:``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import _kernels
from .compare import DEFAULT_MAX_ISO_N, iso_distance, tensor_distance
from .errors import HGMError
from .functionals import FunctionalSpec, evaluate, phi_aggregate, tv_dispersion
from .generators import FamilySpec, erdos_renyi, generate
from .graph import read_edge_list, serialize_edge_list
from .hamming import (graph_distribution, hc_multiscale, hc_per_scale, hc_tensor_centrality,
                      node_distribution)
from .reachability import all_pairs_distances, build_reach_tensor, dump_tensor, exact_k_tensor
from .sketch import dump_signatures, estimate_hamming, sketch_rows
from .spectral import classical_mds, pairwise_distance_matrix, tensor_fingerprint
from .temporal import (build_temporal, energy_step_bound, load_snapshots, temporal_diagnostics,
                       temporal_distance)

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- output ------------------------------------------------------------------

def _fmt_float(x):
    if math.isnan(x):
        return "null"
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x + 0.0, ".12g")  # + 0.0 folds -0.0 into 0


def to_json(obj):
    """Deterministic JSON with floats at 12 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return to_json(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt_float(float(x)) if isinstance(x, (float, np.floating)) else x
                    for x in r])
    return buf.getvalue()


def _emit(args, payload, table=None):
    """Print ``payload`` as JSON, or ``table = (header, rows)`` as CSV."""
    if args.format == "csv":
        if table is None:
            raise UsageError("this command has no CSV form")
        sys.stdout.write(_csv_text(*table))
    else:
        sys.stdout.write(to_json(payload) + "\n")


# --- helpers -----------------------------------------------------------------

def _graph(args, path):
    return read_edge_list(path, index_base=args.index_base)


def _tensor(args, g):
    return build_reach_tensor(g, allow_disconnected=args.allow_disconnected)


def _vertex(args, v):
    return v - args.index_base


def _scale(text):
    return text if text == "all" else int(text)


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _dist_payload(d):
    return d.to_dict()


def _dist_table(d):
    return (["distance", "mass", "count"],
            [(s, float(m), c) for s, m, c in zip(d.support, d.mass, d.counts)])


def _vector_table(args, values, name="value"):
    return (["vertex", name],
            [(v + args.index_base, float(x)) for v, x in enumerate(values)])


# --- commands ----------------------------------------------------------------

def cmd_gen(args):
    params = {}
    for key in ("n", "m", "d", "p", "beta", "seed", "h"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.sizes:
        params["sizes"] = [int(x) for x in args.sizes.split(",")]
    try:
        spec = FamilySpec(args.family, **params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = generate(spec)
    text = serialize_edge_list(g, index_base=args.index_base)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _emit(args, {"family": args.family, "n": g.n, "m": g.m, "out": args.out},
              (["n", "m"], [(g.n, g.m)]))
    else:
        sys.stdout.write(text)


def cmd_dist(args):
    g = _graph(args, args.graph)
    dm = all_pairs_distances(g)
    if args.dump_tensor:
        t = exact_k_tensor(dm, allow_disconnected=args.allow_disconnected)
        with open(args.dump_tensor, "wb") as fh:
            dump_tensor(t, fh)
    dist = dm.dist.tolist()
    _emit(args, {"n": dm.n, "diameter": dm.diameter, "connected": dm.connected, "dist": dist},
          ([f"v{j + args.index_base}" for j in range(dm.n)], dist))


def cmd_centrality(args):
    g = _graph(args, args.graph)
    t = _tensor(args, g)
    if args.tensor_norm:
        cv = hc_tensor_centrality(t, args.tensor_norm, allow_disconnected=args.allow_disconnected)
    elif args.weights:
        cv = hc_multiscale(t, weights=_floats(args.weights))
    elif args.geometric is not None:
        cv = hc_multiscale(t, alpha=args.geometric)
    elif args.uniform is not None:
        cv = hc_multiscale(t, K=args.uniform)
    else:
        cv = hc_per_scale(t, args.scale or 1)
    _emit(args, cv.to_dict(), _vector_table(args, cv.values))


def cmd_distribution(args):
    g = _graph(args, args.graph)
    t = _tensor(args, g)
    if args.node is not None:
        d = node_distribution(t, _vertex(args, args.node), args.scale)
    else:
        d = graph_distribution(t, args.scale, pairs=args.pairs)
    _emit(args, _dist_payload(d), _dist_table(d))


def cmd_functional(args):
    g = _graph(args, args.graph)
    t = _tensor(args, g)
    if args.phi == "tv_dispersion":
        scales = [args.scale] if args.scale is not None else list(range(1, t.depth + 1))
        rows = [(k, *tv_dispersion(t, k)) for k in scales]
        _emit(args, {"phi": "tv_dispersion",
                     "scales": [{"scale": k, "value": v, "bound": b} for k, v, b in rows]},
              (["scale", "value", "bound"], rows))
        return
    try:
        phi = FunctionalSpec.parse(args.phi, bits=args.bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.scale is not None:
        if args.level == "node":
            vals = np.array([evaluate(phi, node_distribution(t, v, args.scale))
                             for v in range(t.n)])
        else:
            vals = evaluate(phi, graph_distribution(t, args.scale))
    else:
        vals = phi_aggregate(t, phi, level=args.level,
                             allow_disconnected=args.allow_disconnected)
    if args.level == "node":
        _emit(args, {"phi": args.phi, "level": "node", "values": vals},
              _vector_table(args, vals))
    else:
        _emit(args, {"phi": args.phi, "level": "graph", "value": float(vals)},
              (["phi", "value"], [(args.phi, float(vals))]))


def cmd_mds(args):
    g = _graph(args, args.graph)
    t = _tensor(args, g)
    res = classical_mds(pairwise_distance_matrix(t, args.scale), scale=args.scale)
    header = ["vertex"] + [f"x{i + 1}" for i in range(res.dim)]
    rows = [(v + args.index_base, *map(float, res.coordinates[v])) for v in range(t.n)]
    if args.out:
        Path(args.out).write_text(_csv_text(header, rows), encoding="utf-8")
    _emit(args, {"scale": args.scale, "dim": res.dim, "eigenvalues": res.eigenvalues,
                 "explained_variance_total": res.explained_variance_total,
                 "negative_count": res.negative_count, "negative_mass": res.negative_mass},
          (header, rows))


def cmd_fingerprint(args):
    g = _graph(args, args.graph)
    fp = tensor_fingerprint(_tensor(args, g))
    payload = fp.to_dict()
    if args.out:
        Path(args.out).write_text(to_json(payload) + "\n", encoding="utf-8")
    _emit(args, payload, (["scale", "energy"],
                          [(k + 1, int(e)) for k, e in enumerate(fp.energies)]))


def cmd_compare(args):
    a, b = _graph(args, args.a), _graph(args, args.b)
    res = tensor_distance(a, b)
    payload = res.to_dict()
    if not args.normalized:
        payload.pop("d_ten_normalized")
    if args.iso:
        payload["d_iso"] = iso_distance(a, b, max_n=args.max_iso_n)
    _emit(args, payload, (list(payload), [tuple(payload.values())]))


def cmd_sketch(args):
    g = _graph(args, args.graph)
    t = _tensor(args, g)
    words = t.slice_words(args.scale)
    sigs = sketch_rows(words, args.size, args.seed, t.n)
    if args.out:
        with open(args.out, "wb") as fh:
            dump_signatures(sigs, fh)
    est = np.zeros(t.n)
    for v in range(t.n):
        est[v] = sum(estimate_hamming(sigs[v], sigs[u]) for u in range(t.n) if u != v)
    est /= max(t.n - 1, 1)
    exact = hc_per_scale(t, args.scale).values
    _emit(args, {"scale": args.scale, "size": args.size, "seed": args.seed,
                 "weights": [s.weight for s in sigs], "hc_estimate": est, "hc_exact": exact,
                 "max_abs_error": float(np.abs(est - exact).max())},
          (["vertex", "hc_estimate", "hc_exact"],
           [(v + args.index_base, float(est[v]), float(exact[v])) for v in range(t.n)]))


def _temporal(args, path):
    return build_temporal(load_snapshots(path, index_base=args.index_base),
                          allow_disconnected=args.allow_disconnected)


def cmd_temporal(args):
    if args.tcmd == "dist":
        a, b = _temporal(args, args.a), _temporal(args, args.b)
        payload = {"d_dyn": temporal_distance(a, b)}
        if args.normalized:
            payload["d_dyn_normalized"] = temporal_distance(a, b, normalized=True)
        if args.iso:
            payload["d_dyn_iso"] = temporal_distance(a, b, iso=True, max_n=args.max_iso_n)
        _emit(args, payload, (list(payload), [tuple(payload.values())]))
    elif args.tcmd == "diag":
        tt = _temporal(args, args.a)
        tv, trend = temporal_diagnostics(tt)
        rows = [(v + args.index_base, k + 1, float(tv[v, k]), float(trend[v, k]))
                for v in range(tt.n) for k in range(tt.depth)]
        _emit(args, {"T": tt.T, "D": tt.depth, "tv": tv, "trend": trend},
              (["vertex", "scale", "tv", "trend"], rows))
    else:
        tt = _temporal(args, args.a)
        steps = [args.step] if args.step else list(range(1, tt.T))
        out, rows = [], []
        for s in steps:
            obs, bound = energy_step_bound(tt, s)
            out.append({"step": s, "observed": obs, "bound": bound})
            rows += [(s, k + 1, int(o), int(bd)) for k, (o, bd) in enumerate(zip(obs, bound))]
        _emit(args, {"steps": out}, (["step", "scale", "observed", "bound"], rows))


def cmd_bench(args):
    timings = []

    def clock(label, fn):
        t0 = time.perf_counter()
        out = fn()
        timings.append((label, time.perf_counter() - t0))
        return out

    g = clock("generate", lambda: erdos_renyi(args.n, args.avg_degree / (args.n - 1), args.seed))
    t = clock("bfs+pack", lambda: build_reach_tensor(g, allow_disconnected=True))
    clock("hc_all_scales", lambda: [hc_per_scale(t, k) for k in range(1, t.depth + 1)])
    _emit(args, {"n": g.n, "m": g.m, "D": t.depth, "threads": _kernels.numba.get_num_threads(),
                 "seconds": {k: v for k, v in timings}},
          (["stage", "seconds"], timings))


# --- parser ------------------------------------------------------------------

def _globals(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--index-base", type=int, choices=(0, 1), default=d(0))
    parser.add_argument("--threads", type=int, default=d(None))
    parser.add_argument("--format", choices=("json", "csv"), default=d("json"))
    parser.add_argument("--allow-disconnected", action="store_true", default=d(False))


def build_parser():
    p = _Parser(prog="hgm", description="Hamming graph metrics")
    _globals(p, suppress=False)
    common = _Parser(add_help=False)
    _globals(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", parents=[common], help="generate a graph family")
    s.add_argument("--family", required=True)
    for flag, typ in (("--n", int), ("--m", int), ("--d", int), ("--p", float),
                      ("--beta", float), ("--seed", int), ("--h", int)):
        s.add_argument(flag, type=typ)
    s.add_argument("--sizes")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("dist", parents=[common], help="all-pairs distances")
    s.add_argument("graph")
    s.add_argument("--dump-tensor")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("centrality", parents=[common], help="Hamming centralities")
    s.add_argument("graph")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--scale", type=int)
    grp.add_argument("--weights")
    grp.add_argument("--uniform", type=int, metavar="K")
    grp.add_argument("--geometric", type=float, metavar="ALPHA")
    grp.add_argument("--tensor-norm", choices=("frobenius", "l1"))
    s.set_defaults(func=cmd_centrality)

    s = sub.add_parser("distribution", parents=[common], help="distance distributions")
    s.add_argument("graph")
    s.add_argument("--node", type=int)
    s.add_argument("--scale", type=_scale, default=1)
    s.add_argument("--pairs", choices=("unordered", "ordered"), default="unordered")
    s.set_defaults(func=cmd_distribution)

    s = sub.add_parser("functional", parents=[common], help="functionals of distributions")
    s.add_argument("graph")
    s.add_argument("--phi", required=True)
    s.add_argument("--level", choices=("node", "graph"), default="graph")
    s.add_argument("--scale", type=int)
    s.add_argument("--bits", action="store_true")
    s.set_defaults(func=cmd_functional)

    s = sub.add_parser("mds", parents=[common], help="per-scale classical MDS")
    s.add_argument("graph")
    s.add_argument("--scale", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_mds)

    s = sub.add_parser("fingerprint", parents=[common], help="tensor fingerprint")
    s.add_argument("graph")
    s.add_argument("--out")
    s.set_defaults(func=cmd_fingerprint)

    s = sub.add_parser("compare", parents=[common], help="tensor distance between graphs")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--iso", action="store_true")
    s.add_argument("--max-iso-n", type=int, default=DEFAULT_MAX_ISO_N)
    s.add_argument("--normalized", action="store_true")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("sketch", parents=[common], help="MinHash estimate of HC")
    s.add_argument("graph")
    s.add_argument("--scale", type=int, default=1)
    s.add_argument("--size", type=int, default=256)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sketch)

    s = sub.add_parser("temporal", parents=[common], help="snapshot sequences")
    tsub = s.add_subparsers(dest="tcmd", required=True, parser_class=_Parser)
    t = tsub.add_parser("dist", parents=[common])
    t.add_argument("a")
    t.add_argument("b")
    t.add_argument("--iso", action="store_true")
    t.add_argument("--max-iso-n", type=int, default=DEFAULT_MAX_ISO_N)
    t.add_argument("--normalized", action="store_true")
    t = tsub.add_parser("diag", parents=[common])
    t.add_argument("a")
    t = tsub.add_parser("energy", parents=[common])
    t.add_argument("a")
    t.add_argument("--step", type=int)
    s.set_defaults(func=cmd_temporal)

    s = sub.add_parser("bench", parents=[common], help="timing of the main kernels")
    s.add_argument("--n", type=int, default=10_000)
    s.add_argument("--avg-degree", type=float, default=10.0)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.threads is not None:
            if args.threads < 1:
                raise UsageError("--threads must be >= 1")
            _kernels.set_threads(args.threads)
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HGMError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
