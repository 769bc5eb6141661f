"""Command-line front end.

Subcommands:

* ``generate``  sample a planted-structure hypergraph to a text file
* ``detect``    score a hypergraph file with one detection method
* ``profile``   turn a score file into a profile / intersection CSV
* ``compare``   run all four methods, merged curves plus timing table
* ``rerun``     replay a previous run from its manifest

Every run writes a JSON manifest recording the resolved options, so any
output can be reproduced later; outputs are written atomically (temp
file + rename), never partially.  ``HYPERCP_THREADS=1`` forces the
deterministic mode; the numeric kernels are deterministic single-thread
code either way, so this is the mode you always get.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .baselines import borgatti_everett, clique_expansion, graph_nsm, umhs
from .generator import GeneratorConfig, sample
from .hypergraph import Hypergraph, XiRule
from .ingest import read_edge_list, read_label_set, write_edge_list, hypergraph_to_text
from .profiles import intersection_curve, profile_curve, write_curves_csv
from .solver import SolverConfig, hypernsm

METHODS = ("hypernsm", "graphnsm", "borgatti-everett", "umhs")
_XI_FLAGS = {"reciprocal": XiRule.RECIPROCAL, "weighted": XiRule.WEIGHTED_RECIPROCAL, "unit": XiRule.UNIT}


def _atomic_write(path: Path, text: str) -> None:
    """Write then rename, so readers never observe a partial file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _write_json(path: Path, obj) -> None:
    _atomic_write(path, json.dumps(obj, indent=1) + "\n")


def _write_manifest(path: Path, subcommand: str, options: dict) -> None:
    _write_json(path, {"subcommand": subcommand, "options": options})


def _resolve_xi(flag: str | None, h: Hypergraph | None) -> XiRule:
    """Explicit flag wins; otherwise weighted iff any edge weight != 1."""
    if flag is not None:
        return _XI_FLAGS[flag]
    if h is not None and h.m and bool(np.any(h.weights != 1.0)):
        return XiRule.WEIGHTED_RECIPROCAL
    return XiRule.RECIPROCAL


def _solver_config(args, h: Hypergraph | None) -> SolverConfig:
    return SolverConfig(
        p=args.p,
        q=args.q,
        xi=_resolve_xi(args.xi, h),
        tol=args.tol,
        max_iter=args.max_iter,
        seed=args.seed,
    )


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=float, default=10.0, help="edge-norm exponent (default 10)")
    parser.add_argument("--p", type=float, default=11.0, help="constraint-norm exponent (default 11)")
    parser.add_argument(
        "--xi", choices=sorted(_XI_FLAGS), default=None,
        help="edge scaling rule (default: reciprocal, weighted when the input carries weights)",
    )
    parser.add_argument("--tol", type=float, default=1e-8, help="relative-change stopping tolerance")
    parser.add_argument("--max-iter", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=5, help="umhs random restarts (default 5)")


def _detect_scores(method: str, h: Hypergraph, args) -> tuple[dict, np.ndarray, int]:
    """Run one method; returns (json payload, scores, iteration count)."""
    cfg = _solver_config(args, h)
    if method == "hypernsm":
        res = hypernsm(h, cfg)
        return res.to_json_dict(), res.scores, res.iterations
    if method == "graphnsm":
        res = graph_nsm(clique_expansion(h), cfg)
        return res.to_json_dict(), res.scores, res.iterations
    if method == "borgatti-everett":
        res = borgatti_everett(clique_expansion(h), tol=args.tol, max_iter=args.max_iter, seed=args.seed)
        return res.to_json_dict(), res.scores, res.iterations
    if method == "umhs":
        res = umhs(h, restarts=args.restarts, seed=args.seed)
        scores = res.scores(h.n)
        payload = {
            "scores": [float(s) for s in scores],
            "hitting_set": [h.label_of(i) for i in res.hitting_set],
            "set_size": res.set_size,
        }
        return payload, scores, 1
    raise ValueError(f"unknown method {method!r}")


def _scores_csv(h: Hypergraph, scores: np.ndarray) -> str:
    out = io.StringIO()
    out.write("node,label,score\n")
    for i, s in enumerate(scores):
        out.write(f"{i},{h.label_of(i)},{float(s)!r}\n")
    return out.getvalue()


def _manifest_options(args, keys) -> dict:
    return {k: getattr(args, k) for k in keys}


def cmd_generate(args) -> int:
    cfg = GeneratorConfig(
        n=args.n, max_size=args.max_size, q_mu=args.q_mu,
        xi=_resolve_xi(args.xi, None), seed=args.seed,
    )
    h, ranks = sample(cfg)
    out = Path(args.out)
    buf = io.StringIO()
    write_edge_list(h, buf)
    _atomic_write(out, buf.getvalue())
    sidecar = {
        "planted_perm": [int(r) for r in ranks],
        "config": {
            "n": cfg.n, "max_size": cfg.max_size, "q_mu": cfg.q_mu,
            "xi": cfg.xi.value, "seed": cfg.seed,
        },
    }
    _write_json(out.with_name(out.name + ".planted.json"), sidecar)
    keys = ("n", "max_size", "q_mu", "xi", "seed", "out")
    _write_manifest(out.with_name(out.name + ".manifest.json"), "generate", _manifest_options(args, keys))
    print(f"wrote {h.n} nodes, {h.m} hyperedges to {out}")
    return 0


def cmd_detect(args) -> int:
    h = read_edge_list(args.input)
    payload, scores, _ = _detect_scores(args.method, h, args)
    out = Path(args.out)
    if args.format == "json":
        _write_json(out, payload)
    else:
        _atomic_write(out, _scores_csv(h, scores))
    _write_json(out.with_name(out.name + ".labels.json"),
                {"labels": [h.label_of(i) for i in range(h.n)]})
    keys = ("method", "input", "out", "format", "q", "p", "xi", "tol", "max_iter", "seed", "restarts")
    _write_manifest(out.with_name(out.name + ".manifest.json"), "detect", _manifest_options(args, keys))
    return 0


def _load_scores(path: str, n: int) -> np.ndarray:
    with open(path) as f:
        payload = json.load(f)
    scores = np.asarray(payload["scores"], dtype=np.float64)
    if scores.shape != (n,):
        raise ValueError(f"score file has {scores.size} entries, hypergraph has {n} nodes")
    return scores


def cmd_profile(args) -> int:
    h = read_edge_list(args.input)
    scores = _load_scores(args.scores, h.n)
    if args.kind == "profile":
        curve = profile_curve(h, scores, xi=_resolve_xi(args.xi, h) if args.weighted else None,
                              method_label=args.method_label)
    else:
        if not args.core_file:
            raise ValueError("--kind intersection requires --core-file")
        core, missing = read_label_set(args.core_file, h)
        if missing:
            print(f"warning: {len(missing)} core labels not in hypergraph", file=sys.stderr)
        curve = intersection_curve(scores, core, method_label=args.method_label)
    buf = io.StringIO()
    write_curves_csv([curve], buf)
    out = Path(args.out)
    _atomic_write(out, buf.getvalue())
    keys = ("input", "scores", "out", "kind", "xi", "weighted", "core_file", "method_label")
    _write_manifest(out.with_name(out.name + ".manifest.json"), "profile", _manifest_options(args, keys))
    return 0


def cmd_compare(args) -> int:
    h = read_edge_list(args.input)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    core = None
    if args.core_file:
        core, missing = read_label_set(args.core_file, h)
        if missing:
            print(f"warning: {len(missing)} core labels not in hypergraph", file=sys.stderr)

    gamma_curves, iota_curves, timing_rows = [], [], []
    for method in METHODS:
        t0 = time.perf_counter()
        payload, scores, iters = _detect_scores(method, h, args)
        elapsed = time.perf_counter() - t0
        _write_json(out_dir / f"scores_{method}.json", payload)
        gamma_curves.append(profile_curve(h, scores, method_label=method))
        if core:
            iota_curves.append(intersection_curve(scores, core, method_label=method))
        timing_rows.append((method, elapsed, iters))

    buf = io.StringIO()
    write_curves_csv(gamma_curves, buf)
    _atomic_write(out_dir / "profiles.csv", buf.getvalue())
    if iota_curves:
        buf = io.StringIO()
        write_curves_csv(iota_curves, buf)
        _atomic_write(out_dir / "intersection.csv", buf.getvalue())

    timing = "method,wall_seconds,iterations\n" + "".join(
        f"{m},{t:.6f},{it}\n" for m, t, it in timing_rows
    )
    _atomic_write(out_dir / "timings.csv", timing)
    _write_json(out_dir / "labels.json", {"labels": [h.label_of(i) for i in range(h.n)]})
    keys = ("input", "out_dir", "core_file", "q", "p", "xi", "tol", "max_iter", "seed", "restarts")
    _write_manifest(out_dir / "manifest.json", "compare", _manifest_options(args, keys))
    print(f"compared {len(METHODS)} methods on {args.input} -> {out_dir}")
    return 0


def cmd_rerun(args) -> int:
    with open(args.manifest) as f:
        manifest = json.load(f)
    sub = manifest["subcommand"]
    if sub == "rerun":
        raise ValueError("manifest of a rerun cannot be replayed")
    argv = [sub]
    for key, value in manifest["options"].items():
        if value is None or value is False:
            continue
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        else:
            argv += [flag, str(value)]
    return main(argv)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercp", description="Core-periphery detection in hypergraphs."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    g = sub.add_parser("generate", help="sample a planted-structure hypergraph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--max-size", type=int, required=True)
    g.add_argument("--q-mu", type=float, default=10.0, help="coreness sharpness exponent")
    g.add_argument("--xi", choices=sorted(_XI_FLAGS), default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("detect", help="score a hypergraph with one method")
    d.add_argument("--method", choices=METHODS, default="hypernsm")
    d.add_argument("--input", required=True)
    d.add_argument("--out", required=True)
    d.add_argument("--format", choices=("json", "csv"), default="json")
    _add_solver_flags(d)
    d.set_defaults(func=cmd_detect)

    p = sub.add_parser("profile", help="profile curve from a score file")
    p.add_argument("--input", required=True)
    p.add_argument("--scores", required=True, help="JSON score file from detect")
    p.add_argument("--out", required=True)
    p.add_argument("--kind", choices=("profile", "intersection"), default="profile")
    p.add_argument("--xi", choices=sorted(_XI_FLAGS), default=None)
    p.add_argument("--weighted", action="store_true", help="xi-weight the profile ratios")
    p.add_argument("--core-file", default=None)
    p.add_argument("--method-label", default="")
    p.set_defaults(func=cmd_profile)

    c = sub.add_parser("compare", help="run all methods and merge the curves")
    c.add_argument("--input", required=True)
    c.add_argument("--out-dir", required=True)
    c.add_argument("--core-file", default=None)
    _add_solver_flags(c)
    c.set_defaults(func=cmd_compare)

    r = sub.add_parser("rerun", help="replay a run from its manifest")
    r.add_argument("manifest")
    r.set_defaults(func=cmd_rerun)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"hypercp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
