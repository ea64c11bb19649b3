"""Command-line entry point: ``convexdg <subcommand> [flags]``."""
from __future__ import annotations

import argparse
import sys

from .delaunay import build_delaunay
from .exact import to_point
from .experiment import ORACLE_MAX_N, ExperimentConfig, check_instance, run
from .generators import DEFAULT_WINDOW, GENERATORS, generate_sites
from .io import dumps, graph_to_json, load_body, params_to_json, sites_to_json
from .shape_params import params_body, shape_params
from .spanner import Disconnected, direct_path, euclidean_stretch


def parse_seeds(text: str) -> tuple:
    """``"3"``, ``"0..9"`` (inclusive) or ``"1,4,7"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise argparse.ArgumentTypeError(f"empty seed range {part!r}")
            out.extend(range(a, b + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("no seeds given")
    return tuple(out)


def parse_point(text: str):
    try:
        x, y = text.split(",")
        return to_point((x.strip(), y.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}") from exc


def parse_pair(text: str) -> tuple:
    a, b = text.split(",")
    return int(a), int(b)


def _common(p: argparse.ArgumentParser, sites: bool = True) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--shape", default="square", help="preset name")
    g.add_argument("--shape-file", help="shape JSON file")
    p.add_argument("--origin", type=parse_point, help="origin override x,y")
    p.add_argument("--tol", type=float, default=1e-3, help="parameter tolerance")
    p.add_argument("--out-json", help="write JSON here instead of stdout")
    if sites:
        p.add_argument("--gen", choices=GENERATORS, default="uniform")
        p.add_argument("--n", type=int, default=20)
        p.add_argument("--seeds", type=parse_seeds, default=(0,))
        p.add_argument("--points", help="site JSON file for --gen file")
        p.add_argument("--assert-tol", type=float, default=1e-9)
        p.add_argument("--oracle-res", type=int, default=0, help="0 disables the oracle")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="convexdg", description="Convex-distance Delaunay graphs and spanner checks.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    _common(sub.add_parser("params", help="shape parameters and stretch bounds"), sites=False)
    _common(sub.add_parser("build", help="Delaunay graph with witnesses"))
    _common(sub.add_parser("verify", help="all lemma checks per seed"))
    _common(sub.add_parser("stretch", help="Euclidean stretch report"))
    _common(sub.add_parser("oracle-diff", help="compare against the sampled diagram"))

    r = sub.add_parser("render", help="SVG of one instance")
    _common(r)
    r.add_argument("--out-svg", required=True)
    r.add_argument("--witnesses", action="store_true")
    r.add_argument("--diamonds", action="store_true", help="diamonds at alpha minus tol")
    r.add_argument("--path", type=parse_pair, help="direct path between sites i,j")

    x = sub.add_parser("run", help="full experiment; exit 0 iff everything passes")
    _common(x)
    x.add_argument("--workers", type=int, default=1)
    x.add_argument("--out-svg", help="render the first seed here")
    return ap


def _shape(args):
    body = load_body(args.shape_file or args.shape, args.origin)
    prm = shape_params(body, args.tol)
    return body, prm, params_body(body, prm)


def _emit(args, obj) -> None:
    text = dumps(obj)
    if args.out_json:
        with open(args.out_json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sites(args, body, seed):
    return generate_sites(args.gen, args.n, seed, DEFAULT_WINDOW, body=body, path=args.points)


def _config(args) -> ExperimentConfig:
    return ExperimentConfig(
        shape=args.shape_file or args.shape,
        origin=args.origin,
        generator=args.gen,
        n=args.n,
        seeds=args.seeds,
        param_tol=args.tol,
        assert_tol=args.assert_tol,
        oracle=args.oracle_res or None,
        points_file=args.points,
        out_json=args.out_json,
        out_svg=getattr(args, "out_svg", None),
    )


def cmd_params(args) -> int:
    _, prm, _ = _shape(args)
    _emit(args, params_to_json(prm))
    return 0


def cmd_build(args) -> int:
    _, _, work = _shape(args)
    out = []
    for s in args.seeds:
        sites = _sites(args, work, s)
        g = build_delaunay(work, sites)
        out.append({"seed": s, "sites": sites_to_json(sites)["points"], **graph_to_json(g)})
    _emit(args, out[0] if len(out) == 1 else out)
    return 0


def cmd_verify(args) -> int:
    _, prm, work = _shape(args)
    entries = []
    for s in args.seeds:
        e = check_instance(work, prm, _sites(args, work, s), assert_tol=args.assert_tol,
                           oracle_res=args.oracle_res or None)
        e["seed"] = s
        entries.append(e)
    _emit(args, {"params": params_to_json(prm), "entries": entries})
    return 0 if all(e["all_pass"] for e in entries) else 1


def cmd_stretch(args) -> int:
    _, prm, work = _shape(args)
    out, ok = [], True
    for s in args.seeds:
        g = build_delaunay(work, _sites(args, work, s))
        try:
            st = euclidean_stretch(g, params=prm)
        except Disconnected as exc:
            out.append({"seed": s, "disconnected": list(exc.pair)})
            ok = False
            continue
        within = st.within_bound(args.assert_tol)
        ok &= bool(within)
        out.append({"seed": s, "max_stretch": st.max_stretch,
                    "arg_pair": list(st.arg_pair) if st.arg_pair else None,
                    "bound_used": st.bound_used, "is_triangulation": st.is_triangulation,
                    "within_bound": within})
    _emit(args, out[0] if len(out) == 1 else out)
    return 0 if ok else 1


def cmd_oracle_diff(args) -> int:
    from .oracle import sampled_voronoi_oracle

    _, _, work = _shape(args)
    res = args.oracle_res or 1024
    out, ok = [], True
    for s in args.seeds:
        sites = _sites(args, work, s)
        g = build_delaunay(work, sites)
        o = sampled_voronoi_oracle(work, sites, res)
        built = set(g.edges)
        d = {"seed": s, "n": len(sites), "oracle_only": [list(e) for e in sorted(o.edges - built)],
             "build_only": [list(e) for e in sorted(built - o.edges)]}
        d["equal"] = not d["oracle_only"] and not d["build_only"]
        ok &= d["equal"]
        out.append(d)
    _emit(args, out[0] if len(out) == 1 else out)
    return 0 if ok else 1


def cmd_render(args) -> int:
    from .svg import export_svg

    _, prm, work = _shape(args)
    sites = _sites(args, work, args.seeds[0])
    g = build_delaunay(work, sites)
    overlays = {"witnesses": args.witnesses}
    if args.diamonds:
        overlays["diamonds"] = prm.alpha - prm.tolerance
    if args.path:
        i, j = args.path
        overlays["path"] = direct_path(work, sites, g, i, j)
    if args.oracle_res:
        from .oracle import sampled_voronoi_oracle

        overlays["oracle"] = sampled_voronoi_oracle(work, sites, args.oracle_res)
    export_svg(g, args.out_svg, **overlays)
    return 0


def cmd_run(args) -> int:
    cfg = _config(args)
    if cfg.oracle and cfg.n > ORACLE_MAX_N:
        print(f"note: oracle skipped for n > {ORACLE_MAX_N}", file=sys.stderr)
    rep = run(cfg, workers=args.workers)
    _emit(args, rep.to_json())
    if args.out_svg:
        from .svg import export_svg

        body = load_body(cfg.shape, cfg.origin)
        work = params_body(body, shape_params(body, cfg.param_tol))
        sites = _sites(args, work, cfg.seeds[0])
        export_svg(build_delaunay(work, sites), args.out_svg, witnesses=True)
    return 0 if rep.ok else 1


COMMANDS = {
    "params": cmd_params,
    "build": cmd_build,
    "verify": cmd_verify,
    "stretch": cmd_stretch,
    "oracle-diff": cmd_oracle_diff,
    "render": cmd_render,
    "run": cmd_run,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n", 1) < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.cmd](args)
    except (ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
