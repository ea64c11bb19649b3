"""Experiment orchestration: parameters once, then every check per seed."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .convex_shape import ConvexBody
from .delaunay import DelaunayGraph, SiteSet, build_delaunay, is_connected, planarity_check, verify_witness
from .generators import DEFAULT_WINDOW, GENERATORS, generate_sites
from .io import load_body, params_to_json
from .shape_params import ShapeParams, params_body, shape_params
from .spanner import (
    Disconnected,
    chain_monotone,
    diamond_check,
    direct_path,
    euclidean_stretch,
    euler_ok,
    faces,
    one_sided_check,
    visible_pair_check,
)

MAX_CERTS = 5
ORACLE_MAX_N = 12


@dataclass(frozen=True)
class ExperimentConfig:
    shape: str = "square"
    origin: Optional[tuple] = None
    generator: str = "uniform"
    n: int = 20
    seeds: tuple = (0,)
    param_tol: float = 1e-3
    assert_tol: float = 1e-9
    oracle: Optional[int] = None
    window: tuple = DEFAULT_WINDOW
    points_file: Optional[str] = None
    out_json: Optional[str] = None
    out_svg: Optional[str] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.seeds:
            raise ValueError("seeds must be non-empty")
        if not (self.param_tol > 0 and self.assert_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))

    def echo(self) -> dict:
        d = asdict(self)
        d["seeds"] = list(self.seeds)
        d["window"] = list(self.window)
        d["origin"] = None if self.origin is None else [str(v) for v in self.origin]
        return d


@dataclass
class RunReport:
    config: dict
    params: dict
    entries: list = field(default_factory=list)
    aggregate: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.aggregate.get("all_pass", False))

    def to_json(self) -> dict:
        return {"config": self.config, "params": self.params, "entries": self.entries, "aggregate": self.aggregate}


def _xy(sites: SiteSet, k: int) -> list:
    return [float(v) for v in sites.points_f[k]]


def check_instance(body: ConvexBody, params: ShapeParams, sites: SiteSet, *, assert_tol: float = 1e-9,
                   oracle_res: Optional[int] = None, paths: bool = True,
                   graph: Optional[DelaunayGraph] = None) -> dict:
    """Every check on one site set. ``body`` should carry the kappa-optimal origin."""
    g = graph if graph is not None else build_delaunay(body, sites)
    n = len(sites)
    lemmas, counts, worst, certs = {}, {}, {}, {}

    pl = planarity_check(g)
    lemmas["planarity"] = pl.ok
    if not pl.ok:
        certs["planarity"] = [[list(e) for e in pl.violation]]

    bad_w = [e for e in g.edges if not verify_witness(body, sites, e, g.witnesses[e])]
    lemmas["witnesses"] = not bad_w
    counts["witness_failures"] = len(bad_w)
    if bad_w:
        certs["witnesses"] = [[list(e), _xy(sites, e[0]), _xy(sites, e[1])] for e in bad_w[:MAX_CERTS]]

    connected = is_connected(g)
    lemmas["connected"] = connected
    fs = faces(g, check=False) if pl.ok else None
    lemmas["euler"] = fs is not None and euler_ok(g, fs)

    alpha = params.alpha - params.tolerance
    dm = diamond_check(g, sites, alpha)
    lemmas["diamond"] = dm.ok
    counts["diamond_violations"] = len(dm.violations)
    if dm.violations:
        certs["diamond"] = [[list(e), _xy(sites, e[0]), _xy(sites, e[1])] for e in dm.violations[:MAX_CERTS]]

    entry = {"seed": None, "n": n, "edges": len(g.edges)}
    if not connected:
        lemmas["stretch"] = False
        entry.update(is_triangulation=False, stretch=None)
    else:
        st = euclidean_stretch(g, params=params)
        entry["is_triangulation"] = st.is_triangulation
        entry["stretch"] = {"max_stretch": st.max_stretch, "arg_pair": list(st.arg_pair) if st.arg_pair else None,
                            "bound_used": st.bound_used}
        lemmas["stretch"] = bool(st.within_bound(assert_tol))
        if not lemmas["stretch"]:
            i, j = st.arg_pair
            certs["stretch"] = [[i, j, _xy(sites, i), _xy(sites, j), st.max_stretch]]

        if paths:
            one_sided = viol = mono = exact = 0
            w = 1.0
            bad = []
            for i in range(n):
                for j in range(i + 1, n):
                    dp = direct_path(body, sites, g, i, j)
                    exact += dp.exact
                    if not chain_monotone(dp, 1e-9):
                        mono += 1
                    if dp.one_sided:
                        one_sided += 1
                        w = max(w, dp.length / dp.pq_length)
                        if not one_sided_check(dp, params.kappa, assert_tol):
                            viol += 1
                            if len(bad) < MAX_CERTS:
                                bad.append([list(dp.vertices), dp.length / dp.pq_length])
            lemmas["one_sided"] = viol == 0
            lemmas["path_monotone"] = mono == 0
            counts.update(one_sided_paths=one_sided, one_sided_violations=viol, monotone_failures=mono,
                          exact_walks=exact)
            worst["one_sided_ratio"] = w
            if bad:
                certs["one_sided"] = bad

        if fs is not None:
            vp = visible_pair_check(body, sites, g, params.kappa, fs=fs, dist=st.graph_dist, rel_tol=assert_tol)
            lemmas["visible_pairs"] = vp.ok
            counts["visible_pairs"] = vp.checked
            counts["visible_violations"] = len(vp.violations)
            worst["visible_ratio"] = vp.worst_ratio
            if vp.violations:
                certs["visible_pairs"] = [[p, q, r] for p, q, r in vp.violations[:MAX_CERTS]]

    if oracle_res and n <= ORACLE_MAX_N:
        from .oracle import sampled_voronoi_oracle

        o = sampled_voronoi_oracle(body, sites, oracle_res)
        missing = sorted(o.edges - set(g.edges))
        extra = sorted(set(g.edges) - o.edges)
        lemmas["oracle"] = not missing and not extra
        if missing or extra:
            certs["oracle"] = {"oracle_only": [list(e) for e in missing], "build_only": [list(e) for e in extra]}

    entry.update(lemmas=lemmas, counts=counts, worst=worst, certificates=certs,
                 all_pass=all(lemmas.values()))
    return entry


def _seed_task(args):
    cfg, body, params, seed = args
    sites = generate_sites(cfg.generator, cfg.n, seed, cfg.window, body=body, path=cfg.points_file)
    entry = check_instance(body, params, sites, assert_tol=cfg.assert_tol, oracle_res=cfg.oracle)
    entry["seed"] = seed
    return entry


def _aggregate(entries: list) -> dict:
    def mx(key, sub):
        vals = [e[sub][key] for e in entries if e.get(sub) and e[sub].get(key) is not None]
        return max(vals) if vals else None

    agg = {
        "instances": len(entries),
        "all_pass": all(e["all_pass"] for e in entries),
        "max_stretch": mx("max_stretch", "stretch"),
        "worst_one_sided_ratio": mx("one_sided_ratio", "worst"),
        "worst_visible_ratio": mx("visible_ratio", "worst"),
        "triangulations": sum(bool(e.get("is_triangulation")) for e in entries),
    }
    failed = {}
    for e in entries:
        for k, v in e["lemmas"].items():
            if not v:
                failed[k] = failed.get(k, 0) + 1
    agg["failures"] = failed
    return agg


def run(cfg: ExperimentConfig, workers: int = 1) -> RunReport:
    """Deterministic report; ``workers`` only changes wall-clock time."""
    body = load_body(cfg.shape, cfg.origin)
    params = shape_params(body, cfg.param_tol)
    work = params_body(body, params)
    tasks = [(cfg, work, params, s) for s in cfg.seeds]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            entries = list(ex.map(_seed_task, tasks))
    else:
        entries = [_seed_task(t) for t in tasks]
    entries.sort(key=lambda e: e["seed"])
    return RunReport(cfg.echo(), params_to_json(params), entries, _aggregate(entries))


__all__ = ["Disconnected", "ExperimentConfig", "RunReport", "check_instance", "run"]
