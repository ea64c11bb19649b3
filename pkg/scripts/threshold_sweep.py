"""How oracle agreement depends on resolution, count threshold and zooming.

Disabling zooms or the far field shows which instances need them; raising
the threshold shows how many edges rest on only a few boundary samples.

    python3 scripts/threshold_sweep.py --shape random-convex --seeds 20
"""
import argparse
import time

from convexdg import build_delaunay, preset
from convexdg.generators import generate_sites
from convexdg.oracle import sampled_voronoi_oracle

VARIANTS = {
    "default": {},
    "no-zoom": {"zoom_depth": 0},
    "no-far": {"far_field": False},
    "bare": {"zoom_depth": 0, "far_field": False},
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--shape", default="square")
    ap.add_argument("--gen", default="uniform")
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--ns", type=int, nargs="+", default=[5, 8, 12])
    ap.add_argument("--res", type=int, nargs="+", default=[256, 512, 1024])
    ap.add_argument("--thr-mult", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    args = ap.parse_args()

    body = preset(args.shape)
    cases = []
    for seed in range(args.seeds):
        for n in args.ns:
            sites = generate_sites(args.gen, n, seed, body=body)
            cases.append((sites, set(build_delaunay(body, sites).edges)))

    print(f"{'res':>5}{'thr':>5} {'variant':<9}{'missing':>8}{'extra':>7}{'runs off':>9}{'sec':>7}")
    for res in args.res:
        for mult in args.thr_mult:
            thr = max(1, round(res / 64 * mult))
            for name, kw in VARIANTS.items():
                miss = extra = off = 0
                t = time.perf_counter()
                for sites, built in cases:
                    e = sampled_voronoi_oracle(body, sites, res, threshold=thr, **kw).edges
                    miss += len(built - e)
                    extra += len(e - built)
                    off += e != built
                print(f"{res:>5}{thr:>5} {name:<9}{miss:>8}{extra:>7}{off:>9}{time.perf_counter() - t:7.1f}")


if __name__ == "__main__":
    main()
