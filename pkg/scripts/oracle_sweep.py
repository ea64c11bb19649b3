"""Compare built edge sets with the sampled oracle over a grid of instances.

Prints one row per (shape, generator) with the mismatch count and timings,
then the first few mismatches in full.

    python3 scripts/oracle_sweep.py --shapes square pentagon --seeds 10 --ns 4 8 12
"""
import argparse
import time
from collections import defaultdict

from convexdg import build_delaunay, preset
from convexdg.generators import generate_sites
from convexdg.oracle import sampled_voronoi_oracle

GENS = ["uniform", "collinear", "cocircular", "grid", "clustered", "cohomothetic"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--shapes", nargs="+", default=["square", "equilateral-triangle", "pentagon", "random-convex"])
    ap.add_argument("--gens", nargs="+", default=GENS)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--ns", type=int, nargs="+", default=[3, 6, 9, 12])
    ap.add_argument("--res", type=int, default=1024)
    args = ap.parse_args()

    rows = defaultdict(lambda: [0, 0, 0.0, 0.0, 0])
    bad = []
    for shape in args.shapes:
        body = preset(shape)
        for gen in args.gens:
            r = rows[(shape, gen)]
            for seed in range(args.seeds):
                for n in args.ns:
                    sites = generate_sites(gen, n, seed, body=body)
                    t = time.perf_counter()
                    g = build_delaunay(body, sites)
                    r[2] += time.perf_counter() - t
                    t = time.perf_counter()
                    o = sampled_voronoi_oracle(body, sites, args.res)
                    r[3] += time.perf_counter() - t
                    r[4] += o.zooms
                    r[0] += 1
                    if set(g.edges) != o.edges:
                        r[1] += 1
                        bad.append((shape, gen, seed, n, sorted(o.edges - set(g.edges)),
                                    sorted(set(g.edges) - o.edges)))

    print(f"{'shape':<22}{'generator':<14}{'runs':>5}{'diff':>5}{'build s':>9}{'oracle s':>9}{'zooms':>7}")
    for (shape, gen), (k, d, tb, to, z) in rows.items():
        print(f"{shape:<22}{gen:<14}{k:>5}{d:>5}{tb:9.2f}{to:9.2f}{z / k:7.1f}")
    for row in bad[:10]:
        print("mismatch", *row[:4], "oracle only", row[4], "build only", row[5])


if __name__ == "__main__":
    main()
