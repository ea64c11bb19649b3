"""Shape parameters of regular k-gons as k grows.

    python3 scripts/disk_proxy_params.py --ks 4 8 16 32 64
"""
import argparse
import math
import time

from convexdg import preset, shape_params


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ks", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    ap.add_argument("--tol", type=float, default=1e-3)
    args = ap.parse_args()

    print(f"{'k':>4} {'alpha':>9} {'kappa0':>9} {'kappa':>9} {'t_tri':>9} {'t_gen':>9} {'sec':>6}")
    for k in args.ks:
        t = time.perf_counter()
        p = shape_params(preset(f"regular-{k}"), args.tol)
        dt = time.perf_counter() - t
        print(f"{k:>4} {p.alpha:9.5f} {p.kappa0:9.5f} {p.kappa:9.5f} {p.t_triangulation:9.3f} "
              f"{p.t_general:9.3f} {dt:6.1f}")
    print(f"disk: alpha {math.pi / 4:.5f}, kappa {math.pi / 2:.5f}")


if __name__ == "__main__":
    main()
