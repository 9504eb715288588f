"""Time the numba and numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--walkers N] [--repeat R]

The first numba call compiles (or loads the on-disk cache) and is not timed.
"""

import argparse
import time

import numpy as np

from steinsym import _accel
from steinsym import geometry as geo
from steinsym.capacity import leja_candidates
from steinsym.confmap import boundary_image, map_rectangle
from steinsym.kernels import boundary_primitives, leja_indices, polyline_self_intersects, walk_on_spheres


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--walkers", type=int, default=200_000)
    parser.add_argument("--leja", type=int, default=200)
    parser.add_argument("--polyline", type=int, default=2048)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    square = geo.Polygon((-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j))
    segs, circs = boundary_primitives(list(geo.boundary_pieces(square)))
    cand = leja_candidates(geo.Disk(0, 1), 20 * args.leja)
    curve = boundary_image(map_rectangle(1.0, -1.0, 1.0), n_points=args.polyline)

    cases = {
        f"walk_on_spheres ({args.walkers} walkers)": lambda b: walk_on_spheres(segs, circs, 50.0, 2e-4, args.walkers, 0, backend=b),
        f"leja_indices ({args.leja} of {len(cand)})": lambda b: leja_indices(cand, args.leja, backend=b),
        f"polyline_self_intersects ({args.polyline} edges)": lambda b: polyline_self_intersects(curve, backend=b),
    }
    backends = ["numpy", "numba"] if _accel.HAVE_NUMBA else ["numpy"]
    print(f"{'kernel':<45}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for label, fn in cases.items():
        if "numba" in backends:
            fn("numba")  # compile
        times = [best_of(lambda: fn(b), args.repeat) for b in backends]
        row = f"{label:<45}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
