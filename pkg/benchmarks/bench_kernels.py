"""Compare the compiled pairing kernels against the pure-Python fallback.

Builds a synthetic scene shaped like real validator input (packed cell
keys per placement, stud and socket points on the stud lattice), runs
both implementations on identical arrays, and reports best-of wall times.

Usage: python3 benchmarks/bench_kernels.py [--parts N] [--repeats K]
"""

import argparse
import time

import numpy as np

from brickline.geometry import MATE_TOL
from brickline.kernels import encode_cell


def synthesize(rng, parts):
    keys, owners = [], []
    studs, stud_owner = [], []
    sockets, socket_owner = [], []
    for owner in range(parts):
        base = (int(rng.integers(0, 60)), int(rng.integers(0, 40)),
                int(rng.integers(0, 60)))
        for dx in range(int(rng.integers(2, 5))):
            for dz in range(int(rng.integers(2, 5))):
                keys.append(encode_cell((base[0] + dx, base[1], base[2] + dz)))
                owners.append(owner)
                x = (base[0] + dx) * 20.0 + 10.0
                z = (base[2] + dz) * 20.0 + 10.0
                studs.append((x, -(base[1] + 1) * 8.0, z))
                stud_owner.append(owner)
                sockets.append((x, -base[1] * 8.0, z))
                socket_owner.append(owner)
    return {
        "keys": np.asarray(keys, dtype=np.int64),
        "owners": np.asarray(owners, dtype=np.int32),
        "studs": np.asarray(studs, dtype=np.float64),
        "stud_owner": np.asarray(stud_owner, dtype=np.int32),
        "sockets": np.asarray(sockets, dtype=np.float64),
        "socket_owner": np.asarray(socket_owner, dtype=np.int32),
    }


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - started)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="benchmark the pairing kernels")
    parser.add_argument("--parts", type=int, default=5000,
                        help="synthetic placements (default 5000)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed repeats, best is kept (default 5)")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    from brickline import _speedups_py as pure
    try:
        from brickline import _speedups as compiled
    except ImportError:
        compiled = None

    scene = synthesize(np.random.default_rng(args.seed), args.parts)
    jobs = {
        "overlap_pair_counts": lambda impl: impl.overlap_pair_counts(
            scene["keys"], scene["owners"]),
        "mating_pair_counts": lambda impl: impl.mating_pair_counts(
            scene["studs"], scene["stud_owner"],
            scene["sockets"], scene["socket_owner"], MATE_TOL),
    }
    print(f"parts={args.parts} cells={len(scene['keys'])}"
          f" connectors={len(scene['studs'])} repeats={args.repeats}")
    for name, job in jobs.items():
        pure_time, pure_result = best_of(lambda: job(pure), args.repeats)
        line = f"{name:22s} pure {pure_time * 1000:8.2f} ms"
        if compiled is not None:
            fast_time, fast_result = best_of(
                lambda: job(compiled), args.repeats)
            if fast_result != pure_result:
                raise SystemExit(f"{name}: backends disagree")
            line += (f"   compiled {fast_time * 1000:8.2f} ms"
                     f"   speedup {pure_time / fast_time:5.1f}x")
        else:
            line += "   compiled unavailable"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
