"""Compare the compiled and pure-Python kernel backends on a few workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs through the public API; only the kernel backend changes.
Results are checked to be identical before timings are reported.
"""
import argparse
import random
import time

from tilemealy import _kernels
from tilemealy._kernels import _pure
from tilemealy.reduction import add_sink, build_reduction
from tilemealy.semigroup import Budget, canonicalize, enumerate_semigroup, order_search
from tilemealy.tiles import Tile, TileSet, find_torus_tiling, tile_rectangle


def mono_reduction():
    return build_reduction(TileSet.from_edges({"t": ("0", "0", "0", "0")}))


def random_tileset(seed, ntiles, ncolors):
    rng = random.Random(seed)
    colors = [str(c) for c in range(ncolors)]
    tiles = [Tile(f"t{i}", *(rng.choice(colors) for _ in range(4))) for i in range(ntiles)]
    return TileSet(colors, tiles)


def w_enumerate():
    red = mono_reduction()
    return enumerate_semigroup(red.machine, Budget(max_elements=400)).to_json()


def w_order():
    sink = add_sink(mono_reduction())
    return order_search(sink, ["_bot"], ["c"], 200).to_json()


def w_power():
    red = mono_reduction()
    rng = random.Random(5)
    states = list(red.machine.states)
    return [canonicalize(red.machine, [rng.choice(states) for _ in range(n)],
                         Budget(max_power_states=10**6)).digest for n in range(20, 121, 5)]


def w_rectangle():
    out = []
    for seed in range(40):
        ts = random_tileset(seed, 7, 3)
        out.append(tile_rectangle(ts, 8, 8, node_budget=500_000).to_json())
    return out


def w_torus():
    return [find_torus_tiling(random_tileset(100 + s, 8, 3), 6, 6, node_budget=200_000).to_json()
            for s in range(20)]


WORKLOADS = {
    "enumerate T_mono (400 elements)": w_enumerate,
    "order search bottom vs sink (200)": w_order,
    "canonicalize 21 words, length 20-120": w_power,
    "rectangle search 40 sets, 8x8": w_rectangle,
    "torus search 20 sets, up to 6x6": w_torus,
}


def timed(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    compiled = _kernels.backend
    if compiled is _pure:
        print("compiled backend unavailable; build the extension first")
        return 1
    print(f"{'workload':40s} {'compiled':>10s} {'pure':>10s} {'speedup':>8s}")
    for name, fn in WORKLOADS.items():
        _kernels.backend = compiled
        t_c, r_c = timed(fn, args.repeat)
        _kernels.backend = _pure
        t_p, r_p = timed(fn, args.repeat)
        _kernels.backend = compiled
        assert r_c == r_p, f"backends disagree on {name}"
        print(f"{name:40s} {t_c:9.3f}s {t_p:9.3f}s {t_p / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
