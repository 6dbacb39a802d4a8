"""Fixed report suite used for the determinism criterion (also run as a script)."""
import sys

from helpers import BOT, T_MONO, T_STRIPES, T_VERT, tileset
from tilemealy.cli import dumps
from tilemealy.reduction import (Budgets, add_sink, build_reduction, semidecide, verify_claim,
                                 verify_lemma1)
from tilemealy.semigroup import Budget, enumerate_semigroup, order_search
from tilemealy.tiles import find_torus_tiling, least_untileable_n, tile_rectangle


def fixture_reports() -> str:
    reports = {}
    for name, edges in (("mono", T_MONO), ("vert", T_VERT), ("stripes", T_STRIPES)):
        ts = tileset(edges)
        red = build_reduction(ts)
        sink = add_sink(red)
        torus = find_torus_tiling(ts, 4, 4)
        least = least_untileable_n(ts, 4)
        rep = {
            "tile": tile_rectangle(ts, 4, 4).to_json(),
            "torus": torus.to_json(),
            "least_n": least.to_json(),
            "semidecide": semidecide(ts, Budgets(max_elements=300)),
            "enumerate": enumerate_semigroup(red.machine, Budget(max_elements=300)).to_json(),
            "order": order_search(sink, [BOT], ["c"], 20).to_json(),
        }
        if torus.tiling is not None:
            rep["lemma1"] = verify_lemma1(red, torus.tiling, 4, 4)
        if least.n is not None:
            rep["claim"] = verify_claim(red, least.n, 3, mode="sample", count=300, seed=7)
        reports[name] = rep
    return dumps(reports)


if __name__ == "__main__":
    sys.stdout.write(fixture_reports())
