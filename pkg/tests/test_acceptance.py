"""Exit criteria.  Each test records one PASS/FAIL line shown in the summary."""
import itertools
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from acceptance_fixtures import fixture_reports
from conftest import ACCEPTANCE_LINES
from helpers import BOT, T_MONO, T_STRIPES, T_VERT, oracle_triples, random_machine, random_word, tileset
from tilemealy.mealy import act, dstate
from tilemealy.reduction import (add_sink, bottom_powers, build_reduction, finiteness_bound,
                                 semidecide, verify_claim, verify_lemma1)
from tilemealy.semigroup import (Budget, BudgetExceeded, Finite, canonicalize, enumerate_semigroup,
                                 equal, equal_bruteforce, order_search)
from tilemealy.tiles import (RectTiling, TileSet, Tile, find_torus_tiling, is_nw_deterministic,
                             least_untileable_n, tile_rectangle)

pytestmark = pytest.mark.acceptance


def record(number, title, ok, elapsed, detail=""):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title} ({elapsed:.2f}s){' - ' + detail if detail else ''}")
    print(ACCEPTANCE_LINES[-1])


def test_1_algebraic_laws():
    start = time.perf_counter()
    rng = random.Random(2024)
    failures = []
    checks = 0
    for _ in range(60):
        m = random_machine(rng, rng.randint(1, 4), rng.randint(1, 4))
        for _ in range(25):
            a, b = random_word(rng, m.states, 0, 3), random_word(rng, m.states, 0, 3)
            u, v = random_word(rng, m.alphabet, 0, 6), random_word(rng, m.alphabet, 0, 6)
            ok = (act(m, a, u + v) == act(m, a, u) + act(m, dstate(m, a, u), v)
                  and dstate(m, a + b, u) == dstate(m, a, u) + dstate(m, b, act(m, a, u))
                  and act(m, a + b, u) == act(m, b, act(m, a, u))
                  and dstate(m, a, u + v) == dstate(m, dstate(m, a, u), v)
                  and len(act(m, a, u)) == len(u)
                  and act(m, a, u + v)[:len(u)] == act(m, a, u))
            checks += 1
            if not ok:
                failures.append((m, a, b, u, v))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record(1, "extension laws, length and prefix preservation", ok, elapsed,
           f"60 machines, {checks} cases, {len(failures)} failures")
    assert ok


def test_2_equality_oracles_agree():
    start = time.perf_counter()
    rng = random.Random(77)
    triples, skipped = oracle_triples(rng, 200)
    disagreements, equal_count = 0, 0
    for m, u, v, depth in triples:
        d = canonicalize(m, u) == canonicalize(m, v)
        b = equal(m, u, v)
        o = equal_bruteforce(m, u, v, depth)
        equal_count += d
        disagreements += not (d == b == o)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and len(triples) >= 200
    record(2, "digest == bisimulation == brute force", ok, elapsed,
           f"{len(triples)} triples ({equal_count} equal), {disagreements} disagreements, "
           f"{skipped} draws skipped as too large for the oracle")
    assert ok


def test_3_vert_finite_direction():
    start = time.perf_counter()
    ts = tileset(T_VERT)
    red = build_reduction(ts)
    least = least_untileable_n(ts, 5)
    bound = finiteness_bound(ts, 1)
    verdict = enumerate_semigroup(red.machine)
    claim = verify_claim(red, 1, 3, mode="exhaustive")
    elapsed = time.perf_counter() - start
    ok = (least.status == "found" and least.n == 1 and bound == 7
          and isinstance(verdict, Finite) and verdict.size == 1 and verdict.size <= bound
          and claim["pass"] and elapsed < 1)
    record(3, "T_vert: n=1, bound 7, Finite(1), claim exhaustive", ok, elapsed,
           f"n={least.n} bound={bound} size={verdict.size} claim_cases={claim['checked']}")
    assert ok


def test_4_mono_infinite_direction():
    start = time.perf_counter()
    ts = tileset(T_MONO)
    red = build_reduction(ts)
    torus = find_torus_tiling(ts, 4, 4).tiling
    lemma = verify_lemma1(red, torus, 8, 8, 32)
    # nine digests: the generator t as baseline, then the bottom powers m = 1..8
    digests = [canonicalize(red.machine, ["t"]).digest] + [f.digest for f in bottom_powers(red, 8)[1:]]
    verdict = enumerate_semigroup(red.machine, Budget(max_elements=500))
    elapsed = time.perf_counter() - start
    ok = ((torus.px, torus.py) == (1, 1) and lemma["pass"] and lemma["checked"] == 81
          and len(set(digests)) == 9 and isinstance(verdict, BudgetExceeded)
          and verdict.size >= 500 and elapsed < 10)
    record(4, "T_mono: 1x1 torus, lemma M=N=8 L=32, 9 distinct digests, budget exceeded", ok, elapsed,
           f"pairs={lemma['checked']} distinct={len(set(digests))} found={verdict.size}")
    assert ok


def test_5_stripes():
    start = time.perf_counter()
    ts = tileset(T_STRIPES)
    red = build_reduction(ts)
    torus = find_torus_tiling(ts, 4, 4).tiling
    lemma = verify_lemma1(red, torus, 6, 6, 24)
    rep = semidecide(ts)
    elapsed = time.perf_counter() - start
    ok = (is_nw_deterministic(ts) is None and (torus.px, torus.py) == (1, 2)
          and lemma["pass"] and rep["status"] == "infinite_certified" and elapsed < 10)
    record(5, "T_stripes: NW ok, 1x2 torus, lemma M=N=6 L=24, infinite", ok, elapsed)
    assert ok


def test_6_bottom_power_vs_sink():
    start = time.perf_counter()
    vert = add_sink(build_reduction(tileset(T_VERT)))
    mono = add_sink(build_reduction(tileset(T_MONO)))
    r_vert = order_search(vert, [BOT], ["c"], 50)
    r_mono = order_search(mono, [BOT], ["c"], 50)
    elapsed = time.perf_counter() - start
    ok = r_vert.n == 1 and r_mono.n is None
    record(6, "order search: vert+sink n=1, mono+sink none up to 50", ok, elapsed,
           f"vert n={r_vert.n}, mono {r_mono.reason}")
    assert ok


def _brute_tileable(tiles, w, h):
    for cells in itertools.product(tiles, repeat=w * h):
        good = True
        for y in range(h):
            for x in range(w):
                t = cells[y * w + x]
                if x + 1 < w and t[2] != cells[y * w + x + 1][3]:
                    good = False
                    break
                if y + 1 < h and t[0] != cells[(y + 1) * w + x][1]:
                    good = False
                    break
            if not good:
                break
        if good:
            return True
    return False


def test_7_solver_exhaustive():
    start = time.perf_counter()
    all_tiles = list(itertools.product("01", repeat=4))
    sets = [[t] for t in all_tiles] + [list(p) for p in itertools.combinations(all_tiles, 2)]
    shapes = [(w, h) for w in range(1, 10) for h in range(1, 10) if w * h <= 9]
    disagreements, cases = 0, 0
    for tiles in sets:
        ts = TileSet(sorted({c for t in tiles for c in t}),
                     [Tile(f"t{i}", *t) for i, t in enumerate(tiles)])
        for w, h in shapes:
            res = tile_rectangle(ts, w, h)
            cases += 1
            disagreements += res.status == "budget_exceeded" or (res.status == "found") != _brute_tileable(tiles, w, h)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0
    record(7, "solver agrees with brute force (<=2 tiles, <=2 colors, area <= 9)", ok, elapsed,
           f"{len(sets)} tile sets x {len(shapes)} shapes = {cases} cases, {disagreements} disagreements")
    assert ok


def test_8_determinism():
    start = time.perf_counter()
    here = Path(__file__).parent
    first = fixture_reports()
    second = fixture_reports()
    outputs = []
    for env in ({"PYTHONHASHSEED": "1"}, {"PYTHONHASHSEED": "2", "TILEMEALY_PURE": "1"}):
        proc = subprocess.run([sys.executable, str(here / "acceptance_fixtures.py")],
                              capture_output=True, text=True, cwd=here,
                              env={**os.environ, **env}, check=True)
        outputs.append(proc.stdout)
    elapsed = time.perf_counter() - start
    ok = first == second == outputs[0] == outputs[1]
    record(8, "fixture suite JSON byte-identical across runs, hash seeds, backends", ok, elapsed,
           f"{len(first)} bytes")
    assert ok
