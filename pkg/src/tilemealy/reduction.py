"""Mealy automaton of an NW-deterministic tile set, and its certificates.

The automaton reads a diagonal of tiles and writes the diagonal just below it;
``_bot`` marks a position where no tile fits.  A periodic tiling of the plane
makes the powers of the bottom generator pairwise distinct (infinite
semigroup); an untileable square forces every long product to end in bottoms
(finite semigroup).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from tilemealy.mealy import EventuallyPeriodicWord, MealyAutomaton, act, act_prefix
from tilemealy.semigroup import (Budget, Finite, canonicalize, enumerate_semigroup,
                                 identity_transformation, order_search)
from tilemealy.tiles import (DEFAULT_NODE_BUDGET, RectTiling, TileSet, TorusTiling, Violation,
                             is_nw_deterministic, tile_rectangle, torus_attempt, torus_periods,
                             validate_tiling)

BOTTOM = "_bot"
SINK = "c"


class NotNWDeterministic(ValueError):
    def __init__(self, pair):
        super().__init__(f"tile set is not NW-deterministic: {pair[0]!r} and {pair[1]!r} "
                         "share north and west colors")
        self.pair = pair


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionAutomaton:
    machine: MealyAutomaton
    tileset: TileSet
    bottom: str = BOTTOM

    @property
    def tile_map(self) -> dict:
        return {t.name: t.name for t in self.tileset}


def build_reduction(tileset: TileSet) -> ReductionAutomaton:
    """States and letters are the tiles (declaration order) followed by ``_bot``.

    delta(a, x) = x.  sigma(s, t) is the tile r with r_N = t_S and r_W = s_E
    when such a tile exists, else ``_bot``; anything involving ``_bot`` gives
    ``_bot``.
    """
    clash = is_nw_deterministic(tileset)
    if clash:
        raise NotNWDeterministic(clash)
    if BOTTOM in tileset:
        raise ValueError(f"tile name {BOTTOM!r} is reserved")
    by_nw = {(r.north, r.west): r.name for r in tileset}
    letters = tileset.names + [BOTTOM]
    delta, sigma = {}, {}
    for a in letters:
        for x in letters:
            delta[a, x] = x
            if a == BOTTOM or x == BOTTOM:
                sigma[a, x] = BOTTOM
            else:
                sigma[a, x] = by_nw.get((tileset[x].south, tileset[a].east), BOTTOM)
    return ReductionAutomaton(MealyAutomaton(letters, letters, delta, sigma), tileset)


def sink_name(red: ReductionAutomaton) -> str:
    """``c``, or ``c`` prefixed with underscores if a tile already uses the name."""
    name = SINK
    while name in red.machine.states:
        name = "_" + name
    return name


def add_sink(red: ReductionAutomaton, name: str | None = None) -> MealyAutomaton:
    """Extra state ``name`` with sigma(c, x) = bottom and delta(c, x) = c."""
    m = red.machine
    if name is None:
        name = sink_name(red)
    if name in m.states:
        raise ValueError(f"state {name!r} already exists")
    delta, sigma = m.tables()
    for x in m.alphabet:
        delta[name, x] = name
        sigma[name, x] = red.bottom
    return MealyAutomaton(tuple(m.states) + (name,), m.alphabet, delta, sigma)


def diagonal_word(torus: TorusTiling, n: int, tile_map: dict | None = None) -> EventuallyPeriodicWord:
    """The word (t(k + n, k))_k read off the periodic extension of ``torus``."""
    period = math.lcm(torus.px, torus.py)
    cycle = [torus.at(k + n, k) for k in range(period)]
    if tile_map is not None:
        cycle = [tile_map[c] for c in cycle]
    return EventuallyPeriodicWord((), cycle)


def _require_valid(red: ReductionAutomaton, torus: TorusTiling):
    bad = validate_tiling(red.tileset, torus)
    if bad:
        raise PreconditionError(f"torus tiling is not valid: {bad[0]}")


def bottom_powers(red: ReductionAutomaton, m_max: int, budget: Budget = Budget()):
    """Canonical forms of sigma_bot^m for m = 0..m_max (m = 0 is the identity map)."""
    k = len(red.machine.alphabet)
    forms = [identity_transformation(k)]
    if m_max >= 1:
        gen = canonicalize(red.machine, [red.bottom], budget)
        forms.append(gen)
        for _ in range(2, m_max + 1):
            forms.append(forms[-1].then(gen, budget.max_power_states))
    return forms


def verify_lemma1(red: ReductionAutomaton, torus: TorusTiling, M: int, N: int,
                  L: int | None = None, budget: Budget = Budget()) -> dict:
    """Check sigma_bot^m(w_n) = bot^m w_{m+n} on length-L prefixes for m <= M, n <= N,
    and that sigma_bot^0 .. sigma_bot^M are pairwise distinct."""
    if L is None:
        L = 4 * (M + N)
    if L <= M:
        raise ValueError("prefix length must exceed M")
    _require_valid(red, torus)
    report = {"lemma": "lemma1",
              "parameters": {"M": M, "N": N, "L": L, "px": torus.px, "py": torus.py},
              "pass": True, "checked": 0}
    m_ = red.machine
    for m in range(M + 1):
        for n in range(N + 1):
            got = act_prefix(m_, [red.bottom] * m, diagonal_word(torus, n), L)
            want = (red.bottom,) * m + diagonal_word(torus, m + n).take(L - m)
            report["checked"] += 1
            if got != want:
                report["pass"] = False
                report["counterexample"] = {"m": m, "n": n, "got": list(got), "expected": list(want)}
                return report
    digests = [f.digest for f in bottom_powers(red, M, budget)]
    report["distinct_powers"] = len(set(digests))
    if len(set(digests)) != len(digests):
        first = next(i for i, d in enumerate(digests) if digests.index(d) != i)
        report["pass"] = False
        report["counterexample"] = {"repeated_power": first, "equals_power": digests.index(digests[first])}
    return report


def verify_claim(red: ReductionAutomaton, n: int, L: int, mode: str = "exhaustive",
                 count: int = 10_000, seed: int = 0, cap: int = 10**7,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> dict:
    """Check sigma_u(pq) = sigma_u(p) bot^L for u in A^{2n}, p in Sigma^n, |q| = L.

    Requires the (n+1) x (n+1) square to be untileable, which is re-proved here.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    square = tile_rectangle(red.tileset, n + 1, n + 1, node_budget)
    if square.status != "none":
        raise PreconditionError(f"the {n + 1}x{n + 1} square is not certified untileable "
                                f"(search status {square.status})")
    m = red.machine
    states, letters = list(m.states), list(m.alphabet)
    total = len(states) ** (2 * n) * len(letters) ** (n + L)
    report = {"lemma": "claim", "parameters": {"n": n, "L": L, "mode": mode, "seed": seed},
              "pass": True, "checked": 0}
    tail = (red.bottom,) * L
    if mode == "exhaustive":
        if total > cap:
            raise PreconditionError(f"exhaustive check needs {total} evaluations (cap {cap}); use sampling")
        cases = ((u, p, q) for u in itertools.product(states, repeat=2 * n)
                 for p in itertools.product(letters, repeat=n)
                 for q in itertools.product(letters, repeat=L))
    elif mode == "sample":
        rng = random.Random(seed)
        report["parameters"]["count"] = count
        cases = ((tuple(rng.choice(states) for _ in range(2 * n)),
                  tuple(rng.choice(letters) for _ in range(n)),
                  tuple(rng.choice(letters) for _ in range(L))) for _ in range(count))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for u, p, q in cases:
        report["checked"] += 1
        got = act(m, u, p + q)
        want = act(m, u, p) + tail
        if got != want:
            report["pass"] = False
            report["counterexample"] = {"u": list(u), "p": list(p), "q": list(q), "got": list(got)}
            break
    return report


def finiteness_bound(tileset: TileSet, n: int) -> int:
    """Upper bound on the semigroup size given that the (n+1)^2 square is untileable."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = len(tileset) + 1
    maps = a ** n
    return 1 + sum(a ** k for k in range(1, 2 * n)) + maps ** maps


@dataclass
class TilingWindow:
    """Rows f(i, .) = sigma_{u_1..u_i}(w) for i = 0..|u| and their tile reading.

    Row entry f(i, j) sits at plane cell (j, j - i).
    """

    rows: list
    windows: int = 0
    valid_windows: int = 0
    invalid: list = field(default_factory=list)
    law_holds: bool = True
    placement_violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.windows > 0 and self.valid_windows == self.windows and not self.placement_violations

    def to_json(self) -> dict:
        return {"rows": [list(r) for r in self.rows], "windows": self.windows,
                "valid_windows": self.valid_windows, "invalid": self.invalid,
                "law_holds": self.law_holds,
                "placement_violations": [v.to_json() for v in self.placement_violations],
                "valid": self.valid}


def extract_window(red: ReductionAutomaton, u, w) -> TilingWindow:
    m = red.machine
    bot = red.bottom
    rows = [tuple(w)]
    for a in u:
        rows.append(act(m, [a], rows[-1]))
    win = TilingWindow(rows)
    ts = red.tileset
    for i in range(len(rows) - 1):
        for j in range(len(w) - 1):
            s, t, r = rows[i][j], rows[i][j + 1], rows[i + 1][j + 1]
            if m.sigma(s, t) != r:
                win.law_holds = False
            if bot in (s, t, r):
                continue
            win.windows += 1
            if ts[r].north == ts[t].south and ts[r].west == ts[s].east:
                win.valid_windows += 1
            else:
                win.invalid.append([i, j])
    # the non-bottom entries as a partial tiling of the plane
    placed = {}
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x != bot:
                placed[j, j - i] = x
    for (x, y), name in placed.items():
        t = ts[name]
        above = placed.get((x, y + 1))
        if above is not None and t.north != ts[above].south:
            win.placement_violations.append(
                Violation("vertical", (x, y), (x, y + 1), (t.north, ts[above].south)))
        right = placed.get((x + 1, y))
        if right is not None and t.east != ts[right].west:
            win.placement_violations.append(
                Violation("horizontal", (x, y), (x + 1, y), (t.east, ts[right].west)))
    return win


def square_from_window(win: TilingWindow, n: int, k: int) -> RectTiling | None:
    """The (n+1) x (n+1) block f(i + j, i + k), 0 <= i, j <= n, as a rectangle.

    Needs at least 2n + 1 rows and n + k + 1 columns; None if any entry is bottom.
    """
    cells = {}
    for i in range(n + 1):
        for j in range(n + 1):
            name = win.rows[i + j][i + k]
            if name == BOTTOM:
                return None
            cells[i, n - j] = name  # plane (i + k, k - j), shifted to the origin
    return RectTiling(n + 1, n + 1, tuple(cells[x, y] for y in range(n + 1) for x in range(n + 1)))


# -- semi-decision driver -------------------------------------------------------

@dataclass(frozen=True)
class Budgets:
    node_budget: int = DEFAULT_NODE_BUDGET
    max_n: int = 8
    max_px: int = 6
    max_py: int = 6
    max_elements: int = 10_000
    max_power_states: int = 100_000
    lemma_m: int = 4
    lemma_n: int = 4

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value < 1:
                raise ValueError(f"{name} must be positive")

    def semigroup(self) -> Budget:
        return Budget(max_elements=self.max_elements, max_power_states=self.max_power_states)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def semidecide(tileset: TileSet, budgets: Budgets = Budgets()) -> dict:
    """Alternate periodic-tiling search and untileable-square search.

    One period attempt and one square attempt per round, each with
    ``node_budget`` nodes.  Returns the first certificate, else status unknown.
    """
    red = build_reduction(tileset)
    periods = iter(torus_periods(budgets.max_px, budgets.max_py))
    spent = {"torus_nodes": 0, "square_nodes": 0, "rounds": 0}
    torus_live, square_live = True, True
    torus_starved = []
    next_n, largest_tileable = 0, None
    square_stop = None
    while torus_live or square_live:
        spent["rounds"] += 1
        if torus_live:
            period = next(periods, None)
            if period is None:
                torus_live = False
            else:
                res = torus_attempt(tileset, *period, budgets.node_budget)
                spent["torus_nodes"] += res.nodes
                if res.status == "found":
                    return _infinite(red, res.tiling, budgets, spent)
                if res.status == "budget_exceeded":
                    torus_starved.append(list(period))
        if square_live:
            if next_n > budgets.max_n:
                square_live, square_stop = False, "max_n reached"
            else:
                res = tile_rectangle(tileset, next_n + 1, next_n + 1, budgets.node_budget)
                spent["square_nodes"] += res.nodes
                if res.status == "none":
                    return _finite(red, next_n, budgets, spent)
                if res.status == "budget_exceeded":
                    square_live, square_stop = False, "budget_exceeded"
                else:
                    largest_tileable = next_n
                    next_n += 1
    return {"status": "unknown",
            "partials": {"torus_starved_periods": torus_starved,
                         "largest_tileable_square_n": largest_tileable,
                         "square_search_stopped": square_stop},
            "budgets": budgets.to_json(), "budgets_spent": spent}


def _infinite(red, torus, budgets, spent):
    report = verify_lemma1(red, torus, budgets.lemma_m, budgets.lemma_n, budget=budgets.semigroup())
    return {"status": "infinite_certified",
            "certificate": {"torus": torus.to_json(), "lemma1": report},
            "budgets": budgets.to_json(), "budgets_spent": spent}


def _finite(red, n, budgets, spent):
    bound = finiteness_bound(red.tileset, n)
    verdict = enumerate_semigroup(red.machine, budgets.semigroup())
    exact = verdict.size if isinstance(verdict, Finite) else None
    cert = {"n": n, "bound": bound, "exact_size": exact, "enumeration": verdict.verdict}
    if exact is not None:
        cert["size_within_bound"] = exact <= bound
        # powers of the bottom generator lie in the enumerated semigroup and
        # stay at the sink map once they reach it, so its size bounds the search
        sink = add_sink(red)
        order = order_search(sink, [red.bottom], [sink_name(red)], exact, budgets.semigroup())
        cert["bottom_power_equals_sink"] = order.n
    return {"status": "finite_certified", "certificate": cert,
            "budgets": budgets.to_json(), "budgets_spent": spent}
