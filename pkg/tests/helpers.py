import itertools
import random

from tilemealy.mealy import MealyAutomaton
from tilemealy.tiles import TileSet

T_MONO = {"t": (0, 0, 0, 0)}
T_VERT = {"t": (0, 1, 0, 0)}
T_STRIPES = {"a": (0, 1, 0, 0), "b": (1, 0, 1, 1)}
BOT = "_bot"


def tileset(edges):
    return TileSet.from_edges(edges)


def random_machine(rng: random.Random, na: int, nk: int) -> MealyAutomaton:
    states = [f"q{i}" for i in range(na)]
    letters = [f"x{i}" for i in range(nk)]
    delta = {(a, x): rng.choice(states) for a in states for x in letters}
    sigma = {(a, x): rng.choice(letters) for a in states for x in letters}
    return MealyAutomaton(states, letters, delta, sigma)


def random_word(rng, pool, lo, hi):
    return tuple(rng.choice(list(pool)) for _ in range(rng.randint(lo, hi)))


def words_upto(letters, n):
    for k in range(n + 1):
        yield from itertools.product(letters, repeat=k)


def identity_machine():
    return MealyAutomaton(["a"], ["0", "1"], {("a", "0"): "a", ("a", "1"): "a"},
                          {("a", "0"): "0", ("a", "1"): "1"})


ORACLE_LEAVES = 1 << 22


def oracle_triples(rng, count, max_states=4, max_letters=4, max_len=3):
    """Random (machine, u, v, depth) with depth = reached(u) + reached(v).

    Draws whose brute-force word tree exceeds ORACLE_LEAVES leaves are skipped;
    returns the triples and the number skipped.
    """
    from tilemealy.semigroup import reached_count
    out, skipped = [], 0
    while len(out) < count:
        m = random_machine(rng, rng.randint(1, max_states), rng.randint(1, max_letters))
        u = random_word(rng, m.states, 1, max_len)
        v = random_word(rng, m.states, 1, max_len) if rng.random() < 0.7 else _related(rng, m, u)
        depth = reached_count(m, u) + reached_count(m, v)
        if len(m.alphabet) ** depth > ORACLE_LEAVES:
            skipped += 1
            continue
        out.append((m, u, v, depth))
    return out, skipped


def _related(rng, m, u):
    # a word sharing structure with u, so equal pairs are not vanishingly rare
    choice = rng.randrange(3)
    if choice == 0:
        return u
    if choice == 1:
        return u + u[-1:]
    return tuple(reversed(u))
