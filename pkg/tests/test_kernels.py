"""The compiled kernels and the pure-Python fallback must agree exactly."""
import random

import pytest

from helpers import random_machine
from tilemealy import _kernels
from tilemealy._kernels import _pure

compiled = pytest.importorskip("tilemealy._kernels._ckernels")


def test_backend_selected():
    assert _kernels.BACKEND in ("compiled", "pure")


@pytest.mark.parametrize("seed", range(40))
def test_power_canonical_compose_agree(seed):
    rng = random.Random(seed)
    m = random_machine(rng, rng.randint(1, 4), rng.randint(1, 4))
    k = len(m.alphabet)
    u = [rng.randrange(len(m.states)) for _ in range(rng.randint(1, 4))]
    v = [rng.randrange(len(m.states)) for _ in range(rng.randint(1, 4))]
    p1 = _pure.power_explore(m.delta_ids, m.sigma_ids, k, u, 10_000)
    c1 = compiled.power_explore(m.delta_ids, m.sigma_ids, k, u, 10_000)
    assert p1 == c1
    p2 = _pure.power_explore(m.delta_ids, m.sigma_ids, k, v, 10_000)
    can1 = _pure.canonical(*p1, k)
    assert can1 == compiled.canonical(*p1, k)
    can2 = _pure.canonical(*p2, k)
    a = _pure.compose(can1[0], can1[1], can1[2], can2[0], can2[1], can2[2], k, 10_000)
    b = compiled.compose(can1[0], can1[1], can1[2], can2[0], can2[1], can2[2], k, 10_000)
    assert a == b


def test_caps_raise_in_both():
    delta = [1, 0]  # two states toggling, one letter
    sigma = [0, 0]
    for mod in (_pure, compiled):
        with pytest.raises(_kernels.CapExceeded):
            mod.power_explore(delta, sigma, 1, [0, 1, 0], 1)


@pytest.mark.parametrize("seed", range(60))
def test_grid_search_agree(seed):
    rng = random.Random(seed)
    ncolors = rng.randint(1, 3)
    ntiles = rng.randint(1, 5)
    edges = [[rng.randrange(ncolors) for _ in range(ntiles)] for _ in range(4)]
    w, h = rng.randint(1, 4), rng.randint(1, 4)
    torus = bool(rng.getrandbits(1))
    budget = rng.choice([5, 50, 10_000])
    assert (_pure.grid_search(w, h, torus, *edges, ncolors, budget)
            == compiled.grid_search(w, h, torus, *edges, ncolors, budget))
