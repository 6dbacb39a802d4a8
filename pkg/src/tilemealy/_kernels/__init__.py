"""Hot kernels: power-machine exploration, composition, canonical minimization,
and grid backtracking.

The compiled module ``_ckernels`` is used when importable; otherwise, or when
``TILEMEALY_PURE=1`` is set, the pure-Python ``_pure`` module is used.  Both
produce identical results.
"""
import os

from tilemealy._kernels import _pure
from tilemealy._kernels._pure import BUDGET, FOUND, NONE, CapExceeded

backend = _pure
if os.environ.get("TILEMEALY_PURE", "") not in ("1", "true", "yes"):
    try:
        from tilemealy._kernels import _ckernels as backend  # noqa: F811
    except ImportError:  # pragma: no cover - depends on build
        backend = _pure

_DENSE_PAIR_LIMIT = 1 << 24
BACKEND = "compiled" if backend is not _pure else "pure"


def power_explore(delta, sigma, k, init, cap):
    return backend.power_explore(delta, sigma, k, init, cap)


def compose(t1, o1, n1, t2, o2, n2, k, cap):
    # the compiled path keeps a dense n1*n2 seen-table
    if n1 * n2 > _DENSE_PAIR_LIMIT:
        return _pure.compose(t1, o1, n1, t2, o2, n2, k, cap)
    return backend.compose(t1, o1, n1, t2, o2, n2, k, cap)


def canonical(trans, out, n, k):
    return backend.canonical(trans, out, n, k)


def grid_search(width, height, torus, tn, ts, te, tw, ncolors, budget):
    return backend.grid_search(width, height, torus, tn, ts, te, tw, ncolors, budget)


__all__ = ["BACKEND", "BUDGET", "FOUND", "NONE", "CapExceeded", "backend",
           "canonical", "compose", "grid_search", "power_explore"]
