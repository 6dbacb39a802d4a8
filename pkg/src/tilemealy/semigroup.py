"""Elements of the semigroup generated by a Mealy automaton.

Each element sigma_u is represented by the minimal Mealy machine of the
transformation, relabelled in breadth-first order.  Two state words give the
same canonical encoding exactly when they induce the same map on words.
"""
from __future__ import annotations

import struct
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from tilemealy import _kernels
from tilemealy._kernels import CapExceeded
from tilemealy.mealy import MealyAutomaton, MealyError


@dataclass(frozen=True)
class Budget:
    max_elements: int = 10_000
    max_power_states: int = 100_000
    max_word_length: int = 64

    def __post_init__(self):
        for name in ("max_elements", "max_power_states", "max_word_length"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def to_json(self) -> dict:
        return {"max_elements": self.max_elements, "max_power_states": self.max_power_states,
                "max_word_length": self.max_word_length}


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True, eq=False)
class CanonicalTransformation:
    """Minimal, BFS-labelled machine of one word transformation."""

    n: int
    k: int
    trans: tuple
    out: tuple
    encoding: bytes = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "trans", tuple(self.trans))
        object.__setattr__(self, "out", tuple(self.out))
        size = len(self.trans)
        enc = struct.pack(f"<II{size}I{size}I", self.n, self.k, *self.trans, *self.out)
        object.__setattr__(self, "encoding", enc)

    @property
    def digest(self) -> str:
        return self.encoding.hex()

    def __eq__(self, other):
        if not isinstance(other, CanonicalTransformation):
            return NotImplemented
        return self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)

    def apply(self, word: Sequence[int]) -> tuple[int, ...]:
        q, res = 0, []
        for x in word:
            j = q * self.k + x
            res.append(self.out[j])
            q = self.trans[j]
        return tuple(res)

    def then(self, other: "CanonicalTransformation", cap: int = DEFAULT_BUDGET.max_power_states
             ) -> "CanonicalTransformation":
        """The transformation ``other(self(w))``; as semigroup words, sigma_u * sigma_v."""
        if other.k != self.k:
            raise MealyError("alphabet sizes differ")
        t, o, n = _kernels.compose(self.trans, self.out, self.n, other.trans, other.out,
                                   other.n, self.k, cap)
        return _from_tables(t, o, n, self.k)


def _from_tables(trans, out, n, k) -> CanonicalTransformation:
    t, o, m = _kernels.canonical(trans, out, n, k)
    return CanonicalTransformation(m, k, t, o)


def identity_transformation(k: int) -> CanonicalTransformation:
    return CanonicalTransformation(1, k, [0] * k, list(range(k)))


class PowerMachine:
    """Machine whose states are the state words reachable from ``initial``.

    Reading x in state word v emits sigma_v(x) and moves to delta_x(v).
    """

    def __init__(self, base: MealyAutomaton, initial: Sequence[str], cap: int):
        self.base = base
        self.initial = tuple(initial)
        self.trans, self.out, self.size = _kernels.power_explore(
            base.delta_ids, base.sigma_ids, len(base.alphabet),
            base.states.ids(self.initial), cap)

    def canonical(self) -> CanonicalTransformation:
        return _from_tables(self.trans, self.out, self.size, len(self.base.alphabet))


def reached_count(machine: MealyAutomaton, u: Sequence[str], budget: Budget = DEFAULT_BUDGET) -> int:
    return PowerMachine(machine, u, budget.max_power_states).size


def canonicalize(machine: MealyAutomaton, u: Sequence[str],
                 budget: Budget = DEFAULT_BUDGET) -> CanonicalTransformation:
    """Canonical form of sigma_u.  Raises CapExceeded past ``max_power_states``."""
    if len(u) == 0:
        raise MealyError("state word must be nonempty")
    return PowerMachine(machine, u, budget.max_power_states).canonical()


def equal(machine: MealyAutomaton, u: Sequence[str], v: Sequence[str],
          budget: Budget = DEFAULT_BUDGET) -> bool:
    """Decide sigma_u == sigma_v by a bisimulation walk over pairs of state words."""
    if not u or not v:
        raise MealyError("state words must be nonempty")
    k = len(machine.alphabet)
    d, s = machine.delta_ids, machine.sigma_ids

    def step(word, x):
        nxt = []
        for a in word:
            j = a * k + x
            nxt.append(d[j])
            x = s[j]
        return tuple(nxt), x

    start = (machine.states.ids(u), machine.states.ids(v))
    seen = {start}
    left, right = {start[0]}, {start[1]}
    todo = deque([start])
    cap = budget.max_power_states
    while todo:
        p, q = todo.popleft()
        for x in range(k):
            p2, y1 = step(p, x)
            q2, y2 = step(q, x)
            if y1 != y2:
                return False
            pair = (p2, q2)
            if pair not in seen:
                seen.add(pair)
                left.add(p2)
                right.add(q2)
                if len(left) > cap or len(right) > cap:
                    raise CapExceeded(cap)
                todo.append(pair)
    return True


_BRUTE_ROWS = 1 << 20


def equal_bruteforce(machine: MealyAutomaton, u: Sequence[str], v: Sequence[str], depth: int) -> bool:
    """Compare sigma_u and sigma_v on every word of length <= depth.

    Test oracle: evaluates the machine letter by letter over the whole word
    tree, level by level, vectorized over all words of one length.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    k = len(machine.alphabet)
    na = len(machine.states)
    d = np.asarray(machine.delta_ids, dtype=np.int64).reshape(na, k)
    s = np.asarray(machine.sigma_ids, dtype=np.int64).reshape(na, k)
    U = np.asarray([machine.states.ids(u)], dtype=np.int64).reshape(1, len(u))
    V = np.asarray([machine.states.ids(v)], dtype=np.int64).reshape(1, len(v))

    def run(states, letters):
        states = states.copy()
        x = letters.copy()
        for i in range(states.shape[1]):
            a = states[:, i].copy()
            states[:, i] = d[a, x]
            x = s[a, x]
        return states, x

    def walk(U, V, remaining):
        while remaining:
            rows = U.shape[0]
            if rows * k > _BRUTE_ROWS and rows > 1:
                half = rows // 2
                return walk(U[:half], V[:half], remaining) and walk(U[half:], V[half:], remaining)
            letters = np.tile(np.arange(k), rows)
            U = np.repeat(U, k, axis=0)
            V = np.repeat(V, k, axis=0)
            U, yu = run(U, letters)
            V, yv = run(V, letters)
            if not np.array_equal(yu, yv):
                return False
            remaining -= 1
        return True

    return walk(U, V, depth)


# -- enumeration -----------------------------------------------------------------

@dataclass
class Finite:
    size: int
    elements: list
    words: list
    budget: Budget

    verdict = "finite"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "size": self.size,
                "elements": [e.digest for e in self.elements],
                "words": [list(w) for w in self.words], "budget": self.budget.to_json()}


@dataclass
class BudgetExceeded:
    size: int
    elements: list
    words: list
    budget: Budget
    reason: str

    verdict = "budget_exceeded"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "size": self.size,
                "elements": [e.digest for e in self.elements],
                "words": [list(w) for w in self.words], "budget": self.budget.to_json(),
                "reason": self.reason}


@dataclass
class InfiniteCertified:
    certificate: dict

    verdict = "infinite"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "certificate": self.certificate}


def enumerate_semigroup(machine: MealyAutomaton, budget: Budget = DEFAULT_BUDGET):
    """Breadth-first closure of the generators under right multiplication.

    Returns :class:`Finite` when the closure completes, else
    :class:`BudgetExceeded` with what was found.  Never claims infiniteness.
    """
    cap = budget.max_power_states
    elements: list = []
    words: list = []
    index: dict = {}

    def stop(reason):
        return BudgetExceeded(len(elements), elements, words, budget, reason)

    def add(elem, word):
        if elem in index:
            return True
        if len(elements) >= budget.max_elements:
            elements.append(elem)
            words.append(word)
            return False
        index[elem] = len(elements)
        elements.append(elem)
        words.append(word)
        queue.append(len(elements) - 1)
        return True

    queue: deque = deque()
    try:
        gens = [canonicalize(machine, [a], budget) for a in machine.states]
    except CapExceeded:
        return stop("max_power_states")
    for a, g in zip(machine.states, gens):
        if not add(g, (a,)):
            return stop("max_elements")
    while queue:
        i = queue.popleft()
        elem, word = elements[i], words[i]
        if len(word) >= budget.max_word_length:
            return stop("max_word_length")
        for a, g in zip(machine.states, gens):
            try:
                prod = elem.then(g, cap)
            except CapExceeded:
                return stop("max_power_states")
            if not add(prod, word + (a,)):
                return stop("max_elements")
    return Finite(len(elements), elements, words, budget)


@dataclass
class OrderResult:
    n: int | None
    reason: str
    steps: int

    def to_json(self) -> dict:
        return {"n": self.n, "reason": self.reason, "steps": self.steps}


def order_search(machine: MealyAutomaton, f: Sequence[str], g: Sequence[str], max_n: int,
                 budget: Budget = DEFAULT_BUDGET) -> OrderResult:
    """Least n <= max_n with sigma_f^n == sigma_g.

    Stops early once the powers of sigma_f start repeating without hitting g.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    cf = canonicalize(machine, f, budget)
    cg = canonicalize(machine, g, budget)
    power = cf
    seen = {}
    for n in range(1, max_n + 1):
        if power == cg:
            return OrderResult(n, "found", n)
        if power in seen:
            return OrderResult(None, "entered cycle", n)
        seen[power] = n
        power = power.then(cf, budget.max_power_states)
    return OrderResult(None, "max_n reached", max_n)
