"""Mealy automata and their extended action on finite and eventually periodic words."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple  # tuple of symbol names


class MealyError(ValueError):
    """Raised for malformed machines or words."""


class ParseError(MealyError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbols; positions are the interned ids."""

    letters: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise MealyError("alphabet must be nonempty")
        index = {s: i for i, s in enumerate(letters)}
        if len(index) != len(letters):
            raise MealyError("duplicate symbol in alphabet")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, s):
        return s in self._index

    def id(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise MealyError(f"undeclared symbol {s!r}") from None

    def ids(self, word: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.id(s) for s in word)

    def names(self, ids: Iterable[int]) -> Word:
        return tuple(self.letters[i] for i in ids)


class MealyAutomaton:
    """Immutable Mealy machine (A, Sigma, delta, sigma).

    ``delta`` and ``sigma`` map ``(state, letter)`` name pairs to a state and a
    letter respectively.  Internally both are flat id tables indexed by
    ``a * len(alphabet) + x``.
    """

    __slots__ = ("states", "alphabet", "delta_ids", "sigma_ids")

    def __init__(self, states, alphabet, delta: dict, sigma: dict):
        states = states if isinstance(states, Alphabet) else Alphabet(tuple(states))
        alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(tuple(alphabet))
        errors = _table_errors(states, alphabet, delta, sigma)
        if errors:
            raise MealyError("; ".join(errors))
        k = len(alphabet)
        d = [0] * (len(states) * k)
        s = [0] * (len(states) * k)
        for (a, x), b in delta.items():
            d[states.id(a) * k + alphabet.id(x)] = states.id(b)
        for (a, x), y in sigma.items():
            s[states.id(a) * k + alphabet.id(x)] = alphabet.id(y)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta_ids", tuple(d))
        object.__setattr__(self, "sigma_ids", tuple(s))

    def __setattr__(self, name, value):
        raise AttributeError("MealyAutomaton is immutable")

    def __eq__(self, other):
        if not isinstance(other, MealyAutomaton):
            return NotImplemented
        return (self.states == other.states and self.alphabet == other.alphabet
                and self.delta_ids == other.delta_ids and self.sigma_ids == other.sigma_ids)

    def __hash__(self):
        return hash((self.states.letters, self.alphabet.letters, self.delta_ids, self.sigma_ids))

    def __repr__(self):
        return f"MealyAutomaton(states={list(self.states)}, alphabet={list(self.alphabet)})"

    def delta(self, a: str, x: str) -> str:
        k = len(self.alphabet)
        return self.states.letters[self.delta_ids[self.states.id(a) * k + self.alphabet.id(x)]]

    def sigma(self, a: str, x: str) -> str:
        k = len(self.alphabet)
        return self.alphabet.letters[self.sigma_ids[self.states.id(a) * k + self.alphabet.id(x)]]

    def tables(self) -> tuple[dict, dict]:
        delta, sigma = {}, {}
        for a in self.states:
            for x in self.alphabet:
                delta[a, x] = self.delta(a, x)
                sigma[a, x] = self.sigma(a, x)
        return delta, sigma


def _table_errors(states: Alphabet, alphabet: Alphabet, delta: dict, sigma: dict) -> list[str]:
    errors = []
    for name, table, codomain in (("transition", delta, states), ("output", sigma, alphabet)):
        for (a, x), v in table.items():
            if a not in states:
                errors.append(f"undeclared state {a!r} in {name} table")
            if x not in alphabet:
                errors.append(f"undeclared letter {x!r} in {name} table")
            if v not in codomain:
                errors.append(f"undeclared symbol {v!r} in {name} table")
        missing = [(a, x) for a in states for x in alphabet if (a, x) not in table]
        if missing:
            errors.append(f"incomplete {name} table: missing {missing[0]!r}")
    return errors


def validate(states, alphabet, delta: dict, sigma: dict) -> list[str]:
    """Return the list of problems with the given tables (empty when well formed).

    A constructed :class:`MealyAutomaton` is always valid; this is for raw tables.
    """
    try:
        states = states if isinstance(states, Alphabet) else Alphabet(tuple(states))
        alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(tuple(alphabet))
    except MealyError as exc:
        return [str(exc)]
    return _table_errors(states, alphabet, delta, sigma)


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """Infinite word ``prefix cycle cycle cycle ...``."""

    prefix: Word
    cycle: Word

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise MealyError("cycle must be nonempty")

    def __getitem__(self, k: int):
        p = len(self.prefix)
        if k < p:
            return self.prefix[k]
        return self.cycle[(k - p) % len(self.cycle)]

    def take(self, n: int) -> Word:
        return tuple(self[k] for k in range(n))


# -- integer-level kernels used throughout the package -------------------------

def act_ids(m: MealyAutomaton, u: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
    """sigma_u(w) on interned ids; u's first state acts first."""
    k = len(m.alphabet)
    d, s = m.delta_ids, m.sigma_ids
    cur = list(u)
    out = []
    for x in w:
        for i, a in enumerate(cur):
            j = a * k + x
            cur[i] = d[j]
            x = s[j]
        out.append(x)
    return tuple(out)


def dstate_ids(m: MealyAutomaton, u: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
    k = len(m.alphabet)
    d, s = m.delta_ids, m.sigma_ids
    cur = list(u)
    for x in w:
        for i, a in enumerate(cur):
            j = a * k + x
            cur[i] = d[j]
            x = s[j]
    return tuple(cur)


# -- public name-level operations ----------------------------------------------

def act(m: MealyAutomaton, u: Sequence[str], w: Sequence[str]) -> Word:
    """Return sigma_u(w).  The empty state word acts as the identity."""
    return m.alphabet.names(act_ids(m, m.states.ids(u), m.alphabet.ids(w)))


def dstate(m: MealyAutomaton, u: Sequence[str], w: Sequence[str]) -> Word:
    """Return delta_w(u), the state word left after sigma_u has read w."""
    return m.states.names(dstate_ids(m, m.states.ids(u), m.alphabet.ids(w)))


def act_prefix(m: MealyAutomaton, u: Sequence[str], w: EventuallyPeriodicWord, length: int) -> Word:
    """Length-``length`` prefix of sigma_u applied to an infinite word."""
    if length < 0:
        raise MealyError("prefix length must be nonnegative")
    return act(m, u, w.take(length))


# -- text format ----------------------------------------------------------------

_RULE = re.compile(r"^\s*(\S+)\s*,\s*(\S+)\s*->\s*(\S+)\s*/\s*(\S+)\s*$")


def parse_automaton(text: str) -> MealyAutomaton:
    states = alphabet = None
    delta, sigma = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, _, rest = line.partition(":")
        key = head.strip()
        if key in ("states", "alphabet") and "->" not in line:
            names = rest.split()
            try:
                parsed = Alphabet(tuple(names))
            except MealyError as exc:
                raise ParseError(str(exc), lineno) from None
            if key == "states":
                if states is not None:
                    raise ParseError("duplicate states line", lineno)
                states = parsed
            else:
                if alphabet is not None:
                    raise ParseError("duplicate alphabet line", lineno)
                alphabet = parsed
            continue
        if states is None or alphabet is None:
            raise ParseError("rules must follow the states and alphabet lines", lineno)
        match = _RULE.match(line)
        if not match:
            raise ParseError("expected 's , x -> s2 / y'", lineno)
        a, x, b, y = match.groups()
        for sym, pool, grp in ((a, states, 1), (x, alphabet, 2), (b, states, 3), (y, alphabet, 4)):
            if sym not in pool:
                raise ParseError(f"undeclared symbol {sym!r}", lineno, match.start(grp) + 1)
        if (a, x) in delta:
            raise ParseError(f"duplicate rule for ({a}, {x})", lineno)
        delta[a, x] = b
        sigma[a, x] = y
    if states is None or alphabet is None:
        raise ParseError("missing states or alphabet line", 1)
    missing = [(a, x) for a in states for x in alphabet if (a, x) not in delta]
    if missing:
        raise ParseError(f"incomplete transition table: missing {missing[0]!r}",
                         len(text.splitlines()) or 1)
    return MealyAutomaton(states, alphabet, delta, sigma)


def format_automaton(m: MealyAutomaton) -> str:
    lines = ["states: " + " ".join(m.states), "alphabet: " + " ".join(m.alphabet)]
    for a in m.states:
        for x in m.alphabet:
            lines.append(f"{a} , {x} -> {m.delta(a, x)} / {m.sigma(a, x)}")
    return "\n".join(lines) + "\n"
