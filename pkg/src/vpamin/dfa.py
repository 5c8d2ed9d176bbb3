"""Deterministic finite automata with partial transition functions.

States are dense integers ``0..num_states-1``. A missing entry in the
transition map means the run falls off and the word is rejected; use
:func:`complete` to make the sink explicit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError

Symbol = str
Word = tuple[Symbol, ...]
TransitionSpec = Union[Mapping[tuple[int, Symbol], int], Iterable[tuple[int, Symbol, int]]]


@dataclass(frozen=True)
class Verdict:
    """Outcome of an equivalence check.

    ``counterexample`` is ``None`` when the two languages are equal. The
    empty word is a legitimate counterexample, so test ``equal`` rather than
    the truthiness of the witness.
    """

    counterexample: Word | None = None

    @property
    def equal(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.equal


@dataclass(frozen=True, eq=True)
class Dfa:
    num_states: int
    alphabet: tuple[Symbol, ...]
    transitions: dict[tuple[int, Symbol], int] = field(compare=True)
    initial: int = 0
    finals: frozenset[int] = frozenset()

    def __init__(
        self,
        num_states: int,
        alphabet: Iterable[Symbol],
        transitions: TransitionSpec = (),
        initial: int = 0,
        finals: Iterable[int] = (),
    ) -> None:
        alphabet = tuple(alphabet)
        if isinstance(transitions, Mapping):
            table = dict(transitions)
        else:
            table = {}
            for src, sym, dst in transitions:
                if (src, sym) in table and table[src, sym] != dst:
                    raise InputError(f"two targets for ({src}, {sym!r})")
                table[src, sym] = dst
        object.__setattr__(self, "num_states", int(num_states))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "transitions", table)
        object.__setattr__(self, "initial", int(initial))
        object.__setattr__(self, "finals", frozenset(finals))
        self._check()

    def _check(self) -> None:
        n = self.num_states
        if n < 1:
            raise InputError("a DFA needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("duplicate symbol in alphabet")
        if not 0 <= self.initial < n:
            raise InputError(f"initial state {self.initial} out of range")
        for q in self.finals:
            if not 0 <= q < n:
                raise InputError(f"final state {q} out of range")
        symbols = set(self.alphabet)
        for (src, sym), dst in self.transitions.items():
            if sym not in symbols:
                raise InputError(f"transition on unknown symbol {sym!r}")
            if not (0 <= src < n and 0 <= dst < n):
                raise InputError(f"transition {src} {sym} {dst} references an unknown state")

    def __hash__(self) -> int:
        return hash((self.num_states, self.alphabet, self.initial, self.finals,
                     frozenset(self.transitions.items())))

    def step(self, state: int, symbol: Symbol) -> int | None:
        return self.transitions.get((state, symbol))

    def is_complete(self) -> bool:
        return len(self.transitions) == self.num_states * len(self.alphabet)

    def with_initial(self, initial: int) -> "Dfa":
        return Dfa(self.num_states, self.alphabet, self.transitions, initial, self.finals)


def as_word(word: Iterable[Symbol]) -> Word:
    """Normalize a word. A plain string is read one character per symbol."""
    return tuple(word)


def member(dfa: Dfa, word: Iterable[Symbol]) -> bool:
    symbols = set(dfa.alphabet)
    q: int | None = dfa.initial
    for a in as_word(word):
        if a not in symbols:
            raise InputError(f"symbol {a!r} is not in the alphabet")
        if q is not None:
            q = dfa.transitions.get((q, a))
    return q is not None and q in dfa.finals


def complete(dfa: Dfa) -> Dfa:
    """Add a single sink state if (and only if) some transition is missing."""
    if dfa.is_complete():
        return dfa
    sink = dfa.num_states
    table = dict(dfa.transitions)
    for q in range(dfa.num_states + 1):
        for a in dfa.alphabet:
            table.setdefault((q, a), sink)
    return Dfa(dfa.num_states + 1, dfa.alphabet, table, dfa.initial, dfa.finals)


def reachable(dfa: Dfa, start: int | None = None) -> list[int]:
    """States reachable from ``start`` (default: the initial state), in BFS order."""
    start = dfa.initial if start is None else start
    seen = {start}
    order = [start]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for a in dfa.alphabet:
            t = dfa.transitions.get((q, a))
            if t is not None and t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def _moore_classes(dfa: Dfa, states: Sequence[int]) -> dict[int, int]:
    # dfa must be complete on ``states``
    cls = {q: int(q in dfa.finals) for q in states}
    count = len(set(cls.values()))
    while True:
        signatures: dict[tuple, int] = {}
        refined = {}
        for q in states:
            sig = (cls[q],) + tuple(cls[dfa.transitions[q, a]] for a in dfa.alphabet)
            refined[q] = signatures.setdefault(sig, len(signatures))
        cls = refined
        if len(signatures) == count:
            return cls
        count = len(signatures)


def minimize(dfa: Dfa) -> Dfa:
    """Minimal complete DFA, numbered by BFS discovery in alphabet order."""
    full = complete(dfa)
    states = reachable(full)
    cls = _moore_classes(full, states)
    rep: dict[int, int] = {}
    for q in states:
        rep.setdefault(cls[q], q)
    number = {cls[full.initial]: 0}
    queue = deque([cls[full.initial]])
    table = {}
    while queue:
        c = queue.popleft()
        q = rep[c]
        for a in full.alphabet:
            t = cls[full.transitions[q, a]]
            if t not in number:
                number[t] = len(number)
                queue.append(t)
            table[number[c], a] = number[t]
    finals = {number[cls[q]] for q in states if q in full.finals}
    return Dfa(len(number), full.alphabet, table, 0, finals)


def dead_states(dfa: Dfa) -> frozenset[int]:
    """States from which no final state can be reached."""
    back: dict[int, list[int]] = {}
    for (src, _), dst in dfa.transitions.items():
        back.setdefault(dst, []).append(src)
    alive = set(dfa.finals)
    queue = deque(alive)
    while queue:
        q = queue.popleft()
        for p in back.get(q, ()):
            if p not in alive:
                alive.add(p)
                queue.append(p)
    return frozenset(range(dfa.num_states)) - alive


def trim(dfa: Dfa) -> Dfa:
    """Minimal partial DFA: the minimal complete DFA without its dead state.

    The empty language keeps a single non-final state, since a DFA always
    has an initial state.
    """
    m = minimize(dfa)
    dead = dead_states(m)
    if m.initial in dead:
        return Dfa(1, m.alphabet, {}, 0, ())
    if not dead:
        return m
    keep = [q for q in range(m.num_states) if q not in dead]
    renum = {q: i for i, q in enumerate(keep)}
    table = {(renum[s], a): renum[t] for (s, a), t in m.transitions.items()
             if s in renum and t in renum}
    return Dfa(len(keep), m.alphabet, table, renum[m.initial], {renum[q] for q in m.finals})


def _check_same_alphabet(a: Dfa, b: Dfa) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise InputError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")


def equivalent(a: Dfa, b: Dfa) -> Verdict:
    """Compare two DFAs; on inequality return the shortlex-least distinguishing word.

    Explores the product lazily, with ``None`` standing for the implicit sink
    of a partial automaton. Ties are broken by the order of ``a.alphabet``.
    """
    _check_same_alphabet(a, b)
    start = (a.initial, b.initial)
    parent: dict[tuple, tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p is not None and p in a.finals) != (q is not None and q in b.finals):
            word = []
            node = pair
            while parent[node] is not None:
                node, sym = parent[node]
                word.append(sym)
            return Verdict(tuple(reversed(word)))
        for sym in a.alphabet:
            nxt = (
                None if p is None else a.transitions.get((p, sym)),
                None if q is None else b.transitions.get((q, sym)),
            )
            if nxt not in parent:
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return Verdict()


def relabel(dfa: Dfa, mapping: Mapping[Symbol, Symbol]) -> Dfa:
    """Rename symbols; unmapped symbols keep their name."""
    ren = lambda a: mapping.get(a, a)
    return Dfa(
        dfa.num_states,
        [ren(a) for a in dfa.alphabet],
        {(s, ren(a)): t for (s, a), t in dfa.transitions.items()},
        dfa.initial,
        dfa.finals,
    )
