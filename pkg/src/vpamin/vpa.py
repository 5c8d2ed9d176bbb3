"""Visibly pushdown automata over a partitioned alphabet.

Only deterministic VPAs are accepted by the language-level operations
(membership, product, equivalence). Emptiness and summaries work on any VPA.

Acceptance ignores the stack: a word is accepted when the run ends in a
final state, whatever is left on the stack. A return read on the empty
stack has no successor and the word is rejected.
"""

from __future__ import annotations

import heapq
import operator
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, NamedTuple

from .dfa import Symbol, Verdict, Word
from .errors import ContractError, InputError

StackSymbol = Hashable
CallRule = tuple[int, Symbol, int, StackSymbol]
ReturnRule = tuple[int, Symbol, StackSymbol, int]
InternalRule = tuple[int, Symbol, int]


@dataclass(frozen=True)
class VisiblyAlphabet:
    calls: tuple[Symbol, ...] = ()
    returns: tuple[Symbol, ...] = ()
    internals: tuple[Symbol, ...] = ()

    def __post_init__(self) -> None:
        for name in ("calls", "returns", "internals"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        seen: set[Symbol] = set()
        for group in (self.calls, self.returns, self.internals):
            for a in group:
                if a in seen:
                    raise InputError(f"symbol {a!r} appears twice in the visibly pushdown alphabet")
                seen.add(a)
        if not seen:
            raise InputError("the visibly pushdown alphabet is empty")

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        """All symbols in the fixed tie-break order: calls, returns, internals."""
        return self.calls + self.returns + self.internals

    def kind(self, a: Symbol) -> str:
        if a in self.calls:
            return "call"
        if a in self.returns:
            return "return"
        if a in self.internals:
            return "internal"
        raise InputError(f"symbol {a!r} is not in the alphabet")

    def same_partition(self, other: "VisiblyAlphabet") -> bool:
        return (set(self.calls), set(self.returns), set(self.internals)) == (
            set(other.calls), set(other.returns), set(other.internals))


@dataclass(frozen=True)
class Vpa:
    alphabet: VisiblyAlphabet
    num_states: int
    initials: frozenset[int]
    finals: frozenset[int]
    stack_symbols: tuple[StackSymbol, ...]
    call_rules: frozenset[CallRule] = frozenset()
    return_rules: frozenset[ReturnRule] = frozenset()
    internal_rules: frozenset[InternalRule] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "stack_symbols", tuple(self.stack_symbols))
        for name in ("call_rules", "return_rules", "internal_rules"):
            object.__setattr__(self, name, frozenset(tuple(r) for r in getattr(self, name)))
        self._check()

    def _check(self) -> None:
        n = self.num_states
        ok = lambda q: isinstance(q, int) and 0 <= q < n
        if n < 1:
            raise InputError("a VPA needs at least one state")
        gammas = set(self.stack_symbols)
        if len(gammas) != len(self.stack_symbols):
            raise InputError("duplicate stack symbol")
        for q in self.initials | self.finals:
            if not ok(q):
                raise InputError(f"state {q} out of range")
        calls, rets, ints = (set(self.alphabet.calls), set(self.alphabet.returns),
                             set(self.alphabet.internals))
        for q, a, t, g in self.call_rules:
            if not (ok(q) and ok(t) and a in calls and g in gammas):
                raise InputError(f"bad call rule {(q, a, t, g)}")
        for q, a, g, t in self.return_rules:
            if not (ok(q) and ok(t) and a in rets and g in gammas):
                raise InputError(f"bad return rule {(q, a, g, t)}")
        for q, a, t in self.internal_rules:
            if not (ok(q) and ok(t) and a in ints):
                raise InputError(f"bad internal rule {(q, a, t)}")

    @property
    def size(self) -> int:
        return self.num_states

    @property
    def stack_bound(self) -> int:
        """The |Q|·|Σc| bound on a sufficient stack alphabet (reported, not enforced)."""
        return self.num_states * len(self.alphabet.calls)

    @property
    def initial(self) -> int:
        if len(self.initials) != 1:
            raise ContractError("the VPA does not have a single initial state")
        return next(iter(self.initials))


class DeterminismCheck(NamedTuple):
    deterministic: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.deterministic


def is_deterministic(vpa: Vpa) -> DeterminismCheck:
    """Check the three determinism clauses plus the single-initial requirement.

    On failure the witness is a pair of conflicting rules (or the two
    smallest initial states).
    """
    if len(vpa.initials) != 1:
        return DeterminismCheck(False, tuple(sorted(vpa.initials)[:2]))
    for rules, key in ((vpa.call_rules, lambda r: r[:2]),
                       (vpa.return_rules, lambda r: r[:3]),
                       (vpa.internal_rules, lambda r: r[:2])):
        seen = {}
        for rule in sorted(rules, key=repr):
            k = key(rule)
            if k in seen:
                return DeterminismCheck(False, (seen[k], rule))
            seen[k] = rule
    return DeterminismCheck(True)


def require_deterministic(vpa: Vpa) -> None:
    check = is_deterministic(vpa)
    if not check:
        raise ContractError(f"VPA is not deterministic: {check.witness}")


class _Tables:
    """Lookup tables for a deterministic VPA."""

    def __init__(self, vpa: Vpa) -> None:
        self.call = {(q, a): (t, g) for q, a, t, g in vpa.call_rules}
        self.ret = {(q, a, g): t for q, a, g, t in vpa.return_rules}
        self.int = {(q, a): t for q, a, t in vpa.internal_rules}


def member(vpa: Vpa, word: Iterable[Symbol]) -> bool:
    require_deterministic(vpa)
    tables = _Tables(vpa)
    kinds = {a: vpa.alphabet.kind(a) for a in vpa.alphabet.symbols}
    q: int | None = vpa.initial
    stack: list[StackSymbol] = []
    for a in word:
        if a not in kinds:
            raise InputError(f"symbol {a!r} is not in the alphabet")
        if q is None:
            continue
        kind = kinds[a]
        if kind == "call":
            step = tables.call.get((q, a))
            if step is None:
                q = None
            else:
                q, g = step
                stack.append(g)
        elif kind == "return":
            q = tables.ret.get((q, a, stack.pop())) if stack else None
        else:
            q = tables.int.get((q, a))
    return q is not None and q in vpa.finals


# Words are ranked shortlex by the fixed symbol order so that every derived
# word is the least one; concatenation is monotone for that order.
def _key(word: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (len(word), word)


def summaries_with_witnesses(vpa: Vpa) -> dict[tuple[int, int], Word]:
    """Well-matched reachability with a shortlex-least witness for each pair.

    The relation is the least one containing the identity, closed under
    appending an internal step, and under appending ``c·w·r`` when the call
    pushes the same stack symbol that the return pops and ``w`` is itself a
    summary word. Pairs are settled in shortlex order of their witness.
    """
    symbols = vpa.alphabet.symbols
    rank = {a: i for i, a in enumerate(symbols)}
    internal_out = defaultdict(list)
    for q, a, t in vpa.internal_rules:
        internal_out[q].append((rank[a], t))
    calls_from = defaultdict(list)  # p -> [(rank, s, gamma)]
    calls_into = defaultdict(list)  # s -> [(p, rank, gamma)]
    for p, a, s, g in vpa.call_rules:
        calls_from[p].append((rank[a], s, g))
        calls_into[s].append((p, rank[a], g))
    returns_from = defaultdict(list)  # (s', gamma) -> [(rank, t)]
    for s2, a, g, t in vpa.return_rules:
        returns_from[s2, g].append((rank[a], t))

    settled: dict[tuple[int, int], tuple[int, ...]] = {}
    by_source: dict[int, dict[int, tuple[int, ...]]] = defaultdict(dict)
    by_target: dict[int, dict[int, tuple[int, ...]]] = defaultdict(dict)
    heap: list = []

    def offer(pair, word):
        if pair not in settled:
            heapq.heappush(heap, (_key(word), pair, word))

    for q in range(vpa.num_states):
        offer((q, q), ())
    while heap:
        _, pair, word = heapq.heappop(heap)
        if pair in settled:
            continue
        settled[pair] = word
        x, y = pair
        by_source[x][y] = word
        by_target[y][x] = word
        for r, t in internal_out[y]:
            offer((x, t), word + (r,))
        # (x, y) as the outer prefix, extended by a matched call/return
        for rc, s, g in calls_from[y]:
            for s2, inner in list(by_source[s].items()):
                for rr, t in returns_from[s2, g]:
                    offer((x, t), word + (rc,) + inner + (rr,))
        # (x, y) as the inner well-matched part
        for p, rc, g in calls_into[x]:
            for rr, t in returns_from[y, g]:
                for q, outer in list(by_target[p].items()):
                    offer((q, t), outer + (rc,) + word + (rr,))
    return {pair: tuple(symbols[i] for i in w) for pair, w in settled.items()}


def summaries(vpa: Vpa) -> frozenset[tuple[int, int]]:
    return frozenset(summaries_with_witnesses(vpa))


class Emptiness(NamedTuple):
    empty: bool
    witness: Word | None = None

    def __bool__(self) -> bool:
        return self.empty


def emptiness(vpa: Vpa) -> Emptiness:
    """Decide emptiness; when non-empty return a shortlex-least accepted word.

    Reachable states are explored from the initials by well-matched segments
    (summaries) and unmatched calls; unmatched returns are never possible
    from an empty stack and are handled inside summaries otherwise.
    """
    symbols = vpa.alphabet.symbols
    rank = {a: i for i, a in enumerate(symbols)}
    summ = summaries_with_witnesses(vpa)
    succ = defaultdict(list)
    for (x, y), w in summ.items():
        if x != y:
            succ[x].append((tuple(rank[a] for a in w), y))
    for p, a, s, _ in vpa.call_rules:
        succ[p].append(((rank[a],), s))
    best: dict[int, tuple[int, ...]] = {}
    heap = [(_key(()), q, ()) for q in sorted(vpa.initials)]
    heapq.heapify(heap)
    while heap:
        _, q, word = heapq.heappop(heap)
        if q in best:
            continue
        best[q] = word
        if q in vpa.finals:
            return Emptiness(False, tuple(symbols[i] for i in word))
        for seg, t in succ[q]:
            if t not in best:
                w = word + seg
                heapq.heappush(heap, (_key(w), t, w))
    return Emptiness(True)


def _completed(vpa: Vpa) -> tuple[Vpa, int]:
    """Total version of a deterministic VPA, plus the index of its sink.

    The sink is added unconditionally so that product bookkeeping stays
    uniform; it is never final.
    """
    sink = vpa.num_states
    dead_gamma = ("#sink",)
    gammas = vpa.stack_symbols + (dead_gamma,)
    tables = _Tables(vpa)
    calls, rets, ints = set(vpa.call_rules), set(vpa.return_rules), set(vpa.internal_rules)
    for q in range(sink + 1):
        for a in vpa.alphabet.calls:
            if (q, a) not in tables.call:
                calls.add((q, a, sink, dead_gamma))
        for a in vpa.alphabet.internals:
            if (q, a) not in tables.int:
                ints.add((q, a, sink))
        for a in vpa.alphabet.returns:
            for g in gammas:
                if (q, a, g) not in tables.ret:
                    rets.add((q, a, g, sink))
    full = Vpa(vpa.alphabet, sink + 1, vpa.initials, vpa.finals, gammas, calls, rets, ints)
    return full, sink


def product(a: Vpa, b: Vpa, accept: Callable[[bool, bool], bool] = operator.and_) -> Vpa:
    """Synchronized product of two deterministic VPAs over the same alphabet.

    Both factors are completed first, so a run of the product exists exactly
    when both factors have a run or have fallen into their sink. Pair
    ``(p, q)`` becomes state ``p * (|Qb| + 1) + q``; it is final when
    ``accept(p final in a, q final in b)`` holds.
    """
    require_deterministic(a)
    require_deterministic(b)
    if not a.alphabet.same_partition(b.alphabet):
        raise InputError("the two VPAs have different alphabet partitions")
    fa, _ = _completed(a)
    fb, _ = _completed(b)
    nb = fb.num_states
    pair = lambda p, q: p * nb + q
    calls_b = defaultdict(list)
    for q, c, t, g in fb.call_rules:
        calls_b[c].append((q, t, g))
    rets_b = defaultdict(list)
    for q, r, g, t in fb.return_rules:
        rets_b[r].append((q, g, t))
    ints_b = defaultdict(list)
    for q, x, t in fb.internal_rules:
        ints_b[x].append((q, t))
    calls = {(pair(p, q), c, pair(s, t), (g, h))
             for p, c, s, g in fa.call_rules for q, t, h in calls_b[c]}
    rets = {(pair(p, q), r, (g, h), pair(s, t))
            for p, r, g, s in fa.return_rules for q, h, t in rets_b[r]}
    ints = {(pair(p, q), x, pair(s, t))
            for p, x, s in fa.internal_rules for q, t in ints_b[x]}
    gammas = tuple((g, h) for g in fa.stack_symbols for h in fb.stack_symbols)
    finals = {pair(p, q) for p in range(fa.num_states) for q in range(nb)
              if accept(p in fa.finals, q in fb.finals)}
    return Vpa(a.alphabet, fa.num_states * nb, {pair(a.initial, b.initial)}, finals,
               gammas, calls, rets, ints)


def equivalent(a: Vpa, b: Vpa) -> Verdict:
    """Language equivalence of deterministic VPAs via the xor product.

    The counterexample is the shortlex-least word accepted by exactly one of
    the two automata.
    """
    verdict = emptiness(product(a, b, operator.xor))
    return Verdict() if verdict.empty else Verdict(verdict.witness)


def included(a: Vpa, b: Vpa) -> Verdict:
    """Check L(a) ⊆ L(b); the counterexample is accepted by ``a`` only."""
    verdict = emptiness(product(a, b, lambda x, y: x and not y))
    return Verdict() if verdict.empty else Verdict(verdict.witness)
