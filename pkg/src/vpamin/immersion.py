"""Immersions: one deterministic transition graph hosting several sub-DFAs.

A sub-DFA is the graph equipped with an initial state and a final-state set;
an immersion for languages L1..Ln carries one such slot per language. Its
size is the number of states of the graph.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import dfa as dfa_mod
from . import vpa as vpa_mod
from .dfa import Dfa, Symbol, TransitionSpec, Verdict
from .errors import ContractError, InputError, ShapeError
from .vpa import VisiblyAlphabet, Vpa


@dataclass(frozen=True)
class TransitionGraph:
    num_states: int
    alphabet: tuple[Symbol, ...]
    transitions: dict[tuple[int, Symbol], int]

    def __init__(self, num_states: int, alphabet: Iterable[Symbol],
                 transitions: TransitionSpec = ()) -> None:
        # Reuse the DFA checks (range, determinism, alphabet).
        probe = Dfa(num_states, alphabet, transitions, 0, ())
        object.__setattr__(self, "num_states", probe.num_states)
        object.__setattr__(self, "alphabet", probe.alphabet)
        object.__setattr__(self, "transitions", probe.transitions)

    def __hash__(self) -> int:
        return hash((self.num_states, self.alphabet, frozenset(self.transitions.items())))


@dataclass(frozen=True)
class Slot:
    initial: int
    finals: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "finals", frozenset(self.finals))


@dataclass(frozen=True)
class Immersion:
    graph: TransitionGraph
    slots: tuple[Slot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", tuple(self.slots))
        if not self.slots:
            raise InputError("an immersion hosts at least one language")
        n = self.graph.num_states
        for i, slot in enumerate(self.slots, 1):
            if not 0 <= slot.initial < n or any(not 0 <= q < n for q in slot.finals):
                raise InputError(f"slot {i} references a state outside the graph")

    @property
    def size(self) -> int:
        return self.graph.num_states

    @property
    def alphabet(self) -> tuple[Symbol, ...]:
        return self.graph.alphabet

    def sub_dfa(self, i: int) -> Dfa:
        """Sub-DFA of slot ``i`` (0-based)."""
        slot = self.slots[i]
        g = self.graph
        return Dfa(g.num_states, g.alphabet, g.transitions, slot.initial, slot.finals)


def validate(imm: Immersion, targets: Sequence[Dfa]) -> list[Verdict]:
    """Compare every sub-DFA with its target language."""
    if len(targets) != len(imm.slots):
        raise InputError(f"{len(imm.slots)} slots but {len(targets)} targets")
    for t in targets:
        if set(t.alphabet) != set(imm.alphabet):
            raise InputError("target alphabet differs from the immersion alphabet")
    return [dfa_mod.equivalent(imm.sub_dfa(i), t) for i, t in enumerate(targets)]


def is_valid(imm: Immersion, targets: Sequence[Dfa]) -> bool:
    return all(v.equal for v in validate(imm, targets))


def disjoint_union(targets: Sequence[Dfa]) -> Immersion:
    if not targets:
        raise InputError("no target languages")
    alphabet = targets[0].alphabet
    for t in targets[1:]:
        if set(t.alphabet) != set(alphabet):
            raise InputError("targets use different alphabets")
    table = {}
    slots = []
    offset = 0
    for t in targets:
        for (s, a), d in t.transitions.items():
            table[s + offset, a] = d + offset
        slots.append(Slot(t.initial + offset, {q + offset for q in t.finals}))
        offset += t.num_states
    return Immersion(TransitionGraph(offset, alphabet, table), tuple(slots))


# --- reduction to VPAs ------------------------------------------------------

RETURN_SYMBOL = "r"


def call_symbol(i: int) -> str:
    """Call symbol for slot ``i`` (1-based)."""
    return f"c{i}"


def to_vpa(imm: Immersion) -> Vpa:
    """Deterministic VPA of size |imm| + 2 for the union of c_i · L_i · r.

    Graph states keep their indices; the fresh initial state is ``k`` and the
    fresh final state is ``k + 1``. Slot ``i`` pushes stack symbol ``str(i)``.
    """
    k = imm.size
    n = len(imm.slots)
    calls = tuple(call_symbol(i) for i in range(1, n + 1))
    clash = set(imm.alphabet) & (set(calls) | {RETURN_SYMBOL})
    if clash:
        raise InputError(f"internal symbols clash with call/return names: {sorted(clash)}")
    q0, qf = k, k + 1
    alphabet = VisiblyAlphabet(calls, (RETURN_SYMBOL,), imm.alphabet)
    call_rules = {(q0, call_symbol(i), slot.initial, str(i))
                  for i, slot in enumerate(imm.slots, 1)}
    internal_rules = {(s, a, t) for (s, a), t in imm.graph.transitions.items()}
    return_rules = {(q, RETURN_SYMBOL, str(i), qf)
                    for i, slot in enumerate(imm.slots, 1) for q in slot.finals}
    return Vpa(alphabet, k + 2, {q0}, {qf}, tuple(str(i) for i in range(1, n + 1)),
               call_rules, return_rules, internal_rules)


def _natural_key(symbol: str) -> list:
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", symbol)]


def shape_vpa(alphabet: VisiblyAlphabet) -> Vpa:
    """Three-state VPA accepting exactly Σc · Σℓ* · Σr."""
    calls = {(0, c, 1, "s") for c in alphabet.calls}
    ints = {(1, a, 1) for a in alphabet.internals}
    rets = {(1, r, "s", 2) for r in alphabet.returns}
    return Vpa(alphabet, 3, {0}, {2}, ("s",), calls, rets, ints)


def from_vpa(vpa: Vpa) -> Immersion:
    """Recover an immersion from a deterministic VPA for the union of c_i · L_i · r.

    Slots follow the natural sort order of the call symbols. The final
    states (none of which may have outgoing rules) are merged into one, so a
    VPA with a single final state yields an immersion of size |vpa| - 2.
    Rules that can never occur on an accepted run are dropped.
    """
    vpa_mod.require_deterministic(vpa)
    alpha = vpa.alphabet
    if len(alpha.returns) != 1:
        raise ShapeError(f"expected exactly one return symbol, got {list(alpha.returns)}")
    if not alpha.calls:
        raise ShapeError("no call symbols")
    outside = vpa_mod.included(vpa, shape_vpa(alpha))
    if not outside.equal:
        raise ShapeError("accepts a word outside calls·internals*·return: "
                         + " ".join(outside.counterexample))
    q0 = vpa.initial
    if any(r[0] == q0 for r in vpa.internal_rules | vpa.return_rules):
        raise ShapeError("the initial state has outgoing internal or return rules")
    for rules in (vpa.call_rules, vpa.return_rules, vpa.internal_rules):
        for r in rules:
            if r[0] in vpa.finals:
                raise ShapeError(f"final state {r[0]} has outgoing rules")

    calls = sorted(alpha.calls, key=_natural_key)
    entry = {}
    for q, c, t, g in vpa.call_rules:
        if q == q0:
            entry[c] = (t, g)
    for c in calls:
        if c not in entry:
            raise ShapeError(f"no call rule for {c!r} from the initial state")
        if entry[c][0] == q0 or entry[c][0] in vpa.finals:
            raise ShapeError(f"call {c!r} leads to the initial or a final state")

    dropped = {q0} | set(vpa.finals)
    keep = [q for q in range(vpa.num_states) if q not in dropped]
    renum = {q: i for i, q in enumerate(keep)}
    table = {(renum[s], a): renum[t] for s, a, t in vpa.internal_rules
             if s in renum and t in renum}
    pops_to_final = defaultdict(set)
    for q, _, g, t in vpa.return_rules:
        if t in vpa.finals and q in renum:
            pops_to_final[g].add(renum[q])
    slots = [Slot(renum[entry[c][0]], pops_to_final[entry[c][1]]) for c in calls]
    if not keep:
        raise ShapeError("no states left for the transition graph")
    return Immersion(TransitionGraph(len(keep), alpha.internals, table), tuple(slots))


# --- structure analysis for binary immersions -------------------------------

@dataclass
class Cycle:
    states: tuple[int, ...]
    prime: int | None = None

    @property
    def length(self) -> int:
        return len(self.states)


@dataclass
class StructureReport:
    layer1: frozenset[int]
    layer2: frozenset[int]
    dispatch_cycles: list[Cycle]
    counting_cycles: list[Cycle]
    violations: list[str] = field(default_factory=list)
    minimal_form: list[str] = field(default_factory=list)
    unary_vertices: list[tuple[int, int, int | None]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [
            f"layer1 {len(self.layer1)} states, layer2 {len(self.layer2)} states",
            "dispatch cycles: " + (", ".join(str(c.length) for c in self.dispatch_cycles) or "none"),
            "counting cycles: " + (", ".join(f"{c.length}/p={c.prime}" for c in self.counting_cycles)
                                   or "none"),
        ]
        out += [f"violation: {v}" for v in self.violations]
        out += [f"minimal-form: {v}" for v in self.minimal_form]
        return out


def zero_cycles(graph: TransitionGraph, symbol: Symbol = "0") -> list[tuple[int, ...]]:
    """Cycles of the functional graph given by the ``symbol`` edges.

    Each cycle starts at its smallest state; cycles are sorted by that state.
    """
    colour = [0] * graph.num_states  # 0 new, 1 on stack, 2 done
    cycles = []
    for start in range(graph.num_states):
        path = []
        q = start
        while q is not None and colour[q] == 0:
            colour[q] = 1
            path.append(q)
            q = graph.transitions.get((q, symbol))
        if q is not None and colour[q] == 1:
            cyc = path[path.index(q):]
            i = cyc.index(min(cyc))
            cycles.append(tuple(cyc[i:] + cyc[:i]))
        for p in path:
            colour[p] = 2
    return sorted(cycles)


def _unary_dfa(p: int) -> Dfa:
    """Minimal complete DFA over {0,1} for (0^p)*."""
    return dfa_mod.minimize(Dfa(p, ("0", "1"), [(j, "0", (j + 1) % p) for j in range(p)], 0, {0}))


def admits(graph: TransitionGraph, start: int, target: Dfa) -> bool:
    """Whether some choice of final states makes ``start`` a sub-DFA for L(target).

    ``target`` must be complete. The walk pairs graph states with target
    states; it fails when a graph state would have to be both final and
    non-final, or when a missing edge cuts off a live target state.
    """
    dead = dfa_mod.dead_states(target)
    label: dict[int, bool] = {}
    seen = {(start, target.initial)}
    stack = [(start, target.initial)]
    while stack:
        x, t = stack.pop()
        f = t in target.finals
        if label.setdefault(x, f) != f:
            return False
        for a in target.alphabet:
            y, u = graph.transitions.get((x, a)), target.transitions[t, a]
            if y is None:
                if u not in dead:
                    return False
            elif (y, u) not in seen:
                seen.add((y, u))
                stack.append((y, u))
    return True


def unary_vertices(imm: Immersion, primes: Sequence[int]) -> list[tuple[int, int, int | None]]:
    """The p-vertices of the graph.

    ``s`` is a p-vertex when its 1-successor starts a sub-DFA for (0^p)*, so
    that ``s`` accepts exactly 1·(0^p)* among the words beginning with 1.
    The words beginning with 0 are left out: on a dispatch cycle they lead
    around the cycle and back to ``s``.

    Returns ``(state, p, cycle_length)`` tuples where ``cycle_length`` is the
    length of the 0-cycle reached after the 1-transition (``None`` if the
    0-path dies out).
    """
    g = imm.graph
    found = []
    unary = {p: _unary_dfa(p) for p in primes}
    for s in range(g.num_states):
        t = g.transitions.get((s, "1"))
        if t is None:
            continue
        for p in primes:
            if admits(g, t, unary[p]):
                found.append((s, p, _cycle_length_from(g, t)))
    return found


def _cycle_length_from(g: TransitionGraph, q: int) -> int | None:
    seen = {}
    step = 0
    while q is not None and q not in seen:
        seen[q] = step
        q = g.transitions.get((q, "0"))
        step += 1
    return None if q is None else step - seen[q]


def analyze(imm: Immersion, primes: Sequence[int], m: int,
            check_unary: bool = True) -> StructureReport:
    """Classify the 0-cycles and split the states into dispatch and counting layers.

    A 0-cycle is a dispatch cycle when its length is a multiple of ``m`` and a
    counting cycle when exactly one prime of ``primes`` divides its length.
    Layer 1 holds the states that 0-reach a dispatch cycle, layer 2 the rest.
    Hard violations cover unclassifiable cycles, 1-transitions that do not go
    from layer 1 to layer 2, and more than three dispatch cycles. Properties
    that only minimal immersions must have are listed separately under
    ``minimal_form``.
    """
    if set(imm.alphabet) != {"0", "1"}:
        raise InputError(f"structure analysis needs the alphabet {{0,1}}, got {imm.alphabet}")
    if m < 1:
        raise InputError("m must be positive")
    g = imm.graph
    report = StructureReport(frozenset(), frozenset(), [], [])
    for cyc in zero_cycles(g):
        k = len(cyc)
        dividing = [p for p in primes if k % p == 0]
        is_dispatch = k % m == 0
        if is_dispatch and dividing:
            report.violations.append(f"cycle at {cyc[0]} of length {k} matches both cases")
        elif is_dispatch:
            report.dispatch_cycles.append(Cycle(cyc))
        elif len(dividing) == 1:
            report.counting_cycles.append(Cycle(cyc, dividing[0]))
        elif dividing:
            report.violations.append(
                f"cycle at {cyc[0]} of length {k} is divisible by several primes {dividing}")
        else:
            report.violations.append(f"cycle at {cyc[0]} of length {k} matches neither case")

    on_dispatch = {q for c in report.dispatch_cycles for q in c.states}
    layer1 = set()
    for q in range(g.num_states):
        path, p = set(), q
        while p is not None and p not in path:
            path.add(p)
            if p in on_dispatch:
                layer1.add(q)
                break
            p = g.transitions.get((p, "0"))
    report.layer1 = frozenset(layer1)
    report.layer2 = frozenset(range(g.num_states)) - report.layer1

    for (s, a), t in sorted(g.transitions.items()):
        if a == "1" and not (s in layer1 and t not in layer1):
            report.violations.append(f"1-transition {s} -> {t} does not go from layer 1 to layer 2")
    if len(report.dispatch_cycles) > 3:
        report.violations.append(f"more than three dispatch cycles ({len(report.dispatch_cycles)})")

    per_prime = defaultdict(int)
    for c in report.counting_cycles:
        per_prime[c.prime] += 1
        if c.length != c.prime:
            report.minimal_form.append(f"counting cycle of length {c.length} is not a {c.prime}-cycle")
    if any(v > 1 for v in per_prime.values()):
        report.minimal_form.append("more than one p-cycle per prime")
    missing = [p for p in primes if p not in per_prime]
    if missing:
        report.minimal_form.append(f"no counting cycle for primes {missing}")
    for c in report.dispatch_cycles:
        if c.length != m:
            report.minimal_form.append(f"dispatch cycle of length {c.length} is not an m-cycle")
    cyclic = on_dispatch | {q for c in report.counting_cycles for q in c.states}
    tails = g.num_states - len(cyclic)
    if tails:
        report.minimal_form.append(f"{tails} states lie on no cycle")

    if check_unary:
        report.unary_vertices = unary_vertices(imm, primes)
        for s, p, length in report.unary_vertices:
            if length is None or length % p:
                report.violations.append(
                    f"{s} is a {p}-vertex without a 0-cycle divisible by {p}")
    return report
