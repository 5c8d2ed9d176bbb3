"""Reduction from graph 3-colorability to immersion minimization.

Every vertex ``i`` of the graph becomes a DFA A_i over {0,1}: a dispatch
cycle of length ``m`` read by 0s, plus five counting 0-cycles whose lengths
are the primes ``p1, p2, p3, q1, q2``. The 1-transitions out of the dispatch
cycle encode the vertex and its neighbourhood. Odd dispatch vertices
``3, 5, ..., m - 1`` stand for the ordered vertex pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Mapping, Sequence

from .dfa import Dfa
from .errors import InputError, ScaleError, SoundnessError, StructureError
from .immersion import Immersion, Slot, TransitionGraph, analyze

ALPHABET = ("0", "1")
CYCLE_NAMES = ("p1", "p2", "p3", "q1", "q2")


@dataclass(frozen=True)
class ColoringInstance:
    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges=()) -> None:
        norm = set()
        for i, j in edges:
            if i == j:
                raise InputError(f"self-loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise InputError(f"edge {{{i},{j}}} outside 1..{n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def is_proper(self, coloring: Mapping[int, int]) -> bool:
        return all(coloring[i] != coloring[j] for i, j in self.edges)


@dataclass(frozen=True)
class ReductionParameters:
    n: int
    m: int
    primes: tuple[int, int, int, int, int]
    N: int

    @property
    def cycle_lengths(self) -> dict[str, int]:
        return dict(zip(CYCLE_NAMES, self.primes))

    def check(self) -> list[str]:
        """Return the violated invariants (empty when all hold)."""
        problems = []
        if self.m != 2 * self.n * (self.n - 1) + 2:
            problems.append("m != 2n(n-1)+2")
        if len(set(self.primes)) != 5:
            problems.append("primes are not distinct")
        for p in self.primes:
            if not is_prime(p):
                problems.append(f"{p} is not prime")
            if p <= 3 * self.n:
                problems.append(f"{p} <= 3n")
            if self.m % p == 0:
                problems.append(f"{p} divides m")
        if self.N != 3 * self.m + sum(self.primes):
            problems.append("N != 3m + sum(P)")
        return problems


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    f = 2
    while f * f <= x:
        if x % f == 0:
            return False
        f += 1
    return True


def choose_parameters(n: int) -> ReductionParameters:
    """m, the five smallest primes above 3n not dividing m (ascending), and N."""
    if n < 2:
        raise InputError("the reduction needs at least two vertices")
    m = 2 * n * (n - 1) + 2
    primes = []
    x = 3 * n + 1
    while len(primes) < 5:
        if is_prime(x) and m % x:
            primes.append(x)
        x += 1
    return ReductionParameters(n, m, tuple(primes), 3 * m + sum(primes))


@dataclass(frozen=True)
class PairCode:
    """Lexicographic bijection between ordered pairs and odd dispatch vertices."""

    n: int

    def vertex(self, i: int, j: int) -> int:
        if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
            raise InputError(f"({i},{j}) is not an ordered pair of distinct vertices")
        rank = (i - 1) * (self.n - 1) + (j - 1 if j < i else j - 2)
        return 2 * (rank + 1) + 1

    def pair(self, v: int) -> tuple[int, int]:
        if v % 2 == 0 or not 3 <= v <= 2 * self.n * (self.n - 1) + 1:
            raise InputError(f"{v} does not encode a pair")
        rank = (v - 1) // 2 - 1
        i, rest = divmod(rank, self.n - 1)
        i += 1
        j = rest + 1 if rest + 1 < i else rest + 2
        return i, j

    @property
    def table(self) -> dict[tuple[int, int], int]:
        return {(i, j): self.vertex(i, j) for i in range(1, self.n + 1)
                for j in range(1, self.n + 1) if i != j}


def pair_code(n: int) -> PairCode:
    if n < 2:
        raise InputError("the reduction needs at least two vertices")
    return PairCode(n)


def required_targets(i: int, g: ColoringInstance, params: ReductionParameters,
                     code: PairCode) -> dict[int, str]:
    """Dispatch vertex (1..m) -> name of the counting cycle its 1-transition enters."""
    out = {1: "p1", 2: "p2"}
    for v in range(4, params.m + 1, 2):
        out[v] = "p3"
    for v in range(3, params.m, 2):
        j, k = code.pair(v)
        if j == i:
            out[v] = "q1"
        elif k == i:
            out[v] = "q2" if g.adjacent(i, j) else "q1"
    return out


def _counting_layout(params: ReductionParameters, offset: int):
    """Transitions and entry states of the five counting cycles starting at ``offset``."""
    table = {}
    entries = {}
    for name, p in zip(CYCLE_NAMES, params.primes):
        entries[name] = offset
        for j in range(p):
            table[offset + j, "0"] = offset + (j + 1) % p
        offset += p
    return table, entries, offset


def build_dfa(i: int, g: ColoringInstance, params: ReductionParameters,
              code: PairCode | None = None) -> Dfa:
    """The DFA A_i. Dispatch vertex ``v`` is state ``v - 1``; state 0 is initial."""
    if not 1 <= i <= g.n:
        raise InputError(f"vertex {i} outside 1..{g.n}")
    code = code or pair_code(g.n)
    m = params.m
    table = {(v, "0"): (v + 1) % m for v in range(m)}
    counting, entries, total = _counting_layout(params, m)
    table.update(counting)
    finals = set()
    for v, name in required_targets(i, g, params, code).items():
        table[v - 1, "1"] = entries[name]
        finals.add(entries[name])
    return Dfa(total, ALPHABET, table, 0, finals)


def build_instance(g: ColoringInstance) -> tuple[list[Dfa], int]:
    params = choose_parameters(g.n)
    code = pair_code(g.n)
    return [build_dfa(i, g, params, code) for i in range(1, g.n + 1)], params.N


def coloring_to_immersion(g: ColoringInstance, coloring: Mapping[int, int],
                          params: ReductionParameters | None = None,
                          check: bool = True) -> Immersion:
    """One dispatch cycle per used colour, five shared counting cycles.

    Cycle ``C_a`` carries the union of the 1-transitions required by the
    vertices of colour ``a``. Slot ``i`` starts at vertex 1 of its colour's
    cycle and accepts at the entries its own DFA targets. With ``check``
    off an improper colouring is assembled anyway (the first required
    target wins at a conflicting vertex).
    """
    params = params or choose_parameters(g.n)
    code = pair_code(g.n)
    for i in range(1, g.n + 1):
        if coloring.get(i) not in (0, 1, 2):
            raise InputError(f"vertex {i} has no colour in {{0,1,2}}")
    if check and not g.is_proper(coloring):
        bad = next((i, j) for i, j in sorted(g.edges) if coloring[i] == coloring[j])
        raise InputError(f"edge {{{bad[0]},{bad[1]}}} is monochromatic")
    m = params.m
    colors = sorted({coloring[i] for i in range(1, g.n + 1)})
    base = {c: idx * m for idx, c in enumerate(colors)}
    table = {}
    for c in colors:
        for v in range(m):
            table[base[c] + v, "0"] = base[c] + (v + 1) % m
    counting, entries, total = _counting_layout(params, len(colors) * m)
    table.update(counting)
    slots = []
    for i in range(1, g.n + 1):
        b = base[coloring[i]]
        finals = set()
        for v, name in required_targets(i, g, params, code).items():
            table.setdefault((b + v - 1, "1"), entries[name])
            finals.add(entries[name])
        slots.append(Slot(b, finals))
    return Immersion(TransitionGraph(total, ALPHABET, table), tuple(slots))


def immersion_to_coloring(imm: Immersion, g: ColoringInstance,
                          params: ReductionParameters | None = None) -> dict[int, int]:
    """Colour vertex ``i`` by the index of the dispatch cycle holding slot ``i``'s initial state."""
    params = params or choose_parameters(g.n)
    if len(imm.slots) != g.n:
        raise InputError(f"{len(imm.slots)} slots for a graph with {g.n} vertices")
    report = analyze(imm, params.primes, params.m, check_unary=False)
    if report.violations:
        raise StructureError("; ".join(report.violations))
    owner = {q: idx for idx, c in enumerate(report.dispatch_cycles) for q in c.states}
    coloring = {}
    for i, slot in enumerate(imm.slots, 1):
        if slot.initial not in owner:
            raise StructureError(f"slot {i} does not start on a dispatch cycle")
        coloring[i] = owner[slot.initial]
    if not g.is_proper(coloring):
        bad = next((i, j) for i, j in sorted(g.edges) if coloring[i] == coloring[j])
        raise SoundnessError(f"vertices {bad[0]} and {bad[1]} share a dispatch cycle but are adjacent")
    return coloring


DEFAULT_COLORING_GUARD = 12


def solve_3coloring(g: ColoringInstance, guard: int = DEFAULT_COLORING_GUARD) -> dict[int, int] | None:
    """Backtracking 3-colouring; vertices are coloured in order 1..n, smallest colour first."""
    if g.n > guard:
        raise ScaleError(f"{g.n} vertices exceed the guard of {guard}")
    neighbours = {i: set() for i in range(1, g.n + 1)}
    for i, j in g.edges:
        neighbours[i].add(j)
        neighbours[j].add(i)
    coloring: dict[int, int] = {}

    def rec(v: int) -> bool:
        if v > g.n:
            return True
        used = {coloring[u] for u in neighbours[v] if u in coloring}
        # symmetry: a new vertex never opens a colour above the next unused one
        top = min(2, max(coloring.values(), default=-1) + 1)
        for c in range(top + 1):
            if c not in used:
                coloring[v] = c
                if rec(v + 1):
                    return True
                del coloring[v]
        return False

    return dict(coloring) if rec(1) else None


def graphs_up_to_isomorphism(n: int) -> list[ColoringInstance]:
    """One representative per isomorphism class of graphs on ``n`` vertices (small n only)."""
    if n > 6:
        raise ScaleError("graph enumeration is limited to 6 vertices")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    perms = list(permutations(range(1, n + 1)))
    seen = set()
    reps = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
        canon = min(tuple(sorted(tuple(sorted((p[i - 1], p[j - 1]))) for i, j in edges))
                    for p in perms)
        if canon not in seen:
            seen.add(canon)
            reps.append(ColoringInstance(n, edges))
    return reps
