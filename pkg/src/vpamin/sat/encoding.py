"""Propositional model whose solutions are immersions of a given size.

For a size ``k`` and canonical (minimal complete) target DFAs M_1..M_n the
model chooses

* ``edge(u, a, v)``: the a-successor of state ``u`` is ``v`` (``v=None``
  means undefined), exactly one value per ``(u, a)``;
* ``init(i, u)``: slot ``i`` starts in ``u``, exactly one per slot;
* ``label(i, u, s)``: state ``u`` behaves like state ``s`` of M_i for slot
  ``i`` (``s=None`` means unused), exactly one per ``(i, u)``.

Labels are propagated along edges from the initial state, an undefined
edge is only allowed where every non-dead label steps into the dead state,
and final states are read off the labels. Slot indices are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .. import dfa as dfa_mod
from ..dfa import Dfa
from ..errors import ContractError, InputError
from ..immersion import Immersion, Slot, TransitionGraph
from . import solver as solver_mod

PAIRWISE_LIMIT = 8
SYMMETRY_AUTO_ABOVE = 8


@dataclass
class ConstraintModel:
    size: int
    alphabet: tuple[str, ...]
    targets: tuple[Dfa, ...]
    variable_count: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    decode_map: dict[tuple, int] = field(default_factory=dict)
    symmetry: bool = False

    def new_var(self, key: Hashable | None = None) -> int:
        self.variable_count += 1
        if key is not None:
            self.decode_map[key] = self.variable_count
        return self.variable_count

    def add(self, *lits: int) -> None:
        self.clauses.append(list(lits))

    def exactly_one(self, lits: Sequence[int]) -> None:
        self.clauses.append(list(lits))
        self.at_most_one(lits)

    def at_most_one(self, lits: Sequence[int]) -> None:
        if len(lits) <= PAIRWISE_LIMIT:
            for i in range(len(lits)):
                for j in range(i + 1, len(lits)):
                    self.add(-lits[i], -lits[j])
            return
        # sequential counter: s_j is true once some x_0..x_j is true
        prev = None
        for j, x in enumerate(lits):
            if j == len(lits) - 1:
                self.add(-x, -prev)
                break
            s = self.new_var()
            self.add(-x, s)
            if prev is not None:
                self.add(-prev, s)
                self.add(-x, -prev)
            prev = s

    def edge(self, u: int, a: str, v: int | None) -> int:
        return self.decode_map["edge", u, a, v]

    def label(self, i: int, u: int, s: int | None) -> int:
        return self.decode_map["label", i, u, s]

    def init(self, i: int, u: int) -> int:
        return self.decode_map["init", i, u]

    def to_dimacs(self) -> str:
        comments = [f"immersion size {self.size}, {len(self.targets)} languages"]
        return solver_mod.write_dimacs(self.variable_count, self.clauses, comments)

    def sidecar(self) -> str:
        """Decode map as ``<kind> <indices...> <var>`` lines.

        ``-`` stands for an undefined edge target or an unused label. Comment
        lines record the alphabet and the accepting labels of each target so
        that an external model can be decoded without the Python objects.
        """
        lines = [f"c size {self.size}", "c alphabet " + " ".join(self.alphabet)]
        for i, t in enumerate(self.targets, 1):
            lines.append(f"c accepting {i} " + " ".join(map(str, sorted(t.finals))))
        for key, var in self.decode_map.items():
            kind, *idx = key
            lines.append(" ".join([kind] + ["-" if x is None else str(x) for x in idx] + [str(var)]))
        return "\n".join(lines) + "\n"


def is_canonical(d: Dfa) -> bool:
    return dfa_mod.minimize(d) == d


def encode(k: int, canonical_targets: Sequence[Dfa], symmetry: bool | None = None) -> ConstraintModel:
    """Build the model for immersions of size at most ``k``.

    ``symmetry`` switches on the breadth-first numbering constraints; the
    default enables them for ``k`` above 8. Slot 1 always starts in state 0.
    """
    if k < 1:
        raise InputError("size must be at least 1")
    targets = tuple(canonical_targets)
    if not targets:
        raise InputError("no target languages")
    alphabet = targets[0].alphabet
    for t in targets:
        if t.alphabet != alphabet:
            raise ContractError("targets must share one alphabet in the same order")
        if not is_canonical(t):
            raise ContractError("targets must be minimal complete DFAs (use dfa.minimize)")
    if symmetry is None:
        symmetry = k > SYMMETRY_AUTO_ABOVE
    model = ConstraintModel(k, alphabet, targets, symmetry=symmetry)
    states = range(k)
    n = len(targets)
    dead = [next(iter(dfa_mod.dead_states(t)), None) for t in targets]

    for u in states:
        for a in alphabet:
            for v in list(states) + [None]:
                model.new_var(("edge", u, a, v))
    for i, t in enumerate(targets, 1):
        for u in states:
            for s in list(range(t.num_states)) + [None]:
                model.new_var(("label", i, u, s))
    for i in range(1, n + 1):
        for u in states:
            model.new_var(("init", i, u))

    for u in states:
        for a in alphabet:
            model.exactly_one([model.edge(u, a, v) for v in list(states) + [None]])
    for i, t in enumerate(targets, 1):
        for u in states:
            model.exactly_one([model.label(i, u, s) for s in list(range(t.num_states)) + [None]])
        model.exactly_one([model.init(i, u) for u in states])

    for i, t in enumerate(targets, 1):
        d = dead[i - 1]
        for u in states:
            model.add(-model.init(i, u), model.label(i, u, t.initial))
            for s in range(t.num_states):
                lab = model.label(i, u, s)
                for a in alphabet:
                    nxt = t.transitions[s, a]
                    for v in states:
                        model.add(-model.edge(u, a, v), -lab, model.label(i, v, nxt))
                    if s != d and nxt != d:
                        model.add(-lab, -model.edge(u, a, None))

    model.add(model.init(1, 0))
    if symmetry:
        _bfs_symmetry(model, n)
    return model


def _bfs_symmetry(model: ConstraintModel, n: int) -> None:
    """Force a breadth-first numbering from a virtual root.

    The root (node 0) has one edge per slot, labelled by the slot index, into
    that slot's initial state; state ``u`` is node ``u + 1``. States that the
    root cannot reach are pushed to the end and left without edges, which
    loses nothing since they cannot influence any slot.
    """
    k = model.size
    alphabet = model.alphabet

    def labelled(x: int, y: int) -> list[int]:
        # edge variables from node x into node y, in label order
        if x == 0:
            return [model.init(i, y - 1) for i in range(1, n + 1)]
        return [model.edge(x - 1, a, y - 1) for a in alphabet]

    t = {}
    for y in range(1, k + 1):
        for x in range(y):
            lits = labelled(x, y)
            t[x, y] = model.new_var()
            for e in lits:
                model.add(-e, t[x, y])
            model.add(-t[x, y], *lits)
    p = {}
    for y in range(1, k + 1):
        for x in range(y):
            p[y, x] = model.new_var()
            model.add(-p[y, x], t[x, y])
            for x2 in range(x):
                model.add(-p[y, x], -t[x2, y])
            model.add(p[y, x], -t[x, y], *[t[x2, y] for x2 in range(x)])
    reach = {}
    for y in range(1, k + 1):
        reach[y] = model.new_var()
        parents = [p[y, x] for x in range(y)]
        model.add(-reach[y], *parents)
        for lit in parents:
            model.add(-lit, reach[y])
        model.at_most_one(parents)
    for y in range(1, k):
        model.add(reach[y], -reach[y + 1])
    for y in range(1, k + 1):
        for a in alphabet:
            model.add(reach[y], model.edge(y - 1, a, None))
        for z in range(y, k + 1):
            for a in alphabet:
                model.add(-model.edge(z - 1, a, y - 1), reach[y])
    # parents never decrease along the numbering
    for y in range(2, k + 1):
        for x in range(y):
            for x2 in range(x + 1, y - 1):
                model.add(-p[y, x], -p[y - 1, x2])
    # siblings are ordered by their smallest incoming label
    mins = {}
    for y in range(1, k + 1):
        for x in range(y):
            lits = labelled(x, y)
            for l, e in enumerate(lits):
                mv = model.new_var()
                mins[x, y, l] = mv
                model.add(-mv, e)
                for e2 in lits[:l]:
                    model.add(-mv, -e2)
                model.add(mv, -e, *lits[:l])
    for y in range(2, k + 1):
        for x in range(y - 1):
            width = n if x == 0 else len(alphabet)
            for l in range(width):
                model.add(-p[y - 1, x], -p[y, x], -mins[x, y, l],
                          *[mins[x, y - 1, l2] for l2 in range(l)])


def decode(model: ConstraintModel, assignment: Sequence[bool]) -> Immersion:
    """Rebuild the immersion from a satisfying assignment (``assignment[v-1]``)."""
    if len(assignment) < model.variable_count:
        raise ContractError("assignment is shorter than the variable count")
    bad = solver_mod.check_model(model.clauses, assignment)
    if bad is not None:
        raise ContractError(f"assignment falsifies clause {bad}: {model.clauses[bad]}")
    val = lambda var: bool(assignment[var - 1])
    k = model.size
    table = {}
    for u in range(k):
        for a in model.alphabet:
            for v in range(k):
                if val(model.edge(u, a, v)):
                    table[u, a] = v
    slots = []
    for i, t in enumerate(model.targets, 1):
        initial = next(u for u in range(k) if val(model.init(i, u)))
        finals = {u for u in range(k) for s in t.finals if val(model.label(i, u, s))}
        slots.append(Slot(initial, finals))
    return Immersion(TransitionGraph(k, model.alphabet, table), tuple(slots))


def assignment_for(model: ConstraintModel, imm: Immersion) -> list[bool]:
    """Satisfying assignment describing ``imm`` (without symmetry constraints).

    Used to check that a known immersion is a model of the encoding. The
    immersion must have exactly ``model.size`` states and slot 1 must start
    in state 0.
    """
    if model.symmetry:
        raise ContractError("assignment_for does not construct symmetry-breaking variables")
    if imm.size != model.size:
        raise InputError("immersion size differs from the model size")
    values = [False] * model.variable_count
    setv = lambda var: values.__setitem__(var - 1, True)
    g = imm.graph
    for u in range(g.num_states):
        for a in model.alphabet:
            setv(model.edge(u, a, g.transitions.get((u, a))))
    for i, (slot, t) in enumerate(zip(imm.slots, model.targets), 1):
        setv(model.init(i, slot.initial))
        labels = {slot.initial: t.initial}
        stack = [slot.initial]
        while stack:
            u = stack.pop()
            for a in model.alphabet:
                v = g.transitions.get((u, a))
                if v is not None and v not in labels:
                    labels[v] = t.transitions[labels[u], a]
                    stack.append(v)
        for u in range(g.num_states):
            setv(model.label(i, u, labels.get(u)))
    # auxiliary counter variables: derive by unit propagation over the rest
    return _complete_aux(model, values)


def _complete_aux(model: ConstraintModel, values: list[bool]) -> list[bool]:
    named = set(model.decode_map.values())
    aux = [v for v in range(1, model.variable_count + 1) if v not in named]
    if not aux:
        return values
    fixed = [[v if values[v - 1] else -v] for v in named]
    result = solver_mod.solve_internal(model.variable_count, model.clauses + fixed)
    if not result.satisfiable:
        raise ContractError("the immersion does not satisfy the encoding")
    return result.model
