"""Exact minimum-size immersions, and exact minimal VPAs for c_i · L_i · r languages."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .. import dfa as dfa_mod
from .. import immersion as imm_mod
from ..dfa import Dfa
from ..errors import InputError, ScaleError, SoundnessError
from ..immersion import Immersion, Slot, TransitionGraph
from ..vpa import Vpa
from . import _pybrute
from . import encoding, solver

log = logging.getLogger(__name__)

if os.environ.get("VPAMIN_PURE_PYTHON"):
    _brute = _pybrute
else:
    try:
        from . import _cbrute as _brute  # type: ignore[attr-defined, no-redef]
    except ImportError:
        _brute = _pybrute

DEFAULT_SPACE_GUARD = 10**13


@dataclass
class MinimizationResult:
    optimum: int | None
    witness: Immersion | None
    probes: list[tuple[int, bool]] = field(default_factory=list)
    backend: str = "internal"

    @property
    def found(self) -> bool:
        return self.optimum is not None

    def probe_summary(self) -> str:
        return ",".join(f"{k}:{'sat' if s else 'unsat'}" for k, s in self.probes)


@dataclass
class VpaMinimizationResult:
    optimum: int | None
    witness: Vpa | None
    immersion: MinimizationResult


def canonical(targets: Sequence[Dfa]) -> list[Dfa]:
    """Minimal complete DFAs over the alphabet order of the first target."""
    if not targets:
        raise InputError("no target languages")
    order = targets[0].alphabet
    out = []
    for t in targets:
        if set(t.alphabet) != set(order):
            raise InputError("targets use different alphabets")
        if t.alphabet != order:
            t = Dfa(t.num_states, order, t.transitions, t.initial, t.finals)
        out.append(dfa_mod.minimize(t))
    return out


def lower_bound(targets: Sequence[Dfa]) -> int:
    """Largest minimal partial DFA among the targets."""
    return max(dfa_mod.trim(t).num_states for t in targets)


def _probe(k: int, canon: list[Dfa], backend: str, symmetry: bool | None):
    model = encoding.encode(k, canon, symmetry)
    result = solver.solve(model.variable_count, model.clauses, backend)
    return model, result


def min_immersion(targets: Sequence[Dfa], budget: int, backend: str = "internal",
                  symmetry: bool | None = None, jobs: int = 1) -> MinimizationResult:
    """Smallest immersion of size in ``[lower_bound, budget]``, by linear scan.

    With ``jobs > 1`` several sizes are probed concurrently; the outcome is
    the same as for the sequential scan (the smallest satisfiable size wins
    and probes above it are discarded).
    """
    canon = canonical(targets)
    lb = lower_bound(canon)
    if budget < lb:
        raise InputError(f"budget {budget} is below the lower bound {lb}")
    sizes = list(range(lb, budget + 1))
    probes: list[tuple[int, bool]] = []
    used = backend

    def finish(k, model, result):
        witness = encoding.decode(model, result.model)
        if not imm_mod.is_valid(witness, canon):
            raise SoundnessError(f"decoded size-{k} immersion does not validate")
        return MinimizationResult(k, witness, probes, used)

    if jobs <= 1:
        for k in sizes:
            model, result = _probe(k, canon, backend, symmetry)
            used = result.backend
            probes.append((k, result.satisfiable))
            log.debug("size %d: %s %s", k, result.satisfiable, result.stats)
            if result.satisfiable:
                return finish(k, model, result)
        return MinimizationResult(None, None, probes, used)

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for start in range(0, len(sizes), jobs):
            window = sizes[start:start + jobs]
            outcomes = list(pool.map(lambda k: _probe(k, canon, backend, symmetry), window))
            for k, (model, result) in zip(window, outcomes):
                used = result.backend
                probes.append((k, result.satisfiable))
                if result.satisfiable:
                    return finish(k, model, result)
    return MinimizationResult(None, None, probes, used)


def search_space(k: int, nsym: int, n: int) -> int:
    """Size of the naive enumeration: (k+1)^(k·|Σ|) tables times k^n initial choices."""
    return (k + 1) ** (k * nsym) * k ** n


def brute_force_min_immersion(targets: Sequence[Dfa], budget: int,
                              guard: int = DEFAULT_SPACE_GUARD) -> MinimizationResult:
    """Exhaustive oracle for :func:`min_immersion`.

    Scans sizes upward from 1, so it does not rely on :func:`lower_bound`.
    Every witness is re-checked with DFA equivalence before it is returned.
    """
    canon = canonical(targets)
    nsym = len(canon[0].alphabet)
    for k in range(1, budget + 1):
        if search_space(k, nsym, len(canon)) > guard:
            raise ScaleError(f"enumeration at size {k} exceeds the guard ({guard})")
    packed = []
    for t in canon:
        delta = [t.transitions[s, a] for s in range(t.num_states) for a in t.alphabet]
        final = [int(s in t.finals) for s in range(t.num_states)]
        dead = next(iter(dfa_mod.dead_states(t)), -1)
        packed.append((delta, t.initial, final, dead))
    # the kernel pins its first target to state 0; the largest prunes best
    order = sorted(range(len(canon)), key=lambda j: -canon[j].num_states)
    packed = [packed[j] for j in order]
    probes = []
    for k in range(1, budget + 1):
        table, pinned_inits, nodes = _brute.search(k, nsym, packed)
        log.debug("brute force size %d: %d nodes", k, nodes)
        probes.append((k, table is not None))
        if table is None:
            continue
        inits = [0] * len(canon)
        for j, u in zip(order, pinned_inits):
            inits[j] = u
        alphabet = canon[0].alphabet
        trans = {(u, alphabet[a]): table[u * nsym + a]
                 for u in range(k) for a in range(nsym) if table[u * nsym + a] >= 0}
        graph = TransitionGraph(k, alphabet, trans)
        slots = []
        for t, u in zip(canon, inits):
            sub = Dfa(k, alphabet, trans, u, ())
            hit = {q for q, s in _pair_walk(sub, t) if s in t.finals}
            slots.append(Slot(u, hit))
        witness = Immersion(graph, tuple(slots))
        if not imm_mod.is_valid(witness, canon):
            raise SoundnessError(f"brute-force witness of size {k} does not validate")
        return MinimizationResult(k, witness, probes, "brute-force")
    return MinimizationResult(None, None, probes, "brute-force")


def _pair_walk(sub: Dfa, target: Dfa):
    seen = {(sub.initial, target.initial)}
    stack = list(seen)
    while stack:
        q, s = stack.pop()
        for a in sub.alphabet:
            r = sub.transitions.get((q, a))
            if r is not None and (r, target.transitions[s, a]) not in seen:
                seen.add((r, target.transitions[s, a]))
                stack.append((r, target.transitions[s, a]))
    return seen


def min_vpa_special(targets: Sequence[Dfa], budget: int, backend: str = "internal",
                    symmetry: bool | None = None) -> VpaMinimizationResult:
    """Minimal deterministic VPA for the union of c_i · L_i · r.

    ``budget`` counts VPA states; the immersion search runs with two states
    fewer and the witness is its forward translation.
    """
    canon = canonical(targets)
    lb = lower_bound(canon)
    if budget < lb + 2:
        raise InputError(f"VPA budget {budget} is below the lower bound {lb + 2}")
    result = min_immersion(canon, budget - 2, backend, symmetry)
    if not result.found:
        return VpaMinimizationResult(None, None, result)
    return VpaMinimizationResult(result.optimum + 2, imm_mod.to_vpa(result.witness), result)
