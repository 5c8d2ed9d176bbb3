"""Random test data. Every function draws from the ``random.Random`` it is given."""

from __future__ import annotations

import random
from typing import Sequence

from .dfa import Dfa
from .immersion import Immersion, Slot, TransitionGraph
from .reduction import ColoringInstance
from .vpa import VisiblyAlphabet, Vpa


def random_dfa(rng: random.Random, num_states: int, alphabet: Sequence[str] = ("a", "b"),
               density: float = 0.8, final_prob: float = 0.4) -> Dfa:
    """Partial DFA; each edge is present with probability ``density``."""
    trans = {(s, a): rng.randrange(num_states)
             for s in range(num_states) for a in alphabet if rng.random() < density}
    finals = [s for s in range(num_states) if rng.random() < final_prob]
    return Dfa(num_states, alphabet, trans, 0, finals)


def random_graph(rng: random.Random, n: int, edge_prob: float = 0.5) -> ColoringInstance:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < edge_prob]
    return ColoringInstance(n, edges)


def random_immersion(rng: random.Random, num_states: int, num_slots: int,
                     alphabet: Sequence[str] = ("a", "b"), density: float = 0.7,
                     final_prob: float = 0.4) -> Immersion:
    trans = {(s, a): rng.randrange(num_states)
             for s in range(num_states) for a in alphabet if rng.random() < density}
    slots = [Slot(rng.randrange(num_states),
                  {q for q in range(num_states) if rng.random() < final_prob})
             for _ in range(num_slots)]
    return Immersion(TransitionGraph(num_states, alphabet, trans), tuple(slots))


DEFAULT_VPA_ALPHABET = VisiblyAlphabet(("c1", "c2"), ("r",), ("a",))


def random_vpa(rng: random.Random, num_states: int,
               alphabet: VisiblyAlphabet = DEFAULT_VPA_ALPHABET,
               num_stack: int = 2, density: float = 0.7, final_prob: float = 0.4) -> Vpa:
    """Deterministic VPA with initial state 0 and stack symbols ``g0, g1, ...``."""
    gammas = tuple(f"g{i}" for i in range(num_stack))
    q = range(num_states)
    calls = [(s, c, rng.randrange(num_states), rng.choice(gammas))
             for s in q for c in alphabet.calls if rng.random() < density]
    rets = [(s, r, g, rng.randrange(num_states))
            for s in q for r in alphabet.returns for g in gammas if rng.random() < density]
    ints = [(s, a, rng.randrange(num_states))
            for s in q for a in alphabet.internals if rng.random() < density]
    finals = [s for s in q if rng.random() < final_prob]
    return Vpa(alphabet, num_states, [0], finals, gammas, calls, rets, ints)


def permute_vpa(rng: random.Random, vpa: Vpa) -> Vpa:
    """Same language, states and stack symbols renamed at random."""
    perm = list(range(vpa.num_states))
    rng.shuffle(perm)
    gperm = list(vpa.stack_symbols)
    rng.shuffle(gperm)
    gmap = dict(zip(vpa.stack_symbols, gperm))
    return Vpa(vpa.alphabet, vpa.num_states, [perm[s] for s in vpa.initials],
               [perm[s] for s in vpa.finals], vpa.stack_symbols,
               [(perm[s], c, perm[t], gmap[g]) for s, c, t, g in vpa.call_rules],
               [(perm[s], r, gmap[g], perm[t]) for s, r, g, t in vpa.return_rules],
               [(perm[s], a, perm[t]) for s, a, t in vpa.internal_rules])
