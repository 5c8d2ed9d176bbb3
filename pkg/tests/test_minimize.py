import itertools
import random

import pytest

from vpamin import immersion as I
from vpamin import vpa as V
from vpamin.dfa import Dfa
from vpamin.errors import InputError, ScaleError
from vpamin.gen import random_dfa
from vpamin.sat import _pybrute, minimize as M

from conftest import AB, aplus, astarb


def eps() -> Dfa:
    return Dfa(1, AB, {}, 0, {0})


def bplus() -> Dfa:
    return Dfa(2, AB, {(0, "b"): 1, (1, "b"): 1}, 0, {1})


class TestLowerBound:
    def test_two_languages(self, targets):
        assert M.lower_bound(targets) == 2

    def test_single_and_copies(self):
        assert M.lower_bound([astarb()]) == M.min_immersion([astarb()], 4).optimum == 2
        assert M.lower_bound([astarb()] * 3) == 2


class TestMinImmersion:
    def test_two_languages(self, targets):
        r = M.min_immersion(targets, 4)
        assert r.optimum == 3 and r.probes == [(2, False), (3, True)]
        assert r.witness.size == 3 and I.is_valid(r.witness, targets)
        assert r.probe_summary() == "2:unsat,3:sat"

    def test_budget_too_small(self, targets):
        r = M.min_immersion(targets, 2)
        assert not r.found and r.probes == [(2, False)]

    def test_below_lower_bound(self, targets):
        with pytest.raises(InputError):
            M.min_immersion(targets, 1)

    def test_parallel_matches_sequential(self):
        ts = [aplus(), astarb(), bplus()]
        seq = M.min_immersion(ts, 6)
        par = M.min_immersion(ts, 6, jobs=3)
        assert par.optimum == seq.optimum
        assert par.probes[:len(seq.probes)] == seq.probes

    def test_python_backend(self, targets):
        r = M.min_immersion(targets, 4, backend="internal-python")
        assert r.optimum == 3 and r.backend == "internal-python"

    def test_bounds_and_probe_shape(self):
        rng = random.Random(13)
        for _ in range(20):
            ts = [random_dfa(rng, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
            lb = M.lower_bound(M.canonical(ts))
            union = I.disjoint_union([M.dfa_mod.trim(t) for t in M.canonical(ts)]).size
            r = M.min_immersion(ts, union)
            assert lb <= r.optimum <= union
            assert [s for _, s in r.probes] == [False] * (len(r.probes) - 1) + [True]
            if r.optimum > lb:
                assert r.probes[-2] == (r.optimum - 1, False)


class TestBruteForce:
    def test_two_languages(self, targets):
        assert M.brute_force_min_immersion(targets, 4).optimum == 3

    def test_single(self):
        assert M.brute_force_min_immersion([astarb()], 2).optimum == 2

    def test_disjoint_usage(self):
        ts = [aplus(), bplus()]
        assert M.brute_force_min_immersion(ts, 4).optimum == M.min_immersion(ts, 4).optimum == 3

    def test_guard(self, targets):
        with pytest.raises(ScaleError):
            M.brute_force_min_immersion(targets, 6, guard=1000)

    def test_matches_unrestricted_enumeration(self):
        # the discovery-order restriction must not lose any optimum
        def finals(g, u, t):
            words, queue = {u: ()}, [u]
            for x in queue:
                for a in AB:
                    y = g.transitions.get((x, a))
                    if y is not None and y not in words:
                        words[y] = words[x] + (a,)
                        queue.append(y)
            return frozenset(x for x, w in words.items() if M.dfa_mod.member(t, w))

        def naive(ts, budget):
            for k in range(1, budget + 1):
                for digits in itertools.product(range(-1, k), repeat=2 * k):
                    tr = {(u, a): v for (u, a), v in zip(itertools.product(range(k), AB), digits)
                          if v >= 0}
                    g = I.TransitionGraph(k, AB, tr)
                    for inits in itertools.product(range(k), repeat=len(ts)):
                        slots = tuple(I.Slot(u, finals(g, u, t)) for t, u in zip(ts, inits))
                        if I.is_valid(I.Immersion(g, slots), ts):
                            return k
            return None

        rng = random.Random(23)
        for _ in range(12):
            ts = [random_dfa(rng, rng.randint(1, 3), AB) for _ in range(2)]
            assert M.brute_force_min_immersion(ts, 3).optimum == naive(ts, 3)

    def test_kernels_identical(self):
        rng = random.Random(17)
        compiled = M._brute
        for _ in range(15):
            ts = M.canonical([random_dfa(rng, rng.randint(1, 3)) for _ in range(2)])
            packed = [([t.transitions[s, a] for s in range(t.num_states) for a in t.alphabet],
                       t.initial, [int(s in t.finals) for s in range(t.num_states)],
                       next(iter(M.dfa_mod.dead_states(t)), -1)) for t in ts]
            for k in range(1, 4):
                assert compiled.search(k, 2, packed) == _pybrute.search(k, 2, packed)


class TestMinVpaSpecial:
    def test_two_languages(self, targets):
        r = M.min_vpa_special(targets, 6)
        assert r.optimum == 5
        assert V.is_deterministic(r.witness)
        assert V.equivalent(r.witness, I.to_vpa(I.disjoint_union(targets))).equal
        assert V.member(r.witness, ["c1", "a", "r"]) and V.member(r.witness, ["c2", "b", "r"])

    def test_epsilon(self):
        assert M.min_vpa_special([eps()], 3).optimum == 3

    def test_budget_four(self, targets):
        with pytest.raises(InputError):
            M.min_vpa_special(targets, 3)
        assert M.min_vpa_special(targets, 4).optimum is None
