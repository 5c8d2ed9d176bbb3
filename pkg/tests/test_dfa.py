import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vpamin import dfa as D
from vpamin.dfa import Dfa
from vpamin.errors import InputError
from vpamin.gen import random_dfa

from conftest import AB, aplus, astar, astarb, shared_pair, union_pair, words


@st.composite
def dfas(draw, max_states=6):
    n = draw(st.integers(1, max_states))
    trans = {}
    for s in range(n):
        for a in AB:
            t = draw(st.one_of(st.none(), st.integers(0, n - 1)))
            if t is not None:
                trans[s, a] = t
    finals = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(n, AB, trans, draw(st.integers(0, n - 1)), finals)


def nerode_size(d: Dfa) -> int:
    """Number of residual languages, told apart by words of length <= |Q|."""
    n = d.num_states + 1
    probes = list(words(d.alphabet, n))
    rows = {tuple(D.member(d, w + v) for v in probes) for w in words(d.alphabet, n)}
    return len(rows)


class TestConstruction:
    def test_rejects_out_of_range(self):
        with pytest.raises(InputError):
            Dfa(2, AB, {(0, "a"): 2}, 0, ())
        with pytest.raises(InputError):
            Dfa(2, AB, {}, 3, ())
        with pytest.raises(InputError):
            Dfa(2, AB, {}, 0, {5})

    def test_rejects_unknown_symbol_and_nondeterminism(self):
        with pytest.raises(InputError):
            Dfa(2, AB, {(0, "c"): 1}, 0, ())
        with pytest.raises(InputError):
            Dfa(2, AB, [(0, "a", 1), (0, "a", 0)], 0, ())

    def test_triples_and_mapping_agree(self):
        assert Dfa(2, AB, [(0, "a", 1)], 0, {1}) == Dfa(2, AB, {(0, "a"): 1}, 0, {1})


class TestMember:
    def test_aplus(self):
        assert D.member(aplus(), "a")
        assert not D.member(aplus(), "")
        assert not D.member(aplus(), "ab")

    def test_unknown_symbol(self):
        with pytest.raises(InputError):
            D.member(aplus(), "c")


class TestComplete:
    def test_astarb_gains_one_sink(self):
        c = D.complete(astarb())
        assert c.num_states == 3 and c.is_complete()

    def test_total_unchanged(self):
        c = D.complete(astarb())
        assert D.complete(c) == c

    def test_empty_map(self):
        c = D.complete(Dfa(1, AB, {}, 0, ()))
        assert c.num_states == 2
        assert all(c.transitions[s, a] == 1 for s in range(2) for a in AB)

    @settings(max_examples=60, deadline=None)
    @given(dfas(), st.randoms(use_true_random=False))
    def test_membership_preserved(self, d, rnd):
        c = D.complete(d)
        for _ in range(200):
            w = "".join(rnd.choice(AB) for _ in range(rnd.randrange(8)))
            assert D.member(c, w) == D.member(d, w)


class TestMinimize:
    def test_astarb_complete_is_minimal(self):
        c = D.complete(astarb())
        m = D.minimize(c)
        assert m.num_states == 3
        assert D.equivalent(m, c).equal

    def test_unreachable_copy_dropped(self):
        two = Dfa(4, AB, {(0, "a"): 1, (1, "a"): 1, (2, "a"): 3, (3, "a"): 3}, 0, {1, 3})
        m = D.minimize(two)
        assert m.num_states == 3
        assert D.equivalent(m, aplus()).equal

    def test_empty_language(self):
        m = D.minimize(Dfa(3, AB, {(0, "a"): 1, (1, "b"): 2}, 0, ()))
        assert m.num_states == 1 and not m.finals

    def test_canonical_numbering(self):
        m = D.minimize(aplus())
        # BFS from the initial in alphabet order: 0 -a-> 1, 0 -b-> 2 (sink)
        assert m.transitions == {(0, "a"): 1, (0, "b"): 2, (1, "a"): 1, (1, "b"): 2,
                                 (2, "a"): 2, (2, "b"): 2}
        assert m.finals == frozenset({1})

    @settings(max_examples=80, deadline=None)
    @given(dfas())
    def test_equivalent_and_idempotent(self, d):
        m = D.minimize(d)
        assert m.is_complete()
        assert D.equivalent(m, d).equal
        assert D.minimize(m) == m
        assert len(D.dead_states(m)) <= 1

    @settings(max_examples=60, deadline=None)
    @given(dfas())
    def test_size_matches_nerode_count(self, d):
        assert D.minimize(d).num_states == nerode_size(d)

    def test_no_smaller_complete_dfa_exists(self):
        # exhaustive search below the minimum, for small random inputs
        rng = random.Random(7)
        for _ in range(8):
            d = random_dfa(rng, rng.randint(1, 3), AB)
            size = D.minimize(d).num_states
            for k in range(1, size):
                for table in itertools.product(range(k), repeat=2 * k):
                    trans = {(s, a): table[2 * s + i] for s in range(k) for i, a in enumerate(AB)}
                    for fmask in range(1 << k):
                        cand = Dfa(k, AB, trans, 0, {s for s in range(k) if fmask >> s & 1})
                        assert not D.equivalent(cand, d).equal


class TestEquivalent:
    def test_reflexive(self):
        assert D.equivalent(aplus(), aplus()).equal

    def test_aplus_vs_astar(self):
        v = D.equivalent(aplus(), astar())
        assert not v.equal and v.counterexample == ()

    def test_shared_pair_slot2(self):
        assert D.equivalent(union_pair().sub_dfa(1), shared_pair().sub_dfa(1)).equal

    def test_alphabet_mismatch(self):
        with pytest.raises(InputError):
            D.equivalent(aplus(), Dfa(1, ("a",), {}, 0, ()))

    @settings(max_examples=80, deadline=None)
    @given(dfas(4), dfas(4))
    def test_counterexample_is_shortest(self, a, b):
        v = D.equivalent(a, b)
        if v.equal:
            assert all(D.member(a, w) == D.member(b, w) for w in words(AB, 5))
            return
        w = v.counterexample
        assert D.member(a, w) != D.member(b, w)
        shorter = [u for u in words(AB, len(w)) if D.member(a, u) != D.member(b, u)]
        assert shorter[0] == w  # shortlex order in alphabet order


class TestDeadStates:
    def test_completion_sink(self):
        assert D.dead_states(D.complete(astarb())) == frozenset({2})

    def test_no_finals(self):
        assert D.dead_states(Dfa(3, AB, {(0, "a"): 1}, 0, ())) == frozenset({0, 1, 2})

    def test_universal(self):
        universal = Dfa(1, AB, {(0, "a"): 0, (0, "b"): 0}, 0, {0})
        assert D.dead_states(D.minimize(universal)) == frozenset()


def test_trim_is_minimal_partial():
    t = D.trim(D.complete(astarb()))
    assert t.num_states == 2 and D.equivalent(t, astarb()).equal
    assert D.trim(Dfa(2, AB, {}, 0, ())).num_states == 1
