import random

import pytest

from vpamin import dfa as D
from vpamin import immersion as I
from vpamin import vpa as V
from vpamin.dfa import Dfa
from vpamin.errors import InputError, ShapeError
from vpamin.gen import random_immersion
from vpamin.immersion import Immersion, Slot, TransitionGraph
from vpamin.reduction import ColoringInstance, build_instance, choose_parameters, coloring_to_immersion
from vpamin.vpa import VisiblyAlphabet, Vpa

from conftest import AB, aplus, astarb, shared_pair, union_pair, words

P3 = (11, 13, 17, 19, 23)


class TestTypes:
    def test_slot_range(self):
        g = TransitionGraph(2, AB, {})
        with pytest.raises(InputError):
            Immersion(g, (Slot(2, ()),))
        with pytest.raises(InputError):
            Immersion(g, ())

    def test_size(self):
        assert shared_pair().size == 3


class TestValidate:
    def test_two_languages(self, targets):
        assert all(v.equal for v in I.validate(union_pair(), targets))
        assert all(v.equal for v in I.validate(shared_pair(), targets))

    def test_moved_initial(self, targets):
        imm = shared_pair()
        bad = Immersion(imm.graph, (imm.slots[0], Slot(0, {2})))
        v = I.validate(bad, targets)
        assert v[0].equal and v[1].counterexample == ("b",)

    def test_arity(self, targets):
        with pytest.raises(InputError):
            I.validate(shared_pair(), targets[:1])


class TestDisjointUnion:
    def test_sizes(self):
        assert union_pair().size == 4
        assert I.disjoint_union([astarb()]).size == 2
        assert I.disjoint_union([aplus()] * 3).size == 6

    def test_always_valid(self):
        rng = random.Random(2)
        from vpamin.gen import random_dfa
        for _ in range(30):
            ts = [random_dfa(rng, rng.randint(1, 4)) for _ in range(rng.randint(1, 3))]
            assert I.is_valid(I.disjoint_union(ts), ts)


class TestToVpa:
    def test_shared_pair(self):
        v = I.to_vpa(shared_pair())
        assert v.size == 5 and V.is_deterministic(v)
        assert v.alphabet.calls == ("c1", "c2") and v.alphabet.returns == ("r",)
        assert V.member(v, ["c1", "a", "a", "r"]) and V.member(v, ["c2", "b", "r"])
        assert not V.member(v, ["c1", "b", "r"])

    def test_epsilon(self):
        imm = Immersion(TransitionGraph(1, AB, {}), (Slot(0, {0}),))
        v = I.to_vpa(imm)
        assert v.size == 3
        accepted = [w for w in words(v.alphabet.symbols, 3) if V.member(v, w)]
        assert accepted == [("c1", "r")]

    def test_union_equivalent(self):
        v6 = I.to_vpa(union_pair())
        assert v6.size == 6
        assert V.equivalent(v6, I.to_vpa(shared_pair())).equal

    def test_language_law(self):
        rng = random.Random(4)
        for _ in range(25):
            imm = random_immersion(rng, rng.randint(1, 4), rng.randint(1, 2))
            v = I.to_vpa(imm)
            for i in range(len(imm.slots)):
                sub = imm.sub_dfa(i)
                for w in words(AB, 4):
                    assert V.member(v, (I.call_symbol(i + 1), *w, "r")) == D.member(sub, w)
            for w in words(v.alphabet.symbols, 4):
                if V.member(v, w):
                    assert w[0].startswith("c") and w[-1] == "r"
                    assert all(a in AB for a in w[1:-1])


class TestFromVpa:
    def test_round_trip_shared_pair(self, targets):
        back = I.from_vpa(I.to_vpa(shared_pair()))
        assert back.size == 3 and I.is_valid(back, targets)

    def test_epsilon(self):
        imm = Immersion(TransitionGraph(1, AB, {}), (Slot(0, {0}),))
        back = I.from_vpa(I.to_vpa(imm))
        assert back.size == 1
        assert D.member(back.sub_dfa(0), "") and not D.member(back.sub_dfa(0), "a")

    def _eps_vpa(self, extra_returns=()):
        alpha = VisiblyAlphabet(("c1",), ("r",), ("a",))
        return Vpa(alpha, 3, {1}, {2}, ("1",), [(1, "c1", 0, "1")],
                   [(0, "r", "1", 2), *extra_returns])

    def test_extra_return_is_shape_error(self):
        v = self._eps_vpa([(2, "r", "1", 2)])
        with pytest.raises(ShapeError):
            I.from_vpa(v)

    def test_missing_call(self):
        alpha = VisiblyAlphabet(("c1", "c2"), ("r",), ("a",))
        v = Vpa(alpha, 3, {1}, {2}, ("1",), [(1, "c1", 0, "1")], [(0, "r", "1", 2)])
        with pytest.raises(ShapeError):
            I.from_vpa(v)

    def test_two_returns(self):
        alpha = VisiblyAlphabet(("c1",), ("r", "s"), ("a",))
        v = Vpa(alpha, 3, {1}, {2}, ("1",), [(1, "c1", 0, "1")], [(0, "r", "1", 2)])
        with pytest.raises(ShapeError):
            I.from_vpa(v)

    def test_renamed_symbols_and_merged_finals(self):
        # calls x2 < x10 in natural order, two final sinks, stack symbols A/B
        alpha = VisiblyAlphabet(("x10", "x2"), ("ret",), ("a",))
        v = Vpa(alpha, 5, {3}, {1, 4}, ("A", "B"),
                [(3, "x2", 0, "A"), (3, "x10", 2, "B")],
                [(0, "ret", "A", 1), (2, "ret", "B", 4)],
                [(0, "a", 0), (2, "a", 0)])
        imm = I.from_vpa(v)
        assert imm.size == 2  # five states, two finals merged, q0 and qf removed
        assert D.member(imm.sub_dfa(0), "aa") and D.member(imm.sub_dfa(0), "")
        # x10 pushes B from state 2; only state 2 can pop B
        assert D.member(imm.sub_dfa(1), "") and not D.member(imm.sub_dfa(1), "a")

    def test_round_trip_random(self):
        rng = random.Random(9)
        for _ in range(60):
            imm = random_immersion(rng, rng.randint(1, 6), rng.randint(1, 3))
            back = I.from_vpa(I.to_vpa(imm))
            assert back.size == imm.size
            assert I.is_valid(back, [imm.sub_dfa(i) for i in range(len(imm.slots))])


class TestAnalyze:
    def test_triangle(self):
        g = ColoringInstance(3, [(1, 2), (1, 3), (2, 3)])
        imm = coloring_to_immersion(g, {1: 0, 2: 1, 3: 2})
        r = I.analyze(imm, P3, 14)
        assert r.ok and not r.minimal_form
        assert [c.length for c in r.dispatch_cycles] == [14, 14, 14]
        assert sorted(c.length for c in r.counting_cycles) == list(P3)
        assert r.layer1 | r.layer2 == frozenset(range(imm.size))
        assert not r.layer1 & r.layer2

    def test_disjoint_union_of_reduction_dfas(self):
        g = ColoringInstance(3, [(1, 2), (1, 3), (2, 3)])
        targets, _ = build_instance(g)
        r = I.analyze(I.disjoint_union(targets), P3, 14, check_unary=False)
        assert len(r.dispatch_cycles) == 3 and len(r.counting_cycles) == 15
        assert not r.violations
        assert "more than one p-cycle per prime" in r.minimal_form

    def test_six_cycle(self):
        g = TransitionGraph(6, ("0", "1"), {(i, "0"): (i + 1) % 6 for i in range(6)})
        r = I.analyze(Immersion(g, (Slot(0, ()),)), P3, 14)
        assert not r.ok and any("matches neither case" in v for v in r.violations)

    def test_four_dispatch_cycles(self):
        trans = {(c * 14 + i, "0"): c * 14 + (i + 1) % 14 for c in range(4) for i in range(14)}
        g = TransitionGraph(56, ("0", "1"), trans)
        r = I.analyze(Immersion(g, (Slot(0, ()),)), P3, 14)
        assert any("more than three" in v for v in r.violations)

    def test_backward_one_transition(self):
        trans = {(i, "0"): (i + 1) % 14 for i in range(14)}
        trans.update({(14 + i, "0"): 14 + (i + 1) % 11 for i in range(11)})
        trans[14, "1"] = 0
        g = TransitionGraph(25, ("0", "1"), trans)
        r = I.analyze(Immersion(g, (Slot(0, ()),)), P3, 14, check_unary=False)
        assert any("layer 1 to layer 2" in v for v in r.violations)

    def test_unary_vertices_on_reduction_dfas(self):
        # every sub-DFA accepting 1(0^p)* from a vertex has a cycle divisible by p there
        g = ColoringInstance(3, [(1, 2), (1, 3)])
        targets, _ = build_instance(g)
        for t in targets:
            imm = Immersion(TransitionGraph(t.num_states, t.alphabet, t.transitions),
                            (Slot(t.initial, t.finals),))
            r = I.analyze(imm, P3, 14)
            assert r.ok
            assert r.unary_vertices
            kinds = {p for _, p, _ in r.unary_vertices}
            assert {11, 13, 17} <= kinds
            for _, p, length in r.unary_vertices:
                assert length is not None and length % p == 0

    def test_alphabet_must_be_binary(self):
        with pytest.raises(InputError):
            I.analyze(shared_pair(), P3, 14)
