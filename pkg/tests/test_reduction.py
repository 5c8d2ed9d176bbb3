import itertools

import pytest

from vpamin import dfa as D
from vpamin import immersion as I
from vpamin.dfa import Dfa
from vpamin.errors import InputError, ScaleError, SoundnessError, StructureError
from vpamin.reduction import (ColoringInstance, build_dfa, build_instance, choose_parameters,
                              coloring_to_immersion, graphs_up_to_isomorphism,
                              immersion_to_coloring, is_prime, pair_code, solve_3coloring)

STAR = ColoringInstance(3, [(1, 2), (1, 3)])
K3 = ColoringInstance(3, [(1, 2), (1, 3), (2, 3)])
K4 = ColoringInstance(4, list(itertools.combinations(range(1, 5), 2)))


def shape_dfa() -> Dfa:
    """Complete DFA of 0*10*."""
    return Dfa(3, ("0", "1"), {(0, "0"): 0, (0, "1"): 1, (1, "0"): 1, (1, "1"): 2,
                               (2, "0"): 2, (2, "1"): 2}, 0, {1})


def included(a: Dfa, b: Dfa) -> bool:
    b = D.complete(b)
    seen = {(a.initial, b.initial)}
    stack = list(seen)
    while stack:
        x, y = stack.pop()
        if x in a.finals and y not in b.finals:
            return False
        for s in a.alphabet:
            nx = a.transitions.get((x, s))
            if nx is not None and (nx, b.transitions[y, s]) not in seen:
                seen.add((nx, b.transitions[y, s]))
                stack.append((nx, b.transitions[y, s]))
    return True


class TestParameters:
    def test_values(self):
        p = choose_parameters(3)
        assert (p.m, p.primes, p.N) == (14, (11, 13, 17, 19, 23), 125)
        p = choose_parameters(4)
        assert (p.m, p.primes, p.N) == (26, (17, 19, 23, 29, 31), 197)
        p = choose_parameters(2)
        assert (p.m, p.primes, p.N) == (6, (7, 11, 13, 17, 19), 85)

    def test_invariants(self):
        for n in range(2, 13):
            assert choose_parameters(n).check() == []

    def test_asymptotic_bound(self):
        for n in range(30, 60):
            N = choose_parameters(n).N
            assert 6 * n * n < N < 9 * n * n

    def test_check_catches_tampering(self):
        p = choose_parameters(3)
        bad = type(p)(3, 14, (11, 13, 17, 19, 7), 125)
        assert any("divides" in x or "<= 3n" in x for x in bad.check())

    def test_n_too_small(self):
        with pytest.raises(InputError):
            choose_parameters(1)

    def test_is_prime(self):
        assert [x for x in range(30) if is_prime(x)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


class TestPairCode:
    def test_n3(self):
        assert pair_code(3).table == {(1, 2): 3, (1, 3): 5, (2, 1): 7, (2, 3): 9,
                                      (3, 1): 11, (3, 2): 13}
        assert pair_code(3).pair(7) == (2, 1)

    def test_n2(self):
        assert pair_code(2).table == {(1, 2): 3, (2, 1): 5}

    def test_bijective(self):
        for n in range(2, 9):
            code = pair_code(n)
            table = code.table
            assert sorted(table.values()) == list(range(3, 2 * n * (n - 1) + 2, 2))
            assert all(code.pair(v) == ij for ij, v in table.items())

    def test_bad_vertex(self):
        with pytest.raises(InputError):
            pair_code(3).pair(4)


class TestBuildDfa:
    def a1(self):
        return build_dfa(1, STAR, choose_parameters(3))

    def test_vertex_one_transitions(self):
        a = self.a1()
        entries = {"p1": 14, "p2": 25, "p3": 38, "q1": 55, "q2": 74}
        ones = {v + 1: a.transitions.get((v, "1")) for v in range(14)}
        assert ones[1] == entries["p1"] and ones[2] == entries["p2"]
        assert all(ones[v] == entries["p3"] for v in range(4, 15, 2))
        assert ones[3] == ones[5] == entries["q1"]
        assert ones[7] == ones[11] == entries["q2"]
        assert ones[9] is None and ones[13] is None
        assert a.finals == frozenset(entries.values())
        assert a.num_states == 97

    def test_members(self):
        a = self.a1()
        assert D.member(a, "1") and D.member(a, "1" + "0" * 11)
        assert not D.member(a, "0" * 6 + "1" + "0" * 19)
        assert D.member(a, "0" * 6 + "1" + "0" * 23)

    def test_language_shape(self):
        for g in (STAR, K3, K4):
            for d in build_instance(g)[0]:
                assert included(d, shape_dfa())

    def test_cycles_divisible_by_targeted_primes(self):
        params = choose_parameters(3)
        for d in build_instance(STAR)[0]:
            imm = I.Immersion(I.TransitionGraph(d.num_states, d.alphabet, d.transitions),
                              (I.Slot(0, d.finals),))
            lengths = {len(c) for c in I.zero_cycles(imm.graph)}
            for p in params.primes:
                assert any(k % p == 0 for k in lengths)

    def test_vertex_range(self):
        with pytest.raises(InputError):
            build_dfa(4, STAR, choose_parameters(3))


class TestBuildInstance:
    def test_sizes(self):
        ds, bound = build_instance(K3)
        assert [d.num_states for d in ds] == [97] * 3 and bound == 125
        ds, bound = build_instance(K4)
        assert [d.num_states for d in ds] == [145] * 4 and bound == 197
        ds, bound = build_instance(ColoringInstance(2, [(1, 2)]))
        assert len(ds) == 2 and bound == 85


class TestColoringToImmersion:
    def test_triangle(self):
        targets, bound = build_instance(K3)
        imm = coloring_to_immersion(K3, {1: 0, 2: 1, 3: 2})
        assert imm.size == 125 == bound
        assert I.is_valid(imm, targets)

    def test_monochromatic_edge(self):
        with pytest.raises(InputError):
            coloring_to_immersion(K3, {1: 0, 2: 0, 3: 1})

    def test_shared_cycle_leaks_foreign_transitions(self):
        # With n >= 3, a slot on a shared dispatch cycle also sees the
        # 1-transitions its cycle-mates need at pairs <j,k> not involving it.
        g = ColoringInstance(3, [])
        targets, _ = build_instance(g)
        imm = coloring_to_immersion(g, {1: 0, 2: 0, 3: 0})
        assert imm.size == 97
        verdicts = I.validate(imm, targets)
        # slot 1 reaches <2,3> = vertex 9 after eight 0s
        assert verdicts[0].counterexample == tuple("0" * 8 + "1")
        assert not any(v.equal for v in verdicts)

    def test_validates_exactly_when_no_cycle_is_shared_or_n_is_2(self):
        for n in (2, 3, 4):
            for g in graphs_up_to_isomorphism(n):
                targets, bound = build_instance(g)
                for col in itertools.product(range(3), repeat=n):
                    c = dict(zip(range(1, n + 1), col))
                    if not g.is_proper(c):
                        continue
                    imm = coloring_to_immersion(g, c)
                    assert imm.size <= bound
                    expected = n == 2 or len(set(col)) == n
                    assert I.is_valid(imm, targets) == expected

    def test_structure_clean(self):
        params = choose_parameters(4)
        for g in graphs_up_to_isomorphism(4):
            c = solve_3coloring(g)
            if c is None:
                continue
            r = I.analyze(coloring_to_immersion(g, c), params.primes, params.m)
            assert r.ok and not r.minimal_form
            assert all(cy.length == params.m for cy in r.dispatch_cycles)
            assert sorted(cy.length for cy in r.counting_cycles) == list(params.primes)


class TestImmersionToColoring:
    def test_round_trip(self):
        for g in graphs_up_to_isomorphism(4):
            c = solve_3coloring(g)
            if c is None:
                continue
            back = immersion_to_coloring(coloring_to_immersion(g, c), g)
            assert g.is_proper(back)
            classes = lambda col: {frozenset(v for v in col if col[v] == a) for a in set(col.values())}
            assert classes(back) == classes(c)

    def test_edgeless_constant(self):
        g = ColoringInstance(3, [])
        back = immersion_to_coloring(coloring_to_immersion(g, {1: 0, 2: 0, 3: 0}), g)
        assert set(back.values()) == {0}

    def test_merged_adjacent_slots(self):
        imm = coloring_to_immersion(K3, {1: 0, 2: 0, 3: 1}, check=False)
        targets, _ = build_instance(K3)
        assert not I.is_valid(imm, targets)
        with pytest.raises(SoundnessError):
            immersion_to_coloring(imm, K3)

    def test_structure_error(self):
        imm = I.disjoint_union(build_instance(K4)[0])
        with pytest.raises(StructureError):
            immersion_to_coloring(imm, K4)


class TestSolve3Coloring:
    def test_examples(self):
        c = solve_3coloring(K3)
        assert c is not None and K3.is_proper(c)
        assert solve_3coloring(K4) is None
        assert set(solve_3coloring(ColoringInstance(5, [])).values()) == {0}

    def test_guard(self):
        with pytest.raises(ScaleError):
            solve_3coloring(ColoringInstance(13, []))

    def test_against_exhaustive(self):
        for n in range(2, 6):
            for g in graphs_up_to_isomorphism(n):
                exists = any(g.is_proper(dict(zip(range(1, n + 1), col)))
                             for col in itertools.product(range(3), repeat=n))
                assert (solve_3coloring(g) is not None) == exists


def test_graph_enumeration_counts():
    # number of graphs up to isomorphism on 1..5 vertices
    assert [len(graphs_up_to_isomorphism(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


def test_self_loop_rejected():
    with pytest.raises(InputError):
        ColoringInstance(3, [(2, 2)])
