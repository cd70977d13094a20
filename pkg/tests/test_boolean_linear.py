import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import SMALL
from tropmat.bits import full
from tropmat.boolean_linear import (
    BLinearMap,
    BMatrix,
    BVector,
    FiniteBModule,
    apply,
    bend_congruence,
    congruence_closure,
    dual_map,
    find_isomorphism,
    hom_set,
    is_surjective,
    permanent,
    submodule,
    tropical_kernel_membership,
)
from tropmat.errors import DimensionBudgetExceeded, DimensionMismatch, NotSquare
from tropmat.matroid import uniform
from tropmat.oracles import brute_force_homs, naive_congruence, tropker_by_definition
from tropmat.tropical import flat_quotient_of, tls_of

vectors = st.integers(1, 8).flatmap(lambda n: st.builds(BVector, st.just(n), st.integers(0, (1 << n) - 1)))


def partition(q):
    return {frozenset(c) for c in q.classes()}


class TestVectorsAndMaps:
    @given(vectors)
    def test_idempotent(self, v):
        assert v + v == v

    def test_apply(self):
        v = BVector.of(3, {1, 3})
        assert apply(BLinearMap.identity(3), v) == v
        phi = BLinearMap(2, 2, (0b11, 0b10))
        assert apply(phi, BVector.of(2, {1, 2})).support == [1, 2]
        assert apply(phi, BVector(2, 0)).bits == 0
        with pytest.raises(DimensionMismatch):
            apply(phi, BVector(3, 1))

    def test_dual_map(self):
        assert dual_map(BLinearMap.identity(3)) == BLinearMap.identity(3)
        f = BLinearMap(2, 1, (1, 1))  # both elements to 1
        assert dual_map(f).columns == (0b11,)
        row = BLinearMap.from_matrix(BMatrix.from_strings(["111"]))
        assert dual_map(row).matrix().to_strings() == ["1", "1", "1"]

    @given(st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
    def test_dual_involution(self, a, b, rng):
        phi = BLinearMap(a, b, tuple(rng.getrandbits(b) for _ in range(a)))
        assert dual_map(dual_map(phi)) == phi

    def test_permanent(self):
        assert permanent(BMatrix.from_strings(["10", "01"])) == 1
        assert permanent(BMatrix.from_strings(["00", "00"])) == 0
        assert permanent(BMatrix.from_strings(["11", "11"])) == 1
        with pytest.raises(NotSquare):
            permanent(BMatrix.from_strings(["110", "011"]))

    @given(st.integers(1, 4), st.randoms(use_true_random=False))
    def test_permanent_by_permutations(self, d, rng):
        from itertools import permutations

        a = BMatrix(d, d, tuple(rng.getrandbits(d) for _ in range(d)))
        slow = any(all(a.entry(r, p[r]) for r in range(d)) for p in permutations(range(d)))
        assert permanent(a) == int(slow)

    def test_surjective(self):
        assert is_surjective(BLinearMap.identity(3))
        assert is_surjective(BLinearMap.from_matrix(BMatrix.from_strings(["101", "011"])))
        assert not is_surjective(BLinearMap.from_matrix(BMatrix.from_strings(["11", "11"])))


class TestTropicalKernel:
    def test_examples(self):
        f = BVector.of(3, {1, 2, 3})
        assert tropical_kernel_membership(f, BVector.of(3, {1, 2}))
        assert not tropical_kernel_membership(f, BVector.of(3, {1}))
        assert tropical_kernel_membership(f, BVector(3, 0))

    def test_exhaustive_against_definition(self):
        for n in range(1, 8):
            for f in range(1 << n):
                for v in range(1 << n):
                    assert tropical_kernel_membership(BVector(n, f), BVector(n, v)) == tropker_by_definition(f, v, n)

    @pytest.mark.slow
    def test_exhaustive_n10_sampled_forms(self):
        rng = random.Random(3)
        n = 10
        for f in rng.sample(range(1 << n), 40):
            for v in range(1 << n):
                assert tropical_kernel_membership(BVector(n, f), BVector(n, v)) == tropker_by_definition(f, v, n)

    def test_map_is_rowwise(self):
        phi = BLinearMap(3, 2, (0b01, 0b11, 0b10))  # rows x1+x2 and x2+x3
        assert tropical_kernel_membership(phi, BVector.of(3, {1, 2, 3}))
        assert not tropical_kernel_membership(phi, BVector.of(3, {1}))


class TestCongruences:
    def test_bend_of_two_term_form(self):
        q = congruence_closure(2, [(0b11, 0b01), (0b11, 0b10)])
        assert partition(q) == {frozenset({0}), frozenset({1, 2, 3})}

    def test_identity_and_total(self):
        assert congruence_closure(2, []).class_count == 4
        assert congruence_closure(1, [(1, 0)]).class_count == 1

    def test_bend_congruence_examples(self):
        assert bend_congruence(3, [0b111]).class_count == 5
        assert bend_congruence(4, []).class_count == 16
        q = bend_congruence(4, [0b0001])
        assert q.class_count == 8 and q.congruent(1, 0)

    def test_budget(self):
        with pytest.raises(DimensionBudgetExceeded):
            congruence_closure(40, [])

    @given(st.integers(1, 4), st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=4))
    def test_against_naive_fixpoint(self, n, pairs):
        pairs = [(a & full(n), b & full(n)) for a, b in pairs]
        q = congruence_closure(n, pairs)
        assert partition(q) == naive_congruence(n, pairs)

    @given(st.integers(1, 6), st.lists(st.tuples(st.integers(0, 63), st.integers(0, 63)), max_size=6), st.randoms(use_true_random=False))
    def test_order_and_engine_independent(self, n, pairs, rng):
        pairs = [(a & full(n), b & full(n)) for a, b in pairs]
        q = congruence_closure(n, pairs, method="dsu")
        shuffled = list(pairs)
        rng.shuffle(shuffled)
        swapped = [(b, a) for a, b in shuffled]
        assert np.array_equal(congruence_closure(n, swapped, method="graph").canonical, q.canonical)

    @given(st.integers(1, 6), st.lists(st.tuples(st.integers(0, 63), st.integers(0, 63)), max_size=6))
    def test_classes_join_closed_with_max(self, n, pairs):
        q = congruence_closure(n, [(a & full(n), b & full(n)) for a, b in pairs])
        assert q.check()
        for cls in q.classes():
            top = cls[0]
            assert all(x | top == top for x in cls)
            assert all(q.canonical_form(x | y) == top for x in cls for y in cls)
        assert np.array_equal(q.canonical[q.canonical], q.canonical)


class TestHoms:
    def test_boolean_semifield(self):
        b = submodule([0, 1])
        assert len(hom_set(b).homs) == 2

    def test_b_squared(self):
        assert len(hom_set(submodule(range(4))).homs) == 4

    def test_l_of_u23(self):
        lm = tls_of(uniform(2, 3)).as_module()
        homs = hom_set(lm).as_module()
        assert len(homs) == 5
        assert find_isomorphism(homs, flat_quotient_of(uniform(2, 3)).as_module()) is not None

    def test_against_brute_force(self):
        for m in SMALL:
            mod = tls_of(m).as_module()
            slow = brute_force_homs(mod.elements, mod.join, mod.zero) if len(mod) <= 12 else None
            if slow is None:
                continue
            fast = [frozenset(x for x in mod.elements if h >> mod.index[x] & 1) for h in hom_set(mod).homs]
            assert sorted(map(sorted, slow)) == sorted(map(sorted, fast))

    def test_isomorphism_negative(self):
        chain = FiniteBModule([0, 1, 3], lambda a, b: a | b, 0)
        square = submodule([0, 1, 2, 3])
        assert find_isomorphism(chain, square) is None
        three = FiniteBModule([0, 1, 2, 3], lambda a, b: max(a, b), 0)
        assert find_isomorphism(three, square) is None

    def test_dual_of_surjection_is_injective(self):
        # B^3 onto Q_{U_{2,3}}; precomposition with the quotient map sends distinct homs to distinct homs
        q = flat_quotient_of(uniform(2, 3))
        homs = hom_set(q.as_module())
        pulled = {tuple(homs.evaluate(h, int(q.canonical[v])) for v in range(8)) for h in homs.homs}
        assert len(pulled) == len(homs.homs)
