import pytest
from hypothesis import given, strategies as st

from conftest import MEDIUM, SMALL
from tropmat.bits import submasks
from tropmat.boolean_linear import BVector
from tropmat.catalog import matroids_of_size
from tropmat.errors import DimensionMismatch, GroundSetMismatch, NotSufficientlyMoveable, PreconditionUnmet
from tropmat.matroid import Matroid, direct_sum, uniform
from tropmat.tropical import (
    describe_space,
    duality_check,
    flat_quotient_of,
    minors_check,
    stable_sum,
    stable_sum_matroid,
    sufficiently_disjoint,
    tls_contains,
    tls_included,
    tls_intersect_coordinate,
    tls_of,
    tls_project,
    verify_minor_stable_sum,
    verify_monotonicity,
)

POSITIVE = [m for m in MEDIUM if m.n]


def same_size(m):
    return st.sampled_from(matroids_of_size(m.n))


class TestLinearSpaces:
    def test_u23(self):
        assert describe_space(tls_of(uniform(2, 3))) == [[], [1, 2], [1, 3], [2, 3], [1, 2, 3]]

    def test_u12(self):
        assert describe_space(tls_of(uniform(1, 2))) == [[], [1, 2]]

    def test_free(self):
        assert len(tls_of(uniform(3, 3))) == 8

    def test_contains(self):
        space = tls_of(uniform(2, 3))
        assert tls_contains(space, BVector.of(3, {1, 2}))
        assert not tls_contains(space, BVector.of(3, {1}))
        assert tls_contains(space, BVector(3, 0))
        with pytest.raises(DimensionMismatch):
            tls_contains(space, BVector(4, 1))

    @pytest.mark.slow
    def test_contains_exhaustive_n6(self):
        for m in matroids_of_size(6):
            space = tls_of(m)
            assert len(space) == len(m.flats)
            members = [v for v in range(64) if tls_contains(space, v)]
            assert members == sorted(m.ground & ~f for f in m.flats)

    @given(st.sampled_from(POSITIVE))
    def test_elements_are_cocircuit_unions(self, m):
        unions = {0}
        for c in m.cocircuits:
            unions |= {u | c for u in unions}
        assert tls_of(m).elements == frozenset(unions)


class TestFlatQuotient:
    def test_examples(self):
        q = flat_quotient_of(uniform(2, 3))
        assert q.class_count == 5 and sorted(q.flats) == sorted(uniform(2, 3).flats)
        assert flat_quotient_of(uniform(3, 3)).class_count == 8
        q = flat_quotient_of(uniform(1, 2))
        assert {frozenset(c) for c in q.classes()} == {frozenset({0}), frozenset({1, 2, 3})}

    @given(st.sampled_from(MEDIUM))
    def test_canonical_is_closure(self, m):
        q = flat_quotient_of(m, bend_check=True)
        for s in submasks(m.ground):
            f = q.canonical_form(s)
            assert f == m.closure(s)
            assert s | f == f and q.canonical_form(f) == f

    def test_duality_examples(self):
        assert duality_check(uniform(2, 3))
        assert duality_check(uniform(1, 1))

    def test_duality_small_catalog(self):
        assert all(duality_check(m) for m in SMALL)


class TestMinors:
    def test_u23_examples(self):
        space = tls_of(uniform(2, 3))
        assert tls_intersect_coordinate(space, {3}) == frozenset({0, 0b011})
        assert tls_project(space, {3}) == frozenset(range(4))
        assert tls_intersect_coordinate(space, set()) == space.elements
        assert tls_project(space, set()) == space.elements

    @given(st.sampled_from(POSITIVE), st.data())
    def test_all_minors(self, m, data):
        t = data.draw(st.integers(0, m.ground))
        assert minors_check(m, t & m.ground) == (True, True)


class TestStableSums:
    def test_disjoint(self):
        assert sufficiently_disjoint(uniform(1, 3), uniform(1, 3))
        assert not sufficiently_disjoint(uniform(2, 3), uniform(2, 3))
        assert sufficiently_disjoint(uniform(2, 3), uniform(0, 3))
        with pytest.raises(GroundSetMismatch):
            sufficiently_disjoint(uniform(1, 2), uniform(1, 3))

    def test_examples(self):
        assert stable_sum(uniform(1, 3), uniform(1, 3)) == tls_of(uniform(2, 3))
        a = direct_sum(uniform(1, 1), uniform(0, 1))
        b = direct_sum(uniform(0, 1), uniform(1, 1))
        assert stable_sum(a, b) == tls_of(uniform(2, 2))
        with pytest.raises(NotSufficientlyMoveable):
            stable_sum(uniform(2, 3), uniform(2, 3))

    @given(st.sampled_from(POSITIVE), st.data())
    def test_commutative(self, m, data):
        n = data.draw(same_size(m))
        if sufficiently_disjoint(m, n):
            assert stable_sum_matroid(m, n) == stable_sum_matroid(n, m)

    @given(st.sampled_from([m for m in SMALL if m.n]), st.data())
    def test_associative(self, m, data):
        n, p = data.draw(same_size(m)), data.draw(same_size(m))
        if sufficiently_disjoint(m, n) and sufficiently_disjoint(n, p):
            mn, np_ = stable_sum_matroid(m, n), stable_sum_matroid(n, p)
            left, right = sufficiently_disjoint(mn, p), sufficiently_disjoint(m, np_)
            assert left == right
            if left:
                assert stable_sum_matroid(mn, p) == stable_sum_matroid(m, np_)

    def test_minor_stable_sum_example(self):
        m = Matroid(3, [0b01, 0b10], ground=0b011)
        rep = verify_minor_stable_sum(m, uniform(2, 3))
        assert rep.contraction_hypothesis and rep.contraction_identity
        assert rep.describe().startswith("(a) holds")

    def test_minor_stable_sum_empty_t(self):
        rep = verify_minor_stable_sum(uniform(1, 3), uniform(1, 3))
        assert rep.ok and rep.contraction_identity and rep.deletion_identity

    def test_minor_stable_sum_inapplicable(self):
        rep = verify_minor_stable_sum(uniform(2, 3), uniform(2, 3))
        assert rep.describe() == "(a) inapplicable, (b) inapplicable"

    def test_monotonicity_examples(self):
        assert verify_monotonicity(uniform(1, 3), uniform(1, 3), uniform(2, 3)).ok
        assert stable_sum(uniform(1, 3), uniform(1, 3)) <= stable_sum(uniform(1, 3), uniform(2, 3))
        m = uniform(1, 3)
        assert verify_monotonicity(m, m, m).ok
        assert verify_monotonicity(uniform(0, 3), uniform(1, 3), uniform(2, 3)).ok
        with pytest.raises(PreconditionUnmet):
            verify_monotonicity(uniform(0, 3), uniform(2, 3), uniform(1, 3))

    @given(st.sampled_from(POSITIVE), st.data())
    def test_monotonicity_random(self, m, data):
        n, p = data.draw(same_size(m)), data.draw(same_size(m))
        if tls_included(m, n) and sufficiently_disjoint(p, n):
            assert verify_monotonicity(p, m, n).ok
