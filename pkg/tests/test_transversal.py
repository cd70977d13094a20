import pytest
from hypothesis import given, settings, strategies as st

from conftest import MEDIUM
from tropmat.bits import full
from tropmat.boolean_linear import BMatrix, BVector
from tropmat.catalog import matroids_of_size
from tropmat.errors import EmptyFiber, ShapeMismatch, ZeroWedge
from tropmat.exterior import Multivector, indicator, maximal_minors, row_wedge
from tropmat.matroid import Matroid, direct_sum, uniform
from tropmat.oracles import all_presentations, exhaustive_surjective_presentation, is_transversal_mason_ingleton
from tropmat.transversal import (
    check_presentation,
    cyclic_flats,
    fibers_of_shape,
    is_fundamental_transversal,
    is_transversal,
    maximal_presentation,
    minimal_presentations,
    presentation_from_rows,
    stiefel_fiber,
)


def mat(*rows):
    return BMatrix.from_strings(list(rows))


def below(a, b):
    return a != b and not a & ~b


small_matrices = st.integers(1, 3).flatmap(
    lambda d: st.integers(d, 4).flatmap(
        lambda n: st.integers(0, (1 << (d * n)) - 1).map(lambda c: BMatrix.from_bits(d, n, c))
    )
).filter(lambda a: bool(maximal_minors(a)))


class TestPresentations:
    def test_check(self):
        u23 = uniform(2, 3)
        assert check_presentation(mat("111", "111"), u23)
        assert check_presentation(mat("101", "011"), u23)
        assert not check_presentation(mat("100", "010"), u23)
        with pytest.raises(ShapeMismatch):
            check_presentation(mat("111"), u23)

    @given(small_matrices)
    def test_check_matches_row_wedge(self, a):
        m = Matroid(a.cols, maximal_minors(a).terms)
        assert check_presentation(a, m)
        assert row_wedge(a).terms == m.bases

    def test_from_rows(self):
        v, m = presentation_from_rows([BVector(3, 0b111), BVector(3, 0b111)])
        assert v == indicator(uniform(2, 3)) and m == uniform(2, 3)
        with pytest.raises(ZeroWedge):
            presentation_from_rows([BVector(3, 1), BVector(3, 1)])
        v, m = presentation_from_rows([0b001, 0b010], n=4)
        assert m.bases == (0b011,) and m.loops == 0b1100


class TestExtremes:
    def test_maximal_examples(self):
        assert maximal_presentation(mat("101", "011")) == mat("111", "111")
        assert maximal_presentation(mat("10", "01")) == mat("11", "11")
        assert maximal_presentation(mat("111", "111")) == mat("111", "111")

    @given(small_matrices)
    def test_maximal_idempotent_and_order_free(self, a):
        top = maximal_presentation(a)
        assert maximal_minors(top) == maximal_minors(a)
        assert maximal_presentation(top) == top
        assert maximal_presentation(a, order="reverse") == top

    def test_minimal_examples(self):
        mins = minimal_presentations(mat("111", "111"))
        codes = {m.code for m in mins}
        assert len(mins) >= 2
        assert mat("110", "011").code in codes and mat("110", "101").code in codes
        assert mat("10", "01").code in {m.code for m in minimal_presentations(mat("11", "11"))}
        assert minimal_presentations(mat("1")) == [mat("1")]

    def test_minimal_under_every_row_order(self):
        a = BMatrix.from_bits(3, 4, 540)
        rep = stiefel_fiber(maximal_minors(a), 3, 4)
        assert len(rep.maxima) > 1
        assert {m.code for m in minimal_presentations(a)} == {m.code for m in rep.minimals}

    @given(small_matrices.filter(lambda a: a.rows * a.cols <= 9))
    @settings(max_examples=30)
    def test_extremes_by_pairwise_comparison(self, a):
        rep = stiefel_fiber(maximal_minors(a), a.rows, a.cols)
        members = list(rep.members)
        want = {c for c in range(1 << (a.rows * a.cols)) if maximal_minors(BMatrix.from_bits(a.rows, a.cols, c)) == maximal_minors(a)}
        assert set(members) == want
        tops = {x for x in members if not any(below(x, y) for y in members)}
        bottoms = {x for x in members if not any(below(y, x) for y in members)}
        assert {m.code for m in rep.maxima} == tops
        assert {m.code for m in rep.minimals} == bottoms
        assert {m.code for m in minimal_presentations(a)} == bottoms


class TestFibers:
    def test_u23(self):
        rep = stiefel_fiber(indicator(uniform(2, 3)), 2, 3)
        assert rep.size == 13
        assert rep.unique_maximal and rep.maximal == mat("111", "111")

    def test_u12(self):
        rep = stiefel_fiber(indicator(uniform(1, 2)), 1, 2)
        assert rep.size == 1 and rep.maximal == mat("11") and rep.minimals == [mat("11")]

    def test_empty(self):
        with pytest.raises(EmptyFiber):
            stiefel_fiber(Multivector.of(4, [(1, 2), (3, 4)]), 2, 4)

    def test_fiber_members_against_presentations(self):
        for m in matroids_of_size(4):
            if m.rank in (1, 2):
                try:
                    rep = stiefel_fiber(indicator(m), m.rank, 4)
                except EmptyFiber:
                    assert all_presentations(m) == []
                    continue
                assert [a.code for a in all_presentations(m)] == sorted(rep.members)

    def test_partition_of_shape(self):
        reps = fibers_of_shape(2, 3)
        total = sum(r.size for r in reps)
        zero = sum(1 for c in range(64) if not maximal_minors(BMatrix.from_bits(2, 3, c)))
        assert total + zero == 64

    @pytest.mark.slow
    def test_maxima_unique_up_to_row_order(self):
        for d, n in [(1, 4), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)]:
            for rep in fibers_of_shape(d, n):
                assert len(rep.maximal_row_classes) == 1
                for a in rep.matrices():
                    assert maximal_presentation(a) in rep.maxima


class TestTransversal:
    def test_cyclic_flats(self):
        assert cyclic_flats(uniform(2, 3)) == (0, 0b111)
        assert cyclic_flats(uniform(3, 3)) == (0,)
        assert cyclic_flats(uniform(1, 2)) == (0, 0b11)

    def test_examples(self):
        assert is_transversal(uniform(2, 3))
        assert is_fundamental_transversal(uniform(2, 3))
        assert is_fundamental_transversal(uniform(3, 3))
        for m in MEDIUM:
            if m.rank == 1:
                assert is_transversal(m)

    def test_rank_two_sum(self):
        m = direct_sum(uniform(1, 2), uniform(1, 2))
        assert is_transversal(m) and is_fundamental_transversal(m)

    def test_against_mason_ingleton(self):
        for m in MEDIUM:
            assert is_transversal(m) == is_transversal_mason_ingleton(m)

    @pytest.mark.slow
    def test_forced_presentation_against_exhaustive_scan(self):
        for m in MEDIUM:
            mc = m.compact()[0]
            if mc.rank and mc.rank * mc.n <= 12 and is_transversal(mc):
                assert is_fundamental_transversal(mc) == (exhaustive_surjective_presentation(mc) is not None)

    def test_fundamental_implies_transversal(self):
        for m in MEDIUM:
            if is_fundamental_transversal(m):
                assert is_transversal(m)

    @pytest.mark.slow
    def test_first_examples_n6(self):
        ms = matroids_of_size(6)
        not_t = next(m for m in ms if not is_transversal(m))
        assert not is_transversal_mason_ingleton(not_t)
        t_not_f = next(m for m in ms if is_transversal(m) and not is_fundamental_transversal(m))
        assert is_transversal_mason_ingleton(t_not_f)
        assert not_t.n == 6 and t_not_f.ground == full(6)
