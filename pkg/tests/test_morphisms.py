from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import MEDIUM, SMALL
from tropmat.boolean_linear import BLinearMap, BMatrix, find_isomorphism
from tropmat.catalog import matroids_of_size
from tropmat.errors import GroundSetMismatch, NotAQuotient, PreconditionUnmet
from tropmat.matroid import contract, delete, direct_sum, uniform
from tropmat.morphisms import (
    CMorphism,
    MultiMap,
    PointedMap,
    factorization_witness,
    hom_to_unit,
    identity_map,
    induced_map,
    iota,
    is_c_morphism,
    is_flag,
    is_indecomposable,
    is_multivalued_strong,
    is_quotient,
    is_strong_map,
    linear_to_multimap,
    multimap_to_linear,
    object_direct_sum,
    tls_factorization_witness,
    verify_iota_sum,
)
from tropmat.oracles import strong_map_by_flats
from tropmat.tropical import tls_intersect_coordinate, tls_of, tls_project

POSITIVE = [m for m in MEDIUM if m.n]


def pointed_maps(a, b):
    return [PointedMap(a, b, imgs) for imgs in product(range(b + 1), repeat=a)]


class TestPointedMaps:
    def test_induced(self):
        assert induced_map(identity_map(3)) == BLinearMap.identity(3)
        assert induced_map(PointedMap(2, 2, (0, 0))).columns == (0, 0)
        assert induced_map(PointedMap(2, 1, (1, 1))).matrix().to_strings() == ["11"]

    def test_strong_examples(self):
        f = identity_map(3)
        assert is_strong_map(f, uniform(2, 3), uniform(1, 3))
        assert not is_strong_map(f, uniform(1, 3), uniform(2, 3))
        for m in matroids_of_size(3):
            for g in pointed_maps(3, 2):
                assert is_strong_map(g, m, uniform(0, 2))

    def test_size_mismatch(self):
        with pytest.raises(GroundSetMismatch):
            is_strong_map(identity_map(2), uniform(1, 3), uniform(1, 3))

    def test_exhaustive_small(self):
        for a, b in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2)]:
            maps = pointed_maps(a, b)
            for m in matroids_of_size(a):
                for n in matroids_of_size(b):
                    for f in maps:
                        assert is_strong_map(f, m, n) == strong_map_by_flats(f.images, m, n)

    @given(st.sampled_from(POSITIVE), st.sampled_from(POSITIVE), st.sampled_from(POSITIVE), st.data())
    def test_composition(self, m, n, p, data):
        f = PointedMap(m.n, n.n, tuple(data.draw(st.lists(st.integers(0, n.n), min_size=m.n, max_size=m.n))))
        g = PointedMap(n.n, p.n, tuple(data.draw(st.lists(st.integers(0, p.n), min_size=n.n, max_size=n.n))))
        gf = g.compose(f)
        assert induced_map(gf) == induced_map(g).compose(induced_map(f))
        if is_strong_map(f, m, n) and is_strong_map(g, n, p):
            assert is_strong_map(gf, m, p)


class TestQuotients:
    def test_examples(self):
        assert is_quotient(uniform(2, 3), uniform(1, 3))
        assert is_quotient(uniform(1, 3), uniform(1, 3))
        assert not is_quotient(uniform(1, 3), uniform(2, 3))
        assert is_flag([uniform(2, 3), uniform(1, 3)])
        assert is_flag([uniform(2, 3)])
        assert not is_flag([uniform(1, 3), uniform(2, 3)])

    def test_identity_strong_iff_quotient(self):
        for m in SMALL:
            for n in matroids_of_size(m.n):
                assert is_strong_map(identity_map(m.n), m, n) == is_quotient(m, n)

    def test_factorization_example(self):
        p = factorization_witness(uniform(2, 3), uniform(1, 3))
        assert p == uniform(2, 4)
        assert factorization_witness(uniform(2, 3), uniform(2, 3)) == uniform(2, 3)
        with pytest.raises(NotAQuotient):
            factorization_witness(uniform(1, 3), uniform(2, 3))

    def test_tls_witness(self):
        space = tls_factorization_witness(uniform(2, 3), uniform(1, 3))
        assert space == tls_of(uniform(2, 4))
        assert tls_intersect_coordinate(space, {4}) == tls_of(uniform(1, 3)).elements
        assert tls_project(space, {4}) == tls_of(uniform(2, 3)).elements
        assert tls_factorization_witness(uniform(1, 2), uniform(1, 2)) == tls_of(uniform(1, 2))
        with pytest.raises(NotAQuotient):
            tls_factorization_witness(uniform(1, 3), uniform(2, 3))

    @given(st.sampled_from(POSITIVE), st.data())
    def test_witness_round_trip(self, m, data):
        n = data.draw(st.sampled_from(matroids_of_size(m.n)))
        if not is_quotient(m, n):
            return
        p = factorization_witness(m, n)
        t = p.ground & ~m.ground
        assert delete(p, t).compact()[0] == m
        assert contract(p, t).compact()[0] == n


class TestMultivalued:
    def test_conversion(self):
        f = MultiMap(1, 2, (0b11,))
        assert multimap_to_linear(f).matrix().to_strings() == ["1", "1"]
        assert multimap_to_linear(MultiMap(2, 2, (0, 0))).columns == (0, 0)

    @given(st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
    def test_round_trip(self, a, b, rng):
        f = MultiMap(a, b, tuple(rng.getrandbits(b) for _ in range(a)))
        assert linear_to_multimap(multimap_to_linear(f)) == f
        phi = BLinearMap(a, b, tuple(rng.getrandbits(b) for _ in range(a)))
        assert multimap_to_linear(linear_to_multimap(phi)) == phi

    def test_strong_example(self):
        f = MultiMap(1, 2, (0b11,))
        assert is_multivalued_strong(f, uniform(1, 1), uniform(2, 2))
        assert is_c_morphism(multimap_to_linear(f), uniform(1, 1), uniform(2, 2))

    def test_empty_image(self):
        # 1 is not a loop of U_{1,2} but f(1) is empty, so every preimage contains 1
        f = MultiMap(2, 2, (0, 0b01))
        for n in matroids_of_size(2):
            verdict = is_multivalued_strong(f, uniform(1, 2), n)
            assert verdict == all(uniform(1, 2).is_flat(f.preimage(x)) for x in n.flats)

    def test_single_valued_agrees(self):
        for m in matroids_of_size(2):
            for n in matroids_of_size(3):
                for imgs in product(range(1, 4), repeat=2):
                    f = PointedMap(2, 3, imgs)
                    g = MultiMap(2, 3, tuple(1 << (y - 1) for y in imgs))
                    assert is_strong_map(f, m, n) == is_multivalued_strong(g, m, n)


class TestCategory:
    def test_identity_morphism(self):
        for m in SMALL:
            assert is_c_morphism(BLinearMap.identity(m.n), m, m)

    def test_all_ones_row(self):
        phi = BLinearMap.from_matrix(BMatrix.from_strings(["11"]))
        verdict = is_c_morphism(phi, uniform(2, 2), uniform(1, 1))
        # x_1 and x_2 both go to x_1; U_{2,2} has no circuits so nothing can fail
        assert verdict

    def test_composition(self):
        m, n = uniform(2, 3), uniform(1, 3)
        a = CMorphism(m, n, BLinearMap.identity(3))
        b = CMorphism(n, n, BLinearMap.identity(3))
        assert b.compose(a).carrier == BLinearMap.identity(3)
        with pytest.raises(PreconditionUnmet):
            CMorphism(n, m, BLinearMap.identity(3))

    def test_iota_injective(self):
        for k in range(1, 5):
            forms = {iota(m).canonical.tobytes() for m in matroids_of_size(k)}
            assert len(forms) == len(matroids_of_size(k))

    def test_direct_sum_objects(self):
        total = object_direct_sum(iota(uniform(1, 1)), iota(uniform(1, 1)))
        assert total.class_count == 4
        empty = uniform(0, 0)
        m = uniform(2, 3)
        assert (object_direct_sum(iota(m), iota(empty)).canonical == iota(m).canonical).all()

    def test_iota_sum(self):
        for m in SMALL:
            for n in SMALL:
                if m.n + n.n <= 5:
                    assert verify_iota_sum(m, n)

    def test_indecomposable(self):
        assert is_indecomposable(uniform(2, 3))
        assert not is_indecomposable(direct_sum(uniform(1, 2), uniform(1, 2)))
        assert is_indecomposable(uniform(1, 1))
        for m in MEDIUM:
            if m.n:
                is_indecomposable(m)  # raises if it disagrees with connectivity

    def test_hom_to_unit(self):
        homs = hom_to_unit(uniform(2, 3))
        assert len(homs) == 5
        assert find_isomorphism(homs, tls_of(uniform(2, 3)).as_module()) is not None
        assert len(hom_to_unit(uniform(1, 1))) == 2
        for m in SMALL:
            assert find_isomorphism(hom_to_unit(m), tls_of(m).as_module()) is not None
