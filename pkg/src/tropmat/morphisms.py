"""Strong maps, quotients, factorization witnesses and the category of
quotient presentations of the dual free module.

A pointed map stores ``images[i-1]`` for each source element ``i``; the value
``0`` stands for the distinguished loop.  Matroids handed to this module are
taken on contiguous labels ``1..n``.
"""

from dataclasses import dataclass

import numpy as np

from tropmat import budget
from tropmat.bits import elements_of, full, index_array, popcount_array
from tropmat.boolean_linear import BLinearMap, FiniteBModule, QuotientModule, bend_pairs, dual_map
from tropmat.errors import (
    DimensionMismatch,
    EquivalenceViolation,
    GroundSetMismatch,
    InputError,
    NotAQuotient,
    PreconditionUnmet,
    SizeBudgetExceeded,
    TheoremViolation,
    WitnessSearchExhausted,
)
from tropmat.matroid import Matroid, contract, delete, direct_sum, is_connected, uniform
from tropmat.tropical import flat_quotient_of, tls_intersect_coordinate, tls_of, tls_project


def _contiguous(m):
    return m.compact()[0]


@dataclass(frozen=True)
class PointedMap:
    source_n: int
    target_n: int
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source_n:
            raise DimensionMismatch("need one image per source element")
        if any(not 0 <= y <= self.target_n for y in self.images):
            raise InputError("image outside the target ground set")

    def __call__(self, i):
        return 0 if i == 0 else self.images[i - 1]

    def preimage(self, target_mask, with_point=False):
        """Source elements whose image lies in ``target_mask`` (or is the point, if ``with_point``)."""
        out = 0
        for i, y in enumerate(self.images):
            if (y == 0 and with_point) or (y and target_mask >> (y - 1) & 1):
                out |= 1 << i
        return out

    def compose(self, inner):
        """``self`` after ``inner``."""
        if inner.target_n != self.source_n:
            raise DimensionMismatch("maps do not compose")
        return PointedMap(inner.source_n, self.target_n, tuple(self(y) for y in inner.images))


def identity_map(n):
    return PointedMap(n, n, tuple(range(1, n + 1)))


def induced_map(f):
    """``f_*``: ``x_i -> x_{f(i)}``, or ``0`` when ``i`` goes to the point."""
    return BLinearMap(f.source_n, f.target_n, tuple(1 << (y - 1) if y else 0 for y in f.images))


def _pointed(m):
    """``M`` with the point appended as a loop with the last label."""
    return direct_sum(m, uniform(0, 1))


def _descends(phi, m, n):
    """Do the bend generators of ``Q_M`` land in congruent classes of ``Q_N``?"""
    for c in m.circuits:
        for a, b in bend_pairs(c):
            if n.closure(phi.apply_bits(a)) != n.closure(phi.apply_bits(b)):
                return False
    return True


def _dual_preserves(phi, m, n):
    """Does the transpose of ``phi`` map ``L_N`` into ``L_M``?  Generators suffice."""
    t = dual_map(phi)
    lm = tls_of(m)
    return all(t.apply_bits(g) in lm for g in n.cocircuits)


def _check_map(f, m, n):
    if (f.source_n, f.target_n) != (m.size, n.size):
        raise GroundSetMismatch(
            f"map {f.source_n}->{f.target_n} between matroids on {m.size} and {n.size} elements"
        )


def is_strong_map(f, m, n):
    """Strong map test by flat preimages, by descent to ``Q``, and by ``L``; all three must agree."""
    m, n = _contiguous(m), _contiguous(n)
    _check_map(f, m, n)
    mp, np_ = _pointed(m), _pointed(n)
    src_pt, tgt_pt = 1 << m.n, 1 << n.n
    by_flats = True
    for flat in np_.flats:
        pre = f.preimage(flat & ~tgt_pt, with_point=bool(flat & tgt_pt))
        if flat & tgt_pt:
            pre |= src_pt
        if not mp.is_flat(pre):
            by_flats = False
            break
    phi = induced_map(f)
    by_q = _descends(phi, m, n)
    by_l = _dual_preserves(phi, m, n)
    if not by_flats == by_q == by_l:
        raise EquivalenceViolation(
            f"strong map conditions disagree (flats {by_flats}, Q {by_q}, L {by_l}) for {f}, {m!r}, {n!r}"
        )
    return by_flats


def is_quotient(m, n):
    """Is ``N`` a quotient of ``M``, i.e. ``L_N <= L_M``?"""
    if (m.n, m.ground) != (n.n, n.ground):
        raise GroundSetMismatch("quotients need a common ground set")
    return tls_of(n) <= tls_of(m)


def is_flag(matroids):
    matroids = list(matroids)
    return all(is_quotient(a, b) for a, b in zip(matroids, matroids[1:]))


# -- factorization --------------------------------------------------------------------


def _rank_formula_witness(m, n, k):
    """Bases of ``P`` on ``1..n+k`` from ``r(X) = min(r_M(X&E) + |X&T|, r_N(X&E) + k)``,
    or ``None`` if that function is not a matroid rank function."""
    size = m.n + k
    idx = index_array(size)
    low = idx & full(m.n)
    t = popcount_array(size) - popcount_array(m.n)[low]
    r = np.minimum(m._rank_table[low] + t, n._rank_table[low] + k).astype(np.int16)
    if r[0] != 0:
        return None
    for a in range(size):
        w = idx[(idx >> a) & 1 == 0]
        step = r[w | (1 << a)] - r[w]
        if np.any((step < 0) | (step > 1)):
            return None
        for b in range(a + 1, size):
            w2 = w[(w >> b) & 1 == 0]
            ab = (1 << a) | (1 << b)
            if np.any(r[w2 | (1 << a)] + r[w2 | (1 << b)] < r[w2 | ab] + r[w2]):
                return None
    top = r[-1]
    sel = (popcount_array(size) == top) & (r == top)
    return [int(x) for x in np.flatnonzero(sel)]


def _is_witness(p, m, n, t_mask):
    return _contiguous(delete(p, t_mask)) == m and _contiguous(contract(p, t_mask)) == n


def _search_witness(m, n, k):
    from tropmat.catalog import matroids_of_size

    size = m.n + k
    if size > budget.limit("witness_search_n"):
        raise WitnessSearchExhausted(f"no rank-formula witness and {size} elements is past the search budget")
    t_mask = full(size) & ~full(m.n)
    for p in matroids_of_size(size):
        if p.rank == m.rank and _is_witness(p, m, n, t_mask):
            return p
    raise WitnessSearchExhausted("exhaustive search found no factorization witness")


def factorization_witness(m, n):
    """A matroid ``P`` on ``E | T`` with ``P \\ T = M`` and ``P / T = N``.

    ``T`` is ``{|E|+1, ..., |E|+r(M)-r(N)}``.
    """
    m, n = _contiguous(m), _contiguous(n)
    if m.n != n.n or not is_quotient(m, n):
        raise NotAQuotient(f"{n!r} is not a quotient of {m!r}")
    k = m.rank - n.rank
    if k == 0:
        if m != n:
            raise TheoremViolation("a quotient of the same rank differs from the matroid")
        return m
    t_mask = full(m.n + k) & ~full(m.n)
    bases = _rank_formula_witness(m, n, k)
    if bases is not None:
        p = Matroid(m.n + k, bases)
        if _is_witness(p, m, n, t_mask):
            return p
    return _search_witness(m, n, k)


def tls_factorization_witness(m, n):
    """``L_P`` for a factorization witness ``P``; checks ``L_N = L_P & B^E`` and ``L_M = pi_E(L_P)``."""
    m, n = _contiguous(m), _contiguous(n)
    p = factorization_witness(m, n)
    space = tls_of(p)
    t_mask = p.ground & ~full(m.n)
    if tls_intersect_coordinate(space, t_mask) != tls_of(n).elements:
        raise TheoremViolation("L_P meets B^E in something other than L_N")
    if tls_project(space, t_mask) != tls_of(m).elements:
        raise TheoremViolation("L_P projects onto something other than L_M")
    return space


# -- multivalued maps and the category of presentations -------------------------------


@dataclass(frozen=True)
class MultiMap:
    source_n: int
    target_n: int
    images: tuple  # masks

    def __post_init__(self):
        if len(self.images) != self.source_n:
            raise DimensionMismatch("need one image per source element")
        if any(x & ~full(self.target_n) for x in self.images):
            raise InputError("image outside the target ground set")

    def preimage(self, s):
        """``{i : f(i) <= S}``."""
        return sum(1 << i for i, x in enumerate(self.images) if not x & ~s)


def multimap_to_linear(f):
    return BLinearMap(f.source_n, f.target_n, tuple(f.images))


def linear_to_multimap(phi):
    return MultiMap(phi.source, phi.target, tuple(phi.columns))


def is_c_morphism(phi, m, n):
    """Does ``phi`` descend to ``Q_M -> Q_N``?  Cross-checked on ``L`` through the transpose."""
    m, n = _contiguous(m), _contiguous(n)
    if (phi.source, phi.target) != (m.n, n.n):
        raise DimensionMismatch(f"map {phi.source}->{phi.target} between {m.n} and {n.n} elements")
    by_q = _descends(phi, m, n)
    by_l = _dual_preserves(phi, m, n)
    if by_q != by_l:
        raise EquivalenceViolation(f"descent ({by_q}) and transpose ({by_l}) disagree for {phi}")
    return by_q


def is_multivalued_strong(f, m, n):
    m, n = _contiguous(m), _contiguous(n)
    if (f.source_n, f.target_n) != (m.n, n.n):
        raise GroundSetMismatch("multimap does not match the ground sets")
    by_flats = all(m.is_flat(f.preimage(flat)) for flat in n.flats)
    linear = is_c_morphism(multimap_to_linear(f), m, n)
    if by_flats != linear:
        raise EquivalenceViolation(f"flat preimages ({by_flats}) and the linear map ({linear}) disagree")
    return by_flats


@dataclass
class CMorphism:
    source: Matroid
    target: Matroid
    carrier: BLinearMap

    def __post_init__(self):
        if not is_c_morphism(self.carrier, self.source, self.target):
            raise PreconditionUnmet("carrier does not descend to the flat quotients")

    def compose(self, inner):
        """``self`` after ``inner``."""
        return CMorphism(inner.source, self.target, self.carrier.compose(inner.carrier))


def iota(m):
    """The presentation of ``Q_M`` as a quotient of the dual free module."""
    return flat_quotient_of(m)


def object_direct_sum(q1, q2):
    """``Q1 + Q2`` presented on the concatenated coordinates."""
    a, b = q1.n, q2.n
    idx = index_array(a + b)
    canon = q1.canonical[idx & full(a)] | (q2.canonical[idx >> a] << a)
    return QuotientModule.from_labels(a + b, canon)


def verify_iota_sum(m, n):
    """Is ``iota(M) + iota(N)`` the presentation of ``iota(M + N)``?"""
    total = object_direct_sum(iota(m), iota(n))
    return bool(np.array_equal(total.canonical, iota(direct_sum(m, n)).canonical))


def _splits(m, part):
    cl = m._closure_table
    idx = index_array(m.n)
    rest = full(m.n) & ~part
    # Q_M splits as Q_{M|part} + Q_{M|rest}: closures computed inside each part
    return bool(np.all(cl == ((cl[idx & part] & part) | (cl[idx & rest] & rest))))


def is_indecomposable(m):
    """No bipartition of the ground set splits the closure operator; must match connectivity."""
    m = _contiguous(m)
    split = None
    for rest in range(1 << max(m.n - 1, 0)):
        side = 1 | rest << 1
        if m.n and side != full(m.n) and _splits(m, side):
            split = side
            break
    verdict = split is None
    if verdict != is_connected(m):
        raise EquivalenceViolation(f"indecomposability ({verdict}) differs from connectivity for {m!r}")
    return verdict


def hom_to_unit(m):
    """Morphisms ``iota(M) -> iota(U_{1,1})`` as masks ``S`` (the form ``x_i -> [i in S]``)."""
    m = _contiguous(m)
    if (1 << m.n) > budget.limit("hom_size"):
        raise SizeBudgetExceeded("too many candidate maps for hom_to_unit")
    unit = uniform(1, 1)
    homs = []
    for s in range(1 << m.n):
        phi = BLinearMap(m.n, 1, tuple((s >> i) & 1 for i in range(m.n)))
        if is_c_morphism(phi, m, unit):
            homs.append(s)
    return FiniteBModule(homs, lambda a, b: a | b, 0)


def describe_map(f):
    return [elements_of(x) for x in f.images] if isinstance(f, MultiMap) else list(f.images)


__all__ = [
    "CMorphism",
    "MultiMap",
    "PointedMap",
    "factorization_witness",
    "hom_to_unit",
    "identity_map",
    "induced_map",
    "iota",
    "is_c_morphism",
    "is_flag",
    "is_indecomposable",
    "is_multivalued_strong",
    "is_quotient",
    "is_strong_map",
    "linear_to_multimap",
    "multimap_to_linear",
    "object_direct_sum",
    "tls_factorization_witness",
    "verify_iota_sum",
]
