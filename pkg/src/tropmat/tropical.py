"""Tropical linear spaces ``L_M`` in B^E and the flat quotients ``Q_M``.

Vectors are masks over the labels of the matroid.  ``L_M`` is kept as a
predicate plus its cocircuit generators; ``elements`` enumerates it.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from tropmat.bits import elements_of, format_set, iter_bits, k_subsets, popcount
from tropmat.boolean_linear import (
    BVector,
    FiniteBModule,
    QuotientModule,
    bend_congruence,
    find_isomorphism,
    hom_set,
)
from tropmat.errors import (
    DimensionMismatch,
    EquivalenceViolation,
    GroundSetMismatch,
    NotSufficientlyMoveable,
    PreconditionUnmet,
    TheoremViolation,
)
from tropmat.exterior import indicator, is_plucker, wedge
from tropmat.matroid import Matroid, as_mask, contract, delete, matroid_union

# cross-check flat quotients against the bend congruence up to this many elements
BEND_CHECK_N = 8


def _vector_mask(v):
    return v.bits if isinstance(v, BVector) else as_mask(v)


def span(generators):
    """All joins of a family of masks, including the empty join."""
    out = {0}
    for g in set(generators):
        if g not in out:
            out |= {x | g for x in out}
    return frozenset(out)


class TropicalLinearSpace:
    """``L_M``: vectors whose support complement (inside the ground set) is a flat."""

    def __init__(self, matroid):
        self.matroid = matroid
        self.n = matroid.n
        self.ground = matroid.ground

    @property
    def dimension(self):
        return self.matroid.rank

    @cached_property
    def generators(self):
        return self.matroid.cocircuits

    def __contains__(self, v):
        x = _vector_mask(v)
        return not x & ~self.ground and self.matroid.is_flat(self.ground & ~x)

    @cached_property
    def elements(self):
        g = self.ground
        return frozenset(g & ~f for f in self.matroid.flats)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, TropicalLinearSpace):
            return NotImplemented
        return (self.n, self.ground, self.elements) == (other.n, other.ground, other.elements)

    def __hash__(self):
        return hash((self.n, self.ground, self.elements))

    def __le__(self, other):
        if (self.n, self.ground) != (other.n, other.ground):
            raise GroundSetMismatch("tropical linear spaces in different ambient spaces")
        return all(g in other for g in self.generators)

    def as_module(self):
        return FiniteBModule(sorted(self.elements), lambda a, b: a | b, 0)

    def __repr__(self):
        return f"TropicalLinearSpace({self.matroid!r}, {len(self)} elements)"


def tls_of(m):
    return TropicalLinearSpace(m)


def _tropker_member(m, x):
    """No circuit meets ``x`` in exactly one element."""
    return not any(popcount(c & x) == 1 for c in m.circuits)


def tls_contains(space, v):
    x = _vector_mask(v)
    if isinstance(v, BVector) and v.n != space.n:
        raise DimensionMismatch(f"vector of dimension {v.n} in a space of dimension {space.n}")
    if x & ~space.ground:
        return False
    by_flats = x in space
    by_circuits = _tropker_member(space.matroid, x)
    if by_flats != by_circuits:
        raise EquivalenceViolation(f"membership of {format_set(x)} differs between flats and circuits")
    return by_flats


# -- forms read off the basis indicator vector ------------------------------------


def circuit_forms(m):
    """Nonzero ``f_A = sum_{i in A, A-i basis} x_i`` over ``(d+1)``-subsets ``A``."""
    bs = m.basis_set
    out = set()
    for a in k_subsets(m.ground, m.rank + 1):
        f = sum(i for i in iter_bits(a) if a ^ i in bs)
        if f:
            out.add(f)
    return tuple(sorted(out))


def cocircuit_vectors(m):
    """Nonzero ``g_A = sum_{i not in A, A+i basis} e_i`` over ``(d-1)``-subsets ``A``."""
    if m.rank == 0:
        return ()
    bs = m.basis_set
    out = set()
    for a in k_subsets(m.ground, m.rank - 1):
        g = sum(i for i in iter_bits(m.ground & ~a) if a | i in bs)
        if g:
            out.add(g)
    return tuple(sorted(out))


# -- Q_M --------------------------------------------------------------------------


@dataclass
class FlatQuotient(QuotientModule):
    """``Q_M`` with canonical form ``S -> cl(S)``; ``matroid`` is the compact source."""

    matroid: Matroid = None

    @property
    def flats(self):
        return self.canonical_forms


def flat_quotient_of(m, bend_check=None):
    """Quotient of the dual free module identifying forms with equal closure.

    With ``bend_check`` (default: ground sets up to ``BEND_CHECK_N``) the same
    partition is recomputed from the bend relations of the circuit forms and
    the two are compared.
    """
    mc, _ = m.compact()
    q = FlatQuotient.from_labels(mc.n, mc._closure_table)
    q.matroid = mc
    if not np.array_equal(q.canonical, mc._closure_table):
        raise EquivalenceViolation("class maxima differ from closures")
    if bend_check is None:
        bend_check = mc.n <= BEND_CHECK_N
    if bend_check:
        bent = bend_congruence(mc.n, mc.circuits)
        if not np.array_equal(bent.canonical, q.canonical):
            s = int(np.flatnonzero(bent.canonical != q.canonical)[0])
            raise EquivalenceViolation(
                f"bend congruence and closure disagree at {format_set(s)} for {mc!r}"
            )
    return q


def module_of_flats(m):
    """``Q_M`` as an explicit module: flats with join ``cl(F | G)``."""
    return FiniteBModule(m.flats, lambda a, b: m.closure(a | b), m.closure(0))


def duality_check(m):
    """Do the hom sets of ``L_M`` and ``Q_M`` reproduce ``Q_M`` and ``L_M``?"""
    mc, _ = m.compact()
    q = flat_quotient_of(mc).as_module()
    lm = tls_of(mc).as_module()
    forward = find_isomorphism(hom_set(lm).as_module(), q) is not None
    backward = find_isomorphism(hom_set(q).as_module(), lm) is not None
    return forward and backward


# -- minors -------------------------------------------------------------------------


def tls_intersect_coordinate(space, t):
    """Elements of ``L`` supported away from ``T``."""
    t = as_mask(t)
    return frozenset(x for x in space.elements if not x & t)


def tls_project(space, t):
    """Join closure of the generators with the ``T`` coordinates deleted."""
    t = as_mask(t)
    return span(g & ~t for g in space.generators)


def minors_check(m, t):
    """Both minor identities for ``T``; returns ``(contraction_ok, deletion_ok)``."""
    space = tls_of(m)
    c = tls_intersect_coordinate(space, t) == tls_of(contract(m, t)).elements
    d = tls_project(space, t) == tls_of(delete(m, t)).elements
    return c, d


# -- stable sums ------------------------------------------------------------------


def _have_disjoint_bases(m, n):
    nb = n.bases
    return any(not a & b for a in m.bases for b in nb)


def sufficiently_disjoint(m, n):
    """Disjoint bases exist; also checked through the union rank and ``[M]^[N]``."""
    if (m.n, m.ground) != (n.n, n.ground):
        raise GroundSetMismatch("sufficiently_disjoint needs a common ground set")
    direct = _have_disjoint_bases(m, n)
    by_rank = matroid_union(m, n).rank == m.rank + n.rank
    by_wedge = bool(wedge(indicator(m), indicator(n)))
    if not direct == by_rank == by_wedge:
        raise EquivalenceViolation(
            f"disjointness tests disagree (bases {direct}, rank {by_rank}, wedge {by_wedge})"
        )
    return direct


def stable_sum_matroid(m, n):
    """``M v N`` computed as the matroid of ``[M] ^ [N]``, checked against the union."""
    w = wedge(indicator(m), indicator(n))
    if not w:
        raise NotSufficientlyMoveable(f"{m!r} and {n!r} have no disjoint bases")
    if not is_plucker(w):
        raise EquivalenceViolation("wedge of basis indicators is not a Plücker vector")
    p = Matroid(m.n, w.terms, ground=m.ground, check=False)
    if p != matroid_union(m, n):
        raise EquivalenceViolation("wedge of indicators differs from the matroid union")
    return p


def stable_sum(m, n):
    if (m.n, m.ground) != (n.n, n.ground):
        raise GroundSetMismatch("stable_sum needs a common ground set")
    return tls_of(stable_sum_matroid(m, n))


@dataclass
class MinorSumReport:
    contraction_hypothesis: bool
    contraction_identity: object  # None when inapplicable
    deletion_hypothesis: bool
    deletion_identity: object

    @property
    def ok(self):
        return self.contraction_identity is not False and self.deletion_identity is not False

    def describe(self):
        def word(h, i):
            return "inapplicable" if not h else ("holds" if i else "FAILS")

        return (
            f"(a) {word(self.contraction_hypothesis, self.contraction_identity)}, "
            f"(b) {word(self.deletion_hypothesis, self.deletion_identity)}"
        )


def verify_minor_stable_sum(m, n):
    """Stable sums against minors, for ``M`` on ``E`` and ``N`` on ``E | T``.

    ``m.ground`` is ``E``; ``n.ground`` must contain it and ``T`` is the rest.
    An identity is ``None`` when its hypothesis fails.  The moveability
    conclusion of each part is folded into its identity.
    """
    if m.n != n.n or m.ground & ~n.ground:
        raise GroundSetMismatch("N must live on a superset of the ground set of M")
    t = n.ground & ~m.ground
    m_big = Matroid(n.n, m.bases, ground=n.ground, check=False)
    big = None

    def big_sum():
        nonlocal big
        if big is None:
            big = tls_of(stable_sum_matroid(m_big, n)) if sufficiently_disjoint(m_big, n) else False
        return big

    nc, nd = contract(n, t), delete(n, t)
    # L_N meets B^E in L_{N/T} and projects onto L_{N\T}
    if tls_intersect_coordinate(tls_of(n), t) != tls_of(nc).elements:
        raise TheoremViolation("intersection with a coordinate subspace is not the contraction")
    if tls_project(tls_of(n), t) != tls_of(nd).elements:
        raise TheoremViolation("coordinate projection is not the deletion")

    hyp_a = sufficiently_disjoint(m, nc)
    ident_a = None
    if hyp_a:
        s = big_sum()
        ident_a = s is not False and stable_sum(m, nc).elements == tls_intersect_coordinate(s, t)
    hyp_b = sufficiently_disjoint(m, nd)
    ident_b = None
    if hyp_b:
        s = big_sum()
        ident_b = s is not False and stable_sum(m, nd).elements == tls_project(s, t)
    return MinorSumReport(hyp_a, ident_a, hyp_b, ident_b)


@dataclass
class MonotonicityReport:
    moveable: bool
    included: bool

    @property
    def ok(self):
        return self.moveable and self.included


def tls_included(m, n):
    """``L_M <= L_N`` on a common ground set."""
    return tls_of(m) <= tls_of(n)


def verify_monotonicity(p, m, n):
    """For ``L_M <= L_N`` with ``P, N`` sufficiently disjoint, check the stable sum inclusion."""
    if not tls_included(m, n):
        raise PreconditionUnmet("L_M is not contained in L_N")
    if not sufficiently_disjoint(p, n):
        raise PreconditionUnmet("P and N are not sufficiently disjoint")
    if not sufficiently_disjoint(p, m):
        raise TheoremViolation(f"P={p!r} and M={m!r} are not sufficiently disjoint")
    small, large = stable_sum(p, m), stable_sum(p, n)
    if not small <= large:
        raise TheoremViolation(f"stable sum inclusion fails for P={p!r}, M={m!r}, N={n!r}")
    return MonotonicityReport(True, True)


def describe_space(space):
    return [elements_of(x) for x in sorted(space.elements)]
