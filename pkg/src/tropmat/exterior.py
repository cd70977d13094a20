"""The idempotent exterior algebra of B^n.

A homogeneous multivector of degree ``d`` is a set of ``d``-subsets (masks);
every listed subset has coefficient 1.  There are no signs over B, so the
wedge of ``e_I`` and ``e_J`` is ``e_{I|J}`` when ``I`` and ``J`` are disjoint
and zero otherwise.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from tropmat import budget
from tropmat.bits import elements_of, full, iter_bits, k_subsets, popcount
from tropmat.boolean_linear import _perfect_matching, bend_pairs, congruence_closure
from tropmat.errors import (
    AmbientMismatch,
    DimensionBudgetExceeded,
    EquivalenceViolation,
    InputError,
    NotPlucker,
    RankOutOfRange,
    WideMatrix,
    ZeroMultivector,
)
from tropmat.matroid import Matroid, as_mask, satisfies_strong_exchange, truncation


@dataclass(frozen=True)
class Multivector:
    n: int
    d: int
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(sorted(set(int(t) for t in self.terms)))
        object.__setattr__(self, "terms", terms)
        for t in terms:
            if popcount(t) != self.d or t & ~full(self.n):
                raise InputError(f"term {elements_of(t)} is not a {self.d}-subset of 1..{self.n}")

    @classmethod
    def of(cls, n, terms):
        """Build from iterables of 1-based elements; the degree is read off the terms."""
        masks = [as_mask(t) for t in terms]
        if not masks:
            raise InputError("cannot infer the degree of an empty term list")
        return cls(n, popcount(masks[0]), tuple(masks))

    @classmethod
    def unit(cls, n):
        return cls(n, 0, (0,))

    @classmethod
    def vector(cls, n, support):
        """Degree one multivector ``sum_{i in support} e_i``."""
        return cls(n, 1, tuple(iter_bits(as_mask(support))))

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if self.n != other.n:
            raise AmbientMismatch("multivectors live in different ambient spaces")
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.d != other.d:
            raise InputError("sum of multivectors of different degree")
        return Multivector(self.n, self.d, self.terms + other.terms)

    def __contains__(self, term):
        return as_mask(term) in set(self.terms)

    def term_lists(self):
        return [elements_of(t) for t in self.terms]

    def __repr__(self):
        if self.is_zero:
            return f"Multivector(n={self.n}, d={self.d}, 0)"
        return f"Multivector(n={self.n}, d={self.d}, {self.term_lists()})"


def wedge(u, v):
    if u.n != v.n:
        raise AmbientMismatch(f"cannot wedge in dimensions {u.n} and {v.n}")
    d = u.d + v.d
    if not u.terms or not v.terms:
        return Multivector(u.n, d)
    a = np.fromiter(u.terms, dtype=np.int64)
    b = np.fromiter(v.terms, dtype=np.int64)
    both = a[:, None] | b[None, :]
    keep = (a[:, None] & b[None, :]) == 0
    return Multivector(u.n, d, tuple(np.unique(both[keep]).tolist()))


def wedge_all(vectors, n):
    out = Multivector.unit(n)
    for v in vectors:
        out = wedge(out, v)
        if out.is_zero:
            break
    return out


def indicator(m):
    """Basis indicator vector ``[M]`` over the labels ``1..n`` of ``m``."""
    return Multivector(m.n, m.rank, m.bases)


def _plucker_relations_hold(terms, n, d):
    """Bend form of the Plücker relations: for every ``A`` of size ``d+1`` and
    ``B`` of size ``d-1`` the number of ``i in A-B`` with both ``A-i`` and ``B+i``
    terms is never exactly one.  Pairs with no such ``i`` are skipped."""
    ts = set(terms)
    ground = full(n)
    tops = {t | j for t in terms for j in iter_bits(ground & ~t)}
    bottoms = {t ^ j for t in terms for j in iter_bits(t)} if d else set()
    for a in tops:
        for b in bottoms:
            hits = 0
            for i in iter_bits(a & ~b):
                if (a ^ i) in ts and (b | i) in ts:
                    hits += 1
                    if hits > 1:
                        break
            if hits == 1:
                return False
    return True


def is_plucker(v):
    """Is ``v`` a basis indicator vector?  Checked by the Plücker relations and by strong exchange."""
    if v.is_zero:
        raise ZeroMultivector("the zero multivector is not a Plücker vector")
    by_relations = _plucker_relations_hold(v.terms, v.n, v.d)
    by_exchange = satisfies_strong_exchange(v.terms)
    if by_relations != by_exchange:
        raise EquivalenceViolation(
            f"Plücker relations say {by_relations} but strong exchange says {by_exchange} for {v}"
        )
    return by_relations


def matroid_from_plucker(v):
    if v.is_zero or not is_plucker(v):
        raise NotPlucker(f"{v} is not a basis indicator vector")
    return Matroid(v.n, v.terms, check=False)


def decompose_by_element(v, t):
    """Split ``v = w ^ e_t + w'`` with neither ``w`` nor ``w'`` involving ``t``."""
    tb = 1 << (t - 1)
    w = Multivector(v.n, max(v.d - 1, 0), tuple(x ^ tb for x in v.terms if x & tb))
    w2 = Multivector(v.n, v.d, tuple(x for x in v.terms if not x & tb))
    return w, w2


def maximal_minors(a):
    """Multivector of the nonzero maximal permanents of a B-matrix."""
    if a.rows > a.cols:
        raise WideMatrix(f"{a.rows}x{a.cols} matrix has no maximal minors")
    terms = [s for s in k_subsets(full(a.cols), a.rows) if _perfect_matching(a.data, s)]
    return Multivector(a.cols, a.rows, tuple(terms))


def row_wedge(a):
    """Wedge of the rows of a B-matrix (the second route to the maximal minors)."""
    return wedge_all([Multivector.vector(a.cols, r) for r in a.data], a.cols)


def independents_indicator(m):
    """``{i: [T_i(M)]}`` for ``i = 0..rank``, the graded indicator of all independent sets."""
    return {i: indicator(truncation(m, i)) for i in range(m.rank + 1)}


def graded_wedge(f, g, n):
    """Wedge of two graded families ``{degree: Multivector}``, dropping zero pieces."""
    out = {}
    for i, u in f.items():
        for j, v in g.items():
            w = wedge(u, v)
            if w:
                out[i + j] = out[i + j] + w if i + j in out else w
    return out


def wedge_power_quotient(m, k):
    """The quotient of the ``k``-th exterior power of the dual free module by the
    wedge-translated bend relations of the circuit forms of ``m``.

    Coordinates are the ``k``-subsets of the ground set in increasing mask order;
    the returned quotient has ``coordinates`` set to that list.
    """
    if not 1 <= k <= max(m.rank, 1):
        raise RankOutOfRange(f"wedge power {k} outside 1..{m.rank}")
    mc, _ = m.compact()
    n = mc.n
    coords = k_subsets(full(n), k)
    dim = len(coords)
    if dim > budget.limit("congruence_dim"):
        raise DimensionBudgetExceeded(f"C({n},{k}) = {dim} coordinates exceed the congruence budget")
    pos = {c: p for p, c in enumerate(coords)}

    def times(form, i_mask):
        # form ^ x_I, expressed in the k-subset coordinates
        out = 0
        for j in iter_bits(form & ~i_mask):
            out |= 1 << pos[j | i_mask]
        return out

    pairs = set()
    lower = k_subsets(full(n), k - 1)
    for c in mc.circuits:
        for a, b in bend_pairs(c):
            for i_mask in lower:
                u, v = times(a, i_mask), times(b, i_mask)
                if u != v:
                    pairs.add((max(u, v), min(u, v)))
    assert dim == comb(n, k)
    return congruence_closure(dim, sorted(pairs), coordinates=tuple(coords))


def coordinate_mask(q, subsets):
    """Mask, in the coordinates of ``q``, of the listed ``k``-subsets (element iterables)."""
    pos = {c: p for p, c in enumerate(q.coordinates)}
    return sum(1 << pos[as_mask(s)] for s in subsets)
