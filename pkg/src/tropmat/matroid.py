"""Matroids on finite ground sets, stored by their bases.

A :class:`Matroid` lives on the labels ``1..n``; its ``ground`` mask may be a
proper subset of those labels (deletions and contractions keep the original
labels).  ``Matroid.compact`` gives the same matroid on ``1..n'``.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

import numpy as np

from tropmat import budget
from tropmat.bits import (
    elements_of,
    format_set,
    full,
    index_array,
    iter_bits,
    k_subsets,
    mask_of,
    popcount,
    popcount_array,
    with_bit,
)
from tropmat.errors import (
    ElementInBasis,
    EmptyBases,
    ExchangeFailure,
    GroundSetMismatch,
    InputError,
    MixedCardinality,
    NotABasis,
    RankOutOfRange,
    SizeBudgetExceeded,
)


def as_mask(x):
    """Accept a bit mask (``int``) or an iterable of 1-based elements."""
    if isinstance(x, (int, np.integer)):
        return int(x)
    return mask_of(x)


def exchange_witness(bases):
    """First ``(B1, B2, i)`` violating basis exchange, as masks, or ``None``."""
    basis_set = set(bases)
    for b1 in bases:
        for b2 in bases:
            diff = b2 & ~b1
            if popcount(diff) < 2:
                # distance one pairs always exchange back to b1
                continue
            other = b1 & ~b2
            for i in iter_bits(diff):
                base = b2 ^ i
                if not any((base | j) in basis_set for j in iter_bits(other)):
                    return b1, b2, i
    return None


def satisfies_strong_exchange(bases):
    basis_set = set(bases)
    for b1 in bases:
        for b2 in bases:
            other = b1 & ~b2
            for i in iter_bits(b2 & ~b1):
                if not any(
                    ((b2 ^ i) | j) in basis_set and ((b1 ^ j) | i) in basis_set
                    for j in iter_bits(other)
                ):
                    return False
    return True


class Matroid:
    """Matroid with bases given as bit masks over the labels ``1..n``.

    Instances are immutable.  Pass ``check=False`` only from constructions that
    are correct by construction (duals, minors, validated catalogs).
    """

    def __init__(self, n, bases, ground=None, *, check=True):
        if n > budget.limit("matroid_n"):
            raise SizeBudgetExceeded(f"ground set of size {n} exceeds matroid_n budget")
        self.n = n
        self.ground = full(n) if ground is None else ground
        bases = sorted(set(int(b) for b in bases))
        if check:
            self._validate(bases)
        self.bases = tuple(bases)
        self.basis_set = frozenset(bases)
        self.rank = popcount(bases[0]) if bases else 0

    def _validate(self, bases):
        if not bases:
            raise EmptyBases("a matroid needs at least one basis")
        if self.ground & ~full(self.n):
            raise InputError("ground set exceeds the labels 1..n")
        sizes = {popcount(b) for b in bases}
        if len(sizes) > 1:
            raise MixedCardinality(f"bases have different sizes {sorted(sizes)}")
        for b in bases:
            if b & ~self.ground:
                raise InputError(f"basis {format_set(b)} is not inside the ground set")
        w = exchange_witness(bases)
        if w is not None:
            b1, b2, i = w
            raise ExchangeFailure(
                f"exchange fails for B1={format_set(b1)}, B2={format_set(b2)}, i={elements_of(i)[0]}",
                (tuple(elements_of(b1)), tuple(elements_of(b2)), elements_of(i)[0]),
            )

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.n, self.ground, self.bases) == (other.n, other.ground, other.bases)

    def __hash__(self):
        return hash((self.n, self.ground, self.bases))

    def __repr__(self):
        bases = " ".join(format_set(b, self.n) for b in self.bases)
        extra = "" if self.ground == full(self.n) else f", ground={format_set(self.ground, self.n)}"
        return f"Matroid(n={self.n}, rank={self.rank}{extra}, bases=[{bases}])"

    @property
    def size(self):
        """Number of ground set elements."""
        return popcount(self.ground)

    @property
    def is_contiguous(self):
        return self.ground == full(self.n)

    # -- lookup tables ------------------------------------------------------

    @cached_property
    def _independent_table(self):
        indep = np.zeros(1 << self.n, dtype=bool)
        indep[list(self.bases)] = True
        for b in range(self.n):
            w = with_bit(self.n, b)
            indep[w ^ (1 << b)] |= indep[w]
        return indep

    @cached_property
    def _rank_table(self):
        r = np.where(self._independent_table, popcount_array(self.n), 0).astype(np.int16)
        for b in range(self.n):
            w = with_bit(self.n, b)
            r[w] = np.maximum(r[w], r[w ^ (1 << b)])
        r.flags.writeable = False
        return r

    @cached_property
    def _closure_table(self):
        idx = index_array(self.n)
        r = self._rank_table
        cl = idx.copy()
        for m in iter_bits(self.ground):
            cl[r[idx | m] == r] |= m
        cl.flags.writeable = False
        return cl

    # -- accessors ------------------------------------------------------------

    def rank_of(self, x):
        return int(self._rank_table[as_mask(x) & self.ground])

    def closure(self, x):
        return int(self._closure_table[as_mask(x)])

    def is_independent(self, x):
        x = as_mask(x)
        return not (x & ~self.ground) and bool(self._independent_table[x])

    def is_basis(self, x):
        return as_mask(x) in self.basis_set

    def is_flat(self, x):
        x = as_mask(x)
        return not (x & ~self.ground) and self.closure(x) == x

    @cached_property
    def independent_sets(self):
        return tuple(int(x) for x in np.flatnonzero(self._independent_table))

    @cached_property
    def flats(self):
        idx = index_array(self.n)
        sel = (self._closure_table == idx) & ((idx & ~self.ground) == 0)
        return tuple(int(x) for x in np.flatnonzero(sel))

    @cached_property
    def flat_set(self):
        return frozenset(self.flats)

    @cached_property
    def circuits(self):
        idx = index_array(self.n)
        indep = self._independent_table
        ok = ~indep & ((idx & ~self.ground) == 0)
        for b in range(self.n):
            w = with_bit(self.n, b)
            ok[w] &= indep[w ^ (1 << b)]
        return tuple(int(x) for x in np.flatnonzero(ok))

    @cached_property
    def cocircuits(self):
        return dual(self).circuits

    @cached_property
    def loops(self):
        return self.closure(0)

    @cached_property
    def coloops(self):
        c = self.ground
        for b in self.bases:
            c &= b
        return c

    def fundamental_circuit(self, e, basis):
        basis = as_mask(basis)
        if basis not in self.basis_set:
            raise NotABasis(f"{format_set(basis)} is not a basis")
        eb = 1 << (e - 1)
        if eb & basis:
            raise ElementInBasis(f"element {e} lies in the basis")
        if not eb & self.ground:
            raise InputError(f"element {e} is not in the ground set")
        c = eb
        for b in iter_bits(basis):
            if ((basis ^ b) | eb) in self.basis_set:
                c |= b
        return c

    def compact(self):
        """Return ``(matroid on 1..n', labels)`` with ``labels[k]`` the original label of ``k+1``."""
        labels = tuple(elements_of(self.ground))
        if self.is_contiguous:
            return self, labels
        pos = {lab: k for k, lab in enumerate(labels)}
        bases = [sum(1 << pos[e] for e in elements_of(b)) for b in self.bases]
        return Matroid(len(labels), bases, check=False), labels


def relabel(m, labels, n):
    """Inverse of :meth:`Matroid.compact`: place ``m`` on the labels ``labels`` inside ``1..n``."""
    if len(labels) != m.size or not m.is_contiguous:
        raise GroundSetMismatch("relabel needs a contiguous matroid and one label per element")

    def move(x):
        return sum(1 << (labels[e - 1] - 1) for e in elements_of(x))

    return Matroid(n, [move(b) for b in m.bases], ground=mask_of(labels), check=False)


def matroid_from_bases(n, bases):
    """Validated matroid on ``1..n`` from bases given as iterables of elements (or masks)."""
    return Matroid(n, [as_mask(b) for b in bases])


def uniform(d, n):
    if not 0 <= d <= n:
        raise RankOutOfRange(f"U_{{{d},{n}}} needs 0 <= d <= n")
    return Matroid(n, k_subsets(full(n), d), check=False)


def _same_ground(m, n):
    if (m.n, m.ground) != (n.n, n.ground):
        raise GroundSetMismatch("matroids live on different ground sets")


def dual(m):
    return Matroid(m.n, [m.ground ^ b for b in m.bases], ground=m.ground, check=False)


def delete(m, t):
    t = as_mask(t) & m.ground
    rest = m.ground & ~t
    r = m.rank_of(rest)
    bases = {b & ~t for b in m.bases if popcount(b & ~t) == r}
    return Matroid(m.n, bases, ground=rest, check=False)


def contract(m, t):
    return dual(delete(dual(m), t))


def restrict(m, s):
    return delete(m, m.ground & ~as_mask(s))


def direct_sum(m, n):
    """Matroid on ``1..|E|+|F|``; the second summand is shifted up by ``|E|``."""
    a, _ = m.compact()
    b, _ = n.compact()
    shift = a.n
    bases = [x | (y << shift) for x in a.bases for y in b.bases]
    return Matroid(a.n + b.n, bases, check=False)


def components(m):
    """Connected components as masks, ordered by smallest element."""
    parent = {e: e for e in elements_of(m.ground)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in m.circuits:
        els = elements_of(c)
        for e in els[1:]:
            ra, rb = find(els[0]), find(e)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes = {}
    for e in elements_of(m.ground):
        classes[find(e)] = classes.get(find(e), 0) | (1 << (e - 1))
    return [classes[k] for k in sorted(classes)]


def is_connected(m):
    return len(components(m)) <= 1


def matroid_union(m, n):
    _same_ground(m, n)
    a = np.array(m.independent_sets, dtype=np.int64)
    b = np.array(n.independent_sets, dtype=np.int64)
    unions = np.unique((a[:, None] | b[None, :]).ravel())
    sizes = np.bitwise_count(unions)
    rank = int(sizes.max())
    return Matroid(m.n, [int(x) for x in unions[sizes == rank]], ground=m.ground, check=False)


def truncation(m, i):
    if not 0 <= i <= m.rank:
        raise RankOutOfRange(f"truncation rank {i} outside 0..{m.rank}")
    bases = [x for x in m.independent_sets if popcount(x) == i]
    return Matroid(m.n, bases, ground=m.ground, check=False)


def simplify(m):
    """Delete loops and keep the smallest element of each parallel class."""
    drop = m.loops
    seen = 0
    for e in iter_bits(m.ground & ~drop):
        if e & seen:
            continue
        seen |= e
        for f in iter_bits(m.ground & ~drop):
            if f > e and not f & seen and m.rank_of(e | f) == 1:
                drop |= f
                seen |= f
    return delete(m, drop)


def is_isomorphic(m, n):
    """Label-permutation search; intended for ground sets of at most 8 elements."""
    a, _ = m.compact()
    b, _ = n.compact()
    if (a.n, a.rank, len(a.bases)) != (b.n, b.rank, len(b.bases)):
        return False
    if a.n > 8:
        raise SizeBudgetExceeded("isomorphism search is limited to 8 elements")
    target = b.basis_set
    for perm in permutations(range(a.n)):
        if all(sum(1 << perm[k] for k in range(a.n) if x >> k & 1) in target for x in a.bases):
            return True
    return False


@dataclass(frozen=True)
class SetSystem:
    """A sequence of subsets (masks) of ``1..n``."""

    n: int
    sets: tuple

    @classmethod
    def from_lists(cls, n, sets):
        return cls(n, tuple(as_mask(s) for s in sets))


def _matchable(x, sets):
    """Can every element of ``x`` be matched to a distinct set containing it?"""
    owner = [0] * len(sets)  # element bit matched to each set, 0 if free

    def augment(e, seen):
        for i, a in enumerate(sets):
            if a & e and not seen >> i & 1:
                seen |= 1 << i
                if owner[i] == 0:
                    owner[i] = e
                    return True, seen
                ok, seen = augment(owner[i], seen)
                if ok:
                    owner[i] = e
                    return True, seen
        return False, seen

    for e in iter_bits(x):
        ok, _ = augment(e, 0)
        if not ok:
            return False
    return True


def transversal_matroid(system):
    """Matroid of partial transversals, via augmenting-path matching."""
    n, sets = system.n, tuple(system.sets)
    e = full(n)
    for d in range(min(len(sets), n), -1, -1):
        bases = [x for x in k_subsets(e, d) if _matchable(x, sets)]
        if bases:
            return Matroid(n, bases, check=False)
    raise AssertionError("the empty set is always a partial transversal")


@dataclass(frozen=True)
class FlatLattice:
    """Lattice of flats: ``elements`` are flat masks in increasing order."""

    elements: tuple
    join: tuple  # join[i][j] index
    meet: tuple
    covers: tuple  # (i, j) pairs with elements[i] covered by elements[j]

    def leq(self, i, j):
        return self.join[i][j] == j


def lattice_of_flats(m):
    flats = m.flats
    index = {f: k for k, f in enumerate(flats)}
    join = tuple(tuple(index[m.closure(f | g)] for g in flats) for f in flats)
    meet = tuple(tuple(index[f & g] for g in flats) for f in flats)
    covers = []
    for i, f in enumerate(flats):
        rf = m.rank_of(f)
        for j, g in enumerate(flats):
            if f != g and f & g == f and m.rank_of(g) == rf + 1:
                covers.append((i, j))
    return FlatLattice(flats, join, meet, tuple(covers))
