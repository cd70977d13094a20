"""B-presentations of transversal matroids and the fibers of the tropical
Stiefel map ``A -> maximal_minors(A)``.

A ``d x n`` matrix is also encoded as an integer ``code`` whose bit
``r * n + c`` is entry ``(r, c)`` (0-based); the fiber routines work on codes.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import comb

import numpy as np

from tropmat import budget
from tropmat.bits import full, index_array, iter_bits, k_subsets
from tropmat.boolean_linear import BMatrix, is_surjective, BLinearMap
from tropmat.errors import (
    EmptyFiber,
    EquivalenceViolation,
    ShapeMismatch,
    SizeBudgetExceeded,
    ZeroPluckerVector,
    ZeroWedge,
)
from tropmat.exterior import Multivector, is_plucker, maximal_minors, row_wedge, wedge, wedge_all
from tropmat.matroid import Matroid, as_mask, components, restrict


def _compact(m):
    return m.compact()[0]


def check_presentation(a, m):
    """Are the maximal permanents of ``a`` exactly the bases of ``m``?  Also checked via the row wedge."""
    m = _compact(m)
    if (a.rows, a.cols) != (m.rank, m.n):
        raise ShapeMismatch(f"{a.rows}x{a.cols} matrix for a rank {m.rank} matroid on {m.n} elements")
    by_minors = maximal_minors(a).terms == m.bases
    by_rows = row_wedge(a).terms == m.bases
    if by_minors != by_rows:
        raise EquivalenceViolation(f"permanents and row wedge disagree for\n{a}")
    return by_minors


@dataclass(frozen=True)
class Presentation:
    matrix: BMatrix
    target: Matroid

    def __post_init__(self):
        if not check_presentation(self.matrix, self.target):
            raise ShapeMismatch("matrix does not present the matroid")


def presentation_from_rows(rows, n=None):
    """Wedge of row vectors (``BVector`` or masks) and the transversal matroid it defines."""
    masks = [getattr(r, "bits", r) for r in rows]
    if n is None:
        n = rows[0].n
    v = wedge_all([Multivector.vector(n, as_mask(x)) for x in masks], n)
    if v.is_zero:
        raise ZeroWedge("the rows have no common transversal")
    if not is_plucker(v):
        raise EquivalenceViolation("a wedge of vectors failed the Plücker check")
    return v, Matroid(n, v.terms, check=False)


def _flip_order(a, order):
    cells = [(r, c) for r in range(a.rows) for c in range(a.cols)]
    if order == "reverse":
        cells.reverse()
    elif order is not None:
        cells = list(order)
    return cells


def maximal_presentation(a, order=None):
    """Turn zeros into ones while the maximal minors stay fixed, until nothing changes.

    ``order`` is ``None`` (row-major), ``"reverse"``, or an explicit list of cells.
    """
    target = maximal_minors(a)
    if target.is_zero:
        raise ZeroPluckerVector("matrix has no nonzero maximal minor")
    data = list(a.data)
    cells = _flip_order(a, order)
    changed = True
    while changed:
        changed = False
        for r, c in cells:
            if data[r] >> c & 1:
                continue
            data[r] |= 1 << c
            if maximal_minors(BMatrix(a.rows, a.cols, tuple(data))) == target:
                changed = True
            else:
                data[r] &= ~(1 << c)
    return BMatrix(a.rows, a.cols, tuple(data))


def _check_cells(d, n):
    if d * n > budget.limit("fiber_cells"):
        raise SizeBudgetExceeded(f"{d}x{n} has {d * n} cells, over the fiber_cells budget")


def minimal_presentations(a):
    """Minimal members of the fiber of ``a``, found by clearing ones below the maximal members.

    The maxima are the row orderings of the greedy maximum, so the search
    starts from each of them.
    """
    _check_cells(a.rows, a.cols)
    top = maximal_presentation(a)
    target = maximal_minors(a)
    seen = set()
    minimal = set()
    stack = sorted({BMatrix(a.rows, a.cols, rows).code for rows in permutations(top.data)})
    while stack:
        code = stack.pop()
        if code in seen:
            continue
        seen.add(code)
        below = False
        for b in iter_bits(code):
            low = code ^ b
            if maximal_minors(BMatrix.from_bits(a.rows, a.cols, low)) == target:
                below = True
                if low not in seen:
                    stack.append(low)
        if not below:
            minimal.add(code)
    return sorted((BMatrix.from_bits(a.rows, a.cols, c) for c in minimal), key=lambda x: x.code)


# -- exhaustive fibers --------------------------------------------------------------


@lru_cache(maxsize=8)
def minor_table(d, n):
    """Boolean array ``[code, k]``: is the ``k``-th ``d``-subset (increasing) a nonzero minor?"""
    _check_cells(d, n)
    codes = index_array(d * n)
    cols = k_subsets(full(n), d)
    out = np.zeros((len(codes), len(cols)), dtype=bool)
    entry = [[((codes >> (r * n + c)) & 1).astype(bool) for c in range(n)] for r in range(d)]
    for k, s in enumerate(cols):
        els = [c for c in range(n) if s >> c & 1]
        acc = np.zeros(len(codes), dtype=bool)
        for perm in permutations(els):
            term = np.ones(len(codes), dtype=bool)
            for r, c in enumerate(perm):
                term &= entry[r][c]
            acc |= term
        out[:, k] = acc
    out.flags.writeable = False
    return out


def _extremes(members, cells):
    """Maximal and minimal codes of a set of codes inside the cube on ``cells`` bits."""
    inside = np.zeros(1 << cells, dtype=bool)
    inside[members] = True
    up = inside.copy()  # up[x]: some member contains x
    down = inside.copy()  # down[x]: some member is inside x
    for b in range(cells):
        w = index_array(cells)[(index_array(cells) >> b) & 1 == 1]
        up[w ^ (1 << b)] |= up[w]
        down[w] |= down[w ^ (1 << b)]
    strictly_above = np.zeros(1 << cells, dtype=bool)
    strictly_below = np.zeros(1 << cells, dtype=bool)
    idx = index_array(cells)
    for b in range(cells):
        has = (idx >> b) & 1 == 1
        strictly_above[~has] |= up[idx[~has] | (1 << b)]
        strictly_below[has] |= down[idx[has] ^ (1 << b)]
    maxima = members[~strictly_above[members]]
    minima = members[~strictly_below[members]]
    return [int(x) for x in maxima], [int(x) for x in minima]


def row_class(a):
    """Rows of a matrix as a sorted tuple: the matrix up to reordering its rows."""
    return tuple(sorted(a.data))


@dataclass
class FiberReport:
    """One fiber of the Stiefel map.

    ``maxima`` lists every entrywise maximal member.  Permuting rows preserves
    the fiber, so maxima can come as several row orderings of one matrix;
    ``maximal`` is the first of them.
    """

    plucker: Multivector
    d: int
    n: int
    members: tuple  # matrix codes
    maxima: list
    minimals: list = field(default_factory=list)

    @property
    def size(self):
        return len(self.members)

    @property
    def maximal(self):
        return self.maxima[0]

    @property
    def unique_maximal(self):
        return len(self.maxima) == 1

    @property
    def maximal_row_classes(self):
        return sorted({row_class(a) for a in self.maxima})

    def matrices(self):
        return [BMatrix.from_bits(self.d, self.n, c) for c in self.members]


def _report(v, d, n, members):
    members = np.asarray(members, dtype=np.int64)
    maxima, minima = _extremes(members, d * n)
    tops = [BMatrix.from_bits(d, n, c) for c in maxima]
    if len({row_class(a) for a in tops}) != 1:
        raise EquivalenceViolation(f"fiber of {v} has maxima that are not row permutations of each other")
    mats = [BMatrix.from_bits(d, n, c) for c in minima]
    return FiberReport(v, d, n, tuple(int(x) for x in members), tops, mats)


def stiefel_fiber(v, d, n):
    """All ``d x n`` matrices with maximal minors ``v``, with their extremes."""
    if v.n != n or v.d != d:
        raise ShapeMismatch(f"multivector of degree {v.d} on {v.n} for shape {d}x{n}")
    table = minor_table(d, n)
    cols = k_subsets(full(n), d)
    want = np.array([c in set(v.terms) for c in cols], dtype=bool)
    members = np.flatnonzero(np.all(table == want, axis=1))
    if v.is_zero or not len(members):
        raise EmptyFiber(f"{v} is not the minor vector of any {d}x{n} matrix")
    return _report(v, d, n, members)


def fibers_of_shape(d, n):
    """Every nonempty fiber of the ``d x n`` Stiefel map, ordered by the smallest member."""
    table = minor_table(d, n)
    cols = k_subsets(full(n), d)
    nonzero = np.flatnonzero(table.any(axis=1))
    packed = np.packbits(table[nonzero], axis=1)
    _, inverse = np.unique(packed, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    order = np.argsort(inverse, kind="stable")
    bounds = np.flatnonzero(np.diff(inverse[order])) + 1
    reports = []
    for group in np.split(order, bounds):
        members = nonzero[group]
        row = table[members[0]]
        v = Multivector(n, d, tuple(c for c, t in zip(cols, row) if t))
        reports.append(_report(v, d, n, members))
    reports.sort(key=lambda r: r.members[0])
    return reports


# -- cyclic flats and fundamental transversal matroids --------------------------------


def cyclic_flats(m):
    out = []
    circuits = m.circuits
    for f in m.flats:
        u = 0
        for c in circuits:
            if not c & ~f:
                u |= c
        if u == f:
            out.append(f)
    return tuple(out)


def _spans_cyclic_flats(m, b, cyclic):
    return all(m.rank_of(f & b) == m.rank_of(f) for f in cyclic)


def forced_presentation(m, b):
    """The only candidate presentation with unit columns on the basis ``b``.

    Row ``i`` belongs to the ``i``-th element ``b_i`` of ``b``; entry ``(i, j)``
    for ``j`` outside ``b`` is forced to ``[(b - b_i) + j is a basis]``.
    """
    els = list(iter_bits(b))
    rows = []
    for bi in els:
        row = bi
        for j in iter_bits(m.ground & ~b):
            if (b ^ bi) | j in m.basis_set:
                row |= j
        rows.append(row)
    return BMatrix(len(rows), m.n, tuple(rows))


def _surjective_presentation(m):
    for b in m.bases:
        a = forced_presentation(m, b)
        if check_presentation(a, m) and is_surjective(BLinearMap.from_matrix(a)):
            return a
    return None


def is_fundamental_transversal(m):
    """Basis spanning every cyclic flat, versus a presentation with a permutation submatrix.

    For a matroid that is not transversal the second test always fails; the
    verdict is then ``False`` whatever the first test says.
    """
    m = _compact(m)
    cyclic = cyclic_flats(m)
    by_flats = any(_spans_cyclic_flats(m, b, cyclic) for b in m.bases)
    by_matrix = _surjective_presentation(m) is not None
    if by_flats != by_matrix:
        if not by_matrix and not is_transversal(m):
            return False
        raise EquivalenceViolation(
            f"cyclic flat test ({by_flats}) and surjective presentation ({by_matrix}) disagree for {m!r}"
        )
    return by_flats


def _transversal_component(m):
    """Search for ``d`` rows whose wedge is ``[M]`` (``m`` contiguous, loopless)."""
    d = m.rank
    if d == 0:
        return ()
    if m.n > budget.limit("transversal_n") or d > budget.limit("transversal_d"):
        raise SizeBudgetExceeded(f"transversality search limited to n <= {budget.limit('transversal_n')}")
    cocircuits = m.cocircuits
    # every row meets every basis, so it contains a cocircuit
    cands = [s for s in range(1, 1 << m.n) if any(not k & ~s for k in cocircuits)]
    cands.sort(reverse=True)
    target = Multivector(m.n, d, m.bases)
    bases = m.bases

    def covers(partial):
        terms = set(partial.terms)
        k = partial.d
        return all(any(t in terms for t in k_subsets(b, k)) for b in bases)

    def search(start, partial):
        if partial.d == d:
            return partial == target
        for k in range(start, len(cands)):
            nxt = wedge(partial, Multivector.vector(m.n, cands[k]))
            if nxt.is_zero or not all(m.is_independent(t) for t in nxt.terms):
                continue
            if not covers(nxt):
                continue
            if search(k, nxt):
                return True
        return False

    return search(0, Multivector.unit(m.n))


def is_transversal(m):
    """Is ``[M]`` a wedge of ``rank(M)`` vectors?  Decided per connected component."""
    m = _compact(m)
    for comp in components(m):
        part = _compact(restrict(m, comp))
        if part.rank == 0:
            continue
        if part.rank == 1 or len(part.bases) == comb(part.n, part.rank):
            continue  # a single row, or uniform (every row the whole ground set)
        if not _transversal_component(part):
            return False
    return True
