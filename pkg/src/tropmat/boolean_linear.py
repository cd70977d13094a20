"""Linear algebra over the Boolean semifield B = {0, 1} with 1 + 1 = 1.

Vectors and linear forms share one representation, a support mask.  The dual
pairing is ``<x_S, e_T> = [S & T != 0]``.  A linear map is stored by the images
of the standard basis vectors (its columns).
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from tropmat import budget
from tropmat.bits import elements_of, full, index_array, iter_bits, mask_of, popcount, submask_array
from tropmat.errors import (
    DimensionBudgetExceeded,
    DimensionMismatch,
    NotSquare,
    ShapeMismatch,
    SizeBudgetExceeded,
)


@dataclass(frozen=True, slots=True)
class BVector:
    n: int
    bits: int = 0

    @classmethod
    def of(cls, n, elements):
        return cls(n, mask_of(elements))

    @property
    def support(self):
        return elements_of(self.bits)

    def __add__(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"cannot add vectors of dimensions {self.n} and {other.n}")
        return BVector(self.n, self.bits | other.bits)

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"BVector({self.n}, {self.support})"


@dataclass(frozen=True, slots=True)
class BMatrix:
    """``rows`` x ``cols`` 0/1 matrix; row ``r`` is a mask with bit ``j`` for column ``j + 1``."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ShapeMismatch(f"expected {self.rows} rows, got {len(self.data)}")
        if any(r & ~full(self.cols) for r in self.data):
            raise ShapeMismatch(f"row wider than {self.cols} columns")

    @classmethod
    def from_strings(cls, lines):
        lines = [ln.strip() for ln in lines if ln.strip()]
        cols = len(lines[0]) if lines else 0
        data = []
        for ln in lines:
            if len(ln) != cols or set(ln) - {"0", "1"}:
                raise ShapeMismatch(f"bad matrix row {ln!r}")
            data.append(sum(1 << j for j, ch in enumerate(ln) if ch == "1"))
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_bits(cls, rows, cols, code):
        """Matrix whose entry ``(r, c)`` is bit ``r * cols + c`` of ``code``."""
        m = full(cols)
        return cls(rows, cols, tuple((code >> (r * cols)) & m for r in range(rows)))

    @property
    def code(self):
        return sum(r << (i * self.cols) for i, r in enumerate(self.data))

    def entry(self, r, c):
        return self.data[r] >> c & 1

    def to_strings(self):
        return ["".join("1" if r >> j & 1 else "0" for j in range(self.cols)) for r in self.data]

    def column(self, c):
        return sum(1 << r for r in range(self.rows) if self.data[r] >> c & 1)

    def columns(self):
        return tuple(self.column(c) for c in range(self.cols))

    def submatrix(self, col_mask):
        cols = [c for c in range(self.cols) if col_mask >> c & 1]
        data = tuple(sum(1 << k for k, c in enumerate(cols) if r >> c & 1) for r in self.data)
        return BMatrix(self.rows, len(cols), data)

    def __le__(self, other):
        return all(a & ~b == 0 for a, b in zip(self.data, other.data))

    def __str__(self):
        return "\n".join(self.to_strings())


@dataclass(frozen=True, slots=True)
class BLinearMap:
    """Linear map ``B^source -> B^target``; ``columns[i]`` is the image of ``e_{i+1}``."""

    source: int
    target: int
    columns: tuple

    def __post_init__(self):
        if len(self.columns) != self.source:
            raise DimensionMismatch("need one column per source basis vector")
        if any(c & ~full(self.target) for c in self.columns):
            raise DimensionMismatch("column exceeds target dimension")

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_matrix(cls, a):
        return cls(a.cols, a.rows, a.columns())

    def matrix(self):
        rows = tuple(
            sum(1 << i for i, c in enumerate(self.columns) if c >> r & 1) for r in range(self.target)
        )
        return BMatrix(self.target, self.source, rows)

    def apply_bits(self, bits):
        out = 0
        for i, c in enumerate(self.columns):
            if bits >> i & 1:
                out |= c
        return out

    def compose(self, inner):
        """``self`` after ``inner``."""
        if inner.target != self.source:
            raise DimensionMismatch("maps do not compose")
        return BLinearMap(inner.source, self.target, tuple(self.apply_bits(c) for c in inner.columns))


def apply(phi, v):
    if v.n != phi.source:
        raise DimensionMismatch(f"map expects dimension {phi.source}, got {v.n}")
    return BVector(phi.target, phi.apply_bits(v.bits))


def dual_map(phi):
    """Transpose: ``B^target -> B^source``."""
    cols = tuple(
        sum(1 << i for i, c in enumerate(phi.columns) if c >> k & 1) for k in range(phi.target)
    )
    return BLinearMap(phi.target, phi.source, cols)


def is_surjective(phi):
    # a singleton is a join of columns only if some column equals it
    cols = set(phi.columns)
    return all((1 << i) in cols for i in range(phi.target))


def _perfect_matching(rows, cols_mask):
    """Does the bipartite graph rows -> columns (inside ``cols_mask``) have a row-perfect matching?"""
    owner = {}

    def augment(r, seen):
        for b in iter_bits(rows[r] & cols_mask):
            if b in seen:
                continue
            seen.add(b)
            if b not in owner or augment(owner[b], seen):
                owner[b] = r
                return True
        return False

    return all(augment(r, set()) for r in range(len(rows)))


def permanent(a):
    if a.rows != a.cols:
        raise NotSquare(f"permanent of a {a.rows}x{a.cols} matrix")
    return int(_perfect_matching(a.data, full(a.cols)))


def tropical_kernel_membership(f, v):
    """Is ``v`` in the tropical kernel of ``f``?  ``f`` is a linear form or a ``BLinearMap``."""
    if isinstance(f, BLinearMap):
        if v.n != f.source:
            raise DimensionMismatch("vector and map dimensions differ")
        return all(popcount(row & v.bits) != 1 for row in f.matrix().data)
    if f.n != v.n:
        raise DimensionMismatch("form and vector dimensions differ")
    return popcount(f.bits & v.bits) != 1


# -- disjoint sets ------------------------------------------------------------


class DisjointSet:
    """Union-find over ``range(size)`` with path halving and union by size."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.weight = [1] * size

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.weight[ra] < self.weight[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.weight[ra] += self.weight[rb]
        return True

    def labels(self):
        return [self.find(x) for x in range(len(self.parent))]


# -- congruences ----------------------------------------------------------------


@dataclass
class QuotientModule:
    """Quotient of ``B^n`` by a congruence, with every class stored explicitly.

    ``labels[v]`` is a class id and ``canonical[v]`` the class maximum.
    ``coordinates`` optionally names the basis vectors (e.g. k-subsets for
    exterior powers).
    """

    n: int
    labels: np.ndarray
    canonical: np.ndarray
    pairs: tuple = ()
    coordinates: tuple = field(default=None)

    @classmethod
    def from_labels(cls, n, labels, pairs=(), coordinates=None):
        labels = np.asarray(labels, dtype=np.int64)
        _, labels = np.unique(labels, return_inverse=True)
        k = int(labels.max()) + 1
        joined = np.zeros(k, dtype=np.int64)
        np.bitwise_or.at(joined, labels, index_array(n))
        if np.any(labels[joined] != np.arange(k)):
            raise AssertionError("a congruence class is not closed under joins")
        q = cls(n, labels, joined[labels], tuple(pairs), coordinates)
        q.labels.flags.writeable = False
        q.canonical.flags.writeable = False
        return q

    @property
    def class_count(self):
        return int(self.labels.max()) + 1

    def canonical_form(self, v):
        return int(self.canonical[int(v)])

    def congruent(self, a, b):
        return self.labels[int(a)] == self.labels[int(b)]

    @cached_property
    def canonical_forms(self):
        return tuple(int(x) for x in np.unique(self.canonical))

    def classes(self):
        """Each class as a list of members, the canonical form first; classes ordered by canonical form."""
        order = np.argsort(self.canonical, kind="stable")
        out = {}
        for v in order:
            out.setdefault(int(self.canonical[v]), []).append(int(v))
        result = []
        for top in sorted(out):
            members = [top] + [v for v in out[top] if v != top]
            result.append(members)
        return result

    def as_module(self):
        forms = self.canonical_forms
        canon = self.canonical
        return FiniteBModule(forms, lambda a, b: int(canon[a | b]), 0 if 0 in forms else int(canon[0]))

    def check(self):
        """Re-verify the congruence axioms on the stored partition (quadratic in 2^n)."""
        n = self.n
        idx = index_array(n)
        lab = self.labels
        for b in iter_bits(full(n)):
            # translation by a single basis vector preserves the relation
            shifted = lab[idx | b]
            order = np.argsort(lab, kind="stable")
            pairs_same = lab[order][1:] == lab[order][:-1]
            left = order[1:][pairs_same]
            right = order[:-1][pairs_same]
            if np.any(shifted[left] != shifted[right]):
                return False
        return True


def _translates(a, b, n):
    """All translated pairs ``(a | c, b | c)`` that are not already equal."""
    free = full(n) & ~(a & b)
    c = submask_array(free)
    u, v = a | c, b | c
    keep = u != v
    return u[keep], v[keep]


def congruence_closure(n, pairs, method=None, coordinates=None):
    """Smallest congruence on ``B^n`` containing ``pairs`` (iterables of two masks).

    Every generator is translated by every vector; the equivalence these
    translates generate is already closed under addition.  ``method`` is
    ``"dsu"`` (pure Python union-find) or ``"graph"`` (sparse connected
    components); by default small ``n`` uses ``"dsu"``.
    """
    if n > budget.limit("congruence_dim"):
        raise DimensionBudgetExceeded(f"2^{n} vectors exceed the congruence budget")
    pairs = [(int(a), int(b)) for a, b in pairs]
    if any((a | b) & ~full(n) for a, b in pairs):
        raise DimensionMismatch(f"generator outside B^{n}")
    if method is None:
        method = "dsu" if n <= 8 else "graph"
    size = 1 << n
    if method == "dsu":
        ds = DisjointSet(size)
        for a, b in pairs:
            u, v = _translates(a, b, n)
            for x, y in zip(u.tolist(), v.tolist()):
                ds.union(x, y)
        labels = ds.labels()
    elif method == "graph":
        us, vs = [], []
        for a, b in pairs:
            u, v = _translates(a, b, n)
            us.append(u)
            vs.append(v)
        if us:
            u = np.concatenate(us)
            v = np.concatenate(vs)
        else:
            u = v = np.zeros(0, dtype=np.int64)
        graph = coo_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(size, size))
        _, labels = connected_components(graph, directed=False)
    else:
        raise ValueError(f"unknown method {method!r}")
    return QuotientModule.from_labels(n, labels, pairs, coordinates)


def bend_pairs(form):
    """Bend relations of a linear form: ``f ~ f - x_j`` for each ``j`` in its support."""
    return [(form, form ^ b) for b in iter_bits(form)]


def bend_congruence(n, forms, method=None):
    pairs = [p for f in forms for p in bend_pairs(int(f))]
    return congruence_closure(n, pairs, method=method)


def closure_axiom_violation(canonical, n):
    """First violated matroid-closure axiom of the operator ``S -> canonical[S]`` on subsets of ``1..n``.

    Returns ``None`` or a tuple ``(axiom, details)``.  The exchange axiom is
    checked as: ``y in cl(S + x) - cl(S)`` implies ``x in cl(S + y)``.
    """
    canonical = np.asarray(canonical, dtype=np.int64)
    idx = index_array(n)
    bad = np.flatnonzero((idx & ~canonical) != 0)
    if len(bad):
        return "extensive", {"S": int(bad[0])}
    bad = np.flatnonzero(canonical[canonical] != canonical)
    if len(bad):
        return "idempotent", {"S": int(bad[0])}
    for x in iter_bits(full(n)):
        bad = np.flatnonzero((canonical[idx] & ~canonical[idx | x]) != 0)
        if len(bad):
            return "monotone", {"S": int(bad[0]), "x": x}
    for x in iter_bits(full(n)):
        cx = canonical[idx | x]
        for y in iter_bits(full(n)):
            if x == y:
                continue
            cy = canonical[idx | y]
            sel = ((idx & (x | y)) == 0) & ((cx & y) != 0) & ((canonical & y) == 0) & ((cy & x) == 0)
            hits = np.flatnonzero(sel)
            if len(hits):
                return "exchange", {"S": int(hits[0]), "x": x, "y": y}
    return None


# -- finite modules and their duals ----------------------------------------------


class FiniteBModule:
    """An explicit finite B-module: elements, a join and a zero.

    ``join`` receives and returns elements (not indices).
    """

    def __init__(self, elements, join, zero):
        self.elements = tuple(elements)
        self._join = join
        self.zero = zero
        self.index = {x: k for k, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate module elements")
        if zero not in self.index:
            raise ValueError("zero is not an element")

    def __len__(self):
        return len(self.elements)

    def join(self, a, b):
        return self._join(a, b)

    @cached_property
    def join_table(self):
        els, idx = self.elements, self.index
        return [[idx[self._join(a, b)] for b in els] for a in els]

    @cached_property
    def order(self):
        """``order[i]`` is the bitmask of indices ``j`` with ``elements[i] <= elements[j]``."""
        t = self.join_table
        return [sum(1 << j for j in range(len(t)) if t[i][j] == j) for i in range(len(t))]

    @cached_property
    def below(self):
        t = self.join_table
        return [sum(1 << i for i in range(len(t)) if t[i][j] == j) for j in range(len(t))]

    @cached_property
    def join_irreducibles(self):
        """Indices of nonzero elements with exactly one lower cover."""
        out = []
        z = self.index[self.zero]
        for j in range(len(self.elements)):
            if j == z:
                continue
            strict = self.below[j] & ~(1 << j)
            covers = [i for i in range(len(self.elements)) if strict >> i & 1 and not any(
                strict >> k & 1 and k != i and self.below[k] >> i & 1 for k in range(len(self.elements))
            )]
            if len(covers) == 1:
                out.append(j)
        return out

    def is_module(self):
        """Check that join is associative, commutative, idempotent, with the zero as unit."""
        t = self.join_table
        r = range(len(t))
        z = self.index[self.zero]
        return (
            all(t[i][i] == i and t[i][z] == i for i in r)
            and all(t[i][j] == t[j][i] for i in r for j in r)
            and all(t[t[i][j]][k] == t[i][t[j][k]] for i in r for j in r for k in r)
        )

    def is_hom(self, one_set):
        """Is the map to B with 1-preimage ``one_set`` (index bitmask) a module homomorphism?"""
        t = self.join_table
        if one_set >> self.index[self.zero] & 1:
            return False
        n = len(t)
        return all(
            (one_set >> t[i][j] & 1) == ((one_set >> i | one_set >> j) & 1) for i in range(n) for j in range(n)
        )


@dataclass
class FiniteBModuleHomSet:
    """All homomorphisms ``module -> B``, each stored by its 1-preimage (index bitmask).

    ``as_module()`` carries the pointwise join.
    """

    module: FiniteBModule
    homs: tuple

    def evaluate(self, hom, x):
        return hom >> self.module.index[x] & 1

    def as_module(self):
        return FiniteBModule(self.homs, lambda a, b: a | b, 0)


def hom_set(module):
    """Homomorphisms to B of a finite B-module.

    A hom is determined by its 0-preimage, a join-closed down-set containing
    zero; in a finite module that is exactly a principal down-set ``{x <= m}``.
    """
    if len(module) > budget.limit("hom_size"):
        raise SizeBudgetExceeded(f"module with {len(module)} elements exceeds hom_size budget")
    size = len(module)
    everything = (1 << size) - 1
    homs = sorted({everything & ~module.below[m] for m in range(size)})
    return FiniteBModuleHomSet(module, tuple(homs))


def submodule(elements):
    """The explicit module of a join-closed family of masks containing zero."""
    elements = sorted(set(elements))
    return FiniteBModule(elements, lambda a, b: a | b, 0)


def find_isomorphism(a, b):
    """A join-preserving bijection ``a -> b`` as a list of index pairs, or ``None``.

    Join-irreducibles of ``a`` are matched to those of ``b`` by backtracking;
    every partial assignment is extended to the sub-join-semilattice it
    generates and rejected on the first conflict.
    """
    if len(a) != len(b):
        return None
    ja, jb = a.join_irreducibles, b.join_irreducibles
    if len(ja) != len(jb):
        return None

    def signature(m, j):
        return (bin(m.below[j]).count("1"), bin(m.order[j]).count("1"))

    sig_b = {}
    for j in jb:
        sig_b.setdefault(signature(b, j), []).append(j)
    ja = sorted(ja, key=lambda j: signature(a, j))
    if sorted(signature(a, j) for j in ja) != sorted(signature(b, j) for j in jb):
        return None
    ta, tb = a.join_table, b.join_table
    za, zb = a.index[a.zero], b.index[b.zero]

    def extend(mapping, image_of, j, k):
        new = dict(mapping)
        used = dict(image_of)
        frontier = []
        if j in new:
            return (new, used) if new[j] == k else None
        if k in used:
            return None
        new[j], used[k] = k, j
        frontier.append(j)
        while frontier:
            x = frontier.pop()
            for y in list(new):
                xy, img = ta[x][y], tb[new[x]][new[y]]
                if xy in new:
                    if new[xy] != img:
                        return None
                elif img in used:
                    return None
                else:
                    new[xy], used[img] = img, xy
                    frontier.append(xy)
        return new, used

    def search(pos, mapping, image_of):
        if pos == len(ja):
            return mapping if len(mapping) == len(a) else None
        j = ja[pos]
        for k in sig_b.get(signature(a, j), []):
            nxt = extend(mapping, image_of, j, k)
            if nxt is not None:
                found = search(pos + 1, *nxt)
                if found is not None:
                    return found
        return None

    result = search(0, {za: zb}, {zb: za})
    if result is None:
        return None
    return sorted(result.items())
