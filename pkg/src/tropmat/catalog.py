"""Labeled matroids on ``1..n``.

Two independent generators:

* ``filter``: every family of ``d``-subsets, kept when it passes the exchange
  axiom.  Families are bit masks over the ``d``-subsets and are filtered with
  numpy, one exchange constraint at a time.
* ``extend``: matroids on ``n`` from matroids on ``n - 1`` by adding element
  ``n`` as a loop, as a coloop, or as a free-standing element determined by an
  elementary quotient ``N`` of ``M`` (bases of ``M`` plus ``S + n`` for bases
  ``S`` of ``N``).

Curated families cover ``n = 7, 8``.
"""

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from tropmat import budget
from tropmat.bits import full, iter_bits, k_subsets, mask_of, popcount
from tropmat.errors import InputError, SizeBudgetExceeded
from tropmat.matroid import Matroid, SetSystem, direct_sum, dual, transversal_matroid, uniform


def _exchange_constraints(subsets):
    """``(pair_mask, rescue_mask)`` over subset indices; a family holding both
    sets of the pair must meet the rescue mask."""
    pos = {s: k for k, s in enumerate(subsets)}
    out = set()
    for b1 in subsets:
        for b2 in subsets:
            diff = b2 & ~b1
            if popcount(diff) < 2:
                continue
            pair = (1 << pos[b1]) | (1 << pos[b2])
            for i in iter_bits(diff):
                rescue = 0
                for j in iter_bits(b1 & ~b2):
                    rescue |= 1 << pos[(b2 ^ i) | j]
                out.add((pair, rescue))
    return sorted(out)


def _filter_rank(n, d):
    subsets = k_subsets(full(n), d)
    m = len(subsets)
    if m > 24:
        raise SizeBudgetExceeded(f"2^{m} candidate families")
    fams = np.arange(1, 1 << m, dtype=np.int64)
    for pair, rescue in _exchange_constraints(subsets):
        bad = ((fams & pair) == pair) & ((fams & rescue) == 0)
        if bad.any():
            fams = fams[~bad]
    out = []
    for f in fams.tolist():
        out.append(tuple(subsets[k] for k in range(m) if f >> k & 1))
    return out


def by_filter(n):
    """Basis families (tuples of masks) of all matroids on ``1..n``, via the filter."""
    fams = []
    for d in range(n + 1):
        fams += _filter_rank(n, d)
    return fams


def _is_elementary_quotient(m, q):
    """``q`` (rank one less, same ground) has every flat a flat of ``m``."""
    return all(m.is_flat(f) for f in q.flats)


def by_extension(n):
    """Basis families of all matroids on ``1..n``, grown one element at a time."""
    if n == 0:
        return [(0,)]
    prev = [Matroid(n - 1, b, check=False) for b in by_extension(n - 1)]
    by_rank = {}
    for m in prev:
        by_rank.setdefault(m.rank, []).append(m)
    e = 1 << (n - 1)
    out = set()
    for m in prev:
        out.add(tuple(sorted(m.bases)))  # e a loop
        out.add(tuple(sorted(b | e for b in m.bases)))  # e a coloop
        for q in by_rank.get(m.rank - 1, []):
            if _is_elementary_quotient(m, q):
                fam = tuple(sorted(set(m.bases) | {s | e for s in q.bases}))
                Matroid(n, fam)  # validates the exchange axiom
                out.add(fam)
    return sorted(out, key=lambda f: (popcount(f[0]), f))


def _sort_key(fam):
    return popcount(fam[0]), fam


@dataclass
class CatalogSlice:
    n: int
    matroids: tuple
    provenance: str
    counts: dict = field(default_factory=dict)

    def of_rank(self, d):
        return [m for m in self.matroids if m.rank == d]

    def __len__(self):
        return len(self.matroids)

    def __iter__(self):
        return iter(self.matroids)


@lru_cache(maxsize=None)
def _exhaustive(n, cross_check):
    if n > budget.limit("catalog_n"):
        raise SizeBudgetExceeded(f"exhaustive enumeration is limited to n <= {budget.limit('catalog_n')}")
    fams = sorted(by_filter(n), key=_sort_key)
    if cross_check:
        other = by_extension(n)
        if set(fams) != set(other):
            raise AssertionError(f"catalog strategies disagree at n={n}: {len(fams)} vs {len(other)}")
    ms = tuple(Matroid(n, f, check=False) for f in fams)
    counts = {}
    for m in ms:
        counts[m.rank] = counts.get(m.rank, 0) + 1
    return CatalogSlice(n, ms, "exhaustive", counts)


def enumerate_matroids(n, cross_check=True):
    """All labeled matroids on ``1..n`` (every rank), deterministic order."""
    if n < 0:
        raise InputError("n must be non-negative")
    return _exhaustive(n, cross_check)


def matroids_of_size(n):
    return enumerate_matroids(n, cross_check=False).matroids


def catalog_upto(nmax, nmin=1):
    out = []
    for n in range(nmin, nmax + 1):
        out.extend(matroids_of_size(n))
    return out


# -- curated families for n = 7, 8 --------------------------------------------------------


def graphic_matroid(edges):
    """Cycle matroid of a graph given as a list of vertex pairs (loops allowed)."""
    n = len(edges)

    def forest(mask):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        for k in range(n):
            if mask >> k & 1:
                a, b = find(edges[k][0]), find(edges[k][1])
                if a == b:
                    return False
                parent[a] = b
        return True

    for d in range(n, -1, -1):
        bases = [s for s in k_subsets(full(n), d) if forest(s)]
        if bases:
            return Matroid(n, bases)
    raise AssertionError("the empty edge set is always a forest")


FANO_LINES = [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]


def fano():
    lines = {mask_of(l) for l in FANO_LINES}
    bases = [s for s in k_subsets(full(7), 3) if s not in lines]
    return Matroid(7, bases)


def curated(n, seed=0, random_systems=8):
    """Deterministic hand-picked matroids on ``n`` elements (used for n = 7, 8)."""
    out = {}

    def add(m):
        m = m.compact()[0]
        if m.n == n:
            out.setdefault((m.rank, m.bases), m)

    for d in range(n + 1):
        add(uniform(d, n))
    k4 = graphic_matroid([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    c4 = graphic_matroid([(1, 2), (2, 3), (3, 4), (4, 1)])
    for base in (k4, c4):
        rest = n - base.n
        if rest >= 0:
            for d in range(rest + 1):
                add(direct_sum(base, uniform(d, rest)))
    if n >= 7:
        f = fano()
        add(direct_sum(f, uniform(0, n - 7)))
        add(direct_sum(dual(f), uniform(n - 7, n - 7)))
    for a in range(1, n):
        for d1 in range(a + 1):
            add(direct_sum(uniform(d1, a), uniform(min(d1, n - a), n - a)))
    rng = random.Random(seed)
    for _ in range(random_systems):
        m = rng.randint(1, 4)
        sets = [rng.getrandbits(n) for _ in range(m)]
        add(transversal_matroid(SetSystem(n, tuple(sets))))
    return [out[k] for k in sorted(out)]


def sample_pairs(items, count, seed):
    """``count`` random ordered pairs, reproducible from ``seed``."""
    rng = random.Random(seed)
    return [(rng.choice(items), rng.choice(items)) for _ in range(count)]


def unordered_pairs(items):
    return list(combinations(items, 2))
