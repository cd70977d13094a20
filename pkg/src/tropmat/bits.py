"""Bit-mask helpers for subsets of ``{1, ..., n}``.

Element ``i`` is bit ``i - 1``.  Iteration over families is always in
increasing numeric order of the masks (colexicographic on subsets).
"""

from functools import lru_cache
from itertools import combinations

import numpy as np


def bit(i):
    return 1 << (i - 1)


def full(n):
    return (1 << n) - 1


def mask_of(elements):
    m = 0
    for i in elements:
        if i < 1:
            raise ValueError(f"elements are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


def elements_of(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return mask.bit_count()


def iter_bits(mask):
    """Yield the single-bit masks of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def submasks(mask):
    """All submasks of ``mask`` in increasing numeric order."""
    out = [0]
    for b in iter_bits(mask):
        out += [s | b for s in out]
    out.sort()
    return out


def k_subsets(mask, k):
    """All ``k``-element submasks of ``mask``, increasing."""
    bits = list(iter_bits(mask))
    out = [sum(c) for c in combinations(bits, k)]
    out.sort()
    return out


def submask_array(mask):
    """Numpy array of all submasks of ``mask`` (unsorted)."""
    arr = np.zeros(1, dtype=np.int64)
    for b in iter_bits(mask):
        arr = np.concatenate([arr, arr | b])
    return arr


@lru_cache(maxsize=None)
def index_array(n):
    arr = np.arange(1 << n, dtype=np.int64)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=None)
def popcount_array(n):
    arr = np.bitwise_count(index_array(n)).astype(np.int16)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=None)
def with_bit(n, b):
    """Indices in ``range(2**n)`` whose bit ``b`` (0-based) is set."""
    idx = index_array(n)
    arr = idx[(idx >> b) & 1 == 1]
    arr.flags.writeable = False
    return arr


def format_set(mask, n=None):
    """Terse token: ``123`` when every label is one digit, else ``1,2,10``.

    The empty set is written ``{}``.
    """
    els = elements_of(mask)
    if not els:
        return "{}"
    if (n if n is not None else max(els)) <= 9:
        return "".join(str(e) for e in els)
    return ",".join(str(e) for e in els)


def parse_set(token, n=None):
    token = token.strip()
    if token in ("{}", "-", "∅"):
        return 0
    if "," in token or (n is not None and n > 9):
        return mask_of(int(t) for t in token.split(",") if t)
    return mask_of(int(c) for c in token)
