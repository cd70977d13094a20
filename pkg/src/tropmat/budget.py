"""Enumeration budgets.

Defaults can be overridden with ``TROPMAT_BUDGET``, a comma separated list of
``key=value`` pairs, e.g. ``TROPMAT_BUDGET=congruence_dim=22,fiber_cells=18``.
Values above the hard ceiling are rejected.
"""

import os

from tropmat.errors import InputError

# key: (default, ceiling)
DEFAULTS = {
    "congruence_dim": (20, 24),  # dimension of a free module enumerated by congruence_closure
    "hom_size": (1 << 16, 1 << 18),  # elements of a module handed to hom_set
    "fiber_cells": (16, 20),  # d*n for exhaustive Stiefel fibers
    "catalog_n": (6, 6),  # exhaustive matroid enumeration
    "transversal_n": (8, 10),  # brute-force transversality search
    "transversal_d": (4, 5),
    "matroid_n": (20, 24),  # 2^n lookup tables inside Matroid
    "witness_search_n": (6, 6),  # exhaustive fallback for factorization witnesses
}


def _overrides():
    raw = os.environ.get("TROPMAT_BUDGET", "").strip()
    out = {}
    if not raw:
        return out
    for item in raw.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in DEFAULTS:
            raise InputError(f"bad TROPMAT_BUDGET entry {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise InputError(f"bad TROPMAT_BUDGET value {item!r}") from None
    return out


def limit(key):
    default, ceiling = DEFAULTS[key]
    value = _overrides().get(key, default)
    if value > ceiling:
        raise InputError(f"TROPMAT_BUDGET {key}={value} exceeds ceiling {ceiling}")
    return value
