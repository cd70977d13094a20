"""Matroids as idempotent modules over the Boolean semifield.

Subsets of the ground set ``{1, ..., n}`` are stored as integer bit masks:
element ``i`` is bit ``i - 1``.  Every public constructor that takes element
labels uses 1-based integers; masks appear only where a function name says so.
"""

from tropmat.matroid import (
    Matroid,
    SetSystem,
    contract,
    delete,
    direct_sum,
    dual,
    matroid_from_bases,
    matroid_union,
    simplify,
    transversal_matroid,
    truncation,
    uniform,
)
from tropmat.boolean_linear import (
    BLinearMap,
    BMatrix,
    BVector,
    FiniteBModule,
    QuotientModule,
    bend_congruence,
    congruence_closure,
    hom_set,
)
from tropmat.exterior import Multivector, indicator, wedge
from tropmat.tropical import TropicalLinearSpace, flat_quotient_of, tls_of

__all__ = [
    "BLinearMap",
    "BMatrix",
    "BVector",
    "FiniteBModule",
    "Matroid",
    "Multivector",
    "QuotientModule",
    "SetSystem",
    "TropicalLinearSpace",
    "bend_congruence",
    "congruence_closure",
    "contract",
    "delete",
    "direct_sum",
    "dual",
    "flat_quotient_of",
    "hom_set",
    "indicator",
    "matroid_from_bases",
    "matroid_union",
    "simplify",
    "tls_of",
    "transversal_matroid",
    "truncation",
    "uniform",
    "wedge",
]

__version__ = "0.1.0"
