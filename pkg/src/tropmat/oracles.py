"""Slow, definition-level reference implementations used to cross-check the
library.  Nothing in the main code paths calls into this module.
"""

from itertools import combinations, combinations_with_replacement, product

from tropmat.bits import iter_bits, popcount, submasks
from tropmat.boolean_linear import BMatrix, is_surjective, BLinearMap


def union_rank(m, n, x):
    """``min over Y <= X of |X - Y| + r_M(Y) + r_N(Y)``."""
    return min(popcount(x & ~y) + m.rank_of(y) + n.rank_of(y) for y in submasks(x))


def tropker_by_definition(form, v, n):
    """``f(v)`` equals ``f(v)`` with any single term of ``f`` dropped."""

    def value(f):
        return int(any(f >> i & 1 and v >> i & 1 for i in range(n)))

    total = value(form)
    return all(value(form & ~(1 << j)) == total for j in range(n) if form >> j & 1)


def naive_congruence(n, pairs):
    """Fixpoint of reflexive, symmetric, transitive and additive closure on pairs of masks."""
    size = 1 << n
    rel = {(x, x) for x in range(size)}
    rel |= {(a, b) for a, b in pairs} | {(b, a) for a, b in pairs}
    while True:
        new = set(rel)
        for a, b in rel:
            for c, d in rel:
                new.add((a | c, b | d))
                if b == c:
                    new.add((a, d))
        if new == rel:
            break
        rel = new
    classes = {}
    for a, b in rel:
        classes.setdefault(a, set()).add(b)
    return {frozenset(s) for s in classes.values()}


def brute_force_homs(elements, join, zero):
    """All maps to B preserving zero and joins, as frozensets of elements sent to 1."""
    els = list(elements)
    out = []
    for values in product((0, 1), repeat=len(els)):
        val = dict(zip(els, values))
        if val[zero]:
            continue
        if all(val[join(a, b)] == (val[a] | val[b]) for a in els for b in els):
            out.append(frozenset(x for x in els if val[x]))
    return out


def closure_by_circuits(m, s):
    """``S`` together with every ``e`` for which some circuit ``C`` has ``e in C <= S + e``."""
    out = s
    for e in iter_bits(m.ground & ~s):
        if any(c & e and not c & ~(s | e) for c in m.circuits):
            out |= e
    return out


def is_transversal_mason_ingleton(m):
    """Transversality by the Mason-Ingleton inequalities over families of cyclic flats."""
    from tropmat.transversal import cyclic_flats

    cyc = [f for f in cyclic_flats(m)]
    r = m.rank_of
    for size in range(1, len(cyc) + 1):
        for fam in combinations(cyc, size):
            meet = m.ground
            for f in fam:
                meet &= f
            bound = 0
            for k in range(1, size + 1):
                for sub in combinations(fam, k):
                    u = 0
                    for f in sub:
                        u |= f
                    bound += (-1) ** (k + 1) * r(u)
            if r(meet) > bound:
                return False
    return True


def all_presentations(m):
    """Every ``d x n`` B-matrix whose maximal permanents are the bases of ``m``."""
    from tropmat.exterior import maximal_minors

    d, n = m.rank, m.n
    out = []
    for code in range(1 << (d * n)):
        a = BMatrix.from_bits(d, n, code)
        if maximal_minors(a).terms == m.bases:
            out.append(a)
    return out


def exhaustive_surjective_presentation(m):
    for a in all_presentations(m):
        if is_surjective(BLinearMap.from_matrix(a)):
            return a
    return None


def transversal_by_set_systems(m):
    """Search all ``rank``-tuples of subsets for a set system whose transversal matroid is ``m``."""
    from tropmat.matroid import SetSystem, transversal_matroid

    d = m.rank
    subsets = range((1 << m.n) - 1, -1, -1)
    for rows in combinations_with_replacement(subsets, d):
        if transversal_matroid(SetSystem(m.n, rows)).bases == m.bases:
            return rows
    return None


def flats_by_definition(m):
    """Subsets ``F`` with ``r(F + e) > r(F)`` for every ``e`` outside ``F``."""
    return [
        f
        for f in submasks(m.ground)
        if all(m.rank_of(f | e) > m.rank_of(f) for e in iter_bits(m.ground & ~f))
    ]


def circuits_by_definition(m):
    """Minimal dependent sets, by checking every subset."""
    dep = [s for s in submasks(m.ground) if m.rank_of(s) < popcount(s)]
    return sorted(s for s in dep if all(m.rank_of(s ^ e) == popcount(s ^ e) for e in iter_bits(s)))


def wedge_by_definition(u_terms, v_terms):
    return sorted({a | b for a in u_terms for b in v_terms if not a & b})


def bases_from_independents(n, indep):
    top = max(popcount(x) for x in indep)
    return sorted(x for x in indep if popcount(x) == top)


def strong_map_by_flats(images, m, n):
    """Pointed-map strong map test written directly from flats, without the point trick.

    ``images[i]`` is 0 for the point.  A flat ``F`` of ``N`` pulls back to
    ``{i : f(i) in F or f(i) is the point}``.
    """
    for flat in n.flats:
        pre = 0
        for i, y in enumerate(images):
            if y == 0 or flat >> (y - 1) & 1:
                pre |= 1 << i
        if not m.is_flat(pre):
            return False
    return True

