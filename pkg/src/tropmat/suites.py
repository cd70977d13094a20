"""Theorem suites over the small-matroid catalog.

Each suite returns a ``SuiteReport``.  A property that comes out false is
recorded as a failure with a serialized witness; an ``EquivalenceViolation``
(two routes to the same answer disagreeing) propagates and aborts the run.
"""

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from tropmat.bits import elements_of, full, k_subsets, submasks
from tropmat.boolean_linear import (
    bend_pairs,
    closure_axiom_violation,
    congruence_closure,
    find_isomorphism,
)
from tropmat.catalog import catalog_upto, curated, enumerate_matroids, matroids_of_size
from tropmat.errors import UnknownSuite
from tropmat.exterior import (
    Multivector,
    coordinate_mask,
    decompose_by_element,
    indicator,
    is_plucker,
    wedge,
    wedge_power_quotient,
)
from tropmat.formats import matrix_token, matroid_to_json, multimap_to_json, pointed_map_to_json
from tropmat.matroid import Matroid, contract, delete, exchange_witness, matroid_union, relabel, uniform
from tropmat.morphisms import (
    MultiMap,
    PointedMap,
    factorization_witness,
    hom_to_unit,
    is_indecomposable,
    is_multivalued_strong,
    is_quotient,
    is_strong_map,
    iota,
    linear_to_multimap,
    multimap_to_linear,
    tls_factorization_witness,
    verify_iota_sum,
)
from tropmat.oracles import naive_congruence, strong_map_by_flats
from tropmat.transversal import (
    fibers_of_shape,
    is_fundamental_transversal,
    is_transversal,
    maximal_presentation,
    stiefel_fiber,
)
from tropmat.tropical import (
    duality_check,
    flat_quotient_of,
    minors_check,
    sufficiently_disjoint,
    tls_of,
    verify_minor_stable_sum,
    verify_monotonicity,
)

MAX_RECORDED = 25


@dataclass
class SuiteReport:
    suite: str
    tested: int = 0
    failures: list = field(default_factory=list)
    ms: int = 0
    extra: dict = field(default_factory=dict)
    failure_count: int = 0

    @property
    def passed(self):
        return self.failure_count == 0

    def fail(self, **witness):
        self.failure_count += 1
        if len(self.failures) < MAX_RECORDED:
            self.failures.append(witness)

    def summary(self):
        word = "pass" if self.passed else "FAIL"
        return f"{self.suite}: {word} ({self.tested} tested, {self.failure_count} failures, {self.ms} ms)"


SUITES = {}


def suite(name):
    def register(fn):
        SUITES[name] = fn
        return fn

    return register


def run_suite(name, nmax=None, sample=None, seed=0):
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    rep = SuiteReport(name)
    start = time.perf_counter()
    SUITES[name](rep, nmax=nmax, sample=sample, seed=seed)
    rep.ms = int((time.perf_counter() - start) * 1000)
    if sample is not None or seed:
        rep.extra["seed"] = seed
    return rep


def _mj(m):
    return matroid_to_json(m)


def _sampled(items, count, rng):
    items = list(items)
    if count is None or count >= len(items):
        return items
    return rng.sample(items, count)


# -- individual suites -------------------------------------------------------------


@suite("catalog")
def _catalog(rep, nmax=None, **_):
    rep.extra["counts"] = {}
    for n in range(0, (nmax or 6) + 1):
        sl = enumerate_matroids(n, cross_check=True)
        rep.extra["counts"][n] = len(sl)
        rep.tested += len(sl)


@suite("q-flats")
def _q_flats(rep, nmax=None, sample=None, seed=0):
    """Congruence in Q_M is equality of closures; bend congruence double-checked by brute force."""
    nmax = nmax or 5
    rng = random.Random(seed)
    pool = list(catalog_upto(nmax, 0))
    pool += _sampled(matroids_of_size(6), 200 if sample is None else sample, rng) if nmax < 6 else []
    for m in pool:
        rep.tested += 1
        q = flat_quotient_of(m, bend_check=True)
        cl = m._closure_table
        idx = np.arange(1 << m.n)
        # pairwise statement, for every pair (S, S'): same canonical form iff same closure
        same_q = q.canonical[:, None] == q.canonical[None, :]
        same_cl = cl[:, None] == cl[None, :]
        if not np.array_equal(same_q, same_cl):
            s, t = np.argwhere(same_q != same_cl)[0]
            rep.fail(matroid=_mj(m), S=int(idx[s]), T=int(idx[t]))
            continue
        if q.class_count != len(m.flats):
            rep.fail(matroid=_mj(m), reason="class count differs from flat count")
        bad = closure_axiom_violation(q.canonical, m.n)
        if bad:
            rep.fail(matroid=_mj(m), axiom=bad[0], details=bad[1])
        if m.n <= 4:
            pairs = [p for c in m.circuits for p in bend_pairs(c)]
            slow = naive_congruence(m.n, pairs)
            fast = {frozenset(c) for c in q.classes()}
            if slow != fast:
                rep.fail(matroid=_mj(m), reason="naive bend congruence differs")


@suite("duality")
def _duality(rep, nmax=None, **_):
    for m in catalog_upto(nmax or 5, 0):
        rep.tested += 1
        if not duality_check(m):
            rep.fail(matroid=_mj(m))


@suite("minors")
def _minors(rep, nmax=None, **_):
    for m in catalog_upto(nmax or 5, 0):
        for t in submasks(full(m.n)):
            rep.tested += 1
            c, d = minors_check(m, t)
            if not (c and d):
                rep.fail(matroid=_mj(m), T=t, contraction=c, deletion=d)
        v = indicator(m)
        for t in range(1, m.n + 1):
            w, w2 = decompose_by_element(v, t)
            tb = 1 << (t - 1)
            back = wedge(w, Multivector.vector(m.n, tb)) + w2
            ok = back == v
            if tb & m.loops:
                ok &= w.is_zero and w2.terms == delete(m, tb).bases
            elif tb & m.coloops:
                ok &= w2.is_zero and w.terms == contract(m, tb).bases
            else:
                ok &= w.terms == contract(m, tb).bases and w2.terms == delete(m, tb).bases
            if not ok:
                rep.fail(matroid=_mj(m), t=t, reason="one-element decomposition")


def wedge_counterexample():
    """The three facts about the second wedge power of Q of U_{3,6}, as a dict of booleans."""
    q = wedge_power_quotient(uniform(3, 6), 2)
    pairs = list(combinations(range(1, 7), 2))
    total = coordinate_mask(q, pairs)
    tri = coordinate_mask(q, [(1, 2), (1, 3), (2, 3)])
    parts = [coordinate_mask(q, [p]) for p in [(1, 2), (3, 4), (5, 6)]]
    subsums = [sum(c) for r in range(0, 4) for c in combinations(parts, r)]
    forms = [q.canonical_form(s) for s in subsums]
    other = congruence_closure(q.n, q.pairs, method="dsu" if q.n > 8 else "graph")
    return {
        "dimension": q.n,
        "classes": q.class_count,
        "triangle_is_total": bool(q.congruent(tri, total)),
        "matching_subsums_distinct": len(set(forms)) == len(forms),
        "matching_not_total": q.canonical_form(total) not in forms,
        "closure_violation": closure_axiom_violation(q.canonical, q.n),
        "engines_agree": bool(np.array_equal(other.canonical, q.canonical)),
    }


@suite("wedge-counterexample")
def _wedge(rep, **_):
    facts = wedge_counterexample()
    rep.tested = 1
    rep.extra.update({k: v for k, v in facts.items() if k != "closure_violation"})
    bad = facts["closure_violation"]
    rep.extra["violated_axiom"] = bad[0] if bad else None
    for key in ("triangle_is_total", "matching_subsums_distinct", "matching_not_total", "engines_agree"):
        if not facts[key]:
            rep.fail(reason=key)
    if bad is None:
        rep.fail(reason="canonical-form operator is a matroid closure")


def _all_pointed_maps(a, b):
    for images in product(range(b + 1), repeat=a):
        yield PointedMap(a, b, images)


@suite("strong-maps")
def _strong_maps(rep, nmax=None, sample=None, seed=0):
    """Flats, descent and transpose agree (raises otherwise); also compared with a direct flat oracle."""
    small = catalog_upto(min(nmax or 3, 3), 0)
    by_size = {}
    for m in small:
        by_size.setdefault(m.n, []).append(m)
    for a, ms in by_size.items():
        for b, ns in by_size.items():
            maps = list(_all_pointed_maps(a, b))
            for m in ms:
                for n in ns:
                    for f in maps:
                        rep.tested += 1
                        if is_strong_map(f, m, n) != strong_map_by_flats(f.images, m, n):
                            rep.fail(map=pointed_map_to_json(f), M=_mj(m), N=_mj(n))
    count = 10_000 if sample is None else sample
    rng = random.Random(seed)
    big = {k: list(matroids_of_size(k)) for k in range(1, 6)}
    strong = 0
    for _ in range(count):
        a, b = rng.randint(1, 5), rng.randint(1, 5)
        m, n = rng.choice(big[a]), rng.choice(big[b])
        if rng.random() < 0.5:
            images = [rng.randint(0, b) for _ in range(a)]
        else:
            # near-identity maps are strong far more often than uniform ones
            images = [min(i, b) if rng.random() < 0.8 else rng.randint(0, b) for i in range(1, a + 1)]
        f = PointedMap(a, b, tuple(images))
        rep.tested += 1
        verdict = is_strong_map(f, m, n)
        strong += verdict
        if verdict != strong_map_by_flats(f.images, m, n):
            rep.fail(map=pointed_map_to_json(f), M=_mj(m), N=_mj(n))
    rep.extra["random_strong"] = strong
    rep.extra["random_total"] = count


@suite("factorization")
def _factorization(rep, nmax=None, **_):
    for k in range(0, (nmax or 5) + 1):
        ms = matroids_of_size(k)
        for m in ms:
            for n in ms:
                if n.rank > m.rank or not is_quotient(m, n):
                    continue
                rep.tested += 1
                p = factorization_witness(m, n)
                t = p.ground & ~full(k)
                ok = delete(p, t).compact()[0] == m and contract(p, t).compact()[0] == n
                ok = ok and p.n == k + m.rank - n.rank
                if not ok:
                    rep.fail(M=_mj(m), N=_mj(n), P=_mj(p))
                    continue
                tls_factorization_witness(m, n)  # raises on either identity failing


def _space_bits(m):
    """``L_M`` as an int with bit ``v`` set for each member ``v``."""
    return sum(1 << x for x in tls_of(m).elements)


@suite("monotonicity")
def _monotonicity(rep, nmax=None, sample=None, seed=0):
    """Stable-sum monotonicity over all triples, via memoized unions, plus stable sums against minors."""
    nmax = nmax or 5
    rng = random.Random(seed)
    full_calls = 0
    for k in range(0, nmax + 1):
        ms = list(matroids_of_size(k))
        space = [_space_bits(m) for m in ms]
        disjoint = {}
        union_space = {}
        for i, p in enumerate(ms):
            for j, x in enumerate(ms):
                w = wedge(indicator(p), indicator(x))
                disjoint[i, j] = not w.is_zero
                if not w.is_zero:
                    u = Matroid(k, w.terms, check=False)
                    union_space[i, j] = _space_bits(u)
        # spot-check the memo against the library routes
        for i, j in rng.sample(sorted(disjoint), min(200, len(disjoint))):
            p, x = ms[i], ms[j]
            if sufficiently_disjoint(p, x) != disjoint[i, j]:
                rep.fail(P=_mj(p), M=_mj(x), reason="memoized disjointness")
            if disjoint[i, j] and _space_bits(matroid_union(p, x)) != union_space[i, j]:
                rep.fail(P=_mj(p), M=_mj(x), reason="memoized union")
        for mi, m in enumerate(ms):
            for ni, n in enumerate(ms):
                if space[mi] & ~space[ni]:
                    continue  # L_M is not inside L_N
                for pi in range(len(ms)):
                    if not disjoint[pi, ni]:
                        continue
                    rep.tested += 1
                    if not disjoint[pi, mi] or union_space[pi, mi] & ~union_space[pi, ni]:
                        rep.fail(P=_mj(ms[pi]), M=_mj(m), N=_mj(n))
                    elif k <= 3 or rng.random() < 0.002:
                        verify_monotonicity(ms[pi], m, n)
                        full_calls += 1
    rep.extra["direct_calls"] = full_calls
    minor_cases = _minor_sum_cases(rep, min(nmax, 4), rng, sample)
    rep.extra["minor_sum_cases"] = minor_cases


def _minor_sum_cases(rep, nmax, rng, sample):
    """``M`` on ``E``, ``N`` on ``E | T``: every split of ``1..n`` with ``T`` nonempty."""
    applicable = 0
    for k in range(1, nmax + 1):
        big = matroids_of_size(k)
        for t in range(1, 1 << k):
            e = full(k) & ~t
            labels = elements_of(e)
            for small in matroids_of_size(len(labels)):
                m = relabel(small, labels, k)
                for n in big:
                    rep.tested += 1
                    r = verify_minor_stable_sum(m, n)
                    applicable += r.contraction_hypothesis + r.deletion_hypothesis
                    if not r.ok:
                        rep.fail(M=_mj(m), N=_mj(n), T=t, report=r.describe())
    return applicable


@suite("stiefel")
def _stiefel(rep, nmax=None, **_):
    """Fibers of all shapes with d*n <= 12 (or ``nmax`` cells)."""
    cells = nmax or 12
    shapes = [(d, n) for d in range(1, cells + 1) for n in range(d, cells + 1) if d * n <= cells]
    fibers = unique = by_rows = greedy_ok = members = 0
    per_shape = {}
    for d, n in shapes:
        reps = fibers_of_shape(d, n)
        bad = 0
        for r in reps:
            fibers += 1
            rep.tested += 1
            unique += r.unique_maximal
            by_rows += len(r.maximal_row_classes) == 1
            top = set(a.code for a in r.maxima)
            if not r.unique_maximal:
                bad += 1
                rep.fail(shape=f"{d}x{n}", plucker=[list(map(int, t)) for t in r.plucker.term_lists()],
                         maxima=[matrix_token(a) for a in r.maxima])
            for a in r.matrices():
                members += 1
                g = maximal_presentation(a)
                ok = g.code in top and maximal_presentation(a, order="reverse") == g
                greedy_ok += ok
                if not ok:
                    rep.fail(shape=f"{d}x{n}", start=matrix_token(a), greedy=matrix_token(g))
        per_shape[f"{d}x{n}"] = [len(reps), bad]
    u23 = stiefel_fiber(indicator(uniform(2, 3)), 2, 3)
    rep.extra.update(
        fibers=fibers,
        unique_maximal=unique,
        unique_up_to_row_order=by_rows,
        greedy_members=members,
        greedy_is_maximum=greedy_ok,
        shapes=per_shape,
        u23_minimal_count=len(u23.minimals),
    )
    if by_rows != fibers:
        rep.fail(reason="maxima are not unique even up to row order")
    if len(u23.minimals) < 2:
        rep.fail(reason="U_{2,3} fiber has fewer than two minimal members")


@suite("fundamental-transversal")
def _fundamental(rep, nmax=None, **_):
    transversal = fundamental = 0
    for m in catalog_upto(nmax or 6, 0):
        rep.tested += 1
        tr = is_transversal(m)
        ft = is_fundamental_transversal(m)  # raises when the two criteria disagree on a transversal matroid
        transversal += tr
        fundamental += ft
        if ft and not tr:
            rep.fail(matroid=_mj(m), reason="fundamental but not transversal")
    rep.extra.update(transversal=transversal, fundamental=fundamental)


@suite("category")
def _category(rep, nmax=None, **_):
    nmax = nmax or 5
    for k in range(0, nmax + 1):
        seen = {}
        for m in matroids_of_size(k):
            rep.tested += 1
            key = iota(m).canonical.tobytes()
            if key in seen:
                rep.fail(M=_mj(m), N=_mj(seen[key]), reason="iota not injective")
            seen[key] = m
            if find_isomorphism(hom_to_unit(m), tls_of(m).as_module()) is None:
                rep.fail(matroid=_mj(m), reason="Hom to U_{1,1} is not L_M")
    for a in range(0, 7):
        for b in range(0, 7 - a):
            for m in matroids_of_size(a):
                for n in matroids_of_size(b):
                    rep.tested += 1
                    if not verify_iota_sum(m, n):
                        rep.fail(M=_mj(m), N=_mj(n), reason="iota does not commute with direct sums")
    for m in catalog_upto(max(nmax, 6), 0):
        rep.tested += 1
        is_indecomposable(m)  # raises if it differs from connectivity
    for m in curated(7) + curated(8):
        rep.tested += 1
        is_indecomposable(m)


def _all_multimaps(a, b):
    for images in product(range(1 << b), repeat=a):
        yield MultiMap(a, b, images)


@suite("multivalued")
def _multivalued(rep, nmax=None, sample=None, seed=0):
    rng = random.Random(seed)
    for _ in range(1000 if sample is None else sample):
        a, b = rng.randint(0, 6), rng.randint(0, 6)
        f = MultiMap(a, b, tuple(rng.getrandbits(b) if b else 0 for _ in range(a)))
        rep.tested += 1
        phi = multimap_to_linear(f)
        if linear_to_multimap(phi) != f or multimap_to_linear(linear_to_multimap(phi)) != phi:
            rep.fail(map=multimap_to_json(f), reason="round trip")
    small = catalog_upto(min(nmax or 3, 3), 0)
    by_size = {}
    for m in small:
        by_size.setdefault(m.n, []).append(m)
    for a, ms in by_size.items():
        for b, ns in by_size.items():
            maps = list(_all_multimaps(a, b))
            for m in ms:
                for n in ns:
                    for f in maps:
                        rep.tested += 1
                        is_multivalued_strong(f, m, n)  # raises when flats and the linear map disagree
                        # single-valued maps must agree with the pointed strong-map test
                        if all(img & (img - 1) == 0 for img in f.images):
                            g = PointedMap(a, b, tuple(img.bit_length() for img in f.images))
                            if is_multivalued_strong(f, m, n) != is_strong_map(g, m, n):
                                rep.fail(map=multimap_to_json(f), M=_mj(m), N=_mj(n))


@suite("plucker-exchange")
def _plucker(rep, nmax=None, **_):
    """Every nonzero term family on n <= nmax: Plücker relations against strong exchange."""
    for n in range(0, (nmax or 5) + 1):
        for d in range(n + 1):
            subsets = k_subsets(full(n), d)
            for code in range(1, 1 << len(subsets)):
                terms = tuple(s for k, s in enumerate(subsets) if code >> k & 1)
                rep.tested += 1
                verdict = is_plucker(Multivector(n, d, terms))  # raises on disagreement
                if verdict != (exchange_witness(terms) is None):
                    rep.fail(n=n, terms=[elements_of(t) for t in terms])


def suite_names():
    return sorted(SUITES)
