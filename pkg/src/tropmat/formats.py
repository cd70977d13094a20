"""Reading and writing matroids, matrices, maps and reports.

Elements are 1-based everywhere in files.  JSON syntax errors and text
format errors raise ``ParseError`` carrying a line and column.
"""

import json

from tropmat.bits import elements_of, format_set, full, mask_of, parse_set, popcount
from tropmat.boolean_linear import BMatrix
from tropmat.errors import InputError, ParseError
from tropmat.exterior import Multivector
from tropmat.matroid import Matroid, SetSystem, lattice_of_flats
from tropmat.morphisms import MultiMap, PointedMap


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _field(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise ParseError(f"{where}: field {key!r} must be an integer")
    if kind is list and not isinstance(value, list):
        raise ParseError(f"{where}: field {key!r} must be a list")
    return value


def _mask_from_list(items, n, where):
    if not isinstance(items, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in items):
        raise ParseError(f"{where}: expected a list of integers")
    for x in items:
        if not 1 <= x <= n:
            raise ParseError(f"{where}: element {x} outside 1..{n}")
    return mask_of(items)


def dumps(obj):
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- matroids ---------------------------------------------------------------------


def matroid_to_json(m):
    m = m.compact()[0]
    return {"n": m.n, "rank": m.rank, "bases": [elements_of(b) for b in m.bases]}


def matroid_from_json(obj):
    n = _field(obj, "n", int, "matroid")
    if n < 0:
        raise ParseError("matroid: n must be non-negative")
    bases = _field(obj, "bases", list, "matroid")
    masks = [_mask_from_list(b, n, f"matroid.bases[{k}]") for k, b in enumerate(bases)]
    m = Matroid(n, masks)
    if "rank" in obj and obj["rank"] != m.rank:
        raise ParseError(f"matroid: declared rank {obj['rank']} but bases have rank {m.rank}")
    return m


def matroid_to_text(m):
    m = m.compact()[0]
    tokens = " ".join(format_set(b, m.n) if b else "-" for b in m.bases)
    return f"n={m.n} d={m.rank}\n{tokens}\n"


def matroid_from_text(text):
    """``n=<n> d=<d>`` then basis tokens (``-`` is the empty basis), possibly over several lines."""
    lines = text.splitlines()
    header = None
    for lineno, line in enumerate(lines, 1):
        if line.strip() and not line.lstrip().startswith("#"):
            header = lineno
            break
    if header is None:
        raise ParseError("empty matroid file", 1, 1)
    fields = {}
    line = lines[header - 1]
    for tok in line.split():
        key, sep, value = tok.partition("=")
        col = line.index(tok) + 1
        if not sep or key not in ("n", "d") or not value.isdigit():
            raise ParseError(f"bad header token {tok!r}", header, col)
        fields[key] = int(value)
    if "n" not in fields or "d" not in fields:
        raise ParseError("header needs n=<n> and d=<d>", header, 1)
    n, d = fields["n"], fields["d"]
    bases = []
    for lineno in range(header + 1, len(lines) + 1):
        line = lines[lineno - 1]
        if line.lstrip().startswith("#"):
            continue
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            try:
                b = parse_set(tok, n)
            except ValueError:
                raise ParseError(f"bad basis token {tok!r}", lineno, col) from None
            if b & ~full(n):
                raise ParseError(f"basis {tok!r} leaves 1..{n}", lineno, col)
            if popcount(b) != d:
                raise ParseError(f"basis {tok!r} does not have {d} elements", lineno, col)
            bases.append(b)
            col += len(tok) - 1
    if not bases:
        raise ParseError("no bases listed", header + 1, 1)
    return Matroid(n, bases)


def load_matroid(text):
    if text.lstrip().startswith("{"):
        return matroid_from_json(_loads(text))
    return matroid_from_text(text)


def set_system_to_json(s):
    return {"n": s.n, "sets": [elements_of(a) for a in s.sets]}


def set_system_from_json(obj):
    n = _field(obj, "n", int, "set system")
    sets = _field(obj, "sets", list, "set system")
    return SetSystem(n, tuple(_mask_from_list(a, n, f"sets[{k}]") for k, a in enumerate(sets)))


# -- matrices and multivectors ------------------------------------------------------


def matrix_token(a):
    """One-line form ``101 / 011``."""
    return " / ".join(a.to_strings())


def matrix_to_text(a):
    return "\n".join(a.to_strings()) + "\n"


def matrix_from_text(text):
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        for col, ch in enumerate(line, 1):
            if ch not in "01 \t\r":
                raise ParseError(f"unexpected character {ch!r}", lineno, col)
        s = "".join(s.split())
        if width is None:
            width = len(s)
        elif len(s) != width:
            raise ParseError(f"row has {len(s)} entries, expected {width}", lineno, 1)
        rows.append(s)
    if not rows:
        raise ParseError("empty matrix", 1, 1)
    return BMatrix.from_strings(rows)


def matrix_to_json(a):
    return {"rows": a.rows, "cols": a.cols, "data": a.to_strings()}


def matrix_from_json(obj):
    rows = _field(obj, "rows", int, "matrix")
    cols = _field(obj, "cols", int, "matrix")
    data = _field(obj, "data", list, "matrix")
    if len(data) != rows or any(not isinstance(r, str) or len(r) != cols or set(r) - {"0", "1"} for r in data):
        raise ParseError(f"matrix: data must be {rows} strings of {cols} binary digits")
    return BMatrix.from_strings(data) if rows else BMatrix(0, cols, ())


def load_matrix(text):
    if text.lstrip().startswith("{"):
        return matrix_from_json(_loads(text))
    return matrix_from_text(text)


def multivector_to_json(v):
    return {"n": v.n, "d": v.d, "terms": [elements_of(t) for t in v.terms]}


def multivector_from_json(obj):
    n = _field(obj, "n", int, "multivector")
    d = _field(obj, "d", int, "multivector")
    terms = _field(obj, "terms", list, "multivector")
    return Multivector(n, d, tuple(_mask_from_list(t, n, f"terms[{k}]") for k, t in enumerate(terms)))


# -- maps ------------------------------------------------------------------------


def pointed_map_to_json(f):
    return {"source_n": f.source_n, "target_n": f.target_n, "images": list(f.images)}


def multimap_to_json(f):
    return {"source_n": f.source_n, "target_n": f.target_n, "images": [elements_of(x) for x in f.images]}


def load_map(text):
    """A ``PointedMap`` (integer images, ``0`` the point) or a ``MultiMap`` (list images)."""
    obj = _loads(text)
    images = _field(obj, "images", list, "map")
    if all(isinstance(y, list) for y in images):
        flat = [x for y in images for x in y]
        target = obj.get("target_n", max(flat, default=0))
        masks = tuple(_mask_from_list(y, target, f"images[{k}]") for k, y in enumerate(images))
        return MultiMap(obj.get("source_n", len(images)), target, masks)
    if not all(isinstance(y, int) and not isinstance(y, bool) for y in images):
        raise ParseError("map: images must be all integers or all lists")
    source = obj.get("source_n", len(images))
    target = obj.get("target_n", max(images, default=0))
    try:
        return PointedMap(source, target, tuple(images))
    except InputError as exc:
        raise ParseError(f"map: {exc}") from None


# -- reports ---------------------------------------------------------------------


def fiber_report_to_json(rep):
    return {
        "plucker": multivector_to_json(rep.plucker),
        "fiber_size": rep.size,
        "maximal": matrix_token(rep.maximal),
        "maxima": [matrix_token(a) for a in rep.maxima],
        "minimals": [matrix_token(a) for a in rep.minimals],
    }


def quotient_to_json(q):
    """Classes as lists of supports, canonical form first, ordered by canonical form."""
    out = []
    for cls in q.classes():
        out.append([elements_of(x) for x in cls])
    return out


def lattice_to_json(m):
    lat = lattice_of_flats(m)
    return {
        "nodes": [elements_of(f) for f in lat.elements],
        "edges": [[elements_of(lat.elements[i]), elements_of(lat.elements[j])] for i, j in lat.covers],
    }


def lattice_to_dot(m):
    lat = lattice_of_flats(m)
    n = m.n

    def name(f):
        return '"' + (format_set(f, n) if f else "{}") + '"'

    lines = ["digraph flats {", "  rankdir=BT;"]
    for f in lat.elements:
        lines.append(f"  {name(f)};")
    for i, j in lat.covers:
        lines.append(f"  {name(lat.elements[i])} -> {name(lat.elements[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def suite_report_to_json(rep):
    return {"suite": rep.suite, "tested": rep.tested, "failures": rep.failures, "ms": rep.ms, **rep.extra}
