"""JSON documents for every structure the package builds.

A document is an object with ``kind``, ``name`` and kind-specific tables.
Arrays indexed by elements follow the sorted element order; the groupoid
multiplication and action maps are lists of triples.
"""
from __future__ import annotations

import json

from .actions import GroupoidAction, QuantaleModule, validate_action, validate_module
from .errors import AxiomError, ParseError, SchemaError
from .groupoids import TopGroupoid, validate_groupoid
from .order import Frame, SupLattice, is_frame
from .quantales import Quantale, validate_quantale
from .semigroups import InvSemigroup, validate_inverse_semigroup
from .topology import FinTopSpace, validate_space

KINDS = ("topspace", "frame", "invsemigroup", "groupoid", "quantale", "action", "module")


# -- writing -------------------------------------------------------------------

def _space_body(X: FinTopSpace):
    return {"points": sorted(X.points),
            "opens": [sorted(U) for U in sorted(X.opens, key=lambda U: (len(U), sorted(U)))]}


def _lattice_body(L: SupLattice):
    els = sorted(L.elements)
    return {"elements": els, "leq": [[a, b] for a in els for b in els if L.le(a, b)]}


def _groupoid_body(G: TopGroupoid):
    arrows, units = sorted(G.arrows.points), sorted(G.units.points)
    return {
        "units": _space_body(G.units),
        "arrows": _space_body(G.arrows),
        "d": [G.d[g] for g in arrows],
        "r": [G.r[g] for g in arrows],
        "u": [G.u[x] for x in units],
        "i": [G.i[g] for g in arrows],
        "m": [[x, y, z] for (x, y), z in sorted(G.m.items())],
    }


def _quantale_body(Q: Quantale):
    body = _lattice_body(Q.carrier)
    els = body["elements"]
    body["mult"] = [[Q.mult[a, b] for b in els] for a in els]
    body["star"] = [Q.star[a] for a in els]
    body["unit"] = Q.unit
    return body


def to_document(obj, name=None) -> dict:
    name = getattr(obj, "name", "") if name is None else name
    if isinstance(obj, FinTopSpace):
        kind, body = "topspace", _space_body(obj)
    elif isinstance(obj, Quantale):
        kind, body = "quantale", _quantale_body(obj)
    elif isinstance(obj, SupLattice):
        kind, body = "frame", _lattice_body(obj)
    elif isinstance(obj, InvSemigroup):
        els = sorted(obj.elements)
        kind, body = "invsemigroup", {
            "elements": els,
            "mult": [[obj.mult[a, b] for b in els] for a in els],
            "inv": [obj.inv[a] for a in els],
        }
    elif isinstance(obj, TopGroupoid):
        kind, body = "groupoid", _groupoid_body(obj)
    elif isinstance(obj, GroupoidAction):
        pts = sorted(obj.X.points)
        kind, body = "action", {
            "groupoid": _groupoid_body(obj.G),
            "space": _space_body(obj.X),
            "p": [obj.p[x] for x in pts],
            "alpha": [[x, g, y] for (x, g), y in sorted(obj.alpha.items())],
        }
    elif isinstance(obj, QuantaleModule):
        qs, ms = sorted(obj.Q.elements), sorted(obj.M.elements)
        kind, body = "module", {
            "quantale": _quantale_body(obj.Q),
            "lattice": _lattice_body(obj.M),
            "act": [[obj.act[a, v] for v in ms] for a in qs],
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"kind": kind, "name": name or "", **body}


def dumps(obj, name=None) -> str:
    return json.dumps(to_document(obj, name), sort_keys=True, indent=1)


def write(obj, path, name=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj, name) + "\n")


# -- reading -------------------------------------------------------------------

def _field(doc, key, path, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{path}: missing field '{key}'")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{path}.{key}: expected {kind.__name__}")
    return value


def _ids(doc, key, path):
    ids = _field(doc, key, path, list)
    for k, x in enumerate(ids):
        if not isinstance(x, str):
            raise SchemaError(f"{path}.{key}[{k}]: ids must be strings")
    seen = set()
    for x in ids:
        if x in seen:
            raise SchemaError(f"{path}.{key}: duplicate id {x!r}")
        seen.add(x)
    return sorted(ids)


def _aligned(doc, key, path, index, values=None):
    arr = _field(doc, key, path, list)
    if len(arr) != len(index):
        raise SchemaError(f"{path}.{key}: expected {len(index)} entries, got {len(arr)}")
    for k, v in enumerate(arr):
        if values is not None and v not in values:
            raise SchemaError(f"{path}.{key}[{k}]: unknown id {v!r}")
    return dict(zip(index, arr))


def _matrix(doc, key, path, rows, cols, values):
    arr = _field(doc, key, path, list)
    if len(arr) != len(rows):
        raise SchemaError(f"{path}.{key}: expected {len(rows)} rows")
    out = {}
    for a, row in zip(rows, arr):
        if not isinstance(row, list) or len(row) != len(cols):
            raise SchemaError(f"{path}.{key}[{a}]: expected {len(cols)} entries")
        for b, v in zip(cols, row):
            if v not in values:
                raise SchemaError(f"{path}.{key}[{a}][{b}]: unknown id {v!r}")
            out[a, b] = v
    return out


def _triples(doc, key, path):
    out = {}
    for k, t in enumerate(_field(doc, key, path, list)):
        if not isinstance(t, list) or len(t) != 3:
            raise SchemaError(f"{path}.{key}[{k}]: expected a triple")
        if (t[0], t[1]) in out:
            raise SchemaError(f"{path}.{key}: duplicate entry for {t[0]!r}, {t[1]!r}")
        out[t[0], t[1]] = t[2]
    return out


def _checked(report):
    if not report.ok:
        raise AxiomError(str(report), report)


def _space(doc, path) -> FinTopSpace:
    points = _ids(doc, "points", path)
    opens = []
    for k, U in enumerate(_field(doc, "opens", path, list)):
        if not isinstance(U, list) or any(x not in points for x in U):
            raise SchemaError(f"{path}.opens[{k}]: not a set of known points")
        opens.append(frozenset(U))
    X = FinTopSpace(points, opens)
    _checked(validate_space(X))
    return X


def _lattice(doc, path, frame=False) -> SupLattice:
    els = _ids(doc, "elements", path)
    pairs = []
    for k, pr in enumerate(_field(doc, "leq", path, list)):
        if not isinstance(pr, list) or len(pr) != 2:
            raise SchemaError(f"{path}.leq[{k}]: expected a pair")
        pairs.append(tuple(pr))
    L = SupLattice(els, pairs)
    if frame:
        ok, witness = is_frame(L)
        if not ok:
            raise AxiomError(f"{path}: distributivity fails at {witness!r}")
        L = Frame(L.poset, None)
    return L


def _groupoid(doc, path, name="") -> TopGroupoid:
    G0 = _space(_field(doc, "units", path, dict), f"{path}.units")
    G1 = _space(_field(doc, "arrows", path, dict), f"{path}.arrows")
    arrows, units = sorted(G1.points), sorted(G0.points)
    G = TopGroupoid(
        G0, G1,
        d=_aligned(doc, "d", path, arrows, G0.point_set),
        r=_aligned(doc, "r", path, arrows, G0.point_set),
        u=_aligned(doc, "u", path, units, G1.point_set),
        i=_aligned(doc, "i", path, arrows, G1.point_set),
        m=_triples(doc, "m", path),
        name=name,
    )
    _checked(validate_groupoid(G))
    return G


def _quantale(doc, path, name="") -> Quantale:
    L = _lattice(doc, path)
    els = sorted(L.elements)
    unit = _field(doc, "unit", path, str)
    if unit not in L:
        raise SchemaError(f"{path}.unit: unknown id {unit!r}")
    Q = Quantale(L, _matrix(doc, "mult", path, els, els, L), unit,
                 _aligned(doc, "star", path, els, L), name=name)
    _checked(validate_quantale(Q))
    return Q


def from_document(doc: dict):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    kind = _field(doc, "kind", "$", str)
    name = doc.get("name", "")
    if kind == "topspace":
        return _space(doc, "$")
    if kind == "frame":
        return _lattice(doc, "$", frame=True)
    if kind == "invsemigroup":
        els = _ids(doc, "elements", "$")
        S = InvSemigroup(els, _matrix(doc, "mult", "$", els, els, set(els)),
                         _aligned(doc, "inv", "$", els, set(els)), name=name)
        _checked(validate_inverse_semigroup(S))
        return S
    if kind == "groupoid":
        return _groupoid(doc, "$", name)
    if kind == "quantale":
        return _quantale(doc, "$", name)
    if kind == "action":
        G = _groupoid(_field(doc, "groupoid", "$", dict), "$.groupoid")
        X = _space(_field(doc, "space", "$", dict), "$.space")
        A = GroupoidAction(G, X, _aligned(doc, "p", "$", sorted(X.points), G.units.point_set),
                           _triples(doc, "alpha", "$"), name=name)
        _checked(validate_action(A))
        return A
    if kind == "module":
        Q = _quantale(_field(doc, "quantale", "$", dict), "$.quantale")
        M = _lattice(_field(doc, "lattice", "$", dict), "$.lattice")
        N = QuantaleModule(Q, M, _matrix(doc, "act", "$", sorted(Q.elements),
                                         sorted(M.elements), M), name=name)
        _checked(validate_module(N))
        return N
    raise SchemaError(f"$.kind: unknown kind {kind!r} (expected one of {', '.join(KINDS)})")


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_document(doc)


def read(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def same_structure(a, b) -> bool:
    """Structural identity: equal canonical documents."""
    return to_document(a) == to_document(b)
