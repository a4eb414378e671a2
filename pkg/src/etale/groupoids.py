"""Finite topological groupoids.

``m[(x, y)]`` is defined when ``r(x) == d(y)`` and means "x, then y".
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from ._search import find_bijection
from .limits import check_cap
from .report import Report
from .topology import (FinTopSpace, StructMap, is_continuous, is_local_homeomorphism,
                       is_open_map, product_space, validate_space)


class TopGroupoid:
    def __init__(self, units: FinTopSpace, arrows: FinTopSpace, d, r, u, i, m, name=""):
        self.units = units
        self.arrows = arrows
        self.d = dict(d)
        self.r = dict(r)
        self.u = dict(u)
        self.i = dict(i)
        self.m = dict(m)
        self.name = name

    def composable(self, x, y) -> bool:
        return self.r[x] == self.d[y]

    def composable_pairs(self):
        return [(x, y) for x in self.arrows.points for y in self.arrows.points
                if self.r[x] == self.d[y]]

    def composable_space(self) -> FinTopSpace:
        return product_space(self.arrows, self.arrows, keep=self.composable)

    def structure_maps(self) -> dict:
        G0, G1 = self.units, self.arrows
        return {
            "d": StructMap(G1, G0, self.d),
            "r": StructMap(G1, G0, self.r),
            "u": StructMap(G0, G1, self.u),
            "i": StructMap(G1, G1, self.i),
            "m": StructMap(self.composable_space(), G1, self.m),
        }

    def unit_arrows(self):
        return frozenset(self.u.values())

    def __repr__(self):
        return f"TopGroupoid({self.name or ''} {len(self.units.points)} units, {len(self.arrows.points)} arrows)"


def validate_groupoid(G: TopGroupoid) -> Report:
    rep = Report(G.name or "groupoid")
    for tag, X in (("units", G.units), ("arrows", G.arrows)):
        rep.extend(validate_space(X), prefix=f"{tag} ")
    A, U = G.arrows.point_set, G.units.point_set
    for name, mp, src, tgt in (("d", G.d, A, U), ("r", G.r, A, U), ("u", G.u, U, A), ("i", G.i, A, A)):
        for x in sorted(src):
            if mp.get(x) not in tgt:
                rep.add(f"{name} total", x)
    if not rep.ok:
        return rep
    comp = set(G.composable_pairs())
    for pair in sorted(comp):
        if pair not in G.m:
            rep.add("m defined on composable pair", pair)
        elif G.m[pair] not in A:
            rep.add("m lands in arrows", pair)
    for pair in sorted(set(G.m) - comp, key=repr):
        rep.add("m defined only on composable pairs", pair)
    if not rep.ok:
        return rep
    d, r, u, i, m = G.d, G.r, G.u, G.i, G.m
    for x, y in sorted(comp):
        xy = m[x, y]
        if d[xy] != d[x]:
            rep.add("d(xy) = d(x)", (x, y))
        if r[xy] != r[y]:
            rep.add("r(xy) = r(y)", (x, y))
    for (x, y), z in product(sorted(comp), G.arrows.points):
        if r[y] == d[z]:
            xy, yz = m[x, y], m[y, z]
            if (xy, z) in m and (x, yz) in m and m[xy, z] != m[x, yz]:
                rep.add("associativity", (x, y, z))
    for a in G.units.points:
        if d[u[a]] != a or r[u[a]] != a:
            rep.add("unit endpoints", a)
    for x in G.arrows.points:
        if m.get((u[d[x]], x)) != x:
            rep.add("left unit", x)
        if m.get((x, u[r[x]])) != x:
            rep.add("right unit", x)
        if d[i[x]] != r[x]:
            rep.add("d(i(x)) = r(x)", x)
        if m.get((x, i[x])) != u[d[x]]:
            rep.add("x i(x) = u(d(x))", x)
        if m.get((i[x], x)) != u[r[x]]:
            rep.add("i(x) x = u(r(x))", x)
        if i[i[x]] != x:
            rep.add("i involutive", x)
    if not rep.ok:
        return rep
    for name, f in G.structure_maps().items():
        if not is_continuous(f):
            rep.add(f"{name} continuous", _discontinuity(f))
    return rep


def _discontinuity(f: StructMap):
    for x in f.source.points:
        if not f.image(f.source.nbhd[x]) <= f.target.nbhd[f(x)]:
            return x
    return None


@dataclass
class GroupoidClass:
    open: bool
    etale: bool
    per_map: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "etale" if self.etale else "open" if self.open else "topological"

    @property
    def all_open(self) -> bool:
        return all(v["open"] for v in self.per_map.values())

    @property
    def all_local_homeomorphisms(self) -> bool:
        return all(v["local_homeomorphism"] for v in self.per_map.values())

    @property
    def equivalences_agree(self) -> bool:
        """Whether "d open" matches "all maps open", and likewise for étale."""
        return self.open == self.all_open and self.etale == self.all_local_homeomorphisms


def classify_groupoid(G: TopGroupoid) -> GroupoidClass:
    per_map = {}
    for name, f in G.structure_maps().items():
        per_map[name] = {"open": is_open_map(f), "local_homeomorphism": is_local_homeomorphism(f)}
    return GroupoidClass(per_map["d"]["open"], per_map["d"]["local_homeomorphism"], per_map)


def is_etale(G: TopGroupoid) -> bool:
    return is_local_homeomorphism(StructMap(G.arrows, G.units, G.d))


@dataclass
class GroupoidIso:
    arrows: dict
    units: dict

    def as_dict(self):
        return {"arrows": dict(sorted(self.arrows.items())), "units": dict(sorted(self.units.items()))}


@dataclass
class NotIsomorphic:
    reason: str

    def __bool__(self):
        return False


def verify_groupoid_iso(G: TopGroupoid, H: TopGroupoid, iso: GroupoidIso):
    """Return ``None`` if ``iso`` is an isomorphism, else the failing condition."""
    fa, fu = iso.arrows, iso.units
    if sorted(fa) != list(G.arrows.points) or sorted(fa.values()) != list(H.arrows.points):
        return "arrow bijection"
    if sorted(fu) != list(G.units.points) or sorted(fu.values()) != list(H.units.points):
        return "unit bijection"
    for X, Y, f, tag in ((G.arrows, H.arrows, fa, "arrows"), (G.units, H.units, fu, "units")):
        for x in X.points:
            if frozenset(f[z] for z in X.nbhd[x]) != Y.nbhd[f[x]]:
                return f"{tag} homeomorphism at {x}"
    for x in G.arrows.points:
        if fu[G.d[x]] != H.d[fa[x]]:
            return f"d at {x}"
        if fu[G.r[x]] != H.r[fa[x]]:
            return f"r at {x}"
        if fa[G.i[x]] != H.i[fa[x]]:
            return f"i at {x}"
    for a in G.units.points:
        if fa[G.u[a]] != H.u[fu[a]]:
            return f"u at {a}"
    for (x, y), z in G.m.items():
        if H.m.get((fa[x], fa[y])) != fa[z]:
            return f"m at {(x, y)}"
    return None


def _orbits(G: TopGroupoid):
    parent = {a: a for a in G.units.points}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in G.arrows.points:
        parent[find(G.d[x])] = find(G.r[x])
    return Counter(find(a) for a in G.units.points)


def groupoid_invariants(G: TopGroupoid) -> dict:
    """Isomorphism invariants, cheapest first."""
    out_deg = Counter(G.d[x] for x in G.arrows.points)
    iso = Counter(G.d[x] for x in G.arrows.points if G.d[x] == G.r[x])
    return {
        "unit count": len(G.units.points),
        "arrow count": len(G.arrows.points),
        "arrow open-set count": len(G.arrows.opens),
        "unit open-set count": len(G.units.opens),
        "unit degree multiset": sorted(out_deg[a] for a in G.units.points),
        "orbit structure": sorted(_orbits(G).values()),
        "isotropy sizes": sorted(iso[a] for a in G.units.points),
    }


def _arrow_signature(G: TopGroupoid):
    out_deg = Counter(G.d[x] for x in G.arrows.points)
    units = G.unit_arrows()

    def sig(x):
        order, y = 1, x
        if G.d[x] == G.r[x]:
            while y != G.u[G.d[x]] and order <= len(G.arrows.points):
                y = G.m.get((y, x))
                order += 1
        else:
            order = 0
        return (x in units, G.d[x] == G.r[x], order, out_deg[G.d[x]], out_deg[G.r[x]],
                len(G.arrows.nbhd[x]), sum(1 for z in G.arrows.points if x in G.arrows.nbhd[z]))
    return sig


def groupoid_isomorphic(G: TopGroupoid, H: TopGroupoid):
    """A verified ``GroupoidIso`` or ``NotIsomorphic(reason)``.

    Cheap invariants are compared first; then arrows are matched by
    backtracking.  Units are handled through their unit arrows, so the unit
    bijection is read off the arrow bijection.
    """
    check_cap("max_arrows", max(len(G.arrows.points), len(H.arrows.points)))
    ig, ih = groupoid_invariants(G), groupoid_invariants(H)
    for key in ig:
        if ig[key] != ih[key]:
            return NotIsomorphic(f"{key}: {ig[key]} vs {ih[key]}")

    XG, XH = G.arrows, H.arrows
    unit_of = {G.u[a]: a for a in G.units.points}

    def consistent(f, x):
        y = f[x]
        for z, w in f.items():
            if (z in XG.nbhd[x]) != (w in XH.nbhd[y]) or (x in XG.nbhd[z]) != (y in XH.nbhd[w]):
                return False
        # endpoints must go to the images of the endpoints' unit arrows
        for end, hend in ((G.d, H.d), (G.r, H.r)):
            ua = G.u[end[x]]
            if ua in f and H.u[hend[y]] != f[ua]:
                return False
        if x in unit_of:
            for z, w in f.items():
                if G.d[z] == unit_of[x] and H.d[w] != H.d[y]:
                    return False
                if G.r[z] == unit_of[x] and H.r[w] != H.d[y]:
                    return False
        xi = G.i[x]
        if xi in f and f[xi] != H.i[y]:
            return False
        for z, w in f.items():
            for z2, w2 in f.items():
                defined = (z, z2) in G.m
                if defined != ((w, w2) in H.m):
                    return False
                if defined:
                    p = G.m[z, z2]
                    if p in f and H.m[w, w2] != f[p]:
                        return False
        return True

    fa = find_bijection(XG.points, XH.points, _arrow_signature(G), _arrow_signature(H), consistent)
    if fa is None:
        return NotIsomorphic("exhaustive search found no isomorphism")
    fu = {a: H.d[fa[G.u[a]]] for a in G.units.points}
    iso = GroupoidIso(fa, fu)
    bad = verify_groupoid_iso(G, H, iso)
    if bad is not None:
        return NotIsomorphic(f"search result failed verification: {bad}")
    return iso


def disjoint_union(G: TopGroupoid, H: TopGroupoid, name="") -> TopGroupoid:
    def tag(k, X):
        return {x: f"{k}:{x}" for x in X.points}

    gu, gh = tag(0, G.units), tag(1, H.units)
    ga, ha = tag(0, G.arrows), tag(1, H.arrows)

    def space(X, Y, fx, fy):
        nb = {fx[x]: {fx[z] for z in X.nbhd[x]} for x in X.points}
        nb.update({fy[y]: {fy[z] for z in Y.nbhd[y]} for y in Y.points})
        return FinTopSpace(list(nb), neighbourhoods=nb)

    def merge(attr, src_g, src_h, tgt_g, tgt_h):
        out = {src_g[k]: tgt_g[v] for k, v in getattr(G, attr).items()}
        out.update({src_h[k]: tgt_h[v] for k, v in getattr(H, attr).items()})
        return out

    m = {(ga[x], ga[y]): ga[z] for (x, y), z in G.m.items()}
    m.update({(ha[x], ha[y]): ha[z] for (x, y), z in H.m.items()})
    return TopGroupoid(
        space(G.units, H.units, gu, gh), space(G.arrows, H.arrows, ga, ha),
        merge("d", ga, ha, gu, gh), merge("r", ga, ha, gu, gh), merge("u", gu, gh, ga, ha),
        merge("i", ga, ha, ga, ha), m, name=name)
