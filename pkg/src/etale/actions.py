"""Groupoid actions on bundles, quantale modules, and the comparison between
equivariant maps and module homomorphisms.

Arrows act on the right: ``alpha(x, g)`` is defined when ``p(x) = d(g)`` and
lands over ``r(g)``, so ``alpha(alpha(x, g), h) = alpha(x, m(g, h))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import NotOpenAction
from .families import cyclic_group_groupoid, unit_groupoid
from .groupoids import TopGroupoid, validate_groupoid
from .limits import check_cap
from .order import Frame, SupLattice, is_frame_hom, set_id
from .quantales import Quantale, opens_quantale
from .report import Report
from .topology import (FinTopSpace, StructMap, discrete_space, is_continuous, is_open_map,
                       product_space, validate_space)


class GroupoidAction:
    def __init__(self, G: TopGroupoid, X: FinTopSpace, p: dict, alpha: dict, name=""):
        self.G = G
        self.X = X
        self.p = dict(p)
        self.alpha = dict(alpha)
        self.name = name

    def pullback_pairs(self):
        return sorted((x, g) for x in self.X.points for g in self.G.arrows.points
                      if self.p.get(x) == self.G.d[g])

    def pullback_space(self) -> FinTopSpace:
        return product_space(self.X, self.G.arrows, keep=lambda x, g: self.p.get(x) == self.G.d[g])

    def projection(self) -> StructMap:
        return StructMap(self.X, self.G.units, self.p)

    def action_map(self) -> StructMap:
        return StructMap(self.pullback_space(), self.X, self.alpha)

    def __repr__(self):
        return f"GroupoidAction({self.name or ''} on {len(self.X.points)} points)"


def validate_action(A: GroupoidAction) -> Report:
    rep = Report(A.name or "action")
    rep.extend(validate_groupoid(A.G), prefix="groupoid ")
    rep.extend(validate_space(A.X), prefix="bundle ")
    if not rep.ok:
        return rep
    G, X, p, alpha = A.G, A.X, A.p, A.alpha
    for x in X.points:
        if p.get(x) not in G.units.point_set:
            rep.add("projection total", x)
    if not rep.ok:
        return rep
    pairs = A.pullback_pairs()
    for xg in pairs:
        if alpha.get(xg) not in X.point_set:
            rep.add("alpha defined on pullback pair", xg)
    for xg in sorted(set(alpha) - set(pairs), key=repr):
        rep.add("alpha defined outside pullback", xg)
    if not rep.ok:
        return rep
    for x, g in pairs:
        if p[alpha[x, g]] != G.r[g]:
            rep.add("alpha lands over r(g)", (x, g))
    for x in X.points:
        if alpha[x, G.u[p[x]]] != x:
            rep.add("unit acts trivially", x)
    for x, g in pairs:
        y = alpha[x, g]
        for h in G.arrows.points:
            # skipped where y already sits over the wrong unit
            if G.d[h] == G.r[g] == p[y] and alpha[y, h] != alpha[x, G.m[g, h]]:
                rep.add("associativity", (x, g, h))
    proj = A.projection()
    if not is_continuous(proj):
        rep.add("projection continuous", "p")
    if not is_open_map(proj):
        rep.add("projection open", "p")
    act = A.action_map()
    if not is_continuous(act):
        rep.add("alpha continuous", "alpha")
    elif not is_open_map(act):
        rep.add("alpha open map", "alpha")
    return rep


# -- modules -------------------------------------------------------------------

class QuantaleModule:
    """``act[a, v]`` is ``v`` acted on by the quantale element ``a``."""

    def __init__(self, Q: Quantale, M: SupLattice, act: dict, name=""):
        self.Q = Q
        self.M = M
        self.act = dict(act)
        self.name = name

    def __repr__(self):
        return f"QuantaleModule({self.name or ''} {len(self.Q)} x {len(self.M)})"


def validate_module(N: QuantaleModule) -> Report:
    rep = Report(N.name or "module")
    Q, M, act = N.Q, N.M, N.act
    for a in Q.elements:
        for v in M.elements:
            if act.get((a, v)) not in M:
                rep.add("action total", (a, v))
    if not rep.ok:
        return rep
    P = Q.carrier
    for a in Q.elements:
        if act[a, M.bottom] != M.bottom:
            rep.add("preserves joins in the module variable (empty join)", a)
        for v, w in combinations(M.elements, 2):
            if act[a, M.join2(v, w)] != M.join2(act[a, v], act[a, w]):
                rep.add("preserves joins in the module variable", (a, (v, w)))
    for v in M.elements:
        if act[P.bottom, v] != M.bottom:
            rep.add("preserves joins in the quantale variable (empty join)", v)
        for a, b in combinations(Q.elements, 2):
            if act[P.join2(a, b), v] != M.join2(act[a, v], act[b, v]):
                rep.add("preserves joins in the quantale variable", ((a, b), v))
        if act[Q.unit, v] != v:
            rep.add("unit acts trivially", v)
        for a in Q.elements:
            for b in Q.elements:
                if act[Q.mult[a, b], v] != act[b, act[a, v]]:
                    rep.add("action associativity", (a, b, v))
    return rep


def quantale_self_module(Q: Quantale) -> QuantaleModule:
    """``Q`` acting on itself by right multiplication: ``act(a, v) = v*a``."""
    act = {(a, v): Q.mult[v, a] for a in Q.elements for v in Q.elements}
    return QuantaleModule(Q, Q.carrier, act, name=f"{Q.name} on itself" if Q.name else "")


def induced_module(A: GroupoidAction, Q: Quantale = None) -> QuantaleModule:
    """Opens of the arrow space acting on opens of the bundle through alpha."""
    Q = opens_quantale(A.G) if Q is None else Q
    ids = A.X.open_ids()
    name = {U: k for k, U in ids.items()}
    M = Frame.from_sets(ids)
    arrows_of = Q.open_sets
    act = {}
    for a, U in arrows_of.items():
        for v, V in ids.items():
            W = frozenset(A.alpha[x, g] for x in V for g in U if A.p[x] == A.G.d[g])
            if W not in name:
                raise NotOpenAction(f"{a} acting on {v} gives {set_id(W)}, which is not open")
            act[a, v] = name[W]
    return QuantaleModule(Q, M, act, name=f"O({A.name})" if A.name else "")


def is_module_hom(N: QuantaleModule, K: QuantaleModule, h: dict):
    """``None`` when ``h: N.M -> K.M`` preserves joins and the action."""
    if h[N.M.bottom] != K.M.bottom:
        return ("join", "empty")
    for v, w in combinations(N.M.elements, 2):
        if h[N.M.join2(v, w)] != K.M.join2(h[v], h[w]):
            return ("join", (v, w))
    for a in N.Q.elements:
        for v in N.M.elements:
            if h[N.act[a, v]] != K.act[a, h[v]]:
                return ("action", (a, v))
    return None


def module_homs(N: QuantaleModule, K: QuantaleModule) -> list:
    """All module homomorphisms ``N -> K``.

    A join-preserving map is fixed by its values on join-irreducibles, so
    those values are enumerated and each extension is checked in full.
    """
    irr = N.M.join_irreducibles()
    check_cap("max_subsets", len(K.M) ** len(irr))
    below = {v: [j for j in irr if N.M.le(j, v)] for v in N.M.elements}
    out = []
    for values in product(K.M.elements, repeat=len(irr)):
        on_irr = dict(zip(irr, values))
        h = {v: K.M.join(on_irr[j] for j in below[v]) for v in N.M.elements}
        if is_module_hom(N, K, h) is None:
            out.append(h)
    return sorted(out, key=lambda h: sorted(h.items()))


# -- representations and module homomorphisms ---------------------------------------

def equivariant_maps(A: GroupoidAction, B: GroupoidAction) -> list:
    """Continuous maps ``f: X_A -> X_B`` over the units that commute with the actions."""
    fibres = [[y for y in B.X.points if B.p[y] == A.p[x]] for x in A.X.points]
    total = 1
    for f in fibres:
        total *= len(f)
    check_cap("max_subsets", total)
    out = []
    for values in product(*fibres):
        f = dict(zip(A.X.points, values))
        if any(f[A.alpha[x, g]] != B.alpha[f[x], g] for x, g in A.pullback_pairs()):
            continue
        if is_continuous(StructMap(A.X, B.X, f)):
            out.append(f)
    return sorted(out, key=lambda f: sorted(f.items()))


def preimage_map(f: dict, A: GroupoidAction, B: GroupoidAction) -> dict:
    """``V -> f^-1(V)`` from opens of ``X_B`` to opens of ``X_A`` (by id)."""
    names_a = {U: k for k, U in A.X.open_ids().items()}
    fm = StructMap(A.X, B.X, f)
    return {v: names_a[fm.preimage(V)] for v, V in B.X.open_ids().items()}


@dataclass
class CorrespondenceReport:
    equivariant_maps: list
    module_homs: list
    images: list
    injective: bool
    images_are_module_homs: bool
    bijective: bool
    frame_module_homs: list = field(default_factory=list)
    bijective_onto_frame_homs: bool = False

    def as_dict(self):
        return {
            "equivariant_maps": len(self.equivariant_maps),
            "module_homs": len(self.module_homs),
            "frame_module_homs": len(self.frame_module_homs),
            "injective": self.injective,
            "images_are_module_homs": self.images_are_module_homs,
            "bijective": self.bijective,
            "bijective_onto_frame_homs": self.bijective_onto_frame_homs,
        }


def rep_hom_correspondence(A: GroupoidAction, B: GroupoidAction) -> CorrespondenceReport:
    """Compare equivariant maps ``X_A -> X_B`` with module homomorphisms
    ``O(X_B) -> O(X_A)`` through ``f -> f^-1``."""
    Q = opens_quantale(A.G)
    MA, MB = induced_module(A, Q), induced_module(B, Q)
    maps = equivariant_maps(A, B)
    homs = module_homs(MB, MA)
    images = [preimage_map(f, A, B) for f in maps]
    keys = {tuple(sorted(h.items())) for h in images}
    hom_keys = {tuple(sorted(h.items())) for h in homs}
    frame_homs = [h for h in homs if is_frame_hom(MB.M, MA.M, h)[0]]
    frame_keys = {tuple(sorted(h.items())) for h in frame_homs}
    return CorrespondenceReport(
        equivariant_maps=maps,
        module_homs=homs,
        images=images,
        injective=len(keys) == len(maps),
        images_are_module_homs=all(is_module_hom(MB, MA, h) is None for h in images),
        bijective=keys == hom_keys,
        frame_module_homs=frame_homs,
        bijective_onto_frame_homs=keys == frame_keys,
    )


# -- sample actions --------------------------------------------------------------

def swap_action() -> GroupoidAction:
    """Z/2 acting on two discrete points by exchanging them."""
    G = cyclic_group_groupoid(2)
    X = discrete_space(2)
    other = {"1": "2", "2": "1"}
    alpha = {}
    for x in X.points:
        alpha[x, "g0"] = x
        alpha[x, "g1"] = other[x]
    return GroupoidAction(G, X, {x: "*" for x in X.points}, alpha, name="swap")


def trivial_action(G: TopGroupoid, n: int) -> GroupoidAction:
    """A one-unit groupoid acting trivially on ``n`` discrete points."""
    (unit,) = G.units.points
    X = discrete_space(n)
    alpha = {(x, g): x for x in X.points for g in G.arrows.points}
    return GroupoidAction(G, X, {x: unit for x in X.points}, alpha, name=f"trivial({n})")


def unit_action(X: FinTopSpace, B: FinTopSpace, p: dict) -> GroupoidAction:
    """The unit groupoid on ``B`` acting on a bundle ``p: X -> B`` by identities."""
    G = unit_groupoid(B, name="unit")
    return GroupoidAction(G, X, p, {(x, p[x]): x for x in X.points}, name="unit")


def self_action(G: TopGroupoid) -> GroupoidAction:
    """``G`` acting on its arrows over ``r`` by multiplication."""
    alpha = {(x, g): G.m[x, g] for (x, g) in G.m}
    return GroupoidAction(G, G.arrows, dict(G.r), alpha, name=f"{G.name} on itself" if G.name else "self")
