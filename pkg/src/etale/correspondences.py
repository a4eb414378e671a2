"""Local bisections, the sheaf of an inverse semigroup, and germ groupoids."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import (AxiomError, IdempotentsNotSpatial, NotAbstractPseudogroup,
                     NotComplete, NotEtale, NotIsomorphicError, NotSober, SizeCapExceeded)
from .groupoids import (GroupoidIso, TopGroupoid, groupoid_isomorphic, is_etale,
                        validate_groupoid)
from .limits import get_limits
from .locales import extent, is_order_isomorphism, is_sober, is_spatial, spectrum
from .order import SupLattice, frame_points, set_id
from .semigroups import (InvSemigroup, _compatible_fast, idempotent_frame, is_abstract_pseudogroup,
                         is_complete, is_semigroup_iso, semigroup_isomorphism,
                         validate_inverse_semigroup)
from .topology import FinTopSpace, StructMap, is_homeomorphism, subspace


# -- local bisections -------------------------------------------------------

@dataclass(frozen=True)
class LocalBisection:
    domain: frozenset
    graph: tuple  # sorted (unit, arrow) pairs

    @property
    def section(self) -> dict:
        return dict(self.graph)

    @property
    def id(self) -> str:
        return "<" + ",".join(f"{x}:{a}" for x, a in self.graph) + ">"


def local_sections(G: TopGroupoid):
    """All continuous local sections of ``d`` over open sets of the units."""
    fibres = {x: [a for a in G.arrows.points if G.d[a] == x] for x in G.units.points}
    out = []
    for U in G.units.sorted_opens():
        pts = sorted(U)
        sub = subspace(G.units, U)
        for choice in product(*(fibres[x] for x in pts)):
            s = dict(zip(pts, choice))
            if all(frozenset(s[z] for z in sub.nbhd[x]) <= G.arrows.nbhd[s[x]] for x in pts):
                out.append(LocalBisection(frozenset(U), tuple(sorted(s.items()))))
    return out


def _is_bisection(G: TopGroupoid, b: LocalBisection) -> bool:
    U = b.domain
    rs = {x: G.r[a] for x, a in b.graph}
    image = frozenset(rs.values())
    if len(image) != len(U) or not G.units.is_open(image):
        return False
    return is_homeomorphism(StructMap(subspace(G.units, U), subspace(G.units, image), rs))


def local_bisections(G: TopGroupoid):
    return [b for b in local_sections(G) if _is_bisection(G, b)]


def _require_etale_sober(G: TopGroupoid):
    if not is_etale(G):
        raise NotEtale(f"{G!r}: d is not a local homeomorphism")
    if not is_sober(G.units):
        raise NotSober(f"{G!r}: unit space is not sober")


def bisections(G: TopGroupoid) -> InvSemigroup:
    """The inverse semigroup of local bisections of an étale groupoid.

    ``(s*t)(x) = m(s(x), t(r(s(x))))`` wherever defined, and
    ``inv(s)(r(s(x))) = i(s(x))``.
    """
    _require_etale_sober(G)
    bs = local_bisections(G)
    by_graph = {b.graph: b.id for b in bs}
    by_id = {b.id: b for b in bs}
    mult, inv = {}, {}
    for b in bs:
        s = b.section
        inverse = {G.r[a]: G.i[a] for a in s.values()}
        key = tuple(sorted(inverse.items()))
        if key not in by_graph:
            raise AxiomError(f"inverse of {b.id} is not a local bisection")
        inv[b.id] = by_graph[key]
        for c in bs:
            t = c.section
            st = {x: G.m[a, t[G.r[a]]] for x, a in s.items() if G.r[a] in t}
            key = tuple(sorted(st.items()))
            if key not in by_graph:
                raise AxiomError(f"product {b.id}*{c.id} is not a local bisection")
            mult[b.id, c.id] = by_graph[key]
    S = InvSemigroup(by_id, mult, inv, name=f"I({G.name})" if G.name else "bisections")
    S.local_bisections = by_id
    return S


# -- the base space of an abstract pseudogroup ------------------------------

@dataclass
class Base:
    """A space ``X`` with a frame isomorphism ``iota: E(S) -> opens(X)``."""
    space: FinTopSpace
    iota: dict

    def idempotent_of(self, U):
        return self._inverse[frozenset(U)]

    def __post_init__(self):
        self._inverse = {U: e for e, U in self.iota.items()}


def base_of(S: InvSemigroup, space: FinTopSpace = None, iota: dict = None) -> Base:
    """Match E(S) with the opens of ``space``; by default ``space`` is the
    spectrum of E(S) and ``iota`` is ``e -> U_e``."""
    E = idempotent_frame(S)
    if space is None:
        ok, witness = is_spatial(E)
        if not ok:
            raise IdempotentsNotSpatial(f"U_a = U_b for {witness!r}")
        points = frame_points(E)
        return Base(spectrum(E, points), extent(E, points))
    iota = {e: frozenset(U) for e, U in iota.items()}
    opens = SupLattice.from_sets({set_id(U): U for U in space.opens})
    as_ids = {e: set_id(U) for e, U in iota.items()}
    if not is_order_isomorphism(E, opens, as_ids):
        raise AxiomError("iota is not a frame isomorphism E(S) -> opens(X)")
    return Base(space, iota)


# -- sheaf of sections ------------------------------------------------------

class SheafOfSections:
    """``F(U) = {s : s*inv(s) = iota^-1(U)}`` with restriction ``s -> V*s``."""

    def __init__(self, S: InvSemigroup, base: Base):
        self.S = S
        self.base = base
        self.opens = base.space.sorted_opens()
        self.sections = {U: tuple(s for s in S.elements if S.dom(s) == base.idempotent_of(U))
                         for U in self.opens}

    def restrict(self, s, V):
        return self.S.mult[self.base.idempotent_of(V), s]

    def __getitem__(self, U):
        return self.sections[frozenset(U)]

    def functoriality_failure(self):
        for U in self.opens:
            for s in self.sections[U]:
                if self.restrict(s, U) != s:
                    return ("identity", set_id(U), s)
                for V in self.opens:
                    if not V <= U:
                        continue
                    sv = self.restrict(s, V)
                    if sv not in self.sections[V]:
                        return ("restriction lands in F(V)", set_id(U), set_id(V), s)
                    for W in self.opens:
                        if W <= V and self.restrict(sv, W) != self.restrict(s, W):
                            return ("composition", set_id(U), set_id(V), set_id(W), s)
        return None


def sheaf_of(S: InvSemigroup, space: FinTopSpace = None, iota: dict = None) -> SheafOfSections:
    F = SheafOfSections(S, base_of(S, space, iota))
    bad = F.functoriality_failure()
    if bad is not None:
        raise AxiomError(f"presheaf functoriality fails: {bad!r}")
    return F


def _covers(opens, U):
    """Families of opens inside ``U`` whose union is ``U``, smallest first."""
    inside = [V for V in opens if V <= U]
    for k in range(len(inside) + 1):
        for cover in combinations(inside, k):
            if frozenset().union(*cover) == U:
                yield cover


def check_sheaf(F: SheafOfSections):
    """``(True, None)`` or ``(False, witness)``.

    A matching family is a choice ``s_i in F(U_i)`` of pairwise compatible
    elements; compatibility makes the sections agree on overlaps of both
    domains and images.  The witness names the open, the cover and the
    family that has no unique amalgamation.
    """
    S = F.S
    cap = get_limits().max_subsets
    seen = 0
    for U in F.opens:
        for cover in _covers(F.opens, U):
            seen += 1
            if seen > cap:
                raise SizeCapExceeded(f"more than {cap} covers")
            for family in product(*(F.sections[V] for V in cover)):
                if not all(_compatible_fast(S, a, b) for a, b in combinations(family, 2)):
                    continue
                if not all(F.restrict(a, V & W) == F.restrict(b, V & W)
                           for (a, V), (b, W) in combinations(zip(family, cover), 2)):
                    continue
                glued = [s for s in F.sections[U]
                         if all(F.restrict(s, V) == a for a, V in zip(family, cover))]
                if len(glued) != 1:
                    return False, {"open": set_id(U), "cover": [set_id(V) for V in cover],
                                   "family": list(family), "amalgamations": glued}
    return True, None


# -- germs -------------------------------------------------------------------

@dataclass(frozen=True)
class Germ:
    rep: object
    point: object

    @property
    def id(self) -> str:
        return f"{self.rep}@{self.point}"


def _germ_equivalent(S, base, x, s, t) -> bool:
    for f in S.idempotent_list:
        if x in base.iota[f] and S.leq(f, S.dom(s)) and S.leq(f, S.dom(t)) \
                and S.mult[f, s] == S.mult[f, t]:
            return True
    return False


def germ_classes(S: InvSemigroup, base: Base) -> dict:
    """``(s, x) -> Germ`` for every ``x`` in the open of ``s*inv(s)``.

    Classes are computed from the defining relation and checked to be an
    equivalence relation; every class is then named by ``f_x * s`` where
    ``f_x`` is the least idempotent whose open contains ``x``.
    """
    X = base.space
    out = {}
    for x in X.points:
        f_x = base.idempotent_of(X.nbhd[x])
        members = [s for s in S.elements if x in base.iota[S.dom(s)]]
        rel = {(s, t) for s in members for t in members if _germ_equivalent(S, base, x, s, t)}
        for s in members:
            if (s, s) not in rel:
                raise AxiomError(f"germ relation not reflexive at {(s, x)!r}")
            for t in members:
                if ((s, t) in rel) != ((t, s) in rel):
                    raise AxiomError(f"germ relation not symmetric at {(s, t, x)!r}")
                if (s, t) in rel:
                    for w in members:
                        if (t, w) in rel and (s, w) not in rel:
                            raise AxiomError(f"germ relation not transitive at {(s, t, w, x)!r}")
        for s in members:
            rep = S.mult[f_x, s]
            out[s, x] = Germ(rep, x)
        for s, t in rel:
            if out[s, x] != out[t, x]:
                raise AxiomError(f"canonical representative differs within a germ at {x}")
    return out


def germ_groupoid(S: InvSemigroup, space: FinTopSpace = None, iota: dict = None) -> TopGroupoid:
    """The étale groupoid of germs of an abstract pseudogroup."""
    rep = validate_inverse_semigroup(S)
    if not rep.ok:
        raise AxiomError(str(rep), rep)
    ok, reason = is_abstract_pseudogroup(S)
    if not ok:
        raise NotAbstractPseudogroup(reason)
    ok, witness = is_complete(S)
    if not ok:
        raise NotComplete(f"compatible subset without join: {witness!r}")
    base = base_of(S, space, iota)
    X = base.space
    classes = germ_classes(S, base)
    gid = {key: g.id for key, g in classes.items()}
    arrows = sorted(set(gid.values()))
    basis = {s: frozenset(gid[s, x] for x in base.iota[S.dom(s)]) for s in S.elements}
    _check_basis(basis, arrows)
    G1 = FinTopSpace.from_basis(arrows, basis.values())

    E = S.idempotent_list
    opens_of = {x: frozenset(f for f in E if x in base.iota[f]) for x in X.points}
    by_filter = {v: x for x, v in opens_of.items()}
    d, r, i, rep_of = {}, {}, {}, {}
    for (s, x), g in classes.items():
        rep_of[gid[s, x]] = (g.rep, x)
    for a, (s, x) in rep_of.items():
        conj = frozenset(f for f in E if x in base.iota[S.mul(s, f, S.inv[s])])
        if conj not in by_filter:
            raise AxiomError(f"no range point for germ {a}")
        d[a] = x
        r[a] = by_filter[conj]
    for a, (s, x) in rep_of.items():
        i[a] = gid[S.inv[s], r[a]]
    m = {}
    for a, (s, x) in rep_of.items():
        for b, (t, y) in rep_of.items():
            if y == r[a]:
                m[a, b] = gid[S.mult[s, t], x]
    u = {x: gid[base.idempotent_of(X.nbhd[x]), x] for x in X.points}
    G = TopGroupoid(X, G1, d, r, u, i, m, name=f"Germs({S.name})" if S.name else "germs")
    G.germ_classes = classes
    G.base = base
    report = validate_groupoid(G)
    if not report.ok:
        raise AxiomError(f"germ groupoid invalid: {report}", report)
    if not is_etale(G):
        raise NotEtale("germ groupoid is not étale")
    return G


def _check_basis(basis: dict, points):
    sets = set(basis.values())
    covered = frozenset().union(*sets) if sets else frozenset()
    if covered != frozenset(points):
        raise AxiomError("basis sets do not cover the germ space")
    for A, B in combinations(sets, 2):
        inter = A & B
        for g in inter:
            if not any(g in C and C <= inter for C in sets):
                raise AxiomError(f"basis intersection not a union of basis sets at {g}")


# -- round trips -------------------------------------------------------------

def roundtrip_gi(G: TopGroupoid) -> GroupoidIso:
    """``Germs(I(G)) -> G``, found by search and verified."""
    _require_etale_sober(G)
    H = germ_groupoid(bisections(G))
    iso = groupoid_isomorphic(H, G)
    if not iso:
        raise NotIsomorphicError(f"Germs(I({G.name})) is not isomorphic to it: {iso.reason}")
    return iso


def canonical_ig_map(S: InvSemigroup, G: TopGroupoid = None, T: InvSemigroup = None) -> dict:
    """``s -> (x -> [s]_x)`` from ``S`` into ``I(Germs(S))``, as element ids."""
    G = germ_groupoid(S) if G is None else G
    T = bisections(G) if T is None else T
    by_graph = {b.graph: k for k, b in T.local_bisections.items()}
    out = {}
    for s in S.elements:
        graph = tuple(sorted((x, g.id) for (t, x), g in G.germ_classes.items() if t == s))
        out[s] = by_graph.get(graph)
    return out


def roundtrip_ig(S: InvSemigroup) -> dict:
    """``I(Germs(S)) -> S`` as a verified isomorphism of inverse semigroups."""
    G = germ_groupoid(S)
    T = bisections(G)
    iso = semigroup_isomorphism(T, S)
    if iso is None or not is_semigroup_iso(T, S, iso):
        raise NotIsomorphicError(f"I(Germs({S.name})) is not isomorphic to it")
    return iso


# -- germs of arbitrary local sections ----------------------------------------

def section_germ_space(G: TopGroupoid):
    """Germs of all continuous local sections of ``d`` and the evaluation
    map ``[s]_x -> s(x)`` into the arrow space."""
    X = G.units
    sections = local_sections(G)
    germ_of = {}
    for s in sections:
        sec = s.section
        for x in s.domain:
            key = (x, tuple(sorted((z, sec[z]) for z in X.nbhd[x])))
            germ_of[s, x] = f"{x}|{set_id(a for _, a in key[1])}"
    points = sorted(set(germ_of.values()))
    basis = [frozenset(germ_of[s, x] for x in s.domain) for s in sections]
    space = FinTopSpace.from_basis(points, basis)
    evaluation = {}
    for (s, x), g in germ_of.items():
        evaluation[g] = s.section[x]
    return space, StructMap(space, G.arrows, evaluation)

