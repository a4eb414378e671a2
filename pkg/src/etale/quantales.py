"""Unital involutive quantales, opens quantales of étale groupoids, groupoid
reconstruction from a quantale, and the quantale of down-join-closed sets of
an abstract pseudogroup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ._search import find_bijection
from .errors import (AxiomError, NotAbstractPseudogroup, NotAFrame, NotEtale,
                     ReconstructionFailure, StructureError, TheoremViolation)
from .groupoids import (GroupoidIso, TopGroupoid, classify_groupoid, groupoid_isomorphic,
                        validate_groupoid)
from .limits import check_cap
from .locales import extent, is_spatial, spectrum
from .order import Frame, SupLattice, frame_points, is_frame, set_id
from .report import Report
from .semigroups import (InvSemigroup, compatible_subsets, is_abstract_pseudogroup,
                         least_upper_bound)


class Quantale:
    def __init__(self, carrier: SupLattice, mult: dict, unit, star: dict, name=""):
        self.carrier = carrier
        self.mult = dict(mult)
        self.unit = unit
        self.star = dict(star)
        self.name = name

    @property
    def elements(self):
        return self.carrier.elements

    def mul(self, a, b):
        return self.mult[a, b]

    def __len__(self):
        return len(self.carrier)

    def __repr__(self):
        return f"Quantale({self.name or ''} {len(self)} elements)"


def frame_quantale(L: SupLattice, name="") -> Quantale:
    """A frame as a quantale: meet, top as unit, trivial involution."""
    mult = {(a, b): L.meet2(a, b) for a in L.elements for b in L.elements}
    return Quantale(L, mult, L.top, {a: a for a in L.elements}, name)


def validate_quantale(Q: Quantale) -> Report:
    """Every law is checked on all elements; joins are checked for the empty
    family and for pairs, which covers all joins of a finite lattice."""
    rep = Report(Q.name or "quantale")
    L, m, st, e = Q.carrier, Q.mult, Q.star, Q.unit
    els = L.elements
    for a in els:
        for b in els:
            if m.get((a, b)) not in L:
                rep.add("multiplication total", (a, b))
        if st.get(a) not in L:
            rep.add("involution total", a)
    if e not in L:
        rep.add("unit element", e)
    if not rep.ok:
        return rep
    for a in els:
        for b in els:
            ab = m[a, b]
            for c in els:
                if m[ab, c] != m[a, m[b, c]]:
                    rep.add("associativity", (a, b, c))
    for a in els:
        if m[e, a] != a or m[a, e] != a:
            rep.add("unit law", a)
        if st[st[a]] != a:
            rep.add("involution", a)
        if m[a, L.bottom] != L.bottom:
            rep.add("left distributivity (empty join)", a)
        if m[L.bottom, a] != L.bottom:
            rep.add("right distributivity (empty join)", a)
    if st[L.bottom] != L.bottom:
        rep.add("star preserves joins (empty join)", L.bottom)
    for b, c in combinations(els, 2):
        bc = L.join2(b, c)
        if st[bc] != L.join2(st[b], st[c]):
            rep.add("star preserves joins", (b, c))
        for a in els:
            if m[a, bc] != L.join2(m[a, b], m[a, c]):
                rep.add("left distributivity", (a, (b, c)))
            if m[bc, a] != L.join2(m[b, a], m[c, a]):
                rep.add("right distributivity", ((b, c), a))
    for a in els:
        for b in els:
            if st[m[a, b]] != m[st[b], st[a]]:
                rep.add("star reverses products", (a, b))
    return rep


def is_quantale_hom(Q: Quantale, R: Quantale, f: dict):
    """``None`` when ``f`` preserves joins, products, unit and involution."""
    P, T = Q.carrier, R.carrier
    if f[P.bottom] != T.bottom:
        return ("join", "empty")
    if f[Q.unit] != R.unit:
        return ("unit", Q.unit)
    for a in Q.elements:
        if f[Q.star[a]] != R.star[f[a]]:
            return ("star", a)
        for b in Q.elements:
            if f[P.join2(a, b)] != T.join2(f[a], f[b]):
                return ("join", (a, b))
            if f[Q.mult[a, b]] != R.mult[f[a], f[b]]:
                return ("multiplication", (a, b))
    return None


def is_quantale_iso(Q: Quantale, R: Quantale, f: dict) -> bool:
    if sorted(f) != sorted(Q.elements) or sorted(f.values()) != sorted(R.elements):
        return False
    return is_quantale_hom(Q, R, f) is None and all(
        Q.carrier.le(a, b) == R.carrier.le(f[a], f[b]) for a in Q.elements for b in Q.elements)


def quantale_isomorphism(Q: Quantale, R: Quantale):
    """Search for a quantale isomorphism ``Q -> R``; ``None`` if there is none."""
    def sig(P):
        L = P.carrier
        return lambda a: (len(L.down(a)), len(L.up(a)), L.le(a, P.unit), P.star[a] == a,
                          P.mult[a, a] == a, a == P.unit)

    def consistent(f, x):
        y = f[x]
        if Q.star[x] in f and f[Q.star[x]] != R.star[y]:
            return False
        for z, w in f.items():
            if Q.carrier.le(z, x) != R.carrier.le(w, y) or Q.carrier.le(x, z) != R.carrier.le(y, w):
                return False
            for z2, w2 in f.items():
                p = Q.mult[z, z2]
                if p in f and f[p] != R.mult[w, w2]:
                    return False
        return True

    f = find_bijection(Q.elements, R.elements, sig(Q), sig(R), consistent, fixed={Q.unit: R.unit})
    if f is not None and not is_quantale_iso(Q, R, f):
        return None
    return f


# -- opens quantale ------------------------------------------------------------

def opens_quantale(G: TopGroupoid) -> Quantale:
    """Opens of the arrow space with pointwise products ``U*V``, unit
    ``u(G0)`` and involution ``i(U)``."""
    X = G.arrows
    e = frozenset(G.u.values())
    if not X.is_open(e):
        raise NotEtale(f"u(G0) = {set_id(e)} is not open in the arrow space")
    check_cap("max_frame", len(X.opens))
    ids = X.open_ids()
    name = {U: k for k, U in ids.items()}
    carrier = Frame.from_sets(ids)
    arrows = sorted(X.points)
    bit = {x: 1 << k for k, x in enumerate(arrows)}
    mask_name = {sum(bit[x] for x in U): k for k, U in ids.items()}
    # right[x][b] is the set of products x*y with y in the open b
    right = {x: {} for x in arrows}
    for b, V in ids.items():
        for x in arrows:
            right[x][b] = 0
        for (x, y), z in G.m.items():
            if y in V:
                right[x][b] |= bit[z]
    mult = {}
    for a, U in ids.items():
        for b in ids:
            W = 0
            for x in U:
                W |= right[x][b]
            if W not in mask_name:
                found = set_id(z for z in arrows if W & bit[z])
                raise NotEtale(f"{a}*{b} = {found} is not open")
            mult[a, b] = mask_name[W]
    star = {}
    for a, U in ids.items():
        iu = frozenset(G.i[x] for x in U)
        if iu not in name:
            raise AxiomError(f"i({a}) is not open")
        star[a] = name[iu]
    Q = Quantale(carrier, mult, name[e], star, name=f"O({G.name})" if G.name else "opens")
    Q.open_sets = ids
    return Q


# -- reconstruction ------------------------------------------------------------

def unit_frame(Q: Quantale) -> Frame:
    """The principal downset of the unit, with the restricted order."""
    L = Q.carrier
    elems = sorted(L.down(Q.unit))
    return Frame(elems, [(a, b) for a in elems for b in elems if L.le(a, b)])


def _match_point(points_by_truth, assignment, step, witness):
    truth = frozenset(a for a, v in assignment.items() if v)
    if truth not in points_by_truth:
        raise ReconstructionFailure(step, witness)
    return points_by_truth[truth]


def reconstruct_groupoid(Q: Quantale) -> TopGroupoid:
    """Arrows are the points of ``Q``, units the points of the downset of ``e``.

    ``d(p)(V) = p(V*top)``, ``r(p)(V) = p(top*V)``, ``i(p)(a) = p(a*)``,
    ``u(q)(a) = q(a ^ e)`` and ``m(p, q)(a) = 1`` iff ``b*c <= a`` for some
    ``b, c`` with ``p(b) = q(c) = 1``.  Each candidate assignment must be
    one of the enumerated points.
    """
    L = Q.carrier
    ok, witness = is_frame(L)
    if not ok:
        raise NotAFrame(f"carrier violates distributivity at {witness!r}")
    try:
        E = unit_frame(Q)
    except StructureError as exc:
        raise ReconstructionFailure("unit frame", str(exc)) from exc
    for tag, F in (("arrows", L), ("units", E)):
        ok, witness = is_spatial(F)
        if not ok:
            raise ReconstructionFailure(f"{tag} not spatial", witness)
    arrow_pts = frame_points(L)
    unit_pts = frame_points(E)
    by_truth_a = {p.truth: p for p in arrow_pts}
    by_truth_u = {q.truth: q for q in unit_pts}
    top = L.top
    d, r, i, u, m = {}, {}, {}, {}, {}
    for p in arrow_pts:
        d[p.id] = _match_point(by_truth_u, {V: p(Q.mult[V, top]) for V in E.elements}, "d", p.id).id
        r[p.id] = _match_point(by_truth_u, {V: p(Q.mult[top, V]) for V in E.elements}, "r", p.id).id
        i[p.id] = _match_point(by_truth_a, {a: p(Q.star[a]) for a in L.elements}, "i", p.id).id
    for q in unit_pts:
        u[q.id] = _match_point(by_truth_a, {a: q(L.meet2(a, Q.unit)) for a in L.elements},
                               "u", q.id).id
    for p in arrow_pts:
        for q in arrow_pts:
            if r[p.id] != d[q.id]:
                continue
            # p and q are principal filters and multiplication is monotone,
            # so the products b*c with p(b) = q(c) = 1 generate the filter of
            # the product of the generators
            low = Q.mult[p.generator, q.generator]
            assignment = {a: L.le(low, a) for a in L.elements}
            m[p.id, q.id] = _match_point(by_truth_a, assignment, "m", (p.id, q.id)).id
    G = TopGroupoid(spectrum(E, unit_pts), spectrum(L, arrow_pts), d, r, u, i, m,
                    name=f"G({Q.name})" if Q.name else "reconstructed")
    report = validate_groupoid(G)
    if not report.ok:
        v = report.violations[0]
        raise ReconstructionFailure(f"groupoid axiom '{v.axiom}'", v.witness)
    return G


@dataclass
class EtaleCertificate:
    ok: bool
    reason: str = ""
    groupoid: TopGroupoid = None
    iso: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def canonical_quantale_iso(Q: Quantale, G: TopGroupoid, OG: Quantale) -> dict:
    """``a -> U_a`` from ``Q`` into the opens quantale of its reconstruction."""
    ext = extent(Q.carrier)
    name = {U: k for k, U in OG.open_sets.items()}
    return {a: name.get(ext[a]) for a in Q.elements}


def is_etale_groupoid_quantale(Q: Quantale) -> EtaleCertificate:
    """Operational test: ``Q`` is isomorphic to the opens quantale of its
    reconstructed groupoid, and that groupoid is étale."""
    try:
        G = reconstruct_groupoid(Q)
    except StructureError as exc:
        return EtaleCertificate(False, f"reconstruction failed: {exc}")
    if not classify_groupoid(G).etale:
        return EtaleCertificate(False, "reconstructed groupoid is not étale", G)
    try:
        OG = opens_quantale(G)
    except StructureError as exc:
        return EtaleCertificate(False, f"opens quantale failed: {exc}", G)
    f = canonical_quantale_iso(Q, G, OG)
    if not is_quantale_iso(Q, OG, f):
        return EtaleCertificate(False, "a -> U_a is not a quantale isomorphism", G, f)
    return EtaleCertificate(True, "", G, f)


# -- down-join-closed sets -------------------------------------------------------

def down_closure(S: InvSemigroup, A):
    A = frozenset(A)
    return frozenset(s for s in S.elements if any(S.leq(s, a) for a in A))


def join_closure_step(S: InvSemigroup, A):
    """Add every existing join of a pairwise-compatible subset of ``A``."""
    out = set(A)
    for X in compatible_subsets(S, within=A):
        j = least_upper_bound(S, X)
        if j is not None:
            out.add(j)
    return frozenset(out)


def lvee_closure(S: InvSemigroup, A):
    """Alternate downward closure and join closure until nothing changes."""
    A = frozenset(A)
    while True:
        B = join_closure_step(S, down_closure(S, A))
        if B == A:
            return A
        A = B


def is_down_join_closed(S: InvSemigroup, A) -> bool:
    A = frozenset(A)
    return down_closure(S, A) == A and join_closure_step(S, A) == A


def lvee_sets(S: InvSemigroup):
    """All down-join-closed subsets, generated from the least one by closing
    single-element extensions."""
    start = lvee_closure(S, ())
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for A in frontier:
            for s in S.elements:
                if s in A:
                    continue
                B = lvee_closure(S, A | {s})
                if B not in found:
                    found.add(B)
                    nxt.append(B)
        frontier = nxt
        check_cap("max_frame", len(found))
    return sorted(found, key=lambda A: (len(A), sorted(A)))


def lvee(S: InvSemigroup) -> Quantale:
    ok, reason = is_abstract_pseudogroup(S)
    if not ok:
        raise NotAbstractPseudogroup(reason)
    sets = lvee_sets(S)
    ids = {set_id(A): A for A in sets}
    name = {A: k for k, A in ids.items()}
    carrier = SupLattice.from_sets(ids)
    mult = {}
    for a, A in ids.items():
        for b, B in ids.items():
            mult[a, b] = name[lvee_closure(S, {S.mult[x, y] for x in A for y in B})]
    star = {a: name[frozenset(S.inv[x] for x in A)] for a, A in ids.items()}
    unit = name[lvee_closure(S, S.idempotent_list)]
    Q = Quantale(carrier, mult, unit, star, name=f"Lv({S.name})" if S.name else "lvee")
    Q.closed_sets = ids
    return Q


@dataclass
class TheoremReport:
    etale_certificate: EtaleCertificate
    frame: bool
    spatial: bool
    iso: GroupoidIso
    size: int

    @property
    def ok(self) -> bool:
        return bool(self.etale_certificate) and self.frame and self.spatial and bool(self.iso)


def theorem_lvee_check(S: InvSemigroup, germs: TopGroupoid = None) -> TheoremReport:
    """(a) the down-join-closed quantale is an étale groupoid quantale;
    (b) it is a spatial frame; (c) its groupoid is the germ groupoid of S."""
    from .correspondences import germ_groupoid

    Q = lvee(S)
    cert = is_etale_groupoid_quantale(Q)
    if not cert:
        raise TheoremViolation("a", cert.reason)
    frame_ok, witness = is_frame(Q.carrier)
    if not frame_ok:
        raise TheoremViolation("b", ("frame", witness))
    spatial_ok, witness = is_spatial(Q.carrier)
    if not spatial_ok:
        raise TheoremViolation("b", ("spatial", witness))
    germs = germ_groupoid(S) if germs is None else germs
    iso = groupoid_isomorphic(cert.groupoid, germs)
    if not iso:
        raise TheoremViolation("c", iso.reason)
    return TheoremReport(cert, frame_ok, spatial_ok, iso, len(Q))
