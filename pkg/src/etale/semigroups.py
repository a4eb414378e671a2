"""Finite inverse semigroups.

Multiplication follows the diagrammatic convention throughout: ``s*t`` means
"apply s, then t".  With that reading ``s * inv(s)`` is the identity on the
domain of ``s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

from ._search import find_bijection
from .errors import (AxiomError, NotASupLattice, NotPairwiseCompatible,
                     RepresentationFailure, SizeCapExceeded)
from .limits import get_limits
from .order import FinPoset, Frame, SupLattice, is_frame
from .report import Report
from .topology import FinTopSpace, subspace


class InvSemigroup:
    """Multiplication table ``mult[(s, t)]`` and involution ``inv[s]``."""

    def __init__(self, elements, mult: dict, inv: dict, name=""):
        self.elements = tuple(sorted(elements))
        self.mult = dict(mult)
        self.inv = dict(inv)
        self.name = name
        self.partial_bijections = None

    @classmethod
    def from_table(cls, elements, table, inv, name=""):
        """``table[i][j]`` is the product of ``elements[i]`` and ``elements[j]``."""
        elements = list(elements)
        mult = {(a, b): table[i][j] for i, a in enumerate(elements) for j, b in enumerate(elements)}
        return cls(elements, mult, dict(zip(elements, inv)), name)

    def mul(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = self.mult[out, x]
        return out

    def dom(self, s):
        """The domain idempotent ``s * inv(s)``."""
        return self.mult[s, self.inv[s]]

    def ran(self, s):
        return self.mult[self.inv[s], s]

    def is_idempotent(self, s) -> bool:
        return self.mult[s, s] == s

    @cached_property
    def idempotent_list(self):
        return tuple(e for e in self.elements if self.mult[e, e] == e)

    @cached_property
    def _leq(self):
        E = self.idempotent_list
        return frozenset((s, t) for s in self.elements for t in self.elements
                         if any(self.mult[f, t] == s for f in E))

    def leq(self, s, t) -> bool:
        return (s, t) in self._leq

    @cached_property
    def zero(self):
        for z in self.elements:
            if all(self.mult[z, s] == z == self.mult[s, z] for s in self.elements):
                return z
        return None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"InvSemigroup({self.name or len(self)})"


def validate_inverse_semigroup(S: InvSemigroup) -> Report:
    rep = Report(S.name or "inverse semigroup")
    els = S.elements
    known = set(els)
    for a in els:
        for b in els:
            if S.mult.get((a, b)) not in known:
                rep.add("closure", (a, b))
        if S.inv.get(a) not in known:
            rep.add("involution closure", a)
    if not rep.ok:
        return rep
    m = S.mult
    for a in els:
        for b in els:
            ab = m[a, b]
            for c in els:
                if m[ab, c] != m[a, m[b, c]]:
                    rep.add("associativity", (a, b, c))
    for s in els:
        si = S.inv[s]
        if m[m[s, si], s] != s:
            rep.add("regularity", s)
        if S.inv[si] != s:
            rep.add("involution", s)
    E = [e for e in els if m[e, e] == e]
    for e, f in combinations(E, 2):
        if m[e, f] != m[f, e]:
            rep.add("idempotents commute", (e, f))
    for s in els:
        for t in els:
            if S.inv[m[s, t]] != m[S.inv[t], S.inv[s]]:
                rep.add("inverse of product", (s, t))
    return rep


@dataclass(frozen=True)
class PartialBijection:
    universe: tuple
    graph: tuple

    @classmethod
    def of(cls, universe, pairs):
        pairs = tuple(sorted(dict(pairs).items()))
        if len({y for _, y in pairs}) != len(pairs):
            raise ValueError(f"not injective: {pairs}")
        return cls(tuple(sorted(universe)), pairs)

    @property
    def as_dict(self):
        return dict(self.graph)

    @property
    def domain(self):
        return frozenset(x for x, _ in self.graph)

    @property
    def image(self):
        return frozenset(y for _, y in self.graph)

    @property
    def id(self):
        return "[" + ",".join(f"{x}>{y}" for x, y in self.graph) + "]"

    def then(self, other: PartialBijection) -> PartialBijection:
        g = other.as_dict
        return PartialBijection.of(self.universe, {x: g[y] for x, y in self.graph if y in g})

    def inverse(self) -> PartialBijection:
        return PartialBijection.of(self.universe, {y: x for x, y in self.graph})


def semigroup_of_partial_bijections(pbs, name="") -> InvSemigroup:
    by_id = {p.id: p for p in pbs}
    mult = {}
    for a, p in by_id.items():
        for b, q in by_id.items():
            pq = p.then(q).id
            if pq not in by_id:
                raise AxiomError(f"not closed under composition: {a} then {b}")
            mult[a, b] = pq
    inv = {a: p.inverse().id for a, p in by_id.items()}
    S = InvSemigroup(by_id, mult, inv, name)
    S.partial_bijections = by_id
    return S


def partial_injections(universe):
    universe = sorted(universe)
    n = len(universe)
    out = []
    for k in range(n + 1):
        for dom in combinations(universe, k):
            for img in permutations(universe, k):
                out.append(PartialBijection.of(universe, zip(dom, img)))
    return out


def symmetric_inverse_monoid(n: int) -> InvSemigroup:
    return semigroup_of_partial_bijections(
        partial_injections([str(k) for k in range(1, n + 1)]), name=f"I{n}")


def frame_as_semigroup(L: SupLattice, name="") -> InvSemigroup:
    mult = {(a, b): L.meet2(a, b) for a in L.elements for b in L.elements}
    return InvSemigroup(L.elements, mult, {a: a for a in L.elements}, name)


def group_as_semigroup(elements, mult, inv, name="") -> InvSemigroup:
    return InvSemigroup(elements, mult, inv, name)


@dataclass(frozen=True)
class IdempotentSemilattice:
    poset: FinPoset
    meet: dict


def idempotents(S: InvSemigroup) -> IdempotentSemilattice:
    E = S.idempotent_list
    leq = [(e, f) for e in E for f in E if S.leq(e, f)]
    return IdempotentSemilattice(FinPoset(E, leq), {(e, f): S.mult[e, f] for e in E for f in E})


def idempotent_lattice(S: InvSemigroup) -> SupLattice:
    """E(S) as a sup-lattice; raises ``NotASupLattice`` when it is not one."""
    return SupLattice(idempotents(S).poset, None)


def idempotent_frame(S: InvSemigroup) -> Frame:
    return Frame(idempotents(S).poset, None)


def natural_leq(S: InvSemigroup, s, t) -> bool:
    return any(S.mult[f, t] == s for f in S.idempotent_list)


@dataclass(frozen=True)
class CompatibilityWitness:
    s: object
    t: object
    s_tinv: object
    sinv_t: object
    s_tinv_idempotent: bool
    sinv_t_idempotent: bool

    @property
    def compatible(self) -> bool:
        return self.s_tinv_idempotent and self.sinv_t_idempotent

    def __bool__(self):
        return self.compatible


def compatible(S: InvSemigroup, s, t) -> CompatibilityWitness:
    a = S.mult[s, S.inv[t]]
    b = S.mult[S.inv[s], t]
    return CompatibilityWitness(s, t, a, b, S.is_idempotent(a), S.is_idempotent(b))


def _compatible_fast(S, s, t):
    return S.is_idempotent(S.mult[s, S.inv[t]]) and S.is_idempotent(S.mult[S.inv[s], t])


def least_upper_bound(S: InvSemigroup, X):
    """Least upper bound of ``X`` in the natural order, or ``None``."""
    X = list(X)
    ubs = [u for u in S.elements if all(S.leq(x, u) for x in X)]
    for u in ubs:
        if all(S.leq(u, v) for v in ubs):
            return u
    return None


def compatible_join(S: InvSemigroup, X):
    X = list(X)
    for s, t in combinations(X, 2):
        if not _compatible_fast(S, s, t):
            raise NotPairwiseCompatible(f"{s!r} and {t!r} are not compatible")
    return least_upper_bound(S, X)


def compatible_subsets(S: InvSemigroup, within=None, cap=None):
    """Yield every pairwise-compatible subset of ``within`` (default: all of S),
    smallest first, as tuples in element order.

    Raises ``SizeCapExceeded`` after ``cap`` subsets (default: the
    ``max_subsets`` limit).
    """
    cap = get_limits().max_subsets if cap is None else cap
    keep = set(S.elements if within is None else within)
    pool = [x for x in S.elements if x in keep]
    pos = {x: k for k, x in enumerate(pool)}
    nbrs = {x: {y for y in pool if _compatible_fast(S, x, y)} for x in pool}
    level = [()]
    count = 0
    while level:
        nxt = []
        for X in level:
            count += 1
            if count > cap:
                raise SizeCapExceeded(f"more than {cap} compatible subsets")
            yield X
            start = pos[X[-1]] + 1 if X else 0
            common = set(pool) if not X else set.intersection(*(nbrs[x] for x in X))
            for y in pool[start:]:
                if y in common:
                    nxt.append(X + (y,))
        level = nxt


def is_complete(S: InvSemigroup):
    """``(True, None)`` or ``(False, X)`` with ``X`` a smallest pairwise
    compatible subset lacking a join.

    Only the compatible subsets are visited (cliques of the compatibility
    graph, by increasing size) instead of all ``2**|S|`` subsets.
    """
    for X in compatible_subsets(S):
        if least_upper_bound(S, X) is None:
            return False, X
    return True, None


def pseudogroup_of_space(X: FinTopSpace) -> InvSemigroup:
    """All homeomorphisms between open subspaces of ``X``."""
    opens = X.sorted_opens()
    pbs = []
    for U in opens:
        SU = subspace(X, U)
        for V in opens:
            if len(U) != len(V):
                continue
            SV = subspace(X, V)
            for img in permutations(sorted(V)):
                h = dict(zip(sorted(U), img))
                if all(frozenset(h[z] for z in SU.nbhd[x]) == SV.nbhd[h[x]] for x in U):
                    pbs.append(PartialBijection.of(X.points, h))
    return semigroup_of_partial_bijections(pbs, name="Gamma")


def _is_hom(S: InvSemigroup, rho: dict) -> object:
    for s in S.elements:
        if rho[S.inv[s]] != rho[s].inverse():
            return ("involution", s)
        for t in S.elements:
            if rho[S.mult[s, t]] != rho[s].then(rho[t]):
                return ("multiplication", (s, t))
    return None


def vagner_preston(S: InvSemigroup) -> dict:
    """Embed ``S`` into partial bijections of its own carrier.

    ``s`` acts by right translation ``x -> x*s`` on ``{x : x = x*s*inv(s)}``.
    """
    rho = {}
    for s in S.elements:
        dom_s = S.dom(s)
        rho[s] = PartialBijection.of(
            S.elements, {x: S.mult[x, s] for x in S.elements if S.mult[x, dom_s] == x})
    if len({r.graph for r in rho.values()}) != len(S):
        raise RepresentationFailure("representation is not injective")
    bad = _is_hom(S, rho)
    if bad is not None:
        raise RepresentationFailure(f"not a homomorphism: {bad!r}")
    return rho


def vagner_preston_join_status(S: InvSemigroup, rho=None) -> dict:
    """For each compatible subset with a join in ``S``, whether the union of
    the representing partial bijections equals the representative of the join."""
    rho = vagner_preston(S) if rho is None else rho
    preserved, broken = 0, []
    for X in compatible_subsets(S):
        j = least_upper_bound(S, X)
        if j is None:
            continue
        union = {}
        ok = True
        for x in X:
            for a, b in rho[x].graph:
                if union.setdefault(a, b) != b:
                    ok = False
        if ok and PartialBijection.of(S.elements, union) == rho[j]:
            preserved += 1
        else:
            broken.append(X)
    return {"preserved": preserved, "not_preserved": broken}


def is_abstract_pseudogroup(S: InvSemigroup):
    """``(True, None)`` or ``(False, reason)``: E(S) must be a frame."""
    try:
        L = idempotent_lattice(S)
    except NotASupLattice as exc:
        return False, f"idempotents do not form a sup-lattice ({exc})"
    ok, witness = is_frame(L)
    if not ok:
        return False, f"idempotents violate the frame law at {witness!r}"
    return True, None


def is_semigroup_iso(S: InvSemigroup, T: InvSemigroup, f: dict) -> bool:
    if len(S) != len(T) or set(f) != set(S.elements) or set(f.values()) != set(T.elements):
        return False
    return all(f[S.inv[s]] == T.inv[f[s]] for s in S.elements) and all(
        f[S.mult[s, t]] == T.mult[f[s], f[t]] for s in S.elements for t in S.elements)


def _semigroup_signature(S: InvSemigroup):
    E = set(S.idempotent_list)

    def sig(s):
        powers, x = [], s
        while x not in powers:
            powers.append(x)
            x = S.mult[x, s]
        return (s in E, S.inv[s] == s, len(powers),
                sum(1 for t in S.elements if S.leq(t, s)),
                sum(1 for t in S.elements if S.leq(s, t)),
                sum(1 for t in S.elements if S.dom(t) == S.dom(s)))
    return sig


def semigroup_isomorphism(S: InvSemigroup, T: InvSemigroup):
    """A multiplication- and involution-preserving bijection, or ``None``."""
    def consistent(mapping, x):
        y = mapping[x]
        xi = S.inv[x]
        if xi in mapping and mapping[xi] != T.inv[y]:
            return False
        # every product among mapped elements, since x may be the product
        for z, w in mapping.items():
            for z2, w2 in mapping.items():
                p = S.mult[z, z2]
                if p in mapping and mapping[p] != T.mult[w, w2]:
                    return False
        return True

    return find_bijection(S.elements, T.elements, _semigroup_signature(S),
                          _semigroup_signature(T), consistent)
