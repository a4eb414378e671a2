"""Finite topological spaces and maps between them.

A finite space is determined by the minimal open neighbourhood of each
point, and most checks here go through those neighbourhoods so that product
and pullback spaces never need their (possibly huge) open-set families
materialised.  The explicit family is still available as ``X.opens``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product

from ._search import find_bijection
from .order import set_id
from .report import Report


class FinTopSpace:
    def __init__(self, points, opens=None, *, neighbourhoods=None):
        self.points = tuple(sorted(points))
        if opens is None and neighbourhoods is None:
            raise ValueError("need opens or neighbourhoods")
        if opens is not None:
            self.__dict__["opens"] = frozenset(frozenset(U) for U in opens)
        if neighbourhoods is not None:
            self.__dict__["nbhd"] = {x: frozenset(neighbourhoods[x]) for x in self.points}

    @classmethod
    def from_basis(cls, points, basis):
        """Topology generated by a basis: minimal neighbourhoods are the
        intersections of the basis sets containing each point."""
        points = tuple(points)
        basis = [frozenset(B) for B in basis]
        nb = {}
        for x in points:
            inter = frozenset(points)
            for B in basis:
                if x in B:
                    inter &= B
            nb[x] = inter
        return cls(points, neighbourhoods=nb)

    @cached_property
    def nbhd(self):
        pts = frozenset(self.points)
        out = {}
        for x in self.points:
            inter = pts
            for U in self.opens:
                if x in U:
                    inter &= U
            out[x] = inter
        return out

    @cached_property
    def opens(self):
        family = {frozenset()}
        for x in self.points:
            family |= {U | self.nbhd[x] for U in family}
        return frozenset(family)

    @cached_property
    def point_set(self):
        return frozenset(self.points)

    def is_open(self, U) -> bool:
        U = frozenset(U)
        if "opens" in self.__dict__:
            return U in self.opens
        return all(x in self.point_set and self.nbhd[x] <= U for x in U)

    def sorted_opens(self):
        return sorted(self.opens, key=lambda U: (len(U), sorted(U)))

    def open_ids(self) -> dict:
        return {set_id(U): U for U in self.sorted_opens()}

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"FinTopSpace({len(self.points)} points)"

    def same_as(self, other) -> bool:
        return self.points == other.points and self.nbhd == other.nbhd


def validate_space(X: FinTopSpace) -> Report:
    rep = Report("topspace")
    if len(set(X.points)) != len(X.points):
        rep.add("duplicate point", X.points)
    pts = X.point_set
    if "opens" in X.__dict__:
        opens = X.opens
        if frozenset() not in opens:
            rep.add("empty set open", ())
        if pts not in opens:
            rep.add("whole space open", tuple(X.points))
        for U in sorted(opens, key=sorted):
            if not U <= pts:
                rep.add("open outside space", tuple(sorted(U - pts)))
        ordered = sorted(opens, key=sorted)
        for U, V in combinations(ordered, 2):
            if U | V not in opens:
                rep.add("union", (set_id(U), set_id(V)))
            if U & V not in opens:
                rep.add("intersection", (set_id(U), set_id(V)))
    else:
        for x in X.points:
            N = X.nbhd[x]
            if x not in N or not N <= pts:
                rep.add("neighbourhood", x)
            for y in N:
                if not X.nbhd[y] <= N:
                    rep.add("neighbourhood transitivity", (x, y))
    return rep


def discrete_space(n_or_points) -> FinTopSpace:
    pts = [str(k) for k in range(1, n_or_points + 1)] if isinstance(n_or_points, int) else list(n_or_points)
    return FinTopSpace(pts, neighbourhoods={x: {x} for x in pts})


def indiscrete_space(n_or_points) -> FinTopSpace:
    pts = [str(k) for k in range(1, n_or_points + 1)] if isinstance(n_or_points, int) else list(n_or_points)
    return FinTopSpace(pts, [(), pts])


def sierpinski() -> FinTopSpace:
    """Points ``a`` (open) and ``b`` (closed)."""
    return FinTopSpace(["a", "b"], [(), ("a",), ("a", "b")])


def subspace(X: FinTopSpace, S) -> FinTopSpace:
    S = frozenset(S)
    return FinTopSpace(S, neighbourhoods={x: X.nbhd[x] & S for x in S})


def product_space(X: FinTopSpace, Y: FinTopSpace, keep=None) -> FinTopSpace:
    """Product topology, optionally restricted to the pairs accepted by ``keep``."""
    pts = [(x, y) for x in X.points for y in Y.points if keep is None or keep(x, y)]
    S = frozenset(pts)
    nb = {(x, y): frozenset(p for p in product(X.nbhd[x], Y.nbhd[y]) if p in S) for (x, y) in pts}
    return FinTopSpace(pts, neighbourhoods=nb)


def interior(X: FinTopSpace, S):
    S = frozenset(S)
    return frozenset(x for x in S if X.nbhd[x] <= S)


class StructMap:
    """A total point assignment between finite spaces; call it like a function."""

    def __init__(self, source: FinTopSpace, target: FinTopSpace, mapping: dict):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, x):
        return self.mapping[x]

    def image(self, U):
        return frozenset(self.mapping[x] for x in U)

    def preimage(self, V):
        V = frozenset(V)
        return frozenset(x for x in self.source.points if self.mapping[x] in V)

    def then(self, g: StructMap) -> StructMap:
        return StructMap(self.source, g.target, {x: g(self(x)) for x in self.source.points})

    def __repr__(self):
        return f"StructMap({len(self.mapping)} points)"


@dataclass(frozen=True)
class MapClass:
    continuous: bool
    open: bool
    local_homeomorphism: bool

    def as_dict(self):
        return {"continuous": self.continuous, "open": self.open,
                "local_homeomorphism": self.local_homeomorphism}


def is_continuous(f: StructMap) -> bool:
    X, Y = f.source, f.target
    return all(f.image(X.nbhd[x]) <= Y.nbhd[f(x)] for x in X.points)


def is_open_map(f: StructMap) -> bool:
    # images commute with unions and minimal neighbourhoods form a basis
    return all(f.target.is_open(f.image(f.source.nbhd[x])) for x in f.source.points)


def _homeomorphic_onto_image(f: StructMap, U) -> bool:
    """``f`` restricted to ``U`` is a bijection onto ``f(U)`` with continuous
    inverse, both carrying subspace topologies."""
    X, Y = f.source, f.target
    image = f.image(U)
    if len(image) != len(U):
        return False
    for z in U:
        if f.image(X.nbhd[z] & U) != Y.nbhd[f(z)] & image:
            return False
    return True


def is_local_homeomorphism(f: StructMap) -> bool:
    """Every point has an open neighbourhood mapped homeomorphically onto an
    open set.  The minimal neighbourhood works whenever any neighbourhood does,
    because a homeomorphism onto an open set restricts to open subsets."""
    if not is_continuous(f):
        return False
    X, Y = f.source, f.target
    for x in X.points:
        U = X.nbhd[x]
        if not Y.is_open(f.image(U)) or not _homeomorphic_onto_image(f, U):
            return False
    return True


def map_classify(f: StructMap) -> MapClass:
    return MapClass(is_continuous(f), is_open_map(f), is_local_homeomorphism(f))


def is_homeomorphism(f: StructMap) -> bool:
    if len(set(f.mapping.values())) != len(f.source.points) or len(f.target.points) != len(f.source.points):
        return False
    return is_continuous(f) and is_open_map(f)


def homeomorphism(X: FinTopSpace, Y: FinTopSpace):
    """A homeomorphism ``X -> Y`` as a dict, or ``None``."""
    def sig(S):
        return lambda x: (len(S.nbhd[x]), sum(1 for y in S.points if x in S.nbhd[y]))

    def consistent(mapping, x):
        for z, w in mapping.items():
            if (z in X.nbhd[x]) != (w in Y.nbhd[mapping[x]]):
                return False
            if (x in X.nbhd[z]) != (mapping[x] in Y.nbhd[w]):
                return False
        return True

    return find_bijection(X.points, Y.points, sig(X), sig(Y), consistent)


def is_t0(X: FinTopSpace) -> bool:
    return all(X.nbhd[x] != X.nbhd[y] for x, y in combinations(X.points, 2))


def all_maps(X: FinTopSpace, Y: FinTopSpace):
    for values in product(Y.points, repeat=len(X.points)):
        yield StructMap(X, Y, dict(zip(X.points, values)))


def all_bijections(A, B):
    A, B = list(A), list(B)
    if len(A) != len(B):
        return
    for perm in permutations(B):
        yield dict(zip(A, perm))
