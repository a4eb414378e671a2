"""Spectra of finite frames and the topology/frame round trip."""
from __future__ import annotations

from itertools import combinations

from ._search import find_bijection
from .order import Frame, SupLattice, frame_points
from .topology import FinTopSpace, StructMap, is_homeomorphism


def extent(A: SupLattice, points=None) -> dict:
    """``a -> U_a``, the set of (ids of) points sending ``a`` to 1."""
    points = frame_points(A) if points is None else points
    return {a: frozenset(p.id for p in points if p(a)) for a in A.elements}


def spectrum(A: SupLattice, points=None) -> FinTopSpace:
    points = frame_points(A) if points is None else points
    ext = extent(A, points)
    return FinTopSpace([p.id for p in points], set(ext.values()))


def is_spatial(A: SupLattice):
    """``(True, None)`` or ``(False, (a, b))`` with ``a != b`` and ``U_a == U_b``."""
    ext = extent(A)
    seen = {}
    for a in A.elements:
        if ext[a] in seen:
            return False, (seen[ext[a]], a)
        seen[ext[a]] = a
    return True, None


def topology_to_frame(X: FinTopSpace) -> Frame:
    return Frame.from_sets(X.open_ids())


def is_sober(X: FinTopSpace) -> bool:
    """The canonical map into the spectrum of the topology is a homeomorphism."""
    frame = topology_to_frame(X)
    points = frame_points(frame)
    spec = spectrum(frame, points)
    # the canonical assignment of x is a frame point whose generator is the
    # least open containing x; check it really is one of the enumerated points
    pts_by_truth = {p.truth: p.id for p in points}
    ids = X.open_ids()
    phi = {}
    for x in X.points:
        truth = frozenset(u for u, U in ids.items() if x in U)
        if truth not in pts_by_truth:
            return False
        phi[x] = pts_by_truth[truth]
    if len(set(phi.values())) != len(X.points) or len(points) != len(X.points):
        return False
    return is_homeomorphism(StructMap(X, spec, phi))


def order_isomorphism(A: SupLattice, B: SupLattice):
    """An order isomorphism ``A -> B`` as a dict, or ``None``."""
    def sig(L):
        return lambda x: (len(L.down(x)), len(L.up(x)))

    def consistent(mapping, x):
        y = mapping[x]
        for z, w in mapping.items():
            if A.le(z, x) != B.le(w, y) or A.le(x, z) != B.le(y, w):
                return False
        return True

    return find_bijection(A.elements, B.elements, sig(A), sig(B), consistent)


def is_order_isomorphism(A: SupLattice, B: SupLattice, f: dict) -> bool:
    if sorted(f) != sorted(A.elements) or len(set(f.values())) != len(B.elements) or len(A) != len(B):
        return False
    return all(A.le(a, b) == B.le(f[a], f[b]) for a in A.elements for b in A.elements)


def extent_preserves_operations(A: SupLattice):
    """Check pointwise that ``a -> U_a`` sends joins to unions and meets to
    intersections; returns the first failing pair or ``None``."""
    ext = extent(A)
    if ext[A.bottom] != frozenset():
        return ("bottom", A.bottom)
    for a, b in combinations(A.elements, 2):
        if ext[A.join2(a, b)] != ext[a] | ext[b]:
            return ("join", (a, b))
        if ext[A.meet2(a, b)] != ext[a] & ext[b]:
            return ("meet", (a, b))
    return None

