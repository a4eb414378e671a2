"""Finite posets, sup-lattices and frames.

Elements are opaque hashable ids (strings in documents).  Every structure is
immutable once built; joins and meets are tabulated on construction.
"""
from __future__ import annotations

from functools import cached_property
from itertools import chain as iter_chain, combinations

from .errors import AxiomError, NotAFrame, NotASupLattice
from .limits import check_cap
from .report import Report


def set_id(s) -> str:
    """Canonical string id for a finite set of ids."""
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


class FinPoset:
    def __init__(self, elements, leq):
        self.elements = tuple(sorted(elements))
        self.leq = frozenset((a, b) for a, b in leq)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FinPoset({len(self)} elements)"


def _bits(mask):
    """Positions of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def validate_poset(p: FinPoset) -> Report:
    rep = Report("poset")
    elems = set(p.elements)
    for a, b in sorted(p.leq, key=repr):
        if a not in elems or b not in elems:
            rep.add("unknown element", (a, b))
    for x in p.elements:
        if (x, x) not in p.leq:
            rep.add("reflexivity", x)
    for x, y in combinations(p.elements, 2):
        if (x, y) in p.leq and (y, x) in p.leq:
            rep.add("antisymmetry", (x, y))
    pos = {x: k for k, x in enumerate(p.elements)}
    up = [0] * len(p.elements)
    for a, b in p.leq:
        if a in pos and b in pos:
            up[pos[a]] |= 1 << pos[b]
    for i, x in enumerate(p.elements):
        for k in _bits(up[i]):
            missing = up[k] & ~up[i]
            if missing:
                z = p.elements[next(_bits(missing))]
                rep.add("transitivity", (x, p.elements[k], z))
    return rep


class SupLattice:
    """A finite poset in which every subset has a least upper bound.

    For finite posets this is equivalent to having a bottom element and all
    binary joins, which is what the constructor checks.  Internally elements
    are numbered along a linear extension and up/down sets are bitmasks, so
    the least element of an upper-bound set is its lowest bit (if it has a
    least element at all).
    """

    def __init__(self, elements, leq):
        poset = elements if isinstance(elements, FinPoset) else FinPoset(elements, leq)
        rep = validate_poset(poset)
        if not rep.ok:
            raise AxiomError(str(rep), rep)
        self.poset = poset
        self.elements = poset.elements
        self._index = {x: k for k, x in enumerate(self.elements)}
        below = {x: 0 for x in self.elements}
        for a, b in poset.leq:
            below[b] += 1
        self._lin = sorted(self.elements, key=lambda x: (below[x], self._index[x]))
        self._pos = {x: k for k, x in enumerate(self._lin)}
        n = len(self._lin)
        self._upm = [0] * n
        self._downm = [0] * n
        for a, b in poset.leq:
            self._upm[self._pos[a]] |= 1 << self._pos[b]
            self._downm[self._pos[b]] |= 1 << self._pos[a]
        full = (1 << n) - 1
        self.bottom = self._lin[self._least(full, "empty set")]
        self.top = self._lin[self._greatest(full, "whole carrier")]
        self._jt = [[0] * n for _ in range(n)]
        self._mt = [[0] * n for _ in range(n)]
        for i in range(n):
            for k in range(i, n):
                j = self._least(self._upm[i] & self._upm[k], (self._lin[i], self._lin[k]))
                m = self._greatest(self._downm[i] & self._downm[k], (self._lin[i], self._lin[k]))
                self._jt[i][k] = self._jt[k][i] = j
                self._mt[i][k] = self._mt[k][i] = m

    @classmethod
    def from_sets(cls, named_sets: dict):
        """Lattice of sets ordered by inclusion; keys are element ids."""
        items = list(named_sets.items())
        leq = [(a, b) for a, sa in items for b, sb in items if sa <= sb]
        return cls([a for a, _ in items], leq)

    def _least(self, cand, what):
        if cand:
            c = (cand & -cand).bit_length() - 1
            if not cand & ~self._upm[c]:
                return c
        raise NotASupLattice(f"no least upper bound for {what!r}")

    def _greatest(self, cand, what):
        if cand:
            c = cand.bit_length() - 1
            if not cand & ~self._downm[c]:
                return c
        raise NotASupLattice(f"no greatest lower bound for {what!r}")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} elements)"

    def le(self, a, b) -> bool:
        return bool(self._upm[self._pos[a]] >> self._pos[b] & 1)

    def _ids(self, mask):
        return frozenset(self._lin[k] for k in _bits(mask))

    def up(self, a):
        return self._ids(self._upm[self._pos[a]])

    def down(self, a):
        return self._ids(self._downm[self._pos[a]])

    def join2(self, a, b):
        return self._lin[self._jt[self._pos[a]][self._pos[b]]]

    def meet2(self, a, b):
        return self._lin[self._mt[self._pos[a]][self._pos[b]]]

    def join(self, xs=()):
        out = self._pos[self.bottom]
        for x in xs:
            out = self._jt[out][self._pos[x]]
        return self._lin[out]

    def meet(self, xs=()):
        out = self._pos[self.top]
        for x in xs:
            out = self._mt[out][self._pos[x]]
        return self._lin[out]

    @cached_property
    def covers(self):
        """Pairs (a, b) with a < b and nothing strictly between."""
        out = []
        for i, a in enumerate(self._lin):
            above = self._upm[i] & ~(1 << i)
            for k in _bits(above):
                if self._downm[k] & above == 1 << k:
                    out.append((a, self._lin[k]))
        return sorted(out, key=repr)

    def _strictly_below_join(self, k):
        out = self._pos[self.bottom]
        for i in _bits(self._downm[k] & ~(1 << k)):
            out = self._jt[out][i]
        return out

    @cached_property
    def _irreducible_mask(self):
        return sum(1 << k for k in range(len(self._lin))
                   if self._strictly_below_join(k) != k)

    def join_irreducibles(self):
        """Elements that are not the join of the elements strictly below them."""
        return sorted(self._lin[k] for k in _bits(self._irreducible_mask))

    def linear_extension(self):
        return list(self._lin)

    def sublattice_below(self, a) -> SupLattice:
        """The principal downset of ``a`` with the restricted order."""
        elems = sorted(self.down(a), key=self._index.get)
        return type(self)(elems, [(x, y) for x in elems for y in elems if self.le(x, y)])


def lattice_join(L: SupLattice, X=()):
    return L.join(X)


def is_frame(L: SupLattice):
    """Check the frame distributive law; returns ``(ok, (x, Y))``.

    For finite lattices the infinite law reduces to the binary one
    ``x ^ (y v z) = (x ^ y) v (x ^ z)``.  A finite lattice satisfies it
    exactly when ``a -> {join-irreducibles below a}`` sends binary joins to
    unions.  If ``j`` is below ``y v z`` but below neither, then
    ``j ^ (y v z) = j`` while ``(j ^ y) v (j ^ z)`` lies under the unique
    lower cover of ``j``, so ``(j, (y, z))`` is a witness.
    """
    irr = L._irreducible_mask
    phi = [d & irr for d in L._downm]
    n = len(L._lin)
    for i in range(n):
        for k in range(i + 1, n):
            extra = phi[L._jt[i][k]] & ~(phi[i] | phi[k])
            if extra:
                j = L._lin[next(_bits(extra))]
                return False, (j, (L._lin[i], L._lin[k]))
    return True, None


class Frame(SupLattice):
    """A sup-lattice in which binary meets distribute over joins."""

    def __init__(self, elements, leq):
        super().__init__(elements, leq)
        ok, witness = is_frame(self)
        if not ok:
            raise NotAFrame(f"distributivity fails at {witness!r}")


def as_frame(L: SupLattice) -> Frame:
    if isinstance(L, Frame):
        return L
    return Frame(L.poset, None)


def chain(n: int, names=None) -> Frame:
    names = list(names) if names is not None else [str(k) for k in range(n)]
    return Frame(names, [(names[a], names[b]) for a in range(n) for b in range(a, n)])


def powerset_frame(points) -> Frame:
    pts = sorted(points)
    subsets = [frozenset(c) for c in iter_chain.from_iterable(
        combinations(pts, k) for k in range(len(pts) + 1))]
    return Frame.from_sets({set_id(s): s for s in subsets})


TWO = chain(2, ["0", "1"])


def is_frame_hom(source: SupLattice, target: SupLattice, f: dict) -> tuple[bool, object]:
    """Joins (empty and binary), binary meets and top are preserved.

    On finite lattices preserving the empty join and binary joins is the
    same as preserving every join.
    """
    if f.get(source.bottom) != target.bottom:
        return False, ("bottom", source.bottom)
    if f.get(source.top) != target.top:
        return False, ("top", source.top)
    for a, b in combinations(source.elements, 2):
        if f[source.join2(a, b)] != target.join2(f[a], f[b]):
            return False, ("join", (a, b))
        if f[source.meet2(a, b)] != target.meet2(f[a], f[b]):
            return False, ("meet", (a, b))
    return True, None


class FrameHom:
    def __init__(self, source: Frame, target: Frame, mapping: dict):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        ok, witness = is_frame_hom(source, target, self.mapping)
        if not ok:
            raise AxiomError(f"not a frame homomorphism: {witness!r}")

    def __call__(self, a):
        return self.mapping[a]


class LocalePoint:
    """A frame homomorphism into the two-element frame.

    On a finite frame the elements sent to 1 form a principal filter, so a
    point is named after the generator of that filter.
    """

    def __init__(self, frame: SupLattice, assignment: dict):
        self.frame = frame
        self.assignment = {a: int(assignment[a]) for a in frame.elements}
        self.truth = frozenset(a for a, v in self.assignment.items() if v)
        self.generator = frame.meet(self.truth)

    @property
    def id(self) -> str:
        return f"^{self.generator}"

    def __call__(self, a) -> int:
        return self.assignment[a]

    def __eq__(self, other):
        return isinstance(other, LocalePoint) and self.truth == other.truth

    def __hash__(self):
        return hash(self.truth)

    def __repr__(self):
        return f"LocalePoint({self.id})"


def _two_valued_hom(A: SupLattice, assignment: dict) -> bool:
    f = {a: str(v) for a, v in assignment.items()}
    return is_frame_hom(A, TWO, f)[0]


def frame_points(A: SupLattice) -> list[LocalePoint]:
    """All points of ``A``, sorted by id.

    The elements a point sends to 1 form a filter closed under finite meets,
    so on a finite frame it is the principal filter of its generator, and
    that generator is join-prime, hence join-irreducible.  Candidates are
    therefore the principal filters of join-irreducibles; each is kept only
    if it passes the full homomorphism check.
    """
    check_cap("max_frame", len(A))
    found = []
    for j in A.join_irreducibles():
        up = A.up(j)
        candidate = {a: int(a in up) for a in A.elements}
        if _two_valued_hom(A, candidate):
            found.append(LocalePoint(A, candidate))
    return sorted(found, key=lambda p: p.id)
