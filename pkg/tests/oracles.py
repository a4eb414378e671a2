"""Brute-force reference computations used to fix expected values.

Everything here works from raw tables (an order relation, a multiplication
table, a list of opens) by direct enumeration, without calling into the
package's algorithms.
"""
from itertools import chain, combinations, permutations, product
from math import comb, factorial


def subsets(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))]


# -- orders ---------------------------------------------------------------------

def least(elements, le, xs):
    for c in xs:
        if all(le(c, y) for y in xs):
            return c
    return None


def lub(elements, le, X):
    ups = [u for u in elements if all(le(x, u) for x in X)]
    return least(elements, le, ups)


def glb(elements, le, X):
    downs = [d for d in elements if all(le(d, x) for x in X)]
    for c in downs:
        if all(le(y, c) for y in downs):
            return c
    return None


def is_distributive(elements, le):
    for x, y, z in product(elements, repeat=3):
        lhs = glb(elements, le, [x, lub(elements, le, [y, z])])
        rhs = lub(elements, le, [glb(elements, le, [x, y]), glb(elements, le, [x, z])])
        if lhs != rhs:
            return False
    return True


def raw_points(elements, le):
    """Truth sets of all 0/1 assignments that preserve top, bottom, binary
    joins and binary meets, found by trying all 2^n assignments."""
    elements = list(elements)
    bottom, top = lub(elements, le, []), glb(elements, le, [])
    pairs = [(a, b, lub(elements, le, [a, b]), glb(elements, le, [a, b]))
             for a in elements for b in elements]
    out = []
    for bits in product((0, 1), repeat=len(elements)):
        v = dict(zip(elements, bits))
        if v[bottom] or not v[top]:
            continue
        if all(v[j] == max(v[a], v[b]) and v[m] == min(v[a], v[b]) for a, b, j, m in pairs):
            out.append(frozenset(a for a in elements if v[a]))
    return out


# -- spaces ---------------------------------------------------------------------

def all_topologies(points):
    points = frozenset(points)
    inner = [U for U in subsets(points) if U and U != points]
    out = []
    for fam in subsets(range(len(inner))):
        opens = {frozenset(), points} | {inner[k] for k in fam}
        if all(U | V in opens and U & V in opens for U in opens for V in opens):
            out.append(frozenset(opens))
    return out


def classify_by_opens(X_opens, Y_opens, f):
    """(continuous, open, local homeomorphism) from the families of opens."""
    X_opens, Y_opens = set(X_opens), set(Y_opens)
    points = set().union(*X_opens)
    img = lambda U: frozenset(f[x] for x in U)
    continuous = all(frozenset(x for x in points if f[x] in V) in X_opens for V in Y_opens)
    is_open = all(img(U) in Y_opens for U in X_opens)
    local = True
    for x in points:
        good = False
        for U in X_opens:
            if x not in U or len(img(U)) != len(U) or img(U) not in Y_opens:
                continue
            inside = {V for V in X_opens if V <= U}
            target = {W for W in Y_opens if W <= img(U)}
            if {img(V) for V in inside} == target and continuous:
                good = True
                break
        local = local and good
    return continuous, is_open, local


def space_homeomorphic(P, O, Q, R):
    P, Q = sorted(P), sorted(Q)
    if len(P) != len(Q) or len(O) != len(R):
        return False
    for perm in permutations(Q):
        f = dict(zip(P, perm))
        if {frozenset(f[x] for x in U) for U in O} == set(R):
            return True
    return False


# -- inverse semigroups -------------------------------------------------------------

def partial_injection_count(n):
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def partial_injections(points):
    points = sorted(points)
    out = []
    for k in range(len(points) + 1):
        for dom in combinations(points, k):
            for img in permutations(points, k):
                out.append(frozenset(zip(dom, img)))
    return out


def natural_le(mult, inv, s, t):
    return s == mult[mult[s, inv[s]], t]


def is_idempotent(mult, s):
    return mult[s, s] == s


def compatible(mult, inv, s, t):
    return is_idempotent(mult, mult[inv[s], t]) and is_idempotent(mult, mult[s, inv[t]])


def semigroup_join(elements, mult, inv, X):
    return lub(elements, lambda a, b: natural_le(mult, inv, a, b), X)


def complete_by_subsets(elements, mult, inv):
    """Every pairwise compatible subset (all 2^n of them are tried) has a join."""
    for X in subsets(elements):
        if all(compatible(mult, inv, s, t) for s, t in combinations(X, 2)):
            if semigroup_join(elements, mult, inv, X) is None:
                return False
    return True


def down_join_closed_sets(elements, mult, inv):
    le = lambda a, b: natural_le(mult, inv, a, b)
    out = []
    for A in subsets(elements):
        if any(le(t, a) and t not in A for a in A for t in elements):
            continue
        ok = True
        for X in subsets(A):
            if all(compatible(mult, inv, s, t) for s, t in combinations(X, 2)):
                j = semigroup_join(elements, mult, inv, X)
                if j is not None and j not in A:
                    ok = False
                    break
        if ok:
            out.append(A)
    return out


# -- groupoids --------------------------------------------------------------------

def open_bisections(arrow_opens, d, r):
    """Opens of the arrow space on which d and r are both injective."""
    return [U for U in arrow_opens
            if len({d[g] for g in U}) == len(U) and len({r[g] for g in U}) == len(U)]


def composable_opens(arrow_opens, pairs):
    """Opens of the composable-pair subspace of the product, as all unions of
    basic boxes U x V cut down to the composable pairs."""
    pairs = set(pairs)
    boxes = {frozenset(p for p in pairs if p[0] in U and p[1] in V)
             for U in arrow_opens for V in arrow_opens}
    opens = {frozenset()}
    for B in boxes:
        opens |= {O | B for O in opens}
    return opens


# -- quantales ----------------------------------------------------------------------

def quantale_laws_hold(elements, le, mult, unit, star):
    """All quantale laws, with joins over every subset rather than pairs."""
    elements = list(elements)
    fams = subsets(elements)
    joins = {X: lub(elements, le, X) for X in fams}
    for a, b, c in product(elements, repeat=3):
        if mult[mult[a, b], c] != mult[a, mult[b, c]]:
            return False
    for a in elements:
        if mult[unit, a] != a or mult[a, unit] != a or star[star[a]] != a:
            return False
        for b in elements:
            if star[mult[a, b]] != mult[star[b], star[a]]:
                return False
        for X in fams:
            j = joins[X]
            if mult[a, j] != lub(elements, le, [mult[a, x] for x in X]):
                return False
            if mult[j, a] != lub(elements, le, [mult[x, a] for x in X]):
                return False
    for X in fams:
        if star[joins[X]] != lub(elements, le, [star[x] for x in X]):
            return False
    return True


def pointwise_products(arrow_opens, m):
    """Every product of two opens computed straight from the composition table."""
    return {(U, V): frozenset(z for (x, y), z in m.items() if x in U and y in V)
            for U in arrow_opens for V in arrow_opens}


# -- actions and modules ------------------------------------------------------------

def all_equivariant_maps(XA_points, XA_opens, pA, alphaA, XB_points, XB_opens, pB, alphaB):
    """Every function X_A -> X_B is tried."""
    XA_points, XB_points = list(XA_points), list(XB_points)
    out = []
    for values in product(XB_points, repeat=len(XA_points)):
        f = dict(zip(XA_points, values))
        if any(pB[f[x]] != pA[x] for x in XA_points):
            continue
        if any(f[y] != alphaB[f[x], g] for (x, g), y in alphaA.items()):
            continue
        if all(frozenset(x for x in XA_points if f[x] in V) in set(XA_opens) for V in XB_opens):
            out.append(f)
    return out


def all_module_homs(N_elements, N_le, K_elements, K_le, quantale_elements, actN, actK):
    """Every function N -> K is tried; joins are checked over all subsets."""
    N_elements, K_elements = list(N_elements), list(K_elements)
    fams = subsets(N_elements)
    joins = {X: lub(N_elements, N_le, X) for X in fams}
    out = []
    for values in product(K_elements, repeat=len(N_elements)):
        h = dict(zip(N_elements, values))
        if any(h[joins[X]] != lub(K_elements, K_le, [h[x] for x in X]) for X in fams):
            continue
        if any(h[actN[a, v]] != actK[a, h[v]] for a in quantale_elements for v in N_elements):
            continue
        out.append(h)
    return out
