import pytest

from etale.errors import NotAbstractPseudogroup, NotEtale, ReconstructionFailure
from etale.families import cyclic_group_groupoid, i2_without_swap, pair_groupoid, unit_groupoid
from etale.groupoids import GroupoidIso, groupoid_isomorphic
from etale.limits import using_limits
from etale.locales import spectrum, topology_to_frame
from etale.order import SupLattice, chain, is_frame, powerset_frame, set_id
from etale.quantales import (Quantale, down_closure, frame_quantale, is_etale_groupoid_quantale,
                             is_quantale_hom, is_quantale_iso, join_closure_step, lvee,
                             lvee_closure, lvee_sets, opens_quantale, quantale_isomorphism,
                             reconstruct_groupoid, theorem_lvee_check, unit_frame,
                             validate_quantale)
from etale.correspondences import bisections
from etale.semigroups import (InvSemigroup, frame_as_semigroup, group_as_semigroup,
                              symmetric_inverse_monoid)
from etale.topology import sierpinski

from conftest import GROUPOIDS
from oracles import down_join_closed_sets, pointwise_products, quantale_laws_hold, subsets

ETALE = sorted(k for k in GROUPOIDS if k not in ("cyclic_group(2)/indiscrete", "unit(indiscrete(2))"))
SMALL_ETALE = [k for k in ETALE if k not in ("pair(3)", "action(4,2)")]


def z2_powerset_quantale():
    """Subsets of Z/2 with the pointwise group product."""
    sets = {set_id(A): A for A in subsets(["g0", "g1"])}
    add = lambda x, y: f"g{(int(x[1]) + int(y[1])) % 2}"
    mult = {(a, b): set_id({add(x, y) for x in A for y in B}) for a, A in sets.items() for b, B in sets.items()}
    return Quantale(SupLattice.from_sets(sets), mult, "{g0}", {a: a for a in sets}, "P(Z2)")


def join_chain():
    L = chain(3)
    mult = {(a, b): L.join2(a, b) for a in L.elements for b in L.elements}
    return Quantale(L, mult, L.bottom, {a: a for a in L.elements}, "join-chain")


def check_laws(Q):
    return quantale_laws_hold(Q.elements, Q.carrier.le, Q.mult, Q.unit, Q.star)


@pytest.mark.parametrize("L", [chain(1), chain(3), powerset_frame(["1", "2"]),
                               topology_to_frame(sierpinski())])
def test_frames_are_quantales(L):
    Q = frame_quantale(L)
    assert validate_quantale(Q).ok and check_laws(Q)


def test_z2_powerset_quantale_is_valid():
    Q = z2_powerset_quantale()
    assert validate_quantale(Q).ok and check_laws(Q)


def test_inconsistent_star_is_reported():
    L = powerset_frame(["1", "2"])
    Q = frame_quantale(L)
    star = dict(Q.star)
    star["{1}"], star["{2}"] = "{1,2}", "{}"
    rep = validate_quantale(Quantale(L, Q.mult, Q.unit, star))
    assert rep.axioms() & {"star preserves joins", "star preserves joins (empty join)", "involution"}


def test_join_multiplication_breaks_the_empty_join_law():
    rep = validate_quantale(join_chain())
    assert "left distributivity (empty join)" in rep.axioms()
    assert not check_laws(join_chain())


@pytest.mark.parametrize("make", [z2_powerset_quantale, lambda: frame_quantale(chain(3)),
                                  lambda: opens_quantale(unit_groupoid(sierpinski())),
                                  lambda: opens_quantale(cyclic_group_groupoid(2))])
def test_validation_agrees_with_full_subset_laws_on_mutations(make):
    Q = make()
    assert validate_quantale(Q).ok and check_laws(Q)
    for (a, b) in Q.mult:
        for c in Q.elements:
            mult = dict(Q.mult)
            mult[a, b] = c
            bad = Quantale(Q.carrier, mult, Q.unit, Q.star)
            assert validate_quantale(bad).ok == check_laws(bad)


def test_opens_quantale_of_pair_groupoid():
    G = pair_groupoid(2)
    Q = opens_quantale(G)
    assert len(Q) == 16
    assert Q.open_sets[Q.unit] == frozenset({"(1,1)", "(2,2)"})
    top = Q.carrier.top
    assert Q.mult[top, top] == top


def test_opens_quantale_of_unit_groupoid_is_the_frame():
    X = sierpinski()
    Q = opens_quantale(unit_groupoid(X))
    for a, U in Q.open_sets.items():
        for b, V in Q.open_sets.items():
            assert Q.open_sets[Q.mult[a, b]] == U & V
    assert is_quantale_iso(Q, frame_quantale(topology_to_frame(X)),
                           {a: a for a in Q.elements})


def test_opens_quantale_rejects_non_etale_groupoid():
    with pytest.raises(NotEtale):
        opens_quantale(cyclic_group_groupoid(2, "indiscrete"))


@pytest.mark.parametrize("name", SMALL_ETALE)
def test_opens_quantale_products_match_pointwise_products(name):
    G = GROUPOIDS[name]()
    Q = opens_quantale(G)
    prods = pointwise_products(G.arrows.opens, G.m)
    for a, U in Q.open_sets.items():
        for b, V in Q.open_sets.items():
            assert Q.open_sets[Q.mult[a, b]] == prods[U, V]
        assert Q.open_sets[Q.star[a]] == frozenset(G.i[x] for x in U)
    assert validate_quantale(Q).ok and is_frame(Q.carrier)[0]


@pytest.mark.parametrize("name", SMALL_ETALE)
def test_unit_is_an_idempotent_fixed_by_star(name):
    Q = opens_quantale(GROUPOIDS[name]())
    e = Q.unit
    assert Q.mult[e, e] == e and Q.star[e] == e
    L = Q.carrier
    for a in L.elements:
        for b in L.elements:
            assert L.le(a, b) == L.le(Q.star[a], Q.star[b])
        assert Q.mult[a, L.bottom] == L.bottom == Q.mult[L.bottom, a]


@pytest.mark.parametrize("name", ETALE)
def test_groupoid_comes_back_from_its_opens_quantale(name):
    G = GROUPOIDS[name]()
    with using_limits(max_frame=1024):
        Q = opens_quantale(G)
        H = reconstruct_groupoid(Q)
        assert isinstance(groupoid_isomorphic(H, G), GroupoidIso)
        cert = is_etale_groupoid_quantale(Q)
        assert cert.ok and is_quantale_iso(Q, opens_quantale(cert.groupoid), cert.iso)


def test_z2_powerset_quantale_reconstructs_z2():
    Q = z2_powerset_quantale()
    G = reconstruct_groupoid(Q)
    assert (len(G.arrows.points), len(G.units.points)) == (2, 1)
    assert isinstance(groupoid_isomorphic(G, cyclic_group_groupoid(2)), GroupoidIso)
    assert is_etale_groupoid_quantale(Q).ok


def test_three_chain_under_meet_is_the_unit_groupoid_on_sierpinski():
    G = reconstruct_groupoid(frame_quantale(chain(3)))
    assert isinstance(groupoid_isomorphic(G, unit_groupoid(sierpinski())), GroupoidIso)


def test_three_chain_under_join_does_not_reconstruct():
    Q = join_chain()
    assert len(unit_frame(Q)) == 1
    with pytest.raises(ReconstructionFailure):
        reconstruct_groupoid(Q)
    cert = is_etale_groupoid_quantale(Q)
    assert not cert and "reconstruction failed" in cert.reason


def test_quantale_isomorphism_search():
    Q = opens_quantale(pair_groupoid(2))
    f = quantale_isomorphism(Q, lvee(symmetric_inverse_monoid(2)))
    assert f is not None and is_quantale_iso(Q, lvee(symmetric_inverse_monoid(2)), f)
    assert quantale_isomorphism(frame_quantale(chain(3)), frame_quantale(chain(4))) is None
    bad = {a: Q.carrier.bottom for a in Q.elements}
    assert is_quantale_hom(Q, Q, bad) is not None


@pytest.mark.parametrize("make", [lambda: symmetric_inverse_monoid(1), lambda: symmetric_inverse_monoid(2),
                                  lambda: frame_as_semigroup(chain(3)),
                                  lambda: frame_as_semigroup(powerset_frame(["1", "2"])),
                                  lambda: bisections(cyclic_group_groupoid(2)), i2_without_swap])
def test_lvee_elements_match_exhaustive_enumeration(make):
    S = make()
    expected = set(down_join_closed_sets(S.elements, S.mult, S.inv))
    Q = lvee(S)
    assert set(Q.closed_sets.values()) == expected
    assert validate_quantale(Q).ok


def test_lvee_of_i2_is_the_opens_quantale_of_pair2():
    Q = lvee(symmetric_inverse_monoid(2))
    assert len(Q) == 16
    assert quantale_isomorphism(Q, opens_quantale(pair_groupoid(2))) is not None


@pytest.mark.parametrize("L", [chain(1), chain(2), chain(3), powerset_frame(["1", "2"]),
                               topology_to_frame(sierpinski())])
def test_lvee_of_a_frame_is_the_frame(L):
    Q = lvee(frame_as_semigroup(L))
    assert len(Q) == len(L)
    assert quantale_isomorphism(Q, frame_quantale(L)) is not None
    # every element is the principal downset of its top
    for A in Q.closed_sets.values():
        assert any(A == frozenset(x for x in L.elements if L.le(x, a)) for a in A)


def test_lvee_of_the_trivial_group_has_one_element():
    # the one-element group has e as its own empty join (it is a zero), so
    # the empty set is not join-closed
    S = group_as_semigroup(["e"], {("e", "e"): "e"}, {"e": "e"}, "1")
    assert {frozenset(A) for A in down_join_closed_sets(S.elements, S.mult, S.inv)} == {frozenset({"e"})}
    assert len(lvee(S)) == 1


def test_lvee_rejects_non_pseudogroups():
    zab = InvSemigroup(list("0ab"), {(x, y): (x if x == y else "0") for x in "0ab" for y in "0ab"},
                       {x: x for x in "0ab"})
    with pytest.raises(NotAbstractPseudogroup):
        lvee(zab)


def test_closure_is_a_closure_operator():
    S = symmetric_inverse_monoid(2)
    sets = list(subsets(S.elements))[::5]
    for A in sets:
        cA = lvee_closure(S, A)
        assert A <= cA and lvee_closure(S, cA) == cA
        assert down_closure(S, cA) == cA == join_closure_step(S, cA)
        for B in sets:
            if A <= B:
                assert cA <= lvee_closure(S, B)


def test_lvee_sets_respect_the_cap():
    with using_limits(max_frame=8):
        with pytest.raises(Exception):
            lvee_sets(symmetric_inverse_monoid(2))


def test_theorem_on_i2():
    rep = theorem_lvee_check(symmetric_inverse_monoid(2))
    assert rep.ok and rep.size == 16
    assert isinstance(groupoid_isomorphic(rep.etale_certificate.groupoid, pair_groupoid(2)), GroupoidIso)


@pytest.mark.parametrize("L", [chain(2), chain(3), powerset_frame(["1", "2"])])
def test_theorem_on_frames(L):
    rep = theorem_lvee_check(frame_as_semigroup(L))
    assert rep.ok
    assert isinstance(groupoid_isomorphic(rep.etale_certificate.groupoid, unit_groupoid(spectrum(L))),
                      GroupoidIso)


def test_theorem_on_bisections_of_z2():
    rep = theorem_lvee_check(bisections(cyclic_group_groupoid(2)))
    assert rep.ok
    assert isinstance(groupoid_isomorphic(rep.etale_certificate.groupoid, cyclic_group_groupoid(2)),
                      GroupoidIso)
