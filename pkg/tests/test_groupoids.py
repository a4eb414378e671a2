import pytest

from etale.errors import SizeCapExceeded
from etale.families import cyclic_group_groupoid, generate_family, pair_groupoid, unit_groupoid
from etale.groupoids import (GroupoidIso, TopGroupoid, classify_groupoid, disjoint_union,
                             groupoid_isomorphic, is_etale, validate_groupoid,
                             verify_groupoid_iso)
from etale.limits import using_limits
from etale.topology import FinTopSpace, discrete_space, sierpinski

from conftest import GROUPOIDS
from oracles import classify_by_opens, composable_opens


def relabel(G, tag="x"):
    a = {x: f"{tag}{k}" for k, x in enumerate(G.arrows.points)}
    arrows = FinTopSpace(list(a.values()), [[a[x] for x in U] for U in G.arrows.opens])
    return TopGroupoid(G.units, arrows, {a[x]: v for x, v in G.d.items()},
                       {a[x]: v for x, v in G.r.items()}, {k: a[v] for k, v in G.u.items()},
                       {a[x]: a[v] for x, v in G.i.items()},
                       {(a[x], a[y]): a[z] for (x, y), z in G.m.items()}, name=G.name + "'")


def empty_groupoid():
    E = discrete_space(0)
    return TopGroupoid(E, E, {}, {}, {}, {}, {}, name="empty")


@pytest.mark.parametrize("name", sorted(GROUPOIDS))
def test_corpus_groupoids_validate(name):
    assert validate_groupoid(GROUPOIDS[name]()).ok


def test_empty_groupoid_is_valid_and_etale():
    assert validate_groupoid(empty_groupoid()).ok
    assert is_etale(empty_groupoid())


def test_redefining_one_product_is_caught(PAIR2):
    m = dict(PAIR2.m)
    m["(1,2)", "(2,1)"] = "(2,2)"
    bad = TopGroupoid(PAIR2.units, PAIR2.arrows, PAIR2.d, PAIR2.r, PAIR2.u, PAIR2.i, m)
    axioms = validate_groupoid(bad).axioms()
    assert axioms & {"d(xy) = d(x)", "associativity", "x i(x) = u(d(x))"}


def test_product_on_non_composable_pair_is_reported(PAIR2):
    m = dict(PAIR2.m)
    m["(1,2)", "(1,2)"] = "(1,2)"
    bad = TopGroupoid(PAIR2.units, PAIR2.arrows, PAIR2.d, PAIR2.r, PAIR2.u, PAIR2.i, m)
    assert validate_groupoid(bad).first("m defined only on composable pairs").witness == ("(1,2)", "(1,2)")


def test_missing_product_is_reported(PAIR2):
    m = dict(PAIR2.m)
    del m["(1,1)", "(1,2)"]
    bad = TopGroupoid(PAIR2.units, PAIR2.arrows, PAIR2.d, PAIR2.r, PAIR2.u, PAIR2.i, m)
    assert "m defined on composable pair" in validate_groupoid(bad).axioms()


def test_wrong_inverse_is_reported():
    G = cyclic_group_groupoid(3)
    i = dict(G.i)
    i["g1"] = "g1"
    bad = TopGroupoid(G.units, G.arrows, G.d, G.r, G.u, i, G.m)
    assert validate_groupoid(bad).axioms() & {"x i(x) = u(d(x))", "i involutive"}


def test_discontinuous_range_map_is_reported():
    # sierpinski units, discrete arrows is fine; the converse with d = swap is not
    S = sierpinski()
    G = TopGroupoid(S, S, {"a": "b", "b": "a"}, {"a": "b", "b": "a"}, {"a": "b", "b": "a"},
                    {"a": "a", "b": "b"}, {("a", "a"): "a", ("b", "b"): "b"})
    assert not validate_groupoid(G).ok


def test_classification_examples():
    assert classify_groupoid(pair_groupoid(2)).kind == "etale"
    assert classify_groupoid(unit_groupoid(sierpinski())).kind == "etale"
    c = classify_groupoid(cyclic_group_groupoid(2, "indiscrete"))
    assert c.open and not c.etale and c.kind == "open"


@pytest.mark.parametrize("name", sorted(GROUPOIDS))
def test_structure_map_classification_matches_opens(name):
    G = GROUPOIDS[name]()
    c = classify_groupoid(G)
    G0, G1 = G.units.opens, G.arrows.opens
    expected = {
        "d": classify_by_opens(G1, G0, G.d),
        "r": classify_by_opens(G1, G0, G.r),
        "u": classify_by_opens(G0, G1, G.u),
        "i": classify_by_opens(G1, G1, G.i),
    }
    # the union sweep is exponential in the number of composable pairs
    if len(G.m) <= 12:
        expected["m"] = classify_by_opens(composable_opens(G1, G.m), G1, G.m)
    for k, (cont, op, loc) in expected.items():
        assert cont
        assert (c.per_map[k]["open"], c.per_map[k]["local_homeomorphism"]) == (op, loc), k


@pytest.mark.parametrize("name", sorted(GROUPOIDS))
def test_etale_groupoids_have_open_unit_arrows(name):
    G = GROUPOIDS[name]()
    if is_etale(G):
        assert G.unit_arrows() in G.arrows.opens


@pytest.mark.parametrize("name", sorted(GROUPOIDS))
def test_all_structure_maps_share_the_property(name):
    c = classify_groupoid(GROUPOIDS[name]())
    if c.etale:
        assert c.all_local_homeomorphisms and c.all_open
    if name == "cyclic_group(2)/indiscrete":
        # u picks out one arrow of an indiscrete pair, whose image is not open
        assert c.open and not c.all_open and not c.equivalences_agree
    else:
        assert c.equivalences_agree


@pytest.mark.parametrize("name", sorted(GROUPOIDS))
def test_inversion_is_an_involutive_homeomorphism(name):
    G = GROUPOIDS[name]()
    assert all(G.i[G.i[x]] == x for x in G.arrows.points)
    assert {frozenset(G.i[x] for x in U) for U in G.arrows.opens} == set(G.arrows.opens)


def test_family_sizes():
    G = generate_family("pair", 2)
    assert (len(G.arrows.points), len(G.units.points)) == (4, 2)
    G = generate_family("cyclic_group", "3")
    assert (len(G.arrows.points), len(G.units.points)) == (3, 1) and is_etale(G)
    assert len(generate_family("symmetric_inverse_monoid", 2)) == 7


@pytest.mark.parametrize("name", sorted(GROUPOIDS))
def test_isomorphism_with_relabelled_copy(name):
    G = GROUPOIDS[name]()
    H = relabel(G)
    iso = groupoid_isomorphic(G, H)
    assert isinstance(iso, GroupoidIso) and verify_groupoid_iso(G, H, iso) is None
    back = groupoid_isomorphic(H, G)
    assert isinstance(back, GroupoidIso) and verify_groupoid_iso(H, G, back) is None


def test_pair_groupoid_is_not_two_copies_of_z2():
    P = pair_groupoid(2)
    Z = cyclic_group_groupoid(2)
    D = disjoint_union(Z, Z)
    assert validate_groupoid(D).ok
    res = groupoid_isomorphic(P, D)
    assert not res and "orbit" in res.reason


def test_empty_groupoids_are_isomorphic():
    iso = groupoid_isomorphic(empty_groupoid(), empty_groupoid())
    assert isinstance(iso, GroupoidIso) and iso.arrows == {} and iso.units == {}


def test_free_transitive_action_groupoid_is_the_pair_groupoid():
    assert groupoid_isomorphic(GROUPOIDS["action(2,2)"](), pair_groupoid(2))


def test_other_corpus_groupoids_are_pairwise_non_isomorphic():
    names = sorted(set(GROUPOIDS) - {"action(2,2)"})
    for a in names:
        for b in names:
            if a < b:
                assert not groupoid_isomorphic(GROUPOIDS[a](), GROUPOIDS[b]()), (a, b)


def test_isomorphism_respects_arrow_cap():
    with using_limits(max_arrows=3):
        with pytest.raises(SizeCapExceeded):
            groupoid_isomorphic(pair_groupoid(2), pair_groupoid(2))


def test_broken_witness_fails_verification(PAIR2):
    iso = groupoid_isomorphic(PAIR2, PAIR2)
    arrows = dict(iso.arrows)
    arrows["(1,2)"], arrows["(2,1)"] = arrows["(2,1)"], arrows["(1,2)"]
    assert verify_groupoid_iso(PAIR2, PAIR2, GroupoidIso(arrows, iso.units)) is not None
