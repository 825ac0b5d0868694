import random

import pytest
from hypothesis import given, settings, strategies as st

from catpush import fuzz
from catpush.core import linear_order, opposite_span, terminal_category
from catpush.necklace import (
    BoundTooSmall,
    Necklace,
    NotFullSubanima,
    PushoutOracle,
    all_necklaces,
    check_segal_away,
    necklace_maps,
    necklaces_in,
    pushout_hom_sets,
)
from catpush.pushout import pushout_objects
from catpush.sset import discrete_sset, from_ordered_complex, nerve
from catpush.suites import segal_subject

from helpers import golden_span, rng_from

seeds = st.integers(0, 10**9)


def two_horn():
    """Edges 0->1 and 1->2 with no edge 0->2 and no 2-simplex."""
    return from_ordered_complex([(0, 1), (1, 2)], 3)


def test_necklace_rejects_bad_joints():
    with pytest.raises(ValueError):
        Necklace(2, (0, 1))
    with pytest.raises(ValueError):
        Necklace(2, (0, 2, 2))


def test_necklace_map_counts():
    wedge = Necklace(2, (0, 1, 2))
    simplex = Necklace(2, (0, 2))
    assert len(necklace_maps(wedge, wedge)) >= 1
    assert len(necklace_maps(wedge, simplex)) == 3
    assert necklace_maps(simplex, wedge) == []


def test_necklace_count_by_width():
    # width n has 2^(n-1) joint sets for n >= 1
    assert len(all_necklaces(3)) == 1 + 1 + 2 + 4


def test_necklaces_in_point_are_degenerate():
    X = nerve(terminal_category(), 3)
    cat = necklaces_in(X, "*", "*", 3)
    assert cat.num_components == 1


def test_necklaces_in_arrow_are_connected():
    X = nerve(linear_order(1), 3)
    assert necklaces_in(X, "0", "1", 3).num_components == 1
    assert not necklaces_in(X, "1", "0", 3).objects


def test_necklace_width_bound():
    with pytest.raises(BoundTooSmall):
        necklaces_in(nerve(linear_order(1), 2), "0", "1", 0)


def test_golden_oracle_classes():
    span = golden_span()
    assert len(pushout_hom_sets(span, ("C", "0"), ("B", "2"), 8).require_stable()) == 1
    assert len(pushout_hom_sets(span, ("C", "2"), ("B", "2"), 6).require_stable()) == 0


@given(seeds)
def test_oracle_reproduces_hom_on_identity_spans(seed):
    C = fuzz.random_category(rng_from(seed))
    o = PushoutOracle(fuzz.identity_span(C), 4)
    for x in C.objects:
        for y in C.objects:
            hc = o.hom_classes(("C", x), ("C", y))
            assert hc.stabilized
            got = sorted((C.identities[x] if not w else C.comp_path([m for _, m in w])) for w in hc.representatives)
            assert got == sorted(C.hom(x, y))


@settings(max_examples=15)
@given(seeds)
def test_oracle_symmetric_under_opposites(seed):
    span = fuzz.dwyer_poset_span(rng_from(seed), max_objects=4)
    o1, o2 = PushoutOracle(span, 6), PushoutOracle(opposite_span(span), 6)
    for x in pushout_objects(span):
        for y in pushout_objects(span):
            h1, h2 = o1.hom_classes(x, y), o2.hom_classes(y, x)
            reversed_classes = sorted(tuple(sorted(o2.normal_form(tuple(reversed(w))) for w in c)) for c in h1.classes)
            assert reversed_classes == sorted(tuple(sorted(c)) for c in h2.classes)


@settings(max_examples=15)
@given(seeds)
def test_oracle_stabilises_on_dwyer_posets(seed):
    span = fuzz.dwyer_poset_span(rng_from(seed), max_objects=4)
    chain = max(span.B.longest_chain(), span.C.longest_chain(), 1)
    o = PushoutOracle(span, 2 * chain + 2)
    for x in pushout_objects(span):
        for y in pushout_objects(span):
            assert o.hom_classes(x, y).stabilized


def _vertex(span, x):
    side, name = x
    if side == "B":
        hits = [a for a in span.A.objects if span.left.obj_map[a] == name]
        if not hits:
            return ("X", list(span.B.objects).index(name))
        name = span.right.obj_map[hits[0]]
    return ("Y", list(span.C.objects).index(name))


@settings(max_examples=15)
@given(seeds)
def test_necklace_components_match_oracle(seed):
    """Two independent routes to pi0 of mapping spaces in the pushout."""
    span = fuzz.dwyer_poset_span(rng_from(seed), max_objects=4)
    P, _ = segal_subject(span, 3)
    o = PushoutOracle(span, 8)
    for x in pushout_objects(span):
        for y in pushout_objects(span):
            hc = o.hom_classes(x, y)
            assert hc.stabilized
            cat = necklaces_in(P, _vertex(span, x), _vertex(span, y), 3)
            assert cat.num_components == len(hc.classes)


def test_segal_away_on_nerves():
    C = linear_order(3)
    X = nerve(C, 3)
    assert check_segal_away(X, [], 3)
    assert check_segal_away(X, ["1", "2"], 3)


def test_two_horn_fails_with_witness():
    v = check_segal_away(two_horn(), [], 2)
    assert v.outcome == "FAILS"
    neck, beads, fillers = v.witness
    assert neck == "([2], {0, 1, 2})" and fillers == 0


def test_two_horn_passes_when_middle_is_avoided():
    assert check_segal_away(two_horn(), [(1,)], 2)


def test_segal_away_rejects_unknown_vertex():
    with pytest.raises(NotFullSubanima):
        check_segal_away(discrete_sset(["p"], 2), ["q"], 2)


@given(seeds)
def test_nerve_pushouts_are_segal_away_from_c(seed):
    span = fuzz.ff_span(rng_from(seed))
    P, A0 = segal_subject(span, 3)
    assert check_segal_away(P, A0, 3)


def test_nerve_pushout_need_not_be_segal():
    # gluing two arrows end to start leaves the composite missing
    failures = 0
    for i in range(40):
        span = fuzz.ff_span(random.Random(i))
        P, _ = segal_subject(span, 3)
        failures += not check_segal_away(P, [], 3)
    assert failures > 0
