import itertools

import pytest
from hypothesis import given, settings, strategies as st

from catpush import fuzz
from catpush.core import (
    SetFunctor,
    SpanData,
    full_subcategory,
    identity_functor,
    inclusion_functor,
    is_fully_faithful,
    linear_order,
    opposite,
    preorder_category,
)
from catpush.kan import random_set_functor
from catpush.pushout import (
    NotCertifiable,
    NotStrict,
    cross_check,
    dwyer_pushout,
    induced_functor,
    mapspace_report,
    pushout_objects,
    pushout_product_check,
    sieve_union_check,
    verify_beck_chevalley,
    verify_fold_square,
    verify_fourth_square,
)

from helpers import golden_span, rng_from

seeds = st.integers(0, 10**9)


def representable(C, c):
    Cop = opposite(C)
    sets = {x: C.hom(x, c) for x in C.objects}
    maps = {m: {h: C.compose[h, m] for h in C.hom(t, c)} for m, s, t in C.morphisms}
    return SetFunctor(Cop, sets, maps)


def leq_relation(D, names):
    """Non-identity hom pairs of D as (source name, target name)."""
    return {(names[s], names[t]) for m, s, t in D.morphisms if not D.is_identity(m)}


# ------------------------------------------------------------ construction


def test_golden_pushout_is_the_four_element_poset():
    dp = dwyer_pushout(golden_span(), word_bound=8)
    D, onames, _ = dp.named()
    assert sorted(D.objects) == ["0", "1", "2", "2'"]
    assert D.is_preorder
    rel = {(D.src[m], D.dst[m]) for m, _, _ in D.morphisms if not D.is_identity(m)}
    assert rel == {("0", "1"), ("0", "2"), ("1", "2"), ("0", "2'"), ("1", "2'")}
    assert not D.hom("2", "2'") and not D.hom("2'", "2")
    assert dp.strict_square and not dp.unchecked_pairs


def test_identity_span_pushout_is_c():
    C = linear_order(3)
    dp = dwyer_pushout(fuzz.identity_span(C), word_bound=8)
    assert len(dp.D.objects) == len(C.objects)
    assert len(dp.D.morphisms) == len(C.morphisms)
    assert all(x[0] == "C" for x in dp.D.objects)


def test_empty_a_gives_disjoint_union():
    B, C = linear_order(1), linear_order(2)
    A, left = full_subcategory(B, [])
    span = SpanData(left, inclusion_functor(A, C))
    dp = dwyer_pushout(span, word_bound=6)
    assert len(dp.D.objects) == len(B.objects) + len(C.objects)
    assert len(dp.D.morphisms) == len(B.morphisms) + len(C.morphisms)
    assert not any(m[0] == "X" for m, _, _ in dp.D.morphisms)


@given(seeds)
def test_pushout_leg_from_c_is_fully_faithful(seed):
    dp = dwyer_pushout(fuzz.dwyer_span(rng_from(seed)), word_bound=None)
    assert is_fully_faithful(dp.fbar)


@given(seeds)
def test_legs_are_jointly_surjective(seed):
    dp = dwyer_pushout(fuzz.dwyer_span(rng_from(seed)), word_bound=None)
    assert set(dp.fbar.image_objects) | set(dp.gbar.image_objects) == set(dp.D.objects)
    hit = set(dp.fbar.mor_map.values()) | set(dp.gbar.mor_map.values())
    # every morphism of D is a composite of leg images
    for m, s, t in dp.D.morphisms:
        if m in hit:
            continue
        assert any(dp.D.compose[q, p] == m for p in dp.D.outgoing(s) if p in hit
                   for q in dp.D.hom(dp.D.dst[p], t) if q in hit)


@given(seeds)
def test_leg_from_b_is_fully_faithful_off_a(seed):
    span = fuzz.dwyer_span(rng_from(seed))
    dp = dwyer_pushout(span, word_bound=None)
    off = [b for b in span.B.objects if dp.gbar.obj_map[b][0] == "B"]
    sub, inc = full_subcategory(span.B, off)
    G = dp.gbar
    for x, y in itertools.product(sub.objects, repeat=2):
        image = sorted(G.mor_map[m] for m in span.B.hom(x, y))
        assert image == sorted(dp.D.hom(G.obj_map[x], G.obj_map[y]))


@settings(max_examples=20)
@given(seeds)
def test_construction_agrees_with_word_oracle(seed):
    dp = dwyer_pushout(fuzz.dwyer_poset_span(rng_from(seed), max_objects=4), word_bound=None)
    assert cross_check(dp, 8) == []


@given(seeds)
def test_square_commutes_when_strict(seed):
    span = fuzz.dwyer_span(rng_from(seed))
    dp = dwyer_pushout(span, word_bound=None)
    if not dp.strict_square:
        return
    for m, _, _ in span.A.morphisms:
        assert dp.gbar.mor_map[span.left.mor_map[m]] == dp.fbar.mor_map[span.right.mor_map[m]]


@given(seeds)
def test_induced_functor_from_own_legs_is_identity(seed):
    span = fuzz.dwyer_span(rng_from(seed))
    dp = dwyer_pushout(span, word_bound=None)
    if not dp.strict_square:
        return
    u = induced_functor(dp, dp.gbar, dp.fbar)
    assert u.obj_map == {x: x for x in dp.D.objects}
    assert u.mor_map == {m: m for m, _, _ in dp.D.morphisms}


def test_induced_functor_into_c_for_identity_left_leg():
    # with f = id the cocone (g, id_C) factors through D ≅ C fully faithfully
    C = linear_order(2)
    A, g = full_subcategory(C, ["0", "1"])
    span = SpanData(identity_functor(A), g)
    dp = dwyer_pushout(span, word_bound=None)
    u = induced_functor(dp, g, identity_functor(C))
    assert is_fully_faithful(u)


def test_induced_functor_rejects_non_commuting_cocone():
    span = golden_span()
    dp = dwyer_pushout(span, word_bound=None)
    C = span.C
    const = {"obj_map": {b: "2" for b in span.B.objects},
             "mor_map": {m: C.identities["2"] for m, _, _ in span.B.morphisms}}
    from catpush.core import validate_functor

    u = validate_functor(const, span.B, C)
    with pytest.raises(NotStrict):
        induced_functor(dp, u, identity_functor(C))


# ------------------------------------------------------------ map spaces


def test_golden_mapspaces():
    span = golden_span()
    rep = mapspace_report(span, (("C", "0"), ("B", "2")))
    assert rep.agreement == "AGREE" and rep.formula_size == 1
    rep = mapspace_report(span, (("B", "2"), ("C", "0")))
    assert rep.agreement == "AGREE" and rep.formula_size == 0
    rep = mapspace_report(span, (("B", "2"), ("B", "2")))
    assert rep.agreement == "AGREE" and rep.formula_size == 1


@settings(max_examples=20)
@given(seeds)
def test_every_pair_agrees_on_dwyer_posets(seed):
    span = fuzz.dwyer_poset_span(rng_from(seed), max_objects=4)
    for pair in itertools.product(pushout_objects(span), repeat=2):
        assert mapspace_report(span, pair).agreement == "AGREE"


def test_non_sieve_bb_pair_is_not_applicable():
    C = linear_order(1)
    A, left = full_subcategory(C, ["1"])
    span = SpanData(left, identity_functor(A))
    rep = mapspace_report(span, (("B", "0"), ("B", "1")), word_bound=6)
    assert rep.agreement == "N/A"


# ------------------------------------------------------------ squares


def test_fourth_square_with_empty_a():
    B = linear_order(1)
    A, left = full_subcategory(B, [])
    span = SpanData(left, inclusion_functor(A, linear_order(0)))
    assert verify_fourth_square(span, "0", "1")


def test_fourth_square_golden():
    span = golden_span()
    v = verify_fourth_square(span, "2", "2")
    assert v.status == "CONSISTENT"
    assert v.corners["top_left"] == 0 and v.corners["bottom_right"] == 1
    assert verify_fourth_square(span, "1", "2")


def test_fourth_square_needs_fully_faithful_left_leg():
    C = linear_order(1)
    T, _ = full_subcategory(C, ["0"])
    from catpush.core import FunctorData

    collapse = FunctorData(C, T, {x: "0" for x in C.objects}, {m: "id_0" for m, _, _ in C.morphisms})
    with pytest.raises(NotCertifiable):
        verify_fourth_square(SpanData(collapse, identity_functor(C)), "0", "0")


@settings(max_examples=20)
@given(seeds)
def test_fourth_square_on_fuzzed_spans(seed):
    span = fuzz.dwyer_span(rng_from(seed))
    dp = dwyer_pushout(span, word_bound=None)
    for b0, b1 in itertools.product(span.B.objects, repeat=2):
        assert verify_fourth_square(span, b0, b1, 4, dp)


def test_fold_square_identity_span():
    C = linear_order(2)
    span = fuzz.identity_span(C)
    for b0, b1 in itertools.product(C.objects, repeat=2):
        assert verify_fold_square(span, b0, b1)


def test_fold_square_golden():
    span = golden_span()
    for b0, b1 in itertools.product(span.B.objects, repeat=2):
        v = verify_fold_square(span, b0, b1)
        assert v.status == "CONSISTENT", v.detail


@settings(max_examples=15)
@given(seeds)
def test_fold_square_on_fuzzed_spans(seed):
    span = fuzz.dwyer_span(rng_from(seed))
    dp = dwyer_pushout(span, word_bound=None)
    for b0, b1 in itertools.product(span.B.objects, repeat=2):
        assert verify_fold_square(span, b0, b1, 4, dp)


# ------------------------------------------------------- unions of sieves


def test_sieve_union_of_equal_sieves():
    P = linear_order(2)
    assert sieve_union_check(P, ["0", "1"], ["0", "1"])


def test_sieve_union_of_disjoint_sieves():
    P = preorder_category(["x", "y"], lambda s, t: s == t)
    assert sieve_union_check(P, ["x"], ["y"])


def test_sieve_union_diamond():
    P = preorder_category(["0", "1", "2", "3"],
                          lambda s, t: s == t or s == "0" or t == "3")
    assert sieve_union_check(P, ["0", "1"], ["0", "2"])


def test_sieve_union_rejects_non_sieve():
    from catpush.core import NotSieve

    with pytest.raises(NotSieve):
        sieve_union_check(linear_order(1), ["1"], ["0"])


@given(seeds)
def test_sieve_union_on_random_down_sets(seed):
    rng = rng_from(seed)
    P = fuzz.random_poset(rng, rng.randint(1, 5))
    assert sieve_union_check(P, fuzz.down_set(rng, P), fuzz.down_set(rng, P))


def test_pushout_product_cases():
    C, D = linear_order(1), linear_order(1)
    assert pushout_product_check(C, C.objects, D, ["0"])
    assert pushout_product_check(C, [], D, ["0"])
    assert pushout_product_check(C, ["0"], D, ["0"])


# ---------------------------------------------------------- Beck–Chevalley


@given(seeds)
def test_beck_chevalley_identity_span(seed):
    rng = rng_from(seed)
    C = fuzz.random_category(rng)
    F = random_set_functor(opposite(C), 3, rng)
    assert verify_beck_chevalley(fuzz.identity_span(C), F)


def test_beck_chevalley_empty_presheaf():
    span = golden_span()
    Cop = opposite(span.C)
    F = SetFunctor(Cop, {x: () for x in Cop.objects}, {m: {} for m, _, _ in Cop.morphisms})
    assert verify_beck_chevalley(span, F)


def test_beck_chevalley_golden_representables():
    span = golden_span()
    for c in span.C.objects:
        assert verify_beck_chevalley(span, representable(span.C, c))


@settings(max_examples=25)
@given(seeds)
def test_beck_chevalley_on_fuzzed_spans(seed):
    rng = rng_from(seed)
    span = fuzz.dwyer_span(rng)
    F = random_set_functor(opposite(span.C), 3, rng)
    assert verify_beck_chevalley(span, F)
