import itertools

import pytest
from hypothesis import given, strategies as st

from catpush import fuzz
from catpush.comma import (
    MismatchedTarget,
    arrow_cat,
    comma_triple,
    coslice,
    fourth_comma,
    grothendieck,
    pullback_cat,
    slice_cat,
    triple_parts,
)
from catpush.core import (
    SetFunctor,
    SpanData,
    full_subcategory,
    identity_functor,
    linear_order,
    opposite,
    opposite_span,
    terminal_category,
)
from catpush.sset import nerve, pi0

from helpers import arrow, golden_span, rng_from

seeds = st.integers(0, 10**9)


def components(cat) -> int:
    if not cat.objects:
        return 0
    return len(pi0(nerve(cat, 1)))


def test_slices_of_small_categories():
    T = terminal_category()
    assert len(slice_cat(T, "*").cat.objects) == 1
    C = arrow()
    assert len(slice_cat(C, "a").cat.objects) == 1
    over_b = slice_cat(C, "b").cat
    assert len(over_b.objects) == 2 and len(over_b.nonidentity) == 1


def test_coslices_of_small_categories():
    assert len(coslice(terminal_category(), "*").cat.objects) == 1
    assert len(coslice(arrow(), "b").cat.objects) == 1
    under0 = coslice(linear_order(2), "0").cat
    assert len(under0.objects) == 3 and len(under0.nonidentity) == 3


def test_arrow_category_of_arrow():
    Ar = arrow_cat(arrow()).cat
    assert len(Ar.objects) == 3
    # squares from id_a to f, from f to id_b, and the composite id_a -> id_b
    assert len(Ar.nonidentity) == 3
    assert len(arrow_cat(terminal_category()).cat.objects) == 1


@given(seeds)
def test_arrow_category_objects_are_morphisms(seed):
    C = fuzz.random_category(rng_from(seed))
    assert len(arrow_cat(C).cat.objects) == len(C.morphisms)


def test_pullback_over_identities_is_diagonal():
    C = linear_order(2)
    P = pullback_cat(identity_functor(C), identity_functor(C)).cat
    assert len(P.objects) == len(C.objects) and len(P.morphisms) == len(C.morphisms)


def test_pullback_of_disjoint_images_is_empty():
    C = linear_order(2)
    A0, i0 = full_subcategory(C, ["0"])
    A2, i2 = full_subcategory(C, ["2"])
    assert not pullback_cat(i0, i2).cat.objects


def test_pullback_needs_common_target():
    with pytest.raises(MismatchedTarget):
        pullback_cat(identity_functor(linear_order(1)), identity_functor(linear_order(2)))


def test_under_one_restricted_to_subcategory():
    span = golden_span()
    under = coslice(span.B, "1")
    P = pullback_cat(under.projections["codomain"], span.left).cat
    assert len(P.objects) == 1


@given(seeds)
def test_pullback_universal_property(seed):
    """Every cone from a test category factors through the pullback once."""
    rng = rng_from(seed)
    Z = fuzz.random_poset(rng, rng.randint(1, 3), prefix="z")
    X = fuzz.random_poset(rng, rng.randint(1, 3), prefix="x")
    Y = fuzz.random_poset(rng, rng.randint(1, 3), prefix="y")
    F = fuzz.preorder_functor(X, Z, fuzz.random_monotone(rng, X, Z))
    G = fuzz.preorder_functor(Y, Z, fuzz.random_monotone(rng, Y, Z))
    P = pullback_cat(F, G)
    # cones from the terminal category are pairs of objects over the same point
    cones = [(x, y) for x in X.objects for y in Y.objects if F.obj_map[x] == G.obj_map[y]]
    assert sorted(cones) == sorted(P.cat.objects)
    # cones from [1] are pairs of morphisms over the same morphism
    arrows = [(m, n) for m, _, _ in X.morphisms for n, _, _ in Y.morphisms if F.mor_map[m] == G.mor_map[n]]
    assert sorted(arrows) == sorted(m for m, _, _ in P.cat.morphisms)


@given(seeds)
def test_slice_projection_lifts_isomorphisms(seed):
    C = fuzz.random_category(rng_from(seed))
    for c in C.objects:
        S = slice_cat(C, c)
        proj = S.projections["domain"]
        for (x, m) in S.cat.objects:
            for u in C.incoming(x):
                if not C.is_iso(u):
                    continue
                lifted = [q for q, s, t in S.cat.morphisms if t == (x, m) and proj.mor_map[q] == u]
                assert len(lifted) == 1


@given(seeds)
def test_identity_span_factorizations_count_homs(seed):
    C = fuzz.random_category(rng_from(seed))
    span = fuzz.identity_span(C)
    for b, c in itertools.product(C.objects, repeat=2):
        fac = comma_triple(span, b, c, "BC").cat
        assert components(fac) == len(C.hom(b, c))
        composites = {C.compose[psi, phi] for phi, _, psi in map(triple_parts, fac.objects)}
        assert composites == set(C.hom(b, c))


def test_golden_factorizations():
    span = golden_span()
    bc = comma_triple(span, "2", "0", "BC").cat
    assert not bc.objects
    cb = comma_triple(span, "2", "0", "CB").cat
    assert len(cb.objects) == 1


@given(seeds)
def test_factorizations_dualise(seed):
    span = fuzz.dwyer_span(rng_from(seed))
    dual = opposite_span(span)
    for b, c in itertools.product(span.B.objects, span.C.objects):
        lhs = opposite(comma_triple(span, b, c, "BC").cat)
        rhs = comma_triple(dual, b, c, "CB").cat
        assert len(lhs.objects) == len(rhs.objects)
        assert len(lhs.morphisms) == len(rhs.morphisms)
        assert components(lhs) == components(rhs)


def test_fourth_comma_with_empty_a():
    C = linear_order(1)
    E, e = full_subcategory(C, [])
    span = SpanData(e, e)
    fc = fourth_comma(span, "0", "1")
    assert not fc.top.cat.objects and not fc.bottom.cat.objects


def test_fourth_comma_identity_span_is_pi0_equivalence():
    C = linear_order(2)
    span = fuzz.identity_span(C)
    for b0, b1 in itertools.product(C.objects, repeat=2):
        fc = fourth_comma(span, b0, b1)
        assert components(fc.top.cat) == components(fc.bottom.cat) == len(C.hom(b0, b1))


def test_fourth_comma_golden_top_is_empty():
    fc = fourth_comma(golden_span(), "2", "2")
    assert not fc.top.cat.objects


def test_grothendieck_of_constants():
    C = linear_order(2)
    one = SetFunctor(C, {x: (0,) for x in C.objects}, {m: {0: 0} for m, _, _ in C.morphisms})
    el = grothendieck(one).cat
    assert len(el.objects) == 3 and len(el.morphisms) == len(C.morphisms)
    empty = SetFunctor(C, {x: () for x in C.objects}, {m: {} for m, _, _ in C.morphisms})
    assert not grothendieck(empty).cat.objects


def test_grothendieck_of_representable_is_coslice():
    C = arrow()
    rep = SetFunctor(
        C,
        {x: C.hom("a", x) for x in C.objects},
        {m: {h: C.compose[m, h] for h in C.hom("a", s)} for m, s, _ in C.morphisms},
    )
    el = grothendieck(rep).cat
    under = coslice(C, "a").cat
    assert len(el.objects) == len(under.objects)
    assert len(el.morphisms) == len(under.morphisms)
