import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from catpush import fuzz
from catpush.core import (
    SetFunctor,
    full_subcategory,
    identity_functor,
    linear_order,
    terminal_category,
    validate_category,
)
from catpush.kan import random_set_functor, set_functor_tables
from catpush.reedy import (
    CanonicalMapMismatch,
    IdentityFactors,
    NotConservative,
    NotMono,
    ReedyData,
    canonical_map,
    check_reedy_structure,
    find_complementary,
    is_reedy_extension,
    latching,
    matching,
    reconstruct_functor,
    restrict_data,
    verify_reedy_square,
)

from helpers import rng_from

seeds = st.integers(0, 10**9)


def retract_pair():
    """c -> a -> c composing to id_c, so id_c factors through a."""
    return validate_category(
        objects=["a", "c"],
        morphisms=[("i", "c", "a"), ("r", "a", "c"), ("e", "a", "a"), ("id_a", "a", "a"), ("id_c", "c", "c")],
        identities={"a": "id_a", "c": "id_c"},
        compose=[("r", "i", "id_c"), ("i", "r", "e"), ("e", "e", "e"), ("e", "i", "i"), ("r", "e", "r")],
    )


def two_routes():
    """c0 -p,q-> a -s-> c1 with s∘p = s∘q = m."""
    return validate_category(
        objects=["c0", "a", "c1"],
        morphisms=[("p", "c0", "a"), ("q", "c0", "a"), ("s", "a", "c1"), ("m", "c0", "c1"),
                   ("i0", "c0", "c0"), ("ia", "a", "a"), ("i1", "c1", "c1")],
        identities={"c0": "i0", "a": "ia", "c1": "i1"},
        compose=[("s", "p", "m"), ("s", "q", "m")],
    )


# ------------------------------------------------------ complementary part


def test_complement_of_middle_of_chain():
    _, inc = full_subcategory(linear_order(2), ["1"])
    W = find_complementary(inc)
    assert sorted(W.complement.objects) == ["0", "2"]
    assert not W.complement.nonidentity
    assert W.factoring == {"0<2"}
    assert is_reedy_extension(inc)


def test_identity_factoring_through_a_is_rejected():
    _, inc = full_subcategory(retract_pair(), ["a"])
    with pytest.raises(IdentityFactors):
        find_complementary(inc)
    assert not is_reedy_extension(inc)


def test_two_components_of_factorizations_is_not_mono():
    _, inc = full_subcategory(two_routes(), ["a"])
    with pytest.raises(NotMono) as err:
        find_complementary(inc)
    assert err.value.witness == "m"
    v = is_reedy_extension(inc)
    assert not v and "NotMono" in v.reason


def test_whole_category_has_empty_complement():
    C = linear_order(2)
    W = find_complementary(identity_functor(C))
    assert not W.complement.objects


# ------------------------------------------------- latching and matching


def naive_latching_size(F, inc, c):
    """Pairs (phi: f a -> c, x in F a) glued along morphisms of A."""
    A, B = inc.source, inc.target
    elems = [(a, phi, x) for a in A.objects for phi in B.hom(inc.obj_map[a], c) for x in F.sets[a]]
    parent = {e: e for e in elems}

    def find(e):
        while parent[e] != e:
            e = parent[e]
        return e

    for alpha, a, a2 in A.morphisms:
        for phi2 in B.hom(inc.obj_map[a2], c):
            phi = B.compose[phi2, inc.mor_map[alpha]]
            for x in F.sets[a]:
                parent[find((a, phi, x))] = find((a2, phi2, F.maps[alpha][x]))
    return len({find(e) for e in elems})


def naive_matching_size(F, inc, c):
    """Families psi |-> x_psi compatible with morphisms of A."""
    A, B = inc.source, inc.target
    index = [(a, psi) for a in A.objects for psi in B.hom(c, inc.obj_map[a])]
    count = 0
    for fam in itertools.product(*(F.sets[a] for a, _ in index)):
        pick = dict(zip(index, fam))
        if all(
            F.maps[alpha][pick[a, psi]] == pick[a2, B.compose[inc.mor_map[alpha], psi]]
            for alpha, a, a2 in A.morphisms
            for psi in B.hom(c, inc.obj_map[a])
        ):
            count += 1
    return count


@settings(max_examples=30)
@given(seeds)
def test_latching_and_matching_against_direct_counts(seed):
    rng = rng_from(seed)
    B, low = fuzz.two_level_category(rng)
    # an arbitrary subset, so maps may run both ways across it
    keep = [x for x in B.objects if rng.random() < 0.5] or [B.objects[0]]
    A, inc = full_subcategory(B, keep)
    F = random_set_functor(A, 2, rng)
    for c in B.objects:
        if c in keep:
            continue
        assert len(latching(F, inc, c).classes) == naive_latching_size(F, inc, c)
        assert len(matching(F, inc, c)) == naive_matching_size(F, inc, c)


def test_canonical_map_on_arrow():
    B = validate_category(objects=["a", "c"], morphisms=[("f", "a", "c"), ("ia", "a", "a"), ("ic", "c", "c")],
                          identities={"a": "ia", "c": "ic"}, compose=[])
    A, inc = full_subcategory(B, ["a"])
    F = SetFunctor(A, {"a": (0, 1)}, {"ia": {0: 0, 1: 1}})
    # nothing leaves c, so the matching set is a point
    assert canonical_map(F, inc, "c") == {0: 0, 1: 0}


# ------------------------------------------------------- gluing functors


@settings(max_examples=30)
@given(seeds)
def test_restrict_then_reconstruct_round_trip(seed):
    rng = rng_from(seed)
    B, low = fuzz.two_level_category(rng)
    _, inc = full_subcategory(B, low)
    W = find_complementary(inc)
    X = random_set_functor(B, 2, rng)
    Y = reconstruct_functor(restrict_data(X, W), W)
    assert Y.sets == X.sets
    assert all(Y.maps[m] == X.maps[m] for m, _, _ in B.morphisms)


def test_empty_g_with_nonempty_latching_is_rejected():
    B = linear_order(1)
    A, inc = full_subcategory(B, ["0"])
    W = find_complementary(inc)
    X = SetFunctor(B, {"0": (0,), "1": (0,)}, {"id_0": {0: 0}, "id_1": {0: 0}, "0<1": {0: 0}})
    d = restrict_data(X, W)
    G = SetFunctor(W.complement, {"1": ()}, {"id_1": {}})
    bad = ReedyData(d.F, G, {"1": {}}, {"1": {}}, d.latchings, d.matchings)
    with pytest.raises(CanonicalMapMismatch):
        reconstruct_functor(bad, W)


# ------------------------------------------------------- the cartesian square


def cardinality_of_chain_functors(n_objects: int, k: int) -> Fraction:
    """Groupoid cardinality of functors [n] -> Set with sets of size <= k, in closed form."""
    total = Fraction(0)
    for sizes in itertools.product(range(k + 1), repeat=n_objects):
        count = 1
        for s, t in zip(sizes, sizes[1:]):
            count *= t ** s
        denom = 1
        for s in sizes:
            denom *= factorial(s)
        total += Fraction(count, denom)
    return total


def labelled_cardinality(B, k: int) -> Fraction:
    """Labelled functor count divided by the symmetric group orders."""
    total = Fraction(0)
    for sizes_t in itertools.product(range(k + 1), repeat=len(B.objects)):
        sizes = dict(zip(B.objects, sizes_t))
        count = sum(1 for _ in set_functor_tables(B, sizes))
        denom = 1
        for s in sizes_t:
            denom *= factorial(s)
        total += Fraction(count, denom)
    return total


def test_reedy_square_on_arrow():
    _, inc = full_subcategory(linear_order(1), ["0"])
    v = verify_reedy_square(inc, 2)
    assert v
    assert v.functor_cardinality == v.data_cardinality == cardinality_of_chain_functors(2, 2) == 6


def test_reedy_square_on_middle_of_chain():
    _, inc = full_subcategory(linear_order(2), ["1"])
    v = verify_reedy_square(inc, 2)
    assert v
    assert v.functor_cardinality == v.data_cardinality == cardinality_of_chain_functors(3, 2)


def test_reedy_square_when_a_is_everything():
    C = linear_order(1)
    v = verify_reedy_square(identity_functor(C), 2)
    assert v and v.functor_cardinality == cardinality_of_chain_functors(2, 2)


@settings(max_examples=5)
@given(seeds)
def test_reedy_square_on_two_level_categories(seed):
    B, low = fuzz.two_level_category(rng_from(seed))
    _, inc = full_subcategory(B, low)
    v = verify_reedy_square(inc, 2)
    assert v, v.reason
    assert v.functor_cardinality == v.data_cardinality == labelled_cardinality(B, 2)


# ------------------------------------------------------- Reedy structures


def test_chain_is_reedy():
    C = linear_order(2)
    ids = [C.identities[x] for x in C.objects]
    v = check_reedy_structure(C, {"0": 0, "1": 1, "2": 2}, ids, [m for m, _, _ in C.morphisms])
    assert v and v.levels == (0, 1, 2)
    assert all(out == "HOLDS" for _, out in v.truncation_checks)


def test_constant_degree_on_arrow_is_not_conservative():
    C = linear_order(1)
    ids = [C.identities[x] for x in C.objects]
    with pytest.raises(NotConservative):
        check_reedy_structure(C, {"0": 0, "1": 0}, ids, [m for m, _, _ in C.morphisms])


def test_terminal_is_reedy():
    T = terminal_category()
    idm = T.identities["*"]
    assert check_reedy_structure(T, {"*": 0}, [idm], [idm])


def test_unknown_orientation():
    T = terminal_category()
    idm = T.identities["*"]
    with pytest.raises(ValueError):
        check_reedy_structure(T, {"*": 0}, [idm], [idm], orientation="sideways")
