import itertools
import math

import pytest
from hypothesis import given, strategies as st

from catpush import fuzz
from catpush.core import (
    identity_functor,
    linear_order,
    preorder_category,
    skeleton,
    terminal_category,
    validate_category,
)
from catpush.sset import (
    SimplicialMap,
    TruncationTooLow,
    discrete_sset,
    disjoint_union,
    double_mapping_cylinder,
    empty_sset,
    euler_characteristic,
    from_ordered_complex,
    homology,
    invariant_factors,
    is_weakly_contractible_up_to,
    nerve,
    nerve_map,
    pi0,
)

from helpers import arrow, rng_from

seeds = st.integers(0, 10**9)


def parallel_pair():
    return validate_category(
        objects=["x", "y"],
        morphisms=[("f", "x", "y"), ("g", "x", "y"), ("ix", "x", "x"), ("iy", "y", "y")],
        identities={"x": "ix", "y": "iy"},
        compose=[],
    )


def identity_map(X):
    return SimplicialMap(X, X, tuple(tuple(range(len(lv))) for lv in X.simplices))


def assert_simplicial(X):
    for n in range(2, X.dim + 1):
        for k in range(len(X.simplices[n])):
            for i, j in itertools.combinations(range(n + 1), 2):
                assert X.faces[n - 1][i][X.faces[n][j][k]] == X.faces[n - 1][j - 1][X.faces[n][i][k]]
    for n in range(X.dim):
        for k in range(len(X.simplices[n])):
            for i in range(n + 1):
                s = X.degens[n][i][k]
                assert X.faces[n + 1][i][s] == k and X.faces[n + 1][i + 1][s] == k


def naive_invariants(M):
    """Invariant factors from gcds of minors."""
    rows, cols = len(M), len(M[0]) if M else 0

    def det(A):
        if len(A) == 1:
            return A[0][0]
        return sum((-1) ** j * A[0][j] * det([r[:j] + r[j + 1:] for r in A[1:]]) for j in range(len(A)))

    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        d.append(g)
    return [d[i] // d[i - 1] for i in range(1, len(d))]


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_form_against_minors(M):
    rows = [{c: v for c, v in enumerate(r) if v} for r in M]
    got = invariant_factors(rows, 3)
    assert got == naive_invariants(M)
    for a, b in zip(got, got[1:]):
        assert b % a == 0


def test_nerve_of_terminal():
    X = nerve(terminal_category(), 3)
    assert [len(s) for s in X.simplices] == [1, 1, 1, 1]
    assert all(not X.nondegenerate(n) for n in range(1, 4))


def test_nerve_of_arrow():
    X = nerve(arrow(), 2)
    assert len(X.nondegenerate(0)) == 2 and len(X.nondegenerate(1)) == 1 and not X.nondegenerate(2)


def test_nerve_of_two_chain():
    X = nerve(linear_order(2), 2)
    assert [len(X.nondegenerate(n)) for n in range(3)] == [3, 3, 1]


@given(seeds)
def test_simplicial_identities_hold(seed):
    C = fuzz.random_category(rng_from(seed))
    assert_simplicial(nerve(C, 3))


def test_pi0_examples():
    assert len(pi0(nerve(terminal_category(), 1))) == 1
    assert len(pi0(discrete_sset(["p", "q"], 1))) == 2
    with pytest.raises(TruncationTooLow):
        pi0(nerve(terminal_category(), 0))


def test_homology_examples():
    assert homology(nerve(terminal_category(), 3)).summary() == ["Z", "0", "0"]
    circle = homology(nerve(parallel_pair(), 3))
    assert circle.free[:2] == (1, 1)
    assert homology(discrete_sset("abc", 2)).free[0] == 3


def test_homology_of_projective_plane_has_torsion():
    # minimal triangulation of RP^2 on six vertices
    tris = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]
    rep = homology(from_ordered_complex(tris, 3))
    assert rep.free[:3] == (1, 0, 0)
    assert rep.torsion[1] == (2,)


def test_cylinder_of_identities():
    X = nerve(linear_order(1), 3)
    cyl = double_mapping_cylinder(identity_map(X), identity_map(X))
    assert homology(cyl).through(1) == homology(X).through(1)


def test_cylinder_of_two_points_over_points_is_circle():
    S0 = discrete_sset(["n", "s"], 3)
    pt = nerve(terminal_category(), 3)
    f = nerve_map_const(S0, pt)
    rep = homology(double_mapping_cylinder(f, nerve_map_const(S0, pt)))
    assert rep.free[:2] == (1, 1)


def nerve_map_const(X, pt):
    return SimplicialMap(X, pt, tuple(tuple(0 for _ in lv) for lv in X.simplices))


def test_cylinder_over_empty_is_disjoint_union():
    E = empty_sset(3)
    Y = nerve(linear_order(1), 3)
    Z = nerve(terminal_category(), 3)
    f = SimplicialMap(E, Y, tuple(() for _ in range(4)))
    g = SimplicialMap(E, Z, tuple(() for _ in range(4)))
    assert homology(double_mapping_cylinder(f, g)).free == homology(disjoint_union(Y, Z)).free


def test_contractibility():
    assert is_weakly_contractible_up_to(nerve(terminal_category(), 3))
    v = is_weakly_contractible_up_to(nerve(parallel_pair(), 3))
    assert not v and v.h1 == "Z"
    with pytest.raises(TruncationTooLow):
        is_weakly_contractible_up_to(nerve(terminal_category(), 1))


@given(seeds)
def test_terminal_object_gives_contractible_nerve(seed):
    rng = rng_from(seed)
    P = fuzz.random_poset(rng, rng.randint(1, 4))
    top = "top"
    elements = list(P.objects) + [top]
    Q = preorder_category(elements, lambda x, y: y == top or (x != top and bool(P.hom(x, y))))
    assert is_weakly_contractible_up_to(nerve(Q, 3))


@given(seeds)
def test_euler_characteristic_matches_betti_numbers(seed):
    P = fuzz.random_poset(rng_from(seed), 4)
    d = P.longest_chain() + 2
    X = nerve(P, d)
    rep = homology(X)
    assert not rep.truncated
    assert euler_characteristic(X) == sum((-1) ** n * r for n, r in enumerate(rep.free))


@given(seeds)
def test_homology_invariant_under_skeleton(seed):
    rng = rng_from(seed)
    span = fuzz.dwyer_poset_span(rng, preorder=True)
    C = span.B
    S, _ = skeleton(C)
    assert homology(nerve(C, 3)).through(1) == homology(nerve(S, 3)).through(1)


def test_nerve_map_of_identity_is_identity():
    C = linear_order(2)
    X = nerve(C, 3)
    m = nerve_map(identity_functor(C), X, X)
    m.check()
    assert m.levels == identity_map(X).levels
