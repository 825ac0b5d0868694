"""Random finite categories, functors and spans for property suites."""
from __future__ import annotations

import random
from itertools import product as iproduct

from .core import (
    FinCat,
    FunctorData,
    SpanData,
    full_subcategory,
    inclusion_functor,
    make_category,
    preorder_category,
    validate_functor,
)


def _closure(n: int, rel: set) -> set:
    rel = set(rel)
    for k in range(n):
        for i in range(n):
            if (i, k) in rel:
                for j in range(n):
                    if (k, j) in rel:
                        rel.add((i, j))
    return rel


def random_order(rng: random.Random, n: int, density: float = 0.4) -> set:
    """A random strict partial order on range(n), as a set of pairs i < j."""
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    return _closure(n, rel)


def random_poset(rng: random.Random, n: int, prefix: str = "", density: float = 0.4) -> FinCat:
    names = [f"{prefix}{i}" for i in range(n)]
    rel = random_order(rng, n, density)
    pos = {x: i for i, x in enumerate(names)}
    return preorder_category(names, lambda x, y: (pos[x], pos[y]) in rel)


def _leq_of(P: FinCat):
    rel = {(s, t) for _, s, t in P.morphisms}
    return lambda x, y: (x, y) in rel


def random_monotone(rng: random.Random, P: FinCat, Q: FinCat) -> dict:
    """A random order-preserving object map between two preorders."""
    le_p, le_q = _leq_of(P), _leq_of(Q)
    order = list(P.objects)
    assign = {}

    def go(i):
        if i == len(order):
            return True
        x = order[i]
        opts = list(Q.objects)
        rng.shuffle(opts)
        for y in opts:
            if all(
                (not le_p(z, x) or le_q(assign[z], y)) and (not le_p(x, z) or le_q(y, assign[z]))
                for z in order[:i]
            ):
                assign[x] = y
                if go(i + 1):
                    return True
        assign.pop(x, None)
        return False

    if not go(0):
        raise AssertionError("no monotone map found")  # constant maps always exist
    return assign


def preorder_functor(P: FinCat, Q: FinCat, obj: dict) -> FunctorData:
    mor = {}
    for m, s, t in P.morphisms:
        (hit,) = Q.hom(obj[s], obj[t])[:1] or (None,)
        mor[m] = hit
    return validate_functor({"obj_map": obj, "mor_map": mor}, P, Q)


def _inflate(names: list, leq, rng: random.Random, chance: float, tag: str = "~"):
    """Duplicate some elements into isomorphic copies."""
    base_of = {}
    out = []
    for x in names:
        out.append(x)
        base_of[x] = x
        if rng.random() < chance:
            twin = f"{x}{tag}"
            out.append(twin)
            base_of[twin] = x
    return out, base_of, (lambda a, b: leq(base_of[a], base_of[b]))


def dwyer_poset_span(rng: random.Random, max_objects: int = 5, preorder: bool = False) -> SpanData:
    """A span B <- A -> C with A ⊂ B a Dwyer inclusion of posets.

    B adds elements b above a chosen R(b) in A (or above nothing), so the
    comma over b is the down-set of R(b) and has R(b) as terminal object.
    With ``preorder`` some elements get isomorphic twins.
    """
    n_a = rng.randint(0, min(3, max_objects - 1))
    n_new = rng.randint(1, max_objects - n_a) if max_objects > n_a else 0
    n_new = min(n_new, 2 + (n_a == 0))
    a_rel = random_order(rng, n_a)
    a_names = [str(i) for i in range(n_a)]
    a_leq = lambda x, y: x == y or (int(x), int(y)) in a_rel  # noqa: E731

    new = [f"b{i}" for i in range(n_new)]
    R = {b: (rng.choice(a_names) if a_names and rng.random() < 0.8 else None) for b in new}
    edges = set()
    for i in range(n_new):
        for j in range(i + 1, n_new):
            ri, rj = R[new[i]], R[new[j]]
            ok = ri is None or (rj is not None and a_leq(ri, rj))
            if ok and rng.random() < 0.5:
                edges.add((i, j))
    edges = _closure(n_new, edges)

    def b_leq(x, y):
        if x == y:
            return True
        if x in R and y in R:
            return (new.index(x), new.index(y)) in edges
        if x in R:
            return False
        if y in R:
            return R[y] is not None and a_leq(x, R[y])
        return a_leq(x, y)

    b_names = a_names + new
    chance = 0.3 if preorder else 0.0
    a_all, a_base, a_leq2 = _inflate(a_names, a_leq, rng, chance)
    extra = [x for x in b_names if x not in a_names]
    ex_all, ex_base, _ = _inflate(extra, lambda x, y: True, rng, chance)
    base = {**a_base, **ex_base}
    B = preorder_category(a_all + ex_all, lambda x, y: b_leq(base[x], base[y]))
    A, _ = full_subcategory(B, a_all)

    n_c = rng.randint(1, max_objects)
    c_rel = random_order(rng, n_c)
    c_names = [f"c{i}" for i in range(n_c)]
    c_leq = lambda x, y: x == y or (int(x[1:]), int(y[1:])) in c_rel  # noqa: E731
    c_all, c_base, c_leq2 = _inflate(c_names, c_leq, rng, chance / 2)
    C = preorder_category(c_all, c_leq2)
    return SpanData(inclusion_functor(A, B), preorder_functor(A, C, random_monotone(rng, A, C)))


# --------------------------------------------------- general categories


def concrete_category(rng: random.Random, n_objects: int = 2, n_generators: int = 3, max_set: int = 3,
                      max_morphisms: int = 24) -> FinCat:
    """Closure of random functions between small sets under composition."""
    sizes = [rng.randint(1, max_set) for _ in range(n_objects)]
    funcs = {(x, x, tuple(range(sizes[x]))) for x in range(n_objects)}
    for _ in range(n_generators):
        s, t = rng.randrange(n_objects), rng.randrange(n_objects)
        funcs.add((s, t, tuple(rng.randrange(sizes[t]) for _ in range(sizes[s]))))
    changed = True
    while changed:
        changed = False
        for f in list(funcs):
            for g in list(funcs):
                if f[1] == g[0]:
                    h = (f[0], g[1], tuple(g[2][v] for v in f[2]))
                    if h not in funcs:
                        funcs.add(h)
                        changed = True
        if len(funcs) > max_morphisms:
            return concrete_category(rng, n_objects, max(0, n_generators - 1), max_set, max_morphisms)
    order = sorted(funcs)
    name = {f: f"m{i}" for i, f in enumerate(order)}
    objects = [f"x{i}" for i in range(n_objects)]
    morphisms = [(name[f], objects[f[0]], objects[f[1]]) for f in order]
    identities = {objects[x]: name[(x, x, tuple(range(sizes[x])))] for x in range(n_objects)}
    compose = {}
    for f in order:
        for g in order:
            if f[1] == g[0]:
                compose[name[g], name[f]] = name[(f[0], g[1], tuple(g[2][v] for v in f[2]))]
    return make_category(objects, morphisms, identities, compose)


def random_category(rng: random.Random, max_objects: int = 3) -> FinCat:
    """Either a random poset or a random concrete category."""
    if rng.random() < 0.5:
        return random_poset(rng, rng.randint(1, max_objects + 1))
    return concrete_category(rng, rng.randint(1, max_objects), rng.randint(0, 3), rng.randint(1, 3))


def chain_functor(rng: random.Random, A: FinCat, C: FinCat, chain: list) -> FunctorData:
    """Functor from the linear order ``chain`` ⊂ A to C along random steps."""
    objs = [rng.choice(C.objects)]
    steps = []
    for _ in chain[1:]:
        m = rng.choice(C.outgoing(objs[-1]))
        steps.append(m)
        objs.append(C.dst[m])
    pos = {x: i for i, x in enumerate(chain)}
    obj = {x: objs[pos[x]] for x in chain}
    mor = {}
    for m, s, t in A.morphisms:
        i, j = pos[s], pos[t]
        mor[m] = C.comp_path(steps[i:j]) if j > i else C.identities[obj[s]]
    return validate_functor({"obj_map": obj, "mor_map": mor}, A, C)


def dwyer_general_span(rng: random.Random, max_objects: int = 5) -> SpanData:
    """Dwyer poset inclusion A ⊂ B with A a chain, mapped into a random
    concrete category C."""
    n_a = rng.randint(0, 3)
    a_names = [str(i) for i in range(n_a)]
    n_new = rng.randint(1, max(1, min(2, max_objects - n_a)))
    new = [f"b{i}" for i in range(n_new)]
    R = {b: (rng.choice(a_names) if a_names and rng.random() < 0.8 else None) for b in new}
    link = n_new == 2 and (R[new[0]] is None or (R[new[1]] is not None and int(R[new[0]]) <= int(R[new[1]])))
    link = link and rng.random() < 0.5

    def leq(x, y):
        if x == y:
            return True
        if x in R and y in R:
            return link and (x, y) == (new[0], new[1])
        if x in R:
            return False
        if y in R:
            return R[y] is not None and int(x) <= int(R[y])
        return int(x) <= int(y)

    B = preorder_category(a_names + new, leq)
    A, _ = full_subcategory(B, a_names)
    C = concrete_category(rng, rng.randint(1, 3), rng.randint(0, 3), rng.randint(1, 2), max_morphisms=16)
    return SpanData(inclusion_functor(A, B), chain_functor(rng, A, C, a_names))


def dwyer_span(rng: random.Random, max_objects: int = 5) -> SpanData:
    if rng.random() < 0.7:
        return dwyer_poset_span(rng, max_objects)
    return dwyer_general_span(rng, max_objects)


def identity_span(C: FinCat) -> SpanData:
    i = inclusion_functor(C, C)
    return SpanData(i, i)


def down_set(rng: random.Random, P: FinCat) -> list:
    """A random downward-closed subset of a poset."""
    le = _leq_of(P)
    tops = [x for x in P.objects if rng.random() < 0.4]
    return [x for x in P.objects if any(le(x, t) for t in tops)]


def ff_span(rng: random.Random, max_objects: int = 4) -> SpanData:
    """Full subposet inclusion A ⊂ B with a monotone map of A into C."""
    B = random_poset(rng, rng.randint(1, max_objects))
    keep = [x for x in B.objects if rng.random() < 0.5]
    A, _ = full_subcategory(B, keep)
    C = random_poset(rng, rng.randint(1, max_objects), prefix="c")
    return SpanData(inclusion_functor(A, B), preorder_functor(A, C, random_monotone(rng, A, C)))


# ------------------------------------------------------- Reedy fixtures


def free_category(objects: list, edges: list) -> FinCat:
    """Free category on a finite acyclic graph; morphisms are paths."""
    out = {x: [] for x in objects}
    for name, s, t in edges:
        out[s].append((name, t))
    paths = []

    def walk(start, at, acc):
        paths.append((tuple(acc), start, at))
        for name, t in out[at]:
            walk(start, t, acc + [name])

    for x in objects:
        walk(x, x, [])

    def pid(p, s):
        return ".".join(p) if p else f"id_{s}"

    morphisms = [(pid(p, s), s, t) for p, s, t in paths]
    by_end = {}
    for p, s, t in paths:
        by_end.setdefault(s, []).append((p, t))
    compose = {}
    for p, s, t in paths:
        for q, u in by_end[t]:
            compose[pid(q, t), pid(p, s)] = pid(p + q, s)
    return make_category(objects, morphisms, {x: f"id_{x}" for x in objects}, compose)


def two_level_category(rng: random.Random, max_nonidentity: int = 4) -> tuple[FinCat, list]:
    """Random direct category with degree-0 objects a* and degree-1 objects c*.

    Returns the category and its degree-0 objects.
    """
    while True:
        n_a = rng.randint(1, 2)
        n_c = rng.randint(1, 4 - n_a)
        a_objs = [f"a{i}" for i in range(n_a)]
        c_objs = [f"c{i}" for i in range(n_c)]
        edges = []
        for a, c in iproduct(a_objs, c_objs):
            for k in range(rng.randint(0, 2)):
                edges.append((f"{a}{c}_{k}", a, c))
        for i in range(n_c):
            for j in range(i + 1, n_c):
                if rng.random() < 0.3:
                    edges.append((f"{c_objs[i]}{c_objs[j]}", c_objs[i], c_objs[j]))
        C = free_category(a_objs + c_objs, edges)
        if len(C.nonidentity) <= max_nonidentity:
            return C, a_objs
