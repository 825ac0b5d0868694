"""Slices, coslices, arrow categories and strict fibre products.

Objects of iterated constructions are nested positional tuples, so every
object remembers exactly where it came from.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .core import (
    CategoryError,
    FinCat,
    FunctorData,
    SetFunctor,
    SpanData,
    UnknownObject,
    compose_functors,
    make_category,
    opposite,
    opposite_functor,
)


class MismatchedTarget(CategoryError):
    pass


@dataclass(frozen=True, eq=False)
class CommaCat:
    cat: FinCat
    projections: dict = field(default_factory=dict)
    provenance: str = ""

    def __repr__(self):
        return f"CommaCat({self.provenance}: {self.cat!r})"


def _check_object(C: FinCat, c):
    if c not in C.object_set:
        raise UnknownObject(f"{c!r} is not an object", c)


def slice_cat(C: FinCat, c) -> CommaCat:
    """C_/c: objects (x, m: x -> c), morphisms commuting triangles."""
    _check_object(C, c)
    objects = [(C.src[m], m) for m in C.incoming(c)]
    morphisms, comp, ids = [], {}, {}
    by_pair = defaultdict(list)
    for o in objects:
        for o2 in objects:
            for u in C.hom(o[0], o2[0]):
                if C.compose[o2[1], u] == o[1]:
                    mid = (u, o, o2)
                    morphisms.append((mid, o, o2))
                    by_pair[o, o2].append(u)
    for o in objects:
        ids[o] = (C.identities[o[0]], o, o)
    for (u, o1, o2), _, _ in morphisms:
        for o3 in objects:
            for v in by_pair.get((o2, o3), ()):
                comp[(v, o2, o3), (u, o1, o2)] = (C.compose[v, u], o1, o3)
    cat = make_category(objects, morphisms, ids, comp)
    proj = FunctorData(cat, C, {o: o[0] for o in objects}, {m: m[0] for m, _, _ in morphisms})
    return CommaCat(cat, {"domain": proj}, f"slice over {c!r}")


# ``slice`` shadows the builtin inside this module only through this alias
slice = slice_cat


def coslice(C: FinCat, c) -> CommaCat:
    """C_c/, built as the slice of the opposite category and dualised back."""
    Cop = opposite(C)
    s = slice_cat(Cop, c)
    cat = opposite(s.cat)
    proj = opposite_functor(s.projections["domain"], source=cat, target=C)
    return CommaCat(cat, {"codomain": proj}, f"coslice under {c!r}")


def arrow_cat(C: FinCat) -> CommaCat:
    """Ar(C): objects are morphisms, morphisms are commuting squares."""
    objects = [m for m, _, _ in C.morphisms]
    squares = defaultdict(list)
    morphisms = []
    for m in objects:
        for m2 in objects:
            for u in C.hom(C.src[m], C.src[m2]):
                for v in C.hom(C.dst[m], C.dst[m2]):
                    if C.compose[v, m] == C.compose[m2, u]:
                        mid = (u, v, m, m2)
                        morphisms.append((mid, m, m2))
                        squares[m, m2].append((u, v))
    ids = {m: (C.identities[C.src[m]], C.identities[C.dst[m]], m, m) for m in objects}
    comp = {}
    for (u, v, m1, m2), _, _ in morphisms:
        for m3 in objects:
            for u2, v2 in squares.get((m2, m3), ()):
                comp[(u2, v2, m2, m3), (u, v, m1, m2)] = (
                    C.compose[u2, u], C.compose[v2, v], m1, m3,
                )
    cat = make_category(objects, morphisms, ids, comp)
    src = FunctorData(cat, C, {m: C.src[m] for m in objects}, {q[0]: q[0][0] for q in morphisms})
    tgt = FunctorData(cat, C, {m: C.dst[m] for m in objects}, {q[0]: q[0][1] for q in morphisms})
    return CommaCat(cat, {"source": src, "target": tgt}, "arrow category")


def identity_arrows(C: FinCat, arrows: CommaCat) -> FunctorData:
    """C -> Ar(C), x |-> id_x."""
    Ar = arrows.cat
    obj = {x: C.identities[x] for x in C.objects}
    mor = {m: (m, m, C.identities[s], C.identities[t]) for m, s, t in C.morphisms}
    return FunctorData(C, Ar, obj, mor)


def pullback_cat(F: FunctorData, G: FunctorData) -> CommaCat:
    """Strict pullback X ×_Z Y of F: X -> Z and G: Y -> Z.

    Every leg pulled back along in this package is a slice or coslice
    projection (or a pullback of one), and those are isofibrations, so the
    strict pullback already has the correct homotopy type.
    """
    if not (F.target is G.target or F.target == G.target):
        raise MismatchedTarget("pullback legs have different targets")
    X, Y = F.source, G.source
    y_over = defaultdict(list)
    for y in Y.objects:
        y_over[G.obj_map[y]].append(y)
    objects = [(x, y) for x in X.objects for y in y_over.get(F.obj_map[x], ())]
    ym_over = defaultdict(list)
    for n, _, _ in Y.morphisms:
        ym_over[G.mor_map[n]].append(n)
    morphisms = []
    out = defaultdict(list)
    for m, s, t in X.morphisms:
        for n in ym_over.get(F.mor_map[m], ()):
            mid = (m, n)
            src = (s, Y.src[n])
            morphisms.append((mid, src, (t, Y.dst[n])))
            out[src].append(mid)
    ids = {(x, y): (X.identities[x], Y.identities[y]) for x, y in objects}
    comp = {}
    for (m, n), _, tgt in morphisms:
        for m2, n2 in out.get(tgt, ()):
            comp[(m2, n2), (m, n)] = (X.compose[m2, m], Y.compose[n2, n])
    cat = make_category(objects, morphisms, ids, comp)
    p1 = FunctorData(cat, X, {o: o[0] for o in objects}, {q[0]: q[0][0] for q in morphisms})
    p2 = FunctorData(cat, Y, {o: o[1] for o in objects}, {q[0]: q[0][1] for q in morphisms})
    return CommaCat(cat, {"left": p1, "right": p2}, "strict pullback")


def pullback_lift(P: CommaCat, F1: FunctorData, F2: FunctorData) -> FunctorData:
    """The functor into a pullback induced by a commuting cone (F1, F2)."""
    cat = P.cat
    obj = {x: (F1.obj_map[x], F2.obj_map[x]) for x in F1.source.objects}
    mor = {m: (F1.mor_map[m], F2.mor_map[m]) for m, _, _ in F1.source.morphisms}
    for x, o in obj.items():
        if o not in cat.object_set:
            raise MismatchedTarget(f"cone does not commute at {x!r}", x)
    for m, q in mor.items():
        if q not in cat.src:
            raise MismatchedTarget(f"cone does not commute at {m!r}", m)
    return FunctorData(F1.source, cat, obj, mor)


def comma_triple(span: SpanData, b, c, orientation: str = "BC") -> CommaCat:
    """B_b/ ×_B A ×_C C_/c (``"BC"``) or C_c/ ×_C A ×_B B_/b (``"CB"``).

    Objects are ``(((x, phi), a), (y, psi))`` with ``phi`` leaving the first
    named object and ``psi`` arriving at the second.
    """
    f, g = span.left, span.right
    if orientation == "BC":
        first, first_leg, start = span.B, f, b
        second, second_leg, end = span.C, g, c
    elif orientation == "CB":
        first, first_leg, start = span.C, g, c
        second, second_leg, end = span.B, f, b
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    under = coslice(first, start)
    P1 = pullback_cat(under.projections["codomain"], first_leg)
    over = slice_cat(second, end)
    leg = compose_functors(second_leg, P1.projections["right"])
    P2 = pullback_cat(leg, over.projections["domain"])
    to_a = compose_functors(P1.projections["right"], P2.projections["left"])
    projections = {
        "under": compose_functors(P1.projections["left"], P2.projections["left"]),
        "middle": to_a,
        "over": P2.projections["right"],
    }
    return CommaCat(P2.cat, projections, f"factorizations {orientation} from {start!r} to {end!r}")


def triple_parts(obj) -> tuple:
    """(phi, a, psi) from an object of :func:`comma_triple` or the first
    category of :func:`fourth_comma`."""
    ((_, phi), a), (_, psi) = obj
    return phi, a, psi


@dataclass(frozen=True, eq=False)
class FourthComma:
    top: CommaCat  # B_b0/ ×_B A ×_B B_/b1
    bottom: CommaCat  # B_b0/ ×_B A ×_C Ar(C) ×_C A ×_B B_/b1
    comparison: FunctorData  # a |-> (a, id_{g a}, a)


def fourth_parts(obj) -> tuple:
    """(phi, a, gamma, a2, psi) from an object of the second fourth comma."""
    (((((_, phi), a), gamma), a2), (_, psi)) = obj
    return phi, a, gamma, a2, psi


def fourth_comma(span: SpanData, b0, b1) -> FourthComma:
    f, g = span.left, span.right
    B, C = span.B, span.C
    under = coslice(B, b0)
    over = slice_cat(B, b1)
    Q1 = pullback_cat(under.projections["codomain"], f)
    top = pullback_cat(compose_functors(f, Q1.projections["right"]), over.projections["domain"])

    arrows = arrow_cat(C)
    Q2 = pullback_cat(compose_functors(g, Q1.projections["right"]), arrows.projections["source"])
    Q3 = pullback_cat(compose_functors(arrows.projections["target"], Q2.projections["right"]), g)
    bottom = pullback_cat(compose_functors(f, Q3.projections["right"]), over.projections["domain"])

    to_q1 = top.projections["left"]
    to_a = compose_functors(Q1.projections["right"], to_q1)
    unit = compose_functors(identity_arrows(C, arrows), compose_functors(g, to_a))
    to_q2 = pullback_lift(Q2, to_q1, unit)
    to_q3 = pullback_lift(Q3, to_q2, to_a)
    comparison = pullback_lift(bottom, to_q3, top.projections["right"])

    top_cc = CommaCat(top.cat, {"middle": to_a}, f"factorizations through A from {b0!r} to {b1!r}")
    bottom_cc = CommaCat(bottom.cat, {}, f"zigzags through Ar(C) from {b0!r} to {b1!r}")
    return FourthComma(top_cc, bottom_cc, comparison)


def grothendieck(F: SetFunctor) -> CommaCat:
    """Category of elements: objects (c, x) with x in F(c)."""
    C = F.source
    objects = [(c, x) for c in C.objects for x in F.sets[c]]
    morphisms = [((m, x), (s, x), (t, F.maps[m][x])) for m, s, t in C.morphisms for x in F.sets[s]]
    ids = {(c, x): (C.identities[c], x) for c, x in objects}
    comp = {}
    for (g, f), h in C.compose.items():
        for x in F.sets[C.src[f]]:
            comp[(g, F.maps[f][x]), (f, x)] = (h, x)
    cat = make_category(objects, morphisms, ids, comp)
    proj = FunctorData(cat, C, {o: o[0] for o in objects}, {q[0]: q[0][0] for q in morphisms})
    return CommaCat(cat, {"base": proj}, "category of elements")
