"""Explicit pushouts along Dwyer functors, mapping-space reports, and
checks of the pushout squares built from them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .comma import CommaCat, comma_triple, fourth_comma, fourth_parts, triple_parts
from .core import (
    CategoryError,
    DwyerWitness,
    FinCat,
    FunctorData,
    NotSieve,
    SetFunctor,
    SpanData,
    Verdict,
    compose_functors,
    discrete,
    essential_image,
    full_subcategory,
    identity_functor,
    inclusion_functor,
    is_dwyer,
    is_fully_faithful,
    is_sieve,
    make_category,
    opposite,
    opposite_functor,
    precompose,
    product,
    relabel,
    validate_functor,
)
from .kan import left_kan
from .necklace import HomClasses, PushoutOracle
from .sset import (
    DEFAULT_DIM,
    HomologyReport,
    SimplicialMap,
    discrete_sset,
    double_mapping_cylinder,
    homology,
    nerve,
    nerve_map,
    pi0,
)

DEFAULT_WORD_BOUND = 8


class OracleDisagreement(RuntimeError):
    def __init__(self, message: str, pair: Any = None):
        super().__init__(message)
        self.pair = pair


class NotCertifiable(ValueError):
    pass


class NotStrict(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DwyerPushout:
    """The pushout D of B <- A -> C along a Dwyer left leg.

    Objects of D are ``("C", c)`` and ``("B", b)`` for b outside the
    essential image of A; morphisms are ``("C", m)``, ``("B", m)`` and
    ``("X", psi, y)`` for psi: c -> g(Ry) in C, read as a map c -> y.
    """

    span: SpanData
    D: FinCat
    fbar: FunctorData
    gbar: FunctorData
    witness: DwyerWitness
    provenance: dict
    strict_square: bool
    unchecked_pairs: tuple = ()

    def word(self, m) -> tuple:
        """The word in B- and C-letters that a morphism of D stands for."""
        B, C = self.span.B, self.span.C
        kind = m[0]
        if kind == "C":
            return () if C.is_identity(m[1]) else (("C", m[1]),)
        if kind == "B":
            return () if B.is_identity(m[1]) else (("B", m[1]),)
        _, psi, y = m
        eps = self.witness.counit(y)
        out = []
        if not C.is_identity(psi):
            out.append(("C", psi))
        if not B.is_identity(eps):
            out.append(("B", eps))
        return tuple(out)

    def named(self) -> tuple[FinCat, dict, dict]:
        """D with readable string ids, plus the object and morphism renamings."""
        taken = set()

        def fresh(base: str) -> str:
            name = base
            while name in taken:
                name += "'"
            taken.add(name)
            return name

        onames, mnames = {}, {}
        for x in self.D.objects:
            if x[0] == "C":
                onames[x] = fresh(str(x[1]))
        for x in self.D.objects:
            if x[0] == "B":
                onames[x] = fresh(str(x[1]))
        taken = set()
        for m, _, _ in self.D.morphisms:
            if m[0] == "C":
                mnames[m] = fresh(str(m[1]))
        for m, _, _ in self.D.morphisms:
            if m[0] == "B":
                mnames[m] = fresh(str(m[1]))
        for m, _, _ in self.D.morphisms:
            if m[0] == "X":
                mnames[m] = fresh(";".join(str(letter[1]) for letter in self.word(m)))
        return relabel(self.D, onames, mnames), onames, mnames


def dwyer_pushout(span: SpanData, word_bound: int | None = DEFAULT_WORD_BOUND) -> DwyerPushout:
    """Build the pushout along a Dwyer left leg and check it.

    With ``word_bound`` set, every hom-set is compared with the word oracle;
    pairs where the oracle has not stabilised are listed in
    ``unchecked_pairs`` rather than trusted.
    """
    f, g = span.left, span.right
    A, B, C = span.A, span.B, span.C
    W = is_dwyer(f)
    ess = essential_image(f)
    outside = [b for b in B.objects if b not in ess]
    out_set = set(outside)

    objects = [("C", c) for c in C.objects] + [("B", b) for b in outside]
    morphisms = [(("C", m), ("C", s), ("C", t)) for m, s, t in C.morphisms]
    morphisms += [
        (("B", m), ("B", s), ("B", t))
        for m, s, t in B.morphisms
        if s in out_set and t in out_set
    ]
    cross = {}
    for y in outside:
        if not W.has_comma(y):
            continue
        top = g.obj_map[W.R(y)]
        for c in C.objects:
            for psi in C.hom(c, top):
                mid = ("X", psi, y)
                morphisms.append((mid, ("C", c), ("B", y)))
                cross.setdefault(c, []).append(mid)
    identities = {("C", c): ("C", C.identities[c]) for c in C.objects}
    identities.update({("B", b): ("B", B.identities[b]) for b in outside})

    lifted = {}
    for m, s, t in B.morphisms:
        if W.has_comma(s):
            lifted[m] = W.transport(m)  # uniqueness re-verified inside

    compose = {}
    for (q, p), r in C.compose.items():
        compose[("C", q), ("C", p)] = ("C", r)
    for (q, p), r in B.compose.items():
        if B.src[p] in out_set and B.dst[q] in out_set and B.dst[p] in out_set:
            compose[("B", q), ("B", p)] = ("B", r)
    for c, mids in cross.items():
        for mid in mids:
            _, psi, y = mid
            for u in C.incoming(c):
                compose[mid, ("C", u)] = ("X", C.compose[psi, u], y)
            for beta in B.outgoing(y):
                y2 = B.dst[beta]
                if y2 not in out_set:
                    continue
                step = g.mor_map[lifted[beta]]
                compose[("B", beta), mid] = ("X", C.compose[step, psi], y2)

    D = make_category(objects, morphisms, identities, compose)
    provenance = {m: {"C": "C", "B": "B", "X": "cross"}[m[0]] for m, _, _ in D.morphisms}

    fbar = validate_functor(
        {
            "obj_map": {c: ("C", c) for c in C.objects},
            "mor_map": {m: ("C", m) for m, _, _ in C.morphisms},
        },
        C,
        D,
    )
    g_obj, g_mor = {}, {}
    for b in B.objects:
        g_obj[b] = ("B", b) if b in out_set else ("C", g.obj_map[W.R(b)])
    for m, s, t in B.morphisms:
        if s in out_set:
            g_mor[m] = ("B", m)
        elif t in out_set:
            g_mor[m] = ("X", g.mor_map[lifted[m]], t)
        else:
            g_mor[m] = ("C", g.mor_map[lifted[m]])
    gbar = validate_functor({"obj_map": g_obj, "mor_map": g_mor}, B, D)

    strict = all(gbar.obj_map[f.obj_map[a]] == fbar.obj_map[g.obj_map[a]] for a in A.objects) and all(
        gbar.mor_map[f.mor_map[m]] == fbar.mor_map[g.mor_map[m]] for m, _, _ in A.morphisms
    )
    ff = is_fully_faithful(fbar)
    if not ff:
        raise CategoryError(f"pushout leg from C is {ff.reason} on {ff.witness!r}", ff.witness)
    covered = set(fbar.image_objects) | set(gbar.image_objects)
    assert covered == set(D.objects), "objects of D outside both legs"

    dp = DwyerPushout(span, D, fbar, gbar, W, provenance, strict)
    if word_bound is None:
        return dp
    unchecked = cross_check(dp, word_bound)
    return DwyerPushout(span, D, fbar, gbar, W, provenance, strict, tuple(unchecked))


def cross_check(dp: DwyerPushout, word_bound: int, oracle: PushoutOracle | None = None) -> list:
    """Compare every hom-set of D with the oracle; raise on disagreement.

    Returns the pairs the oracle could not settle at this bound.
    """
    oracle = oracle or PushoutOracle(dp.span, word_bound)
    D = dp.D
    unchecked = []
    for x in D.objects:
        for y in D.objects:
            hc, look = oracle.class_map(x, y)
            if not hc.stabilized:
                unchecked.append((x, y))
                continue
            homs = D.hom(x, y)
            hit = []
            for m in homs:
                cls = look.get(oracle.normal_form(dp.word(m)))
                if cls is None:
                    raise OracleDisagreement(f"morphism {m!r} has no oracle class", (x, y))
                hit.append(cls)
            if len(set(hit)) != len(hit) or len(hit) != len(hc.classes):
                raise OracleDisagreement(
                    f"Hom{(x, y)} has {len(homs)} morphisms, oracle has {len(hc.classes)} classes",
                    (x, y),
                )
    return unchecked


def induced_functor(dp: DwyerPushout, u: FunctorData, v: FunctorData) -> FunctorData:
    """D -> Z from a cocone u: B -> Z, v: C -> Z with u∘f = v∘g on the nose."""
    f, g = dp.span.left, dp.span.right
    Z = u.target
    A = dp.span.A
    for a in A.objects:
        if u.obj_map[f.obj_map[a]] != v.obj_map[g.obj_map[a]]:
            raise NotStrict(f"cocone does not commute at {a!r}")
    for m, _, _ in A.morphisms:
        if u.mor_map[f.mor_map[m]] != v.mor_map[g.mor_map[m]]:
            raise NotStrict(f"cocone does not commute at {m!r}")
    obj, mor = {}, {}
    for x in dp.D.objects:
        obj[x] = v.obj_map[x[1]] if x[0] == "C" else u.obj_map[x[1]]
    for m, _, _ in dp.D.morphisms:
        if m[0] == "C":
            mor[m] = v.mor_map[m[1]]
        elif m[0] == "B":
            mor[m] = u.mor_map[m[1]]
        else:
            _, psi, y = m
            mor[m] = Z.compose[u.mor_map[dp.witness.counit(y)], v.mor_map[psi]]
    return validate_functor({"obj_map": obj, "mor_map": mor}, dp.D, Z)


# ---------------------------------------------------------- map reports


@dataclass(frozen=True, eq=False)
class MapSpaceReport:
    pair: tuple
    kind: str  # "C-C", "B-C", "C-B", "B-B"
    comma: CommaCat | None
    formula_size: int | None  # |pi0| of the formula side
    formula_homology: HomologyReport | None
    oracle: HomClasses
    agreement: str  # AGREE, DISAGREE, UNKNOWN, N/A
    detail: str = ""

    def row(self) -> dict:
        return {
            "x": _show(self.pair[0]),
            "y": _show(self.pair[1]),
            "kind": self.kind,
            "formula_pi0": self.formula_size,
            "formula_homology": None if self.formula_homology is None else self.formula_homology.summary(),
            "truncated": None if self.formula_homology is None else self.formula_homology.truncated,
            "oracle_classes": len(self.oracle),
            "oracle_stable": self.oracle.stabilized,
            "agreement": self.agreement,
            "detail": self.detail,
        }


def _show(x) -> str:
    return f"{x[0]}:{x[1]}"


def _anchor(f: FunctorData, b):
    """(a, iso f(a) -> b) for b in the essential image, preferring identities."""
    B = f.target
    best = None
    for a in f.source.objects:
        for m in B.hom(f.obj_map[a], b):
            if B.is_iso(m):
                if B.is_identity(m):
                    return a, m
                best = best or (a, m)
    return best


def _compare_components(cat: FinCat, words: list, oracle: PushoutOracle, x, y, hc: HomClasses, dim: int):
    """Check that objects -> oracle classes is a bijection on components."""
    X = nerve(cat, dim)
    comps = pi0(X)
    hc, look = oracle.class_map(x, y)
    comp_class = {}
    for i, w in enumerate(words):
        cls = look.get(oracle.normal_form(w))
        if cls is None:
            return False, f"object {cat.objects[i]!r} has no oracle class", X
        blk = comps.of_vertex[i]
        if comp_class.setdefault(blk, cls) != cls:
            return False, f"component {blk} meets two oracle classes", X
    if len(set(comp_class.values())) != len(comp_class):
        return False, "two components land in one oracle class", X
    if len(comp_class) != len(hc.classes):
        return False, f"{len(comp_class)} components but {len(hc.classes)} classes", X
    return True, "", X


def mapspace_report(
    span: SpanData,
    pair: tuple,
    dim: int = DEFAULT_DIM,
    word_bound: int = DEFAULT_WORD_BOUND,
    oracle: PushoutOracle | None = None,
) -> MapSpaceReport:
    """Formula side versus oracle for one pair of pushout objects.

    ``pair`` is ``(x, y)`` with each entry ``("B", b)`` or ``("C", c)``.
    """
    f, g = span.left, span.right
    B, C = span.B, span.C
    ff = is_fully_faithful(f)
    if not ff:
        raise CategoryError(f"left leg is {ff.reason} on {ff.witness!r}", ff.witness)
    oracle = oracle or PushoutOracle(span, word_bound)
    x, y = pair
    hc = oracle.hom_classes(x, y)
    kind = f"{x[0]}-{y[0]}"
    comma = None
    words = None
    if kind == "C-C":
        homs = C.hom(x[1], y[1])
        cat = discrete(homs)
        words = [(("C", m),) for m in homs]
    elif kind == "B-C":
        comma = comma_triple(span, x[1], y[1], "BC")
        cat = comma.cat
        words = [(("B", triple_parts(o)[0]), ("C", triple_parts(o)[2])) for o in cat.objects]
    elif kind == "C-B":
        comma = comma_triple(span, y[1], x[1], "CB")
        cat = comma.cat
        words = [(("C", triple_parts(o)[0]), ("B", triple_parts(o)[2])) for o in cat.objects]
    else:
        b0, b1 = x[1], y[1]
        sv = is_sieve(f)
        anchor = _anchor(f, b0)
        if not sv:
            cat = None
        elif anchor is None:
            homs = B.hom(b0, b1)
            cat = discrete(homs)
            words = [(("B", m),) for m in homs]
        else:
            a0, iso = anchor
            comma = comma_triple(span, b1, g.obj_map[a0], "CB")
            cat = comma.cat
            lead = () if B.is_identity(iso) else (("B", B.inverses[iso]),)
            words = [
                lead + (("C", triple_parts(o)[0]), ("B", triple_parts(o)[2])) for o in cat.objects
            ]
    if cat is None:
        return MapSpaceReport(pair, kind, None, None, None, hc, "N/A", "left leg is not a sieve")
    words = [tuple(l for l in w if not (B if l[0] == "B" else C).is_identity(l[1])) for w in words]
    ok, why, X = _compare_components(cat, words, oracle, x, y, hc, max(dim, 1))
    rep = homology(X) if X.dim >= 1 else None
    size = len(pi0(X))
    if not hc.stabilized:
        agreement = "UNKNOWN"
        why = "oracle did not stabilise"
    else:
        agreement = "AGREE" if ok else "DISAGREE"
    return MapSpaceReport(pair, kind, comma, size, rep, hc, agreement, why)


def pushout_objects(span: SpanData) -> list:
    return [("B", b) for b in span.B.objects] + [("C", c) for c in span.C.objects]


# ------------------------------------------------------------- squares


@dataclass(frozen=True)
class SquareVerdict:
    name: str
    status: str  # CONSISTENT / INCONSISTENT
    truncation: int
    corners: dict
    cylinder: tuple
    expected: tuple
    pi0_bijection: bool | None
    detail: str = ""

    def __bool__(self):
        return self.status == "CONSISTENT"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "truncation": self.truncation,
            "compared_degrees": f"0..{max(self.truncation - 2, 0)}",
            "corners": self.corners,
            "cylinder_homology": list(self.cylinder),
            "expected_homology": list(self.expected),
            "pi0_bijection": self.pi0_bijection,
            "detail": self.detail,
        }


def _discrete_homology(n: int, dim: int) -> HomologyReport:
    return homology(discrete_sset(range(n), dim))


def _constant_map(X, Y, assign) -> SimplicialMap:
    """Map between simplicial sets given on vertices, for targets that are
    discrete: every simplex goes to the constant simplex on its vertex image."""
    levels = []
    for n in range(X.dim + 1):
        levels.append(tuple(Y.index[n][(assign(X.apply(n, k, (0,))), n)] for k in range(len(X.simplices[n]))))
    return SimplicialMap(X, Y, tuple(levels))


def _judge(name, dim, corners, cyl, expected: HomologyReport, vertex_value, target_size, detail=""):
    H = homology(cyl)
    top = max(dim - 2, 0)
    same = H.through(top) == expected.through(top)
    pi_ok = None
    if vertex_value is not None:
        comps = pi0(cyl)
        seen = {}
        pi_ok = True
        for v, lab in enumerate(cyl.simplices[0]):
            val = vertex_value(lab)
            if seen.setdefault(comps.of_vertex[v], val) != val:
                pi_ok = False
        if pi_ok:
            vals = list(seen.values())
            pi_ok = len(set(vals)) == len(vals) == target_size
    status = "CONSISTENT" if same and pi_ok is not False else "INCONSISTENT"
    return SquareVerdict(
        name, status, dim, corners, tuple(H.summary()), tuple(expected.summary()), pi_ok, detail
    )


def verify_fourth_square(span: SpanData, b0, b1, truncation: int = DEFAULT_DIM, dp: DwyerPushout | None = None) -> SquareVerdict:
    """Homotopy pushout of the fourth-mapping-space square versus Map_D.

    The double mapping cylinder of top-left -> top-right (composition) and
    top-left -> bottom-left is compared in homology with the independently
    known mapping space, through degree ``truncation - 2``.
    """
    f, g = span.left, span.right
    B = span.B
    ff = is_fully_faithful(f)
    if not ff:
        raise NotCertifiable(f"left leg is {ff.reason}")
    d = truncation
    fc = fourth_comma(span, b0, b1)
    top, bottom = fc.top.cat, fc.bottom.cat
    homs = B.hom(b0, b1)
    disc = discrete(homs)
    comp_obj = {o: B.compose[triple_parts(o)[2], triple_parts(o)[0]] for o in top.objects}
    to_disc = validate_functor(
        {
            "obj_map": comp_obj,
            "mor_map": {m: disc.identities[comp_obj[s]] for m, s, _ in top.morphisms},
        },
        top,
        disc,
    )
    NT, NB, NZ = nerve(top, d), nerve(bottom, d), nerve(disc, d)
    cyl = double_mapping_cylinder(nerve_map(fc.comparison, NT, NB), nerve_map(to_disc, NT, NZ))
    corners = {
        "top_left": len(top.objects),
        "bottom_left": len(bottom.objects),
        "top_right": len(homs),
    }

    W = None
    try:
        W = is_dwyer(f)
    except CategoryError:
        pass
    if W is not None:
        dp = dp or dwyer_pushout(span, word_bound=None)
        D = dp.D
        x0, x1 = dp.gbar.obj_map[b0], dp.gbar.obj_map[b1]
        target = D.hom(x0, x1)
        corners["bottom_right"] = len(target)
        expected = _discrete_homology(len(target), d)
        if dp.strict_square:
            G, Fb = dp.gbar.mor_map, dp.fbar.mor_map

            def value(lab):
                side, idx = lab[0], lab[1]
                if side == "Z":
                    return G[homs[idx]]
                phi, a, gamma, a2, psi = fourth_parts(NB.simplices[0][idx])
                return D.comp_path([G[phi], Fb[gamma], G[psi]])
        else:
            value = None

        return _judge("fourth", d, corners, cyl, expected, value, len(target))

    sv = is_sieve(f)
    if not sv:
        raise NotCertifiable("left leg is neither Dwyer nor a sieve; Map_D has no independent computation")
    anchor = _anchor(f, b0)
    if anchor is None:
        expected = _discrete_homology(len(homs), d)
        corners["bottom_right"] = len(homs)
        detail = "sieve formula: source outside A"
    else:
        comma = comma_triple(span, b1, g.obj_map[anchor[0]], "CB")
        expected = homology(nerve(comma.cat, d))
        corners["bottom_right"] = f"|comma| with {len(comma.cat.objects)} objects"
        detail = "sieve formula: source inside A"
    return _judge("fourth", d, corners, cyl, expected, None, None, detail)


def _discrete_map(S: list, T: list, fn, dim: int) -> tuple:
    XS, XT = discrete_sset(range(len(S)), dim), discrete_sset(range(len(T)), dim)
    pos = {t: i for i, t in enumerate(T)}
    levels = tuple(
        tuple(XT.index[n][(pos[fn(S[lab[0]])], n)] for lab in XS.simplices[n]) for n in range(dim + 1)
    )
    return XS, XT, levels


def verify_fold_square(span: SpanData, b0, b1, truncation: int = DEFAULT_DIM, dp: DwyerPushout | None = None) -> SquareVerdict:
    """Fold square: Map_{B⊔_A B}(b0, b1) -> Map_B(b0, b1) over the same for D.

    ``b0`` is read in the left copy of B and ``b1`` in the right copy.
    """
    d = truncation
    f = span.left
    dp = dp or dwyer_pushout(span, word_bound=None)
    if not dp.strict_square:
        raise NotCertifiable("pushout square only commutes up to isomorphism")
    is_dwyer(dp.fbar)  # pushed-out Dwyer functor, verified rather than assumed
    BB = dwyer_pushout(SpanData(f, f), word_bound=None)
    DD = dwyer_pushout(SpanData(dp.fbar, dp.fbar), word_bound=None)
    if not (BB.strict_square and DD.strict_square):
        raise NotCertifiable("doubled pushout only commutes up to isomorphism")
    B, D = span.B, dp.D
    fold_B = induced_functor(BB, identity_functor(B), identity_functor(B))
    fold_D = induced_functor(DD, identity_functor(D), identity_functor(D))
    left = induced_functor(
        BB,
        compose_functors(DD.gbar, dp.gbar),
        compose_functors(DD.fbar, dp.gbar),
    )
    x0, x1 = BB.gbar.obj_map[b0], BB.fbar.obj_map[b1]
    S = list(BB.D.hom(x0, x1))
    T = list(B.hom(b0, b1))
    U = list(DD.D.hom(left.obj_map[x0], left.obj_map[x1]))
    V = list(D.hom(dp.gbar.obj_map[b0], dp.gbar.obj_map[b1]))
    for s in S:
        if fold_D.mor_map[left.mor_map[s]] != dp.gbar.mor_map[fold_B.mor_map[s]]:
            return SquareVerdict("fold", "INCONSISTENT", d, {}, (), (), None, f"square fails to commute at {s!r}")
    XS, XU, to_u = _discrete_map(S, U, lambda s: left.mor_map[s], d)
    XS2, XT, to_t = _discrete_map(S, T, lambda s: fold_B.mor_map[s], d)
    cyl = double_mapping_cylinder(SimplicialMap(XS, XU, to_u), SimplicialMap(XS, XT, to_t))
    corners = {"top_left": len(S), "top_right": len(T), "bottom_left": len(U), "bottom_right": len(V)}

    def value(lab):
        if lab[0] == "Y":
            return fold_D.mor_map[U[XU.simplices[0][lab[1]][0]]]
        return dp.gbar.mor_map[T[XT.simplices[0][lab[1]][0]]]

    return _judge("fold", d, corners, cyl, _discrete_homology(len(V), d), value, len(V))


# ------------------------------------------------------ unions of sieves


def _oracle_matches(span: SpanData, U: FinCat, word_bound: int, to_u) -> Verdict:
    """Is the oracle pushout of ``span`` isomorphic to U via ``to_u``?

    ``to_u`` sends oracle endpoints ("B", x) / ("C", x) to objects of U and
    letters to morphisms of U.
    """
    oracle = PushoutOracle(span, word_bound)
    reps = {}
    for x in [("B", b) for b in span.B.objects] + [("C", c) for c in span.C.objects]:
        reps.setdefault(oracle.endpoint(x), x)
    images = {}
    for cls, x in reps.items():
        u = to_u(x)
        if u in images.values():
            return Verdict(False, x, "two pushout objects map to one object")
        images[cls] = u
    if set(images.values()) != set(U.objects):
        return Verdict(False, None, "union has objects outside the pushout")
    for cx, x in reps.items():
        for cy, y in reps.items():
            hc = oracle.hom_classes(x, y)
            if not hc.stabilized:
                return Verdict(False, (x, y), "oracle did not stabilise")
            ux, uy = images[cx], images[cy]
            got = []
            for cls in hc.classes:
                vals = set()
                for w in cls:
                    vals.add(U.identities[ux] if not w else U.comp_path([to_u(l) for l in w]))
                if len(vals) != 1:
                    return Verdict(False, (x, y), "one word class composes to two morphisms")
                got.append(vals.pop())
            if sorted(got, key=repr) != sorted(U.hom(ux, uy), key=repr):
                return Verdict(False, (x, y), f"{len(got)} classes against {len(U.hom(ux, uy))} morphisms")
    return Verdict(True)


def sieve_union_check(C: FinCat, C0, C1, word_bound: int = DEFAULT_WORD_BOUND) -> Verdict:
    """Pushout of C0 <- C0∩C1 -> C1 against the full subcategory on C0∪C1."""
    C0, C1 = list(C0), list(C1)
    subs = []
    for part in (C0, C1):
        sub, inc = full_subcategory(C, part)
        sv = is_sieve(inc)
        if not sv:
            raise NotSieve(f"{part!r} is not a sieve", sv.witness)
        subs.append(sub)
    common = [x for x in C0 if x in set(C1)]
    A, _ = full_subcategory(C, common)
    span = SpanData(inclusion_functor(A, subs[0]), inclusion_functor(A, subs[1]))
    U, _ = full_subcategory(C, set(C0) | set(C1))

    def to_u(x):
        return x[1]

    return _oracle_matches(span, U, word_bound, to_u)


def pushout_product_check(C: FinCat, C0, D: FinCat, D0, word_bound: int = DEFAULT_WORD_BOUND) -> Verdict:
    """Pushout of C0×D <- C0×D0 -> C×D0 against its image in C×D."""
    P = product(C, D)
    C0, D0 = set(C0), set(D0)
    for x in C0:
        if x not in C.object_set:
            raise CategoryError(f"{x!r} is not an object of the first factor", x)
    for y in D0:
        if y not in D.object_set:
            raise CategoryError(f"{y!r} is not an object of the second factor", y)
    left_objs = [(x, y) for x, y in P.objects if x in C0]
    right_objs = [(x, y) for x, y in P.objects if y in D0]
    corner = [(x, y) for x, y in P.objects if x in C0 and y in D0]
    L, _ = full_subcategory(P, left_objs)
    R, _ = full_subcategory(P, right_objs)
    K, _ = full_subcategory(P, corner)
    U, _ = full_subcategory(P, set(left_objs) | set(right_objs))
    span = SpanData(inclusion_functor(K, L), inclusion_functor(K, R))
    return _oracle_matches(span, U, word_bound, lambda x: x[1])


# ---------------------------------------------------------- Beck–Chevalley


def verify_beck_chevalley(span: SpanData, F: SetFunctor, dp: DwyerPushout | None = None) -> Verdict:
    """Compare f_! g^* F with gbar^* fbar_! F for a presheaf F on C.

    ``F`` is a set-valued functor on the opposite of C.  Both sides are left
    Kan extensions of presheaves, computed as colimits over commas; the
    comparison is checked to be bijective at every object of B and natural.
    """
    f, g = span.left, span.right
    dp = dp or dwyer_pushout(span, word_bound=None)
    if not dp.strict_square:
        raise NotCertifiable("pushout square only commutes up to isomorphism")
    Aop, Bop, Cop, Dop = (opposite(X) for X in (span.A, span.B, span.C, dp.D))
    fop = opposite_functor(f, Aop, Bop)
    gop = opposite_functor(g, Aop, Cop)
    fbar_op = opposite_functor(dp.fbar, Cop, Dop)
    gbar_op = opposite_functor(dp.gbar, Bop, Dop)
    F = SetFunctor(Cop, F.sets, F.maps)
    lhs = left_kan(precompose(F, gop), fop)
    ext = left_kan(F, fbar_op)
    rhs = precompose(ext.functor, gbar_op)
    for b in span.B.objects:
        image = {}
        for cls in lhs.colimits[b].classes:
            for (a, (_, phi)), e in cls:
                tgt = ext.class_of(dp.gbar.obj_map[b], g.obj_map[a], dp.gbar.mor_map[phi], e)
                if image.setdefault(lhs.colimits[b].index[(a, (f.obj_map[a], phi)), e], tgt) != tgt:
                    return Verdict(False, b, "comparison is not well defined")
        values = list(image.values())
        if len(set(values)) != len(values):
            return Verdict(False, b, "comparison is not injective")
        if len(values) != len(rhs.sets[b]):
            return Verdict(False, b, f"{len(values)} elements against {len(rhs.sets[b])}")
    for m, s, t in Bop.morphisms:
        for i, cls in enumerate(lhs.colimits[s].classes):
            (a, (_, phi)), e = cls[0]
            via_l = lhs.functor.maps[m][i]
            (a2, (_, phi2)), e2 = lhs.colimits[t].classes[via_l][0]
            left_val = ext.class_of(dp.gbar.obj_map[t], g.obj_map[a2], dp.gbar.mor_map[phi2], e2)
            here = ext.class_of(dp.gbar.obj_map[s], g.obj_map[a], dp.gbar.mor_map[phi], e)
            if rhs.maps[m][here] != left_val:
                return Verdict(False, m, "comparison is not natural")
    return Verdict(True)
