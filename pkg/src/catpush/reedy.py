"""Reedy extensions: complementary subcategories, latching and matching
sets, reconstruction of functors from latching-matching data, and an
exhaustive check that functors out of B are the same as such data."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from itertools import product as iproduct

from .comma import coslice, pullback_cat, slice_cat, comma_triple, triple_parts
from .core import (
    CategoryError,
    FinCat,
    FunctorData,
    SetFunctor,
    SpanData,
    essential_image,
    full_subcategory,
    is_fully_faithful,
    make_category,
    NotFullyFaithful,
    validate_set_functor,
)
from .kan import Colimit, ExplosionGuard, colimit, limit, set_functor_tables, tables_to_functor
from .sset import DEFAULT_DIM, is_weakly_contractible_up_to, nerve, pi0

__all__ = [
    "ExplosionGuard",
    "find_complementary",
    "is_reedy_extension",
    "latching",
    "matching",
    "canonical_map",
    "reconstruct_functor",
    "restrict_data",
    "verify_reedy_square",
    "check_reedy_structure",
]


class IdentityFactors(CategoryError):
    pass


class CompositionEscapes(CategoryError):
    pass


class NotMono(CategoryError):
    pass


class CanonicalMapMismatch(CategoryError):
    pass


class NotNatural(CategoryError):
    pass


class RepresentativeDisagreement(CategoryError):
    pass


class NoFactorization(CategoryError):
    pass


class NotConservative(CategoryError):
    pass


class TruncationNotReedy(CategoryError):
    pass


class UnsupportedInclusion(CategoryError):
    pass


# ----------------------------------------------------- complementary part


@dataclass(frozen=True)
class PairCertificate:
    """Factorizations through A of morphisms c0 -> c1, grouped by component."""

    pair: tuple
    components: tuple  # (composite, object count, contractibility label)
    direct: tuple  # morphisms of the complementary category
    hom_size: int
    pi0_mono: bool
    contractible: bool

    @property
    def pi0_bijection(self) -> bool:
        return self.pi0_mono and len(self.components) + len(self.direct) == self.hom_size


@dataclass(frozen=True, eq=False)
class ReedyWitness:
    inclusion: FunctorData
    complement: FinCat
    complement_inclusion: FunctorData
    certificates: dict  # (c0, c1) -> PairCertificate
    truncation: int

    @property
    def factoring(self) -> frozenset:
        """Morphisms between complementary objects that factor through A."""
        out = set()
        for cert in self.certificates.values():
            out.update(comp[0] for comp in cert.components)
        return frozenset(out)


def _factorizations(inc: FunctorData, c0, c1):
    span = SpanData(inc, inc)
    return comma_triple(span, c0, c1, "BC").cat


def find_complementary(inc: FunctorData, dim: int = DEFAULT_DIM) -> ReedyWitness:
    """The subcategory of objects outside A and morphisms avoiding A.

    Checks that no identity factors through A, that avoiding morphisms are
    closed under composition, and that factorizations of one morphism form
    at most one component.  Each component is also tested for homological
    contractibility; that outcome is recorded, not raised.
    """
    ff = is_fully_faithful(inc)
    if not ff:
        raise NotFullyFaithful(f"inclusion is {ff.reason} on {ff.witness!r}", ff.witness)
    B = inc.target
    ess = essential_image(inc)
    outside = [b for b in B.objects if b not in ess]
    certs, factoring = {}, set()
    for c0 in outside:
        for c1 in outside:
            fac = _factorizations(inc, c0, c1)
            X = nerve(fac, max(dim, 2))
            comps = pi0(X)
            by_morphism = {}
            rows = []
            for blk in comps.blocks:
                objs = [fac.objects[v] for v in blk]
                phi, _, psi = triple_parts(objs[0])
                composite = B.compose[psi, phi]
                by_morphism.setdefault(composite, []).append(blk)
                sub, _ = full_subcategory(fac, objs)
                verdict = is_weakly_contractible_up_to(nerve(sub, max(dim, 2)))
                rows.append((composite, len(objs), verdict.label, bool(verdict)))
            mono = all(len(v) == 1 for v in by_morphism.values())
            if not mono:
                bad = next(m for m, v in by_morphism.items() if len(v) > 1)
                raise NotMono(f"{bad!r} has {len(by_morphism[bad])} components of factorizations", bad)
            factoring.update(by_morphism)
            hom = B.hom(c0, c1)
            direct = tuple(m for m in hom if m not in by_morphism)
            certs[c0, c1] = PairCertificate(
                (c0, c1),
                tuple(sorted(((r[0], r[1], r[2]) for r in rows), key=repr)),
                direct,
                len(hom),
                mono,
                all(r[3] for r in rows),
            )
    for c in outside:
        if B.identities[c] in factoring:
            raise IdentityFactors(f"identity of {c!r} factors through the subcategory", c)
    keep = {m for cert in certs.values() for m in cert.direct}
    for (g, f), h in B.compose.items():
        if g in keep and f in keep and h not in keep:
            raise CompositionEscapes(f"{g!r}∘{f!r} factors through the subcategory", (g, f))
    out_set = set(outside)
    morphisms = [(m, s, t) for m, s, t in B.morphisms if m in keep]
    compose = {(g, f): h for (g, f), h in B.compose.items() if g in keep and f in keep}
    Cc = make_category(outside, morphisms, {c: B.identities[c] for c in outside}, compose)
    j = FunctorData(Cc, B, {c: c for c in out_set}, {m: m for m in keep})
    return ReedyWitness(inc, Cc, j, certs, dim)


@dataclass(frozen=True)
class ReedyVerdict:
    holds: bool
    truncation: int
    witness: ReedyWitness | None = None
    failure: object = None
    reason: str = ""

    @property
    def outcome(self) -> str:
        return "HOLDS" if self.holds else "FAILS"

    def __bool__(self):
        return self.holds


def is_reedy_extension(inc: FunctorData, dim: int = DEFAULT_DIM) -> ReedyVerdict:
    """Factorizations ⊔ complementary morphisms -> Hom_B, pair by pair."""
    try:
        W = find_complementary(inc, dim)
    except (IdentityFactors, CompositionEscapes, NotMono) as exc:
        return ReedyVerdict(False, dim, None, exc.witness, f"{type(exc).__name__}: {exc}")
    for pair, cert in sorted(W.certificates.items(), key=lambda kv: repr(kv[0])):
        if not cert.pi0_bijection:
            return ReedyVerdict(False, dim, W, pair, "components do not match the hom-set")
        if not cert.contractible:
            return ReedyVerdict(False, dim, W, pair, "a factorization component has homology")
    return ReedyVerdict(True, dim, W)


# ------------------------------------------------- latching and matching


def _over_functor(F: SetFunctor, inc: FunctorData, c, comma) -> SetFunctor:
    proj = comma.projections["left"]
    return SetFunctor(
        comma.cat,
        {o: F.sets[proj.obj_map[o]] for o in comma.cat.objects},
        {m: F.maps[proj.mor_map[m]] for m, _, _ in comma.cat.morphisms},
    )


def latching(F: SetFunctor, inc: FunctorData, c) -> Colimit:
    """colim of F over A ×_B B_/c.  Elements are classes of (comma object, x)
    with comma objects written ``(a, (f a, phi))``."""
    comma = pullback_cat(inc, slice_cat(inc.target, c).projections["domain"])
    return colimit(_over_functor(F, inc, c, comma))


@dataclass(frozen=True)
class Matching:
    """lim of F over A ×_B B_c/ as compatible families indexed by ``under``."""

    under: tuple  # (a, psi: c -> f a)
    families: tuple
    index: dict

    def __len__(self):
        return len(self.families)


def matching(F: SetFunctor, inc: FunctorData, c) -> Matching:
    comma = pullback_cat(inc, coslice(inc.target, c).projections["codomain"])
    fams = limit(_over_functor(F, inc, c, comma))
    under = tuple((o[0], o[1][1]) for o in comma.cat.objects)
    fams = tuple(sorted(fams, key=repr))
    return Matching(under, fams, {x: i for i, x in enumerate(fams)})


def _preimage(inc: FunctorData) -> dict:
    return {v: m for m, v in inc.mor_map.items()}


def canonical_map(F: SetFunctor, inc: FunctorData, c, lat: Colimit | None = None, mat: Matching | None = None) -> dict:
    """Latching class number -> matching family number."""
    B = inc.target
    lat = lat or latching(F, inc, c)
    mat = mat or matching(F, inc, c)
    back = _preimage(inc)
    out = {}
    for i, cls in enumerate(lat.classes):
        for (a, (_, phi)), e in cls:
            fam = tuple(F.maps[back[B.compose[psi, phi]]][e] for _, psi in mat.under)
            k = mat.index.get(fam)
            if k is None:
                raise CanonicalMapMismatch(f"class {i} of the latching set lands outside the matching set", c)
            if out.setdefault(i, k) != k:
                raise CanonicalMapMismatch(f"canonical map is not well defined at {c!r}", c)
    return out


def _latching_step(lat_s: Colimit, lat_t: Colimit, B: FinCat, gamma) -> dict:
    out = {}
    for i, cls in enumerate(lat_s.classes):
        (a, (fa, phi)), e = cls[0]
        out[i] = lat_t.index[(a, (fa, B.compose[gamma, phi])), e]
    return out


def _matching_step(mat_s: Matching, mat_t: Matching, B: FinCat, gamma) -> dict:
    pos = {u: i for i, u in enumerate(mat_s.under)}
    out = {}
    for i, fam in enumerate(mat_s.families):
        img = tuple(fam[pos[(a, B.compose[psi, gamma])]] for a, psi in mat_t.under)
        out[i] = mat_t.index[img]
    return out


@dataclass(frozen=True, eq=False)
class ReedyData:
    """(F, G, lambda, mu) with lambda: latching -> G, mu: G -> matching."""

    F: SetFunctor
    G: SetFunctor
    lam: dict  # c -> {latching class number: element of G(c)}
    mu: dict  # c -> {element of G(c): matching family number}
    latchings: dict
    matchings: dict


def _require_supported(inc: FunctorData, W: ReedyWitness):
    if not inc.injective_on_objects:
        raise UnsupportedInclusion("inclusion identifies objects")
    missing = set(inc.target.objects) - set(inc.image_objects) - set(W.complement.objects)
    if missing:
        raise UnsupportedInclusion(
            f"objects {sorted(map(repr, missing))} are isomorphic to the subcategory but not in it",
            sorted(missing, key=repr),
        )


def _check_data(data: ReedyData, inc: FunctorData, W: ReedyWitness, alpha: dict):
    B, Cc = inc.target, W.complement
    for c in Cc.objects:
        lam, mu = data.lam[c], data.mu[c]
        lat, mat = data.latchings[c], data.matchings[c]
        G_c = set(data.G.sets[c])
        if set(lam) != set(range(len(lat))) or not set(lam.values()) <= G_c:
            raise CanonicalMapMismatch(f"no map from the latching set to G at {c!r}", c)
        if set(mu) != G_c or not set(mu.values()) <= set(range(len(mat))):
            raise CanonicalMapMismatch(f"no map from G to the matching set at {c!r}", c)
        for i in range(len(lat)):
            if mu[lam[i]] != alpha[c][i]:
                raise CanonicalMapMismatch(f"mu∘lambda differs from the canonical map at {c!r}", (c, i))
    for gamma, s, t in Cc.morphisms:
        ls = _latching_step(data.latchings[s], data.latchings[t], B, gamma)
        for i, v in data.lam[s].items():
            if data.lam[t][ls[i]] != data.G.maps[gamma][v]:
                raise NotNatural(f"lambda is not natural along {gamma!r}", gamma)
        ms = _matching_step(data.matchings[s], data.matchings[t], B, gamma)
        for x, k in data.mu[s].items():
            if data.mu[t][data.G.maps[gamma][x]] != ms[k]:
                raise NotNatural(f"mu is not natural along {gamma!r}", gamma)


def reconstruct_functor(data: ReedyData, W: ReedyWitness) -> SetFunctor:
    """The functor on B glued from (F, G, lambda, mu)."""
    inc = W.inclusion
    _require_supported(inc, W)
    B, A, Cc = inc.target, inc.source, W.complement
    F, G = data.F, data.G
    alpha = {
        c: canonical_map(F, inc, c, data.latchings[c], data.matchings[c]) for c in Cc.objects
    }
    _check_data(data, inc, W, alpha)
    back = _preimage(inc)
    a_of = {inc.obj_map[a]: a for a in A.objects}
    sets = {inc.obj_map[a]: F.sets[a] for a in A.objects}
    sets.update({c: G.sets[c] for c in Cc.objects})
    in_c = set(Cc.objects)

    def from_a(phi, c):  # phi: f a -> c
        lat, lam = data.latchings[c], data.lam[c]
        a = a_of[B.src[phi]]
        return {e: lam[lat.index[(a, (B.src[phi], phi)), e]] for e in F.sets[a]}

    def to_a(psi, c):  # psi: c -> f a
        mat, mu = data.matchings[c], data.mu[c]
        pos = mat.under.index((a_of[B.dst[psi]], psi))
        return {x: mat.families[mu[x]][pos] for x in G.sets[c]}

    maps = {}
    factoring = W.factoring
    for m, s, t in B.morphisms:
        if s in a_of and t in a_of:
            maps[m] = dict(F.maps[back[m]])
        elif s in a_of:
            maps[m] = from_a(m, t)
        elif t in a_of:
            maps[m] = to_a(m, s)
        elif m in factoring:
            choices = set()
            for o in _factorizations(inc, s, t).objects:
                phi, a, psi = triple_parts(o)
                if B.compose[psi, phi] != m:
                    continue
                down, up = to_a(phi, s), from_a(psi, t)
                choices.add(tuple(sorted(((x, up[down[x]]) for x in G.sets[s]), key=repr)))
            if len(choices) != 1:
                raise RepresentativeDisagreement(f"factorizations of {m!r} induce {len(choices)} maps", m)
            maps[m] = dict(choices.pop())
        else:
            assert s in in_c and t in in_c
            maps[m] = dict(G.maps[m])
    return validate_set_functor(B, sets, maps)


def restrict_data(X: SetFunctor, W: ReedyWitness) -> ReedyData:
    """(X|A, X|C, latching map, matching map) of a functor X on B."""
    inc = W.inclusion
    _require_supported(inc, W)
    Cc = W.complement
    F = SetFunctor(
        inc.source,
        {a: X.sets[inc.obj_map[a]] for a in inc.source.objects},
        {m: X.maps[inc.mor_map[m]] for m, _, _ in inc.source.morphisms},
    )
    G = SetFunctor(Cc, {c: X.sets[c] for c in Cc.objects}, {m: X.maps[m] for m, _, _ in Cc.morphisms})
    lats, mats, lam, mu = {}, {}, {}, {}
    for c in Cc.objects:
        lat, mat = latching(F, inc, c), matching(F, inc, c)
        lats[c], mats[c] = lat, mat
        lam[c] = {}
        for i, cls in enumerate(lat.classes):
            (a, (_, phi)), e = cls[0]
            lam[c][i] = X.maps[phi][e]
        mu[c] = {x: mat.index[tuple(X.maps[psi][x] for _, psi in mat.under)] for x in G.sets[c]}
    return ReedyData(F, G, lam, mu, lats, mats)


# ------------------------------------------------ the cartesian square


@dataclass(frozen=True)
class ReedySquareVerdict:
    holds: bool
    size_bound: int
    functor_classes: int
    data_classes: int
    functor_cardinality: Fraction
    data_cardinality: Fraction
    reason: str = ""

    @property
    def outcome(self) -> str:
        return "HOLDS" if self.holds else "FAILS"

    def __bool__(self):
        return self.holds


def _perm_group(objs: list, sizes: tuple) -> list:
    """All tuples of permutations, one per object."""
    return list(iproduct(*(list(permutations(range(n))) for n in sizes)))


def _act_tables(cat: FinCat, sizes: dict, tables: dict, perm: dict) -> tuple:
    """Transport a functor's tables along per-object bijections."""
    out = []
    for m, s, t in cat.morphisms:
        row = [None] * sizes[s]
        old = tables[m]
        for i in range(sizes[s]):
            row[perm[s][i]] = perm[t][old[i]]
        out.append(tuple(row))
    return tuple(out)


def _orbits(keys: dict, group: list, act) -> tuple[dict, dict]:
    """Orbit number per key and stabilizer order per orbit."""
    orbit_of, stab = {}, {}
    for key in keys:
        if key in orbit_of:
            continue
        oid = len(stab)
        images = [act(key, g) for g in group]
        seen = set(images)
        for im in seen:
            if im not in keys:
                raise AssertionError("group action leaves the enumerated set")
            orbit_of[im] = oid
        stab[oid] = len(group) // len(seen)
    return orbit_of, stab


def verify_reedy_square(
    inc: FunctorData,
    size_bound: int = 2,
    dim: int = DEFAULT_DIM,
    budget: int = 400_000,
    max_objects: int = 4,
    max_size: int = 3,
) -> ReedySquareVerdict:
    """Functors B -> Set<=k against tuples (F, G, lambda, mu), up to iso.

    Both sides are enumerated independently; iso classes are orbits of the
    product of symmetric groups on the underlying sets.  The restriction map
    must be a bijection on classes preserving automorphism counts, and the
    two groupoid cardinalities must agree as exact fractions.
    """
    B, A = inc.target, inc.source
    if len(B.objects) > max_objects or size_bound > max_size:
        raise ExplosionGuard(
            f"budget is {max_objects} objects and sets of size {max_size}; got {len(B.objects)} and {size_bound}"
        )
    verdict = is_reedy_extension(inc, dim)
    if not verdict:
        raise CategoryError(f"not a Reedy extension: {verdict.reason}", verdict.failure)
    W = verdict.witness
    _require_supported(inc, W)
    Cc = W.complement
    a_objs, c_objs = list(A.objects), list(Cc.objects)
    b_order = [inc.obj_map[a] for a in a_objs] + c_objs
    counter = [0]

    def tick(n=1):
        counter[0] += n
        if counter[0] > budget:
            raise ExplosionGuard(f"enumeration exceeded {budget} steps")

    # functors on B, grouped by size vector
    func_card = Fraction(0)
    func_classes = []  # (size vector, tables, stabilizer)
    for sizes_t in iproduct(range(size_bound + 1), repeat=len(b_order)):
        sizes = dict(zip(b_order, sizes_t))
        found = {}
        for tables in set_functor_tables(B, sizes, budget=budget):
            tick()
            found[tuple(tables[m] for m, _, _ in B.morphisms)] = tables
        if not found:
            continue
        group = _perm_group(b_order, sizes_t)

        def act(key, g, sizes=sizes):
            perm = dict(zip(b_order, g))
            return _act_tables(B, sizes, dict(zip((m for m, _, _ in B.morphisms), key)), perm)

        tick(len(found) * len(group))
        orbit_of, stab = _orbits(found, group, act)
        reps = {}
        for key, oid in orbit_of.items():
            reps.setdefault(oid, key)
        for oid, key in reps.items():
            func_classes.append((sizes, found[key], stab[oid]))
            func_card += Fraction(1, stab[oid])

    # data tuples, grouped by size vectors on A and on C
    data_card = Fraction(0)
    data_orbit, data_stab = {}, {}
    a_cache = {}
    for sizes_a in iproduct(range(size_bound + 1), repeat=len(a_objs)):
        sa = dict(zip(a_objs, sizes_a))
        f_found = {}
        for tables in set_functor_tables(A, sa, budget=budget):
            tick()
            key = tuple(tables[m] for m, _, _ in A.morphisms)
            F = tables_to_functor(A, sa, tables)
            lats = {c: latching(F, inc, c) for c in c_objs}
            mats = {c: matching(F, inc, c) for c in c_objs}
            alpha = {c: canonical_map(F, inc, c, lats[c], mats[c]) for c in c_objs}
            f_found[key] = (F, lats, mats, alpha)
        a_cache[sizes_a] = f_found
    for sizes_a, f_found in a_cache.items():
        for sizes_c in iproduct(range(size_bound + 1), repeat=len(c_objs)):
            sc = dict(zip(c_objs, sizes_c))
            g_list = []
            for tables in set_functor_tables(Cc, sc, budget=budget):
                tick()
                g_list.append((tuple(tables[m] for m, _, _ in Cc.morphisms), tables_to_functor(Cc, sc, tables)))
            if not g_list:
                continue
            keys = {}
            for fkey, (F, lats, mats, alpha) in f_found.items():
                for gkey, G in g_list:
                    for lam, mu in _natural_pairs(F, G, lats, mats, alpha, inc, Cc, tick):
                        keys[_data_key(fkey, gkey, lam, mu, lats, mats, c_objs)] = None
            if not keys:
                continue
            group = _perm_group(b_order, sizes_a + sizes_c)

            def act(key, g, sizes_a=sizes_a, sizes_c=sizes_c, f_found=f_found):
                return _act_data(key, g, A, Cc, a_objs, c_objs, dict(zip(a_objs, sizes_a)),
                                 dict(zip(c_objs, sizes_c)), f_found)

            tick(len(keys) * len(group))
            orbit_of, stab = _orbits(keys, group, act)
            base = len(data_stab)
            for key, oid in orbit_of.items():
                data_orbit[key] = base + oid
            for oid, s in stab.items():
                data_stab[base + oid] = s
                data_card += Fraction(1, s)

    # compare: restriction must induce a bijection on classes
    hit = {}
    for sizes, tables, s in func_classes:
        X = tables_to_functor(B, sizes, tables)
        d = restrict_data(X, W)
        fkey = tuple(tuple(d.F.maps[m][i] for i in range(len(d.F.sets[A.src[m]]))) for m, _, _ in A.morphisms)
        gkey = tuple(tuple(d.G.maps[m][i] for i in range(len(d.G.sets[Cc.src[m]]))) for m, _, _ in Cc.morphisms)
        key = _data_key(fkey, gkey, d.lam, d.mu, d.latchings, d.matchings, c_objs)
        oid = data_orbit.get(key)
        if oid is None:
            return ReedySquareVerdict(False, size_bound, len(func_classes), len(data_stab), func_card, data_card,
                                      "restriction of a functor is not admissible data")
        if oid in hit:
            return ReedySquareVerdict(False, size_bound, len(func_classes), len(data_stab), func_card, data_card,
                                      "two functor classes restrict to one data class")
        if data_stab[oid] != s:
            return ReedySquareVerdict(False, size_bound, len(func_classes), len(data_stab), func_card, data_card,
                                      "automorphism counts differ")
        hit[oid] = True
    holds = len(hit) == len(data_stab) and func_card == data_card
    reason = "" if holds else "data classes missed by restriction"
    return ReedySquareVerdict(holds, size_bound, len(func_classes), len(data_stab), func_card, data_card, reason)


def _natural_pairs(F, G, lats, mats, alpha, inc, Cc, tick):
    """All natural (lambda, mu) with mu∘lambda equal to the canonical map."""
    B = inc.target
    c_objs = list(Cc.objects)
    lam_opts, mu_opts = [], []
    for c in c_objs:
        n_l, n_g, n_m = len(lats[c]), len(G.sets[c]), len(mats[c])
        tick(n_g ** n_l + n_m ** n_g)
        lam_opts.append([dict(enumerate(t)) for t in iproduct(range(n_g), repeat=n_l)])
        mu_opts.append([dict(enumerate(t)) for t in iproduct(range(n_m), repeat=n_g)])
    steps = [
        (gamma, s, t, _latching_step(lats[s], lats[t], B, gamma), _matching_step(mats[s], mats[t], B, gamma))
        for gamma, s, t in Cc.morphisms
    ]
    for lam_t in iproduct(*lam_opts):
        lam = dict(zip(c_objs, lam_t))
        if any(lam[t][ls[i]] != G.maps[gm][v] for gm, s, t, ls, _ in steps for i, v in lam[s].items()):
            continue
        per_c = []
        for c, opts in zip(c_objs, mu_opts):
            per_c.append([mu for mu in opts if all(mu[lam[c][i]] == alpha[c][i] for i in lam[c])])
        for mu_t in iproduct(*per_c):
            tick()
            mu = dict(zip(c_objs, mu_t))
            if any(mu[t][G.maps[gm][x]] != ms[k] for gm, s, t, _, ms in steps for x, k in mu[s].items()):
                continue
            yield lam, mu


def _data_key(fkey, gkey, lam, mu, lats, mats, c_objs) -> tuple:
    lam_part = tuple(tuple(lam[c][i] for i in range(len(lats[c]))) for c in c_objs)
    mu_part = tuple(tuple(mats[c].families[mu[c][x]] for x in range(len(mu[c]))) for c in c_objs)
    return (fkey, gkey, lam_part, mu_part)


def _act_data(key, g, A, Cc, a_objs, c_objs, sa, sc, f_found):
    fkey, gkey, lam_part, mu_part = key
    sigma = dict(zip(a_objs, g[: len(a_objs)]))
    tau = dict(zip(c_objs, g[len(a_objs):]))
    fkey2 = _act_tables(A, sa, dict(zip((m for m, _, _ in A.morphisms), fkey)), sigma)
    gkey2 = _act_tables(Cc, sc, dict(zip((m for m, _, _ in Cc.morphisms), gkey)), tau)
    _, lats, mats, _ = f_found[fkey]
    _, lats2, mats2, _ = f_found[fkey2]
    lam2, mu2 = [], []
    for ci, c in enumerate(c_objs):
        row = [None] * len(lats2[c])
        for i, cls in enumerate(lats[c].classes):
            (a, ob), e = cls[0]
            row[lats2[c].index[(a, ob), sigma[a][e]]] = tau[c][lam_part[ci][i]]
        lam2.append(tuple(row))
        under = mats[c].under
        mrow = [None] * sc[c]
        for x in range(sc[c]):
            fam = mu_part[ci][x]
            mrow[tau[c][x]] = tuple(sigma[a][v] for (a, _), v in zip(under, fam))
        mu2.append(tuple(mrow))
    return (fkey2, gkey2, tuple(lam2), tuple(mu2))


# ------------------------------------------------------- Reedy structures


@dataclass(frozen=True)
class ReedyStructureVerdict:
    holds: bool
    orientation: str
    levels: tuple  # degrees that occur, ascending
    truncation_checks: tuple  # (level, outcome)

    @property
    def outcome(self) -> str:
        return "HOLDS" if self.holds else "FAILS"

    def __bool__(self):
        return self.holds


def check_reedy_structure(
    C: FinCat,
    degree: dict,
    left_class,
    right_class,
    orientation: str = "L_then_R",
    dim: int = DEFAULT_DIM,
) -> ReedyStructureVerdict:
    """Factorization system, conservative degree, and Reedy truncations.

    With ``orientation="L_then_R"`` every morphism is ``r∘l`` with l in the
    left class and r in the right class; ``"R_then_L"`` asks for ``l∘r``.
    Left-class morphisms must not raise degree and right-class morphisms
    must not lower it; a degree-preserving one must be an isomorphism.
    """
    L, R = set(left_class), set(right_class)
    if orientation not in ("L_then_R", "R_then_L"):
        raise ValueError(f"unknown orientation {orientation!r}")
    for m, s, t in C.morphisms:
        if C.is_iso(m) and degree[s] != degree[t]:
            raise NotConservative(f"isomorphism {m!r} changes degree", m)
    for m in list(C.inverses):
        if m not in L or m not in R:
            raise NoFactorization(f"isomorphism {m!r} is missing from a class", m)
    for cls, name in ((L, "left"), (R, "right")):
        for (g, f), h in C.compose.items():
            if g in cls and f in cls and h not in cls:
                raise NoFactorization(f"{name} class is not closed under composition at {(g, f)!r}", (g, f))
    first, second = (L, R) if orientation == "L_then_R" else (R, L)
    for m, s, t in C.morphisms:
        if not any(
            C.compose[q, p] == m
            for p in C.outgoing(s)
            if p in first
            for q in C.hom(C.dst[p], t)
            if q in second
        ):
            raise NoFactorization(f"{m!r} has no factorization", m)
    # unique lifting of each first-class map against each second-class map
    for p, a, b in C.morphisms:
        if p not in first:
            continue
        for q, x, y in C.morphisms:
            if q not in second:
                continue
            for u in C.hom(a, x):
                for v in C.hom(b, y):
                    if C.compose[q, u] != C.compose[v, p]:
                        continue
                    lifts = [h for h in C.hom(b, x) if C.compose[h, p] == u and C.compose[q, h] == v]
                    if len(lifts) != 1:
                        raise NoFactorization(
                            f"square ({p!r}, {q!r}) has {len(lifts)} diagonal fillers", (p, q, u, v)
                        )
    for m, s, t in C.morphisms:
        if m in L and (degree[t] > degree[s] or (degree[t] == degree[s] and not C.is_iso(m))):
            raise NotConservative(f"left-class morphism {m!r} does not lower degree", m)
        if m in R and (degree[t] < degree[s] or (degree[t] == degree[s] and not C.is_iso(m))):
            raise NotConservative(f"right-class morphism {m!r} does not raise degree", m)
    levels = sorted(set(degree[x] for x in C.objects))
    checks = []
    for n in levels:
        lower, _ = full_subcategory(C, [x for x in C.objects if degree[x] < n])
        upper, _ = full_subcategory(C, [x for x in C.objects if degree[x] <= n])
        inc = FunctorData(lower, upper, {x: x for x in lower.objects}, {m: m for m, _, _ in lower.morphisms})
        v = is_reedy_extension(inc, dim)
        checks.append((n, v.outcome))
        if not v:
            raise TruncationNotReedy(f"degree {n} truncation: {v.reason}", n)
    return ReedyStructureVerdict(True, orientation, tuple(levels), tuple(checks))
