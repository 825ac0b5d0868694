"""Finite categories, functors between them, and predicates on functors.

Every category is fully tabulated: objects, morphisms with globally unique
ids, an identity for each object and a composition table that is total on
composable pairs.  Values are validated once at construction and treated as
immutable afterwards.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping


class CategoryError(ValueError):
    """Malformed categorical data.  ``witness`` names the offending piece."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class DuplicateId(CategoryError):
    pass


class DanglingReference(CategoryError):
    pass


class MissingIdentity(CategoryError):
    pass


class NotUnital(CategoryError):
    pass


class IllTypedComposition(CategoryError):
    pass


class PartialComposition(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class NotFunctorial(CategoryError):
    pass


class UnknownObject(CategoryError):
    pass


class MismatchedSource(CategoryError):
    pass


class NotDwyer(CategoryError):
    pass


class NotFullyFaithful(NotDwyer):
    pass


class NotSieve(NotDwyer):
    pass


class NoTerminalObject(NotDwyer):
    pass


@dataclass(frozen=True, eq=False)
class FinCat:
    """A validated finite category.  Build through :func:`validate_category`."""

    objects: tuple
    morphisms: tuple  # (id, src, dst)
    identities: Mapping
    compose: Mapping  # (g, f) -> g∘f, total on composable pairs

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and dict(self.identities) == dict(other.identities)
            and dict(self.compose) == dict(other.compose)
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    @cached_property
    def src(self) -> dict:
        return {m: s for m, s, _ in self.morphisms}

    @cached_property
    def dst(self) -> dict:
        return {m: t for m, _, t in self.morphisms}

    @cached_property
    def object_set(self) -> frozenset:
        return frozenset(self.objects)

    @cached_property
    def identity_set(self) -> frozenset:
        return frozenset(self.identities.values())

    @cached_property
    def _homs(self) -> dict:
        homs = defaultdict(list)
        for m, s, t in self.morphisms:
            homs[s, t].append(m)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _outgoing(self) -> dict:
        out = defaultdict(list)
        for m, s, _ in self.morphisms:
            out[s].append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _incoming(self) -> dict:
        inc = defaultdict(list)
        for m, _, t in self.morphisms:
            inc[t].append(m)
        return {k: tuple(v) for k, v in inc.items()}

    def hom(self, x, y) -> tuple:
        return self._homs.get((x, y), ())

    def outgoing(self, x) -> tuple:
        return self._outgoing.get(x, ())

    def incoming(self, y) -> tuple:
        return self._incoming.get(y, ())

    def comp(self, g, f):
        """g∘f (apply f first)."""
        return self.compose[g, f]

    def comp_path(self, path: Iterable) -> Any:
        """Compose morphisms listed in order of traversal."""
        it = iter(path)
        acc = next(it)
        for m in it:
            acc = self.compose[m, acc]
        return acc

    def is_identity(self, m) -> bool:
        return m in self.identity_set

    @property
    def nonidentity(self) -> list:
        ids = self.identity_set
        return [m for m, _, _ in self.morphisms if m not in ids]

    @cached_property
    def inverses(self) -> dict:
        """Map each isomorphism to its inverse."""
        inv = {}
        for m, s, t in self.morphisms:
            for n in self.hom(t, s):
                if (
                    self.compose[n, m] == self.identities[s]
                    and self.compose[m, n] == self.identities[t]
                ):
                    inv[m] = n
                    break
        return inv

    def is_iso(self, m) -> bool:
        return m in self.inverses

    def isomorphic(self, x, y) -> bool:
        return any(self.is_iso(m) for m in self.hom(x, y))

    @cached_property
    def iso_classes(self) -> list:
        """Objects grouped into isomorphism classes, in object order."""
        seen = set()
        classes = []
        for x in self.objects:
            if x in seen:
                continue
            cls = [y for y in self.objects if y == x or self.isomorphic(x, y)]
            seen.update(cls)
            classes.append(tuple(cls))
        return classes

    def is_preorder(self) -> bool:
        return all(len(v) <= 1 for v in self._homs.values())

    def chain_bounded(self) -> bool:
        """No nonidentity endomorphisms and no nonidentity isomorphisms."""
        ids = self.identity_set
        for m, s, t in self.morphisms:
            if m in ids:
                continue
            if s == t or m in self.inverses:
                return False
        return True

    def longest_chain(self) -> int:
        """Length of the longest string of composable nonidentity morphisms.

        Only meaningful for chain-bounded categories, where it is finite.
        """
        order = _topological_order(self)
        best = {x: 0 for x in self.objects}
        for x in reversed(order):
            for m in self.outgoing(x):
                if not self.is_identity(m):
                    best[x] = max(best[x], best[self.dst[m]] + 1)
        return max(best.values(), default=0)


def _topological_order(C: FinCat) -> list:
    indeg = {x: 0 for x in C.objects}
    for m in C.nonidentity:
        indeg[C.dst[m]] += 1
    ready = [x for x in C.objects if indeg[x] == 0]
    order = []
    while ready:
        x = ready.pop()
        order.append(x)
        for m in C.outgoing(x):
            if C.is_identity(m):
                continue
            y = C.dst[m]
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if len(order) != len(C.objects):
        raise ValueError("category has cycles of nonidentity morphisms")
    return order


def _parse_morphisms(raw) -> list:
    out = []
    for entry in raw:
        if isinstance(entry, Mapping):
            try:
                out.append((entry["id"], entry["src"], entry["dst"]))
            except KeyError as exc:
                raise DanglingReference(f"morphism entry missing field {exc}", entry) from None
        else:
            m, s, t = entry
            out.append((m, s, t))
    return out


def _parse_compose(raw) -> list:
    if isinstance(raw, Mapping):
        return [(g, f, h) for (g, f), h in raw.items()]
    out = []
    for entry in raw:
        if isinstance(entry, Mapping):
            try:
                out.append((entry["g"], entry["f"], entry["result"]))
            except KeyError as exc:
                raise DanglingReference(f"compose entry missing field {exc}", entry) from None
        else:
            g, f, h = entry
            out.append((g, f, h))
    return out


def validate_category(raw: Mapping | None = None, **parts) -> FinCat:
    """Check a raw description and return a :class:`FinCat`.

    ``raw`` (or keyword arguments) carries ``objects``, ``morphisms``,
    ``identities`` and ``compose``.  Composites with an identity may be left
    out of ``compose``; any that are given must agree with unitality.
    """
    data = dict(raw or {})
    data.update(parts)
    objects = tuple(data.get("objects", ()))
    morphisms = _parse_morphisms(data.get("morphisms", ()))
    identities = dict(data.get("identities", {}))
    entries = _parse_compose(data.get("compose", ()))

    if len(set(objects)) != len(objects):
        dup = next(x for x in objects if objects.count(x) > 1)
        raise DuplicateId(f"object {dup!r} listed twice", dup)
    obset = set(objects)
    src, dst = {}, {}
    for m, s, t in morphisms:
        if m in src:
            raise DuplicateId(f"morphism id {m!r} used twice", m)
        for end in (s, t):
            if end not in obset:
                raise DanglingReference(f"morphism {m!r} refers to unknown object {end!r}", m)
        src[m], dst[m] = s, t

    for x in identities:
        if x not in obset:
            raise DanglingReference(f"identity given for unknown object {x!r}", x)
    for x in objects:
        if x not in identities:
            raise MissingIdentity(f"object {x!r} has no identity", x)
        i = identities[x]
        if i not in src:
            raise DanglingReference(f"identity of {x!r} is unknown morphism {i!r}", i)
        if src[i] != x or dst[i] != x:
            raise MissingIdentity(f"identity {i!r} of {x!r} is not an endomorphism of {x!r}", i)
    if len(set(identities.values())) != len(identities):
        raise DuplicateId("two objects share an identity morphism")

    compose: dict = {}
    for g, f, h in entries:
        for m in (g, f, h):
            if m not in src:
                raise DanglingReference(f"composition refers to unknown morphism {m!r}", (g, f, h))
        if dst[f] != src[g]:
            raise IllTypedComposition(f"entry for non-composable pair ({g!r}, {f!r})", (g, f))
        if src[h] != src[f] or dst[h] != dst[g]:
            raise IllTypedComposition(
                f"{g!r}∘{f!r} = {h!r} has the wrong source or target", (g, f, h)
            )
        if (g, f) in compose and compose[g, f] != h:
            raise IllTypedComposition(f"conflicting entries for ({g!r}, {f!r})", (g, f))
        compose[g, f] = h

    for m in src:
        for pair in ((identities[dst[m]], m), (m, identities[src[m]])):
            if compose.setdefault(pair, m) != m:
                raise NotUnital(f"identity is not a unit for {m!r}", pair)

    outgoing = defaultdict(list)
    for m in src:
        outgoing[src[m]].append(m)
    for f in src:
        for g in outgoing[dst[f]]:
            if (g, f) not in compose:
                raise PartialComposition(f"composable pair ({g!r}, {f!r}) has no entry", (g, f))

    for f in src:
        for g in outgoing[dst[f]]:
            gf = compose[g, f]
            for h in outgoing[dst[g]]:
                if compose[h, gf] != compose[compose[h, g], f]:
                    raise NonAssociative(
                        f"({h!r}∘{g!r})∘{f!r} differs from {h!r}∘({g!r}∘{f!r})", (h, g, f)
                    )

    return FinCat(
        objects=objects,
        morphisms=tuple(morphisms),
        identities=identities,
        compose=compose,
    )


@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCat
    target: FinCat
    obj_map: Mapping
    mor_map: Mapping

    def __eq__(self, other):
        if not isinstance(other, FunctorData):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.obj_map) == dict(other.obj_map)
            and dict(self.mor_map) == dict(other.mor_map)
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"FunctorData({self.source!r} -> {self.target!r})"

    def ob(self, x):
        return self.obj_map[x]

    def mor(self, m):
        return self.mor_map[m]

    @cached_property
    def injective_on_objects(self) -> bool:
        return len(set(self.obj_map.values())) == len(self.obj_map)

    @cached_property
    def image_objects(self) -> frozenset:
        return frozenset(self.obj_map.values())


def validate_functor(raw: Mapping, source: FinCat, target: FinCat) -> FunctorData:
    """Check object and morphism maps for functoriality.

    ``raw`` has ``obj_map`` (or ``objects``) and ``mor_map`` (or
    ``morphisms``); identity morphisms may be left out of the morphism map.
    """
    obj_raw = raw.get("obj_map", raw.get("objects", {}))
    mor_raw = dict(raw.get("mor_map", raw.get("morphisms", {})))
    obj_map = {}
    for x in source.objects:
        if x not in obj_raw:
            raise DanglingReference(f"object {x!r} is not mapped", x)
        y = obj_raw[x]
        if y not in target.object_set:
            raise DanglingReference(f"object {x!r} maps to unknown object {y!r}", x)
        obj_map[x] = y
    for x in obj_raw:
        if x not in source.object_set:
            raise DanglingReference(f"object map mentions unknown object {x!r}", x)
    for m in mor_raw:
        if m not in source.src:
            raise DanglingReference(f"morphism map mentions unknown morphism {m!r}", m)
    mor_map = {}
    for m, s, t in source.morphisms:
        if m in mor_raw:
            n = mor_raw[m]
        elif m in source.identity_set:
            n = target.identities[obj_map[s]]
        else:
            raise DanglingReference(f"morphism {m!r} is not mapped", m)
        if n not in target.src:
            raise DanglingReference(f"morphism {m!r} maps to unknown morphism {n!r}", m)
        if target.src[n] != obj_map[s] or target.dst[n] != obj_map[t]:
            raise NotFunctorial(f"image of {m!r} has the wrong endpoints", (m,))
        mor_map[m] = n
    for x in source.objects:
        if mor_map[source.identities[x]] != target.identities[obj_map[x]]:
            raise NotFunctorial(f"identity of {x!r} is not sent to an identity", (x,))
    for (g, f), h in source.compose.items():
        if target.compose[mor_map[g], mor_map[f]] != mor_map[h]:
            raise NotFunctorial(f"composite {g!r}∘{f!r} is not preserved", (g, f))
    return FunctorData(source, target, obj_map, mor_map)


@dataclass(frozen=True, eq=False)
class SpanData:
    """A span B <-left- A -right-> C."""

    left: FunctorData
    right: FunctorData

    def __post_init__(self):
        if not (self.left.source is self.right.source or self.left.source == self.right.source):
            raise MismatchedSource("span legs have different sources")

    @property
    def A(self) -> FinCat:
        return self.left.source

    @property
    def B(self) -> FinCat:
        return self.left.target

    @property
    def C(self) -> FinCat:
        return self.right.target


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome carrying an explanatory witness when it is false."""

    holds: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self):
        return self.holds


@dataclass(frozen=True, eq=False)
class DwyerWitness:
    """Terminal objects of the commas A ×_B B_/b, one per target object.

    ``terminal[b]`` is ``(Rb, counit)`` or ``None`` when the comma is empty.
    """

    functor: FunctorData
    terminal: Mapping

    def has_comma(self, b) -> bool:
        return self.terminal[b] is not None

    def R(self, b):
        return self.terminal[b][0]

    def counit(self, b):
        return self.terminal[b][1]

    def transport(self, beta):
        """The unique A-morphism R(b) -> R(b') over beta: b -> b'."""
        F = self.functor
        B = F.target
        b, b2 = B.src[beta], B.dst[beta]
        r, eps = self.terminal[b]
        r2, eps2 = self.terminal[b2]
        want = B.compose[beta, eps]
        hits = [
            alpha
            for alpha in F.source.hom(r, r2)
            if B.compose[eps2, F.mor_map[alpha]] == want
        ]
        if len(hits) != 1:
            raise NoTerminalObject(
                f"comma over {b2!r} has {len(hits)} maps from ({r!r}, {want!r})", b2
            )
        return hits[0]


def identity_functor(C: FinCat) -> FunctorData:
    return FunctorData(C, C, {x: x for x in C.objects}, {m: m for m, _, _ in C.morphisms})


def compose_functors(G: FunctorData, F: FunctorData) -> FunctorData:
    """G∘F."""
    return FunctorData(
        F.source,
        G.target,
        {x: G.obj_map[y] for x, y in F.obj_map.items()},
        {m: G.mor_map[n] for m, n in F.mor_map.items()},
    )


def hom_map_defect(F: FunctorData):
    """First pair (x, y) where F is not bijective on homs, with the failure."""
    S, T = F.source, F.target
    for x in S.objects:
        for y in S.objects:
            images = [F.mor_map[m] for m in S.hom(x, y)]
            if len(set(images)) != len(images):
                return (x, y), "not injective"
            if len(images) != len(T.hom(F.obj_map[x], F.obj_map[y])):
                return (x, y), "not surjective"
    return None


def is_fully_faithful(F: FunctorData) -> Verdict:
    defect = hom_map_defect(F)
    if defect is None:
        return Verdict(True)
    return Verdict(False, defect[0], defect[1])


def essential_image(F: FunctorData) -> frozenset:
    T = F.target
    image = F.image_objects
    return frozenset(y for y in T.objects if any(T.isomorphic(y, z) for z in image))


def is_sieve(F: FunctorData) -> Verdict:
    """True when every morphism into the essential image starts inside it."""
    if not is_fully_faithful(F):
        raise NotFullyFaithful("sieve test needs a fully faithful functor", is_fully_faithful(F).witness)
    ess = essential_image(F)
    T = F.target
    for y in T.objects:
        if y not in ess:
            continue
        for m in T.incoming(y):
            if T.src[m] not in ess:
                return Verdict(False, m, f"{T.src[m]!r} lies outside the image")
    return Verdict(True)


def is_cosieve(F: FunctorData) -> Verdict:
    """True when every morphism out of the essential image ends inside it."""
    if not is_fully_faithful(F):
        raise NotFullyFaithful("cosieve test needs a fully faithful functor", is_fully_faithful(F).witness)
    ess = essential_image(F)
    T = F.target
    for x in T.objects:
        if x not in ess:
            continue
        for m in T.outgoing(x):
            if T.dst[m] not in ess:
                return Verdict(False, m, f"{T.dst[m]!r} lies outside the image")
    return Verdict(True)


def over_objects(F: FunctorData, b) -> list:
    """Objects (a, phi: F a -> b) of the comma A ×_B B_/b."""
    return [(a, phi) for a in F.source.objects for phi in F.target.hom(F.obj_map[a], b)]


def is_dwyer(F: FunctorData) -> DwyerWitness:
    """Return the Dwyer witness of F or raise the reason it is not one."""
    ff = is_fully_faithful(F)
    if not ff:
        raise NotFullyFaithful(f"functor is {ff.reason} on {ff.witness!r}", ff.witness)
    sv = is_sieve(F)
    if not sv:
        raise NotSieve(f"not a sieve: {sv.reason}", sv.witness)
    A, B = F.source, F.target
    terminal = {}
    for b in B.objects:
        objs = over_objects(F, b)
        if not objs:
            terminal[b] = None
            continue
        # prefer (a, id) so the pushout square commutes on the nose
        objs.sort(key=lambda o: not B.is_identity(o[1]))
        found = None
        for r, eps in objs:
            if all(
                sum(1 for al in A.hom(a, r) if B.compose[eps, F.mor_map[al]] == phi) == 1
                for a, phi in objs
            ):
                found = (r, eps)
                break
        if found is None:
            raise NoTerminalObject(
                f"comma over {b!r} has no terminal object", (b, [o for o in objs])
            )
        terminal[b] = found
    return DwyerWitness(F, terminal)


def opposite(C: FinCat) -> FinCat:
    return FinCat(
        objects=C.objects,
        morphisms=tuple((m, t, s) for m, s, t in C.morphisms),
        identities=dict(C.identities),
        compose={(f, g): h for (g, f), h in C.compose.items()},
    )


def opposite_functor(F: FunctorData, source: FinCat | None = None, target: FinCat | None = None) -> FunctorData:
    return FunctorData(
        source if source is not None else opposite(F.source),
        target if target is not None else opposite(F.target),
        dict(F.obj_map),
        dict(F.mor_map),
    )


def opposite_span(span: SpanData) -> SpanData:
    A = opposite(span.A)
    return SpanData(
        opposite_functor(span.left, source=A),
        opposite_functor(span.right, source=A),
    )


def full_subcategory(C: FinCat, objs: Iterable) -> tuple[FinCat, FunctorData]:
    keep = set(objs)
    for x in keep:
        if x not in C.object_set:
            raise UnknownObject(f"{x!r} is not an object", x)
    objects = tuple(x for x in C.objects if x in keep)
    morphisms = tuple((m, s, t) for m, s, t in C.morphisms if s in keep and t in keep)
    mids = {m for m, _, _ in morphisms}
    sub = FinCat(
        objects=objects,
        morphisms=morphisms,
        identities={x: C.identities[x] for x in objects},
        compose={(g, f): h for (g, f), h in C.compose.items() if g in mids and f in mids},
    )
    inc = FunctorData(sub, C, {x: x for x in objects}, {m: m for m in mids})
    assert is_fully_faithful(inc)
    return sub, inc


def make_category(objects, morphisms, identities, compose) -> FinCat:
    return validate_category(
        objects=list(objects), morphisms=list(morphisms), identities=identities, compose=compose
    )


def discrete(elements: Iterable) -> FinCat:
    elements = list(elements)
    return make_category(
        elements,
        [(("id", x), x, x) for x in elements],
        {x: ("id", x) for x in elements},
        {},
    )


def terminal_category(name: Hashable = "*") -> FinCat:
    return discrete([name])


def preorder_category(elements: Iterable, leq) -> FinCat:
    """The preorder on ``elements`` given by the relation ``leq(x, y)``.

    Morphism ids are ``"x<y"`` style strings when elements are strings and
    ``(x, y)`` pairs otherwise.
    """
    elements = list(elements)
    stringy = all(isinstance(x, str) for x in elements)

    def name(x, y):
        if stringy:
            return f"id_{x}" if x == y else f"{x}<{y}"
        return (x, y)

    morphisms = [(name(x, y), x, y) for x in elements for y in elements if x == y or leq(x, y)]
    rel = {(s, t) for _, s, t in morphisms}
    compose = {}
    for _, x, y in morphisms:
        for _, y2, z in morphisms:
            if y2 == y:
                if (x, z) not in rel:
                    raise NonAssociative("relation is not transitive", (x, y, z))
                compose[name(y, z), name(x, y)] = name(x, z)
    return make_category(elements, morphisms, {x: name(x, x) for x in elements}, compose)


def linear_order(n: int) -> FinCat:
    """[n] = {0 < 1 < ... < n} with string object names."""
    return preorder_category([str(i) for i in range(n + 1)], lambda x, y: int(x) <= int(y))


def product(C: FinCat, D: FinCat) -> FinCat:
    objects = [(x, y) for x in C.objects for y in D.objects]
    morphisms = [((m, n), (s, s2), (t, t2)) for m, s, t in C.morphisms for n, s2, t2 in D.morphisms]
    identities = {(x, y): (C.identities[x], D.identities[y]) for x, y in objects}
    compose = {
        ((g, g2), (f, f2)): (h, h2)
        for (g, f), h in C.compose.items()
        for (g2, f2), h2 in D.compose.items()
    }
    return make_category(objects, morphisms, identities, compose)


def relabel(C: FinCat, obj_names: Mapping, mor_names: Mapping) -> FinCat:
    """Rename objects and morphisms along injective maps."""
    if len(set(obj_names.values())) != len(C.objects) or len(set(mor_names.values())) != len(C.morphisms):
        raise DuplicateId("relabelling is not injective")
    return FinCat(
        objects=tuple(obj_names[x] for x in C.objects),
        morphisms=tuple((mor_names[m], obj_names[s], obj_names[t]) for m, s, t in C.morphisms),
        identities={obj_names[x]: mor_names[i] for x, i in C.identities.items()},
        compose={(mor_names[g], mor_names[f]): mor_names[h] for (g, f), h in C.compose.items()},
    )


def skeleton(C: FinCat) -> tuple[FinCat, FunctorData]:
    """Full subcategory on the first object of each isomorphism class."""
    return full_subcategory(C, [cls[0] for cls in C.iso_classes])


def inclusion_functor(A: FinCat, B: FinCat) -> FunctorData:
    """Functor sending every object and morphism id of A to the same id in B."""
    return validate_functor(
        {"obj_map": {x: x for x in A.objects}, "mor_map": {m: m for m, _, _ in A.morphisms}}, A, B
    )


@dataclass(frozen=True, eq=False)
class SetFunctor:
    """A functor from a finite category to finite sets.

    ``sets[x]`` is a tuple of elements; ``maps[m]`` a dict between them.
    """

    source: FinCat
    sets: Mapping
    maps: Mapping

    def __call__(self, m, x):
        return self.maps[m][x]

    def size(self, x) -> int:
        return len(self.sets[x])


def validate_set_functor(source: FinCat, sets: Mapping, maps: Mapping) -> SetFunctor:
    sets = {x: tuple(sets[x]) for x in source.objects}
    full = {}
    for m, s, t in source.morphisms:
        if m in maps:
            table = dict(maps[m])
        elif source.is_identity(m):
            table = {e: e for e in sets[s]}
        else:
            raise DanglingReference(f"morphism {m!r} has no map", m)
        target = set(sets[t])
        if set(table) != set(sets[s]) or not set(table.values()) <= target:
            raise NotFunctorial(f"map for {m!r} is not a function between the right sets", (m,))
        full[m] = table
    for x in source.objects:
        if any(full[source.identities[x]][e] != e for e in sets[x]):
            raise NotFunctorial(f"identity of {x!r} acts nontrivially", (x,))
    for (g, f), h in source.compose.items():
        for e in sets[source.src[f]]:
            if full[g][full[f][e]] != full[h][e]:
                raise NotFunctorial(f"composite {g!r}∘{f!r} is not respected", (g, f))
    return SetFunctor(source, sets, full)


def precompose(X: SetFunctor, F: FunctorData) -> SetFunctor:
    """X∘F, the restriction of X along F."""
    return SetFunctor(
        F.source,
        {x: X.sets[F.obj_map[x]] for x in F.source.objects},
        {m: X.maps[F.mor_map[m]] for m, _, _ in F.source.morphisms},
    )
