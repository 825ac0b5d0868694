"""Colimits, limits and Kan extensions of finite-set-valued functors, plus
enumeration of such functors."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as iproduct

from .comma import grothendieck, pullback_cat, slice_cat
from .core import FinCat, FunctorData, SetFunctor
from .sset import nerve, pi0


def _key(x):
    return repr(x)


@dataclass(frozen=True)
class Colimit:
    classes: tuple  # each a sorted tuple of (object, element)
    index: dict  # (object, element) -> class number

    def __len__(self):
        return len(self.classes)


def colimit(F: SetFunctor) -> Colimit:
    """Colimit of F as the set of components of its category of elements."""
    el = grothendieck(F).cat
    comps = pi0(nerve(el, 1))
    classes = sorted(
        (tuple(sorted((el.objects[v] for v in blk), key=_key)) for blk in comps.blocks),
        key=lambda c: _key(c[0]),
    )
    index = {o: i for i, c in enumerate(classes) for o in c}
    return Colimit(tuple(classes), index)


def limit(F: SetFunctor) -> list:
    """Compatible families, one element per object in object order."""
    C = F.source
    objs = list(C.objects)
    pos = {x: i for i, x in enumerate(objs)}
    checks = [[] for _ in objs]  # morphisms checked once both ends are chosen
    for m, s, t in C.morphisms:
        checks[max(pos[s], pos[t])].append((m, pos[s], pos[t]))
    out = []
    fam = [None] * len(objs)

    def go(i):
        if i == len(objs):
            out.append(tuple(fam))
            return
        for e in F.sets[objs[i]]:
            fam[i] = e
            if all(F.maps[m][fam[s]] == fam[t] for m, s, t in checks[i]):
                go(i + 1)
        fam[i] = None

    go(0)
    return out


@dataclass(frozen=True, eq=False)
class KanExtension:
    """Left Kan extension of P along k, with explicit colimit data."""

    functor: SetFunctor  # values are class numbers 0..n-1
    colimits: dict  # target object -> Colimit over the comma
    along: FunctorData

    def class_of(self, y, x, phi, e) -> int:
        """Class of the element e of P(x) sitting over phi: k(x) -> y."""
        return self.colimits[y].index[(x, (self.along.obj_map[x], phi)), e]


def left_kan(P: SetFunctor, k: FunctorData) -> KanExtension:
    """(Lan_k P)(y) = colim over X ×_Y Y_/y of P."""
    Y = k.target
    cols = {}
    for y in Y.objects:
        over = slice_cat(Y, y)
        comma = pullback_cat(k, over.projections["domain"])
        proj = comma.projections["left"]
        restricted = SetFunctor(
            comma.cat,
            {o: P.sets[proj.obj_map[o]] for o in comma.cat.objects},
            {m: P.maps[proj.mor_map[m]] for m, _, _ in comma.cat.morphisms},
        )
        cols[y] = colimit(restricted)
    sets = {y: tuple(range(len(cols[y]))) for y in Y.objects}
    maps = {}
    for m, s, t in Y.morphisms:
        table = {}
        for i, cls in enumerate(cols[s].classes):
            (x, (kx, phi)), e = cls[0]
            table[i] = cols[t].index[(x, (kx, Y.compose[m, phi])), e]
        maps[m] = table
    return KanExtension(SetFunctor(Y, sets, maps), cols, k)


# ------------------------------------------------------------ enumeration


def generators(C: FinCat) -> list:
    """A small set of nonidentity morphisms generating C under composition."""
    closure = set(C.identity_set)
    gens = []
    for m in C.nonidentity:
        if m in closure:
            continue
        gens.append(m)
        frontier = [m]
        closure.add(m)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(closure):
                    for g, f in ((a, b), (b, a)):
                        if C.dst[f] == C.src[g]:
                            h = C.compose[g, f]
                            if h not in closure:
                                closure.add(h)
                                nxt.append(h)
            frontier = nxt
    return gens


class ExplosionGuard(RuntimeError):
    pass


def _propagate(C: FinCat, tables: dict, pairs: list) -> bool:
    """Fill in composites from known maps; False on any inconsistency."""
    changed = True
    while changed:
        changed = False
        for g, f, h in pairs:
            tg, tf = tables.get(g), tables.get(f)
            if tg is None or tf is None:
                continue
            val = tuple(tg[v] for v in tf)
            th = tables.get(h)
            if th is None:
                tables[h] = val
                changed = True
            elif th != val:
                return False
    return True


def set_functor_tables(C: FinCat, sizes: dict, rng: random.Random | None = None, budget: int | None = None):
    """Yield morphism tables of every functor C -> Set with the given sizes.

    Elements of the set at x are 0..sizes[x]-1 and a table is a tuple of
    images.  With ``rng`` the search order is shuffled.
    """
    gens = generators(C)
    pairs = [(g, f, h) for (g, f), h in C.compose.items()]
    base = {C.identities[x]: tuple(range(sizes[x])) for x in C.objects}
    counter = [0]

    def choices(m):
        n_s, n_t = sizes[C.src[m]], sizes[C.dst[m]]
        opts = list(iproduct(range(n_t), repeat=n_s))
        if rng is not None:
            rng.shuffle(opts)
        return opts

    def go(i, tables):
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise ExplosionGuard(f"functor search exceeded {budget} steps")
        if i == len(gens):
            if len(tables) == len(C.morphisms):
                yield tables
            return
        m = gens[i]
        if m in tables:
            yield from go(i + 1, tables)
            return
        for t in choices(m):
            nxt = dict(tables)
            nxt[m] = t
            if _propagate(C, nxt, pairs):
                yield from go(i + 1, nxt)

    start = dict(base)
    if _propagate(C, start, pairs):
        yield from go(0, start)


def tables_to_functor(C: FinCat, sizes: dict, tables: dict) -> SetFunctor:
    sets = {x: tuple(range(sizes[x])) for x in C.objects}
    maps = {m: dict(enumerate(tables[m])) for m, _, _ in C.morphisms}
    return SetFunctor(C, sets, maps)


def random_set_functor(C: FinCat, max_size: int, rng: random.Random) -> SetFunctor:
    """A random functor to sets of size at most ``max_size``."""
    for _ in range(50):
        sizes = {x: rng.randint(0, max_size) for x in C.objects}
        try:
            for tables in set_functor_tables(C, sizes, rng=rng, budget=20_000):
                return tables_to_functor(C, sizes, tables)
        except ExplosionGuard:
            continue
    sizes = {x: 0 for x in C.objects}
    return tables_to_functor(C, sizes, next(set_functor_tables(C, sizes)))
