"""Necklaces, necklace maps into simplicial sets, and a word-rewriting oracle
for hom-sets of pushouts of categories."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable

from .core import FinCat, SpanData, make_category
from .sset import TruncatedSSet, TruncationTooLow, _UnionFind, homology, nerve


class BoundTooSmall(ValueError):
    pass


class OracleBudgetExceeded(RuntimeError):
    pass


class NotFullSubanima(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Necklace:
    width: int
    joints: tuple

    def __post_init__(self):
        j = tuple(self.joints)
        object.__setattr__(self, "joints", j)
        if self.width < 0 or not j or j[0] != 0 or j[-1] != self.width:
            raise ValueError(f"joints {j} must start at 0 and end at {self.width}")
        if any(a >= b for a, b in zip(j, j[1:])):
            raise ValueError(f"joints {j} are not strictly increasing")

    @property
    def beads(self) -> list:
        """(start, end) of each maximal simplex."""
        return list(zip(self.joints, self.joints[1:]))

    @property
    def inner_joints(self) -> tuple:
        return self.joints[1:-1]

    def __str__(self):
        return f"([{self.width}], {{{', '.join(map(str, self.joints))}}})"


def all_necklaces(max_width: int) -> list:
    out = [Necklace(0, (0,))]
    for n in range(1, max_width + 1):
        inner = range(1, n)
        for r in range(n):
            for js in combinations(inner, r):
                out.append(Necklace(n, (0,) + js + (n,)))
    return out


def necklace_maps(N: Necklace, M: Necklace) -> list:
    """Monotone d: [n] -> [m] with d(0)=0, d(n)=m and d(J_N) ⊇ J_M."""
    n, m = N.width, M.width
    if n == 0:
        return [(0,)] if m == 0 else []
    out = []
    need = set(M.joints)
    for mid in combinations_with_replacement(range(m + 1), n - 1):
        d = (0,) + mid + (m,)
        if need <= {d[j] for j in N.joints}:
            out.append(d)
    return out


def compose_maps(d2: tuple, d1: tuple) -> tuple:
    return tuple(d2[v] for v in d1)


class _VertexTables:
    def __init__(self, X: TruncatedSSet, upto: int):
        self.X = X
        self.first = []
        self.last = []
        self.starting = []
        for n in range(upto + 1):
            size = len(X.simplices[n])
            first = [X.apply(n, k, (0,)) for k in range(size)]
            last = [X.apply(n, k, (n,)) for k in range(size)]
            by_first = defaultdict(list)
            for k in range(size):
                by_first[first[k]].append(k)
            self.first.append(first)
            self.last.append(last)
            self.starting.append(by_first)


def _bead_choices(tables: _VertexTables, N: Necklace, x0: int, x1: int) -> list:
    dims = [b - a for a, b in N.beads]
    if not dims:
        return [()] if x0 == x1 else []
    out = []

    def go(i, at, acc):
        if i == len(dims):
            if at == x1:
                out.append(tuple(acc))
            return
        p = dims[i]
        for k in tables.starting[p].get(at, ()):
            acc.append(k)
            go(i + 1, tables.last[p][k], acc)
            acc.pop()

    go(0, x0, [])
    return out


def restrict_along(X: TruncatedSSet, N: Necklace, M: Necklace, beads_m: tuple, d: tuple, base: int) -> tuple:
    """Bead simplices of the composite N -> M -> X.

    ``base`` is the vertex used when M is the one-point necklace.
    """
    out = []
    for a, b in N.beads:
        lo, hi = d[a], d[b]
        if not M.beads:
            out.append(X.apply(0, base, (0,) * (b - a + 1)))
            continue
        # no joint of M lies strictly between lo and hi, so one bead holds both
        idx = next(i for i, (s0, s1) in enumerate(M.beads) if s0 <= lo and hi <= s1)
        s0, s1 = M.beads[idx]
        theta = tuple(d[v] - s0 for v in range(a, b + 1))
        out.append(X.apply(s1 - s0, beads_m[idx], theta))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class NecklaceCategory:
    """Bipointed necklaces in X of bounded width, with maps between them."""

    X: TruncatedSSet
    x0: int
    x1: int
    width_bound: int
    objects: tuple  # (Necklace, bead simplex indices)
    morphisms: tuple  # (d, source index, target index)
    components: tuple  # component number per object

    @property
    def num_components(self) -> int:
        return len(set(self.components))

    def as_category(self) -> FinCat:
        objs = list(range(len(self.objects)))
        morph = [((d, s, t), s, t) for d, s, t in self.morphisms]
        out = defaultdict(list)
        for d, s, t in self.morphisms:
            out[s].append((d, t))
        comp = {}
        for d1, s, t in self.morphisms:
            for d2, u in out[t]:
                comp[(d2, t, u), (d1, s, t)] = (compose_maps(d2, d1), s, u)
        ids = {i: (tuple(range(self.objects[i][0].width + 1)), i, i) for i in objs}
        return make_category(objs, morph, ids, comp)

    def homology(self, dim: int = 2):
        return homology(nerve(self.as_category(), dim))


def necklaces_in(X: TruncatedSSet, x0, x1, width_bound: int) -> NecklaceCategory:
    """All necklaces N -> X from x0 to x1 with width(N) <= width_bound.

    ``x0`` and ``x1`` are vertex labels of X.
    """
    if width_bound < 1:
        raise BoundTooSmall("width bound must be at least 1")
    if width_bound > X.dim:
        raise TruncationTooLow(f"necklaces of width {width_bound} need simplices of that dimension")
    v0, v1 = X.index[0][x0], X.index[0][x1]
    tables = _VertexTables(X, width_bound)
    necks = all_necklaces(width_bound)
    objects = []
    for N in necks:
        for beads in _bead_choices(tables, N, v0, v1):
            objects.append((N, beads))
    where = {obj: i for i, obj in enumerate(objects)}
    by_neck = defaultdict(list)
    for i, (N, _) in enumerate(objects):
        by_neck[N].append(i)
    morphisms = []
    uf = _UnionFind(len(objects))
    for N in necks:
        for M in necks:
            maps = necklace_maps(N, M)
            if not maps:
                continue
            for j in by_neck[M]:
                beads_m = objects[j][1]
                for d in maps:
                    i = where[(N, restrict_along(X, N, M, beads_m, d, v0))]
                    morphisms.append((d, i, j))
                    uf.union(i, j)
    roots = {}
    comp = tuple(roots.setdefault(uf.find(i), len(roots)) for i in range(len(objects)))
    return NecklaceCategory(X, v0, v1, width_bound, tuple(objects), tuple(morphisms), comp)


# ------------------------------------------------------------------- oracle

Letter = tuple  # (side, morphism id) with side "B" or "C"


@dataclass(frozen=True)
class HomClasses:
    """Word classes from x to y in the pushout, up to a length bound."""

    x: tuple
    y: tuple
    classes: tuple  # each a sorted tuple of normal-form words
    stabilized: bool
    bound: int

    def __len__(self):
        return len(self.classes)

    def require_stable(self) -> "HomClasses":
        if not self.stabilized:
            raise BoundTooSmall(
                f"class count from {self.x} to {self.y} still changes at bound {self.bound}"
            )
        return self

    @property
    def representatives(self) -> list:
        return [c[0] for c in self.classes]


def _word_key(w):
    return (len(w), tuple((s, repr(m)) for s, m in w))


class PushoutOracle:
    """Brute-force hom-sets of the pushout B ⊔_A C of categories.

    Words of nonidentity letters from B and C are enumerated up to
    ``word_bound`` letters.  Each word is brought to a normal form by
    composing adjacent same-side letters and dropping identities; normal
    forms are then merged whenever a letter f(α) can be traded for g(α).
    Two closures are kept: one using words of length at most
    ``word_bound`` and one using words of length at most ``word_bound - 1``,
    and a class count is called stable when both agree.
    """

    def __init__(self, span: SpanData, word_bound: int, max_words: int = 2_000_000):
        if word_bound < 1:
            raise BoundTooSmall("word bound must be at least 1")
        self.span = span
        self.bound = word_bound
        A, B, C = span.A, span.B, span.C
        f, g = span.left, span.right
        self.cats = {"B": B, "C": C}
        self._obj_uf = _UnionFind()
        self._obj_index = {}
        for side, cat in self.cats.items():
            for x in cat.objects:
                self._obj_index[side, x] = self._obj_uf.add()
        for a in A.objects:
            self._obj_uf.union(self._obj_index["B", f.obj_map[a]], self._obj_index["C", g.obj_map[a]])

        self.letters = [(side, m) for side, cat in self.cats.items() for m in cat.nonidentity]
        self._lsrc = {l: self.obj_class(l[0], self.cats[l[0]].src[l[1]]) for l in self.letters}
        self._ldst = {l: self.obj_class(l[0], self.cats[l[0]].dst[l[1]]) for l in self.letters}
        starting = defaultdict(list)
        for l in self.letters:
            starting[self._lsrc[l]].append(l)

        subst = defaultdict(set)
        for al, _, _ in A.morphisms:
            lb, lc = ("B", f.mor_map[al]), ("C", g.mor_map[al])
            rb = () if B.is_identity(lb[1]) else (lb,)
            rc = () if C.is_identity(lc[1]) else (lc,)
            if rb:
                subst[lb].add(rc)
            if rc:
                subst[lc].add(rb)
        self._subst = {l: sorted(v, key=_word_key) for l, v in subst.items()}

        self._uf_hi = _UnionFind()
        self._uf_lo = _UnionFind()
        self._node = {}
        self._node_list = []
        count = 0
        classes = sorted({self._obj_uf.find(i) for i in self._obj_index.values()})
        self.object_classes = classes
        for cls in classes:
            stack = [((), cls, ((),))]
            while stack:
                w, end, prefixes = stack.pop()
                count += 1
                if count > max_words:
                    raise OracleBudgetExceeded(f"more than {max_words} words at bound {word_bound}")
                self._absorb(cls, end, w, prefixes)
                if len(w) < word_bound:
                    for l in starting.get(end, ()):
                        stack.append((w + (l,), self._ldst[l], prefixes + (self._push(prefixes[-1], l),)))
        self._by_ends = defaultdict(list)
        for nid, (s, t, _) in enumerate(self._node_list):
            self._by_ends[s, t].append(nid)
        self._cache = {}

    def obj_class(self, side: str, x) -> int:
        return self._obj_uf.find(self._obj_index[side, x])

    def _push(self, nf: tuple, cur) -> tuple:
        """Append one letter to a normal form and renormalize."""
        st = list(nf)
        while cur is not None and st and st[-1][0] == cur[0]:
            cat = self.cats[cur[0]]
            prev = st[-1][1]
            if cat.dst[prev] != cat.src[cur[1]]:
                break
            st.pop()
            h = cat.compose[cur[1], prev]
            cur = None if cat.is_identity(h) else (cur[0], h)
        if cur is not None:
            st.append(cur)
        return tuple(st)

    def normal_form(self, word: Iterable) -> tuple:
        nf = ()
        for cur in word:
            nf = self._push(nf, cur)
        return nf

    def _node_id(self, key) -> int:
        nid = self._node.get(key)
        if nid is None:
            nid = len(self._node_list)
            self._node[key] = nid
            self._node_list.append(key)
            self._uf_hi.add()
            self._uf_lo.add()
        return nid

    def _absorb(self, start, end, w, prefixes):
        """Record w (with prefixes[i] the normal form of w[:i]) and its
        one-letter substitutions."""
        base = self._node_id((start, end, prefixes[-1]))
        low = len(w) < self.bound
        for i, l in enumerate(w):
            for rep in self._subst.get(l, ()):
                nf = prefixes[i]
                for cur in rep + w[i + 1 :]:
                    nf = self._push(nf, cur)
                other = self._node_id((start, end, nf))
                self._uf_hi.union(base, other)
                if low:
                    self._uf_lo.union(base, other)

    def endpoint(self, x) -> int:
        side, ob = x
        return self.obj_class(side, ob)

    def hom_classes(self, x, y) -> HomClasses:
        cx, cy = self.endpoint(x), self.endpoint(y)
        if (cx, cy) not in self._cache:
            hi = defaultdict(list)
            lo = set()
            for nid in self._by_ends.get((cx, cy), ()):
                w = self._node_list[nid][2]
                hi[self._uf_hi.find(nid)].append(w)
                if len(w) < self.bound:
                    lo.add(self._uf_lo.find(nid))
            classes = sorted(
                (tuple(sorted(ws, key=_word_key)) for ws in hi.values()),
                key=lambda c: _word_key(c[0]),
            )
            self._cache[cx, cy] = (tuple(classes), len(lo) == len(classes))
        classes, stable = self._cache[cx, cy]
        return HomClasses(x, y, classes, stable, self.bound)

    def class_of(self, x, y, word) -> int | None:
        """Index (into ``hom_classes(x, y).classes``) of the class of a word."""
        hc = self.hom_classes(x, y)
        nf = self.normal_form(word)
        for i, c in enumerate(hc.classes):
            if nf in c:
                return i
        return None

    def class_map(self, x, y) -> tuple[HomClasses, dict]:
        """Hom classes plus a lookup from normal-form word to class index."""
        hc = self.hom_classes(x, y)
        look = {w: i for i, c in enumerate(hc.classes) for w in c}
        return hc, look


def pushout_hom_sets(span: SpanData, x, y, word_bound: int) -> HomClasses:
    """Word classes x -> y in the pushout; x and y are ("B", b) or ("C", c)."""
    return PushoutOracle(span, word_bound).hom_classes(x, y)


# ------------------------------------------------------------ segal check


@dataclass(frozen=True)
class SegalAwayVerdict:
    subject: str
    avoided: tuple
    bound: int
    holds: bool
    witness: tuple | None = None  # (necklace, bead labels, number of fillers)

    @property
    def outcome(self) -> str:
        return "HOLDS-UP-TO-BOUND" if self.holds else "FAILS"

    def __bool__(self):
        return self.holds


def check_segal_away(X: TruncatedSSet, A0: Iterable, bound: int, sub: dict | None = None, subject: str = "X") -> SegalAwayVerdict:
    """Unique extension of two-bead necklaces over joints outside ``A0``.

    A necklace of width at most ``bound`` extends uniquely over an inner
    joint exactly when the two beads meeting there have a unique common
    filler; other beads play no role, so only pairs of beads are examined.
    ``A0`` lists vertex labels.  When ``sub`` (level -> set of simplex
    labels) is given it must be the full simplicial subset on ``A0``.
    """
    A0 = list(A0)
    verts = X.index[0]
    for a in A0:
        if a not in verts:
            raise NotFullSubanima(f"{a!r} is not a vertex")
    if bound > X.dim:
        raise TruncationTooLow(f"bound {bound} exceeds dimension {X.dim}")
    avoid = {verts[a] for a in A0}
    tables = _VertexTables(X, bound)
    if sub is not None:
        for n in range(min(X.dim, max(sub, default=0)) + 1):
            expected = {
                X.simplices[n][k]
                for k in range(len(X.simplices[n]))
                if all(X.apply(n, k, (v,)) in avoid for v in range(n + 1))
            }
            if set(sub.get(n, ())) != expected:
                raise NotFullSubanima(f"subobject is not full at level {n}")
    for total in range(2, bound + 1):
        fillers = defaultdict(int)
        for k in range(len(X.simplices[total])):
            for p in range(1, total):
                front = X.apply(total, k, tuple(range(p + 1)))
                back = X.apply(total, k, tuple(range(p, total + 1)))
                fillers[p, front, back] += 1
        for p in range(1, total):
            q = total - p
            for s in range(len(X.simplices[p])):
                joint = tables.last[p][s]
                if joint in avoid:
                    continue
                for t in tables.starting[q].get(joint, ()):
                    cnt = fillers.get((p, s, t), 0)
                    if cnt != 1:
                        neck = Necklace(total, (0, p, total))
                        wit = (str(neck), (X.simplices[p][s], X.simplices[q][t]), cnt)
                        return SegalAwayVerdict(subject, tuple(A0), bound, False, wit)
    return SegalAwayVerdict(subject, tuple(A0), bound, True)
