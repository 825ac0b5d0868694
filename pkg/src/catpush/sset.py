"""Truncated simplicial sets, nerves and their integral homology."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .core import FinCat, FunctorData

DEFAULT_DIM = 4


class TruncationTooLow(ValueError):
    pass


class NotSimplicial(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TruncatedSSet:
    """Simplices through dimension ``dim`` with index tables.

    ``faces[n][i][k]`` is the index of d_i of simplex k in level n-1 (n >= 1);
    ``degens[n][i][k]`` the index of s_i of simplex k in level n+1 (n < dim).
    ``bounded_dim``, when known, is a dimension above which no simplex is
    nondegenerate, so the truncation loses nothing.
    """

    dim: int
    simplices: tuple
    faces: tuple
    degens: tuple
    bounded_dim: int | None = None

    def __repr__(self):
        sizes = ", ".join(str(len(s)) for s in self.simplices)
        return f"TruncatedSSet(dim={self.dim}, sizes=[{sizes}])"

    @cached_property
    def index(self) -> tuple:
        return tuple({lab: k for k, lab in enumerate(level)} for level in self.simplices)

    def face(self, n: int, i: int, k: int) -> int:
        return self.faces[n][i][k]

    def degen(self, n: int, i: int, k: int) -> int:
        return self.degens[n][i][k]

    @cached_property
    def degenerate(self) -> tuple:
        """Per level, the set of indices of degenerate simplices."""
        out = [frozenset()]
        for n in range(1, self.dim + 1):
            out.append(frozenset(k for table in self.degens[n - 1] for k in table))
        return tuple(out)

    def nondegenerate(self, n: int) -> list:
        deg = self.degenerate[n]
        return [k for k in range(len(self.simplices[n])) if k not in deg]

    def vertex(self, n: int, k: int, v: int) -> int:
        """Index of the v-th vertex of simplex k in level n."""
        return self.apply(n, k, (v,))

    def apply(self, n: int, k: int, theta: Sequence[int]) -> int:
        """theta^* of simplex k in level n for a monotone theta: [p] -> [n].

        Returns an index in level p = len(theta) - 1.
        """
        image = sorted(set(theta))
        for j in range(n, -1, -1):
            if j not in image:
                k = self.faces[n][j][k]
                n -= 1
        pos = {v: i for i, v in enumerate(image)}
        return self._degenerate_along([pos[v] for v in theta], n, k)

    def _degenerate_along(self, t: list, n: int, k: int) -> int:
        for i in range(len(t) - 1):
            if t[i] == t[i + 1]:
                shorter = t[: i + 1] + t[i + 2 :]
                inner = self._degenerate_along(shorter, n, k)
                return self.degens[len(shorter) - 1][i][inner]
        return k

    def check_identities(self) -> None:
        """Exhaustively verify the simplicial identities; raise NotSimplicial."""
        d, s = self.faces, self.degens
        for n in range(2, self.dim + 1):
            for k in range(len(self.simplices[n])):
                for i in range(n + 1):
                    for j in range(i + 1, n + 1):
                        # d_i d_j = d_{j-1} d_i
                        if d[n - 1][i][d[n][j][k]] != d[n - 1][j - 1][d[n][i][k]]:
                            raise NotSimplicial(f"d_{i} d_{j} at level {n}", (n, k))
        for n in range(0, self.dim):
            for k in range(len(self.simplices[n])):
                for i in range(n + 1):
                    sk = s[n][i][k]
                    for j in range(n + 2):
                        got = d[n + 1][j][sk]
                        if j in (i, i + 1):
                            want = k
                        elif j < i:
                            want = s[n - 1][i - 1][d[n][j][k]]
                        else:
                            want = s[n - 1][i][d[n][j - 1][k]]
                        if got != want:
                            raise NotSimplicial(f"d_{j} s_{i} at level {n}", (n, k))
                    for j in range(i, n + 1):
                        # s_i s_j = s_{j+1} s_i for i <= j
                        if n + 1 <= self.dim - 1 and s[n + 1][i][s[n][j][k]] != s[n + 1][j + 1][sk]:
                            raise NotSimplicial(f"s_{i} s_{j} at level {n}", (n, k))


def build_sset(
    dim: int,
    levels: Sequence[Sequence],
    face: Callable,
    degen: Callable,
    bounded_dim: int | None = None,
) -> TruncatedSSet:
    """Tabulate face and degeneracy maps given on labels.

    ``face(n, i, label)`` and ``degen(n, i, label)`` return labels.
    """
    levels = tuple(tuple(lv) for lv in levels[: dim + 1])
    if len(levels) != dim + 1:
        raise TruncationTooLow("not enough levels for the requested dimension")
    index = [{lab: k for k, lab in enumerate(lv)} for lv in levels]
    faces = [()]
    for n in range(1, dim + 1):
        faces.append(
            tuple(tuple(index[n - 1][face(n, i, lab)] for lab in levels[n]) for i in range(n + 1))
        )
    degens = []
    for n in range(dim):
        degens.append(
            tuple(tuple(index[n + 1][degen(n, i, lab)] for lab in levels[n]) for i in range(n + 1))
        )
    degens.append(())
    return TruncatedSSet(dim, levels, tuple(faces), tuple(degens), bounded_dim)


def nerve(C: FinCat, d: int = DEFAULT_DIM) -> TruncatedSSet:
    """Composable strings of length n in level n (objects in level 0)."""
    if d < 0:
        raise TruncationTooLow("dimension must be nonnegative")
    levels = [list(C.objects)]
    if d >= 1:
        levels.append([(m,) for m, _, _ in C.morphisms])
    for n in range(2, d + 1):
        levels.append([w + (m,) for w in levels[-1] for m in C.outgoing(C.dst[w[-1]])])

    def face(n, i, w):
        if n == 1:
            return C.dst[w[0]] if i == 0 else C.src[w[0]]
        if i == 0:
            return w[1:]
        if i == n:
            return w[:-1]
        return w[: i - 1] + (C.compose[w[i], w[i - 1]],) + w[i + 1 :]

    def degen(n, i, w):
        if n == 0:
            return (C.identities[w],)
        v = C.src[w[0]] if i == 0 else C.dst[w[i - 1]]
        return w[:i] + (C.identities[v],) + w[i:]

    bounded = C.longest_chain() if C.chain_bounded() else None
    return build_sset(d, levels, face, degen, bounded)


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: TruncatedSSet
    target: TruncatedSSet
    levels: tuple  # levels[n][k] = index of the image in target level n

    def check(self) -> None:
        X, Y, f = self.source, self.target, self.levels
        if X.dim != Y.dim:
            raise NotSimplicial("source and target have different dimensions")
        for n in range(1, X.dim + 1):
            for i in range(n + 1):
                for k in range(len(X.simplices[n])):
                    if f[n - 1][X.faces[n][i][k]] != Y.faces[n][i][f[n][k]]:
                        raise NotSimplicial(f"face d_{i} not preserved at level {n}", (n, k))
        for n in range(X.dim):
            for i in range(n + 1):
                for k in range(len(X.simplices[n])):
                    if f[n + 1][X.degens[n][i][k]] != Y.degens[n][i][f[n][k]]:
                        raise NotSimplicial(f"degeneracy s_{i} not preserved at level {n}", (n, k))


def nerve_map(F: FunctorData, X: TruncatedSSet, Y: TruncatedSSet) -> SimplicialMap:
    """N(F) between already computed nerves of F's source and target."""
    levels = [tuple(Y.index[0][F.obj_map[x]] for x in X.simplices[0])]
    for n in range(1, X.dim + 1):
        idx = Y.index[n]
        levels.append(tuple(idx[tuple(F.mor_map[m] for m in w)] for w in X.simplices[n]))
    return SimplicialMap(X, Y, tuple(levels))


class _UnionFind:
    def __init__(self, n: int = 0):
        self.parent = list(range(n))

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self) -> list:
        out: dict = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


UnionFind = _UnionFind


@dataclass(frozen=True)
class Components:
    """Connected components of the vertex set."""

    blocks: tuple  # tuples of vertex indices
    of_vertex: tuple  # vertex index -> block number

    def __len__(self):
        return len(self.blocks)


def pi0(X: TruncatedSSet) -> Components:
    if X.dim < 1:
        raise TruncationTooLow("pi0 needs the 1-simplices")
    uf = _UnionFind(len(X.simplices[0]))
    for k in range(len(X.simplices[1])):
        uf.union(X.faces[1][0][k], X.faces[1][1][k])
    blocks = sorted((tuple(sorted(g)) for g in uf.groups()), key=lambda b: b[0])
    of = [0] * len(X.simplices[0])
    for i, blk in enumerate(blocks):
        for v in blk:
            of[v] = i
    return Components(tuple(blocks), tuple(of))


# ---------------------------------------------------------------- homology


def _dense_invariants(rows: list) -> list:
    """Nonzero invariant factors of a dense integer matrix (list of lists)."""
    M = [list(r) for r in rows if any(r)]
    out = []
    while M:
        ncols = len(M[0])
        best = None
        for i, r in enumerate(M):
            for j, v in enumerate(r):
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        M[0], M[i] = M[i], M[0]
        for r in M:
            r[0], r[j] = r[j], r[0]
        while True:
            p = M[0][0]
            dirty = False
            for r in M[1:]:
                if r[0]:
                    q = r[0] // p
                    for c in range(ncols):
                        r[c] -= q * M[0][c]
                    if r[0]:
                        dirty = True
            for c in range(1, ncols):
                if M[0][c]:
                    q = M[0][c] // p
                    for r in M:
                        r[c] -= q * r[0]
                    if M[0][c]:
                        dirty = True
            if dirty:
                cand = [(abs(r[0]), i, 0) for i, r in enumerate(M) if r[0]]
                cand += [(abs(v), 0, c) for c, v in enumerate(M[0]) if v]
                _, i, j = min(cand)
                M[0], M[i] = M[i], M[0]
                for r in M:
                    r[0], r[j] = r[j], r[0]
                continue
            bad = next(
                (i for i, r in enumerate(M[1:], 1) if any(v % p for v in r[1:])), None
            )
            if bad is None:
                break
            for c in range(ncols):
                M[0][c] += M[bad][c]
        out.append(abs(M[0][0]))
        M = [r[1:] for r in M[1:] if any(r[1:])]
    return out


def invariant_factors(rows: list, ncols: int) -> list:
    """Nonzero invariant factors of a sparse integer matrix.

    ``rows`` is a list of dicts column -> value.  Unit pivots are eliminated
    sparsely first; whatever remains goes through a dense Smith reduction.
    """
    rows = [dict(r) for r in rows if r]
    cols: dict = {}
    for i, r in enumerate(rows):
        for c in r:
            cols.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive, key=lambda i: len(rows[i])):
            r = rows[i]
            piv = next((c for c, v in r.items() if v in (1, -1)), None)
            if piv is None:
                continue
            v = r[piv]
            for i2 in list(cols[piv]):
                if i2 == i:
                    continue
                r2 = rows[i2]
                factor = r2[piv] * v
                for c, val in r.items():
                    nv = r2.get(c, 0) - factor * val
                    if nv:
                        if c not in r2:
                            cols.setdefault(c, set()).add(i2)
                        r2[c] = nv
                    elif c in r2:
                        del r2[c]
                        cols[c].discard(i2)
                if not r2:
                    alive.discard(i2)
            for c in r:
                cols[c].discard(i)
            alive.discard(i)
            units += 1
            progress = True
            break
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    if not rest:
        return [1] * units
    used = sorted({c for r in rest for c in r})
    pos = {c: j for j, c in enumerate(used)}
    dense = []
    for r in rest:
        line = [0] * len(used)
        for c, v in r.items():
            line[pos[c]] = v
        dense.append(line)
    return [1] * units + _dense_invariants(dense)


@dataclass(frozen=True)
class HomologyReport:
    """H_n for 0 <= n < dim as (free rank, torsion invariant factors).

    ``truncated`` is cleared only when the simplicial set is known to have
    no nondegenerate simplices above the recorded range.
    """

    dim: int
    free: tuple
    torsion: tuple
    truncated: bool = True

    def __repr__(self):
        parts = []
        for n, (r, t) in enumerate(zip(self.free, self.torsion)):
            parts.append(f"H{n}={_group_str(r, t)}")
        flag = " (truncated)" if self.truncated else ""
        return "HomologyReport(" + ", ".join(parts) + flag + ")"

    def summary(self) -> list:
        return [_group_str(r, t) for r, t in zip(self.free, self.torsion)]

    def through(self, degree: int) -> tuple:
        """(free, torsion) pairs for degrees 0..degree."""
        return tuple(zip(self.free[: degree + 1], self.torsion[: degree + 1]))

    def reduced_vanishes(self, upto: int | None = None) -> bool:
        top = self.dim - 1 if upto is None else upto
        if not self.free or self.free[0] != 1 or self.torsion[0]:
            return False
        return all(self.free[n] == 0 and not self.torsion[n] for n in range(1, top + 1))


def _group_str(rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if rank:
        parts.append("Z" if rank == 1 else f"Z^{rank}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def boundary_rows(X: TruncatedSSet, n: int, basis_lo: dict) -> list:
    """Rows of the normalised boundary C_n -> C_{n-1}, one per nondegenerate n-simplex."""
    deg = X.degenerate[n - 1]
    rows = []
    for k in X.nondegenerate(n):
        row: dict = {}
        for i in range(n + 1):
            fk = X.faces[n][i][k]
            if fk in deg:
                continue
            c = basis_lo[fk]
            row[c] = row.get(c, 0) + (-1 if i % 2 else 1)
        rows.append({c: v for c, v in row.items() if v})
    return rows


def homology(X: TruncatedSSet) -> HomologyReport:
    if X.dim < 1:
        raise TruncationTooLow("homology needs at least the 1-simplices")
    basis = [{k: j for j, k in enumerate(X.nondegenerate(n))} for n in range(X.dim + 1)]
    ranks = [0] * (X.dim + 2)
    factors = [[] for _ in range(X.dim + 2)]
    for n in range(1, X.dim + 1):
        inv = invariant_factors(boundary_rows(X, n, basis[n - 1]), len(basis[n - 1]))
        ranks[n] = len(inv)
        factors[n] = [t for t in inv if t > 1]
    free, tors = [], []
    for n in range(X.dim):
        free.append(len(basis[n]) - ranks[n] - ranks[n + 1])
        tors.append(tuple(factors[n + 1]))
    exact = X.bounded_dim is not None and X.bounded_dim < X.dim
    return HomologyReport(X.dim, tuple(free), tuple(tors), truncated=not exact)


def euler_characteristic(X: TruncatedSSet) -> int:
    return sum((-1) ** n * len(X.nondegenerate(n)) for n in range(X.dim + 1))


@dataclass(frozen=True)
class ContractibilityVerdict:
    contractible: bool
    dim: int
    h1: str
    report: HomologyReport

    @property
    def label(self) -> str:
        return f"CONTRACTIBLE-UP-TO-{self.dim}" if self.contractible else f"NOT-CONTRACTIBLE (H1={self.h1})"

    def __bool__(self):
        return self.contractible


def is_weakly_contractible_up_to(X: TruncatedSSet, report: HomologyReport | None = None) -> ContractibilityVerdict:
    """Connected with vanishing reduced homology in every computed degree.

    This is a homological statement through ``X.dim - 1`` only; it never
    certifies contractibility outright.
    """
    if X.dim < 2:
        raise TruncationTooLow("contractibility check needs dimension at least 2")
    rep = report if report is not None else homology(X)
    h1 = rep.summary()[1]
    return ContractibilityVerdict(rep.reduced_vanishes(), X.dim, h1, rep)


# ------------------------------------------------------------ constructions


def double_mapping_cylinder(f: SimplicialMap, g: SimplicialMap) -> TruncatedSSet:
    """Y ⊔ X×Δ¹ ⊔ Z with X×{0} glued to Y along f and X×{1} to Z along g."""
    X, Y, Z = f.source, f.target, g.target
    if g.source is not X:
        raise NotSimplicial("the two maps have different sources")
    f.check()
    g.check()
    d = X.dim
    if Y.dim != d or Z.dim != d:
        raise NotSimplicial("dimensions differ")
    # (σ, k): the first k vertices of σ sit at the Y end
    levels = []
    for n in range(d + 1):
        lv = [("Y", j) for j in range(len(Y.simplices[n]))]
        lv += [("Z", j) for j in range(len(Z.simplices[n]))]
        lv += [("X", s, k) for s in range(len(X.simplices[n])) for k in range(1, n + 1)]
        levels.append(lv)

    def settle(n, s, k):
        if k == 0:
            return ("Z", g.levels[n][s])
        if k == n + 1:
            return ("Y", f.levels[n][s])
        return ("X", s, k)

    def face(n, i, lab):
        if lab[0] == "Y":
            return ("Y", Y.faces[n][i][lab[1]])
        if lab[0] == "Z":
            return ("Z", Z.faces[n][i][lab[1]])
        _, s, k = lab
        return settle(n - 1, X.faces[n][i][s], k - 1 if i < k else k)

    def degen(n, i, lab):
        if lab[0] == "Y":
            return ("Y", Y.degens[n][i][lab[1]])
        if lab[0] == "Z":
            return ("Z", Z.degens[n][i][lab[1]])
        _, s, k = lab
        return settle(n + 1, X.degens[n][i][s], k + 1 if i < k else k)

    return build_sset(d, levels, face, degen)


def sset_pushout(f: SimplicialMap, g: SimplicialMap) -> TruncatedSSet:
    """Levelwise pushout X ⊔_A Y of f: A -> X and g: A -> Y.

    Labels are ``("Y", k)`` whenever the class meets Y, else ``("X", k)``.
    """
    A, X, Y = f.source, f.target, g.target
    if g.source is not A:
        raise NotSimplicial("the two maps have different sources")
    d = A.dim
    reps = []
    cls = []
    for n in range(d + 1):
        nx = len(X.simplices[n])
        uf = _UnionFind(nx + len(Y.simplices[n]))
        for a in range(len(A.simplices[n])):
            uf.union(f.levels[n][a], nx + g.levels[n][a])
        rep_of = {}
        for e in range(nx + len(Y.simplices[n])):
            r = uf.find(e)
            lab = ("Y", e - nx) if e >= nx else ("X", e)
            cur = rep_of.get(r)
            if cur is None or (lab[0] == "Y" and cur[0] == "X"):
                rep_of[r] = lab
        labels = sorted(set(rep_of.values()), key=lambda t: (t[0] == "X", t[1]))
        reps.append(labels)
        cls.append((uf, nx, rep_of))

    def find(n, side, k):
        uf, nx, rep_of = cls[n]
        e = k + nx if side == "Y" else k
        return rep_of[uf.find(e)]

    def face(n, i, lab):
        S = Y if lab[0] == "Y" else X
        return find(n - 1, lab[0], S.faces[n][i][lab[1]])

    def degen(n, i, lab):
        S = Y if lab[0] == "Y" else X
        return find(n + 1, lab[0], S.degens[n][i][lab[1]])

    return build_sset(d, reps, face, degen)


def from_ordered_complex(faces_list, dim: int) -> TruncatedSSet:
    """The simplicial set generated by an ordered simplicial complex.

    ``faces_list`` holds strictly increasing vertex tuples; their faces are
    included automatically.  Level n consists of nondecreasing (n+1)-tuples
    whose underlying vertex set is a simplex.
    """
    simplices = set()
    for s in faces_list:
        s = tuple(s)
        if list(s) != sorted(set(s)):
            raise ValueError(f"{s!r} is not strictly increasing")
        n = len(s)
        for mask in range(1, 1 << n):
            simplices.add(tuple(s[i] for i in range(n) if mask >> i & 1))
    vertices = sorted({s[0] for s in simplices if len(s) == 1})
    levels = [[(v,) for v in vertices]]
    for n in range(1, dim + 1):
        nxt = set()
        for w in levels[-1]:
            for v in vertices:
                if v >= w[-1] and tuple(sorted(set(w + (v,)))) in simplices:
                    nxt.add(w + (v,))
        levels.append(sorted(nxt))
    top = max((len(s) - 1 for s in simplices), default=0)

    def face(n, i, w):
        return w[:i] + w[i + 1 :]

    def degen(n, i, w):
        return w[: i + 1] + w[i:]

    return build_sset(dim, levels, face, degen, bounded_dim=top)


def disjoint_union(X: TruncatedSSet, Y: TruncatedSSet) -> TruncatedSSet:
    d = min(X.dim, Y.dim)
    levels = [[(0, k) for k in range(len(X.simplices[n]))] + [(1, k) for k in range(len(Y.simplices[n]))] for n in range(d + 1)]

    def face(n, i, lab):
        S = X if lab[0] == 0 else Y
        return (lab[0], S.faces[n][i][lab[1]])

    def degen(n, i, lab):
        S = X if lab[0] == 0 else Y
        return (lab[0], S.degens[n][i][lab[1]])

    bd = None
    if X.bounded_dim is not None and Y.bounded_dim is not None:
        bd = max(X.bounded_dim, Y.bounded_dim)
    return build_sset(d, levels, face, degen, bd)


def empty_sset(dim: int) -> TruncatedSSet:
    return build_sset(dim, [[] for _ in range(dim + 1)], None, None, bounded_dim=0)


def discrete_sset(labels, dim: int) -> TruncatedSSet:
    """Constant simplicial set on a finite set of labels."""
    labels = list(labels)
    levels = [[(lab, n) for lab in labels] for n in range(dim + 1)]
    return build_sset(
        dim, levels, lambda n, i, t: (t[0], n - 1), lambda n, i, t: (t[0], n + 1), bounded_dim=0
    )
