"""Finite categories and strict 2-categories given by explicit tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct
from typing import Callable, Hashable, Iterator, Sequence

# ---------------------------------------------------------------- 1-categories


@dataclass(eq=False)
class FinCategory:
    """A finite category.  ``comp[(g, f)]`` is ``g o f`` for ``tgt f == src g``."""

    objects: tuple
    morphisms: tuple
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    ident: tuple[int, ...]
    comp: dict[tuple[int, int], int]
    _homs: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        homs: dict[tuple[int, int], list[int]] = {}
        for f, (a, b) in enumerate(zip(self.src, self.tgt)):
            homs.setdefault((a, b), []).append(f)
        self._homs = homs

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def hom(self, a: int, b: int) -> list[int]:
        return self._homs.get((a, b), [])

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def is_identity(self, f: int) -> bool:
        return self.src[f] == self.tgt[f] and self.ident[self.src[f]] == f

    def is_invertible(self, f: int) -> bool:
        a, b = self.src[f], self.tgt[f]
        return any(self.comp[(g, f)] == self.ident[a] and self.comp[(f, g)] == self.ident[b] for g in self.hom(b, a))

    def isomorphic(self, a: int, b: int) -> bool:
        return any(self.is_invertible(f) for f in self.hom(a, b))

    def object_index(self, label: Hashable) -> int:
        return self.objects.index(label)

    def __repr__(self) -> str:
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


def make_category(
    objects: Sequence,
    morphisms: Sequence[tuple[Hashable, int, int]],
    identities: Sequence[int],
    compose: Callable[[int, int], int],
) -> FinCategory:
    """Tabulate ``compose(g, f)`` over all composable pairs."""
    src = tuple(s for _, s, _ in morphisms)
    tgt = tuple(t for _, _, t in morphisms)
    comp = {}
    for f in range(len(morphisms)):
        for g in range(len(morphisms)):
            if tgt[f] == src[g]:
                comp[(g, f)] = compose(g, f)
    return FinCategory(tuple(objects), tuple(lab for lab, _, _ in morphisms), src, tgt, tuple(identities), comp)


def poset_category(objects: Sequence, leq: Callable[[Hashable, Hashable], bool]) -> FinCategory:
    objs = list(objects)
    mors = [((a, b), i, j) for i, a in enumerate(objs) for j, b in enumerate(objs) if leq(a, b)]
    idx = {(s, t): n for n, (_, s, t) in enumerate(mors)}
    ident = [idx[(i, i)] for i in range(len(objs))]
    return make_category(objs, mors, ident, lambda g, f: idx[(mors[f][1], mors[g][2])])


def empty_category() -> FinCategory:
    return make_category([], [], [], lambda g, f: -1)


def interval(k: int) -> FinCategory:
    """The ordinal ``[k]`` as a poset; ``k = -1`` is empty."""
    return poset_category(range(k + 1), lambda a, b: a <= b)


def rect(k: int, l: int) -> FinCategory:
    """The poset ``[k] x [l]^op`` with objects ``(i, j)``."""
    objs = [(i, j) for i in range(k + 1) for j in range(l + 1)]
    return poset_category(objs, lambda a, b: a[0] <= b[0] and a[1] >= b[1])


def walking_iso() -> FinCategory:
    """Two objects and a pair of mutually inverse arrows."""
    mors = [("id0", 0, 0), ("id1", 1, 1), ("f", 0, 1), ("g", 1, 0)]
    # with only one arrow between any two objects, composites are forced
    by_ends = {(s, t): n for n, (_, s, t) in enumerate(mors)}
    return make_category([0, 1], mors, [0, 1], lambda g, f: by_ends[(mors[f][1], mors[g][2])])


def product_category(C: FinCategory, D: FinCategory) -> FinCategory:
    objs = [(a, b) for a in C.objects for b in D.objects]
    oidx = {(i, j): n for n, (i, j) in enumerate(iproduct(range(C.n_objects), range(D.n_objects)))}
    mors = []
    midx = {}
    for f in range(C.n_morphisms):
        for g in range(D.n_morphisms):
            midx[(f, g)] = len(mors)
            mors.append(((C.morphisms[f], D.morphisms[g]), oidx[(C.src[f], D.src[g])], oidx[(C.tgt[f], D.tgt[g])]))
    pairs = list(midx)
    ident = [midx[(C.ident[i], D.ident[j])] for i in range(C.n_objects) for j in range(D.n_objects)]

    def compose(g: int, f: int) -> int:
        (g1, g2), (f1, f2) = pairs[g], pairs[f]
        return midx[(C.comp[(g1, f1)], D.comp[(g2, f2)])]

    return make_category(objs, mors, ident, compose)


def opposite(C: FinCategory) -> FinCategory:
    mors = [(C.morphisms[f], C.tgt[f], C.src[f]) for f in range(C.n_morphisms)]
    return make_category(C.objects, mors, C.ident, lambda g, f: C.comp[(f, g)])


def make_base_category(spec: tuple) -> FinCategory:
    """``("interval", k)``, ``("rect", k, l)`` or ``("walking_iso",)``."""
    kind = spec[0]
    if kind == "interval":
        return interval(spec[1])
    if kind == "rect":
        return rect(spec[1], spec[2])
    if kind == "walking_iso":
        return walking_iso()
    raise ValueError(f"unknown base category {spec!r}")


def validate_category(C: FinCategory) -> list[str]:
    problems = []
    for a in range(C.n_objects):
        i = C.ident[a]
        if C.src[i] != a or C.tgt[i] != a:
            problems.append(f"identity of object {a} has wrong ends")
    for f in range(C.n_morphisms):
        a, b = C.src[f], C.tgt[f]
        if C.comp.get((f, C.ident[a])) != f or C.comp.get((C.ident[b], f)) != f:
            problems.append(f"unit law fails at morphism {f}")
    for (g, f), h in C.comp.items():
        if C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            problems.append(f"composite of {g} and {f} has wrong ends")
    if problems:
        return problems
    for f in range(C.n_morphisms):
        for g in (x for x in range(C.n_morphisms) if C.src[x] == C.tgt[f]):
            gf = C.comp[(g, f)]
            for h in (x for x in range(C.n_morphisms) if C.src[x] == C.tgt[g]):
                if C.comp[(h, gf)] != C.comp[(C.comp[(h, g)], f)]:
                    problems.append(f"associativity fails at {h}, {g}, {f}")
    return problems


# ---------------------------------------------------------------- 2-categories


@dataclass(eq=False)
class Fin2Category:
    """A finite strict 2-category.

    ``homs[(a, b)]`` is the hom category: its objects are the 1-morphisms
    ``a -> b`` and its morphisms are the 2-morphisms, composed vertically.
    ``hcomp1[(a, b, c)][(f, g)]`` is ``g o f`` for ``f: a -> b``,
    ``g: b -> c``; ``hcomp2`` is the analogous table on 2-morphisms.
    """

    objects: tuple
    homs: dict[tuple[int, int], FinCategory]
    ident1: tuple[int, ...]
    hcomp1: dict[tuple[int, int, int], dict[tuple[int, int], int]]
    hcomp2: dict[tuple[int, int, int], dict[tuple[int, int], int]]

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def hom(self, a: int, b: int) -> FinCategory:
        return self.homs[(a, b)]

    def one_cells(self, a: int, b: int) -> range:
        return range(self.homs[(a, b)].n_objects)

    def two_cells(self, a: int, b: int, f: int, g: int) -> list[int]:
        return self.homs[(a, b)].hom(f, g)

    def id1(self, a: int) -> int:
        return self.ident1[a]

    def id2(self, a: int, b: int, f: int) -> int:
        return self.homs[(a, b)].ident[f]

    def h1(self, a: int, b: int, c: int, f: int, g: int) -> int:
        return self.hcomp1[(a, b, c)][(f, g)]

    def h2(self, a: int, b: int, c: int, alpha: int, beta: int) -> int:
        return self.hcomp2[(a, b, c)][(alpha, beta)]

    def v2(self, a: int, b: int, beta: int, alpha: int) -> int:
        return self.homs[(a, b)].comp[(beta, alpha)]

    def object_index(self, label: Hashable) -> int:
        return self.objects.index(label)

    def sizes(self) -> tuple[int, int, int]:
        ones = sum(H.n_objects for H in self.homs.values())
        twos = sum(H.n_morphisms for H in self.homs.values())
        return self.n_objects, ones, twos

    def __repr__(self) -> str:
        n, o, t = self.sizes()
        return f"Fin2Category({n} objects, {o} 1-morphisms, {t} 2-morphisms)"


def make_2category(
    objects: Sequence,
    homs: dict[tuple[int, int], FinCategory],
    ident1: Sequence[int],
    compose1: Callable[[int, int, int, int, int], int],
    compose2: Callable[[int, int, int, int, int], int],
) -> Fin2Category:
    """Tabulate horizontal composition from functions on local indices."""
    n = len(objects)
    h1, h2 = {}, {}
    for a in range(n):
        for b in range(n):
            Hab = homs[(a, b)]
            if not Hab.n_objects:
                continue
            for c in range(n):
                Hbc = homs[(b, c)]
                if not Hbc.n_objects:
                    continue
                h1[(a, b, c)] = {
                    (f, g): compose1(a, b, c, f, g) for f in range(Hab.n_objects) for g in range(Hbc.n_objects)
                }
                h2[(a, b, c)] = {
                    (al, be): compose2(a, b, c, al, be) for al in range(Hab.n_morphisms) for be in range(Hbc.n_morphisms)
                }
    return Fin2Category(tuple(objects), homs, tuple(ident1), h1, h2)


def terminal_category() -> FinCategory:
    return interval(0)


def locally_discrete(C: FinCategory) -> Fin2Category:
    """``C`` viewed as a 2-category with only identity 2-morphisms."""
    n = C.n_objects
    homs = {}
    local: dict[tuple[int, int], list[int]] = {}
    for a in range(n):
        for b in range(n):
            arrows = C.hom(a, b)
            local[(a, b)] = arrows
            homs[(a, b)] = make_category(
                [C.morphisms[f] for f in arrows],
                [(("id", C.morphisms[f]), i, i) for i, f in enumerate(arrows)],
                list(range(len(arrows))),
                lambda g, f: f,
            )
    pos = {(a, b): {f: i for i, f in enumerate(local[(a, b)])} for a in range(n) for b in range(n)}

    def c1(a, b, c, f, g):
        return pos[(a, c)][C.comp[(local[(b, c)][g], local[(a, b)][f])]]

    return make_2category(C.objects, homs, [pos[(a, a)][C.ident[a]] for a in range(n)], c1, c1)


def suspend2(P: FinCategory) -> Fin2Category:
    """Two objects ``x_bot, x_top`` with ``Map(x_bot, x_top) = P``."""
    point = terminal_category()
    homs = {(0, 0): point, (1, 1): point, (0, 1): P, (1, 0): empty_category()}

    def c1(a, b, c, f, g):
        return g if a == b else f

    return make_2category(("x_bot", "x_top"), homs, (0, 0), c1, c1)


def oriental2(m: int) -> Fin2Category:
    """The 2-truncated oriental on ``[m]``.

    1-morphisms ``i -> j`` are the subsets of ``{i..j}`` containing both ends,
    2-morphisms are inclusions, and horizontal composition is union.
    """
    homs = {}
    cells: dict[tuple[int, int], list[frozenset]] = {}
    for i in range(m + 1):
        for j in range(m + 1):
            if i > j:
                cells[(i, j)] = []
                homs[(i, j)] = empty_category()
                continue
            inner = range(i + 1, j)
            subs = [frozenset((i, j)) | frozenset(c) for r in range(len(inner) + 1) for c in combinations(inner, r)]
            subs.sort(key=lambda s: (len(s), sorted(s)))
            cells[(i, j)] = subs
            homs[(i, j)] = poset_category([tuple(sorted(s)) for s in subs], lambda a, b: set(a) <= set(b))
    pos = {key: {tuple(sorted(s)): n for n, s in enumerate(v)} for key, v in cells.items()}

    def c1(a, b, c, f, g):
        return pos[(a, c)][tuple(sorted(set(homs[(a, b)].objects[f]) | set(homs[(b, c)].objects[g])))]

    def c2(a, b, c, al, be):
        Hab, Hbc, Hac = homs[(a, b)], homs[(b, c)], homs[(a, c)]
        s = c1(a, b, c, Hab.src[al], Hbc.src[be])
        t = c1(a, b, c, Hab.tgt[al], Hbc.tgt[be])
        return Hac.hom(s, t)[0]

    return make_2category(tuple(range(m + 1)), homs, [0] * (m + 1), c1, c2)


def oriental_cell(O: Fin2Category, subset: Sequence[int]) -> tuple[int, int, int]:
    """``(i, j, index)`` of the 1-morphism of an oriental given by a vertex subset."""
    s = tuple(sorted(subset))
    i, j = s[0], s[-1]
    return i, j, O.homs[(i, j)].objects.index(s)


def product2(A: Fin2Category, B: Fin2Category) -> Fin2Category:
    objs = [(x, y) for x in A.objects for y in B.objects]
    pairs = list(iproduct(range(A.n_objects), range(B.n_objects)))
    homs = {}
    for p, (a, a2) in enumerate(pairs):
        for q, (b, b2) in enumerate(pairs):
            homs[(p, q)] = product_category(A.homs[(a, b)], B.homs[(a2, b2)])
    def split1(p, q, f):
        n2 = B.homs[(pairs[p][1], pairs[q][1])].n_objects
        return divmod(f, n2)

    def split2(p, q, al):
        n2 = B.homs[(pairs[p][1], pairs[q][1])].n_morphisms
        return divmod(al, n2)

    def c1(p, q, r, f, g):
        f1, f2 = split1(p, q, f)
        g1, g2 = split1(q, r, g)
        (a, a2), (b, b2), (c, c2) = pairs[p], pairs[q], pairs[r]
        h1 = A.h1(a, b, c, f1, g1)
        h2 = B.h1(a2, b2, c2, f2, g2)
        return h1 * B.homs[(a2, c2)].n_objects + h2

    def c2(p, q, r, al, be):
        f1, f2 = split2(p, q, al)
        g1, g2 = split2(q, r, be)
        (a, a2), (b, b2), (c, c2) = pairs[p], pairs[q], pairs[r]
        h1 = A.h2(a, b, c, f1, g1)
        h2 = B.h2(a2, b2, c2, f2, g2)
        return h1 * B.homs[(a2, c2)].n_morphisms + h2

    ident = [A.ident1[a] * B.homs[(a2, a2)].n_objects + B.ident1[a2] for a, a2 in pairs]
    return make_2category(objs, homs, ident, c1, c2)


def validate_2cat(A: Fin2Category) -> list[str]:
    """All violated 2-category axioms; empty means ``A`` is a strict 2-category."""
    problems: list[str] = []
    n = A.n_objects
    for key, H in A.homs.items():
        for p in validate_category(H):
            problems.append(f"hom {key}: {p}")
    if problems:
        return problems
    for a in range(n):
        if not (0 <= A.ident1[a] < A.homs[(a, a)].n_objects):
            problems.append(f"object {a} has no identity 1-morphism")
            return problems
    for (a, b, c), table in A.hcomp1.items():
        Hab, Hbc, Hac = A.homs[(a, b)], A.homs[(b, c)], A.homs[(a, c)]
        t2 = A.hcomp2[(a, b, c)]
        for al in range(Hab.n_morphisms):
            for be in range(Hbc.n_morphisms):
                g = t2[(al, be)]
                if Hac.src[g] != table[(Hab.src[al], Hbc.src[be])] or Hac.tgt[g] != table[(Hab.tgt[al], Hbc.tgt[be])]:
                    problems.append(f"horizontal composite of 2-morphisms {al},{be} on {(a, b, c)} has wrong ends")
        if problems:
            return problems
        for f in range(Hab.n_objects):
            for g in range(Hbc.n_objects):
                if t2[(Hab.ident[f], Hbc.ident[g])] != Hac.ident[table[(f, g)]]:
                    problems.append(f"identity 2-morphisms not preserved at {(a, b, c)}, {f},{g}")
        # interchange
        for al in range(Hab.n_morphisms):
            for al2 in (x for x in range(Hab.n_morphisms) if Hab.src[x] == Hab.tgt[al]):
                v1 = Hab.comp[(al2, al)]
                for be in range(Hbc.n_morphisms):
                    for be2 in (x for x in range(Hbc.n_morphisms) if Hbc.src[x] == Hbc.tgt[be]):
                        lhs = t2[(v1, Hbc.comp[(be2, be)])]
                        rhs = Hac.comp[(t2[(al2, be2)], t2[(al, be)])]
                        if lhs != rhs:
                            problems.append(f"interchange fails on {(a, b, c)}")
    for a in range(n):
        for b in range(n):
            if not A.homs[(a, b)].n_objects:
                continue
            Hab = A.homs[(a, b)]
            for f in range(Hab.n_objects):
                if A.h1(a, a, b, A.ident1[a], f) != f or A.h1(a, b, b, f, A.ident1[b]) != f:
                    problems.append(f"unit law fails for 1-morphism {f} in {(a, b)}")
            ida, idb = A.homs[(a, a)].ident[A.ident1[a]], A.homs[(b, b)].ident[A.ident1[b]]
            for al in range(Hab.n_morphisms):
                if A.h2(a, a, b, ida, al) != al or A.h2(a, b, b, al, idb) != al:
                    problems.append(f"unit law fails for 2-morphism {al} in {(a, b)}")
    for a in range(n):
        for b in range(n):
            if not A.homs[(a, b)].n_objects:
                continue
            for c in range(n):
                if not A.homs[(b, c)].n_objects:
                    continue
                for d in range(n):
                    if not A.homs[(c, d)].n_objects:
                        continue
                    for al in range(A.homs[(a, b)].n_morphisms):
                        for be in range(A.homs[(b, c)].n_morphisms):
                            ab = A.h2(a, b, c, al, be)
                            for ga in range(A.homs[(c, d)].n_morphisms):
                                if A.h2(a, c, d, ab, ga) != A.h2(a, b, d, al, A.h2(b, c, d, be, ga)):
                                    problems.append(f"associativity fails on {(a, b, c, d)}")
    return problems


# ---------------------------------------------------------------- 2-functors


@dataclass(eq=False)
class TwoFunctor:
    source: Fin2Category
    target: Fin2Category
    obj: tuple[int, ...]
    one: dict[tuple[int, int], tuple[int, ...]]
    two: dict[tuple[int, int], tuple[int, ...]]

    def on_one(self, a: int, b: int, f: int) -> int:
        return self.one[(a, b)][f]

    def on_two(self, a: int, b: int, al: int) -> int:
        return self.two[(a, b)][al]


def validate_functor(F: TwoFunctor) -> list[str]:
    A, B = F.source, F.target
    problems = []
    for a in range(A.n_objects):
        if F.one[(a, a)][A.ident1[a]] != B.ident1[F.obj[a]]:
            problems.append(f"identity 1-morphism of {a} not preserved")
    for (a, b), H in A.homs.items():
        K = B.homs[(F.obj[a], F.obj[b])]
        o, t = F.one[(a, b)], F.two[(a, b)]
        for al in range(H.n_morphisms):
            if K.src[t[al]] != o[H.src[al]] or K.tgt[t[al]] != o[H.tgt[al]]:
                problems.append(f"2-morphism {al} in {(a, b)} sent to a 2-morphism with wrong ends")
        for f in range(H.n_objects):
            if t[H.ident[f]] != K.ident[o[f]]:
                problems.append(f"identity 2-morphism of {f} in {(a, b)} not preserved")
        for (be, al), ba in H.comp.items():
            if t[ba] != K.comp[(t[be], t[al])]:
                problems.append(f"vertical composite in {(a, b)} not preserved")
    for (a, b, c), table in A.hcomp1.items():
        fa, fb, fc = F.obj[a], F.obj[b], F.obj[c]
        for (f, g), h in table.items():
            if F.one[(a, c)][h] != B.h1(fa, fb, fc, F.one[(a, b)][f], F.one[(b, c)][g]):
                problems.append(f"horizontal composite of 1-morphisms on {(a, b, c)} not preserved")
        for (al, be), ga in A.hcomp2[(a, b, c)].items():
            if F.two[(a, c)][ga] != B.h2(fa, fb, fc, F.two[(a, b)][al], F.two[(b, c)][be]):
                problems.append(f"horizontal composite of 2-morphisms on {(a, b, c)} not preserved")
    return problems


def compose_functors(G: TwoFunctor, F: TwoFunctor) -> TwoFunctor:
    """``G`` after ``F``."""
    obj = tuple(G.obj[x] for x in F.obj)
    one, two = {}, {}
    for (a, b) in F.source.homs:
        fa, fb = F.obj[a], F.obj[b]
        one[(a, b)] = tuple(G.one[(fa, fb)][f] for f in F.one[(a, b)])
        two[(a, b)] = tuple(G.two[(fa, fb)][x] for x in F.two[(a, b)])
    return TwoFunctor(F.source, G.target, obj, one, two)


def enumerate_functors(
    A: Fin2Category,
    B: Fin2Category,
    fixed_obj: dict[int, int] | None = None,
    fixed_one: dict[tuple[int, int, int], int] | None = None,
    fixed_two: dict[tuple[int, int, int], int] | None = None,
    bijective: bool = False,
) -> Iterator[TwoFunctor]:
    """Every 2-functor ``A -> B`` extending the given partial assignments.

    Objects are assigned first, then 1-morphisms hom by hom, then
    2-morphisms, each in index order.
    """
    fixed_obj = fixed_obj or {}
    fixed_one = fixed_one or {}
    fixed_two = fixed_two or {}
    n = A.n_objects
    if bijective:
        if B.sizes() != A.sizes():
            return
    keys = sorted(A.homs)
    one_vars = [(a, b, f) for (a, b) in keys for f in range(A.homs[(a, b)].n_objects)]
    two_vars = [(a, b, x) for (a, b) in keys for x in range(A.homs[(a, b)].n_morphisms)]

    # composition constraints on 1-morphisms, indexed by the latest variable
    pos1 = {v: i for i, v in enumerate(one_vars)}
    cons1: dict[int, list] = {}
    for (a, b, c), table in A.hcomp1.items():
        for (f, g), h in table.items():
            trip = ((a, b, f), (b, c, g), (a, c, h))
            last = max(pos1[v] for v in trip)
            cons1.setdefault(last, []).append((a, b, c) + trip)
    pos2 = {v: i for i, v in enumerate(two_vars)}
    cons2: dict[int, list] = {}
    for (a, b), H in A.homs.items():
        for (be, al), ba in H.comp.items():
            trip = ((a, b, al), (a, b, be), (a, b, ba))
            last = max(pos2[v] for v in trip)
            cons2.setdefault(last, []).append(("v", a, b) + trip)
    for (a, b, c), table in A.hcomp2.items():
        for (al, be), ga in table.items():
            trip = ((a, b, al), (b, c, be), (a, c, ga))
            last = max(pos2[v] for v in trip)
            cons2.setdefault(last, []).append(("h", a, b, c) + trip)

    obj = [-1] * n
    one: dict[tuple[int, int], list[int]] = {k: [-1] * A.homs[k].n_objects for k in keys}
    two: dict[tuple[int, int], list[int]] = {k: [-1] * A.homs[k].n_morphisms for k in keys}

    def obj_ok(t: int) -> bool:
        a = t
        for c in range(a + 1):
            if A.homs[(c, a)].n_objects and not B.homs[(obj[c], obj[a])].n_objects:
                return False
            if A.homs[(a, c)].n_objects and not B.homs[(obj[a], obj[c])].n_objects:
                return False
        if bijective and obj[a] in obj[:a]:
            return False
        return True

    def rec_obj(t: int):
        if t == n:
            yield from rec_one(0)
            return
        pool = [fixed_obj[t]] if t in fixed_obj else range(B.n_objects)
        for x in pool:
            obj[t] = x
            if obj_ok(t):
                yield from rec_obj(t + 1)
        obj[t] = -1

    def one_ok(t: int) -> bool:
        a, b, f = one_vars[t]
        y = one[(a, b)][f]
        H = A.homs[(a, b)]
        if a == b and f == A.ident1[a] and y != B.ident1[obj[a]]:
            return False
        if bijective and y in one[(a, b)][:f]:
            return False
        for a_, b_, c_, (x1, y1, f1), (x2, y2, g2), (x3, y3, h3) in cons1.get(t, ()):
            if one[(a_, c_)][h3] != B.h1(obj[a_], obj[b_], obj[c_], one[(a_, b_)][f1], one[(b_, c_)][g2]):
                return False
        return True

    def rec_one(t: int):
        if t == len(one_vars):
            yield from rec_two(0)
            return
        a, b, f = one_vars[t]
        K = B.homs[(obj[a], obj[b])]
        pool = [fixed_one[(a, b, f)]] if (a, b, f) in fixed_one else range(K.n_objects)
        for y in pool:
            one[(a, b)][f] = y
            if one_ok(t):
                yield from rec_one(t + 1)
        one[(a, b)][f] = -1

    def two_ok(t: int) -> bool:
        a, b, x = two_vars[t]
        y = two[(a, b)][x]
        H = A.homs[(a, b)]
        if bijective and y in two[(a, b)][:x]:
            return False
        for c in cons2.get(t, ()):
            if c[0] == "v":
                _, a_, b_, (_, _, al), (_, _, be), (_, _, ba) = c
                K = B.homs[(obj[a_], obj[b_])]
                if two[(a_, b_)][ba] != K.comp[(two[(a_, b_)][be], two[(a_, b_)][al])]:
                    return False
            else:
                _, a_, b_, c_, (_, _, al), (_, _, be), (_, _, ga) = c
                if two[(a_, c_)][ga] != B.h2(obj[a_], obj[b_], obj[c_], two[(a_, b_)][al], two[(b_, c_)][be]):
                    return False
        return True

    def rec_two(t: int):
        if t == len(two_vars):
            yield TwoFunctor(
                A,
                B,
                tuple(obj),
                {k: tuple(v) for k, v in one.items()},
                {k: tuple(v) for k, v in two.items()},
            )
            return
        a, b, x = two_vars[t]
        H = A.homs[(a, b)]
        K = B.homs[(obj[a], obj[b])]
        s, tt = one[(a, b)][H.src[x]], one[(a, b)][H.tgt[x]]
        if H.src[x] == H.tgt[x] and H.ident[H.src[x]] == x:
            pool = [K.ident[s]]
        else:
            pool = K.hom(s, tt)
        if (a, b, x) in fixed_two:
            pool = [y for y in pool if y == fixed_two[(a, b, x)]]
        for y in pool:
            two[(a, b)][x] = y
            if two_ok(t):
                yield from rec_two(t + 1)
        two[(a, b)][x] = -1

    yield from rec_obj(0)


def find_2iso(A: Fin2Category, B: Fin2Category) -> TwoFunctor | None:
    """An isomorphism of 2-categories, or ``None``."""
    if A.sizes() != B.sizes():
        return None
    return next(enumerate_functors(A, B, bijective=True), None)


# ---------------------------------------------------------------- sieves and wedges


def interval2() -> Fin2Category:
    """``[1]`` as a 2-category."""
    return locally_discrete(interval(1))


def constant_functor_to_interval(A: Fin2Category, values: Sequence[int]) -> TwoFunctor:
    I = interval2()
    one, two = {}, {}
    for (a, b), H in A.homs.items():
        cell = I.homs[(values[a], values[b])]
        one[(a, b)] = tuple(0 for _ in range(H.n_objects)) if cell.n_objects else tuple(-1 for _ in range(H.n_objects))
        two[(a, b)] = tuple(0 for _ in range(H.n_morphisms)) if cell.n_objects else tuple(-1 for _ in range(H.n_morphisms))
    return TwoFunctor(A, I, tuple(values), one, two)


def check_sieve(A: Fin2Category, a: int, direction: str) -> tuple[bool, TwoFunctor | None]:
    """Whether ``a`` is a cosieve (nothing leaves it) or sieve (nothing enters it) object.

    On success also returns the characteristic functor ``A -> [1]``.
    """
    if direction not in ("sieve", "cosieve"):
        raise ValueError(direction)
    loop = A.homs[(a, a)]
    if loop.n_objects != 1 or loop.n_morphisms != 1:
        return False, None
    for b in range(A.n_objects):
        if b == a:
            continue
        H = A.homs[(a, b)] if direction == "cosieve" else A.homs[(b, a)]
        if H.n_objects:
            return False, None
    if direction == "cosieve":
        values = [1 if b == a else 0 for b in range(A.n_objects)]
    else:
        values = [0 if b == a else 1 for b in range(A.n_objects)]
    return True, constant_functor_to_interval(A, values)


@dataclass(eq=False)
class WedgePresentation:
    left: Fin2Category
    top: int
    right: Fin2Category
    bottom: int
    chi_left: TwoFunctor
    chi_right: TwoFunctor

    @classmethod
    def from_objects(cls, left: Fin2Category, top: int, right: Fin2Category, bottom: int) -> WedgePresentation:
        ok, chi = check_sieve(left, top, "cosieve")
        if not ok:
            raise ValueError(f"object {top} is not a cosieve object of the left 2-category")
        ok2, chi2 = check_sieve(right, bottom, "sieve")
        if not ok2:
            raise ValueError(f"object {bottom} is not a sieve object of the right 2-category")
        return cls(left, top, right, bottom, chi, chi2)

    @classmethod
    def canonical(cls, left: Fin2Category, right: Fin2Category) -> WedgePresentation:
        """Glue the last object of ``left`` to the first object of ``right``."""
        return cls.from_objects(left, left.n_objects - 1, right, 0)


def check_presentation(w: WedgePresentation) -> list[str]:
    problems = []
    ok, _ = check_sieve(w.left, w.top, "cosieve")
    if not ok:
        problems.append("left glue object is not a cosieve object")
    ok, _ = check_sieve(w.right, w.bottom, "sieve")
    if not ok:
        problems.append("right glue object is not a sieve object")
    if w.chi_left.obj != tuple(1 if b == w.top else 0 for b in range(w.left.n_objects)):
        problems.append("left characteristic functor does not cut out the glue object")
    if w.chi_right.obj != tuple(0 if b == w.bottom else 1 for b in range(w.right.n_objects)):
        problems.append("right characteristic functor does not cut out the glue object")
    return problems


@dataclass(eq=False)
class Wedge:
    category: Fin2Category
    left_embedding: TwoFunctor
    right_embedding: TwoFunctor
    # wedge object -> (left object, right object)
    pairs: tuple[tuple[int, int], ...]


def wedge2(w: WedgePresentation) -> Wedge:
    """The wedge ``A v A'`` built hom by hom.

    Objects are ``(a, a'_bot)`` for ``a`` in ``A`` followed by ``(a_top, a')``
    for ``a' != a'_bot``.  A 1-morphism is stored as a pair of 1-morphisms of
    ``A`` and ``A'`` in which one coordinate is an identity unless the
    morphism crosses from the ``A`` side to the ``A'`` side.
    """
    problems = check_presentation(w)
    if problems:
        raise ValueError("; ".join(problems))
    A, B, top, bot = w.left, w.right, w.top, w.bottom
    pairs = [(a, bot) for a in range(A.n_objects)] + [(top, b) for b in range(B.n_objects) if b != bot]
    labels = [(A.objects[a], B.objects[b]) for a, b in pairs]
    n = len(pairs)
    homs: dict[tuple[int, int], FinCategory] = {}
    # for each hom: list of (f, g) 1-cell pairs and (al, be) 2-cell pairs
    cells1: dict[tuple[int, int], list[tuple[int, int]]] = {}
    cells2: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for p in range(n):
        for q in range(n):
            (a, a2), (b, b2) = pairs[p], pairs[q]
            left_side = a2 == bot and b2 == bot
            right_side = a == top and b == top
            if left_side:
                H = A.homs[(a, b)]
                idb = B.ident1[bot]
                c1 = [(f, idb) for f in range(H.n_objects)]
                c2 = [(x, B.homs[(bot, bot)].ident[idb]) for x in range(H.n_morphisms)]
                cat = H
            elif right_side:
                H = B.homs[(a2, b2)]
                ida = A.ident1[top]
                c1 = [(ida, g) for g in range(H.n_objects)]
                c2 = [(A.homs[(top, top)].ident[ida], x) for x in range(H.n_morphisms)]
                cat = H
            elif a2 == bot and b == top:
                # mixed hom Map_A(a, a_top) x Map_A'(a'_bot, b')
                cat = product_category(A.homs[(a, top)], B.homs[(bot, b2)])
                HA, HB = A.homs[(a, top)], B.homs[(bot, b2)]
                c1 = [(f, g) for f in range(HA.n_objects) for g in range(HB.n_objects)]
                c2 = [(x, y) for x in range(HA.n_morphisms) for y in range(HB.n_morphisms)]
            else:
                cat = empty_category()
                c1, c2 = [], []
            homs[(p, q)] = cat
            cells1[(p, q)] = c1
            cells2[(p, q)] = c2
    idx1 = {k: {c: i for i, c in enumerate(v)} for k, v in cells1.items()}
    idx2 = {k: {c: i for i, c in enumerate(v)} for k, v in cells2.items()}

    def comp1(p, q, r, f, g):
        (a, a2), (b, b2), (c, c2) = pairs[p], pairs[q], pairs[r]
        f1, f2 = cells1[(p, q)][f]
        g1, g2 = cells1[(q, r)][g]
        return idx1[(p, r)][(A.h1(a, b, c, f1, g1), B.h1(a2, b2, c2, f2, g2))]

    def comp2(p, q, r, x, y):
        (a, a2), (b, b2), (c, c2) = pairs[p], pairs[q], pairs[r]
        x1, x2 = cells2[(p, q)][x]
        y1, y2 = cells2[(q, r)][y]
        return idx2[(p, r)][(A.h2(a, b, c, x1, y1), B.h2(a2, b2, c2, x2, y2))]

    ident = [idx1[(p, p)][(A.ident1[a], B.ident1[a2])] for p, (a, a2) in enumerate(pairs)]
    W = make_2category(labels, homs, ident, comp1, comp2)

    def embedding(side: str) -> TwoFunctor:
        src = A if side == "left" else B
        obj = []
        for x in range(src.n_objects):
            obj.append(pairs.index((x, bot) if side == "left" else (top, x)))
        one, two = {}, {}
        for (x, y), H in src.homs.items():
            p, q = obj[x], obj[y]
            if side == "left":
                idb = B.ident1[bot]
                one[(x, y)] = tuple(idx1[(p, q)][(f, idb)] for f in range(H.n_objects))
                i2 = B.homs[(bot, bot)].ident[idb]
                two[(x, y)] = tuple(idx2[(p, q)][(al, i2)] for al in range(H.n_morphisms))
            else:
                ida = A.ident1[top]
                one[(x, y)] = tuple(idx1[(p, q)][(ida, g)] for g in range(H.n_objects))
                i2 = A.homs[(top, top)].ident[ida]
                two[(x, y)] = tuple(idx2[(p, q)][(i2, al)] for al in range(H.n_morphisms))
        return TwoFunctor(src, W, tuple(obj), one, two)

    return Wedge(W, embedding("left"), embedding("right"), tuple(pairs))


def pullback_over_corner(A: Fin2Category, B: Fin2Category, chi: TwoFunctor, chi2: TwoFunctor) -> Fin2Category:
    """Full sub-2-category of ``A x B`` on pairs with ``chi(a) >= chi2(b)``."""
    P = product2(A, B)
    keep = [
        p
        for p, (a, b) in enumerate(iproduct(range(A.n_objects), range(B.n_objects)))
        if chi.obj[a] >= chi2.obj[b]
    ]
    return full_sub2(P, keep)


def full_sub2(P: Fin2Category, keep: Sequence[int]) -> Fin2Category:
    pos = {p: i for i, p in enumerate(keep)}
    homs = {(pos[p], pos[q]): P.homs[(p, q)] for p in keep for q in keep}
    return make_2category(
        [P.objects[p] for p in keep],
        homs,
        [P.ident1[p] for p in keep],
        lambda a, b, c, f, g: P.h1(keep[a], keep[b], keep[c], f, g),
        lambda a, b, c, x, y: P.h2(keep[a], keep[b], keep[c], x, y),
    )


def theta2_wedge_chain(widths: Sequence[int]) -> list[Wedge]:
    """The successive wedges building ``[m | k_1, ..., k_m]`` from suspensions."""
    chain: list[Wedge] = []
    if len(widths) < 2:
        return chain
    cur = suspend2(interval(widths[0]))
    for k in widths[1:]:
        W = wedge2(WedgePresentation.canonical(cur, suspend2(interval(k))))
        chain.append(W)
        cur = W.category
    return chain


def theta2(m: int, widths: Sequence[int]) -> Fin2Category:
    """The 2-category ``[m | k_1, ..., k_m]`` as an iterated wedge of suspensions."""
    if len(widths) != m:
        raise ValueError(f"expected {m} widths, got {len(widths)}")
    if m == 0:
        return locally_discrete(interval(0))
    if m == 1:
        return suspend2(interval(widths[0]))
    return theta2_wedge_chain(widths)[-1].category


def classify_cells(A: Fin2Category) -> tuple[set[tuple[int, int, int]], set[tuple[int, int, int]]]:
    """Equivalence 1-morphisms and invertible 2-morphisms, as ``(a, b, index)``."""
    inv2 = set()
    for (a, b), H in A.homs.items():
        for x in range(H.n_morphisms):
            if H.is_invertible(x):
                inv2.add((a, b, x))
    eq1 = set()
    for (a, b), H in A.homs.items():
        for f in range(H.n_objects):
            back = A.homs[(b, a)]
            for g in range(back.n_objects):
                gf = A.h1(a, b, a, f, g)
                fg = A.h1(b, a, b, g, f)
                if A.homs[(a, a)].isomorphic(gf, A.ident1[a]) and A.homs[(b, b)].isomorphic(fg, A.ident1[b]):
                    eq1.add((a, b, f))
                    break
    return eq1, inv2


# ---------------------------------------------------------------- collapse of orientals


@dataclass
class CollapseReport:
    k: int
    l: int
    problems: list[str]

    @property
    def clean(self) -> bool:
        return not self.problems


def _crossing(S: Sequence[int], k: int) -> tuple[int, int] | None:
    low = [v for v in S if v <= k]
    high = [v for v in S if v > k]
    if not low or not high:
        return None
    return max(low), min(high)


def collapse_map(k: int, l: int) -> tuple[TwoFunctor, CollapseReport]:
    """The 2-functor ``O_2[k+1+l] -> Sigma([k] x [l]^op)`` collapsing both faces.

    The functor is defined from its values on the generating 1-morphisms
    ``f_ij`` and checked against the tables on the generating 2-morphisms
    ``alpha_ijs``; the report lists every failure of functoriality or of
    bijectivity on the collapsed cells.
    """
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    m = k + 1 + l
    O = oriental2(m)
    R = rect(k, l)
    T = suspend2(R)
    problems: list[str] = []

    def obj_of(i: int) -> int:
        return 0 if i <= k else 1

    def gen1(i: int, j: int) -> int | None:
        """Image of ``f_ij`` as an object of ``[k] x [l]^op``, or None for an identity."""
        if j <= k or i > k:
            return None
        return R.objects.index((i, j - k - 1))

    def image1(S: Sequence[int]) -> int:
        a, b = obj_of(S[0]), obj_of(S[-1])
        crossing = None
        for s, t in zip(S, S[1:]):
            g = gen1(s, t)
            if g is not None:
                if crossing is not None:
                    problems.append(f"1-morphism {tuple(S)} crosses twice")
                crossing = g
        if a == b:
            return T.ident1[a]
        return crossing

    obj = tuple(obj_of(i) for i in range(m + 1))
    one, two = {}, {}
    for (i, j), H in O.homs.items():
        a, b = obj[i], obj[j]
        K = T.homs[(a, b)]
        one[(i, j)] = tuple(image1(S) for S in H.objects)
        vals = []
        for x in range(H.n_morphisms):
            s, t = one[(i, j)][H.src[x]], one[(i, j)][H.tgt[x]]
            cands = K.hom(s, t)
            if not cands:
                problems.append(f"no 2-morphism between images of {H.morphisms[x]}")
                vals.append(-1)
            else:
                vals.append(cands[0])
        two[(i, j)] = tuple(vals)
    phi = TwoFunctor(O, T, obj, one, two)
    if not problems:
        problems.extend(validate_functor(phi))

    # the table on generating 2-morphisms alpha_ijs : f_is => f_js o f_ij
    for i, j, s in combinations(range(m + 1), 3):
        H = O.homs[(i, s)]
        x = H.hom(H.objects.index((i, s)), H.objects.index((i, j, s)))[0]
        got = two[(i, s)][x]
        K = T.homs[(obj[i], obj[s])]
        if s <= k or i > k:
            want = K.ident[T.ident1[obj[i]]]
        elif j <= k:
            want = K.hom(R.objects.index((i, s - k - 1)), R.objects.index((j, s - k - 1)))
            want = want[0] if want else -2
        else:
            want = K.hom(R.objects.index((i, s - k - 1)), R.objects.index((i, j - k - 1)))
            want = want[0] if want else -2
        if got != want:
            problems.append(f"generator alpha_{i}{j}{s} sent to {got}, table says {want}")

    # objects: the two faces collapse to the two objects
    if sorted(set(obj)) != [0, 1] or obj.count(0) != k + 1:
        problems.append("objects are not collapsed onto the two objects")
    # 1-morphisms: crossing pairs <-> objects of [k] x [l]^op
    crossing_pairs = [(i1, i2) for i1 in range(k + 1) for i2 in range(k + 1, m + 1)]
    images = [gen1(i1, i2) for i1, i2 in crossing_pairs]
    if sorted(images) != list(range(R.n_objects)):
        problems.append("crossing generators do not biject onto [k] x [l]^op")
    for (i, j), H in O.homs.items():
        for f, S in enumerate(H.objects):
            c = _crossing(S, k)
            want = T.ident1[obj[i]] if c is None else gen1(*c)
            if one[(i, j)][f] != want:
                problems.append(f"1-morphism {S} not identified with its crossing generator")
    # 2-morphisms: inclusions {0..i1, i2..m} <= {0..i1', i2'..m} <-> arrows of [k] x [l]^op
    H = O.homs[(0, m)]
    seen = []
    for (i1, i2) in crossing_pairs:
        for (j1, j2) in crossing_pairs:
            if not (i1 <= j1 and j2 <= i2):
                continue
            S = tuple(range(0, i1 + 1)) + tuple(range(i2, m + 1))
            S2 = tuple(range(0, j1 + 1)) + tuple(range(j2, m + 1))
            x = H.hom(H.objects.index(S), H.objects.index(S2))
            if len(x) != 1:
                problems.append(f"inclusion {S} <= {S2} missing in the oriental")
                continue
            seen.append(two[(0, m)][x[0]])
    if sorted(seen) != list(range(R.n_morphisms)):
        problems.append("inclusion 2-morphisms do not biject onto arrows of [k] x [l]^op")
    return phi, CollapseReport(k, l, problems)
