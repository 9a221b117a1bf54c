"""Duskin nerves of finite 2-categories, the grid model of nerves of suspensions,
and the comparison inclusions for suspensions and wedges.

A Duskin ``m``-simplex is stored as ``(objs, edges, cells)``:

* ``objs[i]`` is the object at vertex ``i``;
* ``edges[j][i]`` for ``i < j`` is the 1-morphism ``a_ij`` (local index in
  ``Map(x_i, x_j)``);
* ``cells[s][t]`` is the 2-morphism ``alpha_ijs : a_is => a_js o a_ij`` where
  ``(i, j)`` is the ``t``-th pair ``i < j < s`` in lexicographic order.

A grid simplex of ``N(Sigma P)`` is ``(k, l, objs, vert, horiz)``: rows
``0..k`` are the vertices sent to the bottom object, columns ``0..l`` the
vertices ``k+1..m`` sent to the top object.  ``vert[i][c]`` is the arrow
``(i, c) -> (i+1, c)`` and ``horiz[i][c]`` the arrow ``(i, c+1) -> (i, c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .cat2 import (
    Fin2Category,
    FinCategory,
    WedgePresentation,
    classify_cells,
    locally_discrete,
    suspend2,
    validate_2cat,
    wedge2,
)
from .msset import (
    MarkedSimplicialSet,
    Realization,
    SimplexRef,
    SimplicialMap,
    find_isomorphism,
    realize,
    suspend,
    wedge_ss,
)

POLICIES = ("street", "roberts_street", "natural")


@lru_cache(maxsize=None)
def _pairs_below(s: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(s) for j in range(i + 1, s))


@lru_cache(maxsize=None)
def _pair_pos(s: int) -> dict[tuple[int, int], int]:
    return {p: t for t, p in enumerate(_pairs_below(s))}


@lru_cache(maxsize=None)
def _pullback_plan(theta: tuple[int, ...]):
    """Where each edge and 2-cell of ``theta^* v`` comes from in ``v``.

    Edge entries are ``(q, p)`` meaning ``a_pq`` (an identity when ``p == q``);
    cell entries are ``(s, pos, -, -)`` for an existing cell or
    ``(-1, -1, a, t)`` for the identity 2-cell on ``a_at``.
    """
    n = len(theta) - 1
    eplan = tuple(tuple((theta[j], theta[i]) for i in range(j)) for j in range(n + 1))
    cplan = []
    for s in range(n + 1):
        col = []
        for i, j in _pairs_below(s):
            a, b, c = theta[i], theta[j], theta[s]
            if a < b < c:
                col.append((c, _pair_pos(c)[(a, b)], a, c))
            else:
                col.append((-1, -1, a, c))
        cplan.append(tuple(col))
    return eplan, tuple(cplan)


def _check_policy(policy: str) -> None:
    if policy not in POLICIES:
        raise ValueError(f"unknown marking policy {policy!r}; expected one of {POLICIES}")


# ---------------------------------------------------------------- Duskin nerve


class DuskinModel:
    """Simplicial operators and enumeration for the Duskin nerve of ``A``."""

    def __init__(self, A: Fin2Category, check: bool = True):
        if check:
            problems = validate_2cat(A)
            if problems:
                raise ValueError("not a strict 2-category: " + problems[0])
        self.A = A
        self._levels: list[list[tuple]] = []
        self._equivalences: set | None = None
        self._invertible: set | None = None

    @staticmethod
    def dim(v: tuple) -> int:
        return len(v[0]) - 1

    def edge(self, v: tuple, i: int, j: int) -> int:
        if i == j:
            return self.A.ident1[v[0][i]]
        return v[1][j][i]

    def cell(self, v: tuple, i: int, j: int, s: int) -> int:
        """``alpha_ijs``, an identity when two indices coincide."""
        if i == j or j == s:
            A = self.A
            return A.homs[(v[0][i], v[0][s])].ident[self.edge(v, i, s)]
        return v[2][s][_pair_pos(s)[(i, j)]]

    def pullback(self, v: tuple, theta: tuple[int, ...]) -> tuple:
        """``theta^* v`` for a monotone ``theta: [n] -> [m]``."""
        objs, edges, cells = v
        A = self.A
        eplan, cplan = _pullback_plan(theta)
        new_objs = tuple(objs[t] for t in theta)
        new_edges = tuple(
            tuple(edges[q][p] if p != q else A.ident1[objs[p]] for q, p in col) for col in eplan
        )
        new_cells = []
        for col in cplan:
            out = []
            for s0, p0, a, t in col:
                if s0 >= 0:
                    out.append(cells[s0][p0])
                else:
                    e = edges[t][a] if a != t else A.ident1[objs[a]]
                    out.append(A.homs[(objs[a], objs[t])].ident[e])
            new_cells.append(tuple(out))
        return (new_objs, new_edges, tuple(new_cells))

    def face(self, v: tuple, i: int) -> tuple:
        m = self.dim(v)
        return self.pullback(v, tuple(x for x in range(m + 1) if x != i))

    def degen(self, v: tuple, i: int) -> tuple:
        m = self.dim(v)
        return self.pullback(v, tuple(range(i + 1)) + tuple(range(i, m + 1)))

    def collapsed(self, v: tuple, j: int) -> bool:
        """Whether ``v == s_j d_j v``."""
        m = self.dim(v)
        return self.pullback(v, tuple(range(j)) + (j + 1,) + tuple(range(j + 1, m + 1))) == v

    def constant(self, obj: int, m: int) -> tuple:
        return self.pullback(((obj,), ((),), ((),)), (0,) * (m + 1))

    def _extend(self, v: tuple) -> Iterator[tuple]:
        """All ``(m+1)``-simplices whose last face ``d_{m+1}`` is ``v``."""
        A = self.A
        objs, edges, cells = v
        m = len(objs) - 1
        s = m + 1
        pairs = _pairs_below(s)
        for x in range(A.n_objects):
            homs = [A.homs[(objs[i], x)] for i in range(s)]
            if any(not H.n_objects for H in homs):
                continue
            new_edges = [0] * s

            def fill_edges(j: int):
                if j == s:
                    yield from fill_cells(0, [0] * len(pairs))
                    return
                for a in range(homs[j].n_objects):
                    new_edges[j] = a
                    ok = True
                    for i in range(j):
                        comp = A.h1(objs[i], objs[j], x, self.edge(v, i, j), a)
                        if not homs[i].hom(new_edges[i], comp):
                            ok = False
                            break
                    if ok:
                        yield from fill_edges(j + 1)

            def fill_cells(t: int, chosen: list[int]):
                if t == len(pairs):
                    yield (objs + (x,), edges + (tuple(new_edges),), cells + (tuple(chosen),))
                    return
                i, j = pairs[t]
                comp = A.h1(objs[i], objs[j], x, self.edge(v, i, j), new_edges[j])
                for al in homs[i].hom(new_edges[i], comp):
                    chosen[t] = al
                    if self._cocycles_ok(v, x, new_edges, chosen, i, j):
                        yield from fill_cells(t + 1, chosen)

            yield from fill_edges(0)

    def _cocycles_ok(self, v, x, new_edges, chosen, j, k) -> bool:
        """Cocycle conditions on ``(i, j, k, s)`` for all ``i < j``, once ``alpha_jks`` is known."""
        A = self.A
        objs = v[0]
        s = len(objs)
        pos = _pair_pos(s)
        xj, xk = objs[j], objs[k]
        a_ks = new_edges[k]
        for i in range(j):
            xi = objs[i]
            a_ij = self.edge(v, i, j)
            al_ijk = self.cell(v, i, j, k)
            al_iks = chosen[pos[(i, k)]]
            al_jks = chosen[pos[(j, k)]]
            al_ijs = chosen[pos[(i, j)]]
            H = A.homs[(xi, x)]
            id_ks = A.homs[(xk, x)].ident[a_ks]
            id_ij = A.homs[(xi, xj)].ident[a_ij]
            lhs = H.comp[(A.h2(xi, xk, x, al_ijk, id_ks), al_iks)]
            rhs = H.comp[(A.h2(xi, xj, x, id_ij, al_jks), al_ijs)]
            if lhs != rhs:
                return False
        return True

    def level(self, m: int) -> list[tuple]:
        """All ``m``-simplices, degenerate ones included."""
        while len(self._levels) <= m:
            n = len(self._levels)
            if n == 0:
                self._levels.append([((x,), ((),), ((),)) for x in range(self.A.n_objects)])
            else:
                self._levels.append([w for v in self._levels[n - 1] for w in self._extend(v)])
        return self._levels[m]

    def _natural_cells(self):
        if self._equivalences is None:
            self._equivalences, self._invertible = classify_cells(self.A)
        return self._equivalences, self._invertible

    def marked(self, v: tuple, policy: str) -> bool:
        """Marking of a nondegenerate simplex."""
        m = self.dim(v)
        if policy == "street" or m == 0:
            return False
        if m >= 3:
            return True
        objs = v[0]
        if m == 1:
            if policy != "natural":
                return False
            eq1, _ = self._natural_cells()
            return (objs[0], objs[1], v[1][1][0]) in eq1
        al = v[2][2][0]
        if policy == "roberts_street":
            H = self.A.homs[(objs[0], objs[2])]
            return H.is_identity(al)
        _, inv2 = self._natural_cells()
        return (objs[0], objs[2], al) in inv2

    def label(self, v: tuple) -> str:
        A = self.A
        parts = [",".join(str(A.objects[o]) for o in v[0])]
        if len(v[0]) > 1:
            parts.append(";".join(",".join(map(str, col)) for col in v[1][1:]))
        return "|".join(parts)


def duskin_realization(A: Fin2Category, policy: str, D_max: int, check: bool = True) -> Realization:
    _check_policy(policy)
    model = DuskinModel(A, check)
    real = realize(
        D_max,
        model.level,
        model.face,
        model.degen,
        model.dim,
        lambda v: model.marked(v, policy),
        model.label,
        collapsed=model.collapsed,
    )
    real.model = model
    return real


def duskin_nerve(A: Fin2Category, policy: str, D_max: int) -> MarkedSimplicialSet:
    """The Duskin nerve of ``A`` through dimension ``D_max`` with the given marking."""
    return duskin_realization(A, policy, D_max).complex


def nerve_1cat(P: FinCategory, policy: str, D_max: int) -> MarkedSimplicialSet:
    """Nerve of a 1-category, seen as a 2-category with only identity 2-morphisms.

    With the Roberts-Street policy every simplex of dimension at least 2 is
    marked, since all 2-morphisms are identities.
    """
    return duskin_nerve(locally_discrete(P), policy, D_max)


# ---------------------------------------------------------------- grid model


def grid_dim(v: tuple) -> int:
    return v[0] + v[1] + 1


class GridModel:
    """Simplicial operators on ``P``-valued grids ``[k] x [l]^op -> P``."""

    def __init__(self, P: FinCategory):
        self.P = P
        self._levels: dict[int, list[tuple]] = {}

    def empty_rows(self, k: int) -> tuple:
        return (k, -1, ((),) * (k + 1), ((),) * k, ((),) * (k + 1))

    def top(self, l: int) -> tuple:
        return (-1, l, (), (), ())

    def face(self, v: tuple, a: int) -> tuple:
        k, l, objs, vert, horiz = v
        comp = self.P.comp
        if a <= k:
            objs2 = objs[:a] + objs[a + 1:]
            horiz2 = horiz[:a] + horiz[a + 1:]
            if a == 0:
                vert2 = vert[1:]
            elif a == k:
                vert2 = vert[:-1]
            else:
                merged = tuple(comp[(vert[a][c], vert[a - 1][c])] for c in range(l + 1))
                vert2 = vert[: a - 1] + (merged,) + vert[a + 1:]
            if k == 0:
                return self.top(l)
            return (k - 1, l, objs2, vert2, horiz2)
        c = a - k - 1
        objs2 = tuple(row[:c] + row[c + 1:] for row in objs)
        vert2 = tuple(row[:c] + row[c + 1:] for row in vert)
        if c == 0:
            horiz2 = tuple(row[1:] for row in horiz)
        elif c == l:
            horiz2 = tuple(row[:-1] for row in horiz)
        else:
            horiz2 = tuple(row[: c - 1] + (comp[(row[c - 1], row[c])],) + row[c + 1:] for row in horiz)
        if l == 0:
            return self.empty_rows(k)
        return (k, l - 1, objs2, vert2, horiz2)

    def degen(self, v: tuple, a: int) -> tuple:
        k, l, objs, vert, horiz = v
        ident = self.P.ident
        if a <= k:
            ids = tuple(ident[o] for o in objs[a])
            return (k + 1, l, objs[: a + 1] + objs[a:], vert[:a] + (ids,) + vert[a:], horiz[: a + 1] + horiz[a:])
        c = a - k - 1
        objs2 = tuple(row[: c + 1] + row[c:] for row in objs)
        vert2 = tuple(row[: c + 1] + row[c:] for row in vert)
        horiz2 = tuple(hrow[:c] + (ident[orow[c]],) + hrow[c:] for hrow, orow in zip(horiz, objs))
        return (k, l + 1, objs2, vert2, horiz2)

    def grids(self, k: int, l: int) -> list[tuple]:
        """All functors ``[k] x [l]^op -> P``."""
        if k == -1:
            return [self.top(l)]
        if l == -1:
            return [self.empty_rows(k)]
        P = self.P
        out = []
        cells = [(i, c) for i in range(k + 1) for c in range(l + 1)]
        objs = [[-1] * (l + 1) for _ in range(k + 1)]
        vert = [[-1] * (l + 1) for _ in range(k)]
        horiz = [[-1] * l for _ in range(k + 1)]

        def rec(t: int):
            if t == len(cells):
                out.append((k, l, tuple(map(tuple, objs)), tuple(map(tuple, vert)), tuple(map(tuple, horiz))))
                return
            i, c = cells[t]
            for x in range(P.n_objects):
                ups = P.hom(objs[i - 1][c], x) if i else [None]
                rights = P.hom(x, objs[i][c - 1]) if c else [None]
                for u in ups:
                    for h in rights:
                        if u is not None and h is not None:
                            # square: v[i-1][c-1] o h[i-1][c-1] == h[i][c-1] o v[i-1][c]
                            if P.comp[(vert[i - 1][c - 1], horiz[i - 1][c - 1])] != P.comp[(h, u)]:
                                continue
                        objs[i][c] = x
                        if u is not None:
                            vert[i - 1][c] = u
                        if h is not None:
                            horiz[i][c - 1] = h
                        rec(t + 1)

        rec(0)
        return out

    def level(self, m: int) -> list[tuple]:
        if m not in self._levels:
            self._levels[m] = [g for k in range(m, -2, -1) for g in self.grids(k, m - 1 - k)]
        return self._levels[m]

    def collapsed(self, v: tuple, j: int) -> bool:
        """Whether vertices ``j`` and ``j+1`` span a doubled row or column."""
        k, l, objs, vert, horiz = v
        P = self.P
        if j < k:
            return all(P.is_identity(u) for u in vert[j])
        if j == k:
            return False
        c = j - k - 1
        return all(P.is_identity(row[c]) for row in horiz)

    def is_nondegenerate(self, v: tuple) -> bool:
        """No two consecutive rows and no two consecutive columns coincide."""
        k, l, objs, vert, horiz = v
        P = self.P
        for i in range(k):
            if all(P.is_identity(u) for u in vert[i]):
                return False
        for c in range(l):
            if all(P.is_identity(row[c]) for row in horiz):
                return False
        return True

    def marked(self, v: tuple, policy: str) -> bool:
        """Marking of a nondegenerate grid simplex.

        No nondegenerate simplex of dimension 1 or 2 carries an identity
        2-morphism, so with the Roberts-Street policy exactly the
        simplices of dimension at least 3 are marked.
        """
        m = grid_dim(v)
        if policy == "street" or m <= 1:
            return False
        if m >= 3:
            return True
        if policy == "roberts_street":
            return False
        k, l, objs, vert, horiz = v
        arrow = vert[0][0] if k == 1 else horiz[0][0]
        return self.P.is_invertible(arrow)

    def label(self, v: tuple) -> str:
        k, l, objs, _, _ = v
        if k == -1:
            return f"top^{l}"
        if l == -1:
            return f"bot^{k}"
        return "/".join(",".join(str(self.P.objects[o]) for o in row) for row in objs)

    def to_duskin(self, v: tuple) -> tuple:
        """The Duskin simplex of ``Sigma P`` described by a grid (bottom = object 0)."""
        k, l, objs, vert, horiz = v
        P = self.P
        m = k + l + 1
        side = [0 if i <= k else 1 for i in range(m + 1)]

        def down(i: int, j: int, c: int) -> int:
            f = P.ident[objs[i][c]]
            for r in range(i, j):
                f = P.comp[(vert[r][c], f)]
            return f

        def across(i: int, c2: int, c1: int) -> int:
            f = P.ident[objs[i][c2]]
            for c in range(c2 - 1, c1 - 1, -1):
                f = P.comp[(horiz[i][c], f)]
            return f

        edges = []
        for j in range(m + 1):
            col = []
            for i in range(j):
                col.append(objs[i][j - k - 1] if side[i] == 0 and side[j] == 1 else 0)
            edges.append(tuple(col))
        cells = []
        for s in range(m + 1):
            col = []
            for i, j in _pairs_below(s):
                if side[i] == side[s]:
                    col.append(0)
                elif side[j] == 0:
                    col.append(down(i, j, s - k - 1))
                else:
                    col.append(across(i, s - k - 1, j - k - 1))
            cells.append(tuple(col))
        return (tuple(side), tuple(edges), tuple(cells))


def matrix_realization(P: FinCategory, D_max: int, policy: str = "roberts_street") -> Realization:
    _check_policy(policy)
    model = GridModel(P)
    real = realize(
        D_max,
        model.level,
        model.face,
        model.degen,
        grid_dim,
        lambda v: model.marked(v, policy),
        model.label,
        basepoints={"bottom": model.empty_rows(0), "top": model.top(0)},
        collapsed=model.collapsed,
    )
    real.model = model
    return real


def matrix_model(P: FinCategory, D_max: int, policy: str = "roberts_street") -> MarkedSimplicialSet:
    """``N(Sigma P)`` in grid coordinates through dimension ``D_max``."""
    return matrix_realization(P, D_max, policy).complex


def grid_to_duskin_map(P: FinCategory, D_max: int, policy: str = "roberts_street") -> tuple[SimplicialMap, list[str]]:
    """The explicit grid-to-Duskin map ``Mat(P) -> N(Sigma P)`` and its defects.

    The defects list names every dimension where the map fails to be a
    marking-preserving bijection on nondegenerate simplices.
    """
    grid = matrix_realization(P, D_max, policy)
    dusk = duskin_realization(suspend2(P), policy, D_max)
    model = grid.model
    assignment = []
    problems = []
    for m in range(D_max + 1):
        level = []
        for v in grid.values[m]:
            w = model.to_duskin(v)
            if w not in dusk.index:
                problems.append(f"grid {v} has no Duskin counterpart")
                level.append(SimplexRef((), 0))
                continue
            level.append(SimplexRef((), dusk.index[w][1]))
        assignment.append(level)
        if sorted(r.base for r in level) != list(range(dusk.complex.count(m))):
            problems.append(f"not bijective in dimension {m}")
        for x, r in enumerate(level):
            if grid.complex.marked[m][x] != dusk.complex.marked[m][r.base]:
                problems.append(f"marking differs in dimension {m}")
                break
    f = SimplicialMap(grid.complex, dusk.complex, assignment)
    if not problems:
        from .msset import validate_map

        problems.extend(validate_map(f))
    return f, problems


# ---------------------------------------------------------------- comparisons


def susp_comparison(P: FinCategory, policy: str = "roberts_street", D_max: int = 4, target: Realization | None = None) -> SimplicialMap:
    """The inclusion ``Sigma(N P) -> N(Sigma P)`` in grid coordinates.

    An ``(m+1)``-simplex ``f: [m] -> P`` goes to the single-column grid of
    type ``m`` with entries ``f``.
    """
    _check_policy(policy)
    if target is None:
        target = matrix_realization(P, D_max, policy)
    base = duskin_realization(locally_discrete(P), policy, max(D_max - 1, 0))
    source = suspend(base.complex) if D_max >= 1 else None
    if source is None:
        raise ValueError("the suspension comparison needs D_max >= 1")
    model = target.model
    assignment = [[target.ref(model.empty_rows(0)), target.ref(model.top(0))]]
    for m in range(1, D_max + 1):
        level = []
        for f in base.values[m - 1]:
            n = m - 1
            col_objs = tuple((o,) for o in f[0])
            # the local 1-morphisms of a locally discrete hom are the arrows of P in hom order
            vert = tuple((P.hom(f[0][i], f[0][i + 1])[f[1][i + 1][i]],) for i in range(n))
            grid = (n, 0, col_objs, vert, tuple(() for _ in range(n + 1)))
            level.append(target.ref(grid))
        assignment.append(level)
    return SimplicialMap(source, target.complex, assignment)



@dataclass(eq=False)
class WedgeNerve:
    """``N(A v A')`` in pair coordinates with the comparison from ``N A v N A'``."""

    presentation: WedgePresentation
    policy: str
    pairs: Realization
    left: Realization
    right: Realization
    wedge: MarkedSimplicialSet
    comparison: SimplicialMap

    @property
    def complex(self) -> MarkedSimplicialSet:
        return self.pairs.complex


def _component_marked(real: Realization, v: tuple, policy: str) -> bool:
    if DuskinModel.dim(v) == 0:
        return False
    return real.is_degenerate(v) or real.model.marked(v, policy)


def wedge_nerve_pairs(w: WedgePresentation, policy: str, D_max: int, cross_check: bool = True) -> WedgeNerve:
    """``N(A v A')`` as pairs ``(rho, rho')`` with ``chi rho(s) >= chi' rho'(s)`` at every vertex.

    A pair is marked iff both components are.  With ``cross_check`` the
    result is compared with the Duskin nerve of the wedge 2-category and a
    mismatch raises ``RuntimeError``.
    """
    _check_policy(policy)
    left = duskin_realization(w.left, policy, D_max)
    right = duskin_realization(w.right, policy, D_max)
    lm, rm = left.model, right.model
    top, bot = w.top, w.bottom

    def low_mask(v: tuple) -> int:
        return sum(1 << s for s, o in enumerate(v[0]) if w.chi_left.obj[o] == 0)

    def high_mask(v: tuple) -> int:
        return sum(1 << s for s, o in enumerate(v[0]) if w.chi_right.obj[o] == 1)

    def simplices(m: int) -> Iterator[tuple]:
        rights = [(high_mask(v), v) for v in rm.level(m)]
        for r in lm.level(m):
            mask = low_mask(r)
            for hm, r2 in rights:
                if not mask & hm:
                    yield (r, r2)

    real = realize(
        D_max,
        simplices,
        lambda p, i: (lm.face(p[0], i), rm.face(p[1], i)),
        lambda p, i: (lm.degen(p[0], i), rm.degen(p[1], i)),
        lambda p: DuskinModel.dim(p[0]),
        lambda p: _component_marked(left, p[0], policy) and _component_marked(right, p[1], policy),
        lambda p: f"({lm.label(p[0])})x({rm.label(p[1])})",
        collapsed=lambda p, j: lm.collapsed(p[0], j) and rm.collapsed(p[1], j),
    )
    real.model = (lm, rm)

    W, legL, legR = wedge_ss(left.complex, top, right.complex, bot)
    assignment = [[None] * W.count(m) for m in range(D_max + 1)]
    for m in range(D_max + 1):
        for x, v in enumerate(left.values[m]):
            assignment[m][legL.image(m, SimplexRef((), x)).base] = real.ref((v, rm.constant(bot, m)))
        for x, v in enumerate(right.values[m]):
            assignment[m][legR.image(m, SimplexRef((), x)).base] = real.ref((lm.constant(top, m), v))
    comparison = SimplicialMap(W, real.complex, assignment)
    result = WedgeNerve(w, policy, real, left, right, W, comparison)
    if cross_check:
        direct = duskin_nerve(wedge2(w).category, policy, D_max)
        if find_isomorphism(real.complex, direct) is None:
            raise RuntimeError("pair model of the wedge nerve disagrees with the Duskin nerve of the wedge")
    return result
