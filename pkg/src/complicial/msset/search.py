"""Isomorphism search and brute-force lifting checks."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterator

from .core import MarkedSimplicialSet, SimplexRef, SimplicialMap, truncate


def _refine_colors(complexes: list[MarkedSimplicialSet], T: int, rounds: int = 6) -> list[list[list[int]]]:
    """Joint color refinement on nondegenerate simplices of several complexes."""
    colors = [[[hash((m, bool(X.marked[m][x]))) for x in range(X.count(m))] for m in range(T + 1)] for X in complexes]
    n_classes = len({c for cs in colors for level in cs for c in level})
    for _ in range(rounds):
        new_all = []
        table: dict[tuple, int] = {}
        for X, cs in zip(complexes, colors):
            cof: list[list[list]] = [[[] for _ in range(X.count(m))] for m in range(T + 1)]
            for m in range(1, T + 1):
                for x in range(X.count(m)):
                    for i, (w, b) in enumerate(X.faces[m][x]):
                        cof[m - 1 - len(w)][b].append((i, w, cs[m][x]))
            new = []
            for m in range(T + 1):
                level = []
                for x in range(X.count(m)):
                    down = tuple((w, cs[m - 1 - len(w)][b]) for w, b in X.faces[m][x]) if m else ()
                    sig = (cs[m][x], down, tuple(sorted(cof[m][x])))
                    level.append(table.setdefault(sig, len(table)))
                new.append(level)
            new_all.append(new)
        colors = new_all
        k = len(table)
        if k == n_classes:
            break
        n_classes = k
    return colors


def find_isomorphism(X: MarkedSimplicialSet, Y: MarkedSimplicialSet, respect_basepoints: bool = False) -> SimplicialMap | None:
    """A dimension-, face- and marking-preserving bijection of nondegenerate simplices.

    Both sides are compared up to the smaller truncation.  Returns ``None``
    when no isomorphism exists.
    """
    T = min(X.truncation, Y.truncation)
    if X.truncation != T:
        X = truncate(X, T)
    if Y.truncation != T:
        Y = truncate(Y, T)
    if X.counts() != Y.counts() or X.marked_counts() != Y.marked_counts():
        return None
    if respect_basepoints and set(X.basepoints) != set(Y.basepoints):
        return None
    cx, cy = _refine_colors([X, Y], T)
    for m in range(T + 1):
        if sorted(cx[m]) != sorted(cy[m]):
            return None

    by_boundary: list[dict[tuple, list[int]]] = []
    for m in range(T + 1):
        d: dict[tuple, list[int]] = defaultdict(list)
        for y in range(Y.count(m)):
            d[(cy[m][y], Y.faces[m][y])].append(y)
        by_boundary.append(d)
    vertex_pool: dict[int, list[int]] = defaultdict(list)
    for y in range(Y.count(0)):
        vertex_pool[cy[0][y]].append(y)
    pinned: dict[int, int] = {}
    if respect_basepoints:
        for name, v in X.basepoints.items():
            pinned[v] = Y.basepoints[name]

    # order: vertices by color, then each simplex right after its last vertex
    vorder = sorted(range(X.count(0)), key=lambda v: (v not in pinned, cx[0][v], v))
    rank = {v: i for i, v in enumerate(vorder)}
    order: list[tuple[int, int, int]] = []
    for m in range(T + 1):
        for x in range(X.count(m)):
            top = rank[x] if m == 0 else max(rank[v] for v in X.vertices(m, SimplexRef((), x)))
            order.append((top, m, x))
    order.sort(key=lambda t: (t[0], t[1], cx[t[1]][t[2]], t[2]))

    assign: list[list[int]] = [[-1] * X.count(m) for m in range(T + 1)]
    used: list[set[int]] = [set() for _ in range(T + 1)]

    def candidates(m: int, x: int) -> list[int]:
        if m == 0:
            if x in pinned:
                y = pinned[x]
                return [y] if cy[0][y] == cx[0][x] and y not in used[0] else []
            return [y for y in vertex_pool[cx[0][x]] if y not in used[0]]
        img = tuple(SimplexRef(w, assign[m - 1 - len(w)][b]) for w, b in X.faces[m][x])
        return [y for y in by_boundary[m].get((cx[m][x], img), ()) if y not in used[m]]

    stack: list[list] = []
    t = 0
    while 0 <= t < len(order):
        _, m, x = order[t]
        if t == len(stack):
            stack.append([candidates(m, x), 0])
        frame = stack[t]
        prev = assign[m][x]
        if prev >= 0:
            used[m].discard(prev)
            assign[m][x] = -1
        if frame[1] >= len(frame[0]):
            stack.pop()
            t -= 1
            continue
        y = frame[0][frame[1]]
        frame[1] += 1
        assign[m][x] = y
        used[m].add(y)
        t += 1
    if t < 0:
        return None
    return SimplicialMap(X, Y, [[SimplexRef((), y) for y in level] for level in assign])


# ---------------------------------------------------------------- lifting


def _boundary_index(X: MarkedSimplicialSet, T: int) -> list[dict[tuple, list[SimplexRef]]]:
    out = []
    for m in range(T + 1):
        d: dict[tuple, list[SimplexRef]] = defaultdict(list)
        for s in X.all_simplices(m):
            key = tuple(X.face(m, s, i) for i in range(m + 1)) if m else ()
            d[key].append(s)
        out.append(d)
    return out


def _solve(order, S: MarkedSimplicialSet, X: MarkedSimplicialSet, index, fixed) -> Iterator[list[list[SimplexRef | None]]]:
    """All extensions of the partial assignment ``fixed`` to the simplices in ``order``."""
    assign = [list(level) for level in fixed]

    def rec(t: int):
        if t == len(order):
            yield [list(level) for level in assign]
            return
        m, s = order[t]
        if m == 0:
            pool = index[0][()]
        else:
            img = []
            for w, b in S.faces[m][s]:
                p = m - 1 - len(w)
                base = assign[p][b]
                img.append(X.degenerate(p, base, w))
            pool = index[m].get(tuple(img), ())
        for cand in pool:
            if m and S.marked[m][s] and not X.is_marked(m, cand):
                continue
            assign[m][s] = cand
            yield from rec(t + 1)
        assign[m][s] = None

    yield from rec(0)


def all_maps(A: MarkedSimplicialSet, X: MarkedSimplicialSet) -> Iterator[SimplicialMap]:
    """Every marking-preserving map ``A -> X`` (brute force)."""
    T = A.truncation
    if X.truncation < T:
        raise ValueError("target truncation is below the source dimension")
    index = _boundary_index(X, T)
    order = [(m, a) for m in range(T + 1) for a in range(A.count(m))]
    empty = [[None] * A.count(m) for m in range(T + 1)]
    for sol in _solve(order, A, X, index, empty):
        yield SimplicialMap(A, X, sol)


def has_extension(i: SimplicialMap, X: MarkedSimplicialSet) -> bool:
    """Whether every marking-preserving map ``A -> X`` extends along ``i: A -> B``."""
    A, B = i.source, i.target
    top = max((m for m in range(B.truncation + 1) if B.count(m)), default=-1)
    if X.truncation < top:
        raise ValueError("target truncation is below the dimension of B")
    if not i.is_injective():
        raise ValueError("the inclusion must be injective")
    T = max(top, 0)
    index = _boundary_index(X, T)
    inside: dict[tuple[int, int], tuple[int, int]] = {}
    for m in range(min(A.truncation, T) + 1):
        for a in range(A.count(m)):
            inside[(m, i.assignment[m][a].base)] = (m, a)
    rest = [(m, b) for m in range(T + 1) for b in range(B.count(m)) if (m, b) not in inside]
    a_order = [(m, a) for m in range(min(A.truncation, T) + 1) for a in range(A.count(m))]
    a_empty = [[None] * A.count(m) for m in range(min(A.truncation, T) + 1)]
    for f in _solve(a_order, A, X, index, a_empty):
        fixed = [[None] * B.count(m) for m in range(T + 1)]
        for (m, b), (_, a) in inside.items():
            fixed[m][b] = f[m][a]
        if next(_solve(rest, B, X, index, fixed), None) is None:
            return False
    return True
