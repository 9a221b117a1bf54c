"""Join, suspension, product, pushout along a monomorphism and wedge."""

from __future__ import annotations

from itertools import combinations

from .core import MarkedSimplicialSet, SimplexRef, SimplicialMap, compose_words, truncate
from .shapes import GeneratorShape, make_generator

BOTTOM = "bottom"
TOP = "top"


def point(truncation: int = 0) -> MarkedSimplicialSet:
    return make_generator(GeneratorShape.standard(0), truncation)


def join(X: MarkedSimplicialSet, Y: MarkedSimplicialSet) -> MarkedSimplicialSet:
    """The join ``X * Y``.

    A nondegenerate ``m``-simplex is a pair ``(x, y)`` of nondegenerate
    simplices of dimensions ``k + l = m - 1`` where either side may be the
    empty simplex (dimension -1).  The result is stored through
    ``min(trunc X, trunc Y)``; see the package README for why not one higher.
    """
    T = min(X.truncation, Y.truncation)
    ids: dict[tuple, int] = {}
    cells: list[list[tuple[int, int, int]]] = []
    for m in range(T + 1):
        level = []
        for k in range(-1, m + 1):
            l = m - 1 - k
            xs = range(X.count(k)) if k >= 0 else (None,)
            ys = range(Y.count(l)) if l >= 0 else (None,)
            for x in xs:
                for y in ys:
                    ids[(m, k, x, y)] = len(level)
                    level.append((k, x, y))
        cells.append(level)

    faces: list[list[tuple[SimplexRef, ...]]] = []
    marks: list[list[bool]] = []
    labels: list[list[str]] = []
    for m, level in enumerate(cells):
        lf, lm, ll = [], [], []
        for k, x, y in level:
            l = m - 1 - k
            fs = []
            for i in range(m + 1 if m else 0):
                if i <= k:
                    if k == 0:
                        fs.append(SimplexRef((), ids[(m - 1, -1, None, y)]))
                    else:
                        w, b = X.faces[k][x][i]
                        fs.append(SimplexRef(w, ids[(m - 1 - len(w), k - 1 - len(w), b, y)]))
                elif l == 0:
                    fs.append(SimplexRef((), ids[(m - 1, k, x, None)]))
                else:
                    v, b = Y.faces[l][y][i - k - 1]
                    fs.append(SimplexRef(tuple(j + k + 1 for j in v), ids[(m - 1 - len(v), k, x, b)]))
            lf.append(tuple(fs))
            mx = k >= 1 and X.marked[k][x]
            my = l >= 1 and Y.marked[l][y]
            lm.append(bool(m) and (mx or my))
            xl = X.labels[k][x] if k >= 0 else ""
            yl = Y.labels[l][y] if l >= 0 else ""
            ll.append(f"({xl}|{yl})")
        faces.append(lf)
        marks.append(lm)
        labels.append(ll)
    return MarkedSimplicialSet(T, faces, marks, labels)


def suspend(X: MarkedSimplicialSet) -> MarkedSimplicialSet:
    """The suspension, ``(X * Delta[0]) / X``, stored through ``trunc X + 1``.

    Vertex 0 is the collapsed copy of ``X`` and vertex 1 the cone point; the
    nondegenerate ``m``-simplex with id ``x`` is the cone on the
    ``(m-1)``-simplex ``x`` of ``X``.
    """
    T = X.truncation + 1
    faces: list[list[tuple[SimplexRef, ...]]] = [[(), ()]]
    marks: list[list[bool]] = [[False, False]]
    labels: list[list[str]] = [["bottom", "top"]]
    for m in range(1, T + 1):
        n = m - 1
        lf = []
        bottom = SimplexRef(tuple(range(m - 2, -1, -1)), 0)
        for x in range(X.count(n)):
            if n == 0:
                lf.append((SimplexRef((), 1), bottom))
            else:
                lf.append(tuple(X.faces[n][x]) + (bottom,))
        faces.append(lf)
        marks.append([bool(v) for v in X.marked[n]])
        labels.append([f"S({s})" for s in X.labels[n]])
    return MarkedSimplicialSet(T, faces, marks, labels, {BOTTOM: 0, TOP: 1})


def suspend_map(f: SimplicialMap) -> SimplicialMap:
    """``Sigma f``: the cone on ``f(x)`` for the cone on ``x``, with both poles fixed."""
    S, T = suspend(f.source), suspend(f.target)
    top = min(S.truncation, T.truncation)
    assignment = [[SimplexRef((), 0), SimplexRef((), 1)]]
    for m in range(1, top + 1):
        assignment.append([SimplexRef(img.word, img.base) for img in f.assignment[m - 1]])
    return SimplicialMap(S, T, assignment)


def _strip_common(X: MarkedSimplicialSet, a: SimplexRef, b: SimplexRef, m: int, Y: MarkedSimplicialSet):
    common = sorted(set(a.word) & set(b.word), reverse=True)
    for j in common:
        a = X.face(m, a, j)
        b = Y.face(m, b, j)
        m -= 1
    return tuple(common), a, b, m


def _product_cells(X: MarkedSimplicialSet, Y: MarkedSimplicialSet, m: int) -> list[tuple[SimplexRef, SimplexRef]]:
    level = []
    for p in range(m + 1):
        for q in range(m - p, m + 1):
            for J in combinations(range(m - 1, -1, -1), m - p):
                rest = [j for j in range(m - 1, -1, -1) if j not in J]
                for K in combinations(rest, m - q):
                    for x in range(X.count(p)):
                        for y in range(Y.count(q)):
                            level.append((SimplexRef(J, x), SimplexRef(K, y)))
    level.sort(key=lambda c: (m - len(c[0].word), m - len(c[1].word), c[0].base, c[1].base, c[0].word, c[1].word))
    return level


def product(X: MarkedSimplicialSet, Y: MarkedSimplicialSet) -> MarkedSimplicialSet:
    """Cartesian product, stored through ``min(trunc X, trunc Y)``.

    A nondegenerate ``m``-simplex is a pair of ``m``-simplices whose collapse
    index sets are disjoint.  It is marked iff both coordinates are marked.
    """
    T = min(X.truncation, Y.truncation)
    cells: list[list[tuple[SimplexRef, SimplexRef]]] = []
    ids: dict[tuple[SimplexRef, SimplexRef], int] = {}
    for m in range(T + 1):
        level = _product_cells(X, Y, m)
        for i, c in enumerate(level):
            ids[(m,) + c] = i
        cells.append(level)
    faces, marks, labels = [], [], []
    for m, level in enumerate(cells):
        lf, lm, ll = [], [], []
        for a, b in level:
            fs = []
            for i in range(m + 1 if m else 0):
                fa, fb = X.face(m, a, i), Y.face(m, b, i)
                word, ra, rb, p = _strip_common(X, fa, fb, m - 1, Y)
                fs.append(SimplexRef(word, ids[(p, ra, rb)]))
            lf.append(tuple(fs))
            lm.append(bool(m) and X.is_marked(m, a) and Y.is_marked(m, b))
            pa, pb = m - len(a.word), m - len(b.word)
            ll.append(f"({_ref_label(X, pa, a)},{_ref_label(Y, pb, b)})")
        faces.append(lf)
        marks.append(lm)
        labels.append(ll)
    return MarkedSimplicialSet(T, faces, marks, labels)


def _ref_label(X: MarkedSimplicialSet, p: int, ref: SimplexRef) -> str:
    base = X.labels[p][ref.base]
    if not ref.word:
        return base
    return "s" + "".join(map(str, ref.word)) + base


def product_projections(X: MarkedSimplicialSet, Y: MarkedSimplicialSet, P: MarkedSimplicialSet | None = None):
    """The product together with its two projections."""
    if P is None:
        P = product(X, Y)
    T = P.truncation
    left: list[list[SimplexRef]] = []
    right: list[list[SimplexRef]] = []
    for m in range(T + 1):
        level = _product_cells(X, Y, m)
        left.append([a for a, _ in level])
        right.append([b for _, b in level])
    return P, SimplicialMap(P, X, left), SimplicialMap(P, Y, right)


def pushout(f: SimplicialMap, g: SimplicialMap):
    """Pushout of ``X <-f- A -g-> Y`` with ``f`` a monomorphism.

    Returns ``(P, leg_X, leg_Y)``.  The nondegenerate simplices of ``P`` are
    those of ``Y`` (same ids) followed by those of ``X`` outside the image of
    ``f``.  A simplex is marked iff one of its representatives is marked.
    """
    if f.source is not g.source and f.source != g.source:
        raise ValueError("the two maps have different sources")
    if not f.is_injective():
        raise ValueError("the first leg must be injective")
    X, Y, A = f.target, g.target, f.source
    T = min(X.truncation, Y.truncation)
    leg_x: list[list[SimplexRef | None]] = []
    faces, marks, labels = [], [], []
    for m in range(T + 1):
        hit: dict[int, SimplexRef] = {}
        if m <= A.truncation:
            for a in range(A.count(m)):
                hit[f.assignment[m][a].base] = g.assignment[m][a]
        lx: list[SimplexRef | None] = []
        nxt = Y.count(m)
        for x in range(X.count(m)):
            if x in hit:
                lx.append(hit[x])
            else:
                lx.append(SimplexRef((), nxt))
                nxt += 1
        leg_x.append(lx)
        lf = list(Y.faces[m])
        lm = list(Y.marked[m])
        ll = list(Y.labels[m])
        if m <= A.truncation:
            for a in range(A.count(m)):
                x = f.assignment[m][a].base
                y = g.assignment[m][a]
                if m and X.marked[m][x] and not y.word:
                    lm[y.base] = True
        for x in range(X.count(m)):
            if x in hit:
                continue
            fs = []
            for w, b in X.faces[m][x]:
                p = m - 1 - len(w)
                img = leg_x[p][b]
                fs.append(SimplexRef(compose_words(w, m - 1, img.word, p), img.base) if w else img)
            lf.append(tuple(fs))
            lm.append(X.marked[m][x])
            ll.append(X.labels[m][x])
        faces.append(lf)
        marks.append(lm)
        labels.append(ll)
    bp = dict(Y.basepoints)
    for name, v in X.basepoints.items():
        bp.setdefault(name, leg_x[0][v].base)
    P = MarkedSimplicialSet(T, faces, marks, labels, bp)
    legX = SimplicialMap(X, P, [list(level) for level in leg_x])
    legY = SimplicialMap(Y, P, [[SimplexRef((), y) for y in range(Y.count(m))] for m in range(T + 1)])
    return P, legX, legY


def vertex_map(X: MarkedSimplicialSet, v: int, truncation: int) -> SimplicialMap:
    """The map ``Delta[0] -> X`` picking the vertex ``v``."""
    if not (0 <= v < X.count(0)):
        raise ValueError(f"{v} is not a vertex")
    pt = point(truncation)
    return SimplicialMap(pt, X, [[SimplexRef((), v)]] + [[] for _ in range(truncation)])


def wedge_ss(X: MarkedSimplicialSet, x: int, Y: MarkedSimplicialSet, y: int):
    """Glue the vertex ``x`` of ``X`` to the vertex ``y`` of ``Y``.

    Returns ``(W, leg_X, leg_Y)``; ``X`` keeps its ids inside ``W``.
    """
    T = min(X.truncation, Y.truncation)
    X0 = X if X.truncation == T else _cut(X, T)
    Y0 = Y if Y.truncation == T else _cut(Y, T)
    into_y = vertex_map(Y0, y, T)
    into_x = vertex_map(X0, x, T)
    into_x.source = into_y.source
    W, legY, legX = pushout(into_y, into_x)
    W.basepoints["wedge"] = x
    return W, legX, legY


def _cut(X: MarkedSimplicialSet, T: int) -> MarkedSimplicialSet:
    return truncate(X, T)
