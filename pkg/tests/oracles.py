"""Brute-force reference computations used as independent oracles.

None of these reuse the enumeration code under test; they work directly
from composition tables, vertex sets or closed formulas.
"""

from __future__ import annotations

from itertools import combinations, product
from math import prod

from complicial.cat2 import Fin2Category, FinCategory
from complicial.msset.shapes import subsets_complex


def nerve_chain_counts(P: FinCategory, top: int) -> list[int]:
    """Nondegenerate simplices of the nerve: chains of non-identity composable arrows."""
    arrows = [f for f in range(P.n_morphisms) if not P.is_identity(f)]
    counts = [P.n_objects]
    chains = [(f,) for f in arrows]
    for m in range(1, top + 1):
        counts.append(len(chains))
        chains = [c + (g,) for c in chains for g in arrows if P.src[g] == P.tgt[c[-1]]]
    return counts[: top + 1]


def duskin_low_counts(A: Fin2Category) -> list[int]:
    """Nondegenerate 0-, 1- and 2-simplices of the Duskin nerve of ``A``.

    A 2-simplex is a triangle of 1-cells ``f: a->b``, ``g: b->c``, ``h: a->c``
    with a 2-cell ``h => g f``.  Exactly ``2 * (#1-cells) - #objects`` of them
    are degenerate.
    """
    objs = range(A.n_objects)
    ones = sum(A.homs[(a, b)].n_objects for a in objs for b in objs if (a, b) in A.homs)
    non_id_ones = ones - A.n_objects
    triangles = 0
    for a, b, c in product(objs, repeat=3):
        if (a, b) not in A.homs or (b, c) not in A.homs or (a, c) not in A.homs:
            continue
        H = A.homs[(a, c)]
        for f in range(A.homs[(a, b)].n_objects):
            for g in range(A.homs[(b, c)].n_objects):
                gf = A.hcomp1[(a, b, c)][(f, g)]
                for h in range(H.n_objects):
                    triangles += len(H.hom(h, gf))
    return [A.n_objects, non_id_ones, triangles - (2 * ones - A.n_objects)]


def oriental_sizes(m: int) -> tuple[int, int, int]:
    """(objects, 1-cells, 2-cells) of the free 2-category on the ``m``-simplex."""
    pairs = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    ones = (m + 1) + sum(2 ** (j - i - 1) for i, j in pairs)
    twos = (m + 1) + sum(3 ** (j - i - 1) for i, j in pairs)
    return m + 1, ones, twos


def theta_sizes(widths: list[int]) -> tuple[int, int, int]:
    """(objects, 1-cells, 2-cells) of ``[m | k_1, ..., k_m]`` from its hom-categories."""
    m = len(widths)
    pairs = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    ones = (m + 1) + sum(prod(widths[t] + 1 for t in range(i, j)) for i, j in pairs)
    twos = (m + 1) + sum(prod((widths[t] + 1) * (widths[t] + 2) // 2 for t in range(i, j)) for i, j in pairs)
    return m + 1, ones, twos


def poset_chain_counts(sizes: tuple[int, ...], top: int) -> list[int]:
    """Strictly increasing chains of length ``m`` in a product of total orders.

    These are the nondegenerate ``m``-simplices of a product of standard simplices.
    """
    points = list(product(*(range(s + 1) for s in sizes)))

    def less(p, q):
        return p != q and all(a <= b for a, b in zip(p, q))

    counts = []
    chains = [(p,) for p in points]
    for _ in range(top + 1):
        counts.append(len(chains))
        chains = [c + (q,) for c in chains for q in points if less(c[-1], q)]
    return counts


def downward_closure(tops: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    out = set()
    for S in tops:
        for r in range(1, len(S) + 1):
            out.update(combinations(S, r))
    return out


def vertex_set_complex(n: int, members: set[tuple[int, ...]], truncation: int, marked: set[tuple[int, ...]] = frozenset()):
    """The subcomplex of ``Delta[n]`` on ``members`` (downward closed)."""
    every = {S for r in range(1, n + 2) for S in combinations(range(n + 1), r)}
    excluded = tuple(sorted(every - members))
    return subsets_complex(n, truncation, lambda S: S in marked, excluded)


def join_by_vertex_sets(nx: int, X: set, X_marked: set, ny: int, Y: set, Y_marked: set, truncation: int):
    """Join of two vertex-set complexes, reconstructed inside ``Delta[nx + ny + 1]``.

    ``S + T`` is marked when ``S`` or ``T`` is a marked simplex of its side.
    """
    shift = nx + 1

    def moved(T):
        return tuple(v + shift for v in T)

    members = set(X) | {moved(T) for T in Y} | {S + moved(T) for S in X for T in Y}
    marked = set(X_marked) | {moved(T) for T in Y_marked}
    marked |= {S + moved(T) for S in X for T in Y if S in X_marked or T in Y_marked}
    return vertex_set_complex(nx + ny + 1, members, truncation, marked)
