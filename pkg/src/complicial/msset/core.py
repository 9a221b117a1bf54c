"""Finite, dimension-truncated simplicial sets with marking.

Only nondegenerate simplices are stored.  Every other simplex is addressed by
its Eilenberg-Zilber normal form ``s_{i_1} ... s_{i_k} x`` with
``i_1 > ... > i_k`` and ``x`` nondegenerate, which is recorded as a
:class:`SimplexRef` ``(word, base)``.  The dimension of a reference is never
stored; callers always know it from context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Hashable, Iterable, Iterator, NamedTuple, Sequence

Word = tuple[int, ...]


class SimplexRef(NamedTuple):
    word: Word
    base: int


def check_word(word: Sequence[int], dim: int) -> bool:
    """True when ``word`` is a reduced degeneracy word landing in dimension ``dim``."""
    if len(word) > dim:
        return False
    prev = dim
    for i in word:
        if not (0 <= i < prev):
            return False
        prev = i
    return True


def word_to_surjection(word: Word, dim: int) -> tuple[int, ...]:
    """The monotone surjection ``[dim] -> [dim - len(word)]`` encoded by ``word``."""
    collapsed = set(word)
    values = [0]
    for j in range(dim):
        values.append(values[-1] if j in collapsed else values[-1] + 1)
    return tuple(values)


def surjection_to_word(eta: Sequence[int]) -> Word:
    return tuple(j for j in range(len(eta) - 2, -1, -1) if eta[j] == eta[j + 1])


def compose_words(outer: Word, outer_dim: int, inner: Word, inner_dim: int) -> Word:
    """Normal form of ``s_outer s_inner`` where ``s_inner`` lands in ``inner_dim``.

    ``outer`` is a word acting on ``inner_dim``-simplices and landing in
    ``outer_dim``.
    """
    eta_outer = word_to_surjection(outer, outer_dim)
    eta_inner = word_to_surjection(inner, inner_dim)
    return surjection_to_word(tuple(eta_inner[v] for v in eta_outer))


@dataclass(eq=False)
class MarkedSimplicialSet:
    """Nondegenerate simplices with normalized faces, plus a marking.

    ``faces[m][x]`` is the tuple ``(d_0 x, ..., d_m x)`` of references for the
    nondegenerate ``m``-simplex with id ``x`` (empty for vertices).  ``marked``
    holds a flag per nondegenerate simplex; flags of vertices are always False.
    """

    truncation: int
    faces: list[list[tuple[SimplexRef, ...]]]
    marked: list[list[bool]]
    labels: list[list[str]] | None = None
    basepoints: dict[str, int] = field(default_factory=dict)
    _face_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.labels is None:
            self.labels = [["" for _ in dim] for dim in self.faces]

    # -- basic queries -------------------------------------------------
    def count(self, m: int) -> int:
        if m < 0 or m >= len(self.faces):
            return 0
        return len(self.faces[m])

    def counts(self) -> list[int]:
        return [len(level) for level in self.faces]

    def marked_counts(self) -> list[int]:
        return [sum(level) for level in self.marked]

    def cells(self, m: int) -> range:
        return range(self.count(m))

    def is_marked(self, m: int, ref: SimplexRef) -> bool:
        if ref.word:
            return True
        return self.marked[m][ref.base]

    def label(self, m: int, x: int) -> str:
        return self.labels[m][x]

    def structure(self) -> tuple:
        return (
            self.truncation,
            tuple(tuple(level) for level in self.faces),
            tuple(tuple(level) for level in self.marked),
            tuple(sorted(self.basepoints.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkedSimplicialSet):
            return NotImplemented
        return self.structure() == other.structure()

    def __hash__(self) -> int:
        return hash(self.structure())

    def __repr__(self) -> str:
        return f"MarkedSimplicialSet(truncation={self.truncation}, counts={self.counts()})"

    # -- simplicial operators on normal forms ---------------------------
    def face(self, m: int, ref: SimplexRef, i: int) -> SimplexRef:
        """``d_i`` of the ``m``-simplex ``ref``."""
        word, base = ref
        if not word:
            return self.faces[m][base][i]
        key = (m, word, base, i)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        eta = word_to_surjection(word, m)
        rest = eta[:i] + eta[i + 1:]
        if (i > 0 and eta[i - 1] == eta[i]) or (i < m and eta[i + 1] == eta[i]):
            out = SimplexRef(surjection_to_word(rest), base)
        else:
            j = eta[i]
            rest = tuple(v - 1 if v > j else v for v in rest)
            p = m - len(word)
            inner_word, inner_base = self.faces[p][base][j]
            eps = word_to_surjection(inner_word, p - 1)
            out = SimplexRef(surjection_to_word(tuple(eps[v] for v in rest)), inner_base)
        self._face_cache[key] = out
        return out

    def degen(self, m: int, ref: SimplexRef, i: int) -> SimplexRef:
        """``s_i`` of the ``m``-simplex ``ref``."""
        eta = word_to_surjection(ref.word, m)
        return SimplexRef(surjection_to_word(eta[: i + 1] + eta[i:]), ref.base)

    def degenerate(self, m: int, ref: SimplexRef, word: Word) -> SimplexRef:
        """Apply the word ``word`` to the ``m``-simplex ``ref``."""
        if not word:
            return ref
        n = m + len(word)
        return SimplexRef(compose_words(word, n, ref.word, m), ref.base)

    def restrict(self, m: int, ref: SimplexRef, keep: Sequence[int]) -> SimplexRef:
        """The face of ``ref`` spanned by the sorted vertex positions ``keep``."""
        kept = set(keep)
        cur, dim = ref, m
        for v in range(m, -1, -1):
            if v not in kept:
                cur = self.face(dim, cur, v)
                dim -= 1
        return cur

    def vertices(self, m: int, ref: SimplexRef) -> tuple[int, ...]:
        return tuple(self.restrict(m, ref, (v,)).base for v in range(m + 1))

    def all_simplices(self, m: int) -> Iterator[SimplexRef]:
        """Every ``m``-simplex, degenerate ones included, in a fixed order."""
        for p in range(min(m, len(self.faces) - 1) + 1):
            for collapsed in combinations(range(m - 1, -1, -1), m - p):
                for x in range(self.count(p)):
                    yield SimplexRef(tuple(collapsed), x)

    def count_all(self, m: int) -> int:
        return sum(self.count(p) * comb(m, m - p) for p in range(min(m, len(self.faces) - 1) + 1))


def empty_like(truncation: int) -> MarkedSimplicialSet:
    return MarkedSimplicialSet(truncation, [[] for _ in range(truncation + 1)], [[] for _ in range(truncation + 1)])


@dataclass(eq=False)
class SimplicialMap:
    """A map given on nondegenerate simplices by references into the target."""

    source: MarkedSimplicialSet
    target: MarkedSimplicialSet
    assignment: list[list[SimplexRef]]

    def image(self, m: int, ref: SimplexRef) -> SimplexRef:
        p = m - len(ref.word)
        img = self.assignment[p][ref.base]
        if not ref.word:
            return img
        return SimplexRef(compose_words(ref.word, m, img.word, p), img.base)

    def is_injective(self) -> bool:
        for m, level in enumerate(self.assignment):
            seen = set()
            for img in level:
                if img.word or img.base in seen:
                    return False
                seen.add(img.base)
        return True

    def image_ids(self) -> list[set[int]]:
        """Nondegenerate target simplices hit by nondegenerate source simplices."""
        out: list[set[int]] = [set() for _ in range(self.target.truncation + 1)]
        for m, level in enumerate(self.assignment):
            for img in level:
                if not img.word and m < len(out):
                    out[m].add(img.base)
        return out


def validate(X: MarkedSimplicialSet) -> list[str]:
    """All violated invariants of ``X``; an empty list means ``X`` is sound."""
    problems: list[str] = []
    if len(X.faces) != X.truncation + 1 or len(X.marked) != len(X.faces):
        problems.append(f"dimension lists do not match truncation {X.truncation}")
        return problems
    for m, level in enumerate(X.faces):
        if len(X.marked[m]) != len(level):
            problems.append(f"dim {m}: marking list length mismatch")
        for x, fs in enumerate(level):
            if m == 0:
                if fs:
                    problems.append(f"vertex {x} has faces")
                if X.marked[0][x]:
                    problems.append(f"vertex {x} is marked")
                continue
            if len(fs) != m + 1:
                problems.append(f"simplex ({m},{x}) has {len(fs)} faces")
                continue
            ok = True
            for i, (word, base) in enumerate(fs):
                p = m - 1 - len(word)
                if not check_word(word, m - 1) or p < 0 or base < 0 or base >= X.count(p):
                    problems.append(f"simplex ({m},{x}) face {i} refers to a missing or ill-typed simplex")
                    ok = False
            if not ok or m < 2:
                continue
            for j in range(m + 1):
                for i in range(j):
                    lhs = X.face(m - 1, fs[j], i)
                    rhs = X.face(m - 1, fs[i], j - 1)
                    if lhs != rhs:
                        problems.append(f"simplex ({m},{x}): d_{i} d_{j} != d_{j - 1} d_{i}")
    for name, v in X.basepoints.items():
        if not (0 <= v < X.count(0)):
            problems.append(f"basepoint {name} is not a vertex")
    return problems


def validate_map(f: SimplicialMap) -> list[str]:
    problems: list[str] = []
    S, T = f.source, f.target
    for m in range(min(S.truncation, T.truncation) + 1):
        if len(f.assignment[m]) != S.count(m):
            problems.append(f"dim {m}: assignment has wrong length")
            continue
        for x in range(S.count(m)):
            img = f.assignment[m][x]
            p = m - len(img.word)
            if not check_word(img.word, m) or not (0 <= img.base < T.count(p)):
                problems.append(f"({m},{x}) maps to an invalid simplex")
                continue
            for i in range(m + 1 if m else 0):
                if f.image(m - 1, S.faces[m][x][i]) != T.face(m, img, i):
                    problems.append(f"({m},{x}) face {i} does not commute")
            if m and S.marked[m][x] and not T.is_marked(m, img):
                problems.append(f"({m},{x}) is marked but its image is not")
    return problems


def truncate(X: MarkedSimplicialSet, D: int) -> MarkedSimplicialSet:
    if D > X.truncation:
        raise ValueError(f"cannot truncate at {D} above current truncation {X.truncation}")
    return MarkedSimplicialSet(
        D,
        [list(level) for level in X.faces[: D + 1]],
        [list(level) for level in X.marked[: D + 1]],
        [list(level) for level in X.labels[: D + 1]],
        dict(X.basepoints),
    )


def identity_map(X: MarkedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, [[SimplexRef((), x) for x in range(X.count(m))] for m in range(X.truncation + 1)])


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """``g`` after ``f``."""
    return SimplicialMap(
        f.source,
        g.target,
        [[g.image(m, img) for img in level] for m, level in enumerate(f.assignment)],
    )


@dataclass(eq=False)
class Realization:
    """A complex built from a concrete model of its simplices.

    ``values[m][x]`` is the model value of the nondegenerate simplex ``(m, x)``
    and ``index`` inverts it.  The model operators are kept so that arbitrary
    (possibly degenerate) model values can be normalized.
    """

    complex: MarkedSimplicialSet
    values: list[list[Hashable]]
    index: dict[Hashable, tuple[int, int]]
    face_op: Callable[[Hashable, int], Hashable]
    degen_op: Callable[[Hashable, int], Hashable]
    dim_of: Callable[[Hashable], int]
    collapsed: Callable[[Hashable, int], bool] | None = None

    def collapse_set(self, value: Hashable) -> Word:
        m = self.dim_of(value)
        if self.collapsed is not None:
            return tuple(j for j in range(m - 1, -1, -1) if self.collapsed(value, j))
        return tuple(
            j for j in range(m - 1, -1, -1) if self.degen_op(self.face_op(value, j), j) == value
        )

    def ref(self, value: Hashable) -> SimplexRef:
        word = self.collapse_set(value)
        base = value
        for j in word:
            base = self.face_op(base, j)
        return SimplexRef(word, self.index[base][1])

    def value(self, m: int, ref: SimplexRef) -> Hashable:
        v = self.values[m - len(ref.word)][ref.base]
        for j in reversed(ref.word):
            v = self.degen_op(v, j)
        return v

    def is_degenerate(self, value: Hashable) -> bool:
        return bool(self.collapse_set(value))


def realize(
    truncation: int,
    simplices: Callable[[int], Iterable[Hashable]],
    face_op: Callable[[Hashable, int], Hashable],
    degen_op: Callable[[Hashable, int], Hashable],
    dim_of: Callable[[Hashable], int],
    marked: Callable[[Hashable], bool],
    label: Callable[[Hashable], str] = str,
    basepoints: dict[str, Hashable] | None = None,
    collapsed: Callable[[Hashable, int], bool] | None = None,
) -> Realization:
    """Build a complex from model operators.

    ``simplices(m)`` may include degenerate values; they are detected through
    ``s_j d_j x == x`` and discarded.  ``collapsed(x, j)`` may be supplied as a
    faster test of the same condition.
    """
    faces: list[list[tuple[SimplexRef, ...]]] = []
    marks: list[list[bool]] = []
    labels: list[list[str]] = []
    values: list[list[Hashable]] = []
    index: dict[Hashable, tuple[int, int]] = {}
    real = Realization(
        MarkedSimplicialSet(truncation, faces, marks, labels), values, index, face_op, degen_op, dim_of, collapsed
    )
    for m in range(truncation + 1):
        level_vals: list[Hashable] = []
        for x in simplices(m):
            if m and real.is_degenerate(x):
                continue
            if x in index:
                continue
            index[x] = (m, len(level_vals))
            level_vals.append(x)
        values.append(level_vals)
        faces.append([tuple(real.ref(face_op(x, i)) for i in range(m + 1)) if m else () for x in level_vals])
        marks.append([bool(m) and bool(marked(x)) for x in level_vals])
        labels.append([label(x) for x in level_vals])
    if basepoints:
        real.complex.basepoints = {name: index[v][1] for name, v in basepoints.items()}
    return real
