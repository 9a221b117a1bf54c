"""Standard simplices, horns and their marked variants."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .core import MarkedSimplicialSet, SimplexRef, SimplicialMap

SHAPE_TAGS = (
    "empty",
    "standard",
    "top",
    "complicial",
    "complicial_prime",
    "complicial_double_prime",
    "horn",
    "horn_prime",
    "three_eq",
    "three_sharp",
)


@dataclass(frozen=True)
class GeneratorShape:
    tag: str
    m: int = -1
    k: int = -1

    def __post_init__(self) -> None:
        if self.tag not in SHAPE_TAGS:
            raise ValueError(f"unknown shape {self.tag!r}")
        if self.tag == "empty":
            if self.m != -1:
                raise ValueError("the empty shape has dimension -1")
        elif self.tag in ("three_eq", "three_sharp"):
            if self.m != 3:
                raise ValueError(f"{self.tag} is 3-dimensional")
        elif self.m < 0:
            raise ValueError("dimension must be nonnegative")
        if self.tag in ("complicial", "complicial_prime", "complicial_double_prime", "horn"):
            if not (0 <= self.k <= self.m):
                raise ValueError(f"need 0 <= k <= m, got k={self.k}, m={self.m}")
        if self.tag in ("horn", "horn_prime") and self.m < 1:
            raise ValueError("horns need m >= 1")
        if self.tag == "horn_prime" and not (0 < self.k < self.m):
            raise ValueError(f"primed horns need 0 < k < m, got k={self.k}, m={self.m}")

    @classmethod
    def empty(cls) -> GeneratorShape:
        return cls("empty")

    @classmethod
    def standard(cls, m: int) -> GeneratorShape:
        return cls("standard", m)

    @classmethod
    def top(cls, m: int) -> GeneratorShape:
        return cls("top", m)

    @classmethod
    def complicial(cls, m: int, k: int) -> GeneratorShape:
        return cls("complicial", m, k)

    @classmethod
    def complicial_prime(cls, m: int, k: int) -> GeneratorShape:
        return cls("complicial_prime", m, k)

    @classmethod
    def complicial_double_prime(cls, m: int, k: int) -> GeneratorShape:
        return cls("complicial_double_prime", m, k)

    @classmethod
    def horn(cls, m: int, k: int) -> GeneratorShape:
        return cls("horn", m, k)

    @classmethod
    def horn_prime(cls, m: int, k: int) -> GeneratorShape:
        return cls("horn_prime", m, k)

    @classmethod
    def three_eq(cls) -> GeneratorShape:
        return cls("three_eq", 3)

    @classmethod
    def three_sharp(cls) -> GeneratorShape:
        return cls("three_sharp", 3)


def complicial_marks(m: int, k: int, extra_faces: tuple[int, ...] = ()) -> Callable[[tuple[int, ...]], bool]:
    """Marking predicate of ``Delta^k[m]`` with the codimension-one faces ``extra_faces`` added."""
    core = {v for v in (k - 1, k, k + 1) if 0 <= v <= m}
    extras = {tuple(v for v in range(m + 1) if v != i) for i in extra_faces if 0 <= i <= m}

    def marked(S: tuple[int, ...]) -> bool:
        return len(S) > 1 and (core <= set(S) or S in extras)

    return marked


def shape_marks(shape: GeneratorShape) -> Callable[[tuple[int, ...]], bool]:
    m, k = shape.m, shape.k
    tag = shape.tag
    if tag in ("empty", "standard"):
        return lambda S: False
    if tag == "top":
        return lambda S: len(S) == m + 1 and m > 0
    if tag in ("complicial", "horn"):
        return complicial_marks(m, k)
    if tag in ("complicial_prime", "horn_prime"):
        return complicial_marks(m, k, (k - 1, k + 1))
    if tag == "complicial_double_prime":
        return complicial_marks(m, k, (k - 1, k, k + 1))
    if tag == "three_eq":
        return lambda S: len(S) >= 3 or S in ((0, 2), (1, 3))
    if tag == "three_sharp":
        return lambda S: len(S) >= 2
    raise AssertionError(tag)


def subsets_complex(
    m: int,
    truncation: int,
    marked: Callable[[tuple[int, ...]], bool],
    excluded: tuple[tuple[int, ...], ...] = (),
) -> MarkedSimplicialSet:
    """The sub-complex of ``Delta[m]`` on all vertex subsets except ``excluded``.

    ``excluded`` must be upward closed.  Simplices are ordered by dimension and
    then lexicographically by vertex set.
    """
    faces: list[list[tuple[SimplexRef, ...]]] = []
    marks: list[list[bool]] = []
    labels: list[list[str]] = []
    ids: dict[tuple[int, ...], int] = {}
    skip = set(excluded)
    for n in range(truncation + 1):
        level = [S for S in combinations(range(m + 1), n + 1) if S not in skip] if n <= m else []
        for x, S in enumerate(level):
            ids[S] = x
        faces.append([
            tuple(SimplexRef((), ids[S[:i] + S[i + 1:]]) for i in range(n + 1)) if n else ()
            for S in level
        ])
        marks.append([marked(S) for S in level])
        labels.append([",".join(map(str, S)) for S in level])
    return MarkedSimplicialSet(truncation, faces, marks, labels)


def make_generator(shape: GeneratorShape, truncation: int | None = None) -> MarkedSimplicialSet:
    """The named generator, stored through dimension ``truncation``.

    ``truncation`` defaults to the dimension of the shape.
    """
    m = shape.m
    if truncation is None:
        truncation = max(m, 0)
    if shape.tag != "empty" and truncation < m:
        raise ValueError(f"truncation {truncation} is below the shape dimension {m}")
    if shape.tag == "empty":
        return subsets_complex(-1, truncation, lambda S: False)
    excluded: tuple[tuple[int, ...], ...] = ()
    if shape.tag in ("horn", "horn_prime"):
        full = tuple(range(m + 1))
        excluded = (full, tuple(v for v in full if v != shape.k))
    return subsets_complex(m, truncation, shape_marks(shape), excluded)


def simplex_vertex_sets(m: int, truncation: int) -> list[list[tuple[int, ...]]]:
    """Vertex sets of the nondegenerate simplices of ``Delta[m]`` in storage order."""
    return [list(combinations(range(m + 1), n + 1)) if n <= m else [] for n in range(truncation + 1)]


def horn_vertex_sets(m: int, k: int) -> list[list[tuple[int, ...]]]:
    """Vertex sets of the nondegenerate simplices of ``Lambda^k[m]`` in storage order."""
    full = tuple(range(m + 1))
    missing = {full, tuple(v for v in full if v != k)}
    return [[S for S in level if S not in missing] for level in simplex_vertex_sets(m, m)]


def generator_inclusion(source: GeneratorShape, target: GeneratorShape) -> SimplicialMap:
    """The inclusion of one generator into another on the same vertex set ``[m]``."""
    if source.m != target.m:
        raise ValueError("generators must share their vertex set")
    src, tgt = make_generator(source), make_generator(target)
    pos = [{lab: x for x, lab in enumerate(level)} for level in tgt.labels]
    try:
        assignment = [[SimplexRef((), pos[p][lab]) for lab in level] for p, level in enumerate(src.labels)]
    except KeyError as exc:
        raise ValueError(f"simplex {exc.args[0]} of the source is missing from the target") from None
    return SimplicialMap(src, tgt, assignment)
