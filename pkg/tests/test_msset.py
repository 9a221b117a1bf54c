from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from complicial.msset import (
    GeneratorShape,
    MarkedSimplicialSet,
    SimplexRef,
    SimplicialMap,
    all_maps,
    check_word,
    find_isomorphism,
    generator_inclusion,
    has_extension,
    join,
    make_generator,
    point,
    product,
    product_projections,
    pushout,
    suspend,
    suspend_map,
    surjection_to_word,
    validate,
    validate_map,
    vertex_map,
    wedge_ss,
    word_to_surjection,
)
from complicial.msset.shapes import complicial_marks, subsets_complex

from conftest import small_complexes
from oracles import join_by_vertex_sets, poset_chain_counts


def simplex(m: int, T: int | None = None) -> MarkedSimplicialSet:
    return make_generator(GeneratorShape.standard(m), T)


# ---------------------------------------------------------------- normal forms


@st.composite
def words(draw):
    dim = draw(st.integers(0, 6))
    picked = draw(st.sets(st.integers(0, max(dim - 1, 0)), max_size=dim))
    return tuple(sorted((i for i in picked if i < dim), reverse=True)), dim


@given(words())
def test_word_surjection_round_trip(case):
    word, dim = case
    assert check_word(word, dim)
    eta = word_to_surjection(word, dim)
    assert eta[0] == 0 and eta[-1] == dim - len(word)
    assert surjection_to_word(eta) == word


def test_check_word_rejects_unsorted_and_out_of_range():
    assert not check_word((0, 1), 3)
    assert not check_word((3,), 3)
    assert not check_word((1, 1), 3)
    assert check_word((), 0)


def _all_refs(X: MarkedSimplicialSet, m: int):
    return list(X.all_simplices(m))


@given(small_complexes(truncation=4))
def test_simplicial_identities(X):
    assert validate(X) == []
    for m in range(1, X.truncation + 1):
        for s in _all_refs(X, m):
            for j in range(m):
                up = X.degen(m, s, j) if m < X.truncation else None
                if up is None:
                    continue
                # d_j s_j = d_{j+1} s_j = id
                assert X.face(m + 1, up, j) == s
                assert X.face(m + 1, up, j + 1) == s
            for i in range(m + 1):
                for j in range(i + 1, m + 1):
                    if m >= 2:
                        assert X.face(m - 1, X.face(m, s, j), i) == X.face(m - 1, X.face(m, s, i), j - 1)


def test_standard_simplex_counts_are_binomial():
    for m in range(6):
        X = simplex(m)
        assert X.counts() == [comb(m + 1, p + 1) for p in range(m + 1)]
        assert X.marked_counts() == [0] * (m + 1)
        assert validate(X) == []


def test_all_simplices_counts_degenerate_ones():
    X = simplex(1, 3)
    # maps [n] -> [1] that are monotone: n + 2 of them
    assert [X.count_all(n) for n in range(4)] == [2, 3, 4, 5]


def test_complicial_marking_of_two_simplex():
    X = make_generator(GeneratorShape.complicial(2, 1))
    assert X.marked_counts() == [0, 0, 1]
    marks = complicial_marks(3, 1)
    assert marks((0, 1, 2)) and marks((0, 1, 2, 3)) and not marks((0, 2, 3)) and not marks((1, 2))


def test_horn_and_generator_inclusion():
    inc = generator_inclusion(GeneratorShape.horn(3, 1), GeneratorShape.complicial(3, 1))
    assert inc.source.counts() == [4, 6, 3, 0]
    assert validate_map(inc) == [] and inc.is_injective()
    with pytest.raises(ValueError):
        generator_inclusion(GeneratorShape.standard(2), GeneratorShape.horn(2, 1))


def test_validate_flags_broken_face():
    X = simplex(2)
    X.faces[2][0] = (X.faces[2][0][1], X.faces[2][0][0], X.faces[2][0][2])
    assert validate(X)


def test_validate_flags_marked_vertex_and_dangling_face():
    X = simplex(1)
    X.marked[0][0] = True
    assert any("marked" in p for p in validate(X))
    Y = simplex(1)
    Y.faces[1][0] = (SimplexRef((), 7), SimplexRef((), 0))
    assert validate(Y)


# ---------------------------------------------------------------- join


@pytest.mark.parametrize("l", range(5))
def test_join_with_point_is_next_simplex(l):
    J = join(simplex(l, l + 1), point(l + 1))
    assert validate(J) == []
    assert find_isomorphism(J, simplex(l + 1)) is not None


def test_join_unit():
    X = make_generator(GeneratorShape.horn(3, 1), 3)
    empty = make_generator(GeneratorShape.empty(), 3)
    assert find_isomorphism(join(X, empty), X) is not None
    assert find_isomorphism(join(empty, X), X) is not None


@given(small_complexes(max_vertices=3, truncation=5), small_complexes(max_vertices=3, truncation=5))
def test_join_counts_and_reconstruction(X, Y):
    J = join(X, Y)
    assert validate(J) == []
    xc, yc = [1] + X.counts(), [1] + Y.counts()
    formula = [sum(xc[k + 1] * yc[m - k] for k in range(-1, m + 1)) for m in range(6)]
    assert J.counts() == formula
    oracle = join_by_vertex_sets(
        X.count(0) - 1, _vertex_sets(X), _vertex_sets(X, marked=True),
        Y.count(0) - 1, _vertex_sets(Y), _vertex_sets(Y, marked=True), 5,
    )
    assert find_isomorphism(J, oracle) is not None


def _vertex_sets(X: MarkedSimplicialSet, marked: bool = False) -> set[tuple[int, ...]]:
    return {
        tuple(int(c) for c in lab.split(","))
        for m, level in enumerate(X.labels)
        for x, lab in enumerate(level)
        if not marked or X.marked[m][x]
    }


def test_join_marks_come_from_either_side():
    J = join(make_generator(GeneratorShape.top(1), 2), point(2))
    assert J.marked_counts()[2] == 1


# ---------------------------------------------------------------- suspension


def _to_point(X: MarkedSimplicialSet, pt: MarkedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(
        X, pt, [[SimplexRef(tuple(range(m - 1, -1, -1)), 0) for _ in range(X.count(m))] for m in range(X.truncation + 1)]
    )


def _cone_inclusion(X: MarkedSimplicialSet, J: MarkedSimplicialSet) -> SimplicialMap:
    """``X -> X * Delta[0]`` located through the join labels ``(x|)``."""
    pos = [{lab: i for i, lab in enumerate(level)} for level in J.labels]
    return SimplicialMap(
        X, J, [[SimplexRef((), pos[m][f"({lab}|)"]) for lab in X.labels[m]] for m in range(X.truncation + 1)]
    )


@given(small_complexes(max_vertices=4, truncation=4))
def test_suspension_census_and_quotient_of_cone(X):
    S = suspend(X)
    assert validate(S) == []
    assert S.counts() == [2] + X.counts()
    assert S.marked_counts() == [0] + X.marked_counts()
    J = join(X, point(X.truncation))
    Q, _, _ = pushout(_cone_inclusion(X, J), _to_point(X, point(X.truncation)))
    assert validate(Q) == []
    assert find_isomorphism(S, Q) is not None


def test_suspend_map_is_a_map():
    inc = generator_inclusion(GeneratorShape.horn(2, 1), GeneratorShape.complicial(2, 1))
    f = suspend_map(inc)
    assert validate_map(f) == [] and f.is_injective()


def test_suspension_commutes_with_wedge():
    X = simplex(2, 3)
    Y = make_generator(GeneratorShape.horn(2, 0), 3)
    W, _, _ = wedge_ss(X, 2, Y, 0)
    lhs = suspend(W)
    # both legs start from the suspended point, a single edge
    rhs, _, _ = pushout(suspend_map(vertex_map(X, 2, 3)), suspend_map(vertex_map(Y, 0, 3)))
    assert validate(lhs) == [] and validate(rhs) == []
    assert find_isomorphism(lhs, rhs) is not None


# ---------------------------------------------------------------- products


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 2)])
def test_product_of_simplices_matches_chain_oracle(a, b):
    T = a + b
    P = product(simplex(a, T), simplex(b, T))
    assert validate(P) == []
    assert P.counts() == poset_chain_counts((a, b), T)


def test_product_projections_are_maps():
    P, l, r = product_projections(simplex(1, 2), make_generator(GeneratorShape.complicial(2, 1)))
    assert validate_map(l) == [] and validate_map(r) == []


def test_product_marking_needs_both_sides():
    A = make_generator(GeneratorShape.top(1), 2)
    P = product(A, simplex(1, 2))
    # (e, s_0 v) for both vertices v: the marked edge against a degenerate edge
    assert P.marked_counts()[1] == 2
    assert validate(P) == []


# ---------------------------------------------------------------- pushout and wedge


def test_wedge_of_two_edges_is_the_spine():
    W, lx, ly = wedge_ss(simplex(1), 1, simplex(1), 0)
    assert W.counts() == [3, 2]
    assert validate(W) == [] and validate_map(lx) == [] and validate_map(ly) == []
    assert lx.image(0, SimplexRef((), 1)) == ly.image(0, SimplexRef((), 0))


def test_pushout_requires_a_monomorphism():
    f = _to_point(simplex(1), point(1))
    with pytest.raises(ValueError):
        pushout(f, f)


# ---------------------------------------------------------------- isomorphism search


def _relabel(X: MarkedSimplicialSet, seed: int) -> MarkedSimplicialSet:
    rng = random.Random(seed)
    perms = []
    for m in range(X.truncation + 1):
        p = list(range(X.count(m)))
        rng.shuffle(p)
        perms.append(p)
    faces = [[None] * X.count(m) for m in range(X.truncation + 1)]
    marks = [[False] * X.count(m) for m in range(X.truncation + 1)]
    for m in range(X.truncation + 1):
        for x in range(X.count(m)):
            faces[m][perms[m][x]] = tuple(SimplexRef(w, perms[m - 1 - len(w)][b]) for w, b in X.faces[m][x])
            marks[m][perms[m][x]] = X.marked[m][x]
    return MarkedSimplicialSet(X.truncation, faces, marks)


@given(small_complexes(truncation=3), st.integers(0, 10**6))
def test_isomorphism_found_after_relabelling(X, seed):
    Y = _relabel(X, seed)
    assert validate(Y) == []
    f = find_isomorphism(X, Y)
    assert f is not None and validate_map(f) == [] and f.is_injective()


def test_isomorphism_respects_marking():
    assert find_isomorphism(simplex(2), make_generator(GeneratorShape.complicial(2, 1))) is None
    assert find_isomorphism(simplex(2), make_generator(GeneratorShape.horn(2, 1), 2)) is None


# ---------------------------------------------------------------- lifting


def test_all_maps_counts_monotone_maps():
    # maps Delta[1] -> Delta[2] are monotone maps [1] -> [2]
    assert sum(1 for _ in all_maps(simplex(1), simplex(2, 2))) == 6


def test_horn_extension_brute_force():
    inc = generator_inclusion(GeneratorShape.horn(2, 1), GeneratorShape.complicial(2, 1))
    spine, _, _ = wedge_ss(simplex(1, 2), 1, simplex(1, 2), 0)
    assert not has_extension(inc, spine)
    thin_triangle = make_generator(GeneratorShape.complicial(2, 1))
    assert has_extension(inc, thin_triangle)
    # the unmarked triangle cannot receive the marked filler of the horn 0 -> 1 -> 2
    assert not has_extension(inc, simplex(2))
