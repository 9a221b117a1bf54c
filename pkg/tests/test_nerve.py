from __future__ import annotations

from itertools import combinations

import pytest

from complicial.cat2 import (
    WedgePresentation,
    interval,
    locally_discrete,
    opposite,
    oriental2,
    product2,
    product_category,
    rect,
    suspend2,
    theta2,
    walking_iso,
)
from complicial.msset import (
    GeneratorShape,
    SimplexRef,
    SimplicialMap,
    find_isomorphism,
    has_extension,
    make_generator,
    product,
    validate,
    validate_map,
)
from complicial.msset.shapes import subsets_complex
from complicial.nerve import (
    DuskinModel,
    GridModel,
    duskin_nerve,
    duskin_realization,
    grid_to_duskin_map,
    matrix_model,
    matrix_realization,
    nerve_1cat,
    susp_comparison,
    wedge_nerve_pairs,
)

from oracles import duskin_low_counts, nerve_chain_counts

ONE_CATEGORIES = {
    "[0]": interval(0),
    "[3]": interval(3),
    "[1]x[1]^op": rect(1, 1),
    "iso": walking_iso(),
    "[1]x[1]": product_category(interval(1), interval(1)),
    "[2]^op": opposite(interval(2)),
}

TWO_CATEGORIES = {
    "S[1]": suspend2(interval(1)),
    "S[2]": suspend2(interval(2)),
    "S iso": suspend2(walking_iso()),
    "O2": oriental2(2),
    "O3": oriental2(3),
    "[2|1,1]": theta2(2, [1, 1]),
    "[2|2,0]": theta2(2, [2, 0]),
}


@pytest.mark.parametrize("name", ONE_CATEGORIES)
def test_nerve_of_category_counts_chains(name):
    P = ONE_CATEGORIES[name]
    N = nerve_1cat(P, "roberts_street", 4)
    assert validate(N) == []
    assert N.counts() == nerve_chain_counts(P, 4)


@pytest.mark.parametrize("name", ONE_CATEGORIES)
def test_roberts_street_marks_everything_above_one(name):
    N = nerve_1cat(ONE_CATEGORIES[name], "roberts_street", 4)
    assert N.marked_counts()[:2] == [0, 0]
    assert N.marked_counts()[2:] == N.counts()[2:]


@pytest.mark.parametrize("name", TWO_CATEGORIES)
def test_duskin_low_dimensions_match_oracle(name):
    A = TWO_CATEGORIES[name]
    N = duskin_nerve(A, "roberts_street", 3)
    assert validate(N) == []
    assert N.counts()[:3] == duskin_low_counts(A)


def _boundary_inclusion(m: int) -> SimplicialMap:
    full = tuple(range(m + 1))
    src = subsets_complex(m, m, lambda S: False, (full,))
    tgt = make_generator(GeneratorShape.standard(m))
    pos = [{lab: x for x, lab in enumerate(level)} for level in tgt.labels]
    return SimplicialMap(src, tgt, [[SimplexRef((), pos[p][lab]) for lab in level] for p, level in enumerate(src.labels)])


@pytest.mark.parametrize("name", ["S[1]", "O2", "[2|1,1]"])
@pytest.mark.parametrize("m", [4, 5])
def test_three_coskeletal(name, m):
    X = duskin_nerve(TWO_CATEGORIES[name], "roberts_street", m)
    seen = {}
    for s in X.all_simplices(m):
        key = tuple(X.face(m, s, i) for i in range(m + 1))
        assert key not in seen, "two simplices share a boundary"
        seen[key] = s
    assert has_extension(_boundary_inclusion(m), X)


@pytest.mark.parametrize("name", TWO_CATEGORIES)
def test_marking_policies_are_nested(name):
    A = TWO_CATEGORIES[name]
    street, rs, nat = (duskin_nerve(A, p, 3) for p in ("street", "roberts_street", "natural"))
    assert street.structure()[1] == rs.structure()[1] == nat.structure()[1]
    for m in range(4):
        for a, b, c in zip(street.marked[m], rs.marked[m], nat.marked[m]):
            assert (not a or b) and (not b or c)


def test_natural_marking_sees_equivalences():
    N = duskin_nerve(locally_discrete(walking_iso()), "natural", 2)
    assert N.marked_counts()[1] == 2
    # the four nondegenerate triangles of Sigma(iso) all carry invertible, non-identity 2-cells
    N = duskin_nerve(suspend2(walking_iso()), "natural", 2)
    assert N.counts()[2] == 4 and N.marked_counts()[2] == 4
    assert duskin_nerve(suspend2(walking_iso()), "roberts_street", 2).marked_counts()[2] == 0


def test_duskin_model_rejects_non_2category():
    A = suspend2(interval(1))
    H = A.homs[(0, 1)]
    f = next(x for x in range(H.n_morphisms) if not H.is_identity(x))
    H.comp[(H.ident[H.tgt[f]], f)] = H.ident[H.src[f]]
    with pytest.raises(ValueError):
        DuskinModel(A)


def test_nerve_preserves_products():
    P, Q = interval(1), walking_iso()
    assert find_isomorphism(
        nerve_1cat(product_category(P, Q), "roberts_street", 3),
        product(nerve_1cat(P, "roberts_street", 3), nerve_1cat(Q, "roberts_street", 3)),
    ) is not None
    A, B = suspend2(interval(1)), locally_discrete(interval(1))
    lhs = duskin_nerve(product2(A, B), "roberts_street", 3)
    rhs = product(duskin_nerve(A, "roberts_street", 3), duskin_nerve(B, "roberts_street", 3))
    assert validate(lhs) == [] and validate(rhs) == []
    assert find_isomorphism(lhs, rhs) is not None


# ---------------------------------------------------------------- grid model


@pytest.mark.parametrize("name", ["[0]", "[1]x[1]^op", "iso"])
@pytest.mark.parametrize("policy", ["street", "roberts_street", "natural"])
def test_grid_model_matches_duskin_nerve_of_suspension(name, policy):
    P = ONE_CATEGORIES[name]
    M = matrix_model(P, 4, policy)
    N = duskin_nerve(suspend2(P), policy, 4)
    assert validate(M) == []
    assert M.counts() == N.counts() and M.marked_counts() == N.marked_counts()
    assert find_isomorphism(M, N) is not None


@pytest.mark.parametrize("P", [interval(1), interval(2), walking_iso()], ids=["[1]", "[2]", "iso"])
def test_explicit_grid_to_duskin_map(P):
    f, problems = grid_to_duskin_map(P, 4)
    assert problems == []
    assert validate_map(f) == [] and f.is_injective()
    assert [len(s) for s in f.image_ids()] == f.target.counts()


def test_grid_counts_through_type():
    model = GridModel(interval(1))
    # functors [k] x [l]^op -> [1] are monotone 0/1 fillings
    assert len(model.grids(1, 1)) == 6
    assert len(model.grids(0, 2)) == 4


@pytest.mark.parametrize("P", [interval(1), walking_iso()], ids=["[1]", "iso"])
def test_suspension_comparison_is_an_inclusion(P):
    f = susp_comparison(P, "roberts_street", 4)
    assert validate_map(f) == [] and f.is_injective()
    assert f.source.counts()[1:] == nerve_1cat(P, "roberts_street", 3).counts()


def _collapse_generic(real, v):
    m = real.dim_of(v)
    return tuple(j for j in range(m - 1, -1, -1) if real.degen_op(real.face_op(v, j), j) == v)


@pytest.mark.parametrize("which", ["grid", "duskin"])
def test_fast_collapse_test_agrees_with_face_then_degeneracy(which):
    if which == "grid":
        real = matrix_realization(walking_iso(), 4)
    else:
        real = duskin_realization(theta2(2, [1, 1]), "roberts_street", 4)
    for m in range(5):
        for v in real.model.level(m):
            assert real.collapse_set(v) == _collapse_generic(real, v)


# ---------------------------------------------------------------- wedge nerve


@pytest.mark.parametrize("widths", [((1,), (0,)), ((1,), (1,)), ((1, 0), (1,))])
def test_wedge_pair_model_agrees_with_duskin_nerve(widths):
    left, right = widths
    w = WedgePresentation.canonical(theta2(len(left), list(left)), theta2(len(right), list(right)))
    wn = wedge_nerve_pairs(w, "roberts_street", 4, cross_check=True)
    assert validate(wn.complex) == [] and validate(wn.wedge) == []
    assert validate_map(wn.comparison) == [] and wn.comparison.is_injective()
    expected_vertices = w.left.n_objects + w.right.n_objects - 1
    assert wn.complex.count(0) == expected_vertices


def test_wedge_nerve_vertices_and_edges_of_spine():
    w = WedgePresentation.canonical(theta2(1, [0]), theta2(1, [0]))
    wn = wedge_nerve_pairs(w, "roberts_street", 3)
    # the wedge of two arrows is the poset [2]
    assert wn.complex.counts() == [3, 3, 1, 0]
    assert wn.wedge.counts() == [3, 2, 0, 0]


def test_nerve_levels_count_all_simplices():
    A = suspend2(interval(1))
    model = DuskinModel(A)
    X = duskin_nerve(A, "roberts_street", 3)
    for m in range(4):
        assert len(model.level(m)) == X.count_all(m)


def test_vertex_masks_of_thetas():
    for m in range(1, 4):
        A = theta2(m, [0] * m)
        N = duskin_nerve(A, "roberts_street", m)
        assert N.counts() == [len(list(combinations(range(m + 1), p + 1))) for p in range(m + 1)]
