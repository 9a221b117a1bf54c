from __future__ import annotations

import re
from dataclasses import replace

import pytest

from complicial.anodyne import (
    AnodyneCertificate,
    build_cert_suspension,
    build_cert_wedge,
    chain_wedge_certificates,
    check_face_tables,
    classify_susp,
    classify_wedge,
    decompose_lambda_prime,
    grid_type_from_vertices,
    lambda_prime_inclusion,
    replay,
    suspect_index_susp,
    suspension_setup,
    unmarked,
    wedge_setup,
)
from complicial.cat2 import WedgePresentation, interval, theta2, walking_iso
from complicial.cli.codec import encode_certificate
from complicial.msset import SimplexRef
from complicial.nerve import GridModel


def _find_grid(P, k, l, objs):
    found = [v for v in GridModel(P).grids(k, l) if v[2] == objs]
    assert len(found) == 1
    return found[0]


# ---------------------------------------------------------------- classification


def test_worked_six_simplex_examples():
    # columns of each row listed from p_i0 to p_i2
    suspect = _find_grid(interval(4), 3, 2, ((2, 1, 0), (3, 2, 1), (3, 3, 3), (4, 4, 4)))
    clean = _find_grid(interval(5), 3, 2, ((2, 1, 0), (3, 2, 1), (4, 4, 4), (5, 5, 5)))
    for P, v in [(interval(4), suspect), (interval(5), clean)]:
        assert GridModel(P).is_nondegenerate(v)
    c = classify_susp(interval(4), suspect)
    assert (c.type, c.suspect_index, c.suspect) == (3, 2, True)
    c = classify_susp(interval(5), clean)
    assert (c.type, c.suspect_index, c.suspect) == (3, 2, False)


def _suspect_index_oracle(P, v):
    k, horiz = v[0], v[4]
    constant = [all(P.is_identity(h) for h in row) for row in horiz]
    return min(r for r in range(k + 2) if all(constant[r:]))


@pytest.mark.parametrize("P", [interval(1), interval(2), walking_iso()], ids=["[1]", "[2]", "iso"])
def test_suspect_index_and_type_agree_with_direct_reading(P):
    model = GridModel(P)
    for k in range(4):
        for l in range(3 - k if k < 3 else 1):
            for v in model.grids(k, l):
                assert suspect_index_susp(P, v) == _suspect_index_oracle(P, v)
                assert grid_type_from_vertices(model, v) == k


def test_degenerate_grids_are_suspect_and_malformed_grids_rejected():
    P = interval(1)
    model = GridModel(P)
    degenerate = [v for v in model.grids(2, 1) if not model.is_nondegenerate(v)]
    assert degenerate and all(classify_susp(P, v).suspect for v in degenerate)
    k, l, objs, vert, horiz = model.grids(1, 1)[0]
    with pytest.raises(ValueError):
        classify_susp(P, (k, l, objs[:1], vert, horiz))


def test_wedge_classification_rejects_mismatched_pair():
    w = WedgePresentation.canonical(theta2(1, [1]), theta2(1, [0]))
    wn = wedge_setup(w, 2)
    a = wn.pairs.values[1][0]
    b = wn.pairs.values[2][0]
    with pytest.raises(ValueError):
        classify_wedge(wn, (a[0], b[1]))


def _partition_holds(cert, inclusion, D):
    X = inclusion.target
    for m in range(D + 1):
        image = {inclusion.assignment[m][x].base for x in range(inclusion.source.count(m))}
        fillers = [s.filler_id for s in cert.steps if s.horn_dim == m]
        faces = [s.face_id for s in cert.steps if s.horn_dim - 1 == m]
        pieces = list(image) + fillers + faces
        if len(pieces) != len(set(pieces)) or set(pieces) != set(range(X.count(m))):
            return False
    return True


def test_suspects_pair_up_with_their_missing_faces():
    for P in [interval(1), interval(2)]:
        inc, target = suspension_setup(P, 4)
        cert = build_cert_suspension(P, 4, target=target)
        assert _partition_holds(cert, inc, 4)
    w = WedgePresentation.canonical(theta2(1, [1]), theta2(1, [0]))
    wn = wedge_setup(w, 4)
    assert _partition_holds(build_cert_wedge(w, 4, nerve=wn), wn.comparison, 4)


# ---------------------------------------------------------------- face tables


def test_suspension_face_table_clean():
    assert check_face_tables(interval(1), 5) == []


def test_wedge_face_table_exceptions_sit_at_the_type_boundary():
    # the row "faces below the suspect index are suspect" fails exactly at a = k1,
    # where the face has type (k1-1, k2-1) and is a legitimate new simplex
    w = WedgePresentation.canonical(theta2(1, [1]), theta2(1, [1]))
    problems = check_face_tables(w, 4)
    assert problems
    assert all("expected suspect" in p for p in problems)
    assert all("disagrees with its closed formula" not in p for p in problems)
    for p in problems:
        found = re.search(r"face (\d+) is WedgeClassification\(type=\((-?\d+), (-?\d+)\)", p)
        assert found and int(found.group(2)) == int(found.group(1)) - 1


# ---------------------------------------------------------------- replay


@pytest.fixture(scope="module")
def susp_case():
    P = interval(1)
    inc, target = suspension_setup(P, 4)
    cert = build_cert_suspension(P, 4, target=target)
    assert replay(cert, inc)
    return cert, inc


def _with_steps(cert: AnodyneCertificate, steps) -> AnodyneCertificate:
    return replace(cert, steps=list(steps))


def test_replay_detects_a_deleted_step(susp_case):
    cert, inc = susp_case
    v = replay(_with_steps(cert, cert.steps[:-1]), inc)
    assert not v and v.reason.startswith("final mismatch")


def test_replay_detects_an_outer_horn(susp_case):
    cert, inc = susp_case
    steps = list(cert.steps)
    steps[0] = replace(steps[0], horn_index=0)
    v = replay(_with_steps(cert, steps), inc)
    assert not v and v.step == 0 and "non-inner horn" in v.reason


def test_replay_detects_stage_order(susp_case):
    cert, inc = susp_case
    i = next(i for i in range(1, len(cert.steps)) if cert.steps[i].stage != cert.steps[i - 1].stage)
    steps = list(cert.steps)
    steps[i - 1] = replace(steps[i - 1], stage=cert.steps[i].stage)
    steps[i] = replace(steps[i], stage=cert.steps[i - 1].stage)
    v = replay(_with_steps(cert, steps), inc)
    assert not v and v.step == i and "stage order" in v.reason


def test_replay_detects_wrong_variant(susp_case):
    cert, inc = susp_case
    idx = next(i for i, s in enumerate(cert.steps) if s.variant == "marked")
    steps = list(cert.steps)
    steps[idx] = replace(steps[idx], variant="plain")
    v = replay(_with_steps(cert, steps), inc)
    assert not v and v.step == idx and "regularity" in v.reason


def test_replay_detects_tampered_attaching_map(susp_case):
    cert, inc = susp_case
    last = cert.steps[-1]
    bogus = tuple(SimplexRef((), last.filler_id) if i == 0 else a for i, a in enumerate(last.attach))
    steps = cert.steps[:-1] + [replace(last, attach=bogus)]
    v = replay(_with_steps(cert, steps), inc)
    assert not v and v.step == len(steps) - 1


def test_replay_rejects_unknown_variant(susp_case):
    cert, inc = susp_case
    steps = [replace(cert.steps[0], variant="sideways")] + cert.steps[1:]
    v = replay(_with_steps(cert, steps), inc)
    assert not v and v.step == 0


def test_unmarked_certificate_replays(susp_case):
    cert, inc = susp_case
    plain = unmarked(cert)
    assert all(s.variant == "plain" for s in plain.steps)
    assert replay(plain, inc)
    assert replay(plain, inc, mode="unmarked")


# ---------------------------------------------------------------- Lambda' and chaining


@pytest.mark.parametrize("m,k", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_lambda_prime_needs_thinness(m, k):
    cert = decompose_lambda_prime(m, k)
    inc = lambda_prime_inclusion(m, k)
    assert replay(cert, inc, allow_thinness=True)
    assert not replay(cert, inc)


def test_lambda_prime_rejects_outer_index():
    with pytest.raises(ValueError):
        decompose_lambda_prime(3, 0)


def test_chaining_through_small_theta():
    links = chain_wedge_certificates([1, 1], 3)
    assert len(links) == 1 and all(link.verdict for link in links)


def test_spine_case_is_one_inner_horn():
    (link,) = chain_wedge_certificates([0, 0], 4)
    assert link.verdict
    assert [(s.horn_dim, s.horn_index) for s in link.certificate.steps] == [(2, 1)]


def test_certificates_are_deterministic():
    a = encode_certificate(build_cert_suspension(walking_iso(), 3))
    b = encode_certificate(build_cert_suspension(walking_iso(), 3))
    assert a == b
