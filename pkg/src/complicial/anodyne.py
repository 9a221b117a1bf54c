"""Suspect simplices, face tables, and horn-filling certificates for the
suspension and wedge comparison inclusions, with a replay verifier."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Sequence

from .cat2 import FinCategory, WedgePresentation, interval, suspend2, theta2
from .msset import (
    GeneratorShape,
    MarkedSimplicialSet,
    Realization,
    SimplexRef,
    SimplicialMap,
    check_word,
    generator_inclusion,
)
from .msset.shapes import complicial_marks
from .nerve import (
    DuskinModel,
    GridModel,
    WedgeNerve,
    grid_dim,
    matrix_realization,
    susp_comparison,
    wedge_nerve_pairs,
)

# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class SuspClassification:
    type: int
    suspect_index: int
    suspect: bool


@dataclass(frozen=True)
class WedgeClassification:
    type: tuple[int, int]
    suspect_index: int
    suspect: bool
    in_image: bool = False


def _row_constant(P: FinCategory, horiz_row: tuple) -> bool:
    return all(P.is_identity(h) for h in horiz_row)


def suspect_index_susp(P: FinCategory, v: tuple) -> int:
    """Minimal ``r`` such that rows ``r..k`` are all constant, else ``k + 1``."""
    k, l, objs, vert, horiz = v
    r = k + 1
    while r > 0 and _row_constant(P, horiz[r - 1]):
        r -= 1
    return r


def classify_susp(P: FinCategory, v: tuple) -> SuspClassification:
    """Type, suspect index and suspectness of a grid simplex of ``N(Sigma P)``."""
    k, l, objs, vert, horiz = v
    if len(objs) != k + 1 or len(vert) != max(k, 0) or any(len(row) != l + 1 for row in objs):
        raise ValueError("malformed grid")
    r = suspect_index_susp(P, v)
    model = GridModel(P)
    if not model.is_nondegenerate(v):
        return SuspClassification(k, r, True)
    suspect = 1 <= r <= k and P.is_identity(vert[r - 1][0])
    return SuspClassification(k, r, suspect)


def grid_type_from_vertices(model: GridModel, v: tuple) -> int:
    """The type read off the vertices: the last vertex sent to the bottom object, or -1."""
    side = model.to_duskin(v)[0]
    bottoms = [s for s, o in enumerate(side) if o == 0]
    return max(bottoms) if bottoms else -1


def _is_constant(real: Realization, v: tuple, obj: int) -> bool:
    return all(o == obj for o in v[0]) and not any(
        a != real.model.A.ident1[obj] for col in v[1] for a in col
    )


def wedge_type(w: WedgePresentation, pair: tuple) -> tuple[int, int]:
    rho, rho2 = pair
    low = [s for s, o in enumerate(rho[0]) if w.chi_left.obj[o] == 0]
    low2 = [s for s, o in enumerate(rho2[0]) if w.chi_right.obj[o] == 0]
    return (max(low) if low else -1, max(low2) if low2 else -1)


def classify_wedge(wn: WedgeNerve, pair: tuple) -> WedgeClassification:
    """Type pair, suspect index and suspectness of a pair simplex of ``N(A v A')``."""
    rho, rho2 = pair
    if len(rho[0]) != len(rho2[0]):
        raise ValueError("malformed pair: components of different dimension")
    w = wn.presentation
    m = len(rho[0]) - 1
    k1, k2 = wedge_type(w, pair)
    J1 = set(wn.left.collapse_set(rho))
    J2 = set(wn.right.collapse_set(rho2))
    r = k1
    if k1 >= 0:
        for cand in range(k2, k1, -1):
            if all(j in J2 for j in range(k1, cand)):
                r = cand
                break
    in_image = _is_constant(wn.right, rho2, w.bottom) or _is_constant(wn.left, rho, w.top)
    degenerate = bool(J1 & J2)
    suspect = degenerate or in_image or (k1 + 1 <= r <= k2 and k2 >= k1 + 1 and r <= m - 1 and r in J1)
    return WedgeClassification((k1, k2), r, suspect, in_image)


# ---------------------------------------------------------------- face tables


def _susp_face_violations(P: FinCategory, model: GridModel, v: tuple) -> list[str]:
    c = classify_susp(P, v)
    k, r = c.type, c.suspect_index
    m = grid_dim(v)
    out = []
    for a in range(m + 1):
        f = classify_susp(P, model.face(v, a))
        if a <= r - 2:
            ok, want = f.suspect, "suspect"
        elif a == r - 1:
            ok, want = f.suspect_index <= r - 1, f"suspect index <= {r - 1}"
        elif a == r:
            ok, want = (f.type, f.suspect_index) == (k - 1, r), f"type {k - 1}, suspect index {r}"
        elif a <= k:
            ok, want = f.suspect, "suspect"
        else:
            ok, want = f.type == k, f"type {k}"
        if not ok:
            out.append(f"{model.label(v)}: face {a} is {f}, expected {want}")
    return out


def _degen_chain(model: DuskinModel, v: tuple, top: int, bottom: int) -> tuple:
    """``s_top ... s_bottom v`` (``s_bottom`` applied first); empty when ``top < bottom``."""
    for j in range(bottom, top + 1):
        v = model.degen(v, j)
    return v


def wedge_face_formula(wn: WedgeNerve, pair: tuple, a: int, k1: int, r: int) -> tuple:
    """The ``a``-th face of ``(s_r alpha, s_{r-1}..s_{k1} alpha')`` by the closed formulas."""
    lm, rm = wn.left.model, wn.right.model
    rho, rho2 = pair
    alpha = lm.face(rho, r)
    alpha2 = rho2
    for _ in range(r - k1):
        alpha2 = rm.face(alpha2, k1)
    if a < k1:
        return (lm.degen(lm.face(alpha, a), r - 1), _degen_chain(rm, rm.face(alpha2, a), r - 2, k1 - 1))
    if a < r:
        return (lm.degen(lm.face(alpha, a), r - 1), _degen_chain(rm, alpha2, r - 2, k1))
    if a == r:
        return (alpha, _degen_chain(rm, alpha2, r - 2, k1))
    if a == r + 1:
        return (alpha, _degen_chain(rm, rm.face(alpha2, k1 + 1), r - 1, k1))
    return (lm.degen(lm.face(alpha, a - 1), r), _degen_chain(rm, rm.face(alpha2, a - r + k1), r - 1, k1))


def _wedge_face_violations(wn: WedgeNerve, pair: tuple) -> list[str]:
    c = classify_wedge(wn, pair)
    (k1, k2), r = c.type, c.suspect_index
    lm, rm = wn.left.model, wn.right.model
    m = len(pair[0][0]) - 1
    out = []
    label = f"({lm.label(pair[0])})x({rm.label(pair[1])})"
    for a in range(m + 1):
        face = (lm.face(pair[0], a), rm.face(pair[1], a))
        formula = wedge_face_formula(wn, pair, a, k1, r)
        if formula != face:
            out.append(f"{label}: face {a} disagrees with its closed formula")
        f = classify_wedge(wn, face)
        if a <= r - 1:
            ok, want = f.suspect, "suspect"
        elif a == r:
            ok, want = (f.type, f.suspect_index) == ((k1, k2 - 1), r - 1), f"type {(k1, k2 - 1)}, index {r - 1}"
        elif a == r + 1 and a <= k2:
            ok, want = (f.type, f.suspect_index) == ((k1, k2 - 1), r), f"type {(k1, k2 - 1)}, index {r}"
        elif a == r + 1:
            ok, want = f.type == (k1, k2), f"type {(k1, k2)}"
        else:
            ok, want = f.suspect, "suspect"
        if not ok:
            out.append(f"{label}: face {a} is {f}, expected {want}")
    return out


def check_face_tables(context: FinCategory | WedgePresentation, D_max: int) -> list[str]:
    """Every disagreement between actual faces of suspect simplices and the face tables.

    ``context`` is the base category of a suspension or a wedge presentation.
    Simplices up to dimension ``D_max`` are swept.
    """
    out: list[str] = []
    if isinstance(context, FinCategory):
        P = context
        real = matrix_realization(P, D_max)
        model = real.model
        for m in range(2, D_max + 1):
            for v in real.values[m]:
                c = classify_susp(P, v)
                if c.suspect and 1 <= c.suspect_index <= c.type:
                    out.extend(_susp_face_violations(P, model, v))
        return out
    wn = wedge_nerve_pairs(context, "roberts_street", D_max, cross_check=False)
    for m in range(1, D_max + 1):
        for pair in wn.pairs.values[m]:
            c = classify_wedge(wn, pair)
            k1, k2 = c.type
            if c.suspect and not c.in_image and k1 + 1 <= c.suspect_index <= k2:
                out.extend(_wedge_face_violations(wn, pair))
    return out


# ---------------------------------------------------------------- certificates


VARIANTS = ("plain", "marked", "thinness")


@dataclass(frozen=True)
class CertificateStep:
    """One horn pushout (or, in the thinness-aware setting, one re-marking).

    ``attach`` lists the target simplex assigned to every nondegenerate
    simplex of the horn, in the storage order of ``horn_vertex_sets`` (or of
    the full simplex for a thinness step).
    """

    stage: tuple[int, ...]
    variant: str
    horn_dim: int
    horn_index: int
    attach: tuple[SimplexRef, ...]
    filler_id: int
    face_id: int


@dataclass
class AnodyneCertificate:
    kind: str
    source: str
    target: str
    truncation: int
    mode: str
    steps: list[CertificateStep] = field(default_factory=list)
    recipe: dict[str, str | int] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def shape_sets(step: CertificateStep) -> list[tuple[int, ...]]:
    """Vertex sets of the nondegenerate simplices the step's ``attach`` refers to."""
    n, r = step.horn_dim, step.horn_index
    full = tuple(range(n + 1))
    sets = [S for p in range(n + 1) for S in combinations(full, p + 1)]
    if step.variant == "thinness":
        return sets
    return [S for S in sets if S != full and S != tuple(v for v in full if v != r)]


def _stage_key(kind: str, stage: tuple[int, ...]) -> tuple:
    if kind == "suspension":
        d, k, r = stage
        return (d, -k, r)
    if kind == "wedge":
        d, b, k, r = stage
        return (d, -b, -k, -r)
    return stage


def _attach_for(X: MarkedSimplicialSet, n: int, filler: int, r: int) -> tuple[SimplexRef, ...]:
    base = SimplexRef((), filler)
    full = tuple(range(n + 1))
    out = []
    for p in range(n + 1):
        for S in combinations(full, p + 1):
            if S == full or S == tuple(v for v in full if v != r):
                continue
            out.append(X.restrict(n, base, S))
    return tuple(out)


def _make_step(X: MarkedSimplicialSet, stage, n: int, filler: int, r: int, mode: str) -> CertificateStep:
    face = X.face(n, SimplexRef((), filler), r)
    if face.word:
        raise RuntimeError(f"missing face of filler {filler} in dimension {n} is degenerate")
    variant = "marked" if mode == "marked" and X.marked[n - 1][face.base] else "plain"
    return CertificateStep(tuple(stage), variant, n, r, _attach_for(X, n, filler, r), filler, face.base)


def _check_mode(mode: str) -> None:
    if mode not in ("marked", "unmarked"):
        raise ValueError(f"mode must be 'marked' or 'unmarked', not {mode!r}")


def suspension_setup(P: FinCategory, D: int) -> tuple[SimplicialMap, Realization]:
    """The inclusion ``Sigma(N P) -> N(Sigma P)`` stored through ``D + 1``, and the target model."""
    target = matrix_realization(P, D + 1)
    return susp_comparison(P, "roberts_street", D + 1, target), target


def build_cert_suspension(
    P: FinCategory,
    D: int,
    mode: str = "marked",
    target: Realization | None = None,
    name: str = "P",
) -> AnodyneCertificate:
    """Horn-filling steps from ``Sigma(N P)`` up to ``N(Sigma P)`` through dimension ``D``.

    Steps run over dimension ``d = 2..D``, then type ``k = d-1..1``, then
    suspect index ``r = 1..k``; each fills the ``r``-horn of a nondegenerate
    suspect ``(d+1)``-simplex of type ``k`` and index ``r``.
    """
    _check_mode(mode)
    if target is None:
        target = matrix_realization(P, D + 1)
    if target.complex.truncation < D + 1:
        raise ValueError(f"target must be stored through dimension {D + 1}")
    X = target.complex
    groups: dict[tuple[int, int, int], list[tuple]] = {}
    for d in range(2, D + 1):
        for v in target.values[d + 1]:
            c = classify_susp(P, v)
            if c.suspect and 1 <= c.suspect_index <= c.type:
                groups.setdefault((d, c.type, c.suspect_index), []).append(v)
    cert = AnodyneCertificate("suspension", f"Sigma N {name}", f"N Sigma {name}", D, mode)
    for d in range(2, D + 1):
        for k in range(d - 1, 0, -1):
            for r in range(1, k + 1):
                for v in sorted(groups.get((d, k, r), ())):
                    cert.steps.append(_make_step(X, (d, k, r), d + 1, target.index[v][1], r, mode))
    return cert


def wedge_setup(w: WedgePresentation, D: int, cross_check: bool = False) -> WedgeNerve:
    return wedge_nerve_pairs(w, "roberts_street", D + 1, cross_check=cross_check)


def build_cert_wedge(
    w: WedgePresentation,
    D: int,
    mode: str = "marked",
    nerve: WedgeNerve | None = None,
    name: str = "A, A'",
) -> AnodyneCertificate:
    """Horn-filling steps from ``N A v N A'`` up to ``N(A v A')`` through dimension ``D``.

    Steps run over ``d = 1..D``, type difference ``b = d-1..0``, ``k = d-1..b``
    and suspect index ``r = k+1..k-b+1``; each fills the ``r``-horn of a
    nondegenerate suspect ``(d+1)``-simplex of type ``(k-b, k+1)`` and index ``r``.
    """
    _check_mode(mode)
    if nerve is None:
        nerve = wedge_setup(w, D)
    if nerve.complex.truncation < D + 1:
        raise ValueError(f"wedge nerve must be stored through dimension {D + 1}")
    X = nerve.complex
    groups: dict[tuple[int, int, int, int], list[tuple]] = {}
    for d in range(1, D + 1):
        for pair in nerve.pairs.values[d + 1]:
            c = classify_wedge(nerve, pair)
            if not c.suspect or c.in_image:
                continue
            k1, k2 = c.type
            if not (k1 + 1 <= c.suspect_index <= k2):
                continue
            k = k2 - 1
            b = k - k1
            groups.setdefault((d, b, k, c.suspect_index), []).append(pair)
    cert = AnodyneCertificate("wedge", f"N{{{name}}} wedge", f"N({name} wedge)", D, mode)
    for d in range(1, D + 1):
        for b in range(d - 1, -1, -1):
            for k in range(d - 1, b - 1, -1):
                for r in range(k + 1, k - b, -1):
                    for pair in sorted(groups.get((d, b, k, r), ())):
                        cert.steps.append(_make_step(X, (d, b, k, r), d + 1, nerve.pairs.index[pair][1], r, mode))
    return cert


def unmarked(cert: AnodyneCertificate) -> AnodyneCertificate:
    """The same steps read on underlying simplicial sets."""
    steps = [replace(s, variant="plain") if s.variant == "marked" else s for s in cert.steps]
    return replace(cert, mode="unmarked", steps=steps)


# ---------------------------------------------------------------- replay


def _model_marks(step: CertificateStep):
    n, r = step.horn_dim, step.horn_index
    if step.variant == "plain":
        return complicial_marks(n, r)
    return complicial_marks(n, r, (r - 1, r + 1))


def replay(
    cert: AnodyneCertificate,
    inclusion: SimplicialMap,
    mode: str | None = None,
    allow_thinness: bool = False,
) -> Verdict:
    """Re-run a certificate step by step on the image of ``inclusion``.

    Each step must attach an inner horn along simplices already present,
    respect the marking imposed by the horn, and add a filler and missing
    face that were absent.  At the end the present simplices must be every
    simplex of the target through the certificate's truncation, with the
    target's marking.
    """
    mode = mode or cert.mode
    _check_mode(mode)
    marked = mode == "marked"
    X = inclusion.target
    S = inclusion.source
    T = X.truncation
    D = cert.truncation
    if D > T:
        return Verdict(False, None, f"target is stored only through dimension {T}")
    if not inclusion.is_injective():
        return Verdict(False, None, "source map is not injective")
    present = [set() for _ in range(T + 1)]
    marks = [set() for _ in range(T + 1)]
    for m in range(min(S.truncation, T) + 1):
        for x in range(S.count(m)):
            y = inclusion.assignment[m][x]
            if y.word:
                return Verdict(False, None, "source map sends a nondegenerate simplex to a degenerate one")
            present[m].add(y.base)
            if marked and m and S.marked[m][x]:
                if not X.marked[m][y.base]:
                    return Verdict(False, None, "source marking is not preserved")
                marks[m].add(y.base)
            elif marked and m and X.marked[m][y.base] and not allow_thinness:
                return Verdict(False, None, "source is not a regular subobject")

    def is_marked(p: int, ref: SimplexRef) -> bool:
        return bool(ref.word) or ref.base in marks[p]

    prev = None
    for t, step in enumerate(cert.steps):
        n, r = step.horn_dim, step.horn_index
        if step.variant not in VARIANTS:
            return Verdict(False, t, f"unknown variant {step.variant!r}")
        if step.variant == "thinness" and not allow_thinness:
            return Verdict(False, t, "re-marking steps are not allowed here")
        if step.variant == "marked" and not marked:
            step = replace(step, variant="plain")
        if not (0 < r < n):
            return Verdict(False, t, f"non-inner horn: index {r} in dimension {n}")
        key = _stage_key(cert.kind, step.stage)
        if prev is not None and key < prev:
            return Verdict(False, t, "stage order violated")
        prev = key
        if n > T:
            return Verdict(False, t, f"horn dimension {n} exceeds the target truncation")
        sets = shape_sets(step)
        if len(step.attach) != len(sets):
            return Verdict(False, t, "attaching map has the wrong number of simplices")
        amap = dict(zip(sets, step.attach))
        for Sv, ref in amap.items():
            p = len(Sv) - 1
            q = p - len(ref.word)
            if not check_word(ref.word, p) or q < 0 or not (0 <= ref.base < X.count(q)):
                return Verdict(False, t, f"malformed target simplex for horn simplex {Sv}")
            if ref.base not in present[q]:
                return Verdict(False, t, f"missing face: horn simplex {Sv} lands outside the current subcomplex")
        for Sv, ref in amap.items():
            p = len(Sv) - 1
            for i in range(p + 1 if p else 0):
                if X.face(p, ref, i) != amap[Sv[:i] + Sv[i + 1:]]:
                    return Verdict(False, t, f"attaching map is not simplicial at {Sv}")
        if marked:
            mk = _model_marks(step)
            for Sv, ref in amap.items():
                if mk(Sv) and not is_marked(len(Sv) - 1, ref):
                    return Verdict(False, t, f"marking violation: horn simplex {Sv} lands on an unmarked simplex")
        full = tuple(range(n + 1))
        filler = SimplexRef((), step.filler_id)
        if not (0 <= step.filler_id < X.count(n)) or not (0 <= step.face_id < X.count(n - 1)):
            return Verdict(False, t, "filler or face id out of range")
        if step.variant == "thinness":
            if amap[full] != filler or amap[tuple(v for v in full if v != r)] != SimplexRef((), step.face_id):
                return Verdict(False, t, "re-marking step does not name its simplex and face")
            marks[n - 1].add(step.face_id)
            continue
        if step.filler_id in present[n]:
            return Verdict(False, t, "filler already present")
        if step.face_id in present[n - 1]:
            return Verdict(False, t, "missing face already present")
        for a in range(n + 1):
            got = X.face(n, filler, a)
            if a == r:
                if got != SimplexRef((), step.face_id):
                    return Verdict(False, t, "face id is not the horn face of the filler")
            elif got != amap[tuple(v for v in full if v != a)]:
                return Verdict(False, t, f"filler does not restrict to the attaching map at face {a}")
        present[n].add(step.filler_id)
        present[n - 1].add(step.face_id)
        if marked:
            face_marked = step.variant == "marked"
            if not allow_thinness:
                if not X.marked[n][step.filler_id]:
                    return Verdict(False, t, "regularity: filler is unmarked in the target")
                if X.marked[n - 1][step.face_id] != face_marked:
                    return Verdict(False, t, "regularity: marking of the new face differs from the target")
            marks[n].add(step.filler_id)
            if face_marked:
                marks[n - 1].add(step.face_id)
    for m in range(D + 1):
        if len(present[m]) != X.count(m):
            return Verdict(False, None, f"final mismatch: {X.count(m) - len(present[m])} simplices of dimension {m} never added")
        if marked and marks[m] != {x for x in range(X.count(m)) if X.marked[m][x]}:
            return Verdict(False, None, f"final mismatch: marking differs in dimension {m}")
    return Verdict(True)


# ---------------------------------------------------------------- Lambda' -> Delta''


def lambda_prime_inclusion(m: int, k: int) -> SimplicialMap:
    """``Lambda^k[m]' -> Delta^k[m]''`` as an inclusion of generators."""
    return generator_inclusion(GeneratorShape.horn_prime(m, k), GeneratorShape.complicial_double_prime(m, k))


def decompose_lambda_prime(m: int, k: int) -> AnodyneCertificate:
    """Two steps: fill the inner horn, then mark the ``k``-th face."""
    if m < 2 or not (0 < k < m):
        raise ValueError(f"need m >= 2 and an inner index 0 < k < m, got m={m}, k={k}")
    inc = lambda_prime_inclusion(m, k)
    X = inc.target
    full = tuple(range(m + 1))
    ids = {tuple(int(c) for c in lab.split(",")): x for p in range(m + 1) for x, lab in enumerate(X.labels[p])}
    filler = ids[full]
    face = ids[tuple(v for v in full if v != k)]
    fill = CertificateStep((1,), "plain", m, k, _attach_for(X, m, filler, k), filler, face)
    every = tuple(SimplexRef((), ids[S]) for p in range(m + 1) for S in combinations(full, p + 1))
    remark = CertificateStep((2,), "thinness", m, k, every, filler, face)
    return AnodyneCertificate("lambda_prime", f"Lambda^{k}[{m}]'", f"Delta^{k}[{m}]''", m, "marked", [fill, remark])


# ---------------------------------------------------------------- chaining


@dataclass
class ChainLink:
    certificate: AnodyneCertificate
    nerve: WedgeNerve
    verdict: Verdict


def chain_wedge_certificates(widths: Sequence[int], D: int, mode: str = "marked") -> list[ChainLink]:
    """Certificates for ``N[i|k_1..k_i] v N[1|k_{i+1}] -> N[i+1|k_1..k_{i+1}]``, one per link.

    The inclusion of the wedge of all ``N[1|k_i]`` into ``N[m|k_1..k_m]`` is
    the composite of pushouts of these links.
    """

    links = []
    for i in range(1, len(widths)):
        left = theta2(i, widths[:i])
        w = WedgePresentation.canonical(left, suspend2(interval(widths[i])))
        nerve = wedge_setup(w, D)
        cert = build_cert_wedge(w, D, mode, nerve, name=f"theta{list(widths[:i])}, [1|{widths[i]}]")
        links.append(ChainLink(cert, nerve, replay(cert, nerve.comparison, mode)))
    return links
