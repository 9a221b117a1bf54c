"""Line-oriented JSON encodings of complexes, maps and certificates.

Every file starts with a header line naming its format and version, followed
by one record per line.  Keys are written in a fixed order with compact
separators, so equal values always encode to identical bytes.  Only strings,
integers, booleans and lists appear; there are no floats.
"""

from __future__ import annotations

import json

from ..anodyne import VARIANTS, AnodyneCertificate, CertificateStep, shape_sets
from ..msset import MarkedSimplicialSet, SimplexRef, SimplicialMap, check_word

VERSION = 1
COMPLEX_FORMAT = "complicial/complex"
MAP_FORMAT = "complicial/map"
CERTIFICATE_FORMAT = "complicial/certificate"

STAGE_FIELDS = {"suspension": ("d", "k", "r"), "wedge": ("d", "b", "k", "r")}


class CodecError(ValueError):
    """Raised for malformed, mismatched or internally inconsistent files."""


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def _ref(ref: SimplexRef) -> list:
    return [list(ref.word), ref.base]


def _parse_lines(text: str) -> list:
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(json.loads(line, parse_float=_no_float))
        except json.JSONDecodeError as exc:
            raise CodecError(f"line {n}: not valid JSON ({exc.msg})") from None
    if not out:
        raise CodecError("empty file")
    return out


def _no_float(token: str):
    raise CodecError(f"floating point value {token!r} is not allowed")


def _header(record, fmt: str) -> dict:
    if not isinstance(record, dict) or record.get("format") != fmt:
        found = record.get("format") if isinstance(record, dict) else None
        raise CodecError(f"expected format {fmt!r}, found {found!r}")
    if record.get("version") != VERSION:
        raise CodecError(f"unsupported version {record.get('version')!r}")
    return record


def _int(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise CodecError(f"{what} must be an integer, got {value!r}")
    return value


def _keys(record, expected: tuple[str, ...], what: str) -> dict:
    if not isinstance(record, dict) or tuple(record) != expected:
        got = tuple(record) if isinstance(record, dict) else type(record).__name__
        raise CodecError(f"{what}: expected fields {expected}, got {got}")
    return record


def _read_ref(raw, dim: int, counts: list[int], what: str) -> SimplexRef:
    if not (isinstance(raw, list) and len(raw) == 2 and isinstance(raw[0], list)):
        raise CodecError(f"{what}: malformed simplex reference {raw!r}")
    word = tuple(_int(i, what) for i in raw[0])
    base = _int(raw[1], what)
    if not check_word(word, dim):
        raise CodecError(f"{what}: {list(word)} is not a reduced degeneracy word in dimension {dim}")
    p = dim - len(word)
    if not (0 <= p < len(counts)) or not (0 <= base < counts[p]):
        raise CodecError(f"{what}: dangling reference to simplex {base} in dimension {p}")
    return SimplexRef(word, base)


# ---------------------------------------------------------------- complexes


def _complex_lines(X: MarkedSimplicialSet) -> list[str]:
    header = {
        "format": COMPLEX_FORMAT,
        "version": VERSION,
        "truncation": X.truncation,
        "counts": X.counts(),
        "basepoints": {k: X.basepoints[k] for k in sorted(X.basepoints)},
    }
    lines = [_dump(header)]
    for m in range(X.truncation + 1):
        for x in range(X.count(m)):
            rec = {
                "id": x,
                "dim": m,
                "faces": [_ref(f) for f in X.faces[m][x]],
                "marked": bool(X.marked[m][x]),
                "label": X.labels[m][x],
            }
            lines.append(_dump(rec))
    return lines


def encode_complex(X: MarkedSimplicialSet) -> str:
    return "\n".join(_complex_lines(X)) + "\n"


def _complex_from_records(records: list) -> MarkedSimplicialSet:
    head = _header(records[0], COMPLEX_FORMAT)
    T = _int(head.get("truncation"), "truncation")
    counts = head.get("counts")
    if not isinstance(counts, list) or len(counts) != T + 1:
        raise CodecError("header counts do not match the truncation")
    counts = [_int(c, "count") for c in counts]
    body = records[1:]
    if len(body) != sum(counts):
        raise CodecError(f"expected {sum(counts)} simplex records, found {len(body)}")
    faces: list[list] = [[] for _ in range(T + 1)]
    marked: list[list[bool]] = [[] for _ in range(T + 1)]
    labels: list[list[str]] = [[] for _ in range(T + 1)]
    expected_dim = 0
    for rec in body:
        _keys(rec, ("id", "dim", "faces", "marked", "label"), "simplex record")
        m, x = _int(rec["dim"], "dim"), _int(rec["id"], "id")
        while expected_dim <= T and len(faces[expected_dim]) == counts[expected_dim]:
            expected_dim += 1
        if m != expected_dim or x != len(faces[m]):
            raise CodecError(f"simplex ids must be dense and ordered; got ({m},{x})")
        raw = rec["faces"]
        if not isinstance(raw, list) or len(raw) != (m + 1 if m else 0):
            raise CodecError(f"simplex ({m},{x}) has the wrong number of faces")
        fs = tuple(_read_ref(f, m - 1, counts, f"simplex ({m},{x})") for f in raw)
        if not isinstance(rec["marked"], bool) or not isinstance(rec["label"], str):
            raise CodecError(f"simplex ({m},{x}) has an ill-typed mark or label")
        faces[m].append(fs)
        marked[m].append(rec["marked"])
        labels[m].append(rec["label"])
    basepoints = head.get("basepoints", {})
    if not isinstance(basepoints, dict):
        raise CodecError("basepoints must be an object")
    for name, v in basepoints.items():
        if not (0 <= _int(v, "basepoint") < counts[0]):
            raise CodecError(f"basepoint {name!r} is a dangling vertex id")
    return MarkedSimplicialSet(T, faces, marked, labels, dict(basepoints))


def decode_complex(text: str) -> MarkedSimplicialSet:
    return _complex_from_records(_parse_lines(text))


# ---------------------------------------------------------------- maps


def encode_map(f: SimplicialMap) -> str:
    src, tgt = _complex_lines(f.source), _complex_lines(f.target)
    header = {"format": MAP_FORMAT, "version": VERSION, "source_lines": len(src), "target_lines": len(tgt)}
    lines = [_dump(header), *src, *tgt]
    for m, level in enumerate(f.assignment):
        for x, img in enumerate(level):
            lines.append(_dump({"dim": m, "id": x, "image": _ref(img)}))
    return "\n".join(lines) + "\n"


def decode_map(text: str) -> SimplicialMap:
    records = _parse_lines(text)
    head = _header(records[0], MAP_FORMAT)
    ns, nt = _int(head.get("source_lines"), "source_lines"), _int(head.get("target_lines"), "target_lines")
    if len(records) < 1 + ns + nt:
        raise CodecError("map file is truncated")
    S = _complex_from_records(records[1 : 1 + ns])
    T = _complex_from_records(records[1 + ns : 1 + ns + nt])
    rest = records[1 + ns + nt :]
    top = min(S.truncation, T.truncation)
    expected = [(m, x) for m in range(top + 1) for x in range(S.count(m))]
    if len(rest) != len(expected):
        raise CodecError(f"expected {len(expected)} assignment records, found {len(rest)}")
    assignment: list[list[SimplexRef]] = [[] for _ in range(top + 1)]
    tcounts = T.counts()
    for (m, x), rec in zip(expected, rest):
        _keys(rec, ("dim", "id", "image"), "assignment record")
        if (rec["dim"], rec["id"]) != (m, x):
            raise CodecError(f"assignment records out of order at ({m},{x})")
        assignment[m].append(_read_ref(rec["image"], m, tcounts, f"image of ({m},{x})"))
    return SimplicialMap(S, T, assignment)


# ---------------------------------------------------------------- certificates


def _horn_ids(step_variant: str, n: int, r: int) -> list[tuple[int, int]]:
    """(dim, local id) of every simplex an ``attach`` list refers to, in order."""
    probe = CertificateStep((), step_variant, n, r, (), 0, 0)
    seen: dict[int, int] = {}
    out = []
    for S in shape_sets(probe):
        p = len(S) - 1
        out.append((p, seen.get(p, 0)))
        seen[p] = seen.get(p, 0) + 1
    return out


def _stage_record(kind: str, stage: tuple[int, ...]) -> dict:
    names = STAGE_FIELDS.get(kind)
    if names is None:
        return {"index": list(stage)}
    return dict(zip(names, stage))


def _read_stage(kind: str, raw) -> tuple[int, ...]:
    names = STAGE_FIELDS.get(kind, ("index",))
    _keys(raw, names, "stage")
    if names == ("index",):
        if not isinstance(raw["index"], list):
            raise CodecError("stage index must be a list")
        return tuple(_int(v, "stage") for v in raw["index"])
    return tuple(_int(raw[k], "stage") for k in names)


def encode_certificate(cert: AnodyneCertificate) -> str:
    header = {
        "format": CERTIFICATE_FORMAT,
        "version": VERSION,
        "kind": cert.kind,
        "source": cert.source,
        "target": cert.target,
        "truncation": cert.truncation,
        "mode": cert.mode,
        "recipe": {k: cert.recipe[k] for k in sorted(cert.recipe)},
        "steps": len(cert.steps),
    }
    lines = [_dump(header)]
    for step in cert.steps:
        ids = _horn_ids(step.variant, step.horn_dim, step.horn_index)
        if len(ids) != len(step.attach):
            raise ValueError(f"step attach has {len(step.attach)} entries, the horn has {len(ids)}")
        rec = {
            "stage": _stage_record(cert.kind, step.stage),
            "variant": step.variant,
            "horn": {"dim": step.horn_dim, "index": step.horn_index},
            "attach": [[p, h, list(ref.word), ref.base] for (p, h), ref in zip(ids, step.attach)],
            "filler_id": step.filler_id,
            "face_id": step.face_id,
        }
        lines.append(_dump(rec))
    return "\n".join(lines) + "\n"


def decode_certificate(text: str, target: MarkedSimplicialSet | None = None) -> AnodyneCertificate:
    """Parse a certificate; with ``target`` every referenced id is range-checked."""
    records = _parse_lines(text)
    head = _header(records[0], CERTIFICATE_FORMAT)
    for key in ("kind", "source", "target", "mode"):
        if not isinstance(head.get(key), str):
            raise CodecError(f"header field {key!r} must be a string")
    kind = head["kind"]
    recipe = head.get("recipe", {})
    if not isinstance(recipe, dict) or any(not isinstance(v, (str, int)) or isinstance(v, bool) for v in recipe.values()):
        raise CodecError("recipe must map names to strings or integers")
    n_steps = _int(head.get("steps"), "steps")
    body = records[1:]
    if len(body) != n_steps:
        raise CodecError(f"header announces {n_steps} steps, found {len(body)}")
    counts = target.counts() if target is not None else None
    steps = []
    for t, rec in enumerate(body):
        what = f"step {t}"
        _keys(rec, ("stage", "variant", "horn", "attach", "filler_id", "face_id"), what)
        if rec["variant"] not in VARIANTS:
            raise CodecError(f"{what}: unknown variant {rec['variant']!r}")
        horn = _keys(rec["horn"], ("dim", "index"), f"{what} horn")
        n, r = _int(horn["dim"], "horn dim"), _int(horn["index"], "horn index")
        if n < 1 or not (0 <= r <= n):
            raise CodecError(f"{what}: bad horn ({n},{r})")
        ids = _horn_ids(rec["variant"], n, r)
        raw = rec["attach"]
        if not isinstance(raw, list) or len(raw) != len(ids):
            raise CodecError(f"{what}: attach must list {len(ids)} horn simplices")
        attach = []
        for (p, h), entry in zip(ids, raw):
            if not (isinstance(entry, list) and len(entry) == 4):
                raise CodecError(f"{what}: malformed attach entry {entry!r}")
            if (entry[0], entry[1]) != (p, h):
                raise CodecError(f"{what}: attach entry names horn simplex ({entry[0]},{entry[1]}), expected ({p},{h})")
            if counts is None:
                if not isinstance(entry[2], list) or not check_word(tuple(entry[2]), p):
                    raise CodecError(f"{what}: bad degeneracy word in attach entry")
                attach.append(SimplexRef(tuple(_int(i, what) for i in entry[2]), _int(entry[3], what)))
            else:
                attach.append(_read_ref([entry[2], entry[3]], p, counts, what))
        filler, face = _int(rec["filler_id"], "filler_id"), _int(rec["face_id"], "face_id")
        if counts is not None:
            if not (n < len(counts) and 0 <= filler < counts[n] and 0 <= face < counts[n - 1]):
                raise CodecError(f"{what}: dangling filler or face id")
        elif filler < 0 or face < 0:
            raise CodecError(f"{what}: negative filler or face id")
        steps.append(CertificateStep(_read_stage(kind, rec["stage"]), rec["variant"], n, r, tuple(attach), filler, face))
    return AnodyneCertificate(
        kind, head["source"], head["target"], _int(head.get("truncation"), "truncation"), head["mode"], steps, dict(recipe)
    )

