"""Command-line interface: build, census, verify, replay and rlp."""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from pathlib import Path
from typing import Callable

from ..anodyne import (
    AnodyneCertificate,
    Verdict,
    build_cert_suspension,
    build_cert_wedge,
    check_face_tables,
    decompose_lambda_prime,
    lambda_prime_inclusion,
    replay,
    suspension_setup,
    unmarked,
    wedge_setup,
    wedge_type,
)
from ..cat2 import (
    Fin2Category,
    FinCategory,
    WedgePresentation,
    collapse_map,
    find_2iso,
    interval,
    locally_discrete,
    pullback_over_corner,
    rect,
    suspend2,
    theta2,
    walking_iso,
    wedge2,
)
from ..msset import (
    GeneratorShape,
    MarkedSimplicialSet,
    find_isomorphism,
    generator_inclusion,
    has_extension,
    make_generator,
    suspend,
    validate,
)
from ..nerve import POLICIES, duskin_nerve, matrix_realization, nerve_1cat, wedge_nerve_pairs
from .codec import CodecError, decode_certificate, encode_certificate, encode_complex

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_DIM = 7
THEOREMS = (
    "suspension",
    "wedge",
    "face-tables",
    "matrix-iso",
    "oriental-collapse",
    "wedge-pullback",
    "lambda-prime",
)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- object specs

_THETA = re.compile(r"theta:(\d+),\[([\d,\s]*)\]$")


def parse_widths(text: str) -> list[int]:
    text = text.strip().strip("[]")
    if not text:
        return []
    try:
        widths = [int(t) for t in text.split(",")]
    except ValueError:
        widths = [-1]
    if any(k < 0 for k in widths):
        raise UsageError(f"bad width list {text!r}; widths are nonnegative integers")
    return widths


def parse_category(spec: str) -> FinCategory:
    """``interval:k``, ``[k]``, ``rect:k,l`` or ``walking_iso``."""
    spec = spec.strip()
    try:
        if spec == "walking_iso":
            return walking_iso()
        if spec.startswith("[") and spec.endswith("]") and "|" not in spec:
            return interval(int(spec[1:-1]))
        if spec.startswith("interval:"):
            return interval(int(spec.split(":", 1)[1]))
        if spec.startswith("rect:"):
            k, l = (int(t) for t in spec.split(":", 1)[1].split(","))
            return rect(k, l)
    except ValueError:
        pass
    raise UsageError(f"bad category spec {spec!r}; expected interval:k, [k], rect:k,l or walking_iso")


def parse_2category(spec: str) -> Fin2Category:
    """``theta:m,[k...]``, ``susp:<category>``, or a 1-category regarded as locally discrete."""
    spec = spec.strip()
    match = _THETA.match(spec)
    if match:
        m, widths = int(match.group(1)), parse_widths(match.group(2))
        if len(widths) != m:
            raise UsageError(f"theta:{m} needs {m} widths, got {len(widths)}")
        return theta2(m, widths)
    if spec.startswith("susp:"):
        return suspend2(parse_category(spec[5:]))
    return locally_discrete(parse_category(spec))


def _is_2category_spec(spec: str) -> bool:
    return spec.startswith("theta:") or spec.startswith("susp:")


def _presentation(left: str | None, right: str | None) -> WedgePresentation:
    if not left or not right:
        raise UsageError("this command needs --left and --right")
    try:
        return WedgePresentation.canonical(parse_2category(left), parse_2category(right))
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from None


def _int_pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must look like m,k") from None
    return a, b


def build_object(kind: str, args: list[str], dim: int | None, policy: str) -> tuple[MarkedSimplicialSet, Callable | None]:
    """A complex from a positional object description, plus an optional type function.

    Kinds: ``standard M``, ``horn M K``, ``complicial M K``, ``nerve SPEC``,
    ``suspension SPEC``, ``nerve-suspension SPEC``, ``theta M K1,K2,..`` and
    ``wedge LEFT RIGHT``.
    """

    def need(n: int) -> None:
        if len(args) != n:
            raise UsageError(f"{kind} takes {n} argument(s), got {len(args)}")

    def as_int(t: str) -> int:
        try:
            return int(t)
        except ValueError:
            raise UsageError(f"expected an integer, got {t!r}") from None

    if kind in ("standard", "horn", "complicial"):
        need(1 if kind == "standard" else 2)
        m = as_int(args[0])
        try:
            shape = GeneratorShape.standard(m) if kind == "standard" else GeneratorShape(kind, m, as_int(args[1]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return make_generator(shape, max(m, 0) if dim is None else dim), None
    D = 3 if dim is None else dim
    _guard(D)
    if kind == "nerve":
        need(1)
        if _is_2category_spec(args[0]):
            return duskin_nerve(parse_2category(args[0]), policy, D), None
        return nerve_1cat(parse_category(args[0]), policy, D), None
    if kind == "suspension":
        need(1)
        return suspend(nerve_1cat(parse_category(args[0]), policy, max(D - 1, 0))), None
    if kind == "nerve-suspension":
        need(1)
        real = matrix_realization(parse_category(args[0]), D, policy)
        return real.complex, lambda m, x: f"k={real.values[m][x][0]}"
    if kind == "theta":
        if len(args) not in (1, 2):
            raise UsageError("theta takes M and a width list K1,K2,...")
        m, widths = as_int(args[0]), parse_widths(args[1] if len(args) == 2 else "")
        if len(widths) != m:
            raise UsageError(f"theta {m} needs {m} widths, got {len(widths)}")
        return duskin_nerve(theta2(m, widths), policy, D), None
    if kind == "wedge":
        need(2)
        w = _presentation(args[0], args[1])
        wn = wedge_nerve_pairs(w, policy, D, cross_check=False)
        return wn.complex, lambda m, x: "k=({},{})".format(*wedge_type(w, wn.pairs.values[m][x]))
    raise UsageError(f"unknown object kind {kind!r}")


def _guard(D: int) -> None:
    if D < 0:
        raise UsageError("--dim must be nonnegative")
    if D > MAX_DIM:
        raise UsageError(f"--dim {D} exceeds the enumeration guard of {MAX_DIM}")


# ---------------------------------------------------------------- reports


class Report:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str) -> None:
        self.lines.append(text)

    def emit(self, out) -> None:
        if self.fmt == "json":
            out.write(json.dumps(self.data, sort_keys=True) + "\n")
        else:
            out.write("\n".join(self.lines) + "\n")


def census_table(X: MarkedSimplicialSet, type_of: Callable | None) -> list[dict]:
    rows = []
    for m in range(X.truncation + 1):
        marked = sum(X.marked[m])
        row = {"dim": m, "total": X.count(m), "marked": marked, "unmarked": X.count(m) - marked}
        if type_of is not None:
            split = Counter(type_of(m, x) for x in range(X.count(m)))
            row["types"] = {k: split[k] for k in sorted(split, key=_type_sort_key)}
        rows.append(row)
    return rows


def _type_sort_key(label: str) -> tuple[int, ...]:
    return tuple(int(t) for t in re.findall(r"-?\d+", label))


def cmd_census(ns) -> int:
    X, type_of = build_object(ns.kind, ns.args, ns.dim, ns.policy)
    rows = census_table(X, type_of)
    rep = Report(ns.format)
    rep.data = {"object": " ".join([ns.kind, *ns.args]), "policy": ns.policy, "dims": rows}
    rep.line(f"# {' '.join([ns.kind, *ns.args])} (policy {ns.policy}, through dim {X.truncation})")
    rep.line("dim total marked unmarked" + (" types" if type_of else ""))
    for row in rows:
        text = f"{row['dim']} {row['total']} {row['marked']} {row['unmarked']}"
        if "types" in row:
            text += " " + " ".join(f"{k}:{v}" for k, v in row["types"].items())
        rep.line(text)
    rep.emit(sys.stdout)
    return EXIT_OK


def cmd_build(ns) -> int:
    X, _ = build_object(ns.kind, ns.args, ns.dim, ns.policy)
    problems = validate(X)
    if problems:
        print(f"constructed object failed validation: {problems[0]}", file=sys.stderr)
        return EXIT_FAIL
    _write(ns.out, encode_complex(X))
    return EXIT_OK


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii")


# ---------------------------------------------------------------- verify


def _mode(ns) -> str:
    return "unmarked" if ns.unmarked else "marked"


def _certificate_run(cert: AnodyneCertificate, inclusion, ns, rep: Report, allow_thinness: bool = False) -> bool:
    verdict = replay(cert, inclusion, cert.mode, allow_thinness=allow_thinness)
    rep.line(f"certificate: {cert.kind}, {len(cert.steps)} steps, mode {cert.mode}, truncation {cert.truncation}")
    rep.data.update(steps=len(cert.steps), mode=cert.mode, replay=verdict.ok)
    _report_verdict(verdict, rep)
    if ns.out:
        _write(ns.out, encode_certificate(cert))
        rep.line(f"certificate written to {ns.out}")
    return verdict.ok


def _report_verdict(verdict: Verdict, rep: Report) -> None:
    if verdict.ok:
        rep.line("replay: ok")
    else:
        where = "final check" if verdict.step is None else f"step {verdict.step}"
        rep.line(f"replay: FAILED at {where}: {verdict.reason}")
        rep.data.update(failed_step=verdict.step, reason=verdict.reason)


def _suspension_certificate(base: str, D: int, mode: str):
    P = parse_category(base)
    inclusion, target = suspension_setup(P, D)
    cert = build_cert_suspension(P, D, "marked", target, name=base)
    if mode == "unmarked":
        cert = unmarked(cert)
    cert.recipe = {"theorem": "suspension", "base": base, "dim": D}
    return cert, inclusion


def _wedge_certificate(left: str, right: str, D: int, mode: str):
    w = _presentation(left, right)
    nerve = wedge_setup(w, D)
    cert = build_cert_wedge(w, D, "marked", nerve, name=f"{left}, {right}")
    if mode == "unmarked":
        cert = unmarked(cert)
    cert.recipe = {"theorem": "wedge", "left": left, "right": right, "dim": D}
    return cert, nerve.comparison


def _lambda_prime_certificate(m: int, k: int):
    cert = decompose_lambda_prime(m, k)
    cert.recipe = {"theorem": "lambda-prime", "dim": m, "index": k}
    return cert, lambda_prime_inclusion(m, k)


def verify_theorem(ns, rep: Report) -> bool:
    theorem, D = ns.theorem, ns.dim
    rep.data.update(theorem=theorem, dim=D)
    rep.line(f"# verify {theorem} (dim {D})")
    if theorem == "suspension":
        if not ns.base:
            raise UsageError("suspension needs --base")
        _guard(D + 1)
        cert, inc = _suspension_certificate(ns.base, D, _mode(ns))
        return _certificate_run(cert, inc, ns, rep)
    if theorem == "wedge":
        _guard(D + 1)
        cert, inc = _wedge_certificate(ns.left, ns.right, D, _mode(ns))
        return _certificate_run(cert, inc, ns, rep)
    if theorem == "lambda-prime":
        m, k = _int_pair(ns.horn, "--horn") if ns.horn else (D, 1)
        try:
            cert, inc = _lambda_prime_certificate(m, k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return _certificate_run(cert, inc, ns, rep, allow_thinness=True)
    if theorem == "face-tables":
        _guard(D)
        context = parse_category(ns.base) if ns.base else _presentation(ns.left, ns.right)
        problems = check_face_tables(context, D)
        rep.data["violations"] = len(problems)
        rep.line(f"violations: {len(problems)}")
        rep.lines.extend(f"  {p}" for p in problems[:20])
        return not problems
    if theorem == "matrix-iso":
        if not ns.base:
            raise UsageError("matrix-iso needs --base")
        _guard(D)
        P = parse_category(ns.base)
        grid = matrix_realization(P, D).complex
        duskin = duskin_nerve(suspend2(P), "roberts_street", D)
        iso = find_isomorphism(grid, duskin)
        rep.data.update(counts=grid.counts(), marked=grid.marked_counts(), isomorphic=iso is not None)
        rep.line(f"counts: {grid.counts()} marked: {grid.marked_counts()}")
        rep.line(f"isomorphic to the Duskin nerve: {'yes' if iso is not None else 'NO'}")
        return iso is not None
    if theorem == "oriental-collapse":
        bad = []
        for k in range(D + 1):
            for l in range(D + 1):
                _, report = collapse_map(k, l)
                if not report.clean:
                    bad.append((k, l, report.problems[0]))
        rep.data["unclean"] = [[k, l] for k, l, _ in bad]
        rep.line(f"collapse maps checked for 0 <= k,l <= {D}: {(D + 1) ** 2 - len(bad)} clean, {len(bad)} not")
        rep.lines.extend(f"  ({k},{l}): {p}" for k, l, p in bad)
        return not bad
    if theorem == "wedge-pullback":
        w = _presentation(ns.left, ns.right)
        W = wedge2(w).category
        pb = pullback_over_corner(w.left, w.right, w.chi_left, w.chi_right)
        iso = find_2iso(W, pb)
        rep.data.update(sizes=list(W.sizes()), isomorphic=iso is not None)
        rep.line(f"wedge sizes (objects, 1-cells, 2-cells): {W.sizes()}; pullback: {pb.sizes()}")
        rep.line(f"isomorphic: {'yes' if iso is not None else 'NO'}")
        return iso is not None
    raise UsageError(f"unknown theorem {theorem!r}")


def cmd_verify(ns) -> int:
    rep = Report(ns.format)
    ok = verify_theorem(ns, rep)
    rep.data["ok"] = ok
    rep.emit(sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


def rebuild_inclusion(cert: AnodyneCertificate):
    """The inclusion a certificate refers to, rebuilt from its recipe."""
    recipe = cert.recipe
    theorem = recipe.get("theorem")
    if theorem == "suspension":
        inclusion, _ = suspension_setup(parse_category(str(recipe["base"])), int(recipe["dim"]))
        return inclusion
    if theorem == "wedge":
        return wedge_setup(_presentation(str(recipe["left"]), str(recipe["right"])), int(recipe["dim"])).comparison
    if theorem == "lambda-prime":
        return lambda_prime_inclusion(int(recipe["dim"]), int(recipe["index"]))
    raise CodecError(f"certificate recipe names no known construction: {recipe!r}")


def cmd_replay(ns) -> int:
    try:
        text = Path(ns.certificate).read_text(encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {ns.certificate}: {exc.strerror}") from None
    rep = Report(ns.format)
    try:
        header = decode_certificate(text)
        inclusion = rebuild_inclusion(header)
        cert = decode_certificate(text, inclusion.target)
    except (CodecError, KeyError) as exc:
        rep.data.update(ok=False, reason=str(exc))
        rep.line(f"invalid certificate: {exc}")
        rep.emit(sys.stdout)
        return EXIT_FAIL
    verdict = replay(cert, inclusion, cert.mode, allow_thinness=cert.recipe.get("theorem") == "lambda-prime")
    rep.line(f"# replay {ns.certificate}: {cert.kind}, {len(cert.steps)} steps, mode {cert.mode}")
    rep.data.update(steps=len(cert.steps), ok=verdict.ok)
    _report_verdict(verdict, rep)
    rep.emit(sys.stdout)
    return EXIT_OK if verdict.ok else EXIT_FAIL


GENERATORS = {
    "complicial": (GeneratorShape.horn, GeneratorShape.complicial),
    "thinness": (GeneratorShape.complicial_prime, GeneratorShape.complicial_double_prime),
}


def cmd_rlp(ns) -> int:
    m, k = _int_pair(ns.horn, "--horn")
    src_shape, tgt_shape = GENERATORS[ns.generator]
    try:
        inclusion = generator_inclusion(src_shape(m, k), tgt_shape(m, k))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dim = m if ns.dim is None else ns.dim
    if dim < m:
        raise UsageError(f"--dim must be at least the horn dimension {m}")
    X, _ = build_object(ns.kind, ns.args, dim, ns.policy)
    ok = has_extension(inclusion, X)
    rep = Report(ns.format)
    rep.data = {"generator": ns.generator, "horn": [m, k], "object": " ".join([ns.kind, *ns.args]), "lifts": ok}
    rep.line(f"{ns.generator} extension ({m},{k}) against {' '.join([ns.kind, *ns.args])}: {'lifts' if ok else 'NO LIFT'}")
    rep.emit(sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complicial", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_object: bool = True, with_dim: bool = True) -> None:
        if with_object:
            p.add_argument("kind", help="object kind: standard, horn, complicial, nerve, suspension, nerve-suspension, theta, wedge")
            p.add_argument("args", nargs="*", help="arguments of the object kind")
            p.add_argument("--policy", choices=POLICIES, default="roberts_street")
        if with_dim:
            p.add_argument("--dim", type=int, default=None, help="truncation dimension")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("build", help="construct an object and write it as a complex file")
    common(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("census", help="count nondegenerate simplices per dimension")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="check one theorem instance")
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("--base", help="1-category spec: interval:k, [k], rect:k,l, walking_iso")
    p.add_argument("--left", help="2-category spec: theta:m,[k...], susp:<category>, or a 1-category")
    p.add_argument("--right")
    p.add_argument("--horn", help="m,k for lambda-prime")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--unmarked", action="store_true", help="use underlying simplicial sets only")
    p.add_argument("--out", default=None, help="where to write the certificate")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="replay a certificate file")
    p.add_argument("certificate")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("rlp", help="brute-force lifting check against a generating extension")
    common(p)
    p.add_argument("--horn", required=True, help="m,k")
    p.add_argument("--generator", choices=tuple(GENERATORS), default="complicial")
    p.set_defaults(func=cmd_rlp)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except UsageError as exc:
        print(f"complicial {ns.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
