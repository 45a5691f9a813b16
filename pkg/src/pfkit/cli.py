"""Command-line interface: ``pfkit <group> <command> [options]``.

Exit codes: 0 success/pass, 1 mathematical failure (witness printed),
2 usage or parse error, 3 inconclusive (bounded or unknown verdicts).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Optional, Sequence

from sympy import factorint

from .charsets import CharSetError, PrimeSet, build_strong_charset_pf, build_weak_charset_pf, wqo_chain
from .homs import (
    HomError,
    PFHom,
    Status,
    compose,
    strong_char_set,
    strong_hom_search,
    verify_pf_hom,
    verify_strong_hom,
    weak_char_set,
    weak_hom_search,
)
from .partial_field import (
    DEFAULT_BOUND,
    CATALOG_NAMES,
    PartialField,
    catalog,
    enumerate_elements,
    fundamental_elements,
    pf_contains,
)
from .pmatrix import (
    MatrixError,
    PMatrix,
    det,
    is_strong_pmatrix,
    is_weak_pmatrix,
    matroid_axiom_check,
    matroid_of,
    p_graphic_check,
    transport_check,
)
from .presentations import (
    EvaluationModel,
    Presentation,
    PresentationError,
    build_dowling,
    build_lift,
    canonical_lift_hom_check,
    dowling_canonical_hom_check,
    dowling_fundamental_bijection_check,
    dowling_idempotence_check,
    dowling_universal_hom,
    lift_idempotence_check,
    verify_evaluation_model,
)
from .rings import GaloisField, ParseError, RingError, Verdict, ring_from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_STATUS_EXIT = {
    Status.EXACT: EXIT_OK,
    Status.BOUNDED: EXIT_INCONCLUSIVE,
    Status.UNVERIFIED: EXIT_INCONCLUSIVE,
    Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    Status.FAIL: EXIT_FAIL,
}


class UsageError(Exception):
    pass


class Output:
    """Collects one result: human text lines or a JSON object, plus an exit code."""

    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, human: str, obj: Any, code: int = EXIT_OK) -> int:
        if self.as_json:
            print(json.dumps(obj, indent=2, ensure_ascii=False))
        else:
            print(human)
        return code


# ---------------------------------------------------------------------------
# input helpers


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _partial_field(args, required: bool = True, prefix: str = "") -> Optional[PartialField]:
    name = getattr(args, f"{prefix}catalog", None)
    path = getattr(args, f"{prefix}pf_file", None)
    if name and path:
        raise UsageError("give either --catalog or --pf-file, not both")
    if name:
        try:
            return catalog(name)
        except (KeyError, ValueError) as exc:
            raise UsageError(exc.args[0] if exc.args else str(exc)) from exc
    if path:
        return PartialField.from_json(_load_json(path))
    if required:
        raise UsageError(f"a partial field is required (--{prefix.replace('_', '-')}catalog NAME)")
    return None


def _hom(path: str) -> PFHom:
    obj = _load_json(path)
    if "homs" in obj:
        if len(obj["homs"]) != 1:
            raise UsageError(f"{path} holds {len(obj['homs'])} homs; expected one")
        obj = obj["homs"][0]
    return PFHom.from_json(obj.get("hom", obj))


def _model(path: str) -> EvaluationModel:
    obj = _load_json(path)
    return EvaluationModel.from_json(obj.get("model", obj))


def _field(text: str) -> GaloisField:
    try:
        q = int(text)
    except ValueError as exc:
        raise UsageError(f"--field expects a prime power, got {text!r}") from exc
    fac = factorint(q)
    if q < 2 or len(fac) != 1:
        raise UsageError(f"{q} is not a prime power")
    (p, k), = fac.items()
    return GaloisField(p, k)


def _assignments(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise UsageError(f"assignment {part!r} is not NAME=VALUE")
            k, v = part.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _matrix(args, P: Optional[PartialField]) -> PMatrix:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from exc
    try:
        A = PMatrix.from_text(text)
    except MatrixError as exc:
        raise UsageError(f"{args.file}: {exc}") from exc
    if P is not None and A.ring != P.ring:
        raise UsageError(f"matrix ring {A.ring} differs from the partial field's ring {P.ring}")
    return A


def _bound(args) -> int:
    return args.bound if args.bound is not None else DEFAULT_BOUND


# ---------------------------------------------------------------------------
# pf


def cmd_pf_construct(args, out: Output) -> int:
    if args.ring:
        try:
            ring = ring_from_json(json.loads(args.ring))
        except json.JSONDecodeError as exc:
            raise UsageError(f"--ring is not JSON: {exc}") from exc
        gens = [g for g in (args.gens or "").split(";") if g.strip()]
        P = PartialField(ring, tuple(ring.parse(g) for g in gens), args.name)
    else:
        P = _partial_field(args)
    gens = ", ".join(str(g) for g in P.group_generators)
    return out.emit(f"{P.label()}\nring: {P.ring}\ngroup generators: {gens}", P.to_json())


def cmd_pf_enumerate(args, out: Output) -> int:
    P = _partial_field(args)
    E = enumerate_elements(P, _bound(args))
    head = f"{len(E)} elements" + ("" if E.complete else f" (window |k| <= {_bound(args)})")
    code = EXIT_OK if E.complete else EXIT_INCONCLUSIVE
    return out.emit(head + "\n{" + ", ".join(E.texts()) + "}", E.to_json(), code)


def cmd_pf_fundamentals(args, out: Output) -> int:
    P = _partial_field(args)
    F = fundamental_elements(P, _bound(args))
    text = "{" + ", ".join(F.texts()) + "}" + ("" if F.complete else f"  (bounded, |k| <= {_bound(args)})")
    return out.emit(text, F.to_json(), EXIT_OK if F.complete else EXIT_INCONCLUSIVE)


def cmd_pf_contains(args, out: Output) -> int:
    P = _partial_field(args)
    x = P.ring.parse(args.value)
    v = pf_contains(P, x, _bound(args))
    code = {Verdict.YES: EXIT_OK, Verdict.NO: EXIT_FAIL, Verdict.UNKNOWN: EXIT_INCONCLUSIVE}[v]
    return out.emit(v.value, {"value": str(x), "verdict": v.value}, code)


# ---------------------------------------------------------------------------
# hom


def cmd_hom_verify(args, out: Output) -> int:
    h = _hom(args.file)
    res = verify_strong_hom(h) if h.kind == "strong" else verify_pf_hom(h, _bound(args))
    return out.emit(str(res), res.to_json(), _STATUS_EXIT[res.status])


def cmd_hom_search(args, out: Output) -> int:
    P = _partial_field(args)
    F = _field(args.field)
    if args.strong:
        homs = strong_hom_search(P, F)
    else:
        homs = weak_hom_search(P, F, args.bound, allow_bounded=True)
    bounded = any(h.status is not Status.EXACT for h in homs)
    lines = [f"{len(homs)} {'strong' if args.strong else 'weak'} hom(s) {P.label()} -> {F}"]
    for h in homs:
        if h.table is not None:
            lines.append("  " + ", ".join(f"{a} -> {b}" for a, b in h.table) + f"  [{h.status.value}]")
        else:
            lines.append(f"  {json.dumps(h.ring_map.to_json())}  [{h.status.value}]")
    obj = {"homs": [h.to_json() for h in homs]}
    return out.emit("\n".join(lines), obj, EXIT_INCONCLUSIVE if bounded else EXIT_OK)


def cmd_hom_compose(args, out: Output) -> int:
    h1, h2 = _hom(args.first), _hom(args.second)
    try:
        h = compose(h2, h1, _bound(args))
    except HomError as exc:
        return out.emit(f"fail: {exc}", {"status": "fail", "witness": str(exc)}, EXIT_FAIL)
    res = verify_strong_hom(h) if h.kind == "strong" else verify_pf_hom(h, _bound(args))
    h = h.with_status(res.status)
    return out.emit(f"{h.kind} hom {h.source.label()} -> {h.target.label()}: {res}", h.to_json(), _STATUS_EXIT[res.status])


def cmd_hom_charset(args, out: Output) -> int:
    P = _partial_field(args)
    prime_bound = args.prime_bound if args.prime_bound is not None else (13 if args.strong else 7)
    degree_bound = args.degree_bound if args.degree_bound is not None else 3
    if args.strong:
        res = strong_char_set(P, prime_bound, degree_bound)
    else:
        res = weak_char_set(P, prime_bound, degree_bound)
    flagged = any(v != "exact" for v in res.flags.values())
    label = "strong" if args.strong else "weak"
    return out.emit(f"{label} characteristic set (primes <= {prime_bound}): {res}", res.to_json(), EXIT_INCONCLUSIVE if flagged else EXIT_OK)


# ---------------------------------------------------------------------------
# construct


def cmd_construct_charset(args, out: Output) -> int:
    S = PrimeSet.parse(args.set)
    c = build_weak_charset_pf(S)
    return _construction(c, out)


def cmd_construct_strong(args, out: Output) -> int:
    S = PrimeSet.parse(args.set)
    bound = args.prime_bound if args.prime_bound is not None else 13
    c = build_strong_charset_pf(S, bound)
    return _construction(c, out)


def _construction(c, out: Output) -> int:
    P = c.partial_field
    text = f"{P.label()}  [{c.case}]\nring: {P.ring}\ngroup generators: {', '.join(map(str, P.group_generators))}"
    if c.note:
        text += f"\nnote: {c.note}"
    obj = dict(P.to_json())
    return out.emit(text, obj)


def cmd_construct_wqo(args, out: Output) -> int:
    links = wqo_chain(args.q, args.n)
    lines, objs = [], []
    worst = Status.EXACT
    for i, link in enumerate(links, start=1):
        step = link.step.status.value if link.step else "-"
        lines.append(f"P_{i} = {link.partial_field.label()}: step {step}, point {link.point.status.value}")
        for h in (link.step, link.point):
            if h is not None:
                worst = Status.weakest(worst, h.status)
        objs.append(
            {
                "partial_field": link.partial_field.to_json(),
                "step": link.step.to_json() if link.step else None,
                "point": link.point.to_json(),
            }
        )
    return out.emit("\n".join(lines), {"chain": objs}, _STATUS_EXIT[worst])


# ---------------------------------------------------------------------------
# lift / dowling


def _model_or_presentation(pres: Presentation, args, out: Output) -> int:
    target = _partial_field(args, required=False, prefix="target_")
    if target is None:
        text = "generators: " + ", ".join(pres.names) + "\nrelations:\n" + "\n".join(f"  {r}" for r in pres.relation_texts())
        if not pres.complete:
            text += "\n(built from a bounded window)"
        return out.emit(text, pres.to_json())
    values = _assignments(args.assign)
    unknown = set(values) - set(pres.names)
    if unknown:
        raise UsageError(f"unknown generators in assignment: {', '.join(sorted(unknown))}")
    model = EvaluationModel.of(pres, target, {k: target.ring.parse(v) for k, v in values.items()})
    res = verify_evaluation_model(model, _bound(args))
    text = f"model into {target.label()}: {res}\n" + "\n".join(f"  {n} -> {v}" for n, v in model.assignment)
    return out.emit(text, model.to_json(), _STATUS_EXIT[res.status])


def cmd_lift_build(args, out: Output) -> int:
    P = _partial_field(args)
    return _model_or_presentation(build_lift(P, fundamental_elements(P, _bound(args))), args, out)


def cmd_lift_check(args, out: Output) -> int:
    if args.model:
        res = verify_evaluation_model(_model(args.model), _bound(args))
    else:
        res = canonical_lift_hom_check(_partial_field(args))
    return out.emit(str(res), res.to_json(), _STATUS_EXIT[res.status])


def cmd_lift_idempotence(args, out: Output) -> int:
    rep = lift_idempotence_check(_model(args.model), _bound(args))
    return out.emit(str(rep), rep.to_json(), _STATUS_EXIT[rep.status])


def cmd_dowling_build(args, out: Output) -> int:
    P = _partial_field(args)
    return _model_or_presentation(build_dowling(P, args.bound), args, out)


def cmd_dowling_check(args, out: Output) -> int:
    if args.model:
        res = verify_evaluation_model(_model(args.model), _bound(args))
    else:
        res = dowling_canonical_hom_check(_partial_field(args), args.bound)
    return out.emit(str(res), res.to_json(), _STATUS_EXIT[res.status])


def cmd_dowling_universal(args, out: Output) -> int:
    phi = _hom(args.hom)
    try:
        u = dowling_universal_hom(phi, args.bound)
    except HomError as exc:
        return out.emit(f"fail: {exc}", {"status": "fail", "witness": str(exc)}, EXIT_FAIL)
    status = u.verification.status if u.commutes else Status.FAIL
    lines = [f"psi: {u.verification}; psi o i = phi: {'yes' if u.commutes else 'no'}"]
    lines += [f"  {n} -> {v}" for n, v in u.model.assignment]
    obj = {"model": u.model.to_json(), **u.to_json()}
    return out.emit("\n".join(lines), obj, _STATUS_EXIT[status])


def cmd_dowling_idempotence(args, out: Output) -> int:
    rep = dowling_idempotence_check(_model(args.model), _bound(args))
    text = str(rep) + "\n" + "\n".join(f"  i(psi({g})): {s}" for g, s in rep.details.get("i_after_psi", {}).items())
    return out.emit(text, rep.to_json(), _STATUS_EXIT[rep.status])


def cmd_dowling_bijection(args, out: Output) -> int:
    rep = dowling_fundamental_bijection_check(_model(args.model), _bound(args))
    return out.emit(str(rep), rep.to_json(), _STATUS_EXIT[rep.status])


# ---------------------------------------------------------------------------
# matrix


def _check_exit(status: str) -> int:
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[status]


def cmd_matrix_check(args, out: Output) -> int:
    P = _partial_field(args)
    A = _matrix(args, P)
    if args.strong:
        res = is_strong_pmatrix(A, P, _bound(args), allow_large=args.allow_large)
    else:
        res = is_weak_pmatrix(A, P, _bound(args))
    return out.emit(str(res), res.to_json(), _check_exit(res.status))


def cmd_matrix_matroid(args, out: Output) -> int:
    P = _partial_field(args)
    A = _matrix(args, P)
    check = is_weak_pmatrix(A, P, _bound(args))
    if check.status == "fail":
        return out.emit(f"not a weak P-matrix: {check}", check.to_json(), EXIT_FAIL)
    M = matroid_of(A, P, _bound(args))
    axioms = matroid_axiom_check(M)
    code = EXIT_OK if check.status == "pass" else EXIT_INCONCLUSIVE
    if not axioms.passed:
        code = EXIT_FAIL
    return out.emit(M.text(), {**M.to_json(), "axioms": str(axioms)}, code)


def cmd_matrix_transport(args, out: Output) -> int:
    P = _partial_field(args)
    A = _matrix(args, P)
    phi = _hom(args.hom)
    rep = transport_check(A, P, phi, _bound(args))
    return out.emit(str(rep), rep.to_json(), _STATUS_EXIT[rep.status])


def cmd_matrix_graphic(args, out: Output) -> int:
    A = _matrix(args, None)
    ok = p_graphic_check(A)
    return out.emit("true" if ok else "false", {"p_graphic": ok}, EXIT_OK if ok else EXIT_FAIL)


def cmd_matrix_det(args, out: Output) -> int:
    A = _matrix(args, None)
    d = det(A)
    return out.emit(str(d), {"det": str(d)})


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args, out: Output) -> int:
    rows = []
    for name in CATALOG_NAMES:
        P = catalog(name)
        rows.append({"name": name, "ring": P.ring.to_json(), "group_generators": [str(g) for g in P.group_generators]})
    text = "\n".join(f"{r['name']:<14} {catalog(r['name']).ring}  <{', '.join(r['group_generators'])}>" for r in rows)
    return out.emit(text, {"catalog": rows})


# ---------------------------------------------------------------------------
# parser


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False, help="emit JSON")
    p.add_argument("--bound", type=int, default=d, metavar="N", help="exponent window for infinite groups")
    p.add_argument("--prime-bound", type=int, default=d, metavar="N")
    p.add_argument("--degree-bound", type=int, default=d, metavar="N")


def _pf_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--catalog", metavar="NAME", help="built-in partial field (see `pfkit catalog`)")
    p.add_argument("--pf-file", metavar="FILE", help="partial field JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfkit", description="Exact computations with partial fields.")
    _globals(parser, suppress=False)
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    pf = groups.add_parser("pf", help="construct partial fields and list their elements").add_subparsers(dest="cmd", required=True)
    p = leaf(pf, "construct", cmd_pf_construct, "describe a partial field")
    _pf_args(p)
    p.add_argument("--ring", help="ring descriptor JSON")
    p.add_argument("--gens", help="group generators, ';'-separated")
    p.add_argument("--name")
    p = leaf(pf, "enumerate", cmd_pf_enumerate, "list elements")
    _pf_args(p)
    p = leaf(pf, "fundamentals", cmd_pf_fundamentals, "list fundamental elements")
    _pf_args(p)
    p = leaf(pf, "contains", cmd_pf_contains, "membership of a value")
    _pf_args(p)
    p.add_argument("value")

    hom = groups.add_parser("hom", help="homomorphisms").add_subparsers(dest="cmd", required=True)
    p = leaf(hom, "verify", cmd_hom_verify, "verify a hom from a JSON file")
    p.add_argument("--file", required=True)
    p = leaf(hom, "search", cmd_hom_search, "all homs into GF(q)")
    _pf_args(p)
    p.add_argument("--field", required=True, metavar="Q")
    p.add_argument("--strong", action="store_true")
    p = leaf(hom, "compose", cmd_hom_compose, "second o first")
    p.add_argument("first")
    p.add_argument("second")
    p = leaf(hom, "charset", cmd_hom_charset, "characteristic set")
    _pf_args(p)
    p.add_argument("--strong", action="store_true")

    p = leaf(groups, "charset", cmd_hom_charset, "characteristic set (same as `hom charset`)")
    _pf_args(p)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--strong", action="store_true")
    kind.add_argument("--weak", action="store_true", help="default")

    con = groups.add_parser("construct", help="constructions").add_subparsers(dest="cmd", required=True)
    p = leaf(con, "charset-pf", cmd_construct_charset, "partial field with a given characteristic set")
    p.add_argument("--set", required=True, help="e.g. '2,3' or 'P\\{2}'")
    p = leaf(con, "strong-charset-pf", cmd_construct_strong, "product partial field with a given strong set")
    p.add_argument("--set", required=True)
    p = leaf(con, "wqo-chain", cmd_construct_wqo, "descending chain of polynomial partial fields")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    for group, build, check, extra in (
        ("lift", cmd_lift_build, cmd_lift_check, (("idempotence", cmd_lift_idempotence),)),
        (
            "dowling",
            cmd_dowling_build,
            cmd_dowling_check,
            (("idempotence", cmd_dowling_idempotence), ("bijection", cmd_dowling_bijection)),
        ),
    ):
        sub = groups.add_parser(group, help=f"{group} presentations").add_subparsers(dest="cmd", required=True)
        p = leaf(sub, "build", build, "build the presentation (or a model with --target-catalog)")
        _pf_args(p)
        p.add_argument("--target-catalog", metavar="NAME")
        p.add_argument("--target-pf-file", metavar="FILE")
        p.add_argument("--assign", action="append", metavar="NAME=VALUE", help="repeatable; also NAME=V,NAME=V")
        p = leaf(sub, "check", check, "canonical hom check, or verify a model")
        _pf_args(p)
        p.add_argument("--model", metavar="FILE")
        for name, func in extra:
            p = leaf(sub, name, func, f"{name} check on a model")
            p.add_argument("--model", metavar="FILE", required=True)
        if group == "dowling":
            p = leaf(sub, "universal", cmd_dowling_universal, "universal hom from a strong hom")
            p.add_argument("--hom", metavar="FILE", required=True)

    mat = groups.add_parser("matrix", help="P-matrices and matroids").add_subparsers(dest="cmd", required=True)
    p = leaf(mat, "check", cmd_matrix_check, "weak or strong P-matrix test")
    _pf_args(p)
    p.add_argument("--file", required=True)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--weak", action="store_true", default=True)
    kind.add_argument("--strong", action="store_true")
    p.add_argument("--allow-large", action="store_true", help="permit strong scans beyond 12 columns")
    p = leaf(mat, "matroid", cmd_matrix_matroid, "bases of M(A)")
    _pf_args(p)
    p.add_argument("--file", required=True)
    p = leaf(mat, "transport", cmd_matrix_transport, "push a matrix through a strong hom")
    _pf_args(p)
    p.add_argument("--file", required=True)
    p.add_argument("--hom", required=True)
    p = leaf(mat, "graphic", cmd_matrix_graphic, "at most two nonzeros per column")
    p.add_argument("--file", required=True)
    p = leaf(mat, "det", cmd_matrix_det, "determinant of a square matrix")
    p.add_argument("--file", required=True)

    p = groups.add_parser("catalog", help="list built-in partial fields")
    _globals(p, suppress=True)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"pfkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, json.JSONDecodeError, KeyError) as exc:
        print(f"pfkit: error: cannot parse input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CharSetError, HomError, PresentationError, MatrixError) as exc:
        print(f"fail: {exc}")
        return EXIT_FAIL
    except (RingError, ValueError) as exc:
        print(f"pfkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
