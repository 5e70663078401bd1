"""Command-line front end with JSON input and output.

Every run emits a single JSON document on stdout; diagnostics go to stderr.
Exit status is 0 on success, 2 on domain errors (the error name travels in
the document), and 1 on usage errors.  Identical requests produce
byte-identical output: the only environment dependence is the stabilization
guard, which is recorded in the meta header.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bundles import (
    BundleHandle,
    audit_splitting,
    bundle_handle,
    check_parity,
    check_type_h0,
    type_profile,
)
from .delpezzo import PointConfiguration, classify, general_position
from .errors import ArithsurfError
from .exactlat import is_prime
from .graded import Form, GradedPresentation, parse_form
from .hirzebruch import (
    NormalForm,
    bundle_from_normal_form,
    constancy_check,
    degree_profile,
    equation,
    reduce_coefficients,
)
from .cohomology import window_guard
from .selftest import run_acceptance
from .transforms import (
    FiberQuotient,
    apply_full,
    blowup_factorization,
    default_surjection,
    prescribed_types,
    validate_quotient,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"usage error: {message}", file=sys.stderr)
        sys.exit(1)


def _meta() -> dict:
    return {"tool": "arithsurf", "version": __version__, "window_guard": window_guard()}


def _emit(payload: dict) -> int:
    doc = {"meta": _meta(), **payload}
    print(json.dumps(doc, indent=2))
    return 0


def _emit_error(exc: ArithsurfError) -> int:
    doc = {"meta": _meta(), "error": type(exc).__name__, "message": str(exc)}
    extra = getattr(exc, "witness", None)
    if extra is not None:
        doc["witness"] = extra.to_json()
    degree = getattr(exc, "degree", None)
    if degree is not None:
        doc["degree"] = degree
    print(json.dumps(doc, indent=2))
    return 2


def _parse_jump(text: str):
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"expected P:NI, got {text!r}")
    return int(parts[0]), int(parts[1])


def _load_bundle(args) -> BundleHandle:
    if getattr(args, "bundle", None):
        with open(args.bundle) as fh:
            obj = json.load(fh)
        if "bundle" in obj:
            obj = obj["bundle"]
        pres = GradedPresentation.from_json(obj.get("presentation", obj))
        return bundle_handle(pres)
    if getattr(args, "normal_form_n", None) is not None:
        nf = NormalForm.make(args.normal_form_n, args.normal_form_f or "0")
        return bundle_from_normal_form(nf)
    if getattr(args, "generic_type", None) is not None:
        jumps = [_parse_jump(j) for j in (args.jump or [])]
        return prescribed_types(args.generic_type, jumps)
    raise ValueError("no bundle input given; use --bundle, --generic-type or -n/-f")


def _bundle_input_flags(sub):
    sub.add_argument("--bundle", help="path to a bundle JSON document")
    sub.add_argument("--generic-type", type=int, help="generic type n for prescribed jumps")
    sub.add_argument("--jump", action="append", metavar="P:NI", help="jump prime and height (repeatable)")
    sub.add_argument("-n", dest="normal_form_n", type=int, help="normal form degree")
    sub.add_argument("-f", dest="normal_form_f", help="normal form coefficient form, e.g. '5*x0*x1'")


def _quotient_from_args(B: BundleHandle, args) -> FiberQuotient:
    p, m = args.prime, args.twist
    if args.row:
        twists = B.presentation.map.target.twists
        texts = args.row.split(";")
        forms = [parse_form(t, degree=m - a) for t, a in zip(texts, twists)]
        return FiberQuotient.make(p, m, forms)
    if args.g is None or args.h is None:
        raise ValueError("give either --row or both --g and --h")
    twists = B.presentation.map.target.twists
    g = parse_form(args.g, degree=m - twists[0])
    h = parse_form(args.h, degree=m - twists[1])
    return FiberQuotient.from_pair(p, m, g, h)


def _profile_payload(B: BundleHandle, audit_bound: int | None) -> dict:
    payload = {
        "bundle": B.to_json(),
        "profile": type_profile(B).to_json(),
    }
    if audit_bound:
        audit = {}
        for p in range(2, audit_bound + 1):
            if is_prime(p):
                audit[str(p)] = audit_splitting(B, p).to_json()
        payload["audit"] = audit
    return payload


def _write_output(args, payload):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            json.dump({"meta": _meta(), **payload}, fh, indent=2)


def build_parser() -> _Parser:
    parser = _Parser(prog="arithsurf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    bundle = sub.add_parser("bundle", help="rank-2 bundle invariants")
    bsub = bundle.add_subparsers(dest="subcommand", required=True)
    for name in ("build", "profile", "check"):
        b = bsub.add_parser(name)
        _bundle_input_flags(b)
        b.add_argument("--primes-up-to", type=int, dest="primes_up_to")
        b.add_argument("--output", help="also write the result document to a file")

    transform = sub.add_parser("transform", help="fiber-type elementary transformations")
    tsub = transform.add_subparsers(dest="subcommand", required=True)
    for name in ("apply", "factorize"):
        t = tsub.add_parser(name)
        _bundle_input_flags(t)
        t.add_argument("--prime", type=int, required=True)
        t.add_argument("--twist", type=int, required=True, help="target twist m of the fiber line bundle")
        t.add_argument("--g", help="first surjection form")
        t.add_argument("--h", help="second surjection form")
        t.add_argument("--row", help="semicolon-separated forms, one per generator")
        t.add_argument("--output")

    surface = sub.add_parser("surface", help="Hirzebruch surface normal forms")
    ssub = surface.add_subparsers(dest="subcommand", required=True)
    s = ssub.add_parser("normal-form")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-f", default="0")
    s.add_argument("--reduce", action="store_true", help="kill the x0^n and x1^n coefficients first")
    s.add_argument("--certify", action="store_true", help="attempt a constancy certificate")
    s.add_argument("--output")

    dp = sub.add_parser("delpezzo", help="point configurations over the integers")
    dsub = dp.add_subparsers(dest="subcommand", required=True)
    for name in ("check", "classify"):
        d = dsub.add_parser(name)
        d.add_argument("--points", required=True, help="comma-separated a:b:c triples")
        d.add_argument("--output")

    st = sub.add_parser("selftest", help="run the acceptance suite")
    st.add_argument("--only", type=int, action="append", help="criterion number (repeatable)")
    return parser


def _run_bundle(args) -> dict:
    B = _load_bundle(args)
    payload = _profile_payload(B, args.primes_up_to)
    if args.subcommand == "check":
        payload["parity_deltas"] = {str(p): d for p, d in check_parity(B).items()}
        payload["type_h0"] = {
            str(p): {"delta": d, "fiber_h0": h} for p, (d, h) in check_type_h0(B).items()
        }
    return payload


def _run_transform(args) -> dict:
    B = _load_bundle(args)
    q = _quotient_from_args(B, args)
    validate_quotient(B, q)
    if args.subcommand == "factorize":
        record = blowup_factorization(B, q)
        return {"factorization": record.to_json()}
    result = apply_full(B, q)
    return {
        "source": B.to_json(),
        "quotient": q.to_json(),
        "bundle": result.handle.to_json(),
        "profile": type_profile(result.handle).to_json(),
    }


def _run_surface(args) -> dict:
    nf = NormalForm.make(args.n, args.f)
    if args.reduce:
        nf = reduce_coefficients(nf)
    payload = dict(equation(nf))
    payload["profile"] = degree_profile(nf).to_json()
    if args.certify:
        payload["constancy"] = constancy_check(nf).to_json()
    return payload


def _run_delpezzo(args) -> dict:
    config = PointConfiguration.parse(args.points)
    if args.subcommand == "check":
        return {"points": config.to_json(), "verdict": general_position(config).to_json()}
    return classify(config)


def _run_selftest(args) -> dict:
    results = run_acceptance(only=args.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {
        "criteria": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bundle":
            payload = _run_bundle(args)
        elif args.command == "transform":
            payload = _run_transform(args)
        elif args.command == "surface":
            payload = _run_surface(args)
        elif args.command == "delpezzo":
            payload = _run_delpezzo(args)
        elif args.command == "selftest":
            payload = _run_selftest(args)
            print(json.dumps({"meta": _meta(), **payload}, indent=2))
            return 0 if payload["passed"] else 2
        else:  # pragma: no cover
            raise ValueError(f"unknown command {args.command}")
    except ArithsurfError as exc:
        return _emit_error(exc)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    _write_output(args, payload)
    return _emit(payload)


if __name__ == "__main__":
    sys.exit(main())
