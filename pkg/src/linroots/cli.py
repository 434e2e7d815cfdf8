"""Command-line front end: ``linroots <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import sys

import sympy

from .acceptance import run_all
from .gf import EXHAUSTIVE_LIMIT, FieldError, FieldTooLarge, make_field, parse_field
from .kernel import (
    METHODS,
    kernel_dim,
    kernel_dim_all,
    max_kernel_check,
    permutation_check,
    t2_classify,
    trinomial_bound,
)
from .linpoly import Tower, make_tower, normalize_form, parse_element_list, parse_linpoly
from .linset import (
    LinearSet,
    lf3_cardinality,
    scattered_f3_criterion,
    search_alpha,
    weight_spectrum,
)
from .roots import kernel_basis_generic, roots_via_L

VERBS = ("kernel", "roots", "permutation", "maxkernel", "trinomial-bound", "t2-classify",
         "weight-spectrum", "scattered-check", "search-alpha", "selftest")


class SpecError(Exception):
    """A command-line value that does not parse or does not fit the request."""


def parse_record(text: str) -> dict:
    """Inverse of the structured output format."""
    return json.loads(text)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="linroots",
        description="Roots of linearized polynomials -x + sum b_i x^(q^(s0+n i)) "
                    "and the linear sets they define.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("--field", help="p^m[:modulus=c0,...,cm]; defaults to F_{q^nt}")
    ap.add_argument("--q", help="ground field order as p^e (default: the field's prime)")
    ap.add_argument("--n", type=int)
    ap.add_argument("--t", type=int)
    ap.add_argument("--s0", type=int, default=1)
    ap.add_argument("--b", help="comma list of elements; bracket coordinate vectors, e.g. [1,0,1]")
    ap.add_argument("--a", help="coefficient of x (default -1)")
    ap.add_argument("--poly", help="general q-polynomial as exp:elem;exp:elem;...")
    ap.add_argument("--alpha", help="alpha for scattered-check")
    ap.add_argument("--method", default="auto", choices=("auto", "all") + METHODS)
    ap.add_argument("--format", default="text", choices=("text", "structured"))
    ap.add_argument("--limit", type=int, default=EXHAUSTIVE_LIMIT,
                    help="largest field enumerated exhaustively (default 2^22)")
    return ap


def _parse_q(text: str) -> tuple[int, int]:
    """``p^e`` or a prime power such as ``4``."""
    head, _, tail = text.partition("^")
    try:
        base, e = int(head), int(tail) if tail else 1
    except ValueError:
        raise SpecError(f"--q: bad value {text!r}, expected p^e") from None
    factors = sympy.factorint(base) if base > 1 else {}
    if len(factors) != 1 or e < 1:
        raise SpecError(f"--q: {text!r} is not a prime power")
    (p, k), = factors.items()
    return p, k * e


def _field(args, degree: int | None):
    if args.field:
        try:
            return parse_field(args.field)
        except FieldError as exc:
            raise SpecError(f"--field: {exc}") from None
        except ValueError as exc:
            raise SpecError(f"--field {args.field!r}: {exc}") from None
    if degree is None:
        raise SpecError("--field is required here")
    p, _ = _parse_q(args.q)
    try:
        return make_field(p, degree)
    except FieldError as exc:
        raise SpecError(f"--q {args.q!r}: {exc}") from None


def _tower(args) -> Tower:
    for flag in ("q", "n", "t"):
        if getattr(args, flag) is None:
            raise SpecError(f"--{flag} is required for this verb")
    p, e = _parse_q(args.q)
    if args.n < 1 or args.t < 1:
        raise SpecError(f"--n and --t must be positive, got n={args.n}, t={args.t}")
    fld = _field(args, e * args.n * args.t)
    if fld.p != p:
        raise SpecError(f"--field characteristic {fld.p} differs from --q {args.q!r}")
    if fld.m != e * args.n * args.t:
        raise SpecError(f"--field degree {fld.m} differs from e*n*t = {e * args.n * args.t}")
    return make_tower(p, e, args.n, args.t, fld)


def _elements(flag: str, text: str | None, fld) -> list[int]:
    if text is None:
        raise SpecError(f"--{flag} is required for this verb")
    try:
        return parse_element_list(text, fld)
    except ValueError as exc:
        raise SpecError(f"--{flag}: {exc}") from None


def _sigma_form(args, tower: Tower):
    fld = tower.field
    b = _elements("b", args.b, fld)
    a = fld.neg(1) if args.a is None else _elements("a", args.a, fld)[0]
    try:
        return normalize_form(a, b, tower, args.s0)
    except ValueError as exc:
        raise SpecError(f"--s0/--b/--a: {exc}") from None


def _subject(args):
    """A general q-polynomial (``--poly``) or a sigma-shifted form."""
    if args.poly is not None:
        fld = _field(args, None)
        p, e = _parse_q(args.q) if args.q else (fld.p, 1)
        if p != fld.p or fld.m % e:
            raise SpecError(f"--q {args.q!r} is not a subfield of {fld.spec()}")
        try:
            return parse_linpoly(args.poly, fld, e), fld
        except ValueError as exc:
            raise SpecError(f"--poly: {exc}") from None
    tw = _tower(args)
    return _sigma_form(args, tw), tw.field


def _need_form(args):
    if args.poly is not None:
        raise SpecError("--poly is not accepted here; give --s0 and --b")
    tw = _tower(args)
    return _sigma_form(args, tw)


# -- verbs -----------------------------------------------------------------------

def cmd_kernel(args) -> tuple:
    f, fld = _subject(args)
    if args.method == "all":
        reports = kernel_dim_all(f, args.limit)
        dims = {m: r.dim for m, r in reports.items()}
        agree = len(set(dims.values())) == 1
        return fld, {"dim": next(iter(dims.values())) if agree else None, "method": "all",
                     "dims": dims, "agree": agree}
    r = kernel_dim(f, args.method, args.limit)
    return fld, {"dim": r.dim, "method": r.method, "witnesses": r.witnesses}


def cmd_roots(args) -> tuple:
    f, fld = _subject(args)
    if args.poly is None:
        basis, method = roots_via_L(f), "fixed-space"
    else:
        basis, method = kernel_basis_generic(f), "nullspace"
    return fld, {"dim": basis.dim, "method": method,
                 "roots": [fld.format_element(x) for x in basis.elements]}


def cmd_permutation(args) -> tuple:
    F = _need_form(args)
    return F.field, {"permutation": permutation_check(F), "method": "restricted"}


def cmd_maxkernel(args) -> tuple:
    F = _need_form(args)
    return F.field, {"max_kernel": max_kernel_check(F), "method": "restricted"}


def cmd_trinomial_bound(args) -> tuple:
    F = _need_form(args)
    tb = trinomial_bound(F)
    return F.field, {"bound": tb.bound, "ell": tb.ell, "conditions": tb.conditions}


def cmd_t2_classify(args) -> tuple:
    F = _need_form(args)
    c = t2_classify(F)
    cert = {k: v for k, v in c.certificate.items() if k != "A"}
    return F.field, {"dim": c.dim, "branch": c.branch, "witnesses": cert}


def cmd_weight_spectrum(args) -> tuple:
    if args.a is not None:
        raise SpecError("--a is not accepted here; linear sets use F(x) without the x term")
    tw = _tower(args)
    b = _elements("b", args.b, tw.field)
    try:
        L = LinearSet(tw, args.s0, tuple(b))
    except ValueError as exc:
        raise SpecError(f"--s0/--b: {exc}") from None
    spec = weight_spectrum(L, args.limit).to_record()
    return tw.field, {"spectrum": spec, "scattered": spec["scattered"], "club": spec["club"]}


def _f3_tower(args) -> Tower:
    if args.q is None:
        raise SpecError("--q is required for this verb")
    p, e = _parse_q(args.q)
    fld = _field(args, 6 * e)
    if fld.p != p or fld.m != 6 * e:
        raise SpecError(f"--field must be F_(q^6) for --q {args.q!r}")
    return make_tower(p, e, 3, 2, fld)


def cmd_scattered_check(args) -> tuple:
    tw = _f3_tower(args)
    alpha = _elements("alpha", args.alpha, tw.field)
    if len(alpha) != 1:
        raise SpecError(f"--alpha: expected one element, got {args.alpha!r}")
    try:
        v = scattered_f3_criterion(tw, alpha[0])
    except ValueError as exc:
        raise SpecError(f"--alpha {args.alpha!r}: {exc}") from None
    card = lf3_cardinality(tw, alpha[0])
    return tw.field, {"scattered": v.scattered, "root_location": v.root_location,
                      "size": card["size"], "x_2": card["x_2"]}


def cmd_search_alpha(args) -> tuple:
    tw = _f3_tower(args)
    fld = tw.field
    alphas = search_alpha(tw)
    return fld, {"alphas": [fld.format_element(a, "power") for a in alphas], "count": len(alphas)}


HANDLERS = {
    "kernel": cmd_kernel,
    "roots": cmd_roots,
    "permutation": cmd_permutation,
    "maxkernel": cmd_maxkernel,
    "trinomial-bound": cmd_trinomial_bound,
    "t2-classify": cmd_t2_classify,
    "weight-spectrum": cmd_weight_spectrum,
    "scattered-check": cmd_scattered_check,
    "search-alpha": cmd_search_alpha,
}


# -- rendering -------------------------------------------------------------------

def _text_value(v, nested: bool = False) -> str:
    if isinstance(v, dict):
        body = " ".join(f"{k}={_text_value(x, True)}" for k, x in v.items())
        return f"{{{body}}}" if nested else body
    if isinstance(v, (list, tuple)):
        return "[" + " ".join(_text_value(x, True) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    if nested and isinstance(v, str) and "," in v:
        return f"[{v}]"
    return str(v)


def emit_report(record: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(record, sort_keys=True, separators=(",", ":"))
    width = max(len(k) for k in record)
    return "\n".join(f"{k:<{width}}  {_text_value(v)}" for k, v in record.items())


def _selftest(args) -> int:
    outcomes = run_all()
    if args.format == "structured":
        print(emit_report({"criteria": [
            {"key": o.key, "title": o.title, "passed": o.passed, "detail": o.detail}
            for o in outcomes]}, "structured"))
    else:
        for o in outcomes:
            print(o.line())
        failed = [o.key for o in outcomes if not o.passed]
        print(f"{len(outcomes) - len(failed)}/{len(outcomes)} passed"
              + (f"; failed: {' '.join(failed)}" if failed else ""))
    return 0 if all(o.passed for o in outcomes) else 1


VALUE_FLAGS = ("--b", "--a", "--alpha", "--poly")


def _glue_values(argv: list[str]) -> list[str]:
    """Attach values such as ``-1,1,0`` to their flag so argparse does not read them as options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = _build_parser().parse_args(_glue_values(argv))
    if args.verb == "selftest":
        return _selftest(args)
    try:
        if args.limit < 0:
            raise SpecError(f"--limit must be nonnegative, got {args.limit}")
        fld, body = HANDLERS[args.verb](args)
    except SpecError as exc:
        print(f"linroots: error: {exc}", file=sys.stderr)
        return 2
    except FieldTooLarge as exc:
        print(f"linroots: error: {exc}; try --method restricted or another matrix method",
              file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"linroots: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    body = {"verb": args.verb, "field": fld.spec(), **body}
    print(emit_report(body, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
