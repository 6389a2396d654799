"""Batch front end: exact-rational JSON in, deterministic JSON reports out.

Commands
    analyze-curve    reduction report for y^2 = x^3 + ax + b over Q_p
    analyze-si       full verdict for a product-type pencil
    analyze-kummer   good-reduction decision for Km(C1 x C2)
    show-config      the 24-class Gram matrix and its fibration report
    bounds           the explicit torsion and composite degree bounds
    selftest         the full property suite (nonzero exit on any failure)

Exit codes: 0 success, 2 malformed input, 3 precision exhausted,
4 out-of-scope input (residue characteristic 2 or 3, unsupported towers).

Numbers are accepted as integers, decimal strings or "num/den" strings and
are converted to exact rationals; reports render rationals as strings and
sort their keys, so byte-identical inputs give byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .bounds import gl_order, si_composite_bound, torsion_bound
from .elliptic import WeierstrassCurve, minimal_model, reduction_type, \
    two_torsion_ramification
from .kummer import d_infinity, d_zero, kummer_config, kummer_reduction_decision, \
    validate_fibration, w00
from .localfield import QuadElement
from .padic import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    OutOfScopeError,
    PrecisionExhausted,
    check_prime,
)
from .pencil import SIPencil, SurfacePencil, recognize_and_normalize_si
from .sandwich import si_verdict
from .corpus import run_property_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_SCOPE = 4


class InputError(ValueError):
    pass


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError("floats are rejected; pass integers, decimal "
                         "strings or num/den strings for exactness")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational from {value!r}") from exc
    raise InputError(f"cannot parse rational from {value!r}")


def fmt(value):
    """Exact, deterministic rendering of report values."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, QuadElement):
        return {"x": str(value.x), "y": str(value.y),
                "square_of_generator": str(value.field.d)}
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [fmt(v) for v in value]
    if isinstance(value, dict):
        return {k: fmt(v) for k, v in value.items()}
    return str(value)


def _require(document, key):
    if key not in document:
        raise InputError(f"missing field {key!r}")
    return document[key]


def _prime_of(document) -> int:
    p = _require(document, "p")
    if not isinstance(p, int):
        raise InputError("p must be an integer")
    return check_prime(p)


def cmd_analyze_curve(document, precision, maximum):
    p = _prime_of(document)
    if any(k in document for k in ("a1", "a2", "a3", "a4", "a6")):
        raise InputError(
            "only short Weierstrass form {a, b} is accepted; away from 2 "
            "and 3 complete the square and depress the cubic to reach "
            "y^2 = x^3 + ax + b first"
        )
    a = parse_rational(_require(document, "a"))
    b = parse_rational(_require(document, "b"))
    try:
        curve = WeierstrassCurve(a, b)
    except ValueError as exc:
        raise InputError("the discriminant vanishes: singular Weierstrass "
                         "data has no reduction type") from exc
    minimal, k = minimal_model(curve, p)
    report = reduction_type(curve, p)
    f = two_torsion_ramification(minimal, p=p)
    return {
        "input": {"p": p, "a": fmt(a), "b": fmt(b)},
        "minimal_model": {"a": fmt(minimal.a), "b": fmt(minimal.b),
                          "scaling_exponent": k},
        "invariants": {
            "vc4": report.invariants.vc4,
            "vc6": report.invariants.vc6,
            "vdelta": report.invariants.vdelta,
            "j": fmt(curve.j),
            "v_j": report.j_valuation,
        },
        "type": report.kodaira.serialize(),
        "good": report.good,
        "potentially_good": report.potentially_good,
        "semistability_defect": report.semistability_defect,
        "twist_class_needed": report.twist_class_needed,
        "two_torsion_ramification": f,
        "provenance": [
            "good reduction read off v(Delta_min) = 0 through the "
            "Kodaira-Neron classification for residue characteristic >= 5 "
            "(computable form of the Neron-Ogg-Shafarevich criterion)",
            "semistability defect 12/gcd(12, v(Delta_min)) is the order of "
            "the tame inertia action for potentially good curves",
        ],
        "surrogate": {
            "checked": ["minimal-model valuations", "j-integrality",
                        "2-torsion splitting-field ramification"],
            "assumed": [],
        },
        "precision": precision,
    }


def cmd_analyze_si(document, precision, maximum):
    p = _prime_of(document)
    try:
        if "A" in document or "B" in document:
            # dense coefficient lists of a Weierstrass pencil; the two II*
            # fibers are located and moved to {0, infinity} first
            A = [parse_rational(c) for c in _require(document, "A")]
            B = [parse_rational(c) for c in _require(document, "B")]
            pencil = recognize_and_normalize_si(SurfacePencil(tuple(A), tuple(B)))
        else:
            pencil = SIPencil(
                parse_rational(_require(document, "a")),
                parse_rational(_require(document, "b_m1")),
                parse_rational(_require(document, "b_0")),
                parse_rational(_require(document, "b_1")),
            )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if any(isinstance(c, QuadElement)
           for c in (pencil.a, pencil.b_m1, pencil.b_0, pencil.b_1)):
        raise OutOfScopeError("the normalized pencil needs a quadratic "
                              "extension of the base; p-adic analysis over "
                              "extension coefficients is not supported")
    verdict = si_verdict(pencil, p, precision, maximum)
    j_pair = None
    if verdict.j_pair is not None:
        j_pair = {
            "j1": fmt(verdict.j_pair.j1),
            "j2": fmt(verdict.j_pair.j2),
            "sum": fmt(verdict.j_pair.total),
            "product": fmt(verdict.j_pair.product),
            "valuations": fmt(list(verdict.j_valuations)),
        }
    kummer = None
    if verdict.kummer_verdict is not None:
        kummer = {
            "verdict": verdict.kummer_verdict.verdict,
            "good_over_unramified": verdict.kummer_verdict.km_good_over_unramified,
            "extension_e": verdict.kummer_verdict.extension_e,
            "twist_exponent": verdict.kummer_verdict.twist_exponent,
        }
    return {
        "input": {"p": p, "a": fmt(pencil.a), "b_m1": fmt(pencil.b_m1),
                  "b_0": fmt(pencil.b_0), "b_1": fmt(pencil.b_1)},
        "b_prime": fmt(pencil.b_prime),
        "beta_class": verdict.beta_class,
        "conjugate_fibers": verdict.conjugate_fibers,
        "f_plus": verdict.f_plus,
        "f_minus": verdict.f_minus,
        "e_kprime": verdict.e_kprime,
        "f_total": verdict.f_total,
        "j_pair": j_pair,
        "j_pair_error": verdict.j_pair_error,
        "potentially_good": verdict.potentially_good,
        "kummer_stage": kummer,
        "certified_extension": {"e": verdict.certified_extension.e,
                                "unramified_part": "unbounded"},
        "fixed_points": fmt(list(verdict.fixed_points)),
        "provenance": [
            "f_total is the ramification index of the field cut out by the "
            "eight involution fixed points: e(K(beta)/K) times lcm of the "
            "2-torsion indices of the distinguished fibers (tame compositum)",
            "the verdict realizes the good-reduction conclusion of the "
            "sandwich argument conditionally; unramifiedness of the second "
            "cohomology is assumed, not computed",
        ],
        "surrogate": {
            "checked": [s for s in verdict.surrogate if s.startswith("checked")],
            "assumed": [s for s in verdict.surrogate if not s.startswith("checked")],
        },
        "precision": precision,
    }


def cmd_analyze_kummer(document, precision, maximum):
    p = _prime_of(document)
    c1 = _require(document, "c1")
    c2 = _require(document, "c2")
    curves = []
    for label, raw in (("c1", c1), ("c2", c2)):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise InputError(f"{label} must be a pair [a, b]")
        try:
            curves.append(WeierstrassCurve(parse_rational(raw[0]),
                                           parse_rational(raw[1])))
        except ValueError as exc:
            raise InputError(f"{label}: {exc}") from exc
    decision = kummer_reduction_decision(curves[0], curves[1], p)
    return {
        "input": {"p": p,
                  "c1": [fmt(curves[0].a), fmt(curves[0].b)],
                  "c2": [fmt(curves[1].a), fmt(curves[1].b)]},
        "verdict": decision.verdict,
        "good_over_unramified": decision.km_good_over_unramified,
        "extension_e": decision.extension_e,
        "twist_exponent": decision.twist_exponent,
        "curves": [
            {
                "type": r.kodaira.serialize(),
                "potentially_good": r.potentially_good,
                "semistability_defect": r.semistability_defect,
                "twist_class_needed": r.twist_class_needed,
                "vdelta_min": r.invariants.vdelta,
            }
            for r in decision.curve_reports
        ],
        "provenance": [
            "the Kummer surface of a product has good reduction over an "
            "unramified extension exactly when one twist class in {1, p} "
            "makes both factors good; a common ramified twist cancels in "
            "the quotient by -1",
        ],
        "surrogate": {
            "checked": ["factor reduction types", "twist-class matching"],
            "assumed": ["the decision is stated for the abelian side; no "
                        "rational point or cohomology hypothesis is checked"],
        },
        "precision": precision,
    }


def cmd_show_config(document, precision, maximum):
    cfg = kummer_config()
    d0, dinf, z = d_zero(cfg), d_infinity(cfg), w00(cfg)
    report = validate_fibration(cfg, d0, z, [dinf])
    return {
        "classes": list(cfg.names),
        "gram": [list(row) for row in cfg.gram],
        "divisors": {
            "D0": dict(zip(cfg.names, d0.coefficients)),
            "Dinfinity": dict(zip(cfg.names, dinf.coefficients)),
            "w00": dict(zip(cfg.names, z.coefficients)),
        },
        "fibration_report": {
            "d_self_intersection": report.d_self_intersection,
            "d_connected": report.d_connected,
            "section_degree": report.section_degree,
            "d_type": report.d_type,
            "others": [list(row) for row in report.others],
            "ok": report.ok,
        },
    }


def cmd_bounds(document, precision, maximum):
    exact, exp, verified = si_composite_bound()
    return {
        "gl_order_22_3": str(gl_order(22, 3)),
        "torsion_bound_22_3": "3^484",
        "torsion_bound_22_3_digits": len(str(torsion_bound(22, 3))),
        "composite_bound": "3^1004 * 8!",
        "composite_bound_exact_digits": len(str(exact)),
        "composite_le": "10^484",
        "verified": verified,
    }


def cmd_selftest(document, precision, maximum, seed=20260809, fast=False):
    if fast:
        results = run_property_suite(seed, pencil_total=400,
                                     cubics_per_prime=400, twist_count=100,
                                     round_trip_count=100)
    else:
        results = run_property_suite(seed)
    return {
        "seed": seed,
        "results": [
            {"name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "ok": all(r.passed for r in results),
    }


COMMANDS = {
    "analyze-curve": cmd_analyze_curve,
    "analyze-si": cmd_analyze_si,
    "analyze-kummer": cmd_analyze_kummer,
    "show-config": cmd_show_config,
    "bounds": cmd_bounds,
}

NEEDS_INPUT = {"analyze-curve", "analyze-si", "analyze-kummer"}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="k3red",
        description="reduction behaviour over p-adic fields (p >= 5) for "
                    "elliptic curves, Kummer surfaces of products, and K3 "
                    "surfaces with a product-type Shioda-Inose structure",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("command", choices=sorted(COMMANDS) + ["selftest"])
    parser.add_argument("--input", help="JSON input file (default: stdin)")
    parser.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    parser.add_argument("--max-precision", type=int, default=MAX_PRECISION)
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--seed", type=int, default=20260809,
                        help="corpus seed for selftest")
    parser.add_argument("--fast", action="store_true",
                        help="selftest with reduced corpus sizes")
    return parser


def render_text(report, out):
    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}.", value[k])
        elif isinstance(value, list):
            for i, v in enumerate(value):
                walk(f"{prefix}{i}.", v)
        else:
            out.write(f"{prefix[:-1]} = {value}\n")

    walk("", report)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    document = {}
    if args.command in NEEDS_INPUT:
        try:
            if args.input:
                with open(args.input) as fh:
                    document = json.load(fh)
            else:
                document = json.load(sys.stdin)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        if not isinstance(document, dict):
            print("input error: expected a JSON object", file=sys.stderr)
            return EXIT_INPUT

    try:
        if args.command == "selftest":
            report = cmd_selftest(document, args.precision, args.max_precision,
                                  seed=args.seed, fast=args.fast)
        else:
            report = COMMANDS[args.command](document, args.precision,
                                            args.max_precision)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OutOfScopeError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, NotImplementedError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "json":
        json.dump(report, sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write("\n")
    else:
        render_text(report, sys.stdout)

    if args.command == "selftest" and not report["ok"]:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
