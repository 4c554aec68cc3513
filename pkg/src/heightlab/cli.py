"""Command-line front end.

One subcommand per capability, shared flags for precision, tolerance,
sample count, seed, and output format.  Every run echoes its inputs
and seed; numeric rows carry an error bar and a method tag.  JSON
output is byte-stable for a fixed configuration: dict keys are
emitted in a fixed order and floats print at shortest roundtrip.

Exit codes: 0 on success, 2 when a requested check fails (an
inequality does not hold, a search exhausts its budget, a certificate
cannot be issued), 1 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, acceptance
from .bertini import (NotSmooth, SectionBudgetExceeded, SmoothnessUndecided,
                      section_search, theorem12_bound_check)
from .bipoly import BiPoly
from .chow import (Hypersurface, chow_height_hypersurface, chow_height_point,
                   remond_check)
from .constants import constants_report
from .generators import NumberFieldSpec, search_small_generator
from .heights import (AlgebraicNumber, ProjectivePoint, height_point,
                      mahler_integral_height, mahler_root_height,
                      sandwich_check)
from .northcott import (LengthConditionFailed, SequenceSpec, habegger_bound,
                        habegger_gamma, iterate_sequence,
                        prime_constant_family, radical_tower, selmer_family)
from .polyparse import ParseError, parse_poly

DEFAULT_PRECISION = 256
SMYTH_POLY = "x^2-t*x-1"
SMYTH_START = "x^2-x-1"
REMOND_CONIC = "x0^2+x1^2-x2^2"


class CheckFailure(Exception):
    """A verification the user asked for did not hold (exit code 2)."""


class UsageFailure(Exception):
    """Bad input that argparse could not catch itself (exit code 1)."""


@dataclass
class Row:
    name: str
    value: object
    error: float | None = None
    error_kind: str = "abs_error"     # or "std_error"
    method: str = ""
    certificate: str = ""
    extra: dict = field(default_factory=dict)   # subcommand CSV columns

    def as_json(self) -> dict:
        d = {"name": self.name, "value": self.value}
        if self.error is not None:
            d[self.error_kind] = self.error
        d["method"] = self.method
        d["certificate"] = self.certificate
        return d


# -- input parsing helpers -------------------------------------------------


def _parse_point(text: str) -> ProjectivePoint:
    t = text.strip().strip("()")
    parts = [p for p in t.replace(":", ",").split(",") if p.strip()]
    if not parts:
        raise UsageFailure(f"cannot read a point from {text!r}")
    try:
        coords = tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageFailure(f"bad coordinate in {text!r}: {e}") from None
    return ProjectivePoint(coords)


def _parse_coeff_set(text: str) -> list[Fraction]:
    try:
        vals = [Fraction(p.strip()) for p in text.split(",") if p.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageFailure(f"bad coefficient set {text!r}: {e}") from None
    if not vals:
        raise UsageFailure("empty coefficient set")
    return vals


def _unipoly(text: str):
    try:
        return parse_poly(text)
    except ParseError as e:
        raise UsageFailure(f"cannot parse polynomial {text!r}: {e}") from None


def _bipoly(text: str) -> BiPoly:
    try:
        return BiPoly.parse(text)
    except ParseError as e:
        raise UsageFailure(f"cannot parse polynomial {text!r}: {e}") from None


def _hypersurface(text: str, N: int | None = None) -> Hypersurface:
    try:
        return Hypersurface.parse(text, N=N)
    except (ParseError, ValueError) as e:
        raise UsageFailure(f"cannot parse form {text!r}: {e}") from None


def _profile_rows(profile, name_fmt: str, shift: int = 0) -> list[Row]:
    rows = []
    for r in profile.rows:
        i = r.index + shift
        rows.append(Row(
            name=name_fmt.format(i=i),
            value=r.height.value,
            error=r.height.abs_error,
            method=r.height.method,
            certificate=r.tag,
            extra={"i": i, "degree": r.degree, "height": r.height.value,
                   "error": r.height.abs_error, "tag": r.tag},
        ))
    return rows


def _tail_bound_row(est) -> Row:
    tag = f"{est.certificate}; tail from i={est.tail_from}"
    return Row("tail-bound", est.certified_upper_bound, 0.0,
               method=est.certificate + "-certificate", certificate=tag,
               extra={"i": "bound", "degree": "",
                      "height": est.certified_upper_bound, "error": 0.0,
                      "tag": tag})


# -- subcommand implementations --------------------------------------------


def cmd_height(ns) -> tuple[dict, list[Row], int]:
    f = _unipoly(ns.poly)
    if ns.method == "integral":
        h = mahler_integral_height(f, tol=ns.tol)
    else:
        h = mahler_root_height(f, tol=ns.tol)
    inputs = {"poly": ns.poly, "method": ns.method, "tol": ns.tol}
    return inputs, [Row("height", h.value, h.abs_error, method=h.method)], 0


def cmd_mahler(ns) -> tuple[dict, list[Row], int]:
    f = _unipoly(ns.poly)
    h = mahler_root_height(f, tol=ns.tol)
    n = f.primitive_integer().degree
    rows = [
        Row("log-mahler-measure", h.value * n, h.abs_error * n,
            method=h.method),
        Row("height", h.value, h.abs_error, method=h.method),
    ]
    return {"poly": ns.poly, "tol": ns.tol}, rows, 0


def cmd_point_height(ns) -> tuple[dict, list[Row], int]:
    P = _parse_point(ns.point)
    rep = sandwich_check(P)
    gap = 0.5 * math.log(P.ambient_dim + 1)
    rows = [
        Row("h_inf", rep.h_inf.value, rep.h_inf.abs_error,
            method=rep.h_inf.method),
        Row("h_l2", rep.h_l2.value, rep.h_l2.abs_error,
            method=rep.h_l2.method,
            certificate=f"h_inf <= h_l2 <= h_inf + {gap:.6g}: "
                        f"{'ok' if rep.ok else 'VIOLATED'}"),
    ]
    return {"point": ns.point}, rows, 0 if rep.ok else 2


def _sequence_common(ns, poly_text: str, start_text: str
                     ) -> tuple[dict, list[Row], int]:
    if ns.max_i < 1:
        raise UsageFailure("--max-i must be >= 1")
    P = _bipoly(poly_text)
    certify = ns.mode == "certified"
    x0 = AlgebraicNumber.from_min_poly(_unipoly(start_text), certify=certify)
    spec = SequenceSpec(P, x0, mode=ns.mode, max_index=ns.max_i - 1)
    profile = iterate_sequence(spec, height_tol=min(ns.tol, 1e-10))
    rows = _profile_rows(profile, "h(x_{i})", shift=1)
    inputs = {"poly": poly_text, "start": start_text,
              "max_i": ns.max_i, "mode": ns.mode}
    return inputs, rows, 0


def cmd_smyth(ns):
    return _sequence_common(ns, SMYTH_POLY, SMYTH_START)


def cmd_sequence(ns):
    return _sequence_common(ns, ns.poly, ns.start)


def cmd_habegger(ns) -> tuple[dict, list[Row], int]:
    P = _bipoly(ns.poly)
    gamma = habegger_gamma(P)
    est = habegger_bound(P)
    rows = [
        Row("gamma", gamma, 0.0, method="closed-form"),
        Row("height-bound", est.certified_upper_bound, 0.0,
            method="closed-form", certificate=est.certificate),
        Row("Q", est.Q, 0.0, method="closed-form"),
        Row("q", est.q, 0.0, method="closed-form"),
    ]
    return {"poly": ns.poly}, rows, 0


def cmd_selmer(ns) -> tuple[dict, list[Row], int]:
    if ns.max_i < 2:
        raise UsageFailure("--max-i must be >= 2")
    est = selmer_family(ns.max_i, height_tol=min(ns.tol, 1e-10))
    rows = _profile_rows(est.profile, "h(alpha_{i})")
    rows.append(_tail_bound_row(est))
    return {"max_i": ns.max_i}, rows, 0


def cmd_prime_family(ns) -> tuple[dict, list[Row], int]:
    if not ns.poly:
        raise UsageFailure("give at least one --poly")
    primes = list(ns.prime or [])
    if len(primes) > len(ns.poly):
        raise UsageFailure("more --prime values than --poly values")
    entries = []
    for k, text in enumerate(ns.poly):
        f = _unipoly(text)
        p = primes[k] if k < len(primes) else abs(int(f.constant_term))
        entries.append((f, p))
    certs = prime_constant_family(entries)
    rows = [Row(text, c.height_bound, 0.0, method="length-certificate",
                certificate=f"irreducible; p={c.prime}, "
                            f"||f||_1={c.length}; {c.reason}")
            for text, c in zip(ns.poly, certs)]
    return {"poly": list(ns.poly), "prime": [c.prime for c in certs]}, rows, 0


def cmd_radical_tower(ns) -> tuple[dict, list[Row], int]:
    est = radical_tower(ns.p, ns.max_i)
    rows = _profile_rows(est.profile, "h(level_{i})")
    rows.append(_tail_bound_row(est))
    return {"p": ns.p, "max_i": ns.max_i}, rows, 0


def cmd_generator(ns) -> tuple[dict, list[Row], int]:
    F = NumberFieldSpec.from_defining_poly(_unipoly(ns.poly))
    code = 0
    if ns.disc is not None and ns.disc != F.abs_disc:
        return ({"poly": ns.poly, "disc": ns.disc},
                [Row("disc-mismatch", F.abs_disc, method="exact",
                     certificate=f"computed |disc|={F.abs_disc}, "
                                 f"stated {ns.disc}")], 2)
    elem, alpha, h = search_small_generator(F)
    bound = math.log(F.abs_disc) / F.degree
    if h.value - h.abs_error > bound + 1e-9:
        code = 2
    rows = [
        Row("height", h.value, h.abs_error, method=h.method,
            certificate=f"coords={elem.coords}; "
                        f"min_poly={alpha.min_poly.to_string()}"),
        Row("bound", bound, 0.0, method="closed-form",
            certificate=f"log|disc|/degree with |disc|={F.abs_disc}, "
                        f"degree={F.degree}"),
    ]
    return {"poly": ns.poly, "disc": F.abs_disc}, rows, code


def cmd_chow_height(ns) -> tuple[dict, list[Row], int]:
    if (ns.form is None) == (ns.point is None):
        raise UsageFailure("give exactly one of --form or --point")
    if ns.point is not None:
        h = chow_height_point(_parse_point(ns.point), samples=ns.samples,
                              seed=ns.seed)
        inputs = {"point": ns.point, "samples": ns.samples, "seed": ns.seed}
    else:
        h = chow_height_hypersurface(_hypersurface(ns.form),
                                     samples=ns.samples, seed=ns.seed)
        inputs = {"form": ns.form, "samples": ns.samples, "seed": ns.seed}
    return inputs, [Row("chow-height", h.value, h.abs_error, "std_error",
                        method=h.method)], 0


def cmd_remond_check(ns) -> tuple[dict, list[Row], int]:
    if ns.instances < 1:
        raise UsageFailure("--instances must be >= 1")
    X = _hypersurface(ns.form)
    rng = random.Random(ns.seed)
    lines = []
    while len(lines) < ns.instances:
        ell = tuple(rng.randint(-5, 5) for _ in range(3))
        if any(ell):
            lines.append(ell)
    H = max(height_point(ProjectivePoint(e), "l2").value
            for e in lines) + 1e-9
    rep = remond_check(X, lines, H_bound=H, samples=ns.samples, seed=ns.seed)
    rows = [Row("surface-height", rep.h_surface.value,
                rep.h_surface.abs_error, "std_error",
                method=rep.h_surface.method,
                certificate=f"H_bound={rep.H_bound!r}")]
    for k, inst in enumerate(rep.instances):
        rows.append(Row(
            f"cut-{k}", inst.margin, inst.sigma, "std_error",
            method="chow-mc",
            certificate=f"line={inst.line}; degree {inst.cycle.degree}<="
                        f"{X.degree} {'ok' if inst.degree_ok else 'FAIL'}; "
                        f"margin {'ok' if inst.ok else 'FAIL'}",
            extra={"instance": k, "line": str(inst.line),
                   "margin": inst.margin, "sigma": inst.sigma,
                   "ok": inst.ok},
        ))
    return ({"form": ns.form, "instances": ns.instances,
             "samples": ns.samples, "seed": ns.seed},
            rows, 0 if rep.all_ok else 2)


def cmd_bertini(ns) -> tuple[dict, list[Row], int]:
    # the search wants a surface, so read the form in projective 3-space
    # even when some variable is absent (a cone, say)
    X = _hypersurface(ns.form, N=3)
    sample = _parse_coeff_set(ns.coeff_set)
    try:
        cand = section_search(X, sample, budget=ns.budget)
    except (NotSmooth, SectionBudgetExceeded, SmoothnessUndecided) as e:
        raise CheckFailure(f"{type(e).__name__}: {e}") from None
    rep = theorem12_bound_check(X, cand, samples=ns.samples, seed=ns.seed)
    hyper = "(" + ":".join(str(c) for c in cand.coeffs) + ")"
    rows = [
        Row("section", cand.tried, method="height-ordered-search",
            certificate=f"hyperplane={hyper}; section_form="
                        f"{cand.section_form.to_string()}"),
        Row("genus", rep.genus, method="plane-curve-formula",
            certificate=f"genus {rep.genus} <= {rep.genus_bound}: "
                        f"{'ok' if rep.genus_ok else 'FAIL'}"),
        Row("height-term", rep.height_term_constant, 0.0,
            method="closed-form",
            certificate="dim * deg * (N+1) * (m_S+2) with m_S=0"),
    ]
    if rep.height_rhs is not None:
        rows.append(Row("height-rhs", rep.height_rhs, rep.height_rhs_error,
                        "std_error", method="chow-mc",
                        certificate=rep.lhs_note))
    return ({"form": ns.form, "coeff_set": ns.coeff_set,
             "budget": ns.budget}, rows, 0 if rep.ok else 2)


def cmd_constants(ns) -> tuple[dict, list[Row], int]:
    if ns.g < 1:
        raise UsageFailure("--g must be >= 1")
    rows = []
    for name, display, trace in constants_report(ns.g, prec=ns.precision):
        if display.lstrip("-").isdigit():
            method = "exact"
        elif name.endswith("_log10"):
            method = "log10"
        else:
            method = "float"
        rows.append(Row(name, display, method=method, certificate=trace))
    return {"g": ns.g, "report": ns.report,
            "precision": ns.precision}, rows, 0


def cmd_verify_all(ns) -> tuple[dict, list[Row], int]:
    results = acceptance.run_all()
    rows = [Row(f"criterion-{r.number}", 1 if r.passed else 0,
                method=f"{r.name}; {r.elapsed:.1f}s",
                certificate=r.summary,
                extra={"criterion": r.number, "name": r.name,
                       "passed": r.passed, "elapsed": round(r.elapsed, 1),
                       "summary": r.summary})
            for r in results]
    ok = all(r.passed for r in results)
    return {}, rows, 0 if ok else 2


# -- output rendering ------------------------------------------------------


def render_json(subcommand: str, inputs: dict, seed, rows: list[Row]) -> str:
    doc = {
        "tool_version": __version__,
        "subcommand": subcommand,
        "inputs": inputs,
        "seed": seed,
        "results": [r.as_json() for r in rows],
    }
    return json.dumps(doc, indent=2)


def render_csv(rows: list[Row]) -> str:
    buf = io.StringIO()
    if rows and rows[0].extra:
        cols = list(rows[0].extra.keys())
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([r.extra.get(c, "") for c in cols])
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value", "error", "error_kind", "method",
                    "certificate"])
        for r in rows:
            w.writerow([r.name, r.value,
                        "" if r.error is None else r.error,
                        "" if r.error is None else r.error_kind,
                        r.method, r.certificate])
    return buf.getvalue().rstrip("\n")


def render_table(rows: list[Row]) -> str:
    # tables are for reading; long certificates live in json/csv output
    header = ["name", "value", "error", "method", "certificate"]
    table = [header]
    for r in rows:
        val = r.value if isinstance(r.value, str) else repr(r.value)
        err = "" if r.error is None else f"{r.error:.3g}"
        cert = r.certificate
        if len(cert) > 72:
            cert = cert[:69] + "..."
        table.append([r.name, val, err, r.method, cert])
    widths = [max(len(row[j]) for row in table) for j in range(len(header))]
    lines = []
    for k, row in enumerate(table):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths))
                     .rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


# -- argument plumbing -----------------------------------------------------


COMMANDS = {
    "height": cmd_height,
    "mahler": cmd_mahler,
    "point-height": cmd_point_height,
    "smyth": cmd_smyth,
    "sequence": cmd_sequence,
    "habegger": cmd_habegger,
    "selmer": cmd_selmer,
    "prime-family": cmd_prime_family,
    "radical-tower": cmd_radical_tower,
    "generator": cmd_generator,
    "chow-height": cmd_chow_height,
    "remond-check": cmd_remond_check,
    "bertini": cmd_bertini,
    "constants": cmd_constants,
    "verify-all": cmd_verify_all,
}

# smyth and sequence default to CSV; everything else to a table
CSV_DEFAULT = {"smyth", "sequence"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help="working precision in bits (default 256, or "
                             "HEIGHTLAB_PRECISION)")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="numeric tolerance (default 1e-9)")
    common.add_argument("--samples", type=int, default=10 ** 6,
                        help="Monte-Carlo sample count (default 1000000)")
    common.add_argument("--seed", type=int, default=0,
                        help="random seed (default 0)")
    common.add_argument("--format", choices=("json", "csv", "table"),
                        default=None, help="output format")
    common.add_argument("--out", default=None,
                        help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(
        prog="heightlab",
        description="Heights of algebraic numbers, bounded-height families, "
                    "Chow-form heights, hyperplane-section search, and "
                    "explicit constants.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("height", parents=[common],
                        help="height of a root of an integer polynomial")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--method", choices=("roots", "integral"),
                    default="roots")

    sp = sub.add_parser("mahler", parents=[common],
                        help="log Mahler measure of an integer polynomial")
    sp.add_argument("--poly", required=True)

    sp = sub.add_parser("point-height", parents=[common],
                        help="sup-norm and l2 heights of a projective point")
    sp.add_argument("--point", required=True,
                    help="coordinates, e.g. \"3,4,0\" or \"(3:4:0)\"")

    for name, hlp in (("smyth", "iterated quadratic family from the "
                               "golden ratio"),
                      ("sequence", "iterated algebraic sequence "
                                   "x_{i+1} from P(x, x_i) = 0")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        if name == "sequence":
            sp.add_argument("--poly", required=True,
                            help="bivariate polynomial in x and t")
            sp.add_argument("--start", required=True,
                            help="minimal polynomial of x_1 "
                                 "(largest-modulus root)")
        sp.add_argument("--max-i", type=int, default=5, dest="max_i")
        sp.add_argument("--mode",
                        choices=("certified", "assume-irreducible"),
                        default="certified")

    sp = sub.add_parser("habegger", parents=[common],
                        help="growth constant and certified height bound "
                             "for an iterated sequence")
    sp.add_argument("--poly", required=True,
                    help="bivariate polynomial in x and t")

    sp = sub.add_parser("selmer", parents=[common],
                        help="trinomials x^i - x - 1: certified heights")
    sp.add_argument("--max-i", type=int, default=30, dest="max_i")

    sp = sub.add_parser("prime-family", parents=[common],
                        help="irreducibility certificates for monic "
                             "polynomials with prime constant term")
    sp.add_argument("--poly", action="append",
                    help="may repeat for several polynomials")
    sp.add_argument("--prime", action="append", type=int,
                    help="designated prime per --poly "
                         "(default: |constant term|)")

    sp = sub.add_parser("radical-tower", parents=[common],
                        help="heights down the tower of p-power roots of p")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--max-i", type=int, default=5, dest="max_i")

    sp = sub.add_parser("generator", parents=[common],
                        help="small primitive integral generator of a "
                             "number field")
    sp.add_argument("--poly", required=True, help="defining polynomial")
    sp.add_argument("--disc", type=int, default=None,
                    help="expected |discriminant| (checked when given)")

    sp = sub.add_parser("chow-height", parents=[common],
                        help="Monte-Carlo Chow-form height of a point or "
                             "hypersurface")
    sp.add_argument("--form", default=None, help="homogeneous form")
    sp.add_argument("--point", default=None, help="projective point")

    sp = sub.add_parser("remond-check", parents=[common],
                        help="cut-height inequality on random hyperplane "
                             "cuts of a conic")
    sp.add_argument("--form", default=REMOND_CONIC)
    sp.add_argument("--instances", type=int, default=10)

    sp = sub.add_parser("bertini", parents=[common],
                        help="search for a smooth hyperplane section with "
                             "restricted coefficients")
    sp.add_argument("--form", required=True,
                    help="smooth surface in four variables")
    sp.add_argument("--coeff-set", default="0,1,-1", dest="coeff_set")
    sp.add_argument("--budget", type=int, default=1000)
    sp.set_defaults(samples=0)

    sp = sub.add_parser("constants", parents=[common],
                        help="explicit constants ledger at a given genus")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--report", default="all")

    sub.add_parser("verify-all", parents=[common],
                   help="run the whole acceptance battery")

    return p


def _resolve_precision(ns) -> int:
    if ns.precision is not None:
        if ns.precision < 8:
            raise UsageFailure("--precision must be at least 8 bits")
        return ns.precision
    env = os.environ.get("HEIGHTLAB_PRECISION")
    if env:
        try:
            v = int(env)
        except ValueError:
            raise UsageFailure(
                f"HEIGHTLAB_PRECISION={env!r} is not an integer") from None
        if v < 8:
            raise UsageFailure("HEIGHTLAB_PRECISION must be at least 8")
        return v
    return DEFAULT_PRECISION


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        # argparse uses 2 for usage errors; our contract reserves 2 for
        # failed checks, so remap
        return 0 if e.code in (0, None) else 1

    try:
        ns.precision = _resolve_precision(ns)
        inputs, rows, code = COMMANDS[ns.subcommand](ns)
    except UsageFailure as e:
        print(f"heightlab: {e}", file=sys.stderr)
        return 1
    except CheckFailure as e:
        print(f"heightlab: check failed: {e}", file=sys.stderr)
        return 2
    except (LengthConditionFailed, ArithmeticError) as e:
        print(f"heightlab: check failed: {type(e).__name__}: {e}",
              file=sys.stderr)
        return 2
    except ValueError as e:
        # precondition violations from the library are input problems
        print(f"heightlab: {e}", file=sys.stderr)
        return 1

    fmt = ns.format
    if fmt is None:
        fmt = "csv" if ns.subcommand in CSV_DEFAULT else "table"
    if fmt == "json":
        text = render_json(ns.subcommand, inputs, ns.seed, rows)
    elif fmt == "csv":
        text = render_csv(rows)
    else:
        text = render_table(rows)

    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
