"""Command-line interface: ``grasspole <subcommand> [options]``.

Exit status: 0 on success, 1 when a mathematical finding contradicts
``--expect`` (or a library error occurs), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import os
import random
import sys
from typing import Sequence

from . import io as gio
from .constructions import (
    cauchy_parameters,
    exhaustive_mds_search,
    find_zero_maximal_minor,
    main_theorem_system,
    mds_check,
    monomial_matrix,
    osculating_curve_classical,
    osculating_curve_hasse,
    zero_rows,
)
from .errors import GrassPoleError
from .fields import make_field, quadratic_extension
from .grassmann import plucker_of_matrix
from .matrix import multi_indices
from .poly import Poly
from .poleplace import census, fiber_solve_2x2, schubert_number, verify_f2_theorem
from .systems import (
    FactoredSystem,
    ProjectiveCompensator,
    StateSpace,
    Verdict,
    charpoly_via_factors,
    closed_loop_charpoly,
    coefficient_matrix,
    is_degenerate_exact,
    is_degenerate_rational,
    lemma2_form,
    left_coprime_factorization,
    random_full_rank,
    random_matrix,
    random_state_space,
    verify_factorization,
)


class UsageError(Exception):
    pass


def thread_cap() -> int:
    """Worker cap from GRASSPOLE_THREADS (scans here run in one process)."""
    raw = os.environ.get("GRASSPOLE_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"GRASSPOLE_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("GRASSPOLE_THREADS must be positive")
    return value


# ---------------------------------------------------------------------------
# helpers


def _field(args):
    if args.field is None:
        return None
    try:
        return make_field(args.field)
    except (ValueError, GrassPoleError) as exc:
        raise UsageError(f"bad --field: {exc}") from None


def _load(args) -> dict:
    if not args.system:
        raise UsageError("--system is required")
    try:
        return gio.load_json(args.system)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {args.system}: {exc}") from None


def _system(args):
    data = _load(args)
    field = _field(args)
    try:
        return gio.system_from_json(data, field)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad system file: {exc}") from None


def _factored(args) -> tuple[FactoredSystem, StateSpace | None]:
    sys_ = _system(args)
    if isinstance(sys_, StateSpace):
        return left_coprime_factorization(sys_), sys_
    return sys_, None


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")


def _check_expect(args, degenerate: bool | None) -> int:
    if args.expect is None or degenerate is None:
        return 0
    return 0 if degenerate == (args.expect == "degenerate") else 1


# ---------------------------------------------------------------------------
# subcommands; each returns (report, exit code, csv rows or None)


def cmd_field_info(args):
    _require(args, "field")
    F = _field(args)
    report = {
        "field": str(F.spec),
        "characteristic": F.characteristic,
        "degree": F.degree,
        "order": F.order,
    }
    if F.is_finite:
        if F.degree > 1:
            report["modulus"] = list(F.spec.modulus)
        if F.order <= 64:
            report["elements"] = [F.format(v) for v in F.raw_elements()]
        if 2 * F.degree <= 4:
            report["quadratic_extension"] = str(quadratic_extension(F).spec)
    return report, 0, None


def cmd_minors(args):
    fs, _ = _factored(args)
    subsets = multi_indices(fs.m + fs.p, fs.p)
    rows = [{"columns": list(a), "minor": g} for a, g in zip(subsets, fs.minors)]
    report = {
        "system": fs,
        "minors": rows,
        "degree": fs.degree if fs.degree != float("-inf") else None,
        "left_prime": fs.is_coprime(),
    }
    table = [["columns", "minor"]] + [
        [" ".join(map(str, a)), str(g)] for a, g in zip(subsets, fs.minors)
    ]
    return report, 0, table


def cmd_degeneracy(args):
    fs, _ = _factored(args)
    if args.method == "enumerate":
        witness = is_degenerate_rational(fs)
        report = {
            "method": "enumerate",
            "scope": "rational points only",
            "degenerate": witness is not None,
            "witness": witness.matrix if witness else None,
        }
        degenerate = witness is not None
        if witness is not None:
            report["check"] = charpoly_via_factors(fs, witness)
    else:
        verdict = is_degenerate_exact(fs)
        report = {"method": "exact", "verdict": verdict.value}
        degenerate = None if verdict is Verdict.UNSUPPORTED else verdict is Verdict.DEGENERATE
    return report, _check_expect(args, degenerate), None


def cmd_factorize(args):
    sys_ = _system(args)
    if not isinstance(sys_, StateSpace):
        raise UsageError("factorize needs a state_space system")
    fs = left_coprime_factorization(sys_)
    report = {"system": fs, "verified": verify_factorization(sys_, fs), "det_D": fs.det_D()}
    return report, 0 if report["verified"] else 1, None


def cmd_onc(args):
    _require(args, "field", "m", "p")
    F = _field(args)
    build = osculating_curve_hasse if args.hasse else osculating_curve_classical
    M = build(args.p, args.m, F)
    fs = FactoredSystem.from_matrix(M, args.m)
    zero = find_zero_maximal_minor(M)
    report = {
        "system": fs,
        "provenance": {"construction": "onc", "hasse": args.hasse, "m": args.m, "p": args.p},
        "zero_rows": zero_rows(M),
        "zero_minor": list(zero) if zero else None,
    }
    if min(args.m, args.p) == 1 or (args.m, args.p) == (2, 2):
        report["verdict"] = is_degenerate_exact(fs).value
    return report, 0, None


def cmd_monomial(args):
    data = _load(args)
    F = _field(args) or make_field(data["field"])
    try:
        coeffs = gio.const_matrix_from_json(F, data["coefficients"])
        degrees = data["degrees"]
    except KeyError as exc:
        raise UsageError(f"monomial spec lacks {exc}") from None
    ms = monomial_matrix(coeffs, degrees)
    fs = ms.factored()
    report = {
        "system": fs,
        "provenance": {"construction": "monomial", "degrees": [list(r) for r in ms.degrees.rows]},
        "coefficient_mds": mds_check(coeffs),
        "minors": fs.minors,
    }
    return report, 0, None


def cmd_main_theorem(args):
    _require(args, "field", "m", "p")
    F = _field(args)
    ms = main_theorem_system(args.p, args.m, F, args.n)
    xs, ys = cauchy_parameters(args.p, args.m, F)
    fs = ms.factored()
    report = {
        "system": fs,
        "provenance": {
            "construction": "main-theorem-system",
            "p": args.p,
            "m": args.m,
            "n": args.n if args.n is not None else args.m * args.p,
            "cauchy_x": [F.format(x) for x in xs],
            "cauchy_y": [F.format(y) for y in ys],
        },
        "degree": fs.degree,
        "left_prime": fs.is_coprime(),
    }
    degenerate = None
    verdict = is_degenerate_exact(fs)
    if verdict is not Verdict.UNSUPPORTED:
        report["verdict"] = verdict.value
        degenerate = verdict is Verdict.DEGENERATE
    return report, _check_expect(args, degenerate), None


def cmd_mds_check(args):
    if args.system:
        data = _load(args)
        F = _field(args) or make_field(data["field"])
        M = gio.const_matrix_from_json(F, data["matrix"])
        return {"matrix": M, "mds": mds_check(M)}, 0, None
    _require(args, "field", "m", "p")
    F = _field(args)
    found = exhaustive_mds_search(args.p, args.m + args.p, F)
    return {"shape": [args.p, args.m + args.p], "field": str(F.spec), "exists": found is not None, "example": found}, 0, None


def cmd_schubert(args):
    _require(args, "m", "p")
    return {"m": args.m, "p": args.p, "d": str(schubert_number(args.m, args.p))}, 0, None


def cmd_census(args):
    fs, _ = _factored(args)
    rep = census(fs, args.mode)
    report = {
        "field": rep.field,
        "mode": rep.mode,
        "n": rep.n,
        "domain_size": rep.domain_size,
        "image_size": rep.image_size,
        "target_size": rep.target_size,
        "surjective": rep.surjective,
        "zero_count": rep.zero_count,
        "deficient_count": rep.deficient_count,
        "histogram": {str(k): v for k, v in rep.histogram.items()},
        "missed": [list(v) for v in rep.missed] if rep.missed is not None else None,
    }
    table = [["fiber_size", "count"]] + [[k, v] for k, v in rep.histogram.items()]
    return report, 0, table


def cmd_fiber(args):
    fs, ss = _factored(args)
    _require(args, "target")
    try:
        target = Poly(fs.field, [x for x in args.target.split(",")])
    except ValueError as exc:
        raise UsageError(f"bad --target: {exc}") from None
    sol = fiber_solve_2x2(fs, target)
    entries = []
    for e in sol.entries:
        item = {
            "field": e.field,
            "multiplicity": e.multiplicity,
            "rational": e.rational,
            "verified": e.verified,
            "point": e.point,
            "compensator_matrix": e.compensator_matrix,
            "k1_invertible": e.k1_invertible,
            "K": e.compensator.K if e.compensator else None,
            "symbolic": e.symbolic,
        }
        if ss is not None and e.compensator and e.rational:
            item["closed_loop"] = closed_loop_charpoly(ss, e.compensator)
        entries.append(item)
    report = {
        "target": target,
        "total_multiplicity": sol.total_multiplicity,
        "extension": sol.extension,
        "discriminant": sol.discriminant,
        "entries": entries,
    }
    return report, 0, None


def cmd_verify_f2(args):
    rep = verify_f2_theorem()
    report = {
        "passed": rep.passed,
        "quadric_points": rep.quadric_count,
        "off_quadric_points": rep.off_quadric_count,
        "matches_listed_generators": rep.matches_listed,
        "cases": [
            {
                "generator": list(c.generator),
                "matrix": [list(r) for r in c.matrix],
                "image_size": c.image_size,
                "surjective": c.surjective,
                "missed": [list(w) for w in c.missed],
                "rechecked": c.rechecked,
            }
            for c in rep.cases
        ],
        "canonical_cases": rep.canonical,
        "orbits": [{"representative": list(r), "size": len(o)} for r, o in rep.orbits],
        "listed_representatives_cover": rep.listed_reps_cover,
    }
    return report, 0 if rep.passed else 1, None


def cmd_identities(args):
    _require(args, "field")
    F = _field(args)
    rng = random.Random(args.seed)
    counts = {"factorization": 0, "triple": 0, "lemma2": 0, "expansion": 0}
    failures = []
    for trial in range(args.count):
        n = rng.randint(1, args.n or 4)
        m = rng.randint(1, args.m or 2)
        p = rng.randint(1, args.p or 2)
        ss = random_state_space(F, n, m, p, rng)
        fs = left_coprime_factorization(ss)
        checks = {"factorization": verify_factorization(ss, fs)}
        K = random_matrix(F, m, p, rng)
        pk = ProjectiveCompensator.from_feedback(K)
        checks["triple"] = closed_loop_charpoly(ss, K) == charpoly_via_factors(fs, pk) == lemma2_form(ss, pk)
        W = random_full_rank(F, m, m + p, rng)
        got = charpoly_via_factors(fs, W)
        checks["lemma2"] = got == lemma2_form(ss, W)
        checks["expansion"] = got == coefficient_matrix(fs, n).apply(plucker_of_matrix(W))
        for name, ok in checks.items():
            if ok:
                counts[name] += 1
            else:
                failures.append({"trial": trial, "identity": name})
    report = {"field": str(F.spec), "seed": args.seed, "trials": args.count, "passed": counts, "failures": failures}
    return report, 0 if not failures else 1, None


COMMANDS = {
    "field-info": cmd_field_info,
    "minors": cmd_minors,
    "degeneracy": cmd_degeneracy,
    "factorize": cmd_factorize,
    "onc": cmd_onc,
    "monomial": cmd_monomial,
    "main-theorem-system": cmd_main_theorem,
    "mds-check": cmd_mds_check,
    "schubert": cmd_schubert,
    "census": cmd_census,
    "fiber": cmd_fiber,
    "verify-f2": cmd_verify_f2,
    "identities": cmd_identities,
}

CSV_COMMANDS = {"minors", "census"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='field spec: "5", "2^2:modulus=1,1,1" or "QQ"')
    common.add_argument("--system", help="system JSON file")
    common.add_argument("--m", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--target", help="ascending target coefficients, comma separated")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--expect", choices=("degenerate", "nondegenerate"))

    parser = argparse.ArgumentParser(prog="grasspole", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "degeneracy":
            sp.add_argument("--method", choices=("enumerate", "exact"), default="exact")
        elif name == "onc":
            sp.add_argument("--hasse", action="store_true")
        elif name == "census":
            sp.add_argument("--mode", choices=("affine", "projective"), default="projective")
        elif name == "identities":
            sp.add_argument("--count", type=int, default=100)
    return parser


def _text(report, indent: int = 0) -> str:
    data = gio.jsonable(report)
    lines = []
    pad = "  " * indent
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{data}")
    return "\n".join(lines)


def render(report, table, fmt: str, command: str) -> str:
    if fmt == "json":
        return gio.dumps(report)
    if fmt == "text":
        return _text(report) + "\n"
    if command not in CSV_COMMANDS or table is None:
        raise UsageError(f"--format csv is only available for {', '.join(sorted(CSV_COMMANDS))}")
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(table)
    return buf.getvalue()


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        thread_cap()
        try:
            report, code, table = COMMANDS[args.command](args)
        except GrassPoleError as exc:
            report = {"error": type(exc).__name__, "message": str(exc)}
            code, table = 1, None
            if args.format == "csv":
                args.format = "json"
        text = render(report, table, args.format, args.command)
    except UsageError as exc:
        print(f"grasspole {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
