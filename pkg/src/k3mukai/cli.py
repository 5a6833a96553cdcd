"""Command line for the lattice toolkit.

Subcommands cover single computations (pair, square, isotropic, dual,
criterion, equiv), the full verification ledger (verify-paper), and the
(g, n) census.  Output is a human-readable aligned table by default;
--json switches to newline-delimited JSON records of the shape
{"command": str, "inputs": object, "outputs": object, "pass": bool?}
with exact integers throughout (rationals would appear as num/den pairs).

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .bb import BBClass, BBLattice, bb_square, find_isotropic, fujiki_degree
from .checks import (
    brill_noether_data,
    double_dual_square,
    extension_square,
    kernel_square,
    tensor_degree_check,
    torsion_degree,
)
from .dual_surface import (
    ConstraintSolution,
    FibrationHit,
    build_dual,
    general_fibration_criterion,
    solve_transform_constraints,
    unit_pairing,
    verify_solution,
)
from .mukai import (
    MukaiVector,
    NSGram,
    euler_characteristic,
    is_primitive,
    pairing,
    square,
)
from .quadforms import (
    QuadForm2,
    equivalent,
    gen_picard_determinant,
    hilb_picard_form,
    picard_scheme_form,
)

__all__ = ["ReportRecord", "ledger_checks", "census_records", "main"]


class UsageError(Exception):
    pass


def _encode(value):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, MukaiVector):
        return {"r": value.r, "c": list(value.c), "s": value.s}
    if isinstance(value, BBClass):
        return {"a": value.a, "b": value.b}
    if isinstance(value, QuadForm2):
        return {"m11": value.m11, "m12": value.m12, "m22": value.m22}
    if isinstance(value, ConstraintSolution):
        return {"k": value.k, "l": value.l, "de": value.de, "e2": value.e2}
    if isinstance(value, FibrationHit):
        return {
            "w": _encode(value.w),
            "branch": value.branch,
            "d_square": value.d_square,
            "gerbe_order": value.gerbe_order,
        }
    if isinstance(value, frozenset):
        return [_encode(x) for x in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [_encode(x) for x in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    raise TypeError(f"cannot encode {type(value).__name__}")


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (MukaiVector, BBClass, QuadForm2)):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ConstraintSolution):
        return f"(k={value.k}, l={value.l}, de={value.de}, e2={value.e2})"
    if isinstance(value, FibrationHit):
        extra = "" if value.d_square is None else (
            f", d_square={value.d_square}, gerbe={value.gerbe_order}"
        )
        return f"{value.w} [{value.branch}{extra}]"
    if isinstance(value, frozenset):
        return _format_value(sorted(value))
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format_value(x) for x in value) + "]"
    return str(value)


@dataclass
class ReportRecord:
    """One reported computation; serializes losslessly to one JSON line."""

    command: str
    inputs: dict
    outputs: dict
    passed: bool | None = None

    def to_json(self) -> str:
        obj = {
            "command": self.command,
            "inputs": _encode(self.inputs),
            "outputs": _encode(self.outputs),
        }
        if self.passed is not None:
            obj["pass"] = self.passed
        return json.dumps(obj, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ReportRecord":
        obj = json.loads(line)
        return cls(obj["command"], obj["inputs"], obj["outputs"], obj.get("pass"))


# ---------------------------------------------------------------------------
# verification ledger


def _point_checks(g: int, n: int) -> list[ReportRecord]:
    """Every ledger check at one (g, n) grid point."""
    records = []

    def add(check: str, outputs: dict, passed: bool, **inputs):
        rec_inputs = {"check": check, "g": g, "n": n, **inputs}
        records.append(ReportRecord("verify-paper", rec_inputs, outputs, passed))

    def add_eq(check: str, computed, claimed, extra: dict | None = None, **inputs):
        outputs = {"computed": computed, "claimed": claimed}
        if extra:
            outputs.update(extra)
        add(check, outputs, computed == claimed, **inputs)

    c2 = 2 * (g - 1) * n * n
    gram = NSGram.rank_one(c2)
    report = build_dual(g, n)
    w = report.w

    add(
        "dual_surface",
        {
            "w": w,
            "c2": c2,
            "d_square": report.d_square,
            "gerbe_order": report.gerbe_order,
            "base_dim": report.base_dim,
            "fine": report.fine,
        },
        square(w, gram) == 0
        and is_primitive(w)
        and report.gerbe_order == n
        and report.d_square == 2 * g - 2
        and report.base_dim == g
        and not report.fine,
    )
    add_eq("w_isotropic", square(w, gram), 0)
    add_eq("w_primitive", is_primitive(w), True)
    add_eq("gerbe_order", report.gerbe_order, n)
    add_eq("dual_curve_square", report.d_square, 2 * g - 2)
    add_eq("euler_characteristic", euler_characteristic(w, gram), g * n)
    add_eq("base_dimension", report.base_dim, g)

    # Fujiki degree trichotomy on the rank-two divisor lattice
    lat = BBLattice(c2, g)
    ample = BBClass(1, 0)
    isotropic = BBClass(1, n)
    q_ample = bb_square(ample, lat)
    q_iso = bb_square(isotropic, lat)
    q_mixed = (bb_square(ample + isotropic, lat) - q_ample - q_iso) // 2
    add_eq(
        "fujiki_isotropic_degree",
        fujiki_degree(q_ample, q_mixed, q_iso, g),
        g,
        extra={"q_isotropic": q_iso},
    )
    add_eq("fujiki_ample_degree", fujiki_degree(q_ample, q_mixed, q_ample, g), 2 * g)
    add_eq("fujiki_constant_degree", fujiki_degree(q_ample, 0, 0, g), 0)

    for length in range(0, 4):
        res = double_dual_square(n, g, length)
        violation = res.context["bogomolov_violation"]
        add(
            "double_dual_square",
            {
                "computed": res.computed,
                "claimed": res.claimed,
                "bogomolov_violation": violation,
            },
            res.passed and violation == (length > 0),
            length=length,
        )

    res = extension_square(n, g)
    add_eq("extension_square", res.computed, res.claimed)

    for length in range(0, 3):
        # independent route: scan N upward; empty means no N >= 1 is allowed
        expected_bound = max(
            (
                big_n
                for big_n in range(1, 3 * g + 2)
                if -2 * big_n - 2 * big_n * n * length + 2 * (g - 1) >= -2
            ),
            default=0,
        )
        for big_n in range(1, 2 * g + 1):
            res, n_max = kernel_square(big_n, n, g, length)
            add_eq("kernel_square", res.computed, res.claimed, N=big_n, length=length)
        add_eq("kernel_square_bound", n_max, expected_bound, length=length)

    for m in range(1, 13):
        if c2 % m:
            continue
        degree, allowed = torsion_degree(g, n, m)
        add(
            "torsion_degree",
            {"degree": degree, "allowed": allowed},
            degree * m == c2 and allowed == (m == 1),
            m=m,
        )

    res = tensor_degree_check(g, n)
    add_eq("tensor_degree", res.computed, res.claimed)

    rank, degree = brill_noether_data(g, n)
    add_eq(
        "brill_noether_unit",
        degree - (g - 1) * rank,
        1,
        extra={"rank": rank, "degree": degree},
    )

    hilb_det = gen_picard_determinant(c2)
    dual_det = gen_picard_determinant(2 * (g - 1))
    add(
        "picard_determinants",
        {"hilb_det": hilb_det, "dual_det": dual_det, "distinct": hilb_det != dual_det},
        hilb_det == -c2 and dual_det == -(2 * g - 2) and hilb_det != dual_det,
    )

    hilb = hilb_picard_form(g, n)
    for d in range(0, 4 * g + 1):
        scheme = picard_scheme_form(g, d)
        verdict = equivalent(hilb, scheme.form, 1)
        add(
            "picard_form_inequivalence",
            {
                "verdict": verdict.verdict,
                "certificate": verdict.certificate,
                "determinants": [hilb.determinant(), scheme.form.determinant()],
            },
            verdict.verdict == "not_equivalent"
            and verdict.certificate == "determinant",
            d=d,
        )

    family = solve_transform_constraints(g, n, (-3, 3))
    add(
        "transform_constraints",
        {"solutions": len(family.solutions)},
        all(verify_solution(g, n, sol) for sol in family.solutions)
        and all(unit_pairing(g, n, sol) == 1 for sol in family.solutions),
    )

    return records


def ledger_checks(g_values, n_values) -> list[ReportRecord]:
    """The full verification ledger over a (g, n) grid."""
    records = []
    for g in g_values:
        for n in n_values:
            records.extend(_point_checks(g, n))
    return records


# ---------------------------------------------------------------------------
# census


def _census_record(point: tuple[int, int]) -> ReportRecord:
    g, n = point
    report = build_dual(g, n)
    return ReportRecord(
        "census",
        {"g": g, "n": n},
        {
            "c2": 2 * (g - 1) * n * n,
            "w": report.w,
            "d_square": report.d_square,
            "gerbe_order": report.gerbe_order,
            "fine": report.fine,
            "base_dim": report.base_dim,
        },
    )


def census_records(g_max: int, n_max: int, jobs: int = 1) -> list[ReportRecord]:
    """One record per grid point, ordered by (g, n) regardless of jobs."""
    grid = [(g, n) for g in range(2, g_max + 1) for n in range(2, n_max + 1)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_census_record, grid))
    return [_census_record(point) for point in grid]


# ---------------------------------------------------------------------------
# rendering


def _render_default(records, out):
    for rec in records:
        print(rec.command, file=out)
        items = list(rec.inputs.items()) + list(rec.outputs.items())
        if rec.passed is not None:
            items.append(("pass", rec.passed))
        width = max(len(key) for key, _ in items)
        for key, value in items:
            print(f"  {key:<{width}} = {_format_value(value)}", file=out)


_CENSUS_COLUMNS = ("g", "n", "c2", "w", "d_square", "gerbe_order", "fine", "base_dim")


def _render_census(records, out):
    rows = []
    for rec in records:
        merged = {**rec.inputs, **rec.outputs}
        rows.append([_format_value(merged[col]) for col in _CENSUS_COLUMNS])
    widths = [
        max(len(col), *(len(row[i]) for row in rows)) if rows else len(col)
        for i, col in enumerate(_CENSUS_COLUMNS)
    ]
    header = "  ".join(col.ljust(widths[i]) for i, col in enumerate(_CENSUS_COLUMNS))
    print(header.rstrip(), file=out)
    for row in rows:
        line = "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row))
        print(line.rstrip(), file=out)


def _render_verify(records, out):
    for rec in records:
        status = "ok" if rec.passed else "FAIL"
        context = " ".join(
            f"{key}={_format_value(value)}"
            for key, value in rec.inputs.items()
            if key != "check"
        )
        outputs = " ".join(
            f"{key}={_format_value(value)}" for key, value in rec.outputs.items()
        )
        print(f"{status:<5} {rec.inputs['check']:<26} {context:<18} {outputs}", file=out)
    passed = sum(1 for rec in records if rec.passed)
    print(f"verify-paper: {passed}/{len(records)} checks passed", file=out)


# ---------------------------------------------------------------------------
# subcommands


def _parse_vector(text: str) -> MukaiVector:
    try:
        parts = [int(piece) for piece in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse vector {text!r}: {exc}") from None
    if len(parts) != 3:
        raise UsageError("vectors take the form r,c,s (rank-one NS)")
    return MukaiVector(parts[0], (parts[1],), parts[2])


def _parse_form(text: str) -> QuadForm2:
    try:
        parts = [int(piece) for piece in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse form {text!r}: {exc}") from None
    if len(parts) != 3:
        raise UsageError("forms take the form m11,m12,m22")
    return QuadForm2(*parts)


def _require_at_least(value: int, minimum: int, flag: str) -> None:
    if value < minimum:
        raise UsageError(f"{flag} must be at least {minimum}")


def cmd_pair(args) -> tuple[list[ReportRecord], int]:
    v, u = _parse_vector(args.v), _parse_vector(args.u)
    gram = NSGram.rank_one(args.c2)
    record = ReportRecord(
        "pair",
        {"v": v, "u": u, "c2": args.c2},
        {"pairing": pairing(v, u, gram)},
    )
    return [record], 0


def cmd_square(args) -> tuple[list[ReportRecord], int]:
    v = _parse_vector(args.v)
    gram = NSGram.rank_one(args.c2)
    record = ReportRecord(
        "square", {"v": v, "c2": args.c2}, {"square": square(v, gram)}
    )
    return [record], 0


def cmd_isotropic(args) -> tuple[list[ReportRecord], int]:
    _require_at_least(args.g, 2, "--g")
    _require_at_least(args.bound, 1, "--bound")
    lat = BBLattice(args.c2, args.g)
    result = find_isotropic(lat, args.bound)
    record = ReportRecord(
        "isotropic",
        {"c2": args.c2, "g": args.g, "bound": args.bound},
        {
            "classes": list(result.classes),
            "exists_nontrivial": result.exists,
        },
    )
    return [record], 0


def cmd_dual(args) -> tuple[list[ReportRecord], int]:
    _require_at_least(args.g, 2, "--g")
    _require_at_least(args.n, 2, "--n")
    report = build_dual(args.g, args.n)
    family = solve_transform_constraints(args.g, args.n, (args.k_min, args.k_max))
    record = ReportRecord(
        "dual",
        {"g": args.g, "n": args.n, "k_min": args.k_min, "k_max": args.k_max},
        {
            "w": report.w,
            "c2": 2 * (args.g - 1) * args.n * args.n,
            "d_square": report.d_square,
            "gerbe_order": report.gerbe_order,
            "base_dim": report.base_dim,
            "fine": report.fine,
            "polarization_dual": report.polarization_dual,
            "d_ample_assumed": report.d_ample_assumed,
            "constraints": list(family.equations),
            "solutions": list(family.solutions),
        },
    )
    return [record], 0


def cmd_criterion(args) -> tuple[list[ReportRecord], int]:
    _require_at_least(args.bound, 1, "--bound")
    if args.v is not None:
        if args.c2 is None:
            raise UsageError("--v requires --c2")
        v, c2 = _parse_vector(args.v), args.c2
    elif args.g is not None:
        _require_at_least(args.g, 2, "--g")
        v = MukaiVector(1, (0,), 1 - args.g)
        if args.c2 is not None:
            c2 = args.c2
        elif args.n is not None:
            _require_at_least(args.n, 2, "--n")
            c2 = 2 * (args.g - 1) * args.n * args.n
        else:
            raise UsageError("--g needs either --n or --c2 to fix the lattice")
    else:
        raise UsageError("criterion needs --v with --c2, or --g with --n/--c2")
    report = general_fibration_criterion(v, NSGram.rank_one(c2), args.bound)
    record = ReportRecord(
        "criterion",
        {"v": v, "c2": c2, "bound": args.bound},
        {"genus": report.genus, "hits": list(report.hits)},
    )
    return [record], 0


def cmd_equiv(args) -> tuple[list[ReportRecord], int]:
    _require_at_least(args.bound, 1, "--bound")
    if args.f1 is not None or args.f2 is not None:
        if args.f1 is None or args.f2 is None:
            raise UsageError("--f1 and --f2 must be given together")
        f1, f2 = _parse_form(args.f1), _parse_form(args.f2)
        inputs = {"f1": f1, "f2": f2, "bound": args.bound}
    else:
        if args.g is None or args.n is None or args.d is None:
            raise UsageError("equiv needs --f1/--f2 or all of --g, --n, --d")
        _require_at_least(args.g, 2, "--g")
        _require_at_least(args.n, 2, "--n")
        if args.d < 0:
            raise UsageError("--d must be non-negative")
        f1 = hilb_picard_form(args.g, args.n)
        f2 = picard_scheme_form(args.g, args.d).form
        inputs = {"g": args.g, "n": args.n, "d": args.d, "bound": args.bound}
    result = equivalent(f1, f2, args.bound, proper=args.proper)
    outputs = {} if "f1" in inputs else {"f1": f1, "f2": f2}
    outputs["verdict"] = result.verdict
    if result.certificate is not None:
        outputs["certificate"] = result.certificate
        outputs["values"] = result.values
    if result.witness is not None:
        outputs["witness"] = result.witness
    return [ReportRecord("equiv", inputs, outputs)], 0


def cmd_verify_paper(args) -> tuple[list[ReportRecord], int]:
    if args.g is not None:
        _require_at_least(args.g, 2, "--g")
    if args.n is not None:
        _require_at_least(args.n, 2, "--n")
    g_values = [args.g] if args.g is not None else range(2, 11)
    n_values = [args.n] if args.n is not None else range(2, 11)
    records = ledger_checks(g_values, n_values)
    code = 0 if all(rec.passed for rec in records) else 1
    return records, code


def cmd_census(args) -> tuple[list[ReportRecord], int]:
    _require_at_least(args.g_max, 2, "--g-max")
    _require_at_least(args.n_max, 2, "--n-max")
    _require_at_least(args.jobs, 1, "--jobs")
    return census_records(args.g_max, args.n_max, jobs=args.jobs), 0


_RENDERERS = {"census": _render_census, "verify-paper": _render_verify}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--json", action="store_true", help="emit newline-delimited JSON records"
    )
    parser = argparse.ArgumentParser(
        prog="k3mukai",
        description="Exact Mukai-lattice arithmetic for K3 surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", parents=[shared], help="Mukai pairing of two vectors")
    p.add_argument("--v", required=True, help="vector r,c,s")
    p.add_argument("--u", required=True, help="vector r,c,s")
    p.add_argument("--c2", type=int, required=True, help="C^2 of the NS generator")
    p.set_defaults(handler=cmd_pair)

    p = sub.add_parser("square", parents=[shared], help="Mukai self-pairing")
    p.add_argument("--v", required=True, help="vector r,c,s")
    p.add_argument("--c2", type=int, required=True)
    p.set_defaults(handler=cmd_square)

    p = sub.add_parser(
        "isotropic", parents=[shared], help="isotropic divisor classes on Hilb^g"
    )
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(handler=cmd_isotropic)

    p = sub.add_parser(
        "dual", parents=[shared], help="dual-surface data and constraint family"
    )
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-min", type=int, default=-2, dest="k_min")
    p.add_argument("--k-max", type=int, default=2, dest="k_max")
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser(
        "criterion", parents=[shared], help="search isotropic classes orthogonal to v"
    )
    p.add_argument("--v", help="vector r,c,s (defaults to (1, 0, 1-g))")
    p.add_argument("--c2", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--bound", type=int, default=5)
    p.set_defaults(handler=cmd_criterion)

    p = sub.add_parser(
        "equiv",
        parents=[shared],
        help="GL2(Z)-equivalence of two quadratic forms",
        epilog=(
            "Forms are symmetric Gram matrices m11,m12,m22; the content "
            "invariant is the gcd of the Gram entries."
        ),
    )
    p.add_argument("--f1", help="form m11,m12,m22")
    p.add_argument("--f2", help="form m11,m12,m22")
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--bound", type=int, default=10)
    p.add_argument(
        "--proper", action="store_true", help="restrict to SL2(Z) equivalence"
    )
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser(
        "verify-paper", parents=[shared], help="run the full verification ledger"
    )
    p.add_argument("--g", type=int, help="restrict the grid to one g")
    p.add_argument("--n", type=int, help="restrict the grid to one n")
    p.set_defaults(handler=cmd_verify_paper)

    p = sub.add_parser("census", parents=[shared], help="one row per (g, n)")
    p.add_argument("--g-max", type=int, default=10, dest="g_max")
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_census)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records, code = args.handler(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        for record in records:
            print(record.to_json())
    else:
        renderer = _RENDERERS.get(args.command, _render_default)
        renderer(records, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
