"""Command-line front end: operator files, verification reports, exit codes.

Matrices go over the wire as JSON with every entry a canonical scalar
string, so exactness survives serialization.  Reports are JSON documents
listing one record per check; the process exits 0 exactly when every
check passed.  Ambient dimensions are guarded by an explicit budget
(``--max-dim`` or the HBL_MAX_AMBIENT variable, default 4096): oversized
requests are refused with an error, never silently truncated.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .exactnum import PowerSeries, scalar
from .linalg import Matrix
from .poincare import (
    b_sequence,
    p_sequence_from_s,
    poincare_E,
    t_specialize_p_from_operator,
    verify_character_recursion,
)
from .qalg import (
    algebra_by_key,
    distributivity_check,
    dual_graded_dimension,
    graded_dimension,
    koszul_series_check,
)
from .rmatrix import (
    HeckeOperator,
    dj_r_matrix,
    flip_operator,
    operator_axiom_report,
    super_flip,
)
from .schur import (
    bicommutant_check,
    centralizer_dimension,
    multiplicities,
    schur_dimension_check,
)

DEFAULT_BUDGET = 4096

CONVENTION_NOTE = (
    "operators act on row vectors from the right; the basis of the tensor "
    "square is row-major lexicographic in the index pairs; entries are "
    "expressions in p with q = p^2 unless the file says otherwise"
)


class CLIError(Exception):
    """A usage or input problem: reported cleanly, exit status 2."""


# ---------------------------------------------------------------------------
# operator sources


def builtin_operator(name):
    kind, sep, arg = name.partition(":")
    if not sep:
        raise CLIError(f"builtin name needs a parameter, like dj:2 (got {name!r})")
    try:
        if kind == "dj":
            return dj_r_matrix(int(arg))
        if kind == "flip":
            return flip_operator(int(arg))
        if kind == "superflip":
            r, sep2, s = arg.partition("|")
            if not sep2:
                raise CLIError("superflip takes r|s, like superflip:1|1")
            return super_flip(int(r), int(s))
    except ValueError as exc:
        raise CLIError(f"bad builtin parameter in {name!r}: {exc}") from None
    raise CLIError(f"unknown builtin {name!r} (expected dj:<d>, flip:<d>, superflip:<r>|<s>)")


def operator_to_document(op):
    """JSON-ready description of an operator, canonical scalar strings."""
    m = op.d * op.d
    entries = [
        [str(op.R.entry(i, j)) for j in range(m)] for i in range(m)
    ]
    parameter = "symbolic-p" if op.specialized_at is None else str(op.specialized_at)
    return {
        "name": op.name,
        "d": op.d,
        "parameter": parameter,
        "q": str(op.q),
        "entries": entries,
        "convention": CONVENTION_NOTE,
    }


def operator_from_document(doc):
    """Parse and validate; a document that fails the axioms is rejected."""
    try:
        d = int(doc["d"])
        name = str(doc["name"])
        q = scalar(str(doc["q"]))
        entries = doc["entries"]
        parameter = str(doc.get("parameter", "symbolic-p"))
    except (KeyError, TypeError, ValueError) as exc:
        raise CLIError(f"malformed operator document: {exc}") from None
    m = d * d
    if len(entries) != m or any(len(row) != m for row in entries):
        raise CLIError(f"entries must be a {m}x{m} array of scalar strings")
    data = []
    for i, row in enumerate(entries):
        out = {}
        for j, text in enumerate(row):
            try:
                v = scalar(str(text))
            except ValueError as exc:
                raise CLIError(f"bad scalar at entry ({i}, {j}): {exc}") from None
            if v:
                out[j] = v
        data.append(out)
    op = HeckeOperator(d, Matrix(m, m, data), q, name)
    if parameter != "symbolic-p":
        try:
            op = op.specialize(Fraction(parameter))
        except (ValueError, ZeroDivisionError) as exc:
            raise CLIError(f"bad parameter value {parameter!r}: {exc}") from None
    for check_name, result in operator_axiom_report(op):
        if not result:
            raise CLIError(
                f"operator {name!r} rejected: {check_name} fails at {result.witness}"
            )
    return op


def load_operator(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path} is not valid JSON: {exc}") from None
    return operator_from_document(doc)


def save_operator(op, path):
    with open(path, "w") as fh:
        json.dump(operator_to_document(op), fh, indent=2)
        fh.write("\n")


def resolve_operator(args):
    if bool(args.builtin) == bool(args.file):
        raise CLIError("give exactly one of --builtin or --file")
    op = builtin_operator(args.builtin) if args.builtin else load_operator(args.file)
    spec = getattr(args, "specialize", None)
    if spec:
        if not spec.startswith("p="):
            raise CLIError("--specialize takes p=<rational>, like p=3/2")
        try:
            op = op.specialize(Fraction(spec[2:]))
        except (ValueError, ZeroDivisionError) as exc:
            raise CLIError(f"bad specialization {spec!r}: {exc}") from None
    return op


def ambient_budget(args):
    limit = getattr(args, "max_dim", None)
    if limit is None:
        env = os.environ.get("HBL_MAX_AMBIENT")
        limit = int(env) if env else DEFAULT_BUDGET
    if limit < 1:
        raise CLIError("the ambient budget must be positive")
    return limit


def require_budget(ambient, budget, what):
    if ambient > budget:
        raise CLIError(
            f"{what} needs ambient dimension {ambient}, over the budget {budget}; "
            "raise --max-dim or HBL_MAX_AMBIENT to allow it"
        )


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckRecord:
    name: str
    degree: int
    expected: object
    computed: object
    routes: list
    ok: bool
    elapsed: float

    def line(self):
        state = "PASS" if self.ok else "FAIL"
        deg = f" n={self.degree}" if self.degree is not None else ""
        return f"[{state}] {self.name}{deg}: {self.computed}"


@dataclass
class VerificationReport:
    command: str
    operator: str
    parameters: dict
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def add(self, name, computed, ok, degree=None, expected=None, routes=(), started=None):
        elapsed = 0.0 if started is None else round(time.monotonic() - started, 6)
        self.checks.append(
            CheckRecord(name, degree, expected, computed, list(routes), bool(ok), elapsed)
        )

    def to_document(self):
        return {
            "tool": "heckebialg",
            "version": __version__,
            "command": self.command,
            "operator": self.operator,
            "parameters": self.parameters,
            "checks": [
                {
                    "name": c.name,
                    "degree": c.degree,
                    "expected": c.expected,
                    "computed": c.computed,
                    "routes": c.routes,
                    "ok": c.ok,
                    "elapsed": c.elapsed,
                }
                for c in self.checks
            ],
            "ok": self.ok,
        }


def _merge_routes(report, name, degree, by_route):
    """One record out of per-route values; pass iff they all agree."""
    values = list(by_route.values())
    agree = all(v == values[0] for v in values)
    report.add(
        name,
        computed=by_route,
        ok=agree,
        degree=degree,
        expected=values[0] if agree else None,
        routes=list(by_route),
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_axioms(op, report, max_degree=8):
    for name, result in operator_axiom_report(op, max_degree=max_degree):
        started = time.monotonic()
        report.add(
            f"axioms/{name}",
            computed="holds" if result.ok else f"violated at {result.witness}",
            ok=result.ok,
            routes=["matrix-identity"],
            started=started,
        )


def _dims_by_route(op, algebra, key, n, budget):
    """Per-route dimension values in degree n, budget-guarded."""
    m = algebra.generators
    require_budget(m**n, budget, f"degree {n} of {algebra.label}")
    out = {}
    if key == "edual":
        out["direct-rank"] = dual_graded_dimension(algebra, n)
    else:
        out["direct-rank"] = graded_dimension(algebra, n)
    if key == "e" and (op.d**n) ** 2 <= budget and n >= 1:
        out["centralizer"] = centralizer_dimension(op, n)
    return out


def cmd_dims(op, report, key, max_degree, budget):
    key = key.lower()
    algebra = algebra_by_key(op, "e" if key == "edual" else key)
    label = algebra.label if key != "edual" else f"dual of {algebra.label}"
    for n in range(max_degree + 1):
        started = time.monotonic()
        by_route = _dims_by_route(op, algebra, key, n, budget)
        values = list(by_route.values())
        agree = all(v == values[0] for v in values)
        report.add(
            f"dims/{label}",
            computed=by_route,
            ok=agree,
            degree=n,
            expected=values[0] if agree else None,
            routes=list(by_route),
            started=started,
        )


def cmd_poincare(op, report, max_degree, budget):
    n_p = max_degree  # p_0..p_{N-1} feed e_n and b_n through degree N
    s_alg = algebra_by_key(op, "s")
    require_budget(op.d ** (n_p + 1), budget, f"degree {n_p + 1} of {s_alg.label}")

    s_dims = [graded_dimension(s_alg, n) for n in range(n_p + 2)]
    p_series = p_sequence_from_s(PowerSeries([Fraction(x) for x in s_dims]), n_p)
    if op.specialized_at is None:
        p_vals = t_specialize_p_from_operator(op, n_p)
        _merge_routes(
            report,
            "poincare/p-sequence",
            None,
            {"direct-rank": [str(x) for x in p_vals], "formula": [str(x) for x in p_series]},
        )
    else:
        # at a pinned p the q -> 1 trace route is gone; the series route
        # only needs the integer dimensions and still applies
        p_vals = p_series
        _merge_routes(
            report,
            "poincare/p-sequence",
            None,
            {"formula": [str(x) for x in p_series]},
        )

    e_alg = algebra_by_key(op, "e")
    e_formula = poincare_E(p_vals, max_degree)
    b_formula = b_sequence(p_vals, max_degree)
    for n in range(max_degree + 1):
        by_route = {"formula": int(e_formula[n])}
        if e_alg.generators**n <= budget:
            by_route["direct-rank"] = graded_dimension(e_alg, n)
        _merge_routes(report, "poincare/e-dimension", n, by_route)
    for n in range(max_degree + 1):
        by_route = {"formula": int(b_formula[n])}
        if e_alg.generators**n <= budget:
            by_route["direct-rank"] = dual_graded_dimension(e_alg, n)
        _merge_routes(report, "poincare/b-dimension", n, by_route)

    if op.specialized_at is None:
        started = time.monotonic()
        rec = verify_character_recursion(op, max_degree)
        report.add(
            "poincare/character-recursion",
            computed={
                "p_zero": rec.p_zero,
                "rows": [f"n={n}: {lhs} = {rhs}" for n, lhs, rhs, _ in rec.rows],
                "naive_p0_fails": rec.naive_p0_fails,
                "note": rec.note,
            },
            ok=rec.ok,
            routes=["formula"],
            started=started,
        )


def cmd_koszul(op, report, key, degree, cap, budget):
    algebra = algebra_by_key(op, key)
    require_budget(algebra.generators**degree, budget, f"degree {degree} of {algebra.label}")

    started = time.monotonic()
    series = koszul_series_check(algebra, degree)
    report.add(
        f"koszul/series/{algebra.label}",
        computed={"dims": series.dims, "dual_dims": series.dual_dims, "residuals": series.residuals},
        ok=series.ok,
        degree=degree,
        routes=["direct-rank"],
        started=started,
    )

    started = time.monotonic()
    verdict = distributivity_check(algebra, degree, cap=cap)
    report.add(
        f"koszul/distributivity/{algebra.label}",
        computed={
            "status": verdict.status,
            "closure_size": verdict.closure_size,
            "eliminations": verdict.honest_ops,
            "certified": verdict.certified_ops,
        },
        ok=verdict.status == "distributive",
        degree=degree,
        expected="distributive",
        routes=["direct-rank"],
        started=started,
    )


def cmd_schur(op, report, degree, budget):
    require_budget((op.d**degree) ** 2, budget, f"the degree-{degree} centralizer")
    e_alg = algebra_by_key(op, "e")
    require_budget(e_alg.generators**degree, budget, f"degree {degree} of {e_alg.label}")

    if op.specialized_at is None:
        started = time.monotonic()
        rep = schur_dimension_check(op, degree, e_algebra=e_alg)
        report.add(
            "schur/dimension-three-routes",
            computed={
                "sum_of_squares": rep.sum_of_squares,
                "centralizer": rep.centralizer,
                "e_dimension": rep.e_dimension,
                "multiplicities": {str(k): v for k, v in sorted(rep.table.mult.items(), reverse=True)},
            },
            ok=rep.ok,
            degree=degree,
            routes=["formula", "centralizer", "direct-rank"],
            started=started,
        )
        started = time.monotonic()
        total = rep.table.total_dimension()
        report.add(
            "schur/multiplicity-mass",
            computed={"sum_m_f": total, "d^n": op.d**degree},
            ok=total == op.d**degree,
            degree=degree,
            routes=["formula"],
            started=started,
        )
    else:
        started = time.monotonic()
        by_route = {
            "centralizer": centralizer_dimension(op, degree),
            "direct-rank": graded_dimension(e_alg, degree),
        }
        _merge_routes(report, "schur/dimension-two-routes", degree, by_route)

    started = time.monotonic()
    bic = bicommutant_check(op, degree)
    report.add(
        "schur/double-centralizer",
        computed={
            "hecke_span": bic.hecke_span,
            "bicommutant": bic.bicommutant,
            "centralizer": bic.centralizer,
        },
        ok=bic.ok,
        degree=degree,
        routes=["centralizer"],
        started=started,
    )


def cmd_report(op, report, max_degree, cap, budget):
    cmd_axioms(op, report, max_degree=max(max_degree, 8))
    for key in ("s", "lambda", "e", "edual"):
        cmd_dims(op, report, key, max_degree, budget)
    cmd_poincare(op, report, max_degree, budget)
    for key in ("s", "lambda", "e"):
        cmd_koszul(op, report, key, max_degree, cap, budget)
    top = min(max_degree, 4)
    for n in range(2, top + 1):
        cmd_schur(op, report, n, budget)


# ---------------------------------------------------------------------------
# argument plumbing


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--builtin", help="dj:<d>, flip:<d>, or superflip:<r>|<s>")
    common.add_argument("--file", help="path to an operator JSON file")
    common.add_argument("--specialize", help="substitute a rational for p, like p=3/2")
    common.add_argument(
        "--max-dim",
        type=int,
        default=None,
        help=f"ambient dimension budget (default HBL_MAX_AMBIENT or {DEFAULT_BUDGET})",
    )
    common.add_argument("-o", "--out", help="write the JSON report here")

    parser = argparse.ArgumentParser(
        prog="hbl",
        description="exact verification of matrix bialgebras built from Hecke operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("axioms", parents=[common], help="operator axiom checks")
    p.add_argument("-N", "--max-degree", type=int, default=8, help="check [k]_q != 0 up to here")

    p = sub.add_parser("dims", parents=[common], help="graded dimensions of one algebra")
    p.add_argument("-a", "--algebra", default="E", choices=["S", "Lambda", "E", "Edual"])
    p.add_argument("-N", "--max-degree", type=int, default=3)

    p = sub.add_parser("poincare", parents=[common], help="series pipeline cross-checks")
    p.add_argument("-N", "--max-degree", type=int, default=4)

    p = sub.add_parser("koszul", parents=[common], help="series identity and distributivity")
    p.add_argument("-a", "--algebra", default="E", choices=["S", "Lambda", "E"])
    p.add_argument("-n", "--degree", type=int, default=3)
    p.add_argument("--cap", type=int, default=200, help="closure size bound")

    p = sub.add_parser("schur", parents=[common], help="multiplicities and centralizers")
    p.add_argument("-n", "--degree", type=int, default=3)

    p = sub.add_parser("report", parents=[common], help="everything, one JSON document")
    p.add_argument("-N", "--max-degree", type=int, default=3)
    p.add_argument("--cap", type=int, default=200)

    return parser


def _operator_descriptor(op):
    if op.specialized_at is None:
        return op.name
    return op.name  # the specialize() constructor already appended @p=...


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        op = resolve_operator(args)
        budget = ambient_budget(args)
        params = {}
        report = None
        if args.command == "axioms":
            params = {"max_degree": args.max_degree}
            report = VerificationReport("axioms", _operator_descriptor(op), params)
            cmd_axioms(op, report, max_degree=args.max_degree)
        elif args.command == "dims":
            params = {"algebra": args.algebra, "max_degree": args.max_degree}
            report = VerificationReport("dims", _operator_descriptor(op), params)
            cmd_dims(op, report, args.algebra.lower(), args.max_degree, budget)
        elif args.command == "poincare":
            params = {"max_degree": args.max_degree}
            report = VerificationReport("poincare", _operator_descriptor(op), params)
            cmd_poincare(op, report, args.max_degree, budget)
        elif args.command == "koszul":
            params = {"algebra": args.algebra, "degree": args.degree, "cap": args.cap}
            report = VerificationReport("koszul", _operator_descriptor(op), params)
            cmd_koszul(op, report, args.algebra.lower(), args.degree, args.cap, budget)
        elif args.command == "schur":
            params = {"degree": args.degree}
            report = VerificationReport("schur", _operator_descriptor(op), params)
            cmd_schur(op, report, args.degree, budget)
        elif args.command == "report":
            params = {"max_degree": args.max_degree, "cap": args.cap}
            report = VerificationReport("report", _operator_descriptor(op), params)
            cmd_report(op, report, args.max_degree, args.cap, budget)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for check in report.checks:
        print(check.line())
    state = "all checks passed" if report.ok else "some checks FAILED"
    print(f"{report.command} {report.operator}: {state}")

    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_document(), fh, indent=2)
            fh.write("\n")
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
