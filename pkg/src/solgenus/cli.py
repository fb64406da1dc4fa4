"""Command-line front end: subcommand dispatch, rendering, and batch survey.

Output formats are byte-stable for fixed inputs and flags.  Integers whose
magnitude exceeds 2^53 - 1 are emitted as decimal strings in JSON so that
double-precision consumers never lose digits.

Environment: SOLGENUS_WORKERS shards the survey over a process pool;
SOLGENUS_COLOR enables ANSI color in table output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .conjugacy import are_conjugate_gl2z, are_conjugate_mod_m
from .errors import SolgenusError
from .forms import EquivMode, class_count, class_set
from .genus import GenusReport, TheoremBranch, branch_of, genus
from .ideals import lm_representatives
from .matrices import CharPoly, GeometryLabel, IntMat2, char_poly, geometry, matrix_order, parse_matrix, spectrum_class
from .orders import disc_from_int, order_disc

_BIG = 2**53 - 1


# ---------------------------------------------------------------------------
# JSON / CSV / table rendering
# ---------------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _BIG else obj
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    raise TypeError(f"cannot render {type(obj)!r} as JSON")


def _mat(m: IntMat2) -> list[list[int]]:
    return [[m.a, m.b], [m.c, m.d]]


def render_json(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2) + "\n"


def _compact(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(_jsonable(value))
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _color_enabled() -> bool:
    return bool(os.environ.get("SOLGENUS_COLOR"))


def render_table(report: dict) -> str:
    width = max(len(k) for k in report)
    lines = []
    for k, v in report.items():
        val = _compact(v)
        if _color_enabled() and k in ("genus", "rigid"):
            val = f"\x1b[32m{val}\x1b[0m"
        lines.append(f"{k:<{width}}  {val}")
    return "\n".join(lines) + "\n"


def render_rows_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_compact(row[f]) for f in fields])
    return buf.getvalue()


def render_rows_table(rows: list[dict], fields: list[str]) -> str:
    cells = [[_compact(r[f]) for f in fields] for r in rows]
    widths = [max(len(f), *(len(c[i]) for c in cells)) if cells else len(f) for i, f in enumerate(fields)]
    out = ["  ".join(f"{f:<{w}}" for f, w in zip(fields, widths))]
    for c in cells:
        out.append("  ".join(f"{x:<{w}}" for x, w in zip(c, widths)))
    return "\n".join(out) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "table":
        return render_table(report)
    raise SolgenusError(f"unsupported format {fmt!r}")


# ---------------------------------------------------------------------------
# Report builders
# ---------------------------------------------------------------------------


def genus_report_dict(r: GenusReport) -> dict:
    reps = None
    if r.representatives is not None:
        reps = [
            {"matrix": _mat(m), "form": list(f.triple())}
            for m, f in zip(r.representatives.reps, r.representatives.forms)
        ]
        assert reps, "a genus report must carry at least one representative"
    canonical = None
    if r.canonical is not None:
        canonical = {"target": _mat(r.canonical.target), "conjugator": _mat(r.canonical.conjugator)}
    evidence = None
    if r.evidence is not None:
        pairs = []
        for pe in r.evidence.pairs:
            entry: dict = {"i": pe.i, "j": pe.j, "gl2z_conjugate": pe.gl2z_witness is not None}
            if pe.brute is not None:
                entry["exhaustive_scan"] = {
                    "bound": pe.brute.bound,
                    "witness_found": pe.brute.witness is not None,
                }
            if pe.modular is not None:
                entry["mod_m"] = {
                    "m_max": pe.modular.m_max,
                    "verdict": pe.modular.verdict,
                    "witnesses": [
                        {"m": m, "P": None if w is None else _mat(w.P)} for m, w in pe.modular.levels
                    ],
                }
            pairs.append(entry)
        evidence = {"level": r.evidence.level, "pairs": pairs}
    return {
        "matrix": _mat(r.matrix),
        "trace": r.char.t,
        "det": r.char.n,
        "geometry": r.geometry.value,
        "branch": r.branch.value,
        "D": r.char.disc,
        "D0": None if r.disc is None else r.disc.D0,
        "conductor": None if r.disc is None else r.disc.f,
        "d": None if r.disc is None else r.disc.d,
        "h_field": r.h_field,
        "h_order": r.h_order,
        "genus": r.genus,
        "discrepancy": r.discrepancy,
        "rigid": r.rigid,
        "presentation": r.presentation,
        "representatives": reps,
        "canonical": canonical,
        "evidence": evidence,
    }


def _cmd_genus(args) -> str:
    m = parse_matrix(args.matrix)
    return render(genus_report_dict(genus(m, args.evidence)), args.format)


def _cmd_classify(args) -> str:
    m = parse_matrix(args.matrix)
    p = char_poly(m)
    order = matrix_order(m)
    report = {
        "matrix": _mat(m),
        "trace": p.t,
        "det": p.n,
        "D": p.disc,
        "spectrum": spectrum_class(p).value,
        "geometry": geometry(m).value,
        "order": "infinite" if order is None else order,
        "branch": branch_of(p).value,
    }
    return render(report, args.format)


def _cmd_enumerate(args) -> str:
    if args.matrix is not None:
        p = char_poly(parse_matrix(args.matrix))
    elif args.trace is not None and args.det is not None:
        if args.det not in (1, -1):
            raise SolgenusError("determinant must be 1 or -1")
        p = CharPoly(args.trace, args.det)
    else:
        raise SolgenusError("provide a matrix or both --trace and --det")
    od = order_disc(p)
    reps = lm_representatives(p)
    report = {
        "trace": p.t,
        "det": p.n,
        "D": od.D,
        "D0": od.D0,
        "conductor": od.f,
        "count": reps.count,
        "representatives": [
            {"matrix": _mat(m), "form": list(f.triple())} for m, f in zip(reps.reps, reps.forms)
        ],
    }
    return render(report, args.format)


def _cmd_conj(args) -> str:
    a = parse_matrix(args.matrix_a)
    b = parse_matrix(args.matrix_b)
    pa, pb = char_poly(a), char_poly(b)
    if pa != pb:
        report = {
            "matrix_a": _mat(a),
            "matrix_b": _mat(b),
            "conjugate": False,
            "witness": None,
            "reason": "characteristic polynomials differ",
        }
    else:
        w = are_conjugate_gl2z(a, b)
        report = {
            "matrix_a": _mat(a),
            "matrix_b": _mat(b),
            "conjugate": w is not None,
            "witness": None if w is None else _mat(w.P),
            "reason": None,
        }
    return render(report, args.format)


def _cmd_conj_mod(args) -> str:
    a = parse_matrix(args.matrix_a)
    b = parse_matrix(args.matrix_b)
    moduli = [args.m] if args.m is not None else list(range(2, args.mmax + 1))
    levels = []
    first_failure = None
    for m in moduli:
        w = are_conjugate_mod_m(a, b, m)
        if w is None and first_failure is None:
            first_failure = m
        levels.append({"m": m, "witness": None if w is None else _mat(w.P)})
    report = {
        "matrix_a": _mat(a),
        "matrix_b": _mat(b),
        "levels": levels,
        "all_witnessed": first_failure is None,
        "first_failure": first_failure,
    }
    return render(report, args.format)


def _cmd_classnumber(args) -> str:
    od = disc_from_int(args.D)
    mode = EquivMode.PROPER if args.mode == "proper" else EquivMode.IMPROPER
    cs = class_set(od, mode)
    report = {
        "D": od.D,
        "D0": od.D0,
        "f": od.f,
        "mode": mode.value,
        "h": cs.count,
        "reps": [list(f.triple()) for f in cs.reps],
    }
    return render(report, args.format)


def _cmd_canonical(args) -> str:
    m = parse_matrix(args.matrix)
    p = char_poly(m)
    branch = branch_of(p)
    target = conjugator = note = None
    if branch is TheoremBranch.MAIN_QUADRATIC:
        for rep in lm_representatives(p).reps:
            w = are_conjugate_gl2z(m, rep)
            if w is not None:
                target, conjugator = rep, w.P
                break
        else:
            note = (
                "not conjugate to any enumerated representative: the fixed lattice "
                "is a module over a strictly larger order (conductor > 1 case)"
            )
    else:
        from .conjugacy import canonical_form

        target, conjugator = canonical_form(m)
    verified = conjugator is not None and (conjugator * m == target * conjugator)
    report = {
        "matrix": _mat(m),
        "branch": branch.value,
        "target": None if target is None else _mat(target),
        "conjugator": None if conjugator is None else _mat(conjugator),
        "verified": verified,
        "note": note,
    }
    return render(report, args.format)


# ---------------------------------------------------------------------------
# Survey
# ---------------------------------------------------------------------------

SURVEY_FIELDS = ["t", "n", "D", "D0", "f", "geometry", "branch", "h_field", "h_order", "genus", "rigid"]


@dataclass(frozen=True)
class SurveyRow:
    t: int
    n: int
    D: int
    D0: int
    f: int
    geometry: str
    branch: str
    h_field: int
    h_order: int
    genus: int
    rigid: bool

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in SURVEY_FIELDS}


def _survey_cell(cell: tuple[int, int]) -> SurveyRow:
    t, n = cell
    od = order_disc(CharPoly(t, n))
    h_field = class_count(od.D0, EquivMode.IMPROPER)
    h_order = class_count(od.D, EquivMode.IMPROPER)
    return SurveyRow(
        t=t,
        n=n,
        D=od.D,
        D0=od.D0,
        f=od.f,
        geometry=GeometryLabel.SOL.value,
        branch=TheoremBranch.MAIN_QUADRATIC.value,
        h_field=h_field,
        h_order=h_order,
        genus=h_field,
        rigid=(h_field == 1),
    )


def survey_rows(tmax: int, det: str = "both") -> list[SurveyRow]:
    """One row per (t, n) cell with hyperbolic real spectrum (D > 0 nonsquare).

    These are exactly the Sol cells; cells with degenerate or complex spectrum
    are skipped because the genus data there does not depend on (t, n) alone.
    """
    from .matrices import is_square

    dets = {"both": (-1, 1), "1": (1,), "-1": (-1,)}[det]
    cells = [
        (t, n)
        for t in range(-tmax, tmax + 1)
        for n in dets
        if (d := t * t - 4 * n) > 0 and not is_square(d)
    ]
    cells.sort()
    workers = int(os.environ.get("SOLGENUS_WORKERS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_survey_cell, cells))
    else:
        rows = [_survey_cell(c) for c in cells]
    return rows


def _cmd_survey(args) -> str:
    rows = [r.as_dict() for r in survey_rows(args.tmax, args.det)]
    if args.format == "csv":
        return render_rows_csv(rows, SURVEY_FIELDS)
    if args.format == "table":
        return render_rows_table(rows, SURVEY_FIELDS)
    return render_json({"tmax": args.tmax, "det": args.det, "rows": rows})


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

_MATRIX_HELP = 'matrix as "a b; c d" (commas optional) or JSON [[a,b],[c,d]]'
_LIMITS = (
    "Discriminants are factored by trial division (fine to |D| ~ 1e12); "
    "class enumeration is practical to |D| ~ 1e7."
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solgenus",
        description="Profinite genus of torus-bundle groups (Z x Z) x| Z and the "
        "class-number machinery behind it. " + _LIMITS,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="genus report for a monodromy matrix")
    p.add_argument("matrix", help=_MATRIX_HELP)
    p.add_argument("--evidence", choices=["none", "fast", "full"], default="fast")
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("classify", help="spectrum, geometry, and order of a matrix")
    p.add_argument("matrix", help=_MATRIX_HELP)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("enumerate", help="one matrix per conjugacy class for a char polynomial")
    p.add_argument("matrix", nargs="?", default=None, help=_MATRIX_HELP)
    p.add_argument("--trace", type=int, default=None)
    p.add_argument("--det", type=int, default=None, choices=[1, -1])
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("conj", help="decide GL2(Z) conjugacy of two matrices")
    p.add_argument("matrix_a", help=_MATRIX_HELP)
    p.add_argument("matrix_b", help=_MATRIX_HELP)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("conj-mod", help="GL2(Z/m) conjugacy witnesses for one m or a range")
    p.add_argument("matrix_a", help=_MATRIX_HELP)
    p.add_argument("matrix_b", help=_MATRIX_HELP)
    p.add_argument("--m", type=int, default=None, help="single modulus (default: range 2..mmax)")
    p.add_argument("--mmax", type=int, default=30)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("classnumber", help="form classes of a discriminant. " + _LIMITS)
    p.add_argument("D", type=int)
    p.add_argument("--mode", choices=["proper", "improper"], default="improper")
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("canonical", help="canonical target and verified conjugator")
    p.add_argument("matrix", help=_MATRIX_HELP)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("survey", help="class-number sweep over (trace, det) cells")
    p.add_argument("--tmax", type=int, default=10)
    p.add_argument("--det", choices=["both", "1", "-1"], default="both")
    p.add_argument("--format", choices=["csv", "json", "table"], default="csv")
    return parser


_DISPATCH = {
    "genus": _cmd_genus,
    "classify": _cmd_classify,
    "enumerate": _cmd_enumerate,
    "conj": _cmd_conj,
    "conj-mod": _cmd_conj_mod,
    "classnumber": _cmd_classnumber,
    "canonical": _cmd_canonical,
    "survey": _cmd_survey,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = _DISPATCH[args.command](args)
    except (SolgenusError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
