"""Command-line front end.

Subcommands: ``example``, ``scan``, ``critical``, ``verify``.  Rationals go
in and come out as exact strings; decimal renderings are presentation only
and always live in ``*_approx`` fields.

Exit codes: 0 success, 1 bad input, 2 pipeline/closed-form mismatch,
3 property failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from .errors import KStabError
from .exactalg import as_rational, format_rational
from .invariants import fit_hilbert_data, invariant_report
from .ruledsurface import (
    BOUNDARY,
    NO_WITNESS,
    STRICT,
    RuledSurfaceConfig,
    build_weight_system,
    closed_form_relative_futaki,
    critical_parameter,
    discriminant_polynomial,
    find_destabilizer,
    paper_expansion_coefficients,
    tf_equivalence_check,
)
from .verification import fitted_expansions, run_properties

SCHEMA = "kstab/1"
APPROX_DIGITS = 12

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_MISMATCH = 2
EXIT_PROPERTY = 3


class BadInput(Exception):
    pass


def approx(x: Fraction) -> str:
    """12 significant digits, for humans only."""
    with localcontext() as ctx:
        ctx.prec = APPROX_DIGITS
        return format(Decimal(x.numerator) / Decimal(x.denominator), "g")


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    records: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    csv_columns: Sequence[str] | None = None
    exit_code: int = EXIT_OK


def _json_value(v: Any) -> Any:
    if isinstance(v, Fraction):
        return {"num": str(v.numerator), "den": str(v.denominator)}
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def _text_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_text_value(x) for x in v) + ")"
    return str(v)


def to_json(report: Report) -> str:
    doc = {
        "schema": SCHEMA,
        "command": report.command,
        "inputs": _json_value(report.inputs),
        "records": _json_value(report.records),
        "summary": _json_value(report.summary),
    }
    return json.dumps(doc, indent=2) + "\n"


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    columns = list(report.csv_columns or (report.records[0].keys() if report.records else []))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in report.records:
        writer.writerow([_text_value(rec.get(col)) for col in columns])
    return buf.getvalue()


def to_table(report: Report) -> str:
    lines = [f"# {report.command}"]
    for k, v in report.inputs.items():
        lines.append(f"#   {k} = {_text_value(v)}")
    if report.records:
        columns = list(report.csv_columns or report.records[0].keys())
        if len(report.records) == 1 and report.csv_columns is None:
            width = max(len(c) for c in columns)
            for col in columns:
                lines.append(f"{col.ljust(width)}  {_text_value(report.records[0][col])}")
        else:
            rows = [[_text_value(r.get(c)) for c in columns] for r in report.records]
            widths = [max(len(c), *(len(row[i]) for row in rows)) for i, c in enumerate(columns)]
            lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
            for row in rows:
                lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
    for k, v in report.summary.items():
        lines.append(f"{k}: {_text_value(v)}")
    return "\n".join(lines) + "\n"


FORMATTERS = {"table": to_table, "json": to_json, "csv": to_csv}


def _rat(value: Any, name: str) -> Fraction:
    try:
        return as_rational(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadInput(f"--{name}: {exc}") from None


def _int(value: Any, name: str) -> int:
    try:
        return int(str(value).strip())
    except ValueError:
        raise BadInput(f"--{name}: expected an integer, got {value!r}") from None


def parse_m_range(text: str) -> list[Fraction]:
    """``"lo:step:hi"`` (inclusive) or a comma list ``"1,5/2,3"``; empty gives []."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise BadInput("--m-range: expected lo:step:hi")
        lo, step, hi = (_rat(p, "m-range") for p in parts)
        if step <= 0:
            raise BadInput("--m-range: step must be positive")
        out = []
        x = lo
        while x <= hi:
            out.append(x)
            x += step
        values = out
    else:
        values = [_rat(p, "m-range") for p in text.split(",") if p.strip()]
    for v in values:
        if v <= 0:
            raise BadInput(f"--m-range: m must be positive, got {format_rational(v)}")
    return sorted(set(values))


# -- subcommands -------------------------------------------------------------


def run_example(m: Fraction, c: Fraction, g: int = 2, d: int = 1) -> Report:
    try:
        cfg = RuledSurfaceConfig(g, d, m, c)
    except KStabError as exc:
        raise BadInput(str(exc)) from None
    hd = fit_hilbert_data(build_weight_system(cfg))
    rep = invariant_report(hd, 0, [1])
    fchi = rep.relative_futaki
    rec: dict[str, Any] = {
        "d_top": hd.d.top(2, 2),
        "tr_a_top": hd.w[0].top(2, 3),
        "tr_b_top": hd.w[1].top(2, 3),
        "tr_ab_top": hd.pair[0][1].top(1, 4),
        "tr_bb_top": hd.pair[1][1].top(1, 4),
        "F_alpha": rep.futaki[0],
        "F_beta": rep.futaki[1],
        "ip_alpha_beta": rep.gram[0][1],
        "ip_beta_beta": rep.gram[1][1],
        "chi": rep.chi_coeffs[0],
        "F_chi": fchi,
        "F_chi_approx": approx(fchi),
        # Outside the base case only this one c is examined.
        "verdict": STRICT if fchi < 0 else BOUNDARY if fchi == 0 else NO_WITNESS,
        "witness_c": c if fchi <= 0 else None,
    }
    code = EXIT_OK
    if (g, d) == (2, 1):
        verdict = find_destabilizer(m)
        rec["verdict"] = verdict.kind
        rec["witness_c"] = verdict.witness_c
        closed = closed_form_relative_futaki(m, c)
        printed = paper_expansion_coefficients(m, c)
        fitted = fitted_expansions(hd)
        rec["F_chi_closed_form"] = closed
        rec["expansions_match"] = all(fitted[k] == getattr(printed, k) for k in fitted)
        rec["match"] = closed == fchi and rec["expansions_match"]
        if not rec["match"]:
            code = EXIT_MISMATCH
    return Report(
        "example",
        {"m": m, "c": c, "g": g, "d": d},
        [rec],
        exit_code=code,
    )


SCAN_COLUMNS = ("m", "verdict", "witness_c", "F_chi_num", "F_chi_den", "F_chi_approx", "tf_exists")


def run_scan(ms: Sequence[Fraction], denominator_bound: int = 50) -> Report:
    if denominator_bound < 1:
        raise BadInput("--bound must be >= 1")
    records = []
    for m in sorted(ms):
        v = find_destabilizer(m, denominator_bound)
        tf = tf_equivalence_check(m)
        records.append({
            "m": m,
            "verdict": v.kind,
            "witness_c": v.witness_c,
            "F_chi": v.value,
            "F_chi_num": None if v.value is None else v.value.numerator,
            "F_chi_den": None if v.value is None else v.value.denominator,
            "F_chi_approx": None if v.value is None else approx(v.value),
            "certified": v.certified,
            "tf_exists": tf.exists,
        })
    return Report(
        "scan",
        {"m_values": list(ms), "denominator_bound": denominator_bound},
        records,
        csv_columns=SCAN_COLUMNS,
    )


def run_critical(precision: Fraction) -> Report:
    if precision <= 0:
        raise BadInput("--precision must be positive")
    lo, hi = critical_parameter(precision)
    rec = {
        "lo": lo,
        "hi": hi,
        "width": hi - lo,
        "lo_approx": approx(lo),
        "hi_approx": approx(hi),
        "discriminant": str(discriminant_polynomial()),
    }
    return Report("critical", {"precision": precision}, [rec])


def run_verify(trials: int, seed: int) -> Report:
    if trials < 1:
        raise BadInput("--trials must be >= 1")
    tallies = run_properties(trials, seed)
    records = [{"property": t.name, "passed": t.passed, "failed": t.failed} for t in tallies]
    failed = sum(t.failed for t in tallies)
    return Report(
        "verify",
        {"trials": trials, "seed": seed},
        records,
        summary={"all_passed": failed == 0},
        csv_columns=("property", "passed", "failed"),
        exit_code=EXIT_OK if failed == 0 else EXIT_PROPERTY,
    )


# -- argument handling -------------------------------------------------------

DEFAULTS = {
    "m": "2", "c": "1", "g": "2", "d": "1", "bound": "50", "m_range": "1:1:30",
    "precision": "1/1000", "trials": "25", "seed": "7", "format": "table", "output": None,
}


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise BadInput(f"--config: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise BadInput(f"{path}:{lineno}: expected key = value")
        key = key.strip().replace("-", "_")
        if key not in DEFAULTS:
            raise BadInput(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=sorted(FORMATTERS), default=None)
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    common.add_argument("--config", default=None, help="key = value file; flags override it")

    parser = argparse.ArgumentParser(prog="kstab", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", parents=[common], help="full invariant computation for one (m, c)")
    ex.add_argument("--m", default=None)
    ex.add_argument("--c", default=None)
    ex.add_argument("--g", default=None, help="genus of the base curve (>= 2)")
    ex.add_argument("--d", default=None, help="degree of the line bundle (>= 1)")

    sc = sub.add_parser("scan", parents=[common], help="search destabilizers over a range of m")
    sc.add_argument("--m-range", dest="m_range", default=None, help="lo:step:hi or comma list")
    sc.add_argument("--bound", default=None, help="largest denominator tried for c")

    cr = sub.add_parser("critical", parents=[common], help="isolate the instability threshold in m")
    cr.add_argument("--precision", default=None)

    ve = sub.add_parser("verify", parents=[common], help="seeded property checks")
    ve.add_argument("--trials", default=None)
    ve.add_argument("--seed", default=None)
    return parser


def _settings(args: argparse.Namespace) -> dict[str, Any]:
    settings = dict(DEFAULTS)
    if args.config:
        settings.update(read_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    if settings["format"] not in FORMATTERS:
        raise BadInput(f"unknown format {settings['format']!r}")
    return settings


def dispatch(command: str, s: dict[str, Any]) -> Report:
    if command == "example":
        return run_example(_rat(s["m"], "m"), _rat(s["c"], "c"), _int(s["g"], "g"), _int(s["d"], "d"))
    if command == "scan":
        return run_scan(parse_m_range(s["m_range"]), _int(s["bound"], "bound"))
    if command == "critical":
        return run_critical(_rat(s["precision"], "precision"))
    if command == "verify":
        return run_verify(_int(s["trials"], "trials"), _int(s["seed"], "seed"))
    raise BadInput(f"unknown command {command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; that code is reserved here.
        return EXIT_OK if exc.code == 0 else EXIT_BAD_INPUT
    try:
        settings = _settings(args)
        report = dispatch(args.command, settings)
    except BadInput as exc:
        print(f"kstab: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    text = FORMATTERS[settings["format"]](report)
    if settings["output"]:
        with open(settings["output"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report.exit_code == EXIT_MISMATCH:
        print("kstab: error: pipeline disagrees with the closed form", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
