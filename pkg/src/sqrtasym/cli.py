"""Command line front end: ``sqrtasym expand|verify|corpus``.

Exit codes: 0 success, 1 a verification verdict failed, 2 the problem file
could not be parsed, 3 the input violates a precondition of the engine.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import acceptance
from .corpus import CORPUS
from .equivariant import expand
from .errors import DegenerateWarning, PreconditionError, SqrtAsymError
from .models import EquivariantEnvelope, InteriorPole, RawLocalMap, SqrtHolomorphic, SqrtPole
from .series import DEFAULT_PRECISION, EXACT, FLOAT, RationalFunction, TruncatedSeries
from .verify import VerifyConfig, expansion_table, verify_model

MODES = ("sqrt", "pole", "general-alpha", "equivariant", "interior-pole", "uniformize")
KEYS = {
    "name", "mode", "h", "principal", "alpha", "R", "Rprime", "d", "r", "M",
    "lambda", "g", "sheet", "numeric", "K", "nmax", "precision", "outputs", "order",
}
OUTPUT_KEYS = {"report", "expansion", "csv"}


class SpecError(Exception):
    """Malformed problem file; the message names the offending location."""


@dataclass
class ProblemSpec:
    name: str
    mode: str
    model: Any
    K: int = 2
    nmax: int = 100
    precision: int = DEFAULT_PRECISION
    outputs: dict = field(default_factory=dict)
    closed_form: Optional[Any] = None


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SpecError(f"{where}: write rationals as strings like \"p/q\" or integers, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SpecError(f"{where}: cannot parse {x!r} as a rational") from None
    raise SpecError(f"{where}: expected a rational, got {type(x).__name__}")


def _rationals(xs, where: str) -> list:
    if not isinstance(xs, list) or not xs:
        raise SpecError(f"{where}: expected a non-empty list of rationals")
    return [_rational(x, f"{where}[{i}]") for i, x in enumerate(xs)]


def _int(x, where: str, lo: Optional[int] = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SpecError(f"{where}: expected an integer, got {x!r}")
    if lo is not None and x < lo:
        raise SpecError(f"{where}: must be >= {lo}")
    return x


def _jet(xs, where: str, numeric: bool, prec: int, order: Optional[int] = None) -> TruncatedSeries:
    cs = _rationals(xs, where)
    if order is not None:
        if order < len(cs) - 1:
            raise SpecError(f"{where}: {len(cs)} coefficients exceed order {order}")
        cs += [Fraction(0)] * (order + 1 - len(cs))
    return TruncatedSeries(tuple(cs), FLOAT if numeric else EXACT, prec)


def _observable(x, where: str, numeric: bool, prec: int):
    if x is None:
        return None
    if isinstance(x, list):
        return RationalFunction(tuple(_rationals(x, where)))
    if isinstance(x, dict):
        extra = set(x) - {"num", "den", "jet"}
        if extra:
            raise SpecError(f"{where}: unknown key(s) {sorted(extra)}")
        if "jet" in x:
            if len(x) != 1:
                raise SpecError(f"{where}: 'jet' excludes 'num'/'den'")
            return _jet(x["jet"], f"{where}.jet", numeric, prec)
        if "num" not in x:
            raise SpecError(f"{where}: rational observable needs 'num'")
        num = _rationals(x["num"], f"{where}.num")
        den = _rationals(x.get("den", [1]), f"{where}.den")
        if den[0] == 0:
            raise SpecError(f"{where}.den[0]: denominator must not vanish at 0")
        return RationalFunction(tuple(num), tuple(den))
    raise SpecError(f"{where}: expected a list, {{num, den}} or {{jet}}")


def _require(raw: dict, key: str, mode: str):
    if key not in raw:
        raise SpecError(f"mode {mode!r}: missing required key {key!r}")
    return raw[key]


def parse_spec(raw: Any, source: str = "<spec>") -> ProblemSpec:
    """Validate a decoded JSON problem description and build its model."""
    if not isinstance(raw, dict):
        raise SpecError(f"{source}: top level must be an object")
    unknown = set(raw) - KEYS
    if unknown:
        raise SpecError(f"{source}: unknown key(s) {sorted(unknown)}")
    mode = raw.get("mode")
    if mode not in MODES:
        raise SpecError(f"{source}: 'mode' must be one of {list(MODES)}, got {mode!r}")
    prec = _int(raw.get("precision", DEFAULT_PRECISION), "precision", 53)
    numeric = raw.get("numeric", False)
    if not isinstance(numeric, bool):
        raise SpecError("numeric: expected true or false")
    K = _int(raw.get("K", 2), "K", 0)
    nmax = _int(raw.get("nmax", 100), "nmax", 1)
    outputs = raw.get("outputs", {})
    if not isinstance(outputs, dict) or set(outputs) - OUTPUT_KEYS:
        raise SpecError(f"outputs: expected an object with keys among {sorted(OUTPUT_KEYS)}")
    d = _int(raw.get("d", 1), "d", 1)
    r = _int(raw.get("r", 0), "r", 0)
    if r >= d:
        raise SpecError("r: must satisfy 0 <= r < d")
    h = _observable(raw.get("h"), "h", numeric, prec)
    principal = _rationals(raw["principal"], "principal") if "principal" in raw else None
    if "M" in raw and principal is not None and _int(raw["M"], "M", 1) != len(principal):
        raise SpecError(f"M: {raw['M']} disagrees with the {len(principal)} principal coefficients")
    R = _rational(raw.get("R", 1), "R")

    def inner_model():
        if principal is not None:
            return SqrtPole(tuple(principal), h)
        if h is None:
            raise SpecError(f"mode {mode!r}: need 'h' or 'principal'")
        return SqrtHolomorphic(h, _rational(raw.get("alpha", "1/2"), "alpha"))

    if mode == "sqrt":
        _require(raw, "h", mode)
        model = SqrtHolomorphic(h)
    elif mode == "general-alpha":
        _require(raw, "h", mode)
        model = SqrtHolomorphic(h, _rational(_require(raw, "alpha", mode), "alpha"))
    elif mode == "pole":
        _require(raw, "principal", mode)
        model = SqrtPole(tuple(principal), h)
    elif mode == "equivariant":
        model = EquivariantEnvelope(inner_model(), d, r, R)
    elif mode == "interior-pole":
        _require(raw, "principal", mode)
        rest = EquivariantEnvelope(SqrtHolomorphic(h), d, r, R) if h is not None else None
        model = InteriorPole(
            _rational(_require(raw, "Rprime", mode), "Rprime"), tuple(principal), d, r, rest=rest,
            R=R if "R" in raw else None,
        )
    else:  # uniformize
        # with "order", lambda and g are polynomials padded to that order
        order = _int(raw["order"], "order", 3) if "order" in raw else None
        lam = _jet(_require(raw, "lambda", mode), "lambda", numeric, prec, order)
        g = _jet(_require(raw, "g", mode), "g", numeric, prec, order)
        sheet = _int(raw.get("sheet", 1), "sheet")
        M = _int(raw.get("M", 0), "M", 0)
        model = RawLocalMap(lam, g, R if "R" in raw else _rational(raw["lambda"][0], "lambda[0]"), M, sheet)
    return ProblemSpec(raw.get("name", mode), mode, model, K, nmax, prec, outputs)


def load_spec(arg: str) -> ProblemSpec:
    """``arg`` is a JSON file path or ``builtin:NAME`` for a corpus model."""
    if arg.startswith("builtin:") or (arg in CORPUS and not Path(arg).exists()):
        name = arg.split(":", 1)[-1]
        if name not in CORPUS:
            raise SpecError(f"{arg}: unknown built-in; try `sqrtasym corpus list`")
        e = CORPUS[name]
        return ProblemSpec(name, "builtin", e.model, e.K, closed_form=e.closed_form)
    try:
        text = Path(arg).read_text()
    except OSError as exc:
        raise SpecError(f"{arg}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{arg}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_spec(raw, arg)


# ---------------------------------------------------------------------------
# rendering


def _expansion_text(name: str, table: dict) -> str:
    lines = [f"{name}: a_(d n + r) R^(d n) with R={table['radius']}, d={table['period']}, r={table['residue']}"]
    for i, c in enumerate(table["polynomial"]):
        lines.append(f"  n^{i:<8} {c}")
    for t in table["terms"]:
        lines.append(f"  n^(-{t['exponent']})  {t['coefficient']}  ~ {t['decimal']}")
    rem = table["remainder_exponent"]
    lines.append("  exact (no power-law remainder)" if rem == "null" else f"  + O(n^(-{rem}))")
    for note in table["notes"]:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def _expansion_csv(table: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "exponent", "coefficient", "decimal"])
    for i, c in enumerate(table["polynomial"]):
        w.writerow(["polynomial", -i, c, ""])
    for t in table["terms"]:
        w.writerow(["term", t["exponent"], t["coefficient"], t["decimal"]])
    return buf.getvalue()


def _report_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "exact", "predicted", "residual"])
    w.writerows(report.csv_rows())
    return buf.getvalue()


def _report_text(report) -> str:
    lines = [f"{report.model_id}: {'PASS' if report.passed else 'FAIL'}  (n in {report.n_range})"]
    for k, v in sorted(report.verdicts.items()):
        lines.append(f"  {'ok ' if v else 'BAD'} {k}")
    if "residual" in report.slopes:
        s = report.slopes["residual"]
        lines.append(f"  residual slope {s['slope']} (target {s['target']}) {s['note']}".rstrip())
    if "geometric_ratio" in report.slopes:
        lines.append(f"  geometric ratio {report.slopes['geometric_ratio']}")
    if report.fitted:
        f = report.fitted
        lines.append(f"  fitted constant at n^(-{f['exponent']}): {f['fitted']} vs engine {f['engine']}")
    for n in report.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _apply_overrides(spec: ProblemSpec, args) -> ProblemSpec:
    if getattr(args, "order", None) is not None:
        spec.K = args.order
    if getattr(args, "nmax", None) is not None:
        spec.nmax = args.nmax
    if getattr(args, "precision", None) is not None:
        spec.precision = args.precision
    return spec


def cmd_expand(args) -> int:
    spec = _apply_overrides(load_spec(args.spec), args)
    table = expansion_table(expand(spec.model, spec.K, prec=spec.precision), spec.precision)
    table = {"name": spec.name, "K": spec.K, **table}
    if "expansion" in spec.outputs:
        Path(spec.outputs["expansion"]).write_text(json.dumps(table, sort_keys=True, indent=2) + "\n")
    if args.format == "json":
        _emit(json.dumps(table, sort_keys=True, indent=2) + "\n", args.out)
    elif args.format == "csv":
        _emit(_expansion_csv(table), args.out)
    else:
        _emit(_expansion_text(spec.name, table), args.out)
    return 0


def cmd_verify(args) -> int:
    spec = _apply_overrides(load_spec(args.spec), args)
    cfg = VerifyConfig(K=spec.K, oracle_nmax=spec.nmax, prec=spec.precision)
    report = verify_model(spec.model, cfg, spec.name, spec.closed_form)
    outs = spec.outputs
    if "report" in outs:
        Path(outs["report"]).write_text(report.to_json() + "\n")
    if "csv" in outs:
        Path(outs["csv"]).write_text(_report_csv(report))
    if "expansion" in outs:
        Path(outs["expansion"]).write_text(json.dumps(report.expansion, sort_keys=True, indent=2) + "\n")
    if args.format == "json":
        _emit(report.to_json() + "\n", args.out)
    elif args.format == "csv":
        _emit(_report_csv(report), args.out)
    else:
        _emit(_expansion_text(spec.name, report.expansion) + _report_text(report), args.out)
    return 0 if report.passed else 1


def cmd_corpus(args) -> int:
    if args.action == "list":
        _emit("".join(f"{name:24s} {e.description}\n" for name, e in CORPUS.items()), args.out)
        return 0
    reports, dt = acceptance.corpus_reports()
    results = acceptance.run_all((reports, dt)) if not args.models_only else []
    ok = all(r.passed for r in reports) and all(c.passed for c in results)
    if args.format == "json":
        payload = {
            "models": {r.model_id: {"passed": r.passed, "verdicts": r.verdicts} for r in reports},
            "acceptance": [
                {"number": c.number, "title": c.title, "passed": c.passed, "detail": c.detail} for c in results
            ],
            "passed": ok,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        text = "".join(_report_text(r) for r in reports)
        text += "".join(c.line() + "\n" for c in results)
        text += f"overall: {'PASS' if ok else 'FAIL'}\n"
        _emit(text, args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sqrtasym", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, verify: bool):
        sp.add_argument("spec", help="JSON problem file or builtin:NAME")
        sp.add_argument("--order", "-K", type=int, help="expansion order K")
        sp.add_argument("--precision", type=int, help="working precision in bits")
        if verify:
            sp.add_argument("--nmax", type=int, help="largest n for the exact/numeric oracle comparison")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", help="write to this file instead of stdout")

    common(sub.add_parser("expand", help="print the asymptotic expansion"), False)
    common(sub.add_parser("verify", help="check the expansion against exact and numeric oracles"), True)
    c = sub.add_parser("corpus", help="built-in models")
    c.add_argument("action", choices=("list", "run"))
    c.add_argument("--models-only", action="store_true", help="skip the acceptance checks")
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"expand": cmd_expand, "verify": cmd_verify, "corpus": cmd_corpus}[args.command]
    with warnings.catch_warnings():
        warnings.simplefilter("always", DegenerateWarning)
        try:
            return handler(args)
        except SpecError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except (PreconditionError, SqrtAsymError) as exc:
            print(f"precondition violated: {exc}", file=sys.stderr)
            return 3


if __name__ == "__main__":
    sys.exit(main())
