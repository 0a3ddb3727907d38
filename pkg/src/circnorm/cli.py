"""Command line front end: ``circnorm {seq,sum,norm,eig,check,compare,batch}``.

Exit codes: 0 certified exact value, 2 input error, 3 numeric value only,
4 a published formula disagrees with the reference norm.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import oracle
from .circulant import FloatRangeError, spectral_norm_dft
from .closed_forms import (
    Formula,
    NormResult,
    applicable_formulas,
    check_autocorrelation,
    evaluate_published_formula,
    norm_exact,
    norm_horadam,
)
from .horadam import BRANCH_LABELS, RecurrenceParams, generate, lemma_branch, sum_closed_form

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_DISAGREE = 4


class InputError(Exception):
    pass


def format_exact(value: Fraction) -> str:
    """``"12"`` or ``"-7/3"``; ``Fraction(format_exact(v)) == v``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_approx(value: float, bound: float) -> str:
    return f"~{value!r} ± {bound:.1e}"


def format_value(result: NormResult) -> str:
    if result.exact:
        return format_exact(result.value_exact)
    return format_approx(result.value_approx, result.error_bound)


def parse_row(text: str) -> list[Fraction]:
    tokens = [t.strip() for t in text.split(",")]
    if not tokens or any(not t for t in tokens):
        raise InputError(f"malformed row {text!r}")
    try:
        return [Fraction(t) for t in tokens]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"malformed row {text!r}") from None


def _check_n(n: int):
    if n < 1:
        raise InputError("n must be ≥ 1")


def _params(args) -> RecurrenceParams:
    missing = [name for name in "abpqn" if getattr(args, name) is None]
    if missing:
        raise InputError("missing " + ", ".join("-" + m for m in missing))
    _check_n(args.n)
    return RecurrenceParams(args.a, args.b, args.p, args.q)


def _config(args) -> oracle.OracleConfig:
    return oracle.OracleConfig(max_n=args.max_oracle_n)


def certificate_dict(cert) -> dict:
    out = {
        "nonnegative": cert.nonnegative,
        "autocorrelation_ok": cert.autocorrelation_ok,
        "failing_shift": cert.failing_shift,
        "correlations": [format_exact(c) for c in cert.correlations],
    }
    if cert.equal_sums is not None:
        out["equal_sums"] = format_exact(cert.equal_sums)
    return out


def norm_record(input_echo: dict, result: NormResult, disagreements=()) -> dict:
    return {
        "input": input_echo,
        "method": str(result.method),
        "exact": result.exact,
        "value": format_value(result),
        "certificate": certificate_dict(result.certificate),
        "disagreements": list(disagreements),
    }


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _echo_str(echo: dict) -> str:
    if "row" in echo:
        return "row=" + ",".join(echo["row"])
    return " ".join(f"{k}={v}" for k, v in echo.items())


CSV_FIELDS = ["input", "method", "exact", "value", "certificate"]


def _csv_line(fields) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(fields)
    return buf.getvalue().rstrip("\n")


def _csv_fields(record: dict) -> list:
    return [
        _echo_str(record["input"]),
        record["method"],
        "true" if record["exact"] else "false",
        record["value"],
        certificate_summary_from_dict(record["certificate"]),
    ]


def certificate_summary_from_dict(cert: dict) -> str:
    if cert["nonnegative"]:
        return "nonnegative"
    if cert["autocorrelation_ok"]:
        return "autocorrelation sums all >= 0"
    j = cert["failing_shift"]
    return f"fails at shift j={j} (sum = {cert['correlations'][j - 1]})"


def render_record(record: dict, fmt: str) -> str:
    if fmt == "json":
        return _dumps(record)
    if fmt == "csv":
        return _csv_line(CSV_FIELDS) + "\n" + _csv_line(_csv_fields(record))
    lines = [
        f"method: {record['method']}",
        f"value: {record['value']}",
        f"certificate: {certificate_summary_from_dict(record['certificate'])}",
    ]
    for d in record["disagreements"]:
        lines.append(
            f"disagreement: {d['formula']} = {d['formula_value']} vs {d['reference']} = {d['reference_value']}"
        )
    return "\n".join(lines)


# -- subcommands ------------------------------------------------------------

def cmd_seq(args, out) -> int:
    params = _params(args)
    terms = [str(t) for t in generate(params, args.n)]
    if args.format == "json":
        print(_dumps({"terms": terms}), file=out)
    elif args.format == "csv":
        print(",".join(terms), file=out)
    else:
        print(" ".join(terms), file=out)
    return EXIT_OK


def cmd_sum(args, out) -> int:
    params = _params(args)
    total = sum_closed_form(params, args.n)
    label = BRANCH_LABELS[lemma_branch(params.p, params.q)]
    if args.format == "json":
        print(_dumps({"sum": str(total), "branch": label}), file=out)
    elif args.format == "csv":
        print(_csv_line(["sum", "branch"]), file=out)
        print(_csv_line([total, label]), file=out)
    else:
        print(f"{total} (branch: {label})", file=out)
    return EXIT_OK


def _row_or_params(args):
    given = [name for name in "abpqn" if getattr(args, name) is not None]
    if args.row is not None and given:
        raise InputError("give either --row or -a -b -p -q -n, not both")
    if args.row is None and not given:
        raise InputError("give either --row or -a -b -p -q -n")
    if args.row is not None:
        return None, parse_row(args.row)
    return _params(args), None


def cmd_norm(args, out) -> int:
    params, row = _row_or_params(args)
    config = _config(args)
    if row is not None:
        result = norm_exact(row, debug_oracle=args.debug_oracle, config=config)
        echo = {"row": [format_exact(v) for v in row]}
    else:
        result = norm_horadam(params, args.n, debug_oracle=args.debug_oracle, config=config)
        echo = _params_echo(params, args.n)
    print(render_record(norm_record(echo, result), args.format), file=out)
    return EXIT_OK if result.exact else EXIT_NUMERIC


def _params_echo(params: RecurrenceParams, n: int) -> dict:
    return {"a": str(params.a), "b": str(params.b), "p": str(params.p), "q": str(params.q), "n": str(n)}


def _format_complex(z, bound: float) -> str:
    re = 0.0 if abs(z.re) <= bound else z.re
    im = 0.0 if abs(z.im) <= bound else z.im
    return f"{re:.12g}{im:+.12g}i"


def cmd_eig(args, out) -> int:
    if args.row is None:
        raise InputError("eig needs --row")
    row = parse_row(args.row)
    spectrum = spectral_norm_dft(row)
    bound = spectrum.error_bound
    texts = [_format_complex(z, bound) for z in spectrum.eigenvalues]
    if args.format == "json":
        print(_dumps({
            "order": "i=1..n",
            "eigenvalues": [{"re": z.re, "im": z.im} for z in spectrum.eigenvalues],
            "error_bound": bound,
        }), file=out)
    elif args.format == "csv":
        print(_csv_line(["i", "re", "im"]), file=out)
        for i, z in enumerate(spectrum.eigenvalues, start=1):
            print(_csv_line([i, repr(z.re), repr(z.im)]), file=out)
    else:
        print(", ".join(texts), file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    if args.row is None:
        raise InputError("check needs --row")
    row = parse_row(args.row)
    cert = check_autocorrelation(row)
    if args.format == "json":
        print(_dumps(certificate_dict(cert)), file=out)
    elif args.format == "csv":
        print(_csv_line(["j", "correlation"]), file=out)
        for j, c in enumerate(cert.correlations, start=1):
            print(_csv_line([j, format_exact(c)]), file=out)
    else:
        if cert.autocorrelation_ok:
            print(f"holds for all shifts j=1..{len(row)}", file=out)
        else:
            j = cert.failing_shift
            print(f"fails at shift j={j} (sum = {format_exact(cert.correlations[j - 1])})", file=out)
        print("correlations: " + ", ".join(format_exact(c) for c in cert.correlations), file=out)
    return EXIT_OK


def relative_gap(value: float, reference: float) -> float:
    scale = max(abs(value), abs(reference))
    return 0.0 if scale == 0 else abs(value - reference) / scale


def compare(params: RecurrenceParams, n: int, tol: float = 1e-9,
            config: oracle.OracleConfig = oracle.DEFAULT_CONFIG, debug_oracle: bool = False) -> dict:
    """Evaluate all applicable published formulas against the reference norm.

    The reference is the certified exact norm when one exists, otherwise the
    power-iteration oracle (or the DFT value beyond the oracle size cap).
    """
    result = norm_horadam(params, n, debug_oracle=debug_oracle, config=config)
    window = generate(params, n).terms
    oracle_value = None
    try:
        if n <= config.max_n:
            oracle_value = oracle.max_singular_value(window, tol=config.tol, max_iter=config.max_iter,
                                                     max_n=config.max_n).max_singular
    except FloatRangeError:
        pass

    if result.exact:
        reference, reference_value = "CERTIFIED", float(result.value_exact)
        reference_text = format_exact(result.value_exact)
    elif oracle_value is not None:
        reference, reference_value, reference_text = "ORACLE", oracle_value, repr(oracle_value)
    else:
        reference, reference_value = "DFT", result.value_approx
        reference_text = repr(result.value_approx)

    formulas, disagreements = [], []
    for formula in applicable_formulas(params):
        try:
            value = evaluate_published_formula(formula, params, n)
        except FloatRangeError:
            continue
        exact = isinstance(value, Fraction)
        text = format_exact(value) if exact else repr(value)
        formulas.append({"formula": str(formula), "value": text, "exact": exact})
        if exact and result.exact:
            differs = value != result.value_exact
        else:
            differs = relative_gap(float(value), reference_value) > tol
        if differs:
            disagreements.append({
                "formula": str(formula),
                "formula_value": text,
                "reference": reference,
                "reference_value": reference_text,
                "relative_gap": relative_gap(float(value), reference_value),
            })
    oracle_agrees = None
    if oracle_value is not None and result.exact:
        oracle_agrees = relative_gap(oracle_value, reference_value) <= tol
    record = norm_record(_params_echo(params, n), result, disagreements)
    record["formulas"] = formulas
    record["oracle"] = None if oracle_value is None else repr(oracle_value)
    record["oracle_agrees"] = oracle_agrees
    return record


def cmd_compare(args, out) -> int:
    params = _params(args)
    record = compare(params, args.n, tol=args.tol, config=_config(args), debug_oracle=args.debug_oracle)
    if args.format == "json":
        print(_dumps(record), file=out)
    elif args.format == "csv":
        print(_csv_line(["formula", "value", "agrees"]), file=out)
        bad = {d["formula"] for d in record["disagreements"]}
        for f in record["formulas"]:
            print(_csv_line([f["formula"], f["value"], "false" if f["formula"] in bad else "true"]), file=out)
    else:
        print(render_record(record, "plain"), file=out)
        if record["oracle"] is not None:
            print(f"oracle: {record['oracle']}", file=out)
        for f in record["formulas"]:
            print(f"{f['formula']}: {f['value']}", file=out)
    if record["disagreements"]:
        return EXIT_DISAGREE
    return EXIT_OK if record["exact"] else EXIT_NUMERIC


BATCH_HEADER = ["a", "b", "p", "q", "n"]
BATCH_CSV_FIELDS = BATCH_HEADER + ["method", "exact", "value", "nonnegative", "autocorrelation_ok", "failing_shift"]


def read_batch(stream):
    """Yield ``(line_number, RecurrenceParams, n)`` or ``(line_number, None, message)``."""
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("empty batch file") from None
    if [h.strip() for h in header] != BATCH_HEADER:
        raise InputError(f"batch header must be {','.join(BATCH_HEADER)}, got {','.join(header)}")
    for fields in reader:
        line = reader.line_num
        if not fields or all(not f.strip() for f in fields):
            continue
        if len(fields) != 5:
            yield line, None, f"expected 5 fields, got {len(fields)}"
            continue
        try:
            a, b, p, q, n = (int(f.strip()) for f in fields)
        except ValueError:
            yield line, None, f"non-integer field in {','.join(fields)!r}"
            continue
        if n < 1:
            yield line, None, "n must be ≥ 1"
            continue
        yield line, RecurrenceParams(a, b, p, q), n


def _batch_one(job):
    params, n, debug_oracle, max_n = job
    try:
        result = norm_horadam(params, n, debug_oracle=debug_oracle, config=oracle.OracleConfig(max_n=max_n))
    except FloatRangeError as exc:
        return None, str(exc)
    return norm_record(_params_echo(params, n), result), None


def cmd_batch(args, out) -> int:
    with open(args.path, newline="", encoding="utf-8-sig") as fh:
        rows = list(read_batch(fh))
    skipped = 0
    jobs, lines = [], []
    for line, params, payload in rows:
        if params is None:
            print(f"line {line}: {payload}; skipped", file=sys.stderr)
            skipped += 1
            continue
        jobs.append((params, payload, args.debug_oracle, args.max_oracle_n))
        lines.append(line)
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_batch_one, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    else:
        outcomes = [_batch_one(job) for job in jobs]

    numeric = False
    if args.format == "csv":
        print(_csv_line(BATCH_CSV_FIELDS), file=out)
    for line, (record, error) in zip(lines, outcomes):
        if record is None:
            print(f"line {line}: {error}; skipped", file=sys.stderr)
            skipped += 1
            continue
        numeric = numeric or not record["exact"]
        if args.format == "json":
            print(_dumps(record), file=out)
        elif args.format == "csv":
            cert = record["certificate"]
            echo = record["input"]
            print(_csv_line([echo[k] for k in BATCH_HEADER] + [
                record["method"], "true" if record["exact"] else "false", record["value"],
                cert["nonnegative"], cert["autocorrelation_ok"],
                "" if cert["failing_shift"] is None else cert["failing_shift"],
            ]), file=out)
        else:
            print(f"{_echo_str(record['input'])}: {record['method']} {record['value']}", file=out)
    if skipped:
        return EXIT_INPUT
    return EXIT_NUMERIC if numeric else EXIT_OK


# -- parser -----------------------------------------------------------------

def _positive_float(text: str) -> float:
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "csv", "json"], default="plain")
    common.add_argument("--tol", type=_positive_float, default=1e-9,
                        help="relative tolerance for declaring two values different")
    common.add_argument("--max-oracle-n", type=int, default=512,
                        help="largest n for which the power-iteration oracle runs")
    common.add_argument("--debug-oracle", action="store_true",
                        help="cross-check every certified value against the oracle")

    seq_args = argparse.ArgumentParser(add_help=False)
    for flag in "abpq":
        seq_args.add_argument(f"-{flag}", type=int)
    seq_args.add_argument("-n", type=int)

    row_args = argparse.ArgumentParser(add_help=False)
    row_args.add_argument("--row", help="comma-separated first row, e.g. 2,2,-1 or 1/2,3 "
                                        "(write --row=-1,2 when it starts with a minus sign)")

    parser = argparse.ArgumentParser(prog="circnorm", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("seq", parents=[common, seq_args], help="print h0..h[n-1]").set_defaults(func=cmd_seq)
    sub.add_parser("sum", parents=[common, seq_args], help="closed-form h0+...+h[n-1]").set_defaults(func=cmd_sum)
    sub.add_parser("norm", parents=[common, seq_args, row_args],
                   help="spectral norm of C(h) or C(row)").set_defaults(func=cmd_norm)
    sub.add_parser("eig", parents=[common, row_args],
                   help="eigenvalues lam_1..lam_n of C(row)").set_defaults(func=cmd_eig)
    sub.add_parser("check", parents=[common, row_args],
                   help="cyclic autocorrelation condition").set_defaults(func=cmd_check)
    sub.add_parser("compare", parents=[common, seq_args],
                   help="published formulas vs certified norm and oracle").set_defaults(func=cmd_compare)
    batch = sub.add_parser("batch", parents=[common], help="norms for every row of a CSV file a,b,p,q,n")
    batch.add_argument("path")
    batch.add_argument("--jobs", type=int, default=1)
    batch.set_defaults(func=cmd_batch)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, FloatRangeError, ValueError, OSError) as exc:
        print(f"circnorm {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
