"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 infeasible construction,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import datasets
from .anova import summarize
from .distributions import verify_two_group_identity
from .exceptions import DomainError, InfeasibleSpecError, NumericalError
from .generators import FamilySpec, build_family_sample, h_sign_table, sign_ranges
from .mlr import RegressionData, classify_contradiction, drop_predictor, ols_fit
from .report import full_report
from .symmetric import verify_boundary
from .tukey import SUPPORTED_ALPHAS, q_monotone_threshold

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _to_json(obj) -> str:
    """JSON with every float written at 17 significant digits; non-finite floats become strings."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    x = float(obj)
    return _num(x) if math.isfinite(x) else json.dumps(_num(x))


def _csv(rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for row in rows:
        writer.writerow([v if isinstance(v, str) else _num(v) for v in row])
    return out.getvalue()


def _read_input(args) -> str:
    if args.fixture:
        return datasets.table_text(args.fixture)
    if args.input is None:
        raise DomainError("give an input CSV path or --fixture NAME")
    if args.input == "-":
        return sys.stdin.read()
    try:
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {args.input}: {exc.strerror}") from None


# ---------------------------------------------------------------- compare


def _report_text(report, sample) -> str:
    tab = report.anova
    summaries, grand = summarize(sample)
    lines = [f"groups: {sample.k}, observations: {sample.n}, grand mean: {grand:.6f}", ""]
    lines.append(f"{'group':<12}{'n':>5}{'mean':>15}{'sd':>15}")
    for s in summaries:
        sd = "NA" if s.sd is None else f"{s.sd:.6f}"
        lines.append(f"{s.label:<12}{s.size:>5}{s.mean:>15.6f}{sd:>15}")
    lines += ["", "ANOVA",
              f"{'':<10}{'Df':>4}{'Sum Sq':>15}{'Mean Sq':>15}{'F value':>12}{'Pr(>F)':>12}",
              f"{'group':<10}{tab.df1:>4}{tab.ss_tr:>15.3f}{tab.ms_tr:>15.3f}{tab.f_stat:>12.5f}{tab.p_value:>12.6g}",
              f"{'Residuals':<10}{tab.df2:>4}{tab.sse:>15.3f}{tab.mse:>15.3f}",
              f"reject equal means at alpha={report.alpha:g}: {'yes' if report.anova_reject else 'no'}",
              "", "Tukey-Kramer",
              f"{'pair':<22}{'diff':>14}{'lwr':>14}{'upr':>14}{'p adj':>14}  reject"]
    for r in report.tk_rows:
        lines.append(f"{r.label:<22}{r.diff:>14.7f}{r.lwr:>14.7f}{r.upr:>14.7f}{r.p_adj:>14.10f}  "
                     f"{'yes' if r.reject else 'no'}")
    lines += ["", "Two-group restrictions",
              f"{'pair':<10}{'ANOVA p':>14}{'modified TK p':>16}"]
    for r in report.restricted:
        lines.append(f"{f'({r.i},{r.j})':<10}{r.anova_p:>14.8f}{r.modified_tk_p:>16.8f}")
    lines += ["", f"case: {report.case_label.value}",
              f"contradiction: {'yes' if report.contradiction_flag else 'no'}"
              + (f" for pairs {', '.join(f'({i},{j})' for i, j in report.flagged_pairs)}"
                 if report.flagged_pairs else "")]
    return "\n".join(lines) + "\n"


def _report_csv(report) -> str:
    tab = report.anova
    rows = [["section", "term", "df", "sum_sq", "mean_sq", "f_stat", "p_value"],
            ["anova", "group", tab.df1, tab.ss_tr, tab.ms_tr, tab.f_stat, tab.p_value],
            ["anova", "residuals", tab.df2, tab.sse, tab.mse, "", ""]]
    out = _csv(rows) + "\n"
    rows = [["section", "i", "j", "label", "diff", "lwr", "upr", "p_adj", "reject"]]
    rows += [["tk", r.i, r.j, r.label, r.diff, r.lwr, r.upr, r.p_adj, r.reject] for r in report.tk_rows]
    out += _csv(rows) + "\n"
    rows = [["section", "i", "j", "anova_p", "anova_reject", "modified_tk_p", "modified_tk_reject"]]
    rows += [["restricted", r.i, r.j, r.anova_p, r.anova_reject, r.modified_tk_p, r.modified_tk_reject]
             for r in report.restricted]
    out += _csv(rows) + "\n"
    flagged = ";".join(f"{i}-{j}" for i, j in report.flagged_pairs)
    out += _csv([["section", "case_label", "contradiction", "flagged_pairs"],
                 ["verdict", report.case_label.value, report.contradiction_flag, flagged]])
    return out


def _render_report(report, sample, fmt) -> str:
    if fmt == "json":
        return _to_json(report.to_dict()) + "\n"
    if fmt == "csv":
        return _report_csv(report)
    return _report_text(report, sample)


def cmd_compare(args) -> str:
    sample = datasets.parse_grouped(_read_input(args))
    return _render_report(full_report(sample, args.alpha), sample, args.format)


# ---------------------------------------------------------------- identity


def _float_list(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def cmd_identity(args) -> str:
    nus = range(1, args.nu_max + 1)
    dev = verify_two_group_identity(args.alpha_grid, nus)
    if args.format == "json":
        return _to_json({"alphas": args.alpha_grid, "nu_max": args.nu_max, "max_relative_deviation": dev}) + "\n"
    if args.format == "csv":
        return _csv([["nu_max", "max_relative_deviation"], [args.nu_max, dev]])
    return (f"alphas: {', '.join(f'{a:g}' for a in args.alpha_grid)}; nu = 1..{args.nu_max}\n"
            f"max |Q^2(alpha,2,nu) - 2 F_crit(alpha,1,nu)| / (2 F_crit) = {dev:.3e}\n")


# ---------------------------------------------------------------- search


def cmd_search(args) -> str:
    spec = FamilySpec(args.k, args.n, args.alpha, "case_1" if args.case == 1 else "case_2")
    sample, report = build_family_sample(spec, args.seed)
    sample_csv = datasets.format_grouped(sample)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(sample_csv)
    if args.format == "json":
        labels, values = sample.to_long()
        payload = {"sample": {"group": labels, "value": values}, "report": report.to_dict()}
        return _to_json(payload) + "\n"
    body = _render_report(report, sample, args.format)
    return body if args.output else sample_csv + "\n" + body


# ---------------------------------------------------------------- tables


def _fmt_span(span, k_max):
    lo, hi = span
    return f"k >= {lo}" if hi == k_max else (f"k = {lo}" if lo == hi else f"{lo} <= k <= {hi}")


def cmd_tables(args) -> str:
    if args.which == "thresholds":
        values = [q_monotone_threshold(a, l_max=args.l_max) for a in SUPPORTED_ALPHAS]
        if args.format == "json":
            return _to_json({"alphas": list(SUPPORTED_ALPHAS), "nu_min": values}) + "\n"
        if args.format == "csv":
            return _csv([["alpha", "nu_min"], *zip(SUPPORTED_ALPHAS, values)])
        lines = [f"Q(alpha, 2l, nu l) nondecreasing in l = 1..{args.l_max} when nu >= nu_min", ""]
        lines += [f"alpha = {a:<6g} nu >= {v}" for a, v in zip(SUPPORTED_ALPHAS, values)]
        return "\n".join(lines) + "\n"
    nu_grid = tuple(range(1, args.nu_max + 1)) + (10 ** 6,)
    table = h_sign_table(SUPPORTED_ALPHAS, args.k_max, nu_grid)
    if args.format == "csv":
        return _csv([["alpha", "k", "sign"], *[(a, k, s) for (a, k), s in sorted(table.items())]])
    if args.format == "json":
        return _to_json([{"alpha": a, "k": k, "sign": s} for (a, k), s in sorted(table.items())]) + "\n"
    lines = [f"sign of Q^2/F_crit - k over nu = 1..{args.nu_max} and nu = 1e6 (k = 3..{args.k_max})", "",
             f"{'alpha':<8}{'positive':<22}{'negative':<22}mixed"]
    for a in SUPPORTED_ALPHAS:
        runs = sign_ranges(table, a)
        cols = [", ".join(_fmt_span(s, args.k_max) for s in runs.get(sign, [])) or "-"
                for sign in ("positive", "negative")]
        mixed = ", ".join(str(k) for lo, hi in runs.get("mixed", []) for k in range(lo, hi + 1)) or "-"
        lines.append(f"{a:<8g}{cols[0]:<22}{cols[1]:<22}{mixed}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- symmetric


def cmd_symmetric(args) -> str:
    result = verify_boundary(args.which, args.a_max, args.alpha, strict=args.strict)
    payload = {"which": args.which, "a_max": args.a_max, "alpha": args.alpha, "strict": args.strict,
               "holds": result.holds, "counterexample": list(result.counterexample or []) or None,
               "checked": result.checked}
    if args.format == "json":
        return _to_json(payload) + "\n"
    if args.format == "csv":
        ce = result.counterexample or ("", "")
        return _csv([["which", "a_max", "strict", "holds", "counter_a", "counter_b", "checked"],
                     [args.which, args.a_max, args.strict, result.holds, ce[0], ce[1], result.checked]])
    status = "confirmed" if result.holds else f"counterexample at a={result.counterexample[0]}, b={result.counterexample[1]}"
    return (f"{args.which} boundary, a = 1..{args.a_max}, alpha = {args.alpha:g}, "
            f"{'strict' if args.strict else 'inclusive'} partial sums: {status} ({result.checked} cases)\n")


# ---------------------------------------------------------------- mlr


def _fit_text(fit, case, alpha) -> str:
    terms = ["(Intercept)", *fit.names]
    lines = [f"{'Coefficients':<14}{'Estimate':>15}{'Std. Error':>15}{'t value':>14}{'Pr(>|t|)':>14}"]
    for name, b, se, t, p in zip(terms, fit.coefficients, fit.std_errors, fit.t_values, fit.p_values):
        lines.append(f"{name:<14}{b:>15.9f}{se:>15.9f}{t:>14.8f}{p:>14.6g}")
    lines += ["", f"Residual standard error: {fit.residual_se:.9f} on {fit.df[1]} degrees of freedom",
              f"Multiple R-squared: {fit.r_squared:.9f}, Adjusted R-squared: {fit.adj_r_squared:.9f}",
              f"F-statistic: {fit.f_stat:.9f} on {fit.df[0]} and {fit.df[1]} DF, p-value: {fit.f_p_value:.9g}",
              "", f"case at alpha={alpha:g}: {case.value}"]
    return "\n".join(lines) + "\n"


def cmd_mlr(args) -> str:
    X, y, names, _ = datasets.parse_regression(_read_input(args), args.response)
    data = RegressionData(X, y, names)
    for col in args.drop or []:
        if col not in data.names:
            raise DomainError(f"unknown predictor {col!r}")
        data = drop_predictor(data, data.names.index(col) + 1)
    fit = ols_fit(data)
    case = classify_contradiction(fit, args.alpha)
    if args.format == "json":
        return _to_json({**fit.to_dict(), "case": case.value, "alpha": args.alpha}) + "\n"
    if args.format == "csv":
        rows = [["term", "estimate", "std_error", "t_value", "p_value"]]
        rows += list(zip(["(Intercept)", *fit.names], fit.coefficients, fit.std_errors, fit.t_values, fit.p_values))
        rows += [[], ["residual_se", "r_squared", "adj_r_squared", "f_stat", "f_p_value", "df1", "df2", "case"],
                 [fit.residual_se, fit.r_squared, fit.adj_r_squared, fit.f_stat, fit.f_p_value,
                  fit.df[0], fit.df[1], case.value]]
        return _csv(rows)
    return _fit_text(fit, case, args.alpha)


# ---------------------------------------------------------------- parser


def _alpha(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError("alpha must lie strictly between 0 and 1")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="anovatk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, alpha=0.05):
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--alpha", type=_alpha, default=alpha)

    def with_input(p, fixtures):
        p.add_argument("input", nargs="?", help="CSV file ('-' for stdin)")
        p.add_argument("--fixture", choices=fixtures, help="use a bundled example table instead")

    p = sub.add_parser("compare", help="ANOVA, Tukey-Kramer and restricted tests on a grouped sample")
    with_input(p, datasets.GROUPED_TABLES)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("identity", help="check Q^2(alpha, 2, nu) = 2 F_crit(alpha, 1, nu) on a grid")
    p.add_argument("--alpha-grid", type=_float_list, default=list(SUPPORTED_ALPHAS))
    p.add_argument("--nu-max", type=_positive_int, default=200)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("search", help="build a balanced sample on which ANOVA and TK disagree")
    p.add_argument("--case", type=int, choices=(1, 2), required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--output", help="write the sample as long-format CSV to this file")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tables", help="sign table of Q^2/F_crit - k, or monotonicity thresholds of Q")
    p.add_argument("--which", choices=("signs", "thresholds"), required=True)
    p.add_argument("--k-max", type=_positive_int, default=20)
    p.add_argument("--nu-max", type=_positive_int, default=1000)
    p.add_argument("--l-max", type=_positive_int, default=25)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("symmetric", help="scan a symmetric-sample feasibility boundary")
    p.add_argument("--which", choices=("anova", "tk"), required=True)
    p.add_argument("--a-max", type=_positive_int, required=True)
    p.add_argument("--strict", action="store_true", help="count partial sums strictly below a")
    common(p)
    p.set_defaults(func=cmd_symmetric)

    p = sub.add_parser("mlr", help="OLS fit with F and t tests")
    with_input(p, datasets.REGRESSION_TABLES)
    p.add_argument("--drop", action="append", metavar="COL", help="remove a predictor (repeatable)")
    p.add_argument("--response", help="response column (default: last)")
    common(p)
    p.set_defaults(func=cmd_mlr)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except InfeasibleSpecError as exc:
        print(f"anovatk: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NumericalError as exc:
        print(f"anovatk: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, ValueError) as exc:
        print(f"anovatk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
