"""End-to-end acceptance checks, one test per criterion.

Each test records a pass/fail line that the terminal summary prints after
the run. Tolerances are the ones the criteria state; where a literal check
fails, a supplementary line records the closest variant that holds so the
cause is visible in the same output.
"""

import decimal
import time

import numpy as np
import pytest

from anovatk import (
    anova_reject, anova_table, f_critical, f_upper_tail, full_report, modified_tk, q_cdf,
    q_critical, q_monotone_threshold, restrict, tk_test, verify_two_group_identity,
)
from anovatk.anova import GroupedSample
from anovatk.datasets import load_regression
from anovatk.distributions import f_cdf
from anovatk.generators import (
    CaseKind, FamilySpec, build_family_sample, classify_signs, critical_ratio, g_function,
    h_function, h_sign_table,
)
from anovatk.mlr import RegressionCase, RegressionData, classify_contradiction, drop_predictor, ols_fit
from anovatk.report import CaseLabel
from anovatk.symmetric import verify_boundary
from conftest import record
from reference_values import (
    ANOVA_1A, ANOVA_2A, ANOVA_2A_13, H_SIGN_RANGES, MLR, MODIFIED_TK_2A_13, MONOTONE_THRESHOLDS,
    TK_1A, TK_2A,
)

pytestmark = pytest.mark.acceptance

ALPHAS = (0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5)
K_MAX = 20
NU_GRID = np.array(list(range(1, 1001)) + [10 ** 6], dtype=float)
KS = np.arange(3, K_MAX + 1)


def _rel(actual, expected):
    return abs(actual - expected) / abs(expected)


@pytest.fixture(scope="module")
def ratio_grid():
    """``critical_ratio`` on alpha x k x nu, computed once, with its wall time."""
    start = time.perf_counter()
    grid = {a: critical_ratio(a, KS[:, None], NU_GRID[None, :]) for a in ALPHAS}
    return grid, time.perf_counter() - start


def test_two_group_identity():
    start = time.perf_counter()
    dev = verify_two_group_identity(ALPHAS, np.arange(1, 201))
    elapsed = time.perf_counter() - start
    ok = dev < 1e-5 and elapsed < 60
    record(1, "Q^2(a,2,nu) = 2 F_crit(a,1,nu)", ok, f"max rel dev {dev:.3e} (< 1e-5), {elapsed:.1f}s (< 60s)")
    assert ok


def test_two_group_anova_table(table_1a):
    tab = anova_table(table_1a)
    worst = max((_rel(getattr(tab, key), ref), key) for key, ref in ANOVA_1A.items())
    ok = worst[0] < 1e-4 and anova_reject(table_1a, 0.05)
    record(2, "ANOVA table for fixture 1A", ok, f"worst rel err {worst[0]:.2e} on {worst[1]} (< 1e-4)")
    assert ok


def test_two_group_tk_p_values(table_1a):
    rows = tk_test(table_1a, 0.05)
    errs = [abs(r.p_adj - ref) for r, ref in zip(rows, TK_1A["p_adj"])]
    diffs = max(_rel(r.diff, ref) for r, ref in zip(rows, TK_1A["diff"]))
    ok = max(errs) <= 5e-4 and not any(r.reject for r in rows)
    record(3, "TK adjusted p for fixture 1A", ok,
           f"max abs err {max(errs):.2e} (<= 5e-4); diff rel err {diffs:.1e}; no pair rejected")
    assert ok


def test_restricted_contradiction(table_2a):
    tab = anova_table(table_2a)
    rows = tk_test(table_2a, 0.05)
    sub = anova_table(restrict(table_2a, 1, 3))
    mod = modified_tk(table_2a, 1, 3, 0.05)
    report = full_report(table_2a, 0.05)
    rel = max([_rel(getattr(tab, k), v) for k, v in ANOVA_2A.items()]
              + [_rel(getattr(sub, k), v) for k, v in ANOVA_2A_13.items()])
    p_err = max([abs(r.p_adj - ref) for r, ref in zip(rows, TK_2A["p_adj"])]
                + [abs(mod.p_adj - MODIFIED_TK_2A_13["p_adj"])])
    # the first printed difference carries a sign inconsistent with the data; compare magnitudes
    diff_rel = max(_rel(abs(r.diff), ref) for r, ref in zip(rows, TK_2A["abs_diff"]))
    ok = (rel < 1e-4 and p_err <= 5e-4 and diff_rel < 1e-6
          and report.case_label is CaseLabel.CASE_II and report.contradiction_flag
          and (1, 3) in report.flagged_pairs)
    record(4, "full and restricted tests for fixture 2A", ok,
           f"ANOVA rel err {rel:.2e}; p_adj abs err {p_err:.2e}; label {report.case_label.value}; "
           f"flagged {list(report.flagged_pairs)}")
    assert ok


def test_h_sign_table(ratio_grid):
    grid, elapsed = ratio_grid
    failures = []
    balanced_failures = []
    for a, (pos_last, neg_first) in H_SIGN_RANGES.items():
        h = grid[a] - KS[:, None]
        for k, row in zip(KS, h):
            if k <= pos_last:
                want = "positive"
            elif k >= neg_first:
                want = "negative"
            else:
                continue
            got = classify_signs(row)
            if got != want:
                nu_bad = NU_GRID[(row <= 0) if want == "positive" else (row >= 0)]
                failures.append(f"a={a} k={k}: {got}, first nu {int(nu_bad[0])}")
            keep = (NU_GRID % k == 0) | (NU_GRID > 1e5)
            if classify_signs(row[keep]) != want:
                balanced_failures.append(f"a={a} k={k}")
    # the library routine must agree with the grid derived here
    sub = h_sign_table((0.05, 0.25), 12, nu_grid=(1, 2, 10, 30, 1000, 10 ** 6))
    for (a, k), sign in sub.items():
        row = h_function(a, k, np.array([1, 2, 10, 30, 1000, 10 ** 6]))
        assert sign == classify_signs(row)
    ok = not failures and elapsed < 300
    record(5, "sign runs of H over nu = 1..1000 and 1e6", ok,
           f"{len(failures)} range violations {failures[:3]}; {elapsed:.0f}s (< 300s)")
    record(5, "same runs over balanced nu = k(m-1) and 1e6", not balanced_failures,
           f"{len(balanced_failures)} violations", supplementary=True)
    assert ok


def test_monotone_thresholds():
    got = tuple(q_monotone_threshold(a) for a in ALPHAS)
    want = tuple(MONOTONE_THRESHOLDS[a] for a in ALPHAS)
    ok = got == want
    record(6, "reduced-range monotonicity thresholds", ok, f"got {got}, expected {want}")
    assert ok


def test_g_positive(ratio_grid):
    grid, _ = ratio_grid
    nus = NU_GRID <= 200
    worst = min(float(np.min(grid[a][:, nus] - 4 * (1 - 1 / KS[:, None]))) for a in ALPHAS)
    spot = g_function(0.05, np.array([3, 10, 20]), 7.0)
    ok = worst > 0 and np.all(spot > 0)
    record(7, "G > 0 for k = 3..20, nu = 1..200", ok, f"min G {worst:.4e}")
    assert ok


def test_family_constructions():
    outcomes = {}
    for kind, k, n in ((CaseKind.CASE_1, 4, 40), (CaseKind.CASE_2, 14, 140)):
        spec = FamilySpec(k, n, 0.05, kind)
        passed = 0
        for seed in range(20):
            _, report = build_family_sample(spec, seed)
            if kind is CaseKind.CASE_1:
                passed += report.case_label is CaseLabel.CASE_I
            else:
                passed += report.case_label is CaseLabel.CASE_II and report.contradiction_flag
        outcomes[kind.value] = passed
    ok = all(v == 20 for v in outcomes.values())
    record(8, "family samples over 20 seeds each", ok, f"passes {outcomes} out of 20")
    assert ok


def test_boundary_scans():
    start = time.perf_counter()
    literal = {w: verify_boundary(w, 500, 0.05) for w in ("anova", "tk")}
    elapsed = time.perf_counter() - start
    strict = {w: verify_boundary(w, 500, 0.05, strict=True) for w in ("anova", "tk")}
    ok = all(r.holds for r in literal.values()) and elapsed < 600
    record(9, "boundary scans to a = 500", ok,
           "; ".join(f"{w}: counterexample {r.counterexample}" for w, r in literal.items())
           + f"; {elapsed:.1f}s (< 600s)")
    record(9, "scans with a(s) summing the first s - 1 terms", all(r.holds for r in strict.values()),
           "; ".join(f"{w}: {r.checked} cases, counterexample {r.counterexample}" for w, r in strict.items()),
           supplementary=True)
    assert ok


def _regression_fit(key):
    X, y, names, _ = load_regression(key[:2])
    data = RegressionData(X, y, names)
    if key.endswith("-X1"):
        data = drop_predictor(data, 1)
    return ols_fit(data)


def _half_printed_unit(value):
    return 0.5 * 10.0 ** decimal.Decimal(repr(value)).as_tuple().exponent


def test_regression_tables():
    misses, rounding_misses = [], []
    fits = {}
    for key, ref in MLR.items():
        fit = fits[key] = _regression_fit(key)
        pairs = []
        for i, row in enumerate(ref["coef"]):
            ours = (fit.coefficients[i], fit.std_errors[i], fit.t_values[i], fit.p_values[i])
            pairs += zip((f"b{i}", f"se{i}", f"t{i}", f"p{i}"), ours, row)
        pairs += [(k, getattr(fit, k), ref[k]) for k in
                  ("residual_se", "r_squared", "adj_r_squared", "f_stat", "f_p_value")]
        for name, ours, want in pairs:
            if _rel(ours, want) >= 1e-5:
                misses.append(f"{key} {name}: {ours:.7g} vs {want} ({_rel(ours, want):.1e})")
                if abs(ours - want) > _half_printed_unit(want):
                    rounding_misses.append(f"{key} {name}")
        assert fit.df == ref["df"]
    labels = (classify_contradiction(fits["5A"], 0.05), classify_contradiction(fits["6A"], 0.1),
              classify_contradiction(fits["7A"], 0.05))
    p12, p2_reduced = fits["7A"].f_p_value, fits["7A-X1"].p_values[1]
    labels_ok = (labels == (RegressionCase.CASE_J, RegressionCase.CASE_JJ, RegressionCase.CASE_JJ)
                 and p12 > 0.05 > p2_reduced)
    ok = not misses and labels_ok
    record(10, "regression tables at rel 1e-5 with case labels", ok,
           f"labels {[v.value for v in labels]}; p12 {p12:.4f}, p'2 {p2_reduced:.4f}; "
           f"{len(misses)} entries off: {misses}")
    record(10, "each entry off by 1e-5 rounds to its printed value", not rounding_misses,
           f"{len(misses) - len(rounding_misses)} of {len(misses)} lie within half a unit of the last printed digit",
           supplementary=True)
    assert ok


def _range_statistic_tail(q, k, nu, draws, seed, chunk=10 ** 6):
    rng = np.random.default_rng(seed)
    hits = 0
    for start in range(0, draws, chunk):
        m = min(chunk, draws - start)
        z = rng.standard_normal((m, k))
        s = np.sqrt(rng.chisquare(nu, m) / nu)
        hits += int(np.count_nonzero(np.ptp(z, axis=1) / s > q))
    return hits / draws


def test_property_suites():
    rng = np.random.default_rng(20240611)
    mismatches = 0
    for _ in range(500):
        sizes = rng.integers(2, 15, 2)
        groups = [rng.normal(rng.normal(0, 1), rng.uniform(0.3, 3), m) for m in sizes]
        sample = GroupedSample(tuple(groups))
        for a in ALPHAS:
            mismatches += anova_reject(sample, a) != tk_test(sample, a)[0].reject

    ss_err = 0.0
    for _ in range(200):
        k = int(rng.integers(2, 8))
        sample = GroupedSample(tuple(rng.normal(rng.normal(0, 5), 2, int(rng.integers(1, 12)) + 1)
                                     for _ in range(k)))
        tab = anova_table(sample)
        ss_err = max(ss_err, abs(tab.ss_tr - tab.ss_tr_pairwise) / max(tab.ss_tr, 1e-300))

    ks, nus = np.meshgrid([2, 3, 5, 10, 20], [1, 2, 5, 10, 30, 120, 1000])
    round_err = 0.0
    for a in ALPHAS:
        round_err = max(round_err, float(np.max(np.abs(q_cdf(q_critical(a, ks, nus), ks, nus) - (1 - a)))))
        fc = f_critical(a, ks - 1, nus)
        round_err = max(round_err, float(np.max(np.abs(f_cdf(fc, ks - 1, nus) - (1 - a)))),
                        float(np.max(np.abs(f_upper_tail(fc, ks - 1, nus) - a))))

    draws = 10 ** 7
    q = q_critical(0.05, 3, 10)
    tail = _range_statistic_tail(q, 3, 10, draws, seed=7)
    se = np.sqrt(0.05 * 0.95 / draws)
    z = abs(tail - 0.05) / se

    ok = mismatches == 0 and ss_err < 1e-12 and round_err < 1e-9 and z < 3
    record(11, "property suites", ok,
           f"k=2 verdict mismatches {mismatches}/3500; SS rel err {ss_err:.1e}; roundtrip {round_err:.1e}; "
           f"simulated tail at Q(0.05,3,10)={q:.6f} is {tail:.5f}, {z:.2f} SE from 0.05")
    assert ok
