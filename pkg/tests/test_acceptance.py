"""Acceptance suite: one test per criterion, at the stated tolerances and budgets.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per criterion.
"""

import json
import math
import time

import numpy as np
import pytest
from click.testing import CliRunner

from qradius import bounds, harness, linalg, qrange
from qradius.cli import main as cli_main
from qradius.orlicz import (STANDARD_GRID, builtin, complementary, hermite_hadamard_integral,
                            jensen_mean_check, kernel, young_check)


def _report(num, name, detail=""):
    print(f"ACCEPTANCE {num} PASS: {name}{' [' + detail + ']' if detail else ''}")


def test_criterion_1_paper_example_regression():
    t0 = time.perf_counter()
    assert np.allclose(linalg.hermitian_eigenvalues(harness.EXAMPLE_A1), [3.0, 2.0], atol=1e-10)
    assert np.allclose(linalg.hermitian_eigenvalues(harness.EXAMPLE_A2), [7.0, 1.0], atol=1e-10)
    entries = {e["name"]: e for e in harness.paper_examples_regression()}
    assert entries["sectorial_A1_at_half"]["actual"] is True
    assert entries["sectorial_A2_at_half"]["actual"] is False
    e1 = qrange.hermitian_qrange_ellipse(harness.EXAMPLE_A1, 0.5)
    assert abs(e1.center_x - 1.25) <= 1e-12
    assert abs(e1.semi_axis_x - 0.5) <= 1e-12
    assert abs(e1.semi_axis_y - math.sqrt(3) / 4) <= 1e-12
    assert abs(entries["gaussian_constant_c1"]["actual"] - 3.4433) <= 5e-4
    assert abs(entries["gaussian_constant_c2"]["actual"] - 2.1623) <= 5e-4
    assert all(e["passed"] for e in entries.values())
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _report(1, "paper-example regression", f"{elapsed:.2f}s")


def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    worst_down = math.inf       # min of optimizer / sampler
    worst_up = 0.0              # max of optimizer / sampler (observed headroom)
    for i in range(100):
        dim = 2 + i % 3
        t = linalg.random_matrix(dim, 10_000 + i)
        for q in (0.3, 0.6, 0.9):
            opt, _ = qrange.q_numerical_radius(t, q, seed=i)
            samp = qrange.q_radius_bruteforce(t, q, 10_000, seed=i + 1)
            assert opt >= samp - 1e-3 * samp, f"optimizer lost to sampler at dim={dim} q={q} i={i}"
            worst_down = min(worst_down, opt / samp)
            worst_up = max(worst_up, opt / samp)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _report(2, "oracle equivalence (optimizer never below sampler - 1e-3 rel)",
            f"ratio range [{worst_down:.4f}, {worst_up:.4f}], {elapsed:.1f}s")


def test_criterion_3_q_one_reduction():
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(50):
        t = linalg.random_matrix(2 + i % 5, 20_000 + i)
        w1, _ = qrange.q_numerical_radius(t, 1.0, seed=i)
        w = linalg.classical_numerical_radius(t)
        worst = max(worst, abs(w1 - w))
        assert abs(w1 - w) <= 1e-6
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _report(3, "q=1 reduction to the classical radius", f"max |diff| {worst:.2e}, {elapsed:.1f}s")


def test_criterion_4_hermitian_closed_form():
    t0 = time.perf_counter()
    worst = 0.0
    qs = [round(0.1 * k, 1) for k in range(1, 10)]
    for i in range(50):
        a = linalg.random_hermitian(2 + i % 5, 30_000 + i)
        for q in qs:
            closed = qrange.ellipse_max_modulus(qrange.hermitian_qrange_ellipse(a, q))
            opt, _ = qrange.q_numerical_radius(a, q, seed=i)
            rel = abs(opt - closed) / max(1e-30, closed)
            worst = max(worst, rel)
            assert rel <= 1e-4, f"closed-form mismatch {rel:.2e} at q={q} i={i}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _report(4, "Hermitian closed form matches the optimizer", f"max rel {worst:.2e}, {elapsed:.1f}s")


def test_criterion_5_inequality_soundness_campaign():
    t0 = time.perf_counter()
    cfg = harness.CampaignConfig(seed=2026)   # 33 bounds, 200 matrices, 6 q, 3 gauges
    assert len(cfg.bound_ids) >= 24
    assert cfg.trials == 200
    assert len(cfg.q_grid) == 6
    assert set(cfg.phi_names) == {"power:2", "exp_minus_one", "power_over_p:2"}
    report = harness.run_campaign(cfg)
    harness.validate_report(report)
    trials = sum(r["trials"] for r in report["results"])
    violations = sum(r["violations"] for r in report["results"])
    warnings = sum(r["warnings"] for r in report["results"])
    assert all(r["trials"] > 0 for r in report["results"]), "every bound must be exercised"
    assert violations == 0, f"hard violations: {violations}"
    assert warnings <= 0.01 * trials, f"soft warnings {warnings} exceed 1% of {trials}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    _report(5, "inequality soundness campaign",
            f"{trials} trials, 0 violations, {warnings} warnings, {elapsed:.0f}s")


def test_criterion_6_refinement_orderings():
    fd = harness.figure_data("fig1")
    assert len(fd.grid) == 199
    assert (fd.columns["f_C1"] <= fd.columns["f_L3"] + 1e-12).all()

    est = bounds.Estimator(seed=5)
    for i in range(20):
        t = linalg.random_matrix(2 + i % 5, 40_000 + i)
        for q in (0.2, 0.5, 0.8):
            rhs_q1 = bounds.evaluate("Q1", [t], q, est=est).links[-1].rhs
            rhs_l4 = bounds.evaluate("L4", [t], q, est=est).links[-1].rhs
            assert rhs_q1 <= rhs_l4 + 1e-9
    for i in range(10):
        t = linalg.random_square_zero(2 + i % 4, 41_000 + i)
        for q in (0.2, 0.5, 0.8):
            rhs_q2 = bounds.evaluate("Q2", [t], q, est=est).links[-1].rhs
            rhs_l5 = bounds.evaluate("L5", [t], q, est=est).links[-1].rhs
            assert rhs_q2 <= rhs_l5 + 1e-9
    alphas = np.linspace(0.0, math.pi / 2, 1000, endpoint=False)
    assert (2 * np.sqrt(1 + np.sin(alphas) ** 2) <= 2 * math.sqrt(2) + 1e-12).all()
    _report(6, "refinement orderings (coefficients and instance-wise)")


def test_criterion_7_fig4_crossover():
    t0 = time.perf_counter()
    alpha_star = harness.fig4_crossover()
    assert abs(alpha_star - 6 * math.pi / 19) <= 0.01
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _report(7, "lower-bound crossover location", f"alpha* = {alpha_star:.5f}")


def test_criterion_8_orlicz_suite():
    t0 = time.perf_counter()
    gauges = [builtin("power", 2), builtin("power", 3), builtin("exp_minus_one"),
              builtin("exp_minus_t_minus_one"), builtin("power_log", 1),
              builtin("exp_square"), builtin("power_over_p", 2), builtin("power_over_p", 3)]
    rng = np.random.default_rng(8)
    ab = rng.uniform(0, 10, size=(30, 2))
    for f in gauges:
        for a, b in ab:
            mid = hermite_hadamard_integral(f, a, b)
            assert float(f((a + b) / 2)) - 1e-9 <= mid <= (float(f(a)) + float(f(b))) / 2 + 1e-9
    for f in (builtin("power_over_p", 2), builtin("power_over_p", 3),
              builtin("exp_minus_t_minus_one")):
        pair = complementary(f)
        for u in STANDARD_GRID:
            for v in STANDARD_GRID:
                assert young_check(pair, u, v)[2] >= -1e-9
            v = kernel(f, u)
            assert abs(young_check(pair, u, v)[2]) <= 1e-8 * max(1.0, u * v)
    for f in gauges:
        for values in ([0.5, 1.5], [2.0, 2.0, 2.0], list(STANDARD_GRID)):
            lhs, rhs = jensen_mean_check(f, values)
            assert lhs <= rhs + 1e-9
    # numeric complementary reproduces the closed forms
    from qradius.orlicz import _integrate_inverse
    for p in (2.0, 3.0):
        f = builtin("power_over_p", p)
        pstar = p / (p - 1)
        for s in (0.5, 1.0, 2.0, 5.0, 10.0):
            assert abs(_integrate_inverse(f, s) - s ** pstar / pstar) <= 1e-7 * (s ** pstar / pstar)
    f = builtin("exp_minus_t_minus_one")
    closed = complementary(f).psi
    for s in (0.5, 1.0, 2.0, 5.0, 10.0):
        assert abs(_integrate_inverse(f, s) - float(closed(s))) <= 1e-7 * max(1.0, float(closed(s)))
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _report(8, "gauge-function suite", f"{elapsed:.1f}s")


def test_criterion_9_determinism(tmp_path, matrix_file, jordan):
    runner = CliRunner()
    jf = matrix_file(jordan, "jordan2.json")

    args = ["radius", "--matrix", jf, "--q", "0.5", "--seed", "4", "--json"]
    assert runner.invoke(cli_main, args).output == runner.invoke(cli_main, args).output

    f1, f2 = tmp_path / "f1.csv", tmp_path / "f2.csv"
    runner.invoke(cli_main, ["figure", "--id", "fig1", "--out", str(f1), "--no-png"])
    runner.invoke(cli_main, ["figure", "--id", "fig1", "--out", str(f2), "--no-png"])
    assert f1.read_bytes() == f2.read_bytes()

    b1, b2 = tmp_path / "b1.csv", tmp_path / "b2.csv"
    for path in (b1, b2):
        runner.invoke(cli_main, ["boundary", "--matrix", jf, "--q", "0.5", "--directions", "16",
                                 "--restarts", "4", "--seed", "3", "--out", str(path), "--no-png"])
    assert b1.read_bytes() == b2.read_bytes()

    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    small = ["verify", "--bounds", "L1a,C1,Q1", "--trials", "5", "--dims", "2",
             "--q-grid", "0.5", "--seed", "6", "--no-png"]
    runner.invoke(cli_main, small + ["--report", str(r1)])
    runner.invoke(cli_main, small + ["--report", str(r2)])
    d1, d2 = json.loads(r1.read_text()), json.loads(r2.read_text())
    d1.pop("generated_at"), d2.pop("generated_at")
    d1["config"].pop("out_path"), d2["config"].pop("out_path")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)
    _report(9, "determinism of seeded commands (modulo the timestamp field)")
