"""Acceptance suite: one criterion per test, one printed pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the report lines;
each test also asserts its criterion so the suite gates CI.
"""

import numpy as np

from gaborwt.verify import (
    check_analytic_filter,
    check_directional,
    check_filter_pr,
    check_gabor_convergence,
    check_ht_pair,
    check_performance,
    check_pr_1d,
    check_pr_2d,
    check_quadrant_support,
    check_uncertainty,
)


def _report(criterion: str, results):
    ok = all(r.passed for r in results)
    print(f"\n[{'PASS' if ok else 'FAIL'}] Criterion {criterion}")
    for r in results:
        print("    " + r.line())
    assert ok, f"criterion {criterion} failed:\n" + "\n".join(r.line() for r in results)


def test_criterion_01_perfect_reconstruction_1d():
    _report("1: 1D perfect reconstruction (error <= 1e-10, < 1 s)", check_pr_1d())


def test_criterion_02_perfect_reconstruction_2d():
    _report("2: 2D perfect reconstruction (error <= 1e-10, < 5 s)", check_pr_2d())


def test_criterion_03_filter_pr_identity():
    _report("3: filter PR identity (every bin <= 1e-12)", check_filter_pr())


def test_criterion_04_ht_pair_exactness():
    _report("4: HT-pair exactness (dense <= 1e-10, filters <= 1e-12)",
            check_ht_pair())


def test_criterion_05_analytic_filter_one_sided(tmp_path):
    data = tmp_path / "analytic_filter.csv"
    results = check_analytic_filter(data_path=data)
    assert data.exists() and data.read_text().startswith("omega,abs_Pa")
    _report("5: analytic filter one-sidedness (<= 1e-10, data file emitted)",
            results)


def test_criterion_06_uncertainty_product():
    _report("6: uncertainty product (alpha=3 <= 1.03 x 0.5, decreasing)",
            check_uncertainty())


def test_criterion_07_gabor_convergence():
    _report("7: Gabor convergence (sup-deviation strictly decreasing, 1D+2D)",
            check_gabor_convergence())


def test_criterion_08_directional_selectivity():
    _report("8: directional selectivity (> 90% matched, HT <= 1e-10)",
            check_directional())


def test_criterion_09_quadrant_support():
    _report("9: quadrant/half-plane spectral support (<= 1e-8)",
            check_quadrant_support())


def test_criterion_10_performance():
    _report("10: performance sanity (512x512 one level <= 5 s)",
            check_performance())
