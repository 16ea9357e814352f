"""End-to-end verification harness.

Runs the numerical contracts of the whole package — perfect
reconstruction, filter identities, Hilbert-pair exactness, spectral
one-sidedness, Gabor convergence, directional behavior and runtime
sanity — and reports one measured value per check against its
tolerance.  Used both by the ``gaborwt verify`` command and the
acceptance test suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .filter_design import analytic_filter, design_channel, design_dual_tree, ht_pair_channel, verify_pr
from .gabor_analysis import sup_deviation_1d, sup_deviation_2d, uncertainty_product
from .spline_core import SplineParams, fd_ft
from .transform1d import Signal1D, dtcwt1d_forward, dtcwt1d_inverse, render_wavelet, _wavelet_hat, _dense_grid
from .transform2d import (
    build_channel_table,
    directional_ht_check,
    dtcwt2d_forward,
    dtcwt2d_inverse,
    quadrant_energy_fraction,
)

__all__ = ["CheckResult", "run_all", "format_report"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    comparison: str = "<="  # how value relates to tolerance when passing

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: measured {self.value:.3e} "
                f"(required {self.comparison} {self.tolerance:.3e})")


def _le(name, value, tol) -> CheckResult:
    return CheckResult(name, float(value), float(tol), bool(value <= tol))


def check_pr_1d(seed: int = 0, tol: float = 1e-10) -> list[CheckResult]:
    """1D round-trip error over alpha x tau sweep; also times the sweep."""
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for alpha in (1.0, 3.0, 6.0):
        for tau in (0.0, 0.25):
            d = design_dual_tree(SplineParams(alpha, tau), 256, 3)
            for _ in range(10):
                f = Signal1D(rng.standard_normal(256))
                rec = dtcwt1d_inverse(dtcwt1d_forward(f, d), d)
                worst = max(worst, float(np.max(np.abs(rec.samples - f.samples))))
    elapsed = time.perf_counter() - t0
    return [_le("1D perfect reconstruction (max abs error)", worst, tol),
            _le("1D reconstruction sweep runtime [s]", elapsed, 1.0)]


def check_pr_2d(seed: int = 0, tol: float = 1e-10) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for size in (64, 128):
        table = build_channel_table(SplineParams(3.0, 0.0), (size, size), 2)
        img = rng.standard_normal((size, size))
        rec = dtcwt2d_inverse(dtcwt2d_forward(img, table), table)
        worst = max(worst, float(np.max(np.abs(rec - img))))
    elapsed = time.perf_counter() - t0
    return [_le("2D perfect reconstruction (max abs error)", worst, tol),
            _le("2D reconstruction runtime [s]", elapsed, 5.0)]


def check_filter_pr(tol: float = 1e-12) -> list[CheckResult]:
    worst = 0.0
    for alpha, tau in ((3.0, 0.0), (2.5, 0.15)):
        d = design_dual_tree(SplineParams(alpha, tau), 256, 3)
        worst = max(worst, verify_pr(d.channel_a), verify_pr(d.channel_b))
    return [_le("filter PR identity (both channels, every bin)", worst, tol)]


def check_ht_pair(tol_dense: float = 1e-10, tol_filter: float = 1e-12) -> list[CheckResult]:
    p = SplineParams(3.0, 0.0)
    _, _, omega = _dense_grid(1 << 12, 6)
    dense = float(np.max(np.abs(
        _wavelet_hat(p.half_shifted(), omega)
        + 1j * np.sign(omega) * _wavelet_hat(p, omega))))

    # filter-level modulation relations: HT-paired channel equals the
    # directly designed tau + 1/2 channel, and the highpass filters obey
    # G' = D G bin-wise
    worst = 0.0
    for alpha in (1.0, 2.0, 3.0, 6.0):
        ch = design_channel(SplineParams(alpha, 0.0), 256, 3)
        paired = ht_pair_channel(ch)
        direct = design_channel(SplineParams(alpha, 0.5), 256, 3)
        for lf1, lf2 in zip(paired.levels, direct.levels):
            for name in ("h_tilde", "g_tilde", "h", "g"):
                worst = max(worst, float(np.max(np.abs(
                    getattr(lf1, name).values - getattr(lf2, name).values))))
        for lf, lfp in zip(ch.levels, paired.levels):
            d = fd_ft(0.0, -0.5, lf.grid.omega)
            worst = max(worst, float(np.max(np.abs(lfp.g.values - d * lf.g.values))))
            worst = max(worst, float(np.max(np.abs(lfp.g_tilde.values - d * lf.g_tilde.values))))
    return [_le("HT-pair dense-grid wavelet identity", dense, tol_dense),
            _le("HT-pair filter modulation relations", worst, tol_filter)]


def check_analytic_filter(tol: float = 1e-10, data_path=None) -> list[CheckResult]:
    d = design_dual_tree(SplineParams(3.0, 0.0), 256, 3)
    pa = analytic_filter(d)
    n = pa.grid.n
    neg = np.arange(n // 2 + 1, n)  # omega in (-pi, 0), Nyquist excluded
    worst = max(float(np.max(np.abs(pa.values[neg]))), float(np.abs(pa.values[0])))
    if data_path is not None:
        order = np.argsort(pa.grid.omega)
        rows = "".join(f"{pa.grid.omega[i]:.10f},{np.abs(pa.values[i]):.12e}\n"
                       for i in order)
        with open(data_path, "w") as fh:
            fh.write("omega,abs_Pa\n" + rows)
    return [_le("analytic filter one-sidedness (|P_a| on omega <= 0)", worst, tol)]


def check_uncertainty() -> list[CheckResult]:
    ups = []
    for alpha in (3.0, 6.0, 10.0):
        x, psi = render_wavelet(SplineParams(alpha, 0.0))
        ups.append(uncertainty_product(psi, float(x[1] - x[0])))
    monotone = all(b < a for a, b in zip(ups, ups[1:]))
    return [
        _le("uncertainty product, alpha=3", ups[0], 1.03 * 0.5),
        CheckResult("uncertainty product decreases toward 1/2 (alpha 3,6,10)",
                    ups[-1], 0.5, monotone and ups[-1] >= 0.5 - 1e-6, ">="),
    ]


def check_gabor_convergence() -> list[CheckResult]:
    alphas = (4.0, 6.0, 10.0)
    dev1 = [sup_deviation_1d(SplineParams(a, 0.0)) for a in alphas]
    ok1 = all(b < a for a, b in zip(dev1, dev1[1:]))
    ok2 = True
    worst2 = 0.0
    for k in range(1, 7):
        dev2 = [sup_deviation_2d(k, SplineParams(a, 0.0)) for a in alphas]
        ok2 = ok2 and all(b < a for a, b in zip(dev2, dev2[1:]))
        worst2 = max(worst2, dev2[-1])
    return [
        CheckResult("1D Gabor sup-deviation strictly decreasing (alpha 4,6,10)",
                    dev1[-1], dev1[0], ok1, "<"),
        CheckResult("2D Gabor sup-deviation strictly decreasing (all k)",
                    worst2, 1.0, ok2, "<"),
    ]


def check_directional(tol_ht: float = 1e-10) -> list[CheckResult]:
    p = SplineParams(3.0, 0.0)
    ht_worst = max(directional_ht_check(k, p) for k in range(1, 7))

    size = 64
    table = build_channel_table(p, (size, size), 2)
    grid = np.arange(size)
    xx, yy = np.meshgrid(grid, grid, indexing="ij")
    w1 = 2.0 * np.pi * 26 / size  # per-axis level-1 passband bin
    waves = {0: (w1, 0.0), 1: (0.0, w1), 2: (w1, w1), 3: (-w1, w1)}
    groups = ((0, 1), (2, 3), (4,), (5,))  # orientation subbands per angle
    min_match, max_off = 1.0, 0.0
    for angle, (wx, wy) in waves.items():
        img = np.cos(wx * xx + wy * yy)
        pyr = dtcwt2d_forward(img, table)
        e = np.array([sum(float(np.sum(np.abs(lvl[k]) ** 2)) for lvl in pyr.w)
                      for k in range(6)])
        fracs = [float(np.sum(e[list(g)]) / np.sum(e)) for g in groups]
        min_match = min(min_match, fracs[angle])
        max_off = max(max_off, *(f for i, f in enumerate(fracs) if i != angle))
    return [
        _le("directional HT relation (all six orientations)", ht_worst, tol_ht),
        CheckResult("plane-wave energy in matched orientation", min_match, 0.9,
                    min_match > 0.9, ">"),
        CheckResult("plane-wave energy in off orientations", max_off, 0.05,
                    max_off < 0.05, "<"),
    ]


def check_quadrant_support(tol: float = 1e-8) -> list[CheckResult]:
    p = SplineParams(3.0, 0.0)
    worst = max(quadrant_energy_fraction(k, p) for k in range(1, 7))
    return [_le("out-of-support spectral energy fraction (all k)", worst, tol)]


def check_performance() -> list[CheckResult]:
    table = build_channel_table(SplineParams(3.0, 0.0), (512, 512), 1)
    img = np.random.default_rng(0).standard_normal((512, 512))
    t0 = time.perf_counter()
    rec = dtcwt2d_inverse(dtcwt2d_forward(img, table), table)
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.abs(rec - img)))
    return [_le("512x512 one-level analysis+synthesis runtime [s]", elapsed, 5.0),
            _le("512x512 one-level round-trip error", err, 1e-10)]


def run_all(seed: int = 0, analytic_data_path=None) -> list[CheckResult]:
    results = []
    results += check_pr_1d(seed)
    results += check_pr_2d(seed)
    results += check_filter_pr()
    results += check_ht_pair()
    results += check_analytic_filter(data_path=analytic_data_path)
    results += check_uncertainty()
    results += check_gabor_convergence()
    results += check_directional()
    results += check_quadrant_support()
    results += check_performance()
    return results


def format_report(results) -> str:
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)
