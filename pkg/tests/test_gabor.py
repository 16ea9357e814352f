import numpy as np
import pytest

from gaborwt.gabor_analysis import (
    DELTA_OMEGA0,
    M0,
    OMEGA0,
    GaborConstants,
    convergence_report,
    gabor1d,
    gabor2d,
    gaussian_limit,
    sup_deviation_1d,
    sup_deviation_2d,
    uncertainty_product,
)
from gaborwt.spline_core import SplineParams
from gaborwt.transform1d import render_scaling, render_wavelet


class TestConstants:
    def test_published_values(self):
        assert (M0, OMEGA0, DELTA_OMEGA0) == (0.670, -5.142, 2.670)

    def test_derived_quantities(self):
        c = GaborConstants.for_degree(3.0)
        assert c.sigma == pytest.approx(2.0 / 2.670)
        assert c.sigma1 == c.sigma
        assert c.sigma2 == pytest.approx(np.sqrt(4.0 / 6.0))
        assert c.m == pytest.approx(2.0 * 0.670**4 * 2.670 / np.sqrt(8.0 * np.pi))


class TestGabor1D:
    def test_envelope_peak(self):
        p = SplineParams(4.0, 0.3)
        c = GaborConstants.for_degree(4.0)
        assert abs(gabor1d(p, 0.5)) == pytest.approx(c.m)
        x = np.linspace(-3.0, 4.0, 501)
        assert np.max(np.abs(gabor1d(p, x))) <= c.m + 1e-12

    def test_magnitude_independent_of_tau(self):
        x = np.linspace(-3.0, 4.0, 101)
        a = np.abs(gabor1d(SplineParams(4.0, 0.0), x))
        b = np.abs(gabor1d(SplineParams(4.0, 0.37), x))
        np.testing.assert_allclose(a, b, atol=1e-14)

    def test_half_shift_steps_phase_by_quarter_turn(self):
        p = SplineParams(4.0, 0.1)
        x = np.linspace(-2.0, 3.0, 101)
        got = gabor1d(SplineParams(4.0, 0.6), x)
        np.testing.assert_allclose(got, -1j * gabor1d(p, x), atol=1e-13)


class TestGaussianLimit:
    def test_center_and_mass(self):
        p = SplineParams(5.0, 0.25)
        x = np.linspace(-10.0, 10.0, 200001)
        g = gaussian_limit(p, x)
        assert x[np.argmax(g)] == pytest.approx(0.25, abs=1e-4)
        assert np.trapezoid(g, x) == pytest.approx(1.0, abs=1e-8)

    def test_bspline_converges_to_gaussian(self):
        devs = []
        for alpha in (4.0, 10.0):
            p = SplineParams(alpha, 0.0)
            x, b = render_scaling(p)
            devs.append(np.max(np.abs(b.real - gaussian_limit(p, x))))
        assert devs[1] < devs[0]


class TestGabor2D:
    def test_separability_k1(self):
        p = SplineParams(5.0, 0.25)
        xs = np.linspace(-3.0, 4.0, 64)
        ys = np.linspace(-2.0, 3.0, 64)
        got = gabor2d(1, p, xs, ys)
        want = np.outer(gabor1d(p, xs), gaussian_limit(p, ys))
        np.testing.assert_allclose(got, want, atol=1e-12)

    def test_k5_proportional_to_1d_product(self):
        p = SplineParams(5.0, 0.1)
        xs = np.linspace(-3.0, 4.0, 64)
        got = gabor2d(5, p, xs, xs).ravel()
        prod = np.outer(gabor1d(p, xs), gabor1d(p, xs)).ravel()
        c = np.vdot(prod, got) / np.vdot(prod, prod)
        assert np.max(np.abs(got - c * prod)) <= 1e-12 * np.max(np.abs(got))

    def test_isotropic_diagonal_envelope(self):
        p = SplineParams(4.0, 0.0)
        c = GaborConstants.for_degree(4.0)
        xs = np.linspace(-2.0, 3.0, 41)
        env = np.abs(gabor2d(5, p, xs, xs))
        np.testing.assert_allclose(env, env.T, atol=1e-14)
        i = np.argmin(np.abs(xs - 0.5))
        assert np.unravel_index(np.argmax(env), env.shape) == (i, i)
        assert np.max(env) == pytest.approx(c.m2)

    def test_k6_carrier(self):
        p = SplineParams(4.0, 0.0)
        xs = np.array([0.5])
        ys = np.linspace(0.0, 1.0, 11)
        vals = gabor2d(6, p, xs, ys)[0]
        phases = np.unwrap(np.angle(vals))
        slope = np.polyfit(ys, phases, 1)[0]
        assert slope == pytest.approx(OMEGA0, rel=1e-10)

    def test_k2_center(self):
        p = SplineParams(4.0, 0.2)
        xs = np.linspace(-2.0, 3.0, 201)
        ys = np.linspace(-2.0, 3.0, 201)
        env = np.abs(gabor2d(2, p, xs, ys))
        i, j = np.unravel_index(np.argmax(env), env.shape)
        assert xs[i] == pytest.approx(0.5, abs=0.02)
        assert ys[j] == pytest.approx(0.7, abs=0.02)

    def test_invalid_orientation(self):
        with pytest.raises(ValueError):
            gabor2d(7, SplineParams(3.0, 0.0), [0.0], [0.0])


class TestUncertainty:
    def test_gabor_atom_attains_bound(self):
        x = np.linspace(-20.0, 21.0, 1 << 12)
        g = gabor1d(SplineParams(6.0, 0.0), x)
        assert uncertainty_product(g, x[1] - x[0]) == pytest.approx(0.5, rel=5e-3)

    def test_cubic_wavelet_within_3_percent(self):
        x, psi = render_wavelet(SplineParams(3.0, 0.0))
        up = uncertainty_product(psi, float(x[1] - x[0]))
        assert up <= 1.03 * 0.5

    def test_translation_and_dilation_invariance(self):
        x = np.linspace(-20.0, 21.0, 1 << 12)
        g = gabor1d(SplineParams(6.0, 0.0), x)
        base = uncertainty_product(g, x[1] - x[0])
        shifted = uncertainty_product(np.roll(g, 37), x[1] - x[0])
        dilated = uncertainty_product(g, 2.0 * (x[1] - x[0]))
        assert abs(shifted - base) <= 1e-6
        assert abs(dilated - base) <= 1e-6

    def test_heisenberg_lower_bound(self):
        for alpha in (2.0, 3.0, 6.0):
            x, psi = render_wavelet(SplineParams(alpha, 0.0))
            assert uncertainty_product(psi, float(x[1] - x[0])) >= 0.5 - 1e-6

    def test_insufficient_decay_rejected(self):
        with pytest.raises(ValueError):
            uncertainty_product(np.ones(1024, dtype=complex), 0.1)
        with pytest.raises(ValueError):
            uncertainty_product(np.zeros(16, dtype=complex), 0.1)


class TestConvergence:
    def test_report_monotone_and_csv(self, tmp_path):
        out = tmp_path / "report.csv"
        rows = convergence_report([4.0, 6.0, 10.0], csv_path=out)
        devs = [r[1] for r in rows]
        ups = [r[2] for r in rows]
        assert devs[1] < devs[0] and devs[2] < devs[1]
        assert ups[1] < ups[0] and ups[2] < ups[1]
        assert ups[2] >= 0.5 - 1e-6
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha,sup_deviation,uncertainty_product"
        assert len(lines) == 4

    def test_requires_increasing_degrees(self):
        with pytest.raises(ValueError):
            convergence_report([6.0, 4.0])

    def test_unimodal_envelope(self):
        for alpha in (3.0, 6.0):
            _, psi = render_wavelet(SplineParams(alpha, 0.0))
            env = np.abs(psi)
            peaks = ((env[1:-1] > env[:-2]) & (env[1:-1] > env[2:])
                     & (env[1:-1] > 0.05 * np.max(env)))
            assert np.sum(peaks) == 1

    def test_2d_deviation_decreases(self):
        for k in (1, 5):
            d4 = sup_deviation_2d(k, SplineParams(4.0, 0.0))
            d10 = sup_deviation_2d(k, SplineParams(10.0, 0.0))
            assert d10 < d4

    def test_1d_deviation_small_at_alpha6(self):
        assert sup_deviation_1d(SplineParams(6.0, 0.0)) < 0.05
