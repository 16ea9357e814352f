import numpy as np
import pytest

from gaborwt.spline_core import SplineParams
from gaborwt.transform2d import (
    CHANNEL_SHIFTS,
    ORIENTATIONS,
    ChannelTable,
    MixingMatrices,
    Pyramid2D,
    _XI_SLOTS,
    _ZETA_SLOTS,
    build_channel_table,
    directional_ht_check,
    dtcwt2d_forward,
    dtcwt2d_inverse,
    mix_subbands,
    quadrant_energy_fraction,
    render_wavelet2d,
    unmix_subbands,
)

RNG = np.random.default_rng(3)
P3 = SplineParams(3.0, 0.0)


class TestMixing:
    def test_orthonormal_exactly(self):
        m = MixingMatrices.standard()
        # entries are exact {0, 1, +-1/sqrt(2)}; the product is identity
        # to one rounding of (1/sqrt(2))^2 + (1/sqrt(2))^2
        np.testing.assert_allclose(m.lambda_r @ m.lambda_r.T, np.eye(6), atol=1e-15)
        np.testing.assert_allclose(m.lambda_i @ m.lambda_i.T, np.eye(6), atol=1e-15)

    def test_identity_block_impulse(self):
        imp = np.zeros((4, 4))
        imp[1, 2] = 1.0
        zeros = [np.zeros((4, 4))] * 5
        w = mix_subbands([imp] + zeros, [imp] + zeros)
        np.testing.assert_array_equal(w[0], (1 + 1j) * imp)
        for k in range(1, 6):
            assert np.all(w[k] == 0)

    def test_diagonal_block_formulas(self):
        a, b, c, d = (RNG.standard_normal((4, 4)) for _ in range(4))
        z = [np.zeros((4, 4))] * 4
        w = mix_subbands(z + [a, b], z + [c, d])
        s = np.sqrt(2.0)
        np.testing.assert_allclose(w[4], (a - b) / s + 1j * (c + d) / s, atol=1e-14)
        np.testing.assert_allclose(w[5], (a + b) / s + 1j * (c - d) / s, atol=1e-14)

    def test_unmix_round_trip(self):
        zeta = [RNG.standard_normal((8, 8)) for _ in range(6)]
        xi = [RNG.standard_normal((8, 8)) for _ in range(6)]
        z2, x2 = unmix_subbands(mix_subbands(zeta, xi))
        for a, b in zip(zeta, z2):
            np.testing.assert_allclose(a, b, atol=1e-14)
        for a, b in zip(xi, x2):
            np.testing.assert_allclose(a, b, atol=1e-14)


class TestGroupingTables:
    def test_slots_form_a_bijection(self):
        slots = list(_ZETA_SLOTS) + list(_XI_SLOTS)
        assert len(slots) == 12 and len(set(slots)) == 12
        assert {s[0] for s in slots} == {"HL", "LH", "HH"}
        assert {s[1] for s in slots} == {0, 1, 2, 3}
        # each (band, channel) combination appears exactly once
        assert set(slots) == {(b, c) for b in ("HL", "LH", "HH") for c in range(4)}

    def test_orientation_angles(self):
        assert ORIENTATIONS[:2] == (0.0, 0.0)
        assert ORIENTATIONS[2] == ORIENTATIONS[3] == np.pi / 2
        assert ORIENTATIONS[4] == np.pi / 4
        assert ORIENTATIONS[5] == 3 * np.pi / 4


class TestChannelTable:
    def test_channel_enumeration(self):
        assert set(CHANNEL_SHIFTS) == {(0, 0), (0, 1), (1, 0), (1, 1)}
        table = build_channel_table(P3, (64, 64), 2)
        chx4, chy4 = table.channel(3)
        assert chx4.params.tau == 0.5 and chy4.params.tau == 0.5

    def test_reuses_two_designs_per_axis(self):
        table = build_channel_table(P3, (64, 64), 2)
        # square images share the axis designs outright
        assert table.x_filters is table.y_filters
        assert table.channel(0)[0] is table.channel(1)[0]

    def test_prefilter_dc(self):
        table = build_channel_table(P3, (64, 64), 2)
        chx, chy = table.channel(0)
        assert chx.prefilter.values[0] == pytest.approx(1.0)
        assert chy.prefilter.values[0] == pytest.approx(1.0)


class TestFullTransform2D:
    @pytest.mark.parametrize("alpha", [2.0, 3.0, 6.0])
    @pytest.mark.parametrize("size,levels", [(64, 1), (64, 2), (128, 2)])
    def test_perfect_reconstruction(self, alpha, size, levels):
        table = build_channel_table(SplineParams(alpha, 0.0), (size, size), levels)
        img = RNG.standard_normal((size, size))
        rec = dtcwt2d_inverse(dtcwt2d_forward(img, table), table)
        assert np.max(np.abs(rec - img)) <= 1e-10

    def test_rectangular_image(self):
        table = build_channel_table(P3, (64, 32), 1)
        img = RNG.standard_normal((64, 32))
        rec = dtcwt2d_inverse(dtcwt2d_forward(img, table), table)
        assert np.max(np.abs(rec - img)) <= 1e-10

    def test_constant_image(self):
        table = build_channel_table(P3, (64, 64), 2)
        pyr = dtcwt2d_forward(np.ones((64, 64)), table)
        assert max(np.max(np.abs(wk)) for lvl in pyr.w for wk in lvl) <= 1e-12

    def test_subband_counts_and_shapes(self):
        table = build_channel_table(P3, (64, 64), 2)
        pyr = dtcwt2d_forward(RNG.standard_normal((64, 64)), table)
        assert len(pyr.lowpass) == 4 and pyr.levels == 2
        assert all(len(lvl) == 6 for lvl in pyr.w)
        assert pyr.w[0][0].shape == (32, 32) and pyr.w[1][0].shape == (16, 16)
        # 4x redundancy: 4 lowpass + 12 reals worth of complex per level
        count = sum(a.size for a in pyr.lowpass) + 2 * sum(
            wk.size for lvl in pyr.w for wk in lvl)
        assert count == 4 * 64 * 64

    def test_linearity_of_round_trip(self):
        table = build_channel_table(P3, (64, 64), 1)
        a = RNG.standard_normal((64, 64))
        b = RNG.standard_normal((64, 64))
        ra = dtcwt2d_inverse(dtcwt2d_forward(a, table), table)
        rb = dtcwt2d_inverse(dtcwt2d_forward(b, table), table)
        rc = dtcwt2d_inverse(dtcwt2d_forward(a + 2.0 * b, table), table)
        np.testing.assert_allclose(rc, ra + 2.0 * rb, atol=1e-10)

    def test_zero_pyramid(self):
        table = build_channel_table(P3, (64, 64), 1)
        pyr = dtcwt2d_forward(np.zeros((64, 64)), table)
        assert np.max(np.abs(dtcwt2d_inverse(pyr, table))) == 0.0

    def test_dim_mismatch(self):
        table = build_channel_table(P3, (64, 64), 1)
        with pytest.raises(ValueError):
            dtcwt2d_forward(np.zeros((32, 32)), table)


class TestOrientationSelectivity:
    @pytest.mark.parametrize("angle,freq", [
        (0, (1, 0)), (1, (0, 1)), (2, (1, 1)), (3, (-1, 1))])
    def test_plane_wave_energy(self, angle, freq):
        size = 64
        table = build_channel_table(P3, (size, size), 2)
        w1 = 2.0 * np.pi * 26 / size
        xx, yy = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
        img = np.cos(w1 * (freq[0] * xx + freq[1] * yy))
        pyr = dtcwt2d_forward(img, table)
        e = np.array([sum(float(np.sum(np.abs(lvl[k]) ** 2)) for lvl in pyr.w)
                      for k in range(6)])
        groups = ((0, 1), (2, 3), (4,), (5,))
        fracs = [np.sum(e[list(g)]) / np.sum(e) for g in groups]
        assert fracs[angle] > 0.9
        assert all(f < 0.05 for i, f in enumerate(fracs) if i != angle)


class TestRenders:
    def test_equal_component_norms(self):
        for k in range(1, 7):
            _, f = render_wavelet2d(k, P3)
            nr, ni = np.linalg.norm(f.real), np.linalg.norm(f.imag)
            assert abs(nr / ni - 1.0) <= 1e-8

    def test_invalid_orientation(self):
        with pytest.raises(ValueError):
            render_wavelet2d(0, P3)
        with pytest.raises(ValueError):
            render_wavelet2d(7, P3)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_quadrant_support(self, k):
        assert quadrant_energy_fraction(k, P3) <= 1e-8

    def test_psi1_approximates_shifted_psi2(self):
        devs = []
        for alpha in (3.0, 6.0):
            p = SplineParams(alpha, 0.0)
            x, f1 = render_wavelet2d(1, p)
            _, f2 = render_wavelet2d(2, p)
            shift = int(round(0.5 / (x[1] - x[0])))
            dev = np.max(np.abs(f1 - np.roll(f2, -shift, axis=1)))
            devs.append(dev / np.max(np.abs(f1)))
        assert devs[0] < 0.01 and devs[1] < devs[0]


class TestDirectionalHT:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_relation_holds(self, k):
        assert directional_ht_check(k, P3) <= 1e-10

    def test_wrong_angle_fails(self):
        # applying the k=1 multiplier with the axis rotated by 90 degrees
        # must not satisfy the relation (sanity check of the oracle)
        from gaborwt.transform2d import _hat2d
        w = np.linspace(-24.0, 24.0, 256)
        hat_p = _hat2d(1, P3, w, w)
        hat_m = _hat2d(1, P3, -w, -w)
        re_hat = 0.5 * (hat_p + np.conj(hat_m))
        im_hat = (hat_p - np.conj(hat_m)) / 2j
        proj = np.add.outer(0.0 * w, w)  # u rotated to the y axis
        mask = np.abs(proj) > 1e-9
        dev = np.abs(im_hat + 1j * np.sign(proj) * re_hat)
        assert np.max(dev[mask]) > 1e-2
