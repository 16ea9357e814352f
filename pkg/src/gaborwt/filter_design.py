"""Semi-orthogonal spline channel filters and their Hilbert-pair partners.

A channel bundles the four perfect-reconstruction filters of one
decimated wavelet decomposition (analysis lowpass/highpass ``h_tilde``,
``g_tilde`` and synthesis ``h``, ``g``), sampled on the DFT grid of every
pyramid level, together with the projection pre-filter.  The second
dual-tree channel is obtained from the first by modulation with the
discrete Hilbert filter, which shifts the underlying spline by half a
sample and preserves perfect reconstruction exactly.

Closed forms (z = e^{jw}):

    h_tilde(z) = refinement filter of beta^a_t
    g_tilde(z) = z * A(-z) * h_tilde(-1/z)
    h(z)       = h_tilde(z) * A(z) / A(z^2)
    g(z)       = g_tilde(z) / (A(z^2) * A(-z))
    p(z)       = beta^(w) / A(z)          (dual-spline projection filter)

where A is the autocorrelation filter.  All responses are cached per
(alpha, tau, n, levels) so a design is built once per signal length.
"""

from __future__ import annotations

import functools
import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .spline_core import (
    ComplexResponse,
    FrequencyGrid,
    SplineParams,
    autocorr_ft,
    bspline_ft,
    fd_ft,
    refinement_ft,
)

__all__ = [
    "LevelFilters",
    "ChannelFilters",
    "DualTreeDesign",
    "design_channel",
    "ht_pair_channel",
    "verify_pr",
    "prefilter_response",
    "analytic_filter",
    "design_dual_tree",
    "save_design",
    "load_design",
]

RIESZ_FLOOR = 1e-8
MANIFEST_NAME = "manifest.json"
FORMAT_VERSION = 1


class RieszBoundError(ValueError):
    """Autocorrelation spectrum too close to zero for a stable design."""


@dataclass(frozen=True)
class LevelFilters:
    """The four PR filters of one pyramid level, on that level's grid."""

    h_tilde: ComplexResponse
    g_tilde: ComplexResponse
    h: ComplexResponse
    g: ComplexResponse

    @property
    def grid(self) -> FrequencyGrid:
        return self.h_tilde.grid


@dataclass(frozen=True)
class ChannelFilters:
    """Per-level analysis/synthesis filters plus the projection pre-filter."""

    params: SplineParams
    levels: tuple[LevelFilters, ...]
    prefilter: ComplexResponse

    @property
    def signal_len(self) -> int:
        return self.prefilter.grid.n

    @property
    def n_levels(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class DualTreeDesign:
    """A matched pair of channels whose wavelets form an exact HT pair."""

    channel_a: ChannelFilters
    channel_b: ChannelFilters
    levels: int
    signal_len: int


def _validate_geometry(n: int, levels: int):
    if n < 4 or (n & (n - 1)) != 0:
        raise ValueError(f"signal length must be a power of two >= 4, got {n}")
    if levels < 1:
        raise ValueError("need at least one decomposition level")
    if n >> levels < 2 or levels > int(np.log2(n)) - 2:
        raise ValueError(
            f"too many levels ({levels}) for length {n}; need levels <= log2(n) - 2"
        )


def _autocorr_checked(alpha: float, omega: np.ndarray) -> np.ndarray:
    a = autocorr_ft(alpha, omega)
    if np.min(a) < RIESZ_FLOOR:
        bad = int(np.argmin(a))
        raise RieszBoundError(
            f"autocorrelation {a[bad]:.3e} below {RIESZ_FLOOR} at omega={omega[bad]:.6f}"
        )
    return a


def _level_filters(p: SplineParams, grid: FrequencyGrid) -> LevelFilters:
    w = grid.omega
    a_w = _autocorr_checked(p.alpha, w)
    a_mirror = _autocorr_checked(p.alpha, w + np.pi)
    a_dil = _autocorr_checked(p.alpha, 2.0 * w)

    ht = refinement_ft(p, w)
    # h_tilde(-1/z) is the closed form at frequency pi - w
    gt = np.exp(1j * w) * a_mirror * refinement_ft(p, np.pi - w)
    h = ht * a_w / a_dil
    g = gt / (a_dil * a_mirror)
    return LevelFilters(
        h_tilde=ComplexResponse(grid, ht, real_time_domain=True),
        g_tilde=ComplexResponse(grid, gt, real_time_domain=True),
        h=ComplexResponse(grid, h, real_time_domain=True),
        g=ComplexResponse(grid, g, real_time_domain=True),
    )


def prefilter_response(p: SplineParams, n: int) -> ComplexResponse:
    """Projection pre-filter P = dual-spline spectrum beta^/A on an n-grid.

    The continuous definition only covers the open interval (-pi, pi); a
    real filter on an even grid must have a real Nyquist response, so the
    Nyquist bin's phase e^{-j pi tau} is flattened to its nearest real
    value (sign of cos(pi*tau), +1 at the half-integer ambiguity).  The
    response has no zero bins, which makes the projection invertible.
    """
    grid = FrequencyGrid(n)
    w = grid.omega
    vals = bspline_ft(p, w) / _autocorr_checked(p.alpha, w)
    c = np.cos(np.pi * p.tau)
    sign = 1.0 if abs(c) < 1e-12 else np.sign(c)
    vals[n // 2] = sign * np.abs(vals[n // 2])
    return ComplexResponse(grid, vals, real_time_domain=True)


@functools.lru_cache(maxsize=64)
def _design_channel_cached(alpha: float, tau: float, n: int, levels: int) -> ChannelFilters:
    p = SplineParams(alpha, tau)
    per_level = tuple(
        _level_filters(p, FrequencyGrid(n >> i)) for i in range(levels)
    )
    return ChannelFilters(p, per_level, prefilter_response(p, n))


def design_channel(p: SplineParams, n: int, levels: int) -> ChannelFilters:
    """Build the semi-orthogonal spline channel for an n-sample signal.

    Designs are cached per (alpha, tau, n, levels) and reused across
    signals.  Raises RieszBoundError when the autocorrelation spectrum
    drops below the stability floor.
    """
    _validate_geometry(n, levels)
    return _design_channel_cached(p.alpha, p.tau, n, levels)


def ht_pair_channel(ch: ChannelFilters) -> ChannelFilters:
    """Channel of the half-shifted spline, obtained by HT modulation.

    g_tilde' = D(z) g_tilde, g' = D(z) g (highpass pair), while the
    lowpass filters pick up the conjugate-mirrored factor D(-1/z), which
    equals the half-sample delay e^{-jw/2} on the open interval.  The
    pre-filter is rebuilt for the shifted spline.  Bin-wise identical
    (to ~1e-15) to a direct design at tau + 1/2.
    """
    p2 = ch.params.half_shifted()
    new_levels = []
    for lf in ch.levels:
        w = lf.grid.omega
        d = fd_ft(0.0, -0.5, w)
        d_mirror = fd_ft(0.0, -0.5, np.pi - w)  # D(-e^{-jw})
        new_levels.append(
            LevelFilters(
                h_tilde=ComplexResponse(lf.grid, d_mirror * lf.h_tilde.values, True),
                g_tilde=ComplexResponse(lf.grid, d * lf.g_tilde.values, True),
                h=ComplexResponse(lf.grid, d_mirror * lf.h.values, True),
                g=ComplexResponse(lf.grid, d * lf.g.values, True),
            )
        )
    return ChannelFilters(p2, tuple(new_levels), prefilter_response(p2, ch.signal_len))


def verify_pr(ch: ChannelFilters) -> float:
    """Max deviation from the two perfect-reconstruction identities.

    Per level and bin (z = e^{jw}):
        |g(1/z) g_tilde(z) + h(1/z) h_tilde(z) - 1|     (transfer)
        |g(1/z) g_tilde(-z) + h(1/z) h_tilde(-z)|        (alias)

    The filters are real, so the 1/z responses are bin-wise conjugates.
    """
    worst = 0.0
    for lf in ch.levels:
        n = lf.grid.n
        mirror = (np.arange(n) + n // 2) % n
        hs = np.conj(lf.h.values)
        gs = np.conj(lf.g.values)
        transfer = gs * lf.g_tilde.values + hs * lf.h_tilde.values - 1.0
        alias = gs * lf.g_tilde.values[mirror] + hs * lf.h_tilde.values[mirror]
        worst = max(worst, np.max(np.abs(transfer)), np.max(np.abs(alias)))
    return float(worst)


def analytic_filter(design: DualTreeDesign) -> ComplexResponse:
    """Combined projection/wavelet filter P_a = P g_tilde + j P' g_tilde'.

    One-sided: |P_a| vanishes on the negative-frequency bins and at DC
    (the Nyquist bin is excluded from that statement; it carries the
    grid's phase-flattening convention).
    """
    cha, chb = design.channel_a, design.channel_b
    vals = (
        cha.prefilter.values * cha.levels[0].g_tilde.values
        + 1j * chb.prefilter.values * chb.levels[0].g_tilde.values
    )
    return ComplexResponse(cha.prefilter.grid, vals)


def design_dual_tree(p: SplineParams, n: int, levels: int) -> DualTreeDesign:
    """Dual-tree pair: direct design at tau plus its HT-modulated partner."""
    cha = design_channel(p, n, levels)
    return DualTreeDesign(cha, ht_pair_channel(cha), levels, n)


# ---------------------------------------------------------------------------
# serialization: JSON manifest + raw little-endian complex64 arrays
# (interleaved re/im, i.e. numpy dtype '<c8')

def _write_c8(path: Path, values: np.ndarray):
    path.write_bytes(np.ascontiguousarray(values, dtype="<c8").tobytes())


def _read_c8(path: Path, n: int) -> np.ndarray:
    raw = np.frombuffer(path.read_bytes(), dtype="<c8")
    if raw.shape != (n,):
        raise ValueError(f"{path}: expected {n} complex64 samples, got {raw.shape}")
    return raw.astype(np.complex128)


def save_design(design: DualTreeDesign, out_dir) -> Path:
    """Write a filter-bank bundle: manifest.json + one .c8 file per response."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for tag, ch in (("a", design.channel_a), ("b", design.channel_b)):
        for i, lf in enumerate(ch.levels, start=1):
            for name in ("h_tilde", "g_tilde", "h", "g"):
                resp: ComplexResponse = getattr(lf, name)
                fname = f"{tag}_L{i}_{name}.c8"
                _write_c8(out / fname, resp.values)
                entries.append({"channel": tag, "level": i, "name": name,
                                "file": fname, "length": resp.grid.n})
        fname = f"{tag}_prefilter.c8"
        _write_c8(out / fname, ch.prefilter.values)
        entries.append({"channel": tag, "level": 0, "name": "prefilter",
                        "file": fname, "length": ch.signal_len})
    manifest = {
        "format_version": FORMAT_VERSION,
        "kind": "filter_bank",
        "byte_order": "little-endian",
        "sample_format": "complex64 interleaved re/im",
        "alpha": design.channel_a.params.alpha,
        "tau": design.channel_a.params.tau,
        "length": design.signal_len,
        "levels": design.levels,
        "responses": entries,
    }
    (out / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return out


def load_design(in_dir) -> DualTreeDesign:
    """Rebuild a DualTreeDesign from a saved bundle (complex64 precision)."""
    src = Path(in_dir)
    manifest = json.loads((src / MANIFEST_NAME).read_text())
    if manifest.get("kind") != "filter_bank":
        raise ValueError(f"{src}: not a filter-bank bundle")
    n, levels = manifest["length"], manifest["levels"]
    p = SplineParams(manifest["alpha"], manifest["tau"])
    by_key = {(e["channel"], e["level"], e["name"]): e for e in manifest["responses"]}

    def channel(tag: str, params: SplineParams) -> ChannelFilters:
        lfs = []
        for i in range(1, levels + 1):
            resp = {}
            for name in ("h_tilde", "g_tilde", "h", "g"):
                e = by_key[(tag, i, name)]
                grid = FrequencyGrid(e["length"])
                resp[name] = ComplexResponse(grid, _read_c8(src / e["file"], e["length"]))
            lfs.append(LevelFilters(**resp))
        e = by_key[(tag, 0, "prefilter")]
        pre = ComplexResponse(FrequencyGrid(n), _read_c8(src / e["file"], n))
        return ChannelFilters(params, tuple(lfs), pre)

    cha = channel("a", p)
    chb = channel("b", p.half_shifted())
    return DualTreeDesign(cha, chb, levels, n)
