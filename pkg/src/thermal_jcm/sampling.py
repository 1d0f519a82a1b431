"""Sampled S_z series, histograms and the density fits used to describe them."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .series import BlochVector, ModelParams, evolution_matrix, evolve_bloch

ORIGIN = BlochVector(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class SampleSeries:
    delta_t: float
    values: np.ndarray
    beta: float

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class Histogram:
    bin_left_edges: np.ndarray
    counts: np.ndarray
    class_interval: float

    @property
    def centers(self) -> np.ndarray:
        return self.bin_left_edges + 0.5 * self.class_interval

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class MomentStats:
    mu: float
    sigma2: float


@dataclass(frozen=True)
class ArcsineFit:
    amplitude: float
    residual: float  # RMS of count residuals over the fitted bins
    n_bins: int


@dataclass(frozen=True)
class NormalFit:
    """Gaussian curve ``amplitude * exp(-(y - mu)^2 / (2 sigma2))`` over bin counts."""

    amplitude: float
    mu: float
    sigma2: float
    residual: float

    @property
    def density_scale(self) -> float:
        """Multiplier of the normalised normal density giving the same curve."""
        return self.amplitude * math.sqrt(2 * math.pi * self.sigma2)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return self.amplitude * np.exp(-((y - self.mu) ** 2) / (2 * self.sigma2))


@dataclass(frozen=True)
class PowerLawFit:
    c1: float
    c2: float
    beta_range: tuple[float, float]
    residual: float  # RMS in (ln beta, ln sigma2)
    n_points: int

    def __call__(self, beta):
        return self.c1 * np.asarray(beta, dtype=float) ** self.c2


def sample_series(
    p: ModelParams, s0: BlochVector = ORIGIN, delta_t: float = 0.05, n_samples: int = 10000
) -> SampleSeries:
    """``S_z(k * delta_t)`` for ``k = 0 .. n_samples - 1``."""
    if not delta_t > 0:
        raise ValueError("delta_t must be > 0")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    t = delta_t * np.arange(n_samples)
    z = evolve_bloch(s0, evolution_matrix(t, p))[:, 2]
    return SampleSeries(float(delta_t), z, float(p.beta))


def build_histogram(s: SampleSeries | np.ndarray, class_interval: float) -> Histogram:
    """Uniform bins of width ``class_interval`` starting at the smallest sample.

    Bins are half-open ``[left, left + dy)``; the last bin also holds the
    largest sample.
    """
    if not class_interval > 0:
        raise ValueError("class_interval must be > 0")
    v = np.asarray(s.values if isinstance(s, SampleSeries) else s, dtype=float)
    if v.size == 0:
        raise ValueError("cannot histogram an empty series")
    lo, hi = float(v.min()), float(v.max())
    n_bins = max(1, math.ceil((hi - lo) / class_interval))
    # float rounding in ceil can leave the max one bin short
    if lo + n_bins * class_interval < hi:
        n_bins += 1
    idx = np.floor((v - lo) / class_interval).astype(np.int64)
    idx = np.clip(idx, 0, n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    edges = lo + class_interval * np.arange(n_bins)
    return Histogram(edges, counts, float(class_interval))


def arcsine_density(y):
    """``1 / sqrt(1 - (2y + 1)^2)`` on the open interval ``(-1, 0)``."""
    arr = np.asarray(y, dtype=float)
    if np.any((arr <= -1.0) | (arr >= 0.0)):
        raise ValueError("arcsine density is defined only for -1 < y < 0")
    out = 1.0 / np.sqrt(1.0 - (2.0 * arr + 1.0) ** 2)
    return float(out) if out.ndim == 0 else out


def _arcsine_bins(h: Histogram, exclude_endpoints: bool):
    x = h.centers
    keep = (x > -1.0) & (x < 0.0)
    if exclude_endpoints:
        keep[0] = keep[-1] = False
    return keep


def fit_arcsine_amplitude(h: Histogram, exclude_endpoints: bool = False) -> ArcsineFit:
    """Least-squares amplitude ``a`` of ``a * arcsine_density`` at bin centers.

    By default every bin whose center lies inside ``(-1, 0)`` is used,
    including the two bins next to the singular ends. With
    ``exclude_endpoints`` the first and last bins are dropped, which gives
    the continuum amplitude ``N dy (2/pi)`` instead.
    """
    interior = (h.centers > -1.0) & (h.centers < 0.0)
    interior[0] = interior[-1] = False
    if interior.sum() < 3:
        raise ValueError("need at least 3 interior bins for an arcsine fit")
    keep = _arcsine_bins(h, exclude_endpoints)
    f = arcsine_density(h.centers[keep])
    c = h.counts[keep].astype(float)
    a = float(c @ f / (f @ f))
    resid = float(np.sqrt(np.mean((c - a * f) ** 2)))
    return ArcsineFit(a, resid, int(keep.sum()))


def arcsine_l1_distance(h: Histogram) -> float:
    """L1 distance between the histogram and the arcsine density, both
    normalised over interior bins (endpoint bins excluded)."""
    keep = _arcsine_bins(h, exclude_endpoints=True)
    if keep.sum() < 3:
        raise ValueError("need at least 3 interior bins")
    c = h.counts[keep].astype(float)
    f = arcsine_density(h.centers[keep])
    return float(np.abs(c / c.sum() - f / f.sum()).sum())


def sample_moments(s: SampleSeries | np.ndarray) -> MomentStats:
    """Mean and population variance (``1/(N+1)`` normalisation)."""
    v = np.asarray(s.values if isinstance(s, SampleSeries) else s, dtype=float)
    if v.size < 1:
        raise ValueError("need at least one sample")
    mu = float(np.mean(v))
    return MomentStats(mu, float(np.mean((v - mu) ** 2)))


def sample_skewness(s: SampleSeries | np.ndarray) -> float:
    v = np.asarray(s.values if isinstance(s, SampleSeries) else s, dtype=float)
    m = sample_moments(v)
    if m.sigma2 == 0:
        return 0.0
    return float(np.mean((v - m.mu) ** 3) / m.sigma2**1.5)


def fit_normal(h: Histogram, m: MomentStats) -> NormalFit:
    """Fit the peak amplitude of a Gaussian with mean and variance fixed to the sample moments."""
    if not m.sigma2 > 0:
        raise ValueError("sigma2 must be > 0 for a normal fit")
    shape = np.exp(-((h.centers - m.mu) ** 2) / (2 * m.sigma2))
    c = h.counts.astype(float)
    denom = shape @ shape
    if denom == 0:
        raise ValueError("Gaussian vanishes on every bin center")
    a = float(c @ shape / denom)
    resid = float(np.sqrt(np.mean((c - a * shape) ** 2)))
    return NormalFit(a, m.mu, m.sigma2, resid)


def default_beta_grid(lo: float = 0.01, hi: float = 10.0, points: int = 20) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), points)


def variance_scan(
    beta_grid,
    p_template: ModelParams,
    delta_t: float = 0.05,
    n_samples: int = 10000,
    s0: BlochVector = ORIGIN,
    workers: int = 1,
) -> list[tuple[float, MomentStats]]:
    """Sample moments of ``S_z`` for each ``beta`` with identical sampling."""
    betas = [float(b) for b in np.atleast_1d(np.asarray(beta_grid, dtype=float))]
    if not betas:
        raise ValueError("beta grid is empty")
    if any(b <= 0 for b in betas):
        raise ValueError("betas must be > 0")

    def one(b):
        return b, sample_moments(sample_series(p_template.with_beta(b), s0, delta_t, n_samples))

    if workers == 1 or len(betas) == 1:
        return [one(b) for b in betas]
    with ThreadPoolExecutor(max_workers=workers or None) as pool:
        return list(pool.map(one, betas))


def power_law_fit(scan, fit_range: tuple[float, float] = (0.01, 0.1)) -> PowerLawFit:
    """Fit ``sigma2 = c1 * beta**c2`` by linear least squares in log-log space."""
    lo, hi = fit_range
    pts = [(b, m.sigma2) for b, m in scan if lo <= b <= hi]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points in [{lo}, {hi}], got {len(pts)}")
    b, v = np.array(pts).T
    if np.any(v <= 0):
        raise ValueError("zero variance inside the fit range")
    x, y = np.log(b), np.log(v)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (intercept + slope * x)) ** 2)))
    return PowerLawFit(float(math.exp(intercept)), float(slope), (float(lo), float(hi)), resid, len(pts))
