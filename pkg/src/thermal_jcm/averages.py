"""Long-time averages of the Bloch vector."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import BlochVector, ModelParams, TruncationPolicy, evolution_matrix, evolve_bloch


@dataclass(frozen=True)
class TimeAverages:
    avg_l1: float
    avg_l2: float
    avg_l3: float
    avg_l4: float


ZERO_AVERAGES = TimeAverages(0.0, 0.0, 0.0, 0.0)


def time_average_closed_resonant(beta: float) -> TimeAverages:
    """Exact averages on resonance (beta in units of ``1/(hbar omega0)``)."""
    if beta < 0:
        raise ValueError("beta must be >= 0")
    half = 0.5 * -math.expm1(-beta)
    return TimeAverages(0.0, 0.0, half, -half)


def time_average_closed_general(p: ModelParams, trunc: TruncationPolicy | None = None) -> TimeAverages:
    """Averages for arbitrary detuning as truncated photon-number sums.

    The oscillating parts average out; what is left are the sector weights
    ``(dw/2)^2 / D~(n)`` and ``g^2 n / D~(n)``. Returns exact zeros at
    ``beta = 0``.
    """
    if p.beta == 0:
        return ZERO_AVERAGES
    trunc = trunc or p.truncation
    rate = p.thermal_rate
    n = np.arange(1, trunc.order(rate) + 1, dtype=float)
    one_minus_q = -math.expm1(-rate)
    q = math.exp(-rate)
    d = (p.delta_omega / 2.0) ** 2 + p.g_coupling**2 * n
    detune_part = (p.delta_omega / 2.0) ** 2 / d
    coupling_part = p.g_coupling**2 * n / d
    # e^{x} q^n = q^{n-1} keeps the terms finite for large beta
    qn1 = np.exp(-rate * (n - 1.0))
    l3 = one_minus_q * np.sum((detune_part + 0.5 * one_minus_q * coupling_part) * qn1)
    l4 = one_minus_q * np.sum((detune_part + 0.5 * (1.0 + q) * coupling_part) * qn1) - 1.0
    return TimeAverages(0.0, 0.0, float(l3), float(l4))


def time_average_limits(p: ModelParams) -> tuple[TimeAverages, TimeAverages]:
    """``(beta -> 0, beta -> inf)`` limits of the averages for the given detuning and coupling."""
    dw2 = p.delta_omega**2
    g2 = p.g_coupling**2
    hot = ZERO_AVERAGES
    cold = TimeAverages(0.0, 0.0, (dw2 + 2 * g2) / (dw2 + 4 * g2), -2 * g2 / (dw2 + 4 * g2))
    return hot, cold


def average_bloch(s0: BlochVector, avgs: TimeAverages) -> BlochVector:
    sx, sy, sz = s0
    return BlochVector(
        avgs.avg_l1 * sx + avgs.avg_l2 * sy,
        -avgs.avg_l2 * sx + avgs.avg_l1 * sy,
        avgs.avg_l3 * sz + avgs.avg_l4,
    )


def time_average_numeric(
    s0: BlochVector, p: ModelParams, t_max: float, step: float = 0.05
) -> BlochVector:
    """Trapezoid-rule average of ``S(t)`` over ``[0, t_max]``.

    Approximates the infinite-time average with an error of order ``1/t_max``.
    """
    if not t_max > 0:
        raise ValueError("t_max must be > 0")
    if not 0 < step <= t_max:
        raise ValueError("step must satisfy 0 < step <= t_max")
    n = int(round(t_max / step))
    t = np.linspace(0.0, n * step, n + 1)
    if t[-1] < t_max:
        t = np.append(t, t_max)
    pts = evolve_bloch(s0, evolution_matrix(t, p))
    avg = np.trapezoid(pts, t, axis=0) / t[-1]
    return BlochVector.from_array(avg)
