"""Bloch-vector evolution map of a two-level atom in a thermal single-mode field.

The reduced atomic state evolves under an affine map::

    S(t) = [[l1, l2, 0], [-l2, l1, 0], [0, 0, l3]] S(0) + (0, 0, l4)

whose coefficients are thermal averages over photon-number sectors. Each
coefficient is a series in ``exp(-n * beta * omega)`` and is truncated
according to a :class:`TruncationPolicy`.

Two parameterisations are supported:

* resonant reduced units (``evolution_matrix_resonant``): time in units of
  ``1/|g|`` and ``beta`` in units of ``1/(hbar * omega0)``;
* general units (``evolution_matrix_general``): ``hbar = 1`` with ``g``,
  ``omega`` and ``omega0`` given explicitly.

Reduced units are the general ones with ``omega = omega0 = g = 1``; see
:func:`to_resonant_units`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "TruncationPolicy",
    "ModelParams",
    "BlochVector",
    "EvolutionMatrix",
    "Trajectory",
    "dtilde",
    "truncation_order",
    "evolution_matrix_resonant",
    "evolution_matrix_general",
    "evolution_matrix",
    "evolve_bloch",
    "trajectory",
    "to_resonant_units",
    "compose",
    "map_distance",
    "self_crossings",
]

# Number of (time x term) elements evaluated at once.
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class TruncationPolicy:
    """How many photon-number terms to keep in each thermal series.

    ``fixed`` keeps terms ``n = 0..n_max``. ``adaptive`` picks the smallest
    ``N`` whose geometric tail bound ``exp(-N x) / (1 - exp(-x))`` is below
    ``epsilon``, with ``x = beta * omega``.
    """

    mode: str = "adaptive"
    n_max: int | None = None
    epsilon: float | None = 1e-12

    def __post_init__(self):
        if self.mode == "fixed":
            if self.n_max is None or int(self.n_max) != self.n_max or self.n_max < 1:
                raise ValueError(f"fixed truncation needs an integer N >= 1, got {self.n_max!r}")
        elif self.mode == "adaptive":
            if self.epsilon is None or not 0.0 < self.epsilon < 1.0:
                raise ValueError(f"adaptive truncation needs 0 < epsilon < 1, got {self.epsilon!r}")
        else:
            raise ValueError(f"unknown truncation mode {self.mode!r}")

    @classmethod
    def fixed(cls, n_max: int) -> "TruncationPolicy":
        return cls("fixed", n_max=n_max, epsilon=None)

    @classmethod
    def adaptive(cls, epsilon: float = 1e-12) -> "TruncationPolicy":
        return cls("adaptive", n_max=None, epsilon=epsilon)

    @classmethod
    def parse(cls, text: str) -> "TruncationPolicy":
        """Parse ``"fixed:500"`` or ``"adaptive:1e-12"``."""
        mode, _, value = text.partition(":")
        mode = mode.strip().lower()
        if mode == "fixed":
            return cls.fixed(int(value) if value else 500)
        if mode == "adaptive":
            return cls.adaptive(float(value) if value else 1e-12)
        raise ValueError(f"cannot parse truncation policy {text!r}")

    def order(self, rate: float) -> int:
        """Highest photon number kept when the thermal ratio is ``exp(-rate)``."""
        if self.mode == "fixed":
            return int(self.n_max)
        if rate <= 0.0:
            raise ValueError("adaptive truncation undefined at infinite temperature")
        eps = self.epsilon
        # log of the tail bound at N is -N*rate - log(1 - exp(-rate))
        log_norm = math.log(-math.expm1(-rate))
        n = max(1, math.ceil((-math.log(eps) - log_norm) / rate))
        while n > 1 and -(n - 1) * rate - log_norm < math.log(eps):
            n -= 1
        while -n * rate - log_norm >= math.log(eps):
            n += 1
        return n

    def __str__(self):
        if self.mode == "fixed":
            return f"fixed:{self.n_max}"
        return f"adaptive:{self.epsilon:g}"


@dataclass(frozen=True)
class ModelParams:
    """Physical configuration in general units (``hbar = 1``).

    ``delta_omega`` is derived as ``omega - omega0``. The defaults
    ``omega = omega0 = g = 1`` make every general-unit routine coincide with
    the resonant reduced units.
    """

    beta: float
    omega: float = 1.0
    omega0: float = 1.0
    g_coupling: float = 1.0
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy.adaptive)

    def __post_init__(self):
        if not np.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"beta must be finite and >= 0, got {self.beta}")
        if self.g_coupling == 0:
            raise ValueError("g_coupling must be nonzero")
        if not self.omega > 0:
            raise ValueError(f"field frequency omega must be > 0, got {self.omega}")
        for name in ("omega", "omega0", "g_coupling"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def resonant(cls, beta: float, truncation: TruncationPolicy | None = None) -> "ModelParams":
        """Parameters whose general units equal the resonant reduced units."""
        return cls(beta, truncation=truncation or TruncationPolicy.adaptive())

    @classmethod
    def detuned(
        cls,
        beta: float,
        delta_omega: float,
        g_coupling: float = 1.0,
        omega0: float = 1.0,
        truncation: TruncationPolicy | None = None,
    ) -> "ModelParams":
        return cls(
            beta,
            omega=omega0 + delta_omega,
            omega0=omega0,
            g_coupling=g_coupling,
            truncation=truncation or TruncationPolicy.adaptive(),
        )

    @property
    def delta_omega(self) -> float:
        return self.omega - self.omega0

    @property
    def thermal_rate(self) -> float:
        """``beta * omega``: the exponent of the thermal ratio between photon numbers."""
        return self.beta * self.omega

    def with_beta(self, beta: float) -> "ModelParams":
        return replace(self, beta=beta)


@dataclass(frozen=True)
class BlochVector:
    sx: float
    sy: float
    sz: float

    @classmethod
    def from_array(cls, v) -> "BlochVector":
        sx, sy, sz = (float(c) for c in v)
        return cls(sx, sy, sz)

    @classmethod
    def parse(cls, text: str) -> "BlochVector":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"Bloch vector needs three components, got {text!r}")
        return cls(*parts)

    def as_array(self) -> np.ndarray:
        return np.array([self.sx, self.sy, self.sz], dtype=float)

    def norm(self) -> float:
        return math.sqrt(self.sx**2 + self.sy**2 + self.sz**2)

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))


@dataclass(frozen=True)
class EvolutionMatrix:
    """Coefficients of the affine Bloch map at one time (or on a time grid).

    Fields are floats for a scalar time and arrays of equal shape when the
    map was evaluated on a grid.
    """

    l1: float | np.ndarray
    l2: float | np.ndarray
    l3: float | np.ndarray
    l4: float | np.ndarray

    def __getitem__(self, idx) -> "EvolutionMatrix":
        return EvolutionMatrix(
            *(float(np.asarray(v)[idx]) for v in (self.l1, self.l2, self.l3, self.l4))
        )

    def augmented(self) -> np.ndarray:
        """4x4 homogeneous matrix of a scalar-time map."""
        l1, l2, l3, l4 = (float(v) for v in (self.l1, self.l2, self.l3, self.l4))
        return np.array(
            [
                [l1, l2, 0.0, 0.0],
                [-l2, l1, 0.0, 0.0],
                [0.0, 0.0, l3, l4],
                [0.0, 0.0, 0.0, 1.0],
            ]
        )


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    points: np.ndarray  # shape (len(times), 3)

    def __len__(self):
        return len(self.times)

    def __getitem__(self, i) -> BlochVector:
        return BlochVector.from_array(self.points[i])

    @property
    def sx(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def sy(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def sz(self) -> np.ndarray:
        return self.points[:, 2]


def dtilde(n, p: ModelParams):
    """Squared Rabi frequency of the ``n``-photon sector, ``(dw/2)^2 + g^2 n``."""
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("photon number must be >= 0")
    out = (p.delta_omega / 2.0) ** 2 + p.g_coupling**2 * n
    return float(out) if out.ndim == 0 else out


def truncation_order(p: ModelParams, trunc: TruncationPolicy | None = None) -> int:
    trunc = trunc or p.truncation
    return trunc.order(p.thermal_rate)


def _time_chunks(t: np.ndarray, n_terms: int):
    step = max(1, _CHUNK_ELEMENTS // max(n_terms, 1))
    for start in range(0, t.size, step):
        yield slice(start, start + step)


def _as_times(t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("times must be finite and >= 0")
    return arr


def _pack(arr: np.ndarray, scalar: bool):
    return float(arr[0]) if scalar else arr


def evolution_matrix_resonant(
    t, beta: float, trunc: TruncationPolicy | None = None
) -> EvolutionMatrix:
    """Resonant map in reduced units (time in ``1/|g|``, beta in ``1/(hbar omega0)``).

    ``t`` may be a scalar or an array of times. ``l2`` is exactly zero.
    """
    trunc = trunc or TruncationPolicy.adaptive()
    if beta < 0:
        raise ValueError("beta must be >= 0")
    times = _as_times(t)
    scalar = times.ndim == 0
    times = np.atleast_1d(times).ravel()

    n_max = trunc.order(beta)
    q = math.exp(-beta)
    one_minus_q = -math.expm1(-beta)
    n = np.arange(n_max + 1, dtype=float)
    root = np.sqrt(n)
    root_next = np.sqrt(n + 1.0)
    w1 = one_minus_q * q**n
    # weights of cos(2 sqrt(n) t), n >= 1, written as q^(n-1) to stay finite at large beta
    qn1 = q ** (n[1:] - 1.0)
    w3 = 0.5 * one_minus_q * (1.0 + q) * qn1
    w4 = 0.5 * one_minus_q**2 * qn1

    l1 = np.empty(times.size)
    s34 = np.empty(times.size)
    s4 = np.empty(times.size)
    for sl in _time_chunks(times, n.size):
        tt = times[sl, None]
        l1[sl] = np.sum(np.cos(root_next * tt) * np.cos(root * tt) * w1, axis=1)
        c2 = np.cos(2.0 * root[1:] * tt)
        s34[sl] = np.sum(c2 * w3, axis=1)
        s4[sl] = np.sum(c2 * w4, axis=1)
    l3 = 0.5 * one_minus_q + s34
    l4 = -0.5 * one_minus_q + s4
    zeros = np.zeros_like(l1)
    return EvolutionMatrix(
        _pack(l1, scalar), _pack(zeros, scalar), _pack(l3, scalar), _pack(l4, scalar)
    )


def _sin_over_root(root: np.ndarray, tt: np.ndarray) -> np.ndarray:
    """``sin(root * t) / root`` with the limit value ``t`` at ``root == 0``."""
    safe = np.where(root == 0.0, 1.0, root)
    return np.where(root == 0.0, tt, np.sin(safe * tt) / safe)


def evolution_matrix_general(
    t, p: ModelParams, trunc: TruncationPolicy | None = None
) -> EvolutionMatrix:
    """Map for arbitrary detuning in general units (``hbar = 1``).

    Built from the thermal sector averages ``A_{00,00}``, ``A_{11,00}`` and
    ``A_{01,01}`` of the interaction-picture propagator.
    """
    trunc = trunc or p.truncation
    if p.beta == 0:
        raise ValueError("thermal weights are not normalisable at beta = 0 in general units")
    times = _as_times(t)
    scalar = times.ndim == 0
    times = np.atleast_1d(times).ravel()

    rate = p.thermal_rate
    n_max = trunc.order(rate)
    half_dw = p.delta_omega / 2.0
    g2 = p.g_coupling**2
    n = np.arange(n_max + 1, dtype=float)
    w = -math.expm1(-rate) * np.exp(-rate * n)
    d_n = half_dw**2 + g2 * n  # D~(n)
    d_next = half_dw**2 + g2 * (n + 1.0)  # D~(n+1)
    r_n = np.sqrt(d_n)
    r_next = np.sqrt(d_next)
    # n = 0 term of A_{11,00} carries a factor n and vanishes
    inv_d_n = np.where(d_n == 0.0, 0.0, 1.0 / np.where(d_n == 0.0, 1.0, d_n))

    a00 = np.empty(times.size)
    a11 = np.empty(times.size)
    a01 = np.empty(times.size, dtype=complex)
    for sl in _time_chunks(times, n.size):
        tt = times[sl, None]
        cos_next = np.cos(r_next * tt)
        cos_n = np.cos(r_n * tt)
        sin_n = np.sin(r_n * tt)
        a00[sl] = np.sum((half_dw**2 + g2 * (n + 1.0) * cos_next**2) / d_next * w, axis=1)
        a11[sl] = np.sum(g2 * n * sin_n**2 * inv_d_n * w, axis=1)
        c_next = cos_next - 1j * half_dw * _sin_over_root(r_next, tt)
        c_n = cos_n - 1j * half_dw * _sin_over_root(r_n, tt)
        a01[sl] = np.sum(c_next * c_n * w, axis=1)

    l1 = a01.real
    l2 = a01.imag
    l3 = a00 - a11
    l4 = a00 + a11 - 1.0
    return EvolutionMatrix(*(_pack(v, scalar) for v in (l1, l2, l3, l4)))


def to_resonant_units(t, p: ModelParams):
    """Convert general-unit ``(t, beta)`` to resonant reduced units ``(|g| t, beta omega)``."""
    return np.asarray(t, dtype=float) * abs(p.g_coupling), p.thermal_rate


def evolution_matrix(t, p: ModelParams, trunc: TruncationPolicy | None = None) -> EvolutionMatrix:
    """Dispatch to the resonant closed forms when ``delta_omega == 0``."""
    trunc = trunc or p.truncation
    if p.delta_omega == 0:
        t_red, beta_red = to_resonant_units(t, p)
        if np.ndim(t) == 0:
            t_red = float(t_red)
        return evolution_matrix_resonant(t_red, beta_red, trunc)
    return evolution_matrix_general(t, p, trunc)


def evolve_bloch(s0: BlochVector, m: EvolutionMatrix):
    """Apply the affine map. Returns a BlochVector for scalar maps, else an (n, 3) array."""
    sx, sy, sz = s0
    x = m.l1 * sx + m.l2 * sy
    y = -m.l2 * sx + m.l1 * sy
    z = m.l3 * sz + m.l4
    if np.ndim(x) == 0:
        return BlochVector(float(x), float(y), float(z))
    return np.stack([x, y, z], axis=-1)


def trajectory(s0: BlochVector, t_grid, p: ModelParams) -> Trajectory:
    """Evaluate ``S(t)`` pointwise on ``t_grid``.

    Every point is mapped from ``S(0)`` directly; the map is not a semigroup,
    so stepping ``S(t + dt)`` from ``S(t)`` would be wrong.
    """
    times = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if times.ndim != 1 or times.size == 0:
        raise ValueError("time grid must be a nonempty 1-D sequence")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise ValueError("time grid must be strictly increasing")
    m = evolution_matrix(times, p)
    return Trajectory(times, evolve_bloch(s0, m))


def compose(first: EvolutionMatrix, second: EvolutionMatrix) -> np.ndarray:
    """Homogeneous matrix of applying ``first`` and then ``second``."""
    return second.augmented() @ first.augmented()


def map_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Spectral-norm distance between two homogeneous 4x4 affine maps."""
    return float(np.linalg.norm(a - b, ord=2))


def self_crossings(x: np.ndarray, y: np.ndarray, tol: float = 1e-12):
    """Proper crossings between non-adjacent segments of a planar polyline.

    Returns a list of ``(i, j, point, angle)`` where segments ``i`` and ``j``
    (``i < j - 1``) intersect at ``point`` and ``angle`` is the angle between
    their directions in radians.
    """
    pts = np.column_stack([x, y])
    seg_a = pts[:-1]
    seg_d = pts[1:] - pts[:-1]
    lo = np.minimum(pts[:-1], pts[1:])
    hi = np.maximum(pts[:-1], pts[1:])
    out = []
    for i in range(len(seg_d) - 2):
        cand = np.arange(i + 2, len(seg_d))
        # bounding-box prefilter
        box = np.all((lo[cand] <= hi[i] + tol) & (hi[cand] >= lo[i] - tol), axis=1)
        for j in cand[box]:
            d1, d2 = seg_d[i], seg_d[j]
            denom = d1[0] * d2[1] - d1[1] * d2[0]
            if abs(denom) < tol:
                continue
            r = seg_a[j] - seg_a[i]
            u = (r[0] * d2[1] - r[1] * d2[0]) / denom
            v = (r[0] * d1[1] - r[1] * d1[0]) / denom
            if 0.0 <= u <= 1.0 and 0.0 <= v <= 1.0:
                cosang = np.dot(d1, d2) / (np.linalg.norm(d1) * np.linalg.norm(d2))
                angle = float(np.arccos(np.clip(cosang, -1.0, 1.0)))
                out.append((i, int(j), seg_a[i] + u * d1, angle))
    return out
