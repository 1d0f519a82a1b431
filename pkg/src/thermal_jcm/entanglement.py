"""Atom-field entanglement restricted to the two lowest photon-number levels.

The joint state with the atom starting in ``(|0> + |1>)/sqrt(2)`` is
projected onto ``span{|a>|n> : a, n in {0, 1}}``. The projection acts on the
field alone, so the entanglement of formation of the (renormalised) projected
state, weighted by its trace, bounds the full atom-field value from below.

Units are reduced: ``t`` stands for ``g t`` (``g > 0``), ``beta`` for
``beta * hbar * omega``, with the field on resonance.

Basis order of every 4x4 matrix is ``|0>|0>, |0>|1>, |1>|0>, |1>|1>``
(atom first, field second).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jacobi import hermitian_eigh, psd_sqrt

_SY_SY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)

PSD_TOL = 1e-10
NOT_PSD_TOL = 1e-8


@dataclass(frozen=True)
class ProjectedState:
    matrix: np.ndarray  # unnormalised R_AF, 4x4 complex
    weight: float  # trace of matrix, i.e. probability of n in {0, 1}
    t: float
    beta: float


@dataclass(frozen=True)
class EntanglementResult:
    lambdas: np.ndarray
    concurrence: float
    eof_normalized: float
    eof_lower_bound: float
    weight: float = 1.0


def _check_beta(beta):
    if not beta > 0:
        raise ValueError(f"beta must be > 0 (thermal prefactor degenerates), got {beta}")


def projection_weight(t, beta: float):
    """Trace of the projected state, closed form."""
    _check_beta(beta)
    q = math.exp(-beta)
    return 0.25 * (1 - q) * (4 + 3 * q + q * q + q * (1 - q) * np.cos(2 * math.sqrt(2) * np.asarray(t)))


def projected_state(t: float, beta: float) -> ProjectedState:
    """Closed-form projected (unnormalised) atom-field state at reduced time ``t``."""
    _check_beta(beta)
    if t < 0:
        raise ValueError("t must be >= 0")
    q = math.exp(-beta)
    s, c = math.sin(t), math.cos(t)
    s2, c2 = math.sin(math.sqrt(2) * t), math.cos(math.sqrt(2) * t)

    r = np.zeros((4, 4), dtype=complex)
    r[0, 0] = c * c + q * s * s
    r[0, 1] = 1j * q * s * c2
    r[0, 2] = c
    r[0, 3] = -1j * s * c + 1j * q * s * c
    r[1, 1] = q * c2 * c2 + q * q * s2 * s2
    r[1, 2] = 0.0
    r[1, 3] = q * c * c2
    r[2, 2] = 1.0
    r[2, 3] = -1j * s
    r[3, 3] = s * s + q * c * c
    upper = np.triu(r, 1)
    r = np.diag(np.diag(r)) + upper + upper.conj().T
    r *= 0.5 * (1 - q)
    return ProjectedState(r, float(projection_weight(t, beta)), float(t), float(beta))


def normalize(ps) -> np.ndarray:
    """Unit-trace version of a projected state (or of any PSD 4x4 array)."""
    mat = ps.matrix if isinstance(ps, ProjectedState) else np.asarray(ps, dtype=complex)
    tr = np.trace(mat).real
    if tr <= 1e-14:
        raise ValueError(f"cannot normalise a state with trace {tr:.3e}")
    return mat / tr


def spin_flip(rho) -> np.ndarray:
    """``(sy x sy) rho* (sy x sy)`` in the computational basis."""
    rho = np.asarray(rho, dtype=complex)
    return _SY_SY @ rho.conj() @ _SY_SY


def wootters_lambdas(rho) -> np.ndarray:
    """Eigenvalues of ``rho @ spin_flip(rho)``, sorted descending.

    Computed as the spectrum of the Hermitian ``sqrt(rho) rho~ sqrt(rho)``,
    which shares its eigenvalues with the non-Hermitian product.
    """
    rho = np.asarray(rho, dtype=complex)
    w_rho, _ = hermitian_eigh(rho)
    if w_rho[0] < -NOT_PSD_TOL:
        raise ValueError(f"state is not positive semidefinite (eigenvalue {w_rho[0]:.3e})")
    root = psd_sqrt(rho)
    lam, _ = hermitian_eigh(root @ spin_flip(rho) @ root)
    if lam[0] < -NOT_PSD_TOL:
        raise ValueError(f"rho rho~ has a negative eigenvalue {lam[0]:.3e}")
    lam = np.where(lam < 0, 0.0, lam)
    return lam[::-1]


def concurrence(rho) -> float:
    lam = wootters_lambdas(rho)
    r = np.sqrt(lam)
    return float(min(1.0, max(0.0, r[0] - r[1] - r[2] - r[3])))


def eof_from_concurrence(c: float) -> float:
    """Two-qubit entanglement of formation as a function of concurrence."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    root = math.sqrt(max(0.0, 1.0 - c * c))
    out = 0.0
    for x in ((1 + root) / 2, (1 - root) / 2):
        if x > 0.0:
            out -= x * math.log2(x)
    return out


def entanglement_of_formation(rho) -> EntanglementResult:
    """Wootters pipeline for a normalised two-qubit state."""
    lam = wootters_lambdas(rho)
    r = np.sqrt(lam)
    c = float(min(1.0, max(0.0, r[0] - r[1] - r[2] - r[3])))
    e = eof_from_concurrence(c)
    return EntanglementResult(lam, c, e, e, 1.0)


def entanglement_lower_bound(t: float, beta: float) -> EntanglementResult:
    """Weighted entanglement of formation of the projected state at ``t``."""
    ps = projected_state(t, beta)
    res = entanglement_of_formation(normalize(ps))
    return EntanglementResult(
        res.lambdas, res.concurrence, res.eof_normalized, ps.weight * res.eof_normalized, ps.weight
    )


def entanglement_curve(t_grid, beta: float) -> list[EntanglementResult]:
    return [entanglement_lower_bound(float(t), beta) for t in np.asarray(t_grid, dtype=float)]
