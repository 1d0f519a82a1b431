"""Brute-force reference evolution in a truncated Fock space.

Independent of the thermal series: the interaction-picture propagator is
assembled explicitly as a ``2 (D+1)`` square matrix from its photon-number
sector blocks, the product state ``rho_A(0) x rho_F`` is evolved as a full
density matrix, and the quantities of interest are read off by partial trace
and by projection. Used to check both the series map and the closed-form
projected state.
"""

from __future__ import annotations

import math

import numpy as np

from .series import BlochVector, ModelParams

TAIL_TOL = 1e-12


def required_fock_dim(thermal_rate: float, tail: float = TAIL_TOL) -> int:
    """Smallest ``D`` with thermal population beyond ``D - 1`` photons below ``tail``."""
    if thermal_rate <= 0:
        raise ValueError("a finite Fock space cannot hold an infinite-temperature state")
    # sum_{n >= D} (1 - q) q^n = q^D
    d = max(2, math.ceil(-math.log(tail) / thermal_rate))
    while d > 2 and -(d - 1) * thermal_rate < math.log(tail):
        d -= 1
    while -d * thermal_rate >= math.log(tail):
        d += 1
    return d


def propagator(t: float, p: ModelParams, levels: int) -> np.ndarray:
    """Interaction-picture propagator on ``atom x field[0:levels]``.

    Index ``a * levels + n`` labels ``|a>_A |n>_F``. Exact on every sector
    ``{|0, n>, |1, n+1>}`` with ``n + 1 < levels``.
    """
    half_dw = p.delta_omega / 2.0
    g = p.g_coupling
    n = np.arange(levels, dtype=float)
    d_n = half_dw**2 + g * g * n
    d_next = d_n + g * g

    def sin_over(d):
        r = np.sqrt(d)
        return np.where(r == 0.0, t, np.sin(r * t) / np.where(r == 0.0, 1.0, r))

    u = np.zeros((2 * levels, 2 * levels), dtype=complex)
    idx = np.arange(levels)
    u[idx, idx] = np.cos(np.sqrt(d_next) * t) - 0.5j * p.delta_omega * sin_over(d_next)
    u[levels + idx, levels + idx] = np.cos(np.sqrt(d_n) * t) + 0.5j * p.delta_omega * sin_over(d_n)
    # |1, n> -> |0, n-1>
    k = idx[1:]
    u[k - 1, levels + k] = 1j * g * np.sqrt(k) * sin_over(d_n[k])
    # |0, n> -> |1, n+1>
    k = idx[:-1]
    u[levels + k + 1, k] = 1j * g * np.sqrt(k + 1.0) * sin_over(d_next[k])
    return u


def evolve_joint(t: float, p: ModelParams, rho_atom, fock_dim: int) -> np.ndarray:
    """Joint density matrix at ``t`` on ``2 x (fock_dim + 1)`` levels."""
    levels = fock_dim + 1
    rate = p.thermal_rate
    pops = np.zeros(levels)
    pops[:fock_dim] = -math.expm1(-rate) * np.exp(-rate * np.arange(fock_dim))
    rho0 = np.kron(np.asarray(rho_atom, dtype=complex), np.diag(pops))
    u = propagator(t, p, levels)
    return u @ rho0 @ u.conj().T


def atom_density(s: BlochVector) -> np.ndarray:
    sx, sy, sz = s
    return 0.5 * np.array([[1 + sz, sx - 1j * sy], [sx + 1j * sy, 1 - sz]], dtype=complex)


def oracle_reduced_state(
    t: float,
    p: ModelParams,
    fock_dim: int | None = None,
    s0: BlochVector = BlochVector(1.0, 0.0, 0.0),
):
    """Projection onto ``n in {0, 1}`` and the atomic Bloch vector at time ``t``.

    Returns ``(R, S)`` where ``R`` is the 4x4 unnormalised projected state in
    the order ``|0>|0>, |0>|1>, |1>|0>, |1>|1>`` and ``S`` the Bloch vector
    from the partial trace over the field.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    need = required_fock_dim(p.thermal_rate)
    if fock_dim is None:
        fock_dim = need
    if fock_dim < 2:
        raise ValueError("fock_dim must be >= 2")
    if fock_dim < need:
        raise ValueError(
            f"Fock dimension {fock_dim} insufficient for thermal tail at beta*omega="
            f"{p.thermal_rate:g}; need at least {need}"
        )
    levels = fock_dim + 1
    rho = evolve_joint(t, p, atom_density(s0), fock_dim)
    keep = [0, 1, levels, levels + 1]
    projected = rho[np.ix_(keep, keep)]
    r = rho.reshape(2, levels, 2, levels)
    rho_a = np.einsum("injn->ij", r)
    bloch = BlochVector(
        float(2 * rho_a[0, 1].real), float(-2 * rho_a[0, 1].imag), float((rho_a[0, 0] - rho_a[1, 1]).real)
    )
    return projected, bloch
