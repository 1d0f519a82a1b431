"""Cyclic Jacobi eigensolver for small dense Hermitian matrices."""

from __future__ import annotations

import numpy as np


def hermitian_eigh(a, tol: float = 1e-15, max_sweeps: int = 50):
    """Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix.

    Each rotation removes the phase of the pivot ``a[p, q]`` and then applies
    a real Jacobi rotation, so complex input is handled without a detour
    through a real embedding.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), 1e-300)

    for _ in range(max_sweeps):
        off = np.linalg.norm(a[~np.eye(n, dtype=bool)])
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= tol * scale * 1e-3:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # diag(1, conj(phase)) makes the pivot real, then a real rotation
                j = np.eye(n, dtype=complex)
                j[p, p] = c
                j[p, q] = s
                j[q, p] = -s * np.conj(phase)
                j[q, q] = c * np.conj(phase)
                a = j.conj().T @ a @ j
                a[p, q] = a[q, p] = 0.0
                v = v @ j
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    order = np.argsort(w)
    return w[order], v[:, order]


def psd_sqrt(a) -> np.ndarray:
    """Square root of a Hermitian PSD matrix; negative rounding eigenvalues clamp to 0."""
    w, v = hermitian_eigh(a)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
