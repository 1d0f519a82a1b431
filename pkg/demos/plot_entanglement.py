"""
Atom-field entanglement from a two-level projection
===================================================

Restricting the field to zero or one photon gives a two-qubit state. Its
entanglement of formation, weighted by the probability of landing in that
subspace, is a lower bound for the full atom-field entanglement.
"""

import numpy as np

from thermal_jcm.entanglement import entanglement_curve, normalize, projected_state, concurrence

t = np.linspace(0, 2 * np.pi, 600)
for beta in (10.0, 2.0, 1.0):
    curve = entanglement_curve(t, beta)
    e = np.array([r.eof_lower_bound for r in curve])
    k = int(e.argmax())
    print(f"beta={beta:4g}: max lower bound {e[k]:.4f} at t={t[k]:.3f} (weight {curve[k].weight:.4f})")

# nothing is entangled before the interaction has acted
print("t=0 concurrence:", concurrence(normalize(projected_state(0.0, 2.0))))

# the projected state itself, rounded
np.set_printoptions(precision=4, suppress=True)
print(projected_state(1.0, 2.0).matrix)
