"""
Bloch vector in a thermal cavity
================================

An atom prepared on the equator of the Bloch sphere, coupled to a thermal
field mode. The motion stays in the x-z plane and the curve crosses itself
without ever closing.
"""

import numpy as np

from thermal_jcm import BlochVector, ModelParams, TruncationPolicy, trajectory
from thermal_jcm.series import self_crossings

p = ModelParams(0.5, truncation=TruncationPolicy.fixed(500))
t = np.arange(0, 100.0 + 1e-9, 0.01)
traj = trajectory(BlochVector(1.0, 0.0, 0.0), t, p)

# y stays exactly zero in the resonant case
print("max |S_y|:", np.abs(traj.sy).max())
print("|S| at t = 0, 10, 100:", [round(float(np.linalg.norm(traj.points[i])), 4) for i in (0, 1000, 10000)])

# self-crossings over the first few time units
head = t <= 6.0
crossings = self_crossings(traj.sx[head], traj.sz[head])
for i, j, point, angle in crossings[:5]:
    print(f"segments {i} and {j} cross at ({point[0]:+.4f}, {point[1]:+.4f}), angle {angle:.3f} rad")

# the shrinking radius settles near the time-averaged point
print("late-time mean S_z:", traj.sz[t > 50].mean())
