"""
Long-time averages
==================

The resonant averages of L3 and L4 are closed-form; detuning adds a floor
that survives at zero temperature.
"""

import numpy as np

from thermal_jcm import BlochVector, ModelParams
from thermal_jcm.averages import (
    time_average_closed_general,
    time_average_closed_resonant,
    time_average_limits,
    time_average_numeric,
)

print(" beta     <L3>        <L4>")
for beta in (0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
    a = time_average_closed_resonant(beta)
    print(f"{beta:5g}  {a.avg_l3:.8f}  {a.avg_l4:+.8f}")

# a direct trapezoid average of S_z for the maximally mixed start
num = time_average_numeric(BlochVector(0, 0, 0), ModelParams(1.0), t_max=2000.0, step=0.05)
print("numeric <S_z> at beta=1:", num.sz, "closed form:", time_average_closed_resonant(1.0).avg_l4)

for dw in (0.0, 1.0, 2.0):
    p = ModelParams.detuned(5.0, dw)
    _, cold = time_average_limits(p)
    a = time_average_closed_general(p)
    print(f"dw={dw}: <L3>={a.avg_l3:.6f} (cold limit {cold.avg_l3:.6f})  <L4>={a.avg_l4:+.6f}")

# hotter fields pull both averages to zero
betas = np.logspace(-3, 1, 5)
print([round(time_average_closed_general(ModelParams.detuned(b, 1.0)).avg_l3, 5) for b in betas])
