"""
Variance against inverse temperature
====================================

At high temperature the sample variance of S_z grows roughly as a power of
beta. The fit is good on [0.01, 0.1] and falls apart once the field cools.
"""

import numpy as np

from thermal_jcm import ModelParams, TruncationPolicy
from thermal_jcm.sampling import power_law_fit, variance_scan

p = ModelParams(1.0, truncation=TruncationPolicy.fixed(1000))
grid = np.logspace(-2, 1, 16)
scan = variance_scan(grid, p, delta_t=0.05, n_samples=10000, workers=4)

for beta, m in scan:
    print(f"beta={beta:8.4f}  sigma2={m.sigma2:.4e}")

hot = power_law_fit(scan, (0.01, 0.1))
print(f"fit on [0.01, 0.1]: sigma2 = {hot.c1:.4f} * beta^{hot.c2:.3f}  (log residual {hot.residual:.2e})")
cold = power_law_fit(scan, (1.0, 10.0))
print(f"fit on [1, 10]:     sigma2 = {cold.c1:.4f} * beta^{cold.c2:.3f}  (log residual {cold.residual:.2e})")
