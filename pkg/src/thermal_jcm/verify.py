"""On-demand consistency checks: oracle equivalence and core invariants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import averages, entanglement, oracle, sampling
from .series import BlochVector, ModelParams, evolution_matrix, evolution_matrix_resonant, evolve_bloch


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<40s} deviation={self.deviation:.3e}  tol={self.tolerance:.1e}"


def oracle_checks(betas=(0.5, 1.0, 2.0), times=(0.3, 1.0, 5.0), fock_dim=None):
    s0 = BlochVector(0.6, -0.3, 0.5)
    worst_bloch = 0.0
    worst_proj = 0.0
    for beta in betas:
        for t in times:
            for dw in (0.0, 1.0):
                p = ModelParams.detuned(beta, dw)
                proj, bloch = oracle.oracle_reduced_state(t, p, fock_dim, s0=s0)
                series = evolve_bloch(s0, evolution_matrix(t, p))
                worst_bloch = max(worst_bloch, float(np.max(np.abs(bloch.as_array() - series.as_array()))))
            proj, _ = oracle.oracle_reduced_state(t, ModelParams.resonant(beta), fock_dim)
            closed = entanglement.projected_state(t, beta).matrix
            worst_proj = max(worst_proj, float(np.max(np.abs(proj - closed))))
    return [
        CheckResult("oracle: series Bloch vector", worst_bloch, 1e-10),
        CheckResult("oracle: projected 4x4 state", worst_proj, 1e-10),
    ]


def invariant_checks(seed: int = 0):
    rng = np.random.default_rng(seed)
    out = []

    ident = 0.0
    for beta in (0.1, 1.0, 10.0):
        m = evolution_matrix_resonant(0.0, beta)
        ident = max(ident, abs(m.l1 - 1), abs(m.l2), abs(m.l3 - 1), abs(m.l4))
    out.append(CheckResult("identity map at t=0", ident, 1e-11))

    excess = 0.0
    l4_viol = 0.0
    for beta in rng.uniform(0.1, 5.0, size=10):
        t = rng.uniform(0, 50, size=100)
        m = evolution_matrix_resonant(t, beta)
        v = rng.normal(size=3)
        s0 = BlochVector.from_array(v / np.linalg.norm(v) * rng.uniform() ** (1 / 3))
        pts = evolve_bloch(s0, m)
        excess = max(excess, float(np.max(np.linalg.norm(pts, axis=1) - 1.0)))
        l4_viol = max(l4_viol, float(np.max(m.l4)), float(np.max(-1.0 - m.l4)))
    out.append(CheckResult("ball preservation |S|<=1", max(excess, 0.0), 1e-9))
    out.append(CheckResult("resonant -1 <= l4 <= 0", max(l4_viol, 0.0), 1e-12))

    avg_dev = 0.0
    for beta in (0.5, 1.0, 2.0):
        closed = averages.time_average_closed_resonant(beta)
        gen = averages.time_average_closed_general(ModelParams.resonant(beta))
        avg_dev = max(avg_dev, abs(closed.avg_l3 - gen.avg_l3), abs(closed.avg_l4 - gen.avg_l4))
    out.append(CheckResult("general averages reduce to resonant", avg_dev, 1e-11))

    trace_dev = 0.0
    for t, beta in zip(rng.uniform(0, 10, 50), rng.uniform(0.2, 10, 50)):
        ps = entanglement.projected_state(t, beta)
        trace_dev = max(trace_dev, abs(np.trace(ps.matrix).real - ps.weight))
    out.append(CheckResult("trace R_AF equals p_AF", trace_dev, 1e-12))

    bell = np.zeros((4, 4))
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    werner = 0.5 * bell + 0.5 * np.eye(4) / 4
    out.append(CheckResult("Werner p=0.5 concurrence", abs(entanglement.concurrence(werner) - 0.25), 1e-10))

    h = sampling.build_histogram(rng.normal(size=1001), 0.1)
    out.append(CheckResult("histogram count conservation", abs(h.total - 1001), 0.0))
    return out


CHECK_GROUPS = {
    "oracle": oracle_checks,
    "invariants": invariant_checks,
}


def run_checks(groups=("oracle", "invariants"), fock_dim=None, beta=None) -> list[CheckResult]:
    results = []
    for g in groups:
        if g not in CHECK_GROUPS:
            raise ValueError(f"unknown check group {g!r}; choose from {sorted(CHECK_GROUPS)}")
        if g == "oracle":
            betas = (beta,) if beta is not None else (0.5, 1.0, 2.0)
            if fock_dim is not None:
                for b in betas:
                    need = oracle.required_fock_dim(b)
                    if fock_dim < need:
                        raise ValueError(
                            f"Fock dimension {fock_dim} insufficient for thermal tail at beta={b:g}; "
                            f"need at least {need}"
                        )
            results += oracle_checks(betas=betas, fock_dim=fock_dim)
        else:
            results += CHECK_GROUPS[g]()
    return results

