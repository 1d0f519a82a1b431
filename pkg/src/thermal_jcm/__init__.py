"""Two-level atom coupled to a thermal single-mode field (Jaynes-Cummings model).

Submodules:

* :mod:`thermal_jcm.series` -- the affine Bloch-vector map and trajectories
* :mod:`thermal_jcm.averages` -- infinite-time averages and their limits
* :mod:`thermal_jcm.sampling` -- sampled S_z histograms and density fits
* :mod:`thermal_jcm.entanglement` -- projected atom-field entanglement bound
* :mod:`thermal_jcm.oracle` -- brute-force truncated-Fock reference
* :mod:`thermal_jcm.cli` -- CSV-emitting command line
"""

from .averages import (
    TimeAverages,
    average_bloch,
    time_average_closed_general,
    time_average_closed_resonant,
    time_average_limits,
    time_average_numeric,
)
from .entanglement import (
    EntanglementResult,
    ProjectedState,
    concurrence,
    entanglement_lower_bound,
    eof_from_concurrence,
    normalize,
    projected_state,
    projection_weight,
    spin_flip,
    wootters_lambdas,
)
from .oracle import oracle_reduced_state, required_fock_dim
from .sampling import (
    Histogram,
    MomentStats,
    PowerLawFit,
    SampleSeries,
    arcsine_density,
    build_histogram,
    fit_arcsine_amplitude,
    fit_normal,
    power_law_fit,
    sample_moments,
    sample_series,
    variance_scan,
)
from .series import (
    BlochVector,
    EvolutionMatrix,
    ModelParams,
    Trajectory,
    TruncationPolicy,
    dtilde,
    evolution_matrix,
    evolution_matrix_general,
    evolution_matrix_resonant,
    evolve_bloch,
    trajectory,
    truncation_order,
)

__version__ = "0.1.0"
