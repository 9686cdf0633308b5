"""Decide robust set stability of switched logic dynamical systems.

The state update is ``x(t+1) = L_{sigma(t)} x(t)`` with ``m`` logic maps and
an unknown switching signal.  Deciders for robust, uniform robust,
asymptotic-ratio-one and finite-time-ratio-one stability with respect to a
target set are in :mod:`ldstab.stability`; :mod:`ldstab.oracle` re-checks
the underlying counts by brute force.
"""

from .invariant import CapExceededError, is_robustly_invariant, lris, lris_bruteforce
from .kernels import BACKEND
from .model import (
    Lds,
    Network,
    NetworkFormatError,
    SwitchingSignal,
    Trajectory,
    from_node_functions,
    load_network,
    parse_network,
    serialize_network,
    step,
    trajectory,
)
from .oracle import enumerate_pattern_counts, monte_carlo_ratio, simulate_random, verify_counts
from .reach import (
    count_matrix,
    count_matrix_power,
    find_path,
    is_reachable,
    reachability_matrix_bool,
    reachability_matrix_weighted,
    self_reachable_set,
    stg,
    stg_dot,
)
from .sets import StateSet
from .stability import (
    InconsistencyError,
    StabilityReport,
    analyze,
    is_asymptotically_ratio_one,
    is_finite_time_ratio_one,
    is_robustly_stable,
    is_uniformly_robustly_stable,
    pls_tpm,
    ratio,
    ratio_vector,
)
from .stp import IntMatrix, LogicMatrix, LogicValueMap, khatri_rao, kron, stp, structural_matrix

__version__ = "0.1.0"


def fixture(name: str) -> Network:
    """One of the bundled example networks: ``"e1"``, ``"e2"`` or ``"e3"``."""
    from importlib.resources import files

    return parse_network((files(__name__) / "data" / f"{name}.json").read_text())
