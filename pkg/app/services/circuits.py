"""
Circuit builders for the squeezed-light / beam-splitter states

Family states, the partial three-mode state, the multiuser quantum channel
(MQC) state, the GHZ analyzer and the local-squeezing conversions.
"""
import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from app.core import gaussian as gc
from app.core.exceptions import InvalidArgumentError
from app.models.circuits import FamilySpec, GhzAnalyzerResult, MqcSpec, parse_spec
from app.models.gaussian import GaussianState, SqueezeAxis, SymplecticOp

logger = logging.getLogger(__name__)


# =============================================================================
# State generation
# =============================================================================

def family_input_state(spec: FamilySpec) -> GaussianState:
    """Mode 1 momentum-squeezed by r1, modes 2..N position-squeezed by r2."""
    first = gc.squeezed_vacuum(spec.r1, SqueezeAxis.MOMENTUM)
    rest = [gc.squeezed_vacuum(spec.r2, SqueezeAxis.POSITION) for _ in range(spec.n_modes - 1)]
    return gc.tensor([first] + rest)


def make_family_state(spec: FamilySpec) -> GaussianState:
    state = gc.apply(gc.n_splitter(spec.n_modes), family_input_state(spec))
    logger.info("Built family state N=%d r1=%.6g r2=%.6g", spec.n_modes, spec.r1, spec.r2)
    return state


def family_state(n_modes: int, r1: float, r2: Optional[float] = None) -> GaussianState:
    """Convenience builder; r2 defaults to r1."""
    spec = parse_spec(FamilySpec, n_modes=n_modes, r1=r1, r2=r1 if r2 is None else r2)
    return make_family_state(spec)


def make_partial_three_mode(r: float) -> GaussianState:
    """Two-mode squeezed vacuum on modes 1-2 and vacuum on mode 3."""
    if not math.isfinite(r) or r < 0:
        raise InvalidArgumentError(f"r must be finite and >= 0, got {r}")
    return gc.tensor([family_state(2, r, r), gc.vacuum_state(1)])


def mqc_circuit(spec: MqcSpec) -> SymplecticOp:
    """B[0,1](theta0) followed by an M-splitter on the receiver modes."""
    n = spec.n_modes
    op = gc.beam_splitter(n, 0, 1, spec.theta0)
    if spec.receivers >= 2:
        op = gc.splitter_cascade(n, range(1, n)) @ op
    return op


def make_mqc_state(spec: MqcSpec) -> GaussianState:
    r1, r2 = spec.squeezing()
    inputs = [
        gc.squeezed_vacuum(r1, SqueezeAxis.MOMENTUM),
        gc.squeezed_vacuum(r2, SqueezeAxis.POSITION),
    ] + [gc.vacuum_state(1) for _ in range(spec.receivers - 1)]
    state = gc.apply(mqc_circuit(spec), gc.tensor(inputs))
    logger.info(
        "Built MQC state M=%d theta0=%.6g (r1=%.6g, r2=%.6g)", spec.receivers, spec.theta0, r1, r2
    )
    return state


# =============================================================================
# GHZ analyzer
# =============================================================================

def analyzer_observables(n_modes: int) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """
    Rows of the inverse N-splitter selecting p'1 and x'2..x'N.

    Each row is a coefficient vector on the quadratures of the analyzed state.
    """
    s_inv = gc.inverse(gc.n_splitter(n_modes)).matrix
    rows = [s_inv[1]] + [s_inv[2 * i] for i in range(1, n_modes)]
    labels = ("p'1",) + tuple(f"x'{i + 1}" for i in range(1, n_modes))
    return np.array(rows), labels


def detection_matrix(n_modes: int) -> np.ndarray:
    """
    Upper-triangular map from (u1..u_{N-1}) to (x'2..x'N).

    With 1-based k <= j: A[k, j] = sqrt((N-k)/(N-k+1)) * (N-j)/(N-k).
    """
    if n_modes < 2:
        raise InvalidArgumentError(f"n_modes must be >= 2, got {n_modes}")
    size = n_modes - 1
    a = np.zeros((size, size))
    for k in range(1, n_modes):
        scale = math.sqrt((n_modes - k) / (n_modes - k + 1))
        for j in range(k, n_modes):
            a[k - 1, j - 1] = scale * (n_modes - j) / (n_modes - k)
    return a


def analyzer_outcomes(v: float, u: Sequence[float], n_modes: int) -> np.ndarray:
    """Ideal records (p'1, x'2..x'N) for parameters (v, u1..u_{N-1})."""
    u = np.asarray(u, dtype=float)
    if u.shape != (n_modes - 1,):
        raise InvalidArgumentError(f"u must have length {n_modes - 1}, got shape {u.shape}")
    return np.concatenate([[v / math.sqrt(n_modes)], detection_matrix(n_modes) @ u])


def reconstruct_parameters(outcomes: Sequence[float], n_modes: int) -> Tuple[float, np.ndarray]:
    """Invert the analyzer records: v = sqrt(N) p'1, u by back-substitution."""
    outcomes = np.asarray(outcomes, dtype=float)
    if outcomes.shape != (n_modes,):
        raise InvalidArgumentError(
            f"expected {n_modes} outcomes (p'1, x'2..x'N), got shape {outcomes.shape}"
        )
    v = math.sqrt(n_modes) * float(outcomes[0])
    u = solve_triangular(detection_matrix(n_modes), outcomes[1:], lower=False)
    return v, u


def ghz_analyzer(state: GaussianState, seed: Optional[int] = None) -> GhzAnalyzerResult:
    """
    Inverse N-splitter followed by homodyne detection of p'1 and x'2..x'N.

    With a seed, one joint record is sampled and (v, u) reconstructed.
    """
    n = state.n_modes
    if n < 2:
        raise InvalidArgumentError(f"the GHZ analyzer needs at least 2 modes, got {n}")
    transformed = gc.apply(gc.inverse(gc.n_splitter(n)), state)
    observables, labels = analyzer_observables(n)
    if seed is None:
        return GhzAnalyzerResult(transformed, observables, labels)

    outcomes = gc.sample_quadratures(state, observables, seed)
    v, u = reconstruct_parameters(outcomes, n)
    return GhzAnalyzerResult(transformed, observables, labels, outcomes=outcomes, v=v, u=u)


# =============================================================================
# Squeezing relations
# =============================================================================

def min_energy_branches(n_modes: int, r2: float) -> Tuple[float, float]:
    """
    Both branches of the minimum-energy relation: (e^{+2 r1}, e^{-2 r1}).

    e^{+-2 r1} = (N-1) sinh(2 r2) [sqrt(1 + 1/((N-1)^2 sinh^2 2 r2)) +- 1]
    """
    if n_modes < 2:
        raise InvalidArgumentError(f"n_modes must be >= 2, got {n_modes}")
    if not math.isfinite(r2) or r2 <= 0:
        raise InvalidArgumentError(f"r2 must be finite and > 0 (relation degenerates at 0), got {r2}")
    try:
        a = (n_modes - 1) * math.sinh(2 * r2)
    except OverflowError:
        raise InvalidArgumentError(f"r2={r2} overflows the minimum-energy relation")
    # a sqrt(1 + 1/a^2) = hypot(a, 1); the minus branch is the reciprocal of the plus one
    plus = math.hypot(a, 1.0) + a
    if not math.isfinite(plus):
        raise InvalidArgumentError(f"r2={r2} overflows the minimum-energy relation")
    return plus, 1.0 / plus


def min_energy_r1(n_modes: int, r2: float) -> float:
    """r1 of the least-photon-number family state with given r2."""
    plus, _ = min_energy_branches(n_modes, r2)
    return 0.5 * math.log(plus)


def convert_one_squeezer_to_canonical(r1: float) -> Tuple[GaussianState, GaussianState]:
    """
    (one-squeezer N=2 state after local squeezers s1 = s2 = r1/2, canonical state with r = r1/2).
    """
    one_squeezer = family_state(2, r1, 0.0)
    s = 0.5 * r1
    local = gc.local_squeezer(2, 1, s) @ gc.local_squeezer(2, 0, s)
    return gc.apply(local, one_squeezer), family_state(2, s, s)
