"""
Displaced-parity correlations and Mermin-Klyshko combinations

Pi(alpha) = (pi/2)^N W(x = Re alpha, p = Im alpha); local realism bounds every
combination built here by 2.
"""
import itertools
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from app.core import gaussian as gc
from app.core.config import get_settings
from app.core.exceptions import InvalidArgumentError
from app.models.bell import BellCombination, BellMaximum, BellTerm, DisplacementSettings
from app.models.gaussian import GaussianState
from app.services.circuits import family_state

logger = logging.getLogger(__name__)

Assignment = Tuple[bool, ...]


def displaced_parity(state: GaussianState, alphas) -> np.ndarray:
    """
    Displaced-parity correlation at complex amplitudes `alphas`.

    Accepts one point of shape (N,) or a batch of shape (..., N).
    """
    a = np.asarray(alphas, dtype=complex)
    if a.ndim == 0 or a.shape[-1] != state.n_modes:
        raise InvalidArgumentError(
            f"alphas must have trailing dimension {state.n_modes}, got shape {a.shape}"
        )
    coords = np.empty(a.shape[:-1] + (2 * state.n_modes,))
    coords[..., 0::2] = a.real
    coords[..., 1::2] = a.imag
    return (math.pi / 2) ** state.n_modes * gc.wigner(state, coords)


# =============================================================================
# Combinations
# =============================================================================

def _swap_primes(terms: Dict[Assignment, Fraction]) -> Dict[Assignment, Fraction]:
    return {tuple(not p for p in bits): c for bits, c in terms.items()}


@lru_cache(maxsize=None)
def mermin_combination(n_parties: int) -> BellCombination:
    """
    B_N = 1/2 s_N (B_{N-1} + B'_{N-1}) + 1/2 s'_N (B_{N-1} - B'_{N-1}).

    B_2 is the CHSH combination; B' swaps primed and unprimed settings.
    """
    if n_parties < 2:
        raise InvalidArgumentError(f"a combination needs at least 2 parties, got {n_parties}")

    terms: Dict[Assignment, Fraction] = {
        (False, False): Fraction(1),
        (True, False): Fraction(1),
        (False, True): Fraction(1),
        (True, True): Fraction(-1),
    }
    half = Fraction(1, 2)
    for _ in range(3, n_parties + 1):
        swapped = _swap_primes(terms)
        nxt: Dict[Assignment, Fraction] = {}
        for bits in set(terms) | set(swapped):
            b, b_swapped = terms.get(bits, Fraction(0)), swapped.get(bits, Fraction(0))
            nxt[bits + (False,)] = half * (b + b_swapped)
            nxt[bits + (True,)] = half * (b - b_swapped)
        terms = {bits: c for bits, c in nxt.items() if c != 0}

    ordered = sorted(terms.items(), key=lambda item: (sum(item[0]), item[0]))
    return BellCombination(n_parties, tuple(BellTerm(c, bits) for bits, c in ordered))


def local_realism_bound(combo: BellCombination) -> float:
    """Largest |value| over every deterministic local assignment of +-1 outcomes."""
    n = combo.n_parties
    outcomes = np.array(list(itertools.product((1, -1), repeat=2 * n)), dtype=float)
    total = np.zeros(outcomes.shape[0])
    for term in combo.terms:
        cols = [2 * i + int(p) for i, p in enumerate(term.primed)]
        total += float(term.coefficient) * np.prod(outcomes[:, cols], axis=1)
    return float(np.max(np.abs(total)))


def bell_value(
    state: GaussianState, combo: BellCombination, settings: DisplacementSettings
) -> float:
    """Sum of coefficient * Pi(assignment-selected displacements), terms in fixed order."""
    if not state.n_modes == combo.n_parties == settings.n_parties:
        raise InvalidArgumentError(
            f"dimension mismatch: state {state.n_modes} modes, combination "
            f"{combo.n_parties} parties, settings {settings.n_parties} parties"
        )
    selectors = np.array([term.primed for term in combo.terms], dtype=bool)
    points = np.where(selectors, settings.primed, settings.unprimed)
    parities = displaced_parity(state, points)
    coefficients = np.array([float(term.coefficient) for term in combo.terms])
    return float(np.dot(coefficients, parities))


def bell_value_phases(state: GaussianState, j: float, phases: Sequence[float]) -> float:
    """Combination value with primed settings sqrt(J) e^{i phi_k}, one phase per party."""
    settings = DisplacementSettings.with_phases(j, phases)
    return bell_value(state, mermin_combination(settings.n_parties), settings)


# =============================================================================
# Optimization
# =============================================================================

def maximize_bell(n_parties: int, r: float, phase: Optional[float] = None) -> BellMaximum:
    """
    Maximize the combination over J >= 0 for the family state with r1 = r2 = r.

    Log grid of J (plus J = 0), then bounded Brent refinement between the
    neighbours of the best grid point.
    """
    settings_cfg = get_settings()
    phase = settings_cfg.bell_default_phase if phase is None else float(phase)
    if not math.isfinite(r) or r < 0:
        raise InvalidArgumentError(f"r must be finite and >= 0, got {r}")
    state = family_state(n_parties, r, r)
    combo = mermin_combination(n_parties)

    def value(j: float) -> float:
        return bell_value(state, combo, DisplacementSettings.equal(n_parties, j, phase))

    grid = np.concatenate([
        [0.0],
        np.geomspace(settings_cfg.bell_grid_min, settings_cfg.bell_grid_max, settings_cfg.bell_grid_points),
    ])
    values = np.array([value(j) for j in grid])
    best = int(np.argmax(values))
    j_star, b_star = float(grid[best]), float(values[best])

    lo = float(grid[best - 1]) if best > 0 else 0.0
    hi = float(grid[min(best + 1, grid.size - 1)])
    if hi > lo:
        xatol = settings_cfg.bell_refine_rtol * max(j_star, settings_cfg.bell_grid_min)
        result = minimize_scalar(
            lambda j: -value(j), bounds=(lo, hi), method="bounded", options={"xatol": xatol}
        )
        if -result.fun > b_star:
            j_star, b_star = float(result.x), float(-result.fun)

    logger.info("Bell maximum N=%d r=%.6g phase=%.6g: J*=%.6g B*=%.9g", n_parties, r, phase, j_star, b_star)
    return BellMaximum(n_parties=n_parties, r=r, phase=phase, j_star=j_star, b_star=b_star)


def bell_sweep(
    n_values: Sequence[int], r_values: Sequence[float], phase: Optional[float] = None
) -> List[BellMaximum]:
    """maximize_bell over the grid; rows in sorted (N, r) order."""
    return [
        maximize_bell(n, r, phase)
        for n in sorted(set(n_values))
        for r in sorted(set(r_values))
    ]
