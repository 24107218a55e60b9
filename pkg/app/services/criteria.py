"""
Inseparability tests on Gaussian states

crit1 / crit2 are necessary conditions for full separability, the product
condition is a necessary condition for two-party separability and the
partial-transpose test is Simon's time-reversal criterion. All variances
are central moments.
"""
import itertools
import math
import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np

from app.core import gaussian as gc
from app.core.config import get_settings
from app.core.exceptions import InvalidArgumentError
from app.models.gaussian import GaussianState, tolerance_scale, uncertainty_min_eigenvalue
from app.models.reports import (
    CriteriaBundle,
    CriterionReport,
    ExampleRow,
    GenuineEntanglementReport,
    Verdict,
)
from app.services import circuits

logger = logging.getLogger(__name__)

FULL_SEPARABILITY_NOTE = (
    "A violation rules out full separability only; it does not by itself witness "
    "genuine multipartite entanglement."
)
PAIR_NOTE = (
    "Necessary condition for separability of the two modes; a violation proves the "
    "pair inseparable, compliance proves nothing."
)
PPT_NOTE = (
    "An unphysical partial transpose proves inseparability across the cut. Physicality "
    "implies separability only for 1x1-mode Gaussian bipartitions."
)
GENUINE_NOTE = (
    "The upgrade from a full-separability violation to genuine multipartite "
    "entanglement assumes a pure, totally symmetric state and rests on an external "
    "argument, not on these criteria alone."
)


def _decide(value: float, threshold: float, below: Verdict, above: Verdict) -> Verdict:
    margin = value - threshold
    if abs(margin) < get_settings().decision_tol:
        return Verdict.BOUNDARY
    return below if margin < 0 else above


def _report(
    criterion: str,
    value: float,
    threshold: float,
    verdict: Verdict,
    scope_note: str,
    modes: Optional[List[int]] = None,
) -> CriterionReport:
    return CriterionReport(
        criterion=criterion,
        value=value,
        threshold=threshold,
        margin=value - threshold,
        verdict=verdict,
        scope_note=scope_note,
        modes=modes,
    )


def _require_multimode(state: GaussianState) -> int:
    if state.n_modes < 2:
        raise InvalidArgumentError(f"criteria need at least 2 modes, got {state.n_modes}")
    return state.n_modes


def _unit(dim: int, index: int) -> np.ndarray:
    e = np.zeros(dim)
    e[index] = 1.0
    return e


# =============================================================================
# Observables
# =============================================================================

def relative_total_observables(n_modes: int) -> np.ndarray:
    """Rows X_ij = x_i - x_j (ordered i != j) followed by P = sum p."""
    dim = 2 * n_modes
    rows = [
        _unit(dim, 2 * i) - _unit(dim, 2 * j)
        for i, j in itertools.permutations(range(n_modes), 2)
    ]
    rows.append(sum(_unit(dim, 2 * i + 1) for i in range(n_modes)))
    return np.array(rows)


# =============================================================================
# Criteria
# =============================================================================

def crit_variance_sum(state: GaussianState) -> CriterionReport:
    """Var(p'1) + sum_{i>=2} Var(x'i) / (N-1) >= 1/2 for fully separable states."""
    n = _require_multimode(state)
    analysis = circuits.ghz_analyzer(state)
    variances = [gc.quadrature_variance(state, row) for row in analysis.observables]
    value = variances[0] + sum(variances[1:]) / (n - 1)
    threshold = 0.5
    verdict = _decide(value, threshold, Verdict.RULES_OUT_FULL, Verdict.CONSISTENT_FULL)
    return _report("crit_variance_sum", value, threshold, verdict, FULL_SEPARABILITY_NOTE)


def sampled_variance_sum(state: GaussianState, seed: int, shots: int) -> float:
    """Monte-Carlo estimate of crit1 from `shots` joint analyzer records."""
    n = _require_multimode(state)
    if shots < 2:
        raise InvalidArgumentError(f"shots must be >= 2, got {shots}")
    observables, _ = circuits.analyzer_observables(n)
    records = gc.sample_quadratures(state, observables, seed, shots=shots)
    variances = np.var(records, axis=0, ddof=1)
    return float(variances[0] + np.sum(variances[1:]) / (n - 1))


def crit_relative_total(state: GaussianState) -> CriterionReport:
    """sum_{i != j} Var(x_i - x_j) / (2(N-1)) + Var(sum p) >= N/2 for fully separable states."""
    n = _require_multimode(state)
    rows = relative_total_observables(n)
    variances = [gc.quadrature_variance(state, row) for row in rows]
    value = sum(variances[:-1]) / (2 * (n - 1)) + variances[-1]
    threshold = n / 2
    verdict = _decide(value, threshold, Verdict.RULES_OUT_FULL, Verdict.CONSISTENT_FULL)
    return _report("crit_relative_total", value, threshold, verdict, FULL_SEPARABILITY_NOTE)


def tan_product(state: GaussianState, i: int, j: int) -> CriterionReport:
    """Var(x_i - x_j) * Var(p_i + p_j) >= 1/4 for separable pairs."""
    for k in (i, j):
        if not 0 <= k < state.n_modes:
            raise InvalidArgumentError(f"mode {k} out of range for {state.n_modes} modes")
    if i == j:
        raise InvalidArgumentError(f"tan_product needs two distinct modes, got {i} twice")
    dim = state.dim
    var_x = gc.quadrature_variance(state, _unit(dim, 2 * i) - _unit(dim, 2 * j))
    var_p = gc.quadrature_variance(state, _unit(dim, 2 * i + 1) + _unit(dim, 2 * j + 1))
    value = var_x * var_p
    verdict = _decide(value, 0.25, Verdict.RULES_OUT_PAIR, Verdict.CONSISTENT_PAIR)
    return _report("tan_product", value, 0.25, verdict, PAIR_NOTE, modes=[i, j])


def ppt_test(state: GaussianState, party_a: Iterable[int]) -> CriterionReport:
    """
    Flip p on party_a's modes and test the uncertainty relation.

    The report value is the smallest eigenvalue of V~ + (i/4) Omega.
    """
    party_a = sorted(set(party_a))
    if not party_a or len(party_a) >= state.n_modes:
        raise InvalidArgumentError(
            f"party_a must be a proper non-empty subset of {state.n_modes} modes, got {party_a}"
        )
    for k in party_a:
        if not 0 <= k < state.n_modes:
            raise InvalidArgumentError(f"mode {k} out of range for {state.n_modes} modes")

    flip = np.ones(state.dim)
    for k in party_a:
        flip[2 * k + 1] = -1.0
    transposed = flip[:, None] * state.cov * flip[None, :]
    value = uncertainty_min_eigenvalue(transposed)
    physical = value >= -get_settings().psd_tol * tolerance_scale(transposed)
    verdict = Verdict.PPT_PHYSICAL if physical else Verdict.PPT_UNPHYSICAL
    return _report("ppt_test", value, 0.0, verdict, PPT_NOTE, modes=party_a)


def genuine_multipartite_check(
    state: GaussianState,
    crit1: Optional[CriterionReport] = None,
    crit2: Optional[CriterionReport] = None,
) -> GenuineEntanglementReport:
    """Combine crit1/crit2 violations with purity and total symmetry."""
    crit1 = crit1 or crit_variance_sum(state)
    crit2 = crit2 or crit_relative_total(state)
    violated = [r.criterion for r in (crit1, crit2) if r.verdict == Verdict.RULES_OUT_FULL]
    pure = gc.is_pure(state)
    symmetric = gc.is_permutation_symmetric(state)
    return GenuineEntanglementReport(
        violated=violated,
        pure=pure,
        symmetric=symmetric,
        witnessed=bool(violated) and pure and symmetric,
        scope_note=GENUINE_NOTE,
    )


def evaluate_all(
    state: GaussianState, seed: Optional[int] = None, shots: Optional[int] = None
) -> CriteriaBundle:
    """crit1, crit2, every pairwise product test and every 1|rest PPT cut."""
    n = _require_multimode(state)
    crit1 = crit_variance_sum(state)
    crit2 = crit_relative_total(state)
    bundle = CriteriaBundle(
        n_modes=n,
        purity=gc.purity(state),
        crit1=crit1,
        crit2=crit2,
        tan_pairs=[tan_product(state, i, j) for i, j in itertools.combinations(range(n), 2)],
        ppt_cuts=[ppt_test(state, [k]) for k in range(n)],
        genuine=genuine_multipartite_check(state, crit1, crit2),
    )
    if seed is not None and shots:
        bundle.crit1_sampled = sampled_variance_sum(state, seed, shots)
        bundle.seed, bundle.shots = seed, shots
    logger.info(
        "Criteria on %d modes: crit1=%.6g (%s), crit2=%.6g (%s)",
        n, crit1.value, crit1.verdict.value, crit2.value, crit2.verdict.value,
    )
    return bundle


def partial_three_mode_crit1_reference(r: float) -> float:
    """The commonly quoted crit1 expression (e^{2r}/3 + e^{-2r})/4 + 1/6; exact only at r = 0."""
    return (math.exp(2 * r) / 3 + math.exp(-2 * r)) / 4 + 1.0 / 6


def partial_three_mode_scan(r_values: Sequence[float]) -> List[ExampleRow]:
    """crit1 and crit2 of the partial three-mode state over a grid of r."""
    rows = []
    for r in r_values:
        state = circuits.make_partial_three_mode(r)
        rows.append(ExampleRow(
            r=r,
            crit1_value=crit_variance_sum(state).value,
            crit1_reference_formula=partial_three_mode_crit1_reference(r),
            crit2_value=crit_relative_total(state).value,
        ))
    return rows


def default_scan_grid(points: Optional[int] = None) -> List[float]:
    points = get_settings().fig_points if points is None else points
    return [float(r) for r in np.linspace(0.0, 1.0, points)]
