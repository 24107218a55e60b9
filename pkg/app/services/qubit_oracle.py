"""
Qubit reference oracle

Dense GHZ / W states with Schmidt coefficients, partial traces, partial
transposes and the conjugate-basis GHZ measurement.
"""
import logging
import math
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from scipy.special import xlogy

from app.core.config import get_settings
from app.core.exceptions import InvalidArgumentError
from app.models.qubit import QubitState, SelfTestCheck

logger = logging.getLogger(__name__)

Outcome = Union[str, int]


def _basis_vector(n: int, index: int) -> np.ndarray:
    v = np.zeros(2 ** n, dtype=complex)
    v[index] = 1.0
    return v


def _check_qubits(state: QubitState, parties: Iterable[int]) -> List[int]:
    parties = sorted(set(parties))
    for q in parties:
        if not 0 <= q < state.n_qubits:
            raise InvalidArgumentError(f"qubit {q} out of range for {state.n_qubits} qubits")
    return parties


def ghz(n: int) -> QubitState:
    """(|0...0> + |1...1>)/sqrt(2)"""
    if n < 2:
        raise InvalidArgumentError(f"GHZ needs at least 2 qubits, got {n}")
    return QubitState(n, vector=(_basis_vector(n, 0) + _basis_vector(n, 2 ** n - 1)) / math.sqrt(2))


def w3() -> QubitState:
    """(|100> + |010> + |001>)/sqrt(3)"""
    return QubitState(3, vector=sum(_basis_vector(3, i) for i in (4, 2, 1)) / math.sqrt(3))


def product_state(bits: Sequence[int]) -> QubitState:
    index = int("".join(str(int(b)) for b in bits), 2)
    return QubitState(len(bits), vector=_basis_vector(len(bits), index))


def density(state: QubitState) -> np.ndarray:
    if state.vector is not None:
        return np.outer(state.vector, state.vector.conj())
    return np.array(state.density)


def schmidt(state: QubitState, bipartition: Iterable[int]) -> np.ndarray:
    """Schmidt coefficients across `bipartition` | rest, descending."""
    if state.vector is None:
        raise InvalidArgumentError("Schmidt decomposition needs a pure state vector")
    side_a = _check_qubits(state, bipartition)
    side_b = [q for q in range(state.n_qubits) if q not in side_a]
    if not side_a or not side_b:
        raise InvalidArgumentError("bipartition must be a proper non-empty subset")
    psi = state.vector.reshape([2] * state.n_qubits).transpose(side_a + side_b)
    matrix = psi.reshape(2 ** len(side_a), 2 ** len(side_b))
    return np.linalg.svd(matrix, compute_uv=False)


def trace_out(state: QubitState, parties: Iterable[int]) -> QubitState:
    """Reduced density matrix after tracing out `parties`."""
    parties = _check_qubits(state, parties)
    if len(parties) >= state.n_qubits:
        raise InvalidArgumentError("cannot trace out every qubit")
    n = state.n_qubits
    rho = density(state).reshape([2] * (2 * n))
    remaining = n
    # highest index first so lower axis numbers stay valid
    for q in reversed(parties):
        rho = np.trace(rho, axis1=q, axis2=q + remaining)
        remaining -= 1
    dim = 2 ** remaining
    return QubitState(remaining, density=rho.reshape(dim, dim))


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on the second qubit of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidArgumentError(f"expected a 4x4 two-qubit density matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def partial_transpose_eigs(rho: Union[np.ndarray, QubitState]) -> np.ndarray:
    """Eigenvalues of the partial transpose, ascending."""
    if isinstance(rho, QubitState):
        rho = density(rho)
    return np.linalg.eigvalsh(partial_transpose(rho))


def is_separable_two_qubit(rho: Union[np.ndarray, QubitState]) -> bool:
    return bool(partial_transpose_eigs(rho)[0] >= -get_settings().qubit_tol)


def _sign(outcome: Outcome) -> int:
    if outcome in ("+", 1, "+1"):
        return 1
    if outcome in ("-", -1, "-1"):
        return -1
    raise InvalidArgumentError(f"outcome must be '+' or '-', got {outcome!r}")


def _conjugate_projection(outcome: Outcome) -> np.ndarray:
    sign = _sign(outcome)
    ket = np.array([1.0, sign], dtype=complex) / math.sqrt(2)
    projector = np.kron(np.outer(ket, ket.conj()), np.eye(4))
    return projector @ ghz(3).vector


def conjugate_outcome_probability(outcome: Outcome) -> float:
    """Probability of `outcome` when qubit 1 of ghz(3) is measured in the conjugate basis."""
    projected = _conjugate_projection(outcome)
    return float(np.vdot(projected, projected).real)


def measure_ghz_conjugate(outcome: Outcome) -> QubitState:
    """Post-measurement ghz(3) state: (|0> +- |1>)/sqrt(2) (x) (|00> +- |11>)/sqrt(2)."""
    projected = _conjugate_projection(outcome)
    return QubitState(3, vector=projected / np.linalg.norm(projected))


def bell_phi(sign: Outcome) -> QubitState:
    """(|00> +- |11>)/sqrt(2)"""
    s = _sign(sign)
    return QubitState(2, vector=(_basis_vector(2, 0) + s * _basis_vector(2, 3)) / math.sqrt(2))


def von_neumann_entropy(state: Union[QubitState, np.ndarray], base: float = 2.0) -> float:
    rho = density(state) if isinstance(state, QubitState) else np.asarray(state, dtype=complex)
    eigs = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    return float(-np.sum(xlogy(eigs, eigs)) / math.log(base))


# =============================================================================
# Self test
# =============================================================================

def _check(name: str, passed: bool, detail: str) -> SelfTestCheck:
    return SelfTestCheck(name=name, passed=bool(passed), detail=detail)


def run_self_test() -> List[SelfTestCheck]:
    """Reference facts about GHZ and W states, each reported pass/fail."""
    tol = 1e-12
    checks = []

    w_pair = trace_out(w3(), [0])
    eigs = partial_transpose_eigs(w_pair.density)
    expected = np.sort([(1 - math.sqrt(5)) / 6, 1 / 3, 1 / 3, (1 + math.sqrt(5)) / 6])
    checks.append(_check(
        "w_pair_partial_transpose",
        np.allclose(eigs, expected, atol=tol, rtol=0),
        f"eigenvalues {np.round(eigs, 12).tolist()}",
    ))

    ghz_pair = trace_out(ghz(3), [0])
    ghz_eigs = partial_transpose_eigs(ghz_pair.density)
    checks.append(_check(
        "ghz_pair_separable",
        is_separable_two_qubit(ghz_pair.density),
        f"min eigenvalue {ghz_eigs[0]:.3e}",
    ))

    for outcome in ("+", "-"):
        post = measure_ghz_conjugate(outcome)
        sign = _sign(outcome)
        ket = np.array([1.0, sign], dtype=complex) / math.sqrt(2)
        target = np.kron(ket, bell_phi(outcome).vector)
        overlap = abs(np.vdot(target, post.vector))
        prob = conjugate_outcome_probability(outcome)
        checks.append(_check(
            f"ghz_conjugate_{'plus' if sign > 0 else 'minus'}",
            abs(overlap - 1) < tol and abs(prob - 0.5) < tol,
            f"overlap {overlap:.15f}, probability {prob:.15f}",
        ))

    entropy = von_neumann_entropy(trace_out(ghz(2), [1]))
    checks.append(_check("ghz2_entropy", abs(entropy - 1) < tol, f"{entropy:.15f} ebits"))

    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning("Qubit self test failed: %s", ", ".join(failed))
    return checks


def schmidt_rank(state: QubitState, bipartition: Iterable[int]) -> int:
    return int(np.sum(schmidt(state, bipartition) > get_settings().qubit_tol))


def entangled_across(state: QubitState, bipartition: Iterable[int]) -> Tuple[bool, int]:
    """(entangled?, Schmidt rank) across the cut; entangled iff rank >= 2."""
    rank = schmidt_rank(state, bipartition)
    return rank >= 2, rank
