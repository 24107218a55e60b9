"""
Gaussian core - moments, symplectic maps, Wigner function and entropy

All functions are pure: states and ops are immutable and every result is a
new value. Mode indices are 0-based.
"""
import itertools
import logging
import math
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from scipy.linalg import block_diag, cho_factor, cho_solve
from scipy.special import xlogy

from app.core.config import get_settings
from app.core.exceptions import (
    InvalidArgumentError,
    NumericalDegeneracyError,
    PreconditionViolationError,
)
from app.models.gaussian import (
    VACUUM_VARIANCE,
    GaussianState,
    PhaseSpacePoint,
    SqueezeAxis,
    SymplecticOp,
    symplectic_form,
    tolerance_scale,
)

logger = logging.getLogger(__name__)


def _check_mode_count(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < minimum:
        raise InvalidArgumentError(f"number of modes must be an integer >= {minimum}, got {n!r}")
    return int(n)


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidArgumentError(f"{name} must be finite, got {value}")
    return value


def _check_mode(n: int, mode: int, name: str = "mode") -> int:
    if isinstance(mode, bool) or not isinstance(mode, (int, np.integer)) or not 0 <= mode < n:
        raise InvalidArgumentError(f"{name} must be in [0, {n - 1}], got {mode!r}")
    return int(mode)


def quadrature_indices(modes: Iterable[int]) -> List[int]:
    """Row/column indices (x_k, p_k) of the given modes, in the given order."""
    indices = []
    for k in modes:
        indices.extend((2 * k, 2 * k + 1))
    return indices


# =============================================================================
# States
# =============================================================================

def vacuum_state(n: int) -> GaussianState:
    n = _check_mode_count(n)
    return GaussianState(n, np.zeros(2 * n), VACUUM_VARIANCE * np.eye(2 * n))


def squeezed_vacuum(r: float, axis: Union[SqueezeAxis, str]) -> GaussianState:
    """
    One-mode squeezed vacuum.

    position: x -> e^{-r} x, p -> e^{+r} p
    momentum: x -> e^{+r} x, p -> e^{-r} p
    """
    r = _check_finite("r", r)
    try:
        axis = SqueezeAxis(axis)
    except ValueError:
        raise InvalidArgumentError(f"axis must be 'position' or 'momentum', got {axis!r}")
    sign = -1.0 if axis == SqueezeAxis.POSITION else 1.0
    try:
        cov = VACUUM_VARIANCE * np.diag([math.exp(2 * sign * r), math.exp(-2 * sign * r)])
    except OverflowError:
        raise InvalidArgumentError(f"squeezing r={r} overflows the covariance")
    return GaussianState(1, np.zeros(2), cov)


def tensor(states: Sequence[GaussianState]) -> GaussianState:
    states = list(states)
    if not states:
        raise InvalidArgumentError("tensor needs at least one state")
    mean = np.concatenate([s.mean for s in states])
    cov = block_diag(*[s.cov for s in states])
    return GaussianState(sum(s.n_modes for s in states), mean, cov)


def partial_trace(state: GaussianState, keep: Iterable[int]) -> GaussianState:
    """Reduced state on `keep`; kept modes stay in ascending order."""
    keep = sorted(set(keep))
    if not keep:
        raise InvalidArgumentError("keep must name at least one mode")
    for k in keep:
        _check_mode(state.n_modes, k)
    idx = quadrature_indices(keep)
    return GaussianState(len(keep), state.mean[idx], state.cov[np.ix_(idx, idx)])


# =============================================================================
# Symplectic operations
# =============================================================================

def identity_op(n: int) -> SymplecticOp:
    n = _check_mode_count(n)
    return SymplecticOp(n, np.eye(2 * n), label="identity")


def beam_splitter(n: int, k: int, l: int, theta: float) -> SymplecticOp:
    """
    Phase-free beam splitter between modes k < l.

    The kernel [[sin t, cos t], [cos t, -sin t]] acts identically on the
    x entries and on the p entries of the two modes.
    """
    n = _check_mode_count(n, 2)
    k = _check_mode(n, k, "k")
    l = _check_mode(n, l, "l")
    if k >= l:
        raise InvalidArgumentError(f"beam splitter needs k < l, got k={k}, l={l}")
    theta = _check_finite("theta", theta)

    s, c = math.sin(theta), math.cos(theta)
    matrix = np.eye(2 * n)
    for q in (0, 1):
        a, b = 2 * k + q, 2 * l + q
        matrix[a, a], matrix[a, b] = s, c
        matrix[b, a], matrix[b, b] = c, -s
    return SymplecticOp(n, matrix, label=f"B[{k},{l}]({theta:.6g})")


def splitter_cascade(n: int, modes: Sequence[int]) -> SymplecticOp:
    """
    N-splitter over `modes` embedded in an n-mode system.

    Product B[m_{K-2}, m_{K-1}](asin 1/sqrt 2) ... B[m_0, m_1](asin 1/sqrt K),
    so B[m_0, m_1] acts first and the first listed mode is spread evenly over
    all K modes.
    """
    modes = list(modes)
    size = len(modes)
    if size < 2:
        raise InvalidArgumentError(f"a splitter cascade needs at least 2 modes, got {size}")
    if len(set(modes)) != size or modes != sorted(modes):
        raise InvalidArgumentError(f"cascade modes must be strictly increasing, got {modes}")

    op = identity_op(n)
    for step in range(size - 1):
        theta = math.asin(1.0 / math.sqrt(size - step))
        op = beam_splitter(n, modes[step], modes[step + 1], theta) @ op
    return op


def n_splitter(n: int) -> SymplecticOp:
    n = _check_mode_count(n, 2)
    op = splitter_cascade(n, range(n))
    return SymplecticOp(n, op.matrix, label=f"U({n})")


def local_squeezer(n: int, mode: int, s: float) -> SymplecticOp:
    """x -> e^{-s} x, p -> e^{+s} p on one mode, identity elsewhere."""
    n = _check_mode_count(n)
    mode = _check_mode(n, mode)
    s = _check_finite("s", s)
    diag = np.ones(2 * n)
    try:
        diag[2 * mode] = math.exp(-s)
        diag[2 * mode + 1] = math.exp(s)
    except OverflowError:
        raise InvalidArgumentError(f"squeezing s={s} overflows the symplectic matrix")
    return SymplecticOp(n, np.diag(diag), label=f"S[{mode}]({s:.6g})")


def inverse(op: SymplecticOp) -> SymplecticOp:
    """S^{-1} = Omega S^T Omega^T."""
    omega = symplectic_form(op.n_modes)
    return SymplecticOp(op.n_modes, omega @ op.matrix.T @ omega.T, label=f"inv {op.label}".strip())


def apply(op: SymplecticOp, state: GaussianState) -> GaussianState:
    if op.n_modes != state.n_modes:
        raise InvalidArgumentError(
            f"op acts on {op.n_modes} modes but the state has {state.n_modes}"
        )
    s = op.matrix
    cov = s @ state.cov @ s.T
    # re-symmetrize: S V S^T picks up rounding asymmetry for large squeezing
    cov = 0.5 * (cov + cov.T)
    return GaussianState(state.n_modes, s @ state.mean, cov)


# =============================================================================
# Evaluation
# =============================================================================

def wigner(
    state: GaussianState, point: Union[PhaseSpacePoint, np.ndarray, Sequence[float]]
) -> Union[float, np.ndarray]:
    """
    Wigner function exp(-1/2 xi V^{-1} xi) / ((2 pi)^N sqrt(det V)), xi = point - mean.

    `point` may be a PhaseSpacePoint or an array of shape (..., 2N); array
    input is evaluated point-wise and returns an array of shape (...).
    """
    coords = point.coords if isinstance(point, PhaseSpacePoint) else np.asarray(point, dtype=float)
    if coords.ndim == 0 or coords.shape[-1] != state.dim:
        raise InvalidArgumentError(
            f"point must have trailing dimension {state.dim}, got shape {coords.shape}"
        )

    sign, logdet = np.linalg.slogdet(state.cov)
    if sign <= 0 or logdet < math.log(get_settings().det_floor):
        raise NumericalDegeneracyError(
            f"covariance is singular to working precision (sign={sign}, log det={logdet:.3e})"
        )
    try:
        factor = cho_factor(state.cov)
    except np.linalg.LinAlgError as exc:
        raise NumericalDegeneracyError(f"covariance is not positive definite: {exc}")

    xi = (coords - state.mean).reshape(-1, state.dim)
    solved = cho_solve(factor, xi.T).T
    quad = np.einsum("ij,ij->i", xi, solved)
    log_norm = state.n_modes * math.log(2 * math.pi) + 0.5 * logdet
    values = np.exp(-0.5 * quad - log_norm)

    if coords.ndim == 1:
        return float(values[0])
    return values.reshape(coords.shape[:-1])


def symplectic_eigenvalues(state: GaussianState) -> List[float]:
    """Moduli of the eigenvalues of i Omega V, one per mode, ascending."""
    omega = symplectic_form(state.n_modes)
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * omega @ state.cov)))
    # eigenvalues come in +/- nu pairs
    return [float(v) for v in moduli[0::2]]


def purity(state: GaussianState) -> float:
    """Tr rho^2 = 1 / (4^N sqrt(det V))."""
    sign, logdet = np.linalg.slogdet(state.cov)
    if sign <= 0:
        raise NumericalDegeneracyError("covariance determinant is not positive")
    return float(math.exp(-state.n_modes * math.log(4.0) - 0.5 * logdet))


def is_pure(state: GaussianState, tol: Optional[float] = None) -> bool:
    """
    All symplectic eigenvalues equal 1/4.

    The eigenvalues of i Omega V carry rounding of order eps |V|^2, so the
    tolerance grows with the scale of the covariance.
    """
    tol = get_settings().psd_tol if tol is None else tol
    scale = tolerance_scale(state.cov)
    tol = tol * scale + 64.0 * np.finfo(float).eps * scale ** 2
    return all(abs(nu - VACUUM_VARIANCE) <= tol for nu in symplectic_eigenvalues(state))


def is_permutation_symmetric(
    state: GaussianState,
    modes: Optional[Sequence[int]] = None,
    max_permutations: int = 24,
    seed: int = 0,
) -> bool:
    """
    True if permuting `modes` (all modes by default) leaves the covariance unchanged.

    Up to `max_permutations` permutations are checked exhaustively; larger
    groups are checked on adjacent transpositions plus a seeded random sample.
    """
    modes = list(range(state.n_modes)) if modes is None else sorted(set(modes))
    for k in modes:
        _check_mode(state.n_modes, k)
    if len(modes) < 2:
        return True

    if math.factorial(len(modes)) <= max_permutations:
        perms = [list(p) for p in itertools.permutations(modes)]
    else:
        perms = []
        for i in range(len(modes) - 1):
            p = list(modes)
            p[i], p[i + 1] = p[i + 1], p[i]
            perms.append(p)
        rng = np.random.default_rng(seed)
        perms.extend(list(rng.permutation(modes)) for _ in range(max_permutations))

    tol = get_settings().symmetry_tol * max(1.0, float(np.max(np.abs(state.cov))))
    for perm in perms:
        mapping = list(range(state.n_modes))
        for src, dst in zip(modes, perm):
            mapping[src] = int(dst)
        idx = quadrature_indices(mapping)
        if np.max(np.abs(state.cov[np.ix_(idx, idx)] - state.cov)) > tol:
            return False
    return True


def entropy_of_subsystem(state: GaussianState, subset: Iterable[int]) -> float:
    """
    Von Neumann entropy (ebits) of the reduced state on `subset`.

    Each symplectic eigenvalue nu contributes g(n) with n = 2 nu - 1/2 and
    g(n) = (n + 1) log2(n + 1) - n log2(n).
    """
    if not is_pure(state):
        raise PreconditionViolationError("entropy_of_subsystem needs a pure global state")
    reduced = partial_trace(state, subset)
    total = 0.0
    for nu in symplectic_eigenvalues(reduced):
        n_bar = max(2.0 * nu - 0.5, 0.0)
        total += (xlogy(n_bar + 1.0, n_bar + 1.0) - xlogy(n_bar, n_bar)) / math.log(2.0)
    return float(total)


def quadrature_variance(state: GaussianState, coeffs: Sequence[float]) -> float:
    """Central variance c V c^T of the linear combination c . xi."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (state.dim,):
        raise InvalidArgumentError(f"coeffs must have length {state.dim}, got shape {c.shape}")
    return float(c @ state.cov @ c)


def symplectic_products(observables: np.ndarray) -> np.ndarray:
    """Matrix of a Omega b^T over all pairs of coefficient rows."""
    observables = np.atleast_2d(np.asarray(observables, dtype=float))
    omega = symplectic_form(observables.shape[1] // 2)
    return observables @ omega @ observables.T


def sample_quadratures(
    state: GaussianState,
    observables: Sequence[Sequence[float]],
    seed: int,
    shots: Optional[int] = None,
) -> np.ndarray:
    """
    Joint homodyne record of commuting linear quadratures.

    Returns one sample of shape (k,) for k observables, or (shots, k) when
    `shots` is given. Deterministic for a fixed seed.
    """
    a = np.atleast_2d(np.asarray(observables, dtype=float))
    if a.shape[1] != state.dim:
        raise InvalidArgumentError(
            f"observables must have {state.dim} columns, got shape {a.shape}"
        )
    products = symplectic_products(a)
    worst = float(np.max(np.abs(products)))
    if worst > get_settings().commute_tol:
        raise InvalidArgumentError(
            f"observables do not commute (max symplectic product {worst:.3e}); "
            "joint sampling is undefined"
        )

    rng = np.random.default_rng(seed)
    means = a @ state.mean
    cov = a @ state.cov @ a.T
    cov = 0.5 * (cov + cov.T)
    size = None if shots is None else int(shots)
    logger.debug("Sampling %d observables, shots=%s, seed=%s", a.shape[0], size, seed)
    return rng.multivariate_normal(means, cov, size=size, method="eigh")
