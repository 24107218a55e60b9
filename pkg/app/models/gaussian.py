"""
Gaussian state domain models

Quadrature convention: hbar = 1/2, vacuum covariance I/4, ordering
(x1, p1, ..., xN, pN).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from app.core.config import get_settings
from app.core.exceptions import InvalidArgumentError

CONVENTION = "hbar=1/2"
VACUUM_VARIANCE = 0.25


class SqueezeAxis(str, Enum):
    """Quadrature whose variance is reduced by a single-mode squeezer"""
    POSITION = "position"
    MOMENTUM = "momentum"


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]]."""
    if n_modes < 1:
        raise InvalidArgumentError(f"n_modes must be >= 1, got {n_modes}")
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def tolerance_scale(matrix: np.ndarray) -> float:
    """max(1, spectral norm); absolute tolerances on `matrix` are multiplied by this."""
    return max(1.0, float(np.linalg.norm(matrix, 2)))


def uncertainty_min_eigenvalue(cov: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian matrix V + (i/4) Omega."""
    n_modes = cov.shape[0] // 2
    hermitian = cov + 0.25j * symplectic_form(n_modes)
    return float(np.linalg.eigvalsh(hermitian)[0])


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class GaussianState:
    """
    Gaussian state given by its first and second moments.

    Construction validates shape, finiteness, symmetry and the uncertainty
    relation V + (i/4) Omega >= 0; invalid input raises InvalidArgumentError.
    """
    n_modes: int
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n_modes, (int, np.integer)) or self.n_modes < 1:
            raise InvalidArgumentError(f"n_modes must be a positive integer, got {self.n_modes!r}")
        dim = 2 * int(self.n_modes)
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.shape != (dim,):
            raise InvalidArgumentError(f"mean must have length {dim}, got shape {mean.shape}")
        if cov.shape != (dim, dim):
            raise InvalidArgumentError(f"cov must be {dim}x{dim}, got shape {cov.shape}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise InvalidArgumentError("mean and cov must be finite")

        settings = get_settings()
        scale = tolerance_scale(cov)
        asymmetry = float(np.max(np.abs(cov - cov.T)))
        if asymmetry > settings.symmetry_tol * scale:
            raise InvalidArgumentError(f"cov is not symmetric (max deviation {asymmetry:.3e})")
        min_eig = uncertainty_min_eigenvalue(cov)
        if min_eig < -settings.psd_tol * scale:
            raise InvalidArgumentError(
                f"cov violates the uncertainty relation (min eigenvalue {min_eig:.3e})"
            )

        object.__setattr__(self, "n_modes", int(self.n_modes))
        object.__setattr__(self, "mean", _frozen(mean))
        object.__setattr__(self, "cov", _frozen(cov))

    @property
    def dim(self) -> int:
        return 2 * self.n_modes

    def __eq__(self, other):
        if not isinstance(other, GaussianState):
            return NotImplemented
        return (
            self.n_modes == other.n_modes
            and np.array_equal(self.mean, other.mean)
            and np.array_equal(self.cov, other.cov)
        )

    __hash__ = None


@dataclass(frozen=True)
class SymplecticOp:
    """Linear phase-space map S acting on the quadrature vector (S Omega S^T = Omega)."""
    n_modes: int
    matrix: np.ndarray
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.n_modes, (int, np.integer)) or self.n_modes < 1:
            raise InvalidArgumentError(f"n_modes must be a positive integer, got {self.n_modes!r}")
        dim = 2 * int(self.n_modes)
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.shape != (dim, dim):
            raise InvalidArgumentError(f"matrix must be {dim}x{dim}, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise InvalidArgumentError("matrix must be finite")

        omega = symplectic_form(int(self.n_modes))
        defect = float(np.max(np.abs(matrix @ omega @ matrix.T - omega)))
        # rounding in S Omega S^T grows with |S|^2
        if defect > get_settings().symplectic_tol * tolerance_scale(matrix) ** 2:
            raise InvalidArgumentError(f"matrix is not symplectic (defect {defect:.3e})")

        object.__setattr__(self, "n_modes", int(self.n_modes))
        object.__setattr__(self, "matrix", _frozen(matrix))

    def __matmul__(self, other: "SymplecticOp") -> "SymplecticOp":
        """Composition: (a @ b) applies b first, then a."""
        if not isinstance(other, SymplecticOp):
            return NotImplemented
        if other.n_modes != self.n_modes:
            raise InvalidArgumentError(
                f"cannot compose ops on {self.n_modes} and {other.n_modes} modes"
            )
        return SymplecticOp(self.n_modes, self.matrix @ other.matrix)

    def __eq__(self, other):
        if not isinstance(other, SymplecticOp):
            return NotImplemented
        return self.n_modes == other.n_modes and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Point (x1, p1, ..., xN, pN) in phase space; alpha_i = x_i + i p_i."""
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim != 1 or coords.size == 0 or coords.size % 2:
            raise InvalidArgumentError(
                f"coords must be a non-empty vector of even length, got shape {coords.shape}"
            )
        if not np.all(np.isfinite(coords)):
            raise InvalidArgumentError("coords must be finite")
        object.__setattr__(self, "coords", _frozen(coords))

    @classmethod
    def from_amplitudes(cls, alphas: Sequence[complex]) -> "PhaseSpacePoint":
        alphas = np.asarray(alphas, dtype=complex).ravel()
        coords = np.empty(2 * alphas.size)
        coords[0::2] = alphas.real
        coords[1::2] = alphas.imag
        return cls(coords)

    @property
    def n_modes(self) -> int:
        return self.coords.size // 2

    @property
    def amplitudes(self) -> np.ndarray:
        return self.coords[0::2] + 1j * self.coords[1::2]

    def __eq__(self, other):
        if not isinstance(other, PhaseSpacePoint):
            return NotImplemented
        return np.array_equal(self.coords, other.coords)

    __hash__ = None
