"""
Dense qubit state model

Qubit 1 is the most significant bit of the basis index (|100> is index 4).
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel

from app.core.config import get_settings
from app.core.exceptions import InvalidArgumentError


@dataclass(frozen=True)
class QubitState:
    """Pure state vector or density matrix of n qubits; exactly one is set"""
    n_qubits: int
    vector: Optional[np.ndarray] = None
    density: Optional[np.ndarray] = None

    def __post_init__(self):
        settings = get_settings()
        n = self.n_qubits
        if not isinstance(n, (int, np.integer)) or not 1 <= n <= settings.max_qubits:
            raise InvalidArgumentError(f"n_qubits must be in [1, {settings.max_qubits}], got {n!r}")
        if (self.vector is None) == (self.density is None):
            raise InvalidArgumentError("give exactly one of vector or density")
        dim = 2 ** int(n)
        tol = settings.qubit_tol

        if self.vector is not None:
            psi = np.array(self.vector, dtype=complex).ravel()
            if psi.shape != (dim,):
                raise InvalidArgumentError(f"vector must have length {dim}, got {psi.size}")
            norm = float(np.linalg.norm(psi))
            if abs(norm - 1.0) > tol:
                raise InvalidArgumentError(f"vector is not normalized (norm {norm:.12g})")
            psi.setflags(write=False)
            object.__setattr__(self, "vector", psi)
        else:
            rho = np.array(self.density, dtype=complex)
            if rho.shape != (dim, dim):
                raise InvalidArgumentError(f"density must be {dim}x{dim}, got shape {rho.shape}")
            if np.max(np.abs(rho - rho.conj().T)) > tol:
                raise InvalidArgumentError("density is not Hermitian")
            trace = complex(np.trace(rho))
            if abs(trace - 1.0) > tol:
                raise InvalidArgumentError(f"density does not have unit trace ({trace:.12g})")
            min_eig = float(np.linalg.eigvalsh(rho)[0])
            if min_eig < -tol:
                raise InvalidArgumentError(f"density is not positive semidefinite ({min_eig:.3e})")
            rho.setflags(write=False)
            object.__setattr__(self, "density", rho)
        object.__setattr__(self, "n_qubits", int(n))

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits


class SelfTestCheck(BaseModel):
    """One qubit reference check"""
    name: str
    passed: bool
    detail: str
