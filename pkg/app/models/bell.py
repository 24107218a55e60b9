"""
Bell-type combination models
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from app.core.exceptions import InvalidArgumentError


@dataclass(frozen=True)
class BellTerm:
    """coefficient * C(settings); primed[i] selects a_i' over a_i"""
    coefficient: Fraction
    primed: Tuple[bool, ...]

    def label(self) -> str:
        parts = [f"a{i + 1}'" if p else f"a{i + 1}" for i, p in enumerate(self.primed)]
        return f"{self.coefficient}*C({','.join(parts)})"


@dataclass(frozen=True)
class BellCombination:
    """Signed sum of N-party correlation functions"""
    n_parties: int
    terms: Tuple[BellTerm, ...]

    def __post_init__(self):
        for term in self.terms:
            if len(term.primed) != self.n_parties:
                raise InvalidArgumentError(
                    f"term {term.label()} does not match {self.n_parties} parties"
                )

    def __str__(self) -> str:
        return " + ".join(t.label() for t in self.terms)


@dataclass(frozen=True)
class DisplacementSettings:
    """Per party, the unprimed and primed phase-space displacements"""
    unprimed: np.ndarray
    primed: np.ndarray

    def __post_init__(self):
        unprimed = np.asarray(self.unprimed, dtype=complex).ravel()
        primed = np.asarray(self.primed, dtype=complex).ravel()
        if unprimed.shape != primed.shape or unprimed.size == 0:
            raise InvalidArgumentError(
                f"settings need one unprimed and one primed displacement per party, "
                f"got {unprimed.size} and {primed.size}"
            )
        if not (np.all(np.isfinite(unprimed)) and np.all(np.isfinite(primed))):
            raise InvalidArgumentError("displacements must be finite")
        for name, value in (("unprimed", unprimed), ("primed", primed)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def n_parties(self) -> int:
        return self.unprimed.size

    @classmethod
    def equal(cls, n_parties: int, j: float, phase: float = math.pi / 2) -> "DisplacementSettings":
        """Unprimed 0, primed sqrt(J) e^{i phase} for every party."""
        if j < 0:
            raise InvalidArgumentError(f"J must be >= 0, got {j}")
        return cls(np.zeros(n_parties), np.full(n_parties, math.sqrt(j) * np.exp(1j * phase)))

    @classmethod
    def with_phases(cls, j: float, phases: Sequence[float]) -> "DisplacementSettings":
        """Unprimed 0, primed sqrt(J) e^{i phi_k} with an independent phase per party."""
        if j < 0:
            raise InvalidArgumentError(f"J must be >= 0, got {j}")
        phases = np.asarray(phases, dtype=float)
        return cls(np.zeros(phases.size), math.sqrt(j) * np.exp(1j * phases))


class BellMaximum(BaseModel):
    """Maximum over J of the combination at equal settings"""
    n_parties: int
    r: float
    phase: float
    j_star: float
    b_star: float
