"""
Circuit specifications and analyzer results
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Type, TypeVar

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from app.core.config import get_settings
from app.core.exceptions import InvalidArgumentError
from app.models.gaussian import GaussianState

SpecT = TypeVar("SpecT", bound=BaseModel)


class StateKind(str, Enum):
    """Named states the circuit builders can produce"""
    FAMILY = "family"
    PARTIAL3 = "partial3"
    MQC = "mqc"


class FamilySpec(BaseModel):
    """One momentum-squeezed mode and N-1 position-squeezed modes fed into an N-splitter"""
    n_modes: int = Field(..., ge=2, description="Number of modes N")
    r1: float = Field(..., ge=0, allow_inf_nan=False, description="Momentum squeezing of mode 1")
    r2: float = Field(..., ge=0, allow_inf_nan=False, description="Position squeezing of modes 2..N")


class MqcSpec(BaseModel):
    """Multiuser quantum channel: one sender mode and M receiver modes"""
    receivers: int = Field(..., ge=1, description="Number of receivers M")
    theta0: float = Field(..., allow_inf_nan=False, description="First beam-splitter angle (radians)")

    @property
    def n_modes(self) -> int:
        return self.receivers + 1

    def squeezing(self) -> Tuple[float, float]:
        """
        Derived input squeezers (r1, r2).

        e^{-2 r1} = (sqrt(M) sin t - cos t) / (sqrt(M) sin t + cos t)
        e^{-2 r2} = (sqrt(M) cos t - sin t) / (sqrt(M) cos t + sin t)

        Both are finite and non-negative only on the open interval
        1/sqrt(M+1) < sin t < sqrt(M/(M+1)) with cos t > 0; angles within
        decision_tol of an endpoint count as the endpoint.
        """
        m = self.receivers
        s, c = math.sin(self.theta0), math.cos(self.theta0)
        lower, upper = 1.0 / math.sqrt(m + 1), math.sqrt(m / (m + 1))
        if c <= 0:
            raise InvalidArgumentError(f"theta0={self.theta0} needs cos(theta0) > 0")
        edge = get_settings().decision_tol
        if s - lower <= edge:
            raise InvalidArgumentError(
                f"theta0={self.theta0} violates the lower bound sin(theta0) > 1/sqrt(M+1) "
                f"= {lower:.12g} (r1 would be infinite)"
            )
        if upper - s <= edge:
            raise InvalidArgumentError(
                f"theta0={self.theta0} violates the upper bound sin(theta0) < sqrt(M/(M+1)) "
                f"= {upper:.12g} (r2 would be infinite)"
            )
        rm = math.sqrt(m)
        r1 = -0.5 * math.log((rm * s - c) / (rm * s + c))
        r2 = -0.5 * math.log((rm * c - s) / (rm * c + s))
        return r1, r2


def parse_spec(model: Type[SpecT], **values) -> SpecT:
    """Validate circuit parameters, reporting pydantic failures as InvalidArgumentError."""
    try:
        return model(**values)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise InvalidArgumentError(f"invalid {model.__name__}: {details}") from exc


@dataclass(frozen=True)
class GhzAnalyzerResult:
    """
    Output of the GHZ analyzer (inverse N-splitter, then p'1 and x'2..x'N homodyne).

    `observables` holds one coefficient row per measured quadrature, expressed
    on the quadratures of the analyzed state; `labels` names the rows.
    """
    transformed: GaussianState
    observables: np.ndarray
    labels: Tuple[str, ...]
    outcomes: Optional[np.ndarray] = None
    v: Optional[float] = None
    u: Optional[np.ndarray] = None
