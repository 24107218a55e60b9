"""
State generation API
"""
from typing import List, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.core import gaussian as gc
from app.core.exceptions import CvError
from app.models.circuits import FamilySpec, MqcSpec, StateKind, parse_spec
from app.models.gaussian import CONVENTION, GaussianState
from app.services import circuits
from app.services.state_io import state_from_dict, state_to_dict

router = APIRouter(prefix="/api/v1/cv/states", tags=["states"])


class StatePayload(BaseModel):
    """JSON mirror of a Gaussian state"""
    convention: str = CONVENTION
    n_modes: int
    mean: List[float]
    cov: List[List[float]]

    def to_state(self) -> GaussianState:
        return state_from_dict(self.model_dump())


class GenerateRequest(BaseModel):
    """Parameters of a named state"""
    kind: StateKind
    n_modes: int = Field(default=3, description="Family modes N")
    r1: Optional[float] = None
    r2: Optional[float] = None
    r: Optional[float] = Field(default=None, description="partial3 squeezing, or r1 = r2 = r for family")
    receivers: int = Field(default=2, description="MQC receivers M")
    theta0: Optional[float] = None


class GenerateResponse(BaseModel):
    state: StatePayload
    pure: bool
    purity: float
    symplectic_eigenvalues: List[float]


def build_state(request: GenerateRequest) -> GaussianState:
    if request.kind == StateKind.FAMILY:
        r1 = request.r1 if request.r1 is not None else request.r
        r2 = request.r2 if request.r2 is not None else r1
        spec = parse_spec(FamilySpec, n_modes=request.n_modes, r1=r1, r2=r2)
        return circuits.make_family_state(spec)
    if request.kind == StateKind.PARTIAL3:
        return circuits.make_partial_three_mode(request.r or 0.0)
    spec = parse_spec(MqcSpec, receivers=request.receivers, theta0=request.theta0)
    return circuits.make_mqc_state(spec)


@router.post("", response_model=GenerateResponse)
def generate_state(request: GenerateRequest):
    """Build a family, partial three-mode or MQC state"""
    try:
        state = build_state(request)
    except CvError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return GenerateResponse(
        state=StatePayload(**state_to_dict(state)),
        pure=gc.is_pure(state),
        purity=gc.purity(state),
        symplectic_eigenvalues=gc.symplectic_eigenvalues(state),
    )
