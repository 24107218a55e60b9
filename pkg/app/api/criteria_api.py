"""
Inseparability criteria API
"""
from typing import Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.api.states_api import StatePayload
from app.core.exceptions import CvError
from app.models.reports import CriteriaBundle, CriterionReport
from app.services import criteria

router = APIRouter(prefix="/api/v1/cv/criteria", tags=["criteria"])


class CriteriaRequest(BaseModel):
    state: StatePayload
    seed: Optional[int] = None
    shots: Optional[int] = Field(default=None, ge=2)


class TanRequest(BaseModel):
    state: StatePayload
    i: int
    j: int


@router.post("", response_model=CriteriaBundle)
def evaluate_criteria(request: CriteriaRequest):
    """crit1, crit2, pairwise product tests and 1|rest partial-transpose cuts"""
    try:
        return criteria.evaluate_all(request.state.to_state(), seed=request.seed, shots=request.shots)
    except CvError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/tan", response_model=CriterionReport)
def evaluate_tan_product(request: TanRequest):
    try:
        return criteria.tan_product(request.state.to_state(), request.i, request.j)
    except CvError as e:
        raise HTTPException(status_code=400, detail=str(e))
