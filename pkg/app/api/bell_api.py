"""
Bell combination API
"""
from typing import List, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.core.exceptions import CvError
from app.models.bell import BellMaximum
from app.services import nonlocality

router = APIRouter(prefix="/api/v1/cv/bell", tags=["bell"])


class BellSweepRequest(BaseModel):
    parties: List[int] = Field(..., min_length=1, description="Values of N (2..8)")
    r_grid: List[float] = Field(..., min_length=1)
    phase: Optional[float] = None


class CombinationResponse(BaseModel):
    n_parties: int
    terms: List[str]
    local_realism_bound: float


@router.post("/maximize", response_model=List[BellMaximum])
def maximize(request: BellSweepRequest):
    """Maximum over J of the combination for every (N, r), sorted grid order"""
    if any(not 2 <= n <= 8 for n in request.parties):
        raise HTTPException(status_code=400, detail="parties must lie in 2..8")
    try:
        return nonlocality.bell_sweep(request.parties, request.r_grid, request.phase)
    except CvError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.get("/combination/{n_parties}", response_model=CombinationResponse)
def combination(n_parties: int):
    if not 2 <= n_parties <= 6:
        raise HTTPException(status_code=400, detail="n_parties must lie in 2..6")
    combo = nonlocality.mermin_combination(n_parties)
    return CombinationResponse(
        n_parties=n_parties,
        terms=[t.label() for t in combo.terms],
        local_realism_bound=nonlocality.local_realism_bound(combo),
    )
