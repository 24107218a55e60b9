"""
Qubit reference oracle API
"""
from typing import List

from fastapi import APIRouter

from app.models.qubit import SelfTestCheck
from app.services import qubit_oracle

router = APIRouter(prefix="/api/v1/cv", tags=["qubit"])


@router.get("/qubit-selftest", response_model=List[SelfTestCheck])
def qubit_selftest():
    return qubit_oracle.run_self_test()
