"""
Inseparability test reports
"""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class Verdict(str, Enum):
    """Outcome of one inseparability test"""
    CONSISTENT_FULL = "consistent-with-full-separability"
    RULES_OUT_FULL = "rules-out-full-separability"
    CONSISTENT_PAIR = "consistent-with-separability"
    RULES_OUT_PAIR = "rules-out-separability"
    BOUNDARY = "boundary"
    PPT_PHYSICAL = "PPT-physical"
    PPT_UNPHYSICAL = "PPT-unphysical"


class CriterionReport(BaseModel):
    """Value, threshold and verdict of one test; margin = value - threshold"""
    criterion: str
    value: float
    threshold: float
    margin: float
    verdict: Verdict
    scope_note: str = Field(..., min_length=1)
    modes: Optional[List[int]] = Field(
        default=None, description="Modes the test refers to (pair or cut side), 0-based"
    )


class GenuineEntanglementReport(BaseModel):
    """Violation of a full-separability condition combined with purity and total symmetry"""
    violated: List[str]
    pure: bool
    symmetric: bool
    witnessed: bool
    scope_note: str


class CriteriaBundle(BaseModel):
    """Every test run on one state"""
    n_modes: int
    purity: float
    crit1: CriterionReport
    crit2: CriterionReport
    tan_pairs: List[CriterionReport]
    ppt_cuts: List[CriterionReport]
    genuine: GenuineEntanglementReport
    crit1_sampled: Optional[float] = Field(
        default=None, description="Monte-Carlo crit1 estimate from sampled analyzer records"
    )
    shots: Optional[int] = None
    seed: Optional[int] = None


class ExampleRow(BaseModel):
    """One point of the partial three-mode criterion scan"""
    r: float
    crit1_value: float
    crit1_reference_formula: float
    crit2_value: float
    crit1_threshold: float = 0.5
    crit2_threshold: float = 1.5
