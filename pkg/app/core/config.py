"""
Core configuration for the CV entanglement toolkit
"""
import math
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix CVENT_)"""

    model_config = SettingsConfigDict(
        env_prefix="CVENT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "CV Entanglement Toolkit"
    app_version: str = "0.1.0"

    # HTTP surface
    host: str = "0.0.0.0"
    port: int = 8000

    # Logging
    log_level: str = "INFO"

    # Numerical tolerances
    symmetry_tol: float = 1e-10
    psd_tol: float = 1e-9
    symplectic_tol: float = 1e-10
    commute_tol: float = 1e-10
    decision_tol: float = 1e-12
    det_floor: float = 1e-300
    qubit_tol: float = 1e-10
    max_qubits: int = 12

    # Bell optimizer
    bell_grid_min: float = 1e-8
    bell_grid_max: float = 10.0
    bell_grid_points: int = 200
    bell_refine_rtol: float = 1e-8
    bell_default_phase: float = math.pi / 2

    # Reproduction artifacts
    fig_points: int = 201
    float_digits: int = 17


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
