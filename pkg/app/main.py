"""
CV Entanglement Toolkit
Main FastAPI Application
"""
import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api.bell_api import router as bell_router
from app.api.criteria_api import router as criteria_router
from app.api.oracle_api import router as oracle_router
from app.api.states_api import router as states_router
from app.core.config import get_settings

settings = get_settings()
logging.basicConfig(
    level=settings.log_level.upper(),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)

app = FastAPI(
    title=settings.app_name,
    description="Gaussian multipartite entanglement: state generation, inseparability criteria and Bell tests",
    version=settings.app_version,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(states_router)
app.include_router(criteria_router)
app.include_router(bell_router)
app.include_router(oracle_router)


@app.get("/")
async def root():
    return {
        "service": settings.app_name,
        "version": settings.app_version,
        "features": [
            "Family, partial three-mode and MQC state generation",
            "Variance-sum, relative/total, product and partial-transpose criteria",
            "Mermin-Klyshko combinations with displaced parity",
            "Qubit GHZ/W reference checks",
        ],
    }


@app.get("/api/v1/cv/health")
async def health():
    return {"status": "healthy", "version": settings.app_version}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host=settings.host, port=settings.port)
