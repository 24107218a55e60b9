"""
Test Suite: CV Entanglement HTTP API
State generation, criteria, Bell and qubit endpoints through the in-process client
"""
import inspect
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import pytest
from fastapi.routing import APIRoute
from fastapi.testclient import TestClient

from app.main import app
from app.services.circuits import family_state
from app.services.state_io import state_to_dict


@dataclass
class ApiCase:
    """One request and the response it should produce"""
    test_id: str
    endpoint: str
    method: str = "GET"
    body: Dict[str, Any] = field(default_factory=dict)
    expected_status: int = 200
    expected_fields: List[str] = field(default_factory=list)


FAMILY_PAYLOAD = state_to_dict(family_state(3, 0.5, 0.5))

CASES = [
    ApiCase("HEALTH-001", "/", expected_fields=["service", "version", "features"]),
    ApiCase("HEALTH-002", "/api/v1/cv/health", expected_fields=["status"]),
    ApiCase(
        "STATE-001", "/api/v1/cv/states", "POST",
        body={"kind": "family", "n_modes": 3, "r1": 0.5, "r2": 0.5},
        expected_fields=["state", "pure", "purity", "symplectic_eigenvalues"],
    ),
    ApiCase(
        "STATE-002", "/api/v1/cv/states", "POST",
        body={"kind": "mqc", "receivers": 2, "theta0": math.pi / 4},
        expected_fields=["state"],
    ),
    ApiCase("STATE-003", "/api/v1/cv/states", "POST", body={"kind": "partial3", "r": 1.0}),
    ApiCase("STATE-004", "/api/v1/cv/states", "POST", body={"kind": "family", "n_modes": 1, "r": 0.5},
            expected_status=400),
    ApiCase("STATE-005", "/api/v1/cv/states", "POST", body={"kind": "mqc", "receivers": 1, "theta0": 0.7},
            expected_status=400),
    ApiCase("STATE-006", "/api/v1/cv/states", "POST", body={"kind": "teleporter"}, expected_status=422),
    ApiCase("STATE-007", "/api/v1/cv/states", "POST", body={"kind": "family", "n_modes": 3, "r": 400.0},
            expected_status=400),
    ApiCase(
        "CRIT-001", "/api/v1/cv/criteria", "POST", body={"state": FAMILY_PAYLOAD},
        expected_fields=["crit1", "crit2", "tan_pairs", "ppt_cuts", "genuine"],
    ),
    ApiCase(
        "CRIT-002", "/api/v1/cv/criteria/tan", "POST", body={"state": FAMILY_PAYLOAD, "i": 0, "j": 0},
        expected_status=400,
    ),
    ApiCase(
        "CRIT-003", "/api/v1/cv/criteria", "POST",
        body={"state": {**FAMILY_PAYLOAD, "convention": "hbar=1"}},
        expected_status=400,
    ),
    ApiCase(
        "BELL-001", "/api/v1/cv/bell/maximize", "POST", body={"parties": [2], "r_grid": [0.5]},
    ),
    ApiCase(
        "BELL-002", "/api/v1/cv/bell/maximize", "POST", body={"parties": [12], "r_grid": [0.5]},
        expected_status=400,
    ),
    ApiCase("BELL-003", "/api/v1/cv/bell/combination/3", expected_fields=["terms", "local_realism_bound"]),
    ApiCase("BELL-004", "/api/v1/cv/bell/combination/1", expected_status=400),
    ApiCase("QUBIT-001", "/api/v1/cv/qubit-selftest"),
]


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def send(client: TestClient, case: ApiCase):
    if case.method == "GET":
        return client.get(case.endpoint)
    return client.post(case.endpoint, json=case.body)


@pytest.mark.parametrize("case", CASES, ids=[c.test_id for c in CASES])
def test_endpoint_contract(client, case):
    response = send(client, case)
    assert response.status_code == case.expected_status, response.text
    data = response.json()
    for name in case.expected_fields:
        assert name in data


class TestResponses:
    """Values carried in successful responses"""

    def test_family_state_is_pure(self, client):
        data = client.post("/api/v1/cv/states", json={"kind": "family", "n_modes": 3, "r": 0.5}).json()
        assert data["pure"] is True
        assert data["symplectic_eigenvalues"] == pytest.approx([0.25] * 3, abs=1e-12)
        assert data["state"]["convention"] == "hbar=1/2"

    def test_mqc_endpoint_message(self, client):
        response = client.post(
            "/api/v1/cv/states", json={"kind": "mqc", "receivers": 2, "theta0": math.asin(1 / math.sqrt(3))}
        )
        assert response.status_code == 400
        assert "lower bound" in response.json()["detail"]

    def test_criteria_values(self, client):
        data = client.post("/api/v1/cv/criteria", json={"state": FAMILY_PAYLOAD}).json()
        assert data["crit1"]["value"] == pytest.approx(math.exp(-1) / 2, abs=1e-12)
        assert data["crit1"]["verdict"] == "rules-out-full-separability"
        assert data["genuine"]["witnessed"] is True

    def test_tan_value(self, client):
        data = client.post("/api/v1/cv/criteria/tan", json={"state": FAMILY_PAYLOAD, "i": 1, "j": 2}).json()
        assert data["modes"] == [1, 2]
        assert data["verdict"] == "rules-out-separability"

    def test_bell_two_parties(self, client):
        rows = client.post(
            "/api/v1/cv/bell/maximize", json={"parties": [2], "r_grid": [3.0, 0.0]}
        ).json()
        assert [row["r"] for row in rows] == [0.0, 3.0]
        assert rows[0]["b_star"] == pytest.approx(2.0, abs=1e-9)
        assert 2.18 <= rows[1]["b_star"] <= 2.20

    def test_combination_terms(self, client):
        data = client.get("/api/v1/cv/bell/combination/2").json()
        assert data["local_realism_bound"] == 2.0
        assert len(data["terms"]) == 4

    def test_qubit_selftest(self, client):
        checks = client.get("/api/v1/cv/qubit-selftest").json()
        assert len(checks) == 5
        assert all(check["passed"] for check in checks)


class TestHandlers:
    """Route handlers under /api/v1/cv"""

    def test_handlers_run_in_threadpool(self):
        routes = [r for r in app.routes if isinstance(r, APIRoute) and r.path.startswith("/api/v1/cv")]
        assert len(routes) == 7
        assert [r.path for r in routes if inspect.iscoroutinefunction(r.endpoint)] == ["/api/v1/cv/health"]
