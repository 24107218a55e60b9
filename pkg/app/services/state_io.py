"""
JSON persistence for Gaussian states

Format: {"convention": "hbar=1/2", "n_modes": N, "mean": [...], "cov": [[...]]}
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from app.core.exceptions import InvalidArgumentError, StateFormatError
from app.models.gaussian import CONVENTION, GaussianState

logger = logging.getLogger(__name__)


def state_to_dict(state: GaussianState) -> Dict[str, Any]:
    return {
        "convention": CONVENTION,
        "n_modes": state.n_modes,
        "mean": [float(v) for v in state.mean],
        "cov": [[float(v) for v in row] for row in state.cov],
    }


def state_from_dict(data: Dict[str, Any]) -> GaussianState:
    """Rebuild and re-validate a state from its JSON mirror."""
    if not isinstance(data, dict):
        raise StateFormatError("state document must be a JSON object")
    missing = {"convention", "n_modes", "mean", "cov"} - set(data)
    if missing:
        raise StateFormatError(f"state document is missing {sorted(missing)}")
    if data["convention"] != CONVENTION:
        raise StateFormatError(
            f"unsupported convention {data['convention']!r}, expected {CONVENTION!r}"
        )
    try:
        return GaussianState(data["n_modes"], data["mean"], data["cov"])
    except (InvalidArgumentError, TypeError, ValueError) as exc:
        raise StateFormatError(f"invalid state: {exc}") from exc


def dumps_state(state: GaussianState) -> str:
    try:
        return json.dumps(state_to_dict(state), allow_nan=False, indent=2)
    except ValueError as exc:
        raise StateFormatError(f"state is not serializable: {exc}") from exc


def write_state(state: GaussianState, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dumps_state(state) + "\n", encoding="utf-8")
    logger.info("Wrote %d-mode state to %s", state.n_modes, path)
    return path


def read_state(path: Union[str, Path]) -> GaussianState:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path}: not valid JSON ({exc})") from exc
    state = state_from_dict(data)
    logger.debug("Read %d-mode state from %s", state.n_modes, path)
    return state
