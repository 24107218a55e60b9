"""
Shared fixtures and random-state helpers
"""
import math

import numpy as np
import pytest

from app.core import gaussian as gc
from app.models.gaussian import GaussianState, SqueezeAxis


def random_orthogonal_op(rng: np.random.Generator, n: int, depth: int = 6):
    """Random passive network built from phase-free beam splitters."""
    op = gc.identity_op(n)
    if n < 2:
        return op
    for _ in range(depth):
        k, l = sorted(rng.choice(n, size=2, replace=False))
        op = gc.beam_splitter(n, int(k), int(l), rng.uniform(0, 2 * math.pi)) @ op
    return op


def random_state(
    rng: np.random.Generator, n: int, max_squeeze: float = 0.4, thermal: bool = True
) -> GaussianState:
    """Squeezed (optionally thermal) inputs mixed by a random beam-splitter network."""
    inputs = [
        gc.squeezed_vacuum(
            rng.uniform(0, max_squeeze),
            SqueezeAxis.POSITION if rng.random() < 0.5 else SqueezeAxis.MOMENTUM,
        )
        for _ in range(n)
    ]
    state = gc.tensor(inputs)
    if thermal:
        scale = np.repeat(rng.uniform(1.0, 2.0, size=n), 2)
        root = np.sqrt(scale)
        state = GaussianState(n, state.mean, root[:, None] * state.cov * root[None, :])
    state = gc.apply(random_orthogonal_op(rng, n), state)
    mean = rng.normal(scale=0.3, size=2 * n)
    return GaussianState(n, mean, state.cov)


def random_symplectic_op(rng: np.random.Generator, n: int, max_squeeze: float = 0.5):
    op = random_orthogonal_op(rng, n)
    for mode in range(n):
        op = gc.local_squeezer(n, mode, rng.uniform(-max_squeeze, max_squeeze)) @ op
    return random_orthogonal_op(rng, n) @ op


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
