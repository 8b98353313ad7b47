from __future__ import annotations

import numpy as np
import pytest

from tlab.model import Coupling, Damping, SystemConfig, Tau


def random_config(rng: np.random.Generator, tau: Tau | None = None,
                  damping: Damping | None = None,
                  coupling: Coupling | None = None) -> SystemConfig:
    ks = rng.uniform(0.3, 3.0, size=5)
    gamma = float(rng.uniform(0.3, 2.0) * rng.choice([-1.0, 1.0]))
    return SystemConfig(
        k1=float(ks[0]), k2=float(ks[1]), k3=float(ks[2]),
        k4=float(ks[3]), k5=float(ks[4]), gamma=gamma,
        tau=tau or rng.choice(list(Tau)),
        damping=damping or rng.choice(list(Damping)),
        coupling=coupling or rng.choice(list(Coupling)),
    )


def random_state(rng: np.random.Generator) -> np.ndarray:
    s = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    return s / np.linalg.norm(s)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
