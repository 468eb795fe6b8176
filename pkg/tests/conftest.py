import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from ptmagnomech.params import NormalizedParams

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fixtures():
    return json.loads((DATA / "fixtures.json").read_text())


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


def random_params(rng, **fixed) -> NormalizedParams:
    values = dict(
        delta_m=rng.uniform(-2, 2),
        delta_b=rng.uniform(-2, 2),
        kappa_a=rng.uniform(0, 0.5),
        kappa_m=rng.uniform(0, 0.5),
        gamma_b=rng.uniform(0, 0.1),
        g_ma=rng.uniform(0, 2),
        g_mb_eff=rng.uniform(0, 2),
        gamma_nh=rng.uniform(0, 2),
        theta=rng.uniform(0, 2 * math.pi),
        omega_b_ratio=rng.uniform(0.1, 3),
    )
    values.update(fixed)
    return NormalizedParams(**values)


unit_disk = st.builds(
    lambda r, phi: complex(r * math.cos(phi), r * math.sin(phi)),
    st.floats(0, 1),
    st.floats(0, 2 * math.pi),
)

params_strategy = st.builds(
    NormalizedParams,
    delta_m=st.floats(-2, 2),
    delta_b=st.floats(-2, 2),
    kappa_a=st.floats(0, 0.5),
    kappa_m=st.floats(0, 0.5),
    gamma_b=st.floats(0, 0.1),
    g_ma=st.floats(0, 2),
    g_mb_eff=st.floats(0, 2),
    gamma_nh=st.floats(0, 2),
    theta=st.floats(0, 6.28),
    omega_b_ratio=st.floats(0.1, 3),
)
