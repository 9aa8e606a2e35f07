import random

import pytest
from hypothesis import strategies as st

from fanoforge.chow import BundleData
from fanoforge.lattice import SurfaceModel
from fanoforge.presets import ample_k_model, p2_model


@pytest.fixture
def p2():
    return p2_model()


@pytest.fixture
def k3a():
    """rho = 1, A^2 = 1, K = 3A (K_S^2 = 9)."""
    return ample_k_model(9)


def make_random_model(rng):
    if rng.random() < 0.5:
        return SurfaceModel("r1", 1, [[rng.randint(1, 6)]], [rng.randint(-5, 5)], [[1]])
    while True:
        a, b, c = rng.randint(1, 5), rng.randint(-4, 4), rng.randint(-6, 3)
        if a * c - b * b < 0:
            return SurfaceModel("r2", 2, [[a, b], [b, c]],
                                [rng.randint(-5, 5), rng.randint(-5, 5)], [[1, 0]])


def make_random_bundle(rng, model):
    c1 = model.divisor(*(rng.randint(-7, 7) for _ in range(model.rank)))
    return BundleData(model, c1, rng.randint(-15, 15))


@st.composite
def models(draw):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return make_random_model(random.Random(seed))


@st.composite
def models_and_bundles(draw):
    rng = random.Random(draw(st.integers(0, 2 ** 32 - 1)))
    model = make_random_model(rng)
    return model, make_random_bundle(rng, model)


small = st.integers(-6, 6)
