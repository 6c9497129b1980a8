import numpy as np
import pytest

from optical_hqc.engine.optics_ops import ModelSpec


@pytest.fixture
def single_mode():
    """W = D(alpha) S(beta) on one mode, cutoff high enough for |alpha| <= 0.5"""
    return ModelSpec.single_mode(cutoff=20)


@pytest.fixture
def two_qubit():
    """Two-qubit model at a desk-scale cutoff"""
    return ModelSpec.two_qubit(cutoff=8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
