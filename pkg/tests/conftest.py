"""Shared session-scoped fixtures.

Transform caches and rapidity curves are expensive (tens of seconds each),
so every test module shares one instance per configuration.
"""

from __future__ import annotations

import numpy as np
import pytest

from clickbound.bump import get_transforms
from clickbound.params import DimensionlessConfig
from clickbound.wightman import KGridSpec, build_curve, get_evaluator


CONFIG_10_10_1_0 = DimensionlessConfig(N=10, delta_phi=10, a=1)
CONFIG_10_1_1_0 = DimensionlessConfig(N=10, delta_phi=1, a=1)


@pytest.fixture(scope="session")
def grid():
    return KGridSpec()


@pytest.fixture(scope="session")
def transforms_dphi10():
    return get_transforms(1.0, 1.0, 10.0, 0.0)


@pytest.fixture(scope="session")
def transforms_dphi1():
    return get_transforms(1.0, 1.0, 1.0, 0.0)


@pytest.fixture(scope="session")
def evaluator_10_10_1_0(grid, transforms_dphi10):
    return get_evaluator(CONFIG_10_10_1_0, grid, transforms_dphi10)


@pytest.fixture(scope="session")
def curve_10_10_1_0(grid, transforms_dphi10):
    return build_curve(CONFIG_10_10_1_0, transforms_dphi10, grid,
                       eta_max=506.0)


@pytest.fixture(scope="session")
def curve_10_1_1_0(grid, transforms_dphi1):
    return build_curve(CONFIG_10_1_1_0, transforms_dphi1, grid,
                       eta_max=506.0)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260823)
