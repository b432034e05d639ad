from __future__ import annotations

import pytest

from services.potential_service import PotentialParams
from services.profile_service import ProfileParams, build_table


@pytest.fixture(scope="session")
def params() -> ProfileParams:
    return ProfileParams(a=1.0, b=2.0)


@pytest.fixture(scope="session")
def potential() -> PotentialParams:
    return PotentialParams(a=1.0, b=2.0)


@pytest.fixture(scope="session")
def table(params):
    """預設 a=1, b=2, Z_max=10, 4001 節點，整個測試階段共用"""
    return build_table(params, z_max=10.0, nodes=4001)
