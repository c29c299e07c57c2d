import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from dsscapacity import DssConfig

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile(
    "fast", max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "thorough",
    max_examples=400,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def example1() -> DssConfig:
    """(3, 2, 2) with α = β = (1, 2, 2); capacity 3."""
    return DssConfig.helper_only(3, 2, 2, [1, 2, 2], [1, 2, 2])


@pytest.fixture
def example2() -> DssConfig:
    """(3, 2, 2) with α = (5, 6, 7), β = (3, 4, 5); capacity 9."""
    return DssConfig.helper_only(3, 2, 2, [5, 6, 7], [3, 4, 5])


@pytest.fixture
def homogeneous() -> DssConfig:
    """α = 10, γ = 20 on (3, 2, 2); capacity 20."""
    return DssConfig.homogeneous(3, 2, 2, 10, 20)


@pytest.fixture
def thirds() -> DssConfig:
    """Example 1 with every value divided by 3."""
    third = Fraction(1, 3)
    return DssConfig.helper_only(
        3, 2, 2, [third, 2 * third, 2 * third], [third, 2 * third, 2 * third]
    )
