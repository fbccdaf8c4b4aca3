from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
import hypothesis.strategies as st

from tautverify.data import Repo

settings.register_profile(
    "exact",
    max_examples=100,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def repo() -> Repo:
    return Repo()


# small exact rationals keep the property tests fast while still exercising
# non-integer arithmetic
rationals = st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=12)
