import os
from functools import lru_cache

import hypothesis
import pytest
from hypothesis import HealthCheck

hypothesis.settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile(
    "thorough", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PRESETS = ("square", "equilateral-triangle", "pentagon", "random-convex", "regular-64")


@lru_cache(maxsize=None)
def body_and_params(name):
    from convexdg.convex_shape import preset
    from convexdg.shape_params import params_body, shape_params

    body = preset(name)
    prm = shape_params(body)
    return body, prm, params_body(body, prm)


@pytest.fixture(scope="session")
def shapes():
    return body_and_params
