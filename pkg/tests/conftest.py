from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tubedomains.exact import DiffConfig, GaussianRational, LightConeVector, PointConfig

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 7))
nonzero_rationals = rationals.filter(lambda q: q != 0)
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(lambda z: not z.is_zero())
vectors = st.builds(LightConeVector, gaussians, gaussians)
real_vectors = st.builds(LightConeVector, rationals, rationals)


def diff_configs(min_size=1, max_size=4, elements=vectors):
    return st.lists(elements, min_size=min_size, max_size=max_size).map(lambda xs: DiffConfig(tuple(xs)))


def point_configs(min_size=2, max_size=5, elements=vectors):
    return st.lists(elements, min_size=min_size, max_size=max_size).map(lambda xs: PointConfig(tuple(xs)))


@pytest.fixture
def i():
    return GaussianRational(0, 1)
