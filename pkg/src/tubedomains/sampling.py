"""Seeded random generators for property sweeps (small-height Gaussian rationals)."""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import DiffConfig, GaussianRational, LightConeVector, PointConfig, diffs_to_points, lorentz_scale
from .oracle import random_rational, random_upper
from .permutations import Permutation


def random_gaussian(rng: random.Random) -> GaussianRational:
    return GaussianRational(random_rational(rng), random_rational(rng))


def random_nonzero_gaussian(rng: random.Random) -> GaussianRational:
    while True:
        z = random_gaussian(rng)
        if not z.is_zero():
            return z


def random_diff_config(rng: random.Random, k: int) -> DiffConfig:
    return DiffConfig(tuple(LightConeVector(random_gaussian(rng), random_gaussian(rng)) for _ in range(k)))


def random_real_diff_config(rng: random.Random, k: int) -> DiffConfig:
    return DiffConfig(tuple(LightConeVector(random_rational(rng), random_rational(rng)) for _ in range(k)))


def random_extended_member(rng: random.Random, k: int) -> DiffConfig:
    """Forward-tube configuration moved by a random complex Lorentz parameter."""
    fwd = DiffConfig(tuple(LightConeVector(random_upper(rng), random_upper(rng)) for _ in range(k)))
    return lorentz_scale(fwd, random_nonzero_gaussian(rng))


def random_mixed_diff_config(rng: random.Random, k: int) -> DiffConfig:
    """Half uniform, half orbit-generated members, so both verdicts are exercised."""
    return random_extended_member(rng, k) if rng.random() < 0.5 else random_diff_config(rng, k)


def random_union_member(rng: random.Random, m: int) -> PointConfig:
    pts = diffs_to_points(random_extended_member(rng, m - 1))
    images = list(range(m))
    rng.shuffle(images)
    return Permutation(tuple(images)).apply(pts)


def random_positive_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 40), rng.randint(1, 40))
