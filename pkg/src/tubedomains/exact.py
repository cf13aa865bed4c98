"""Exact Gaussian-rational scalars, light-cone vectors and the s = 2 complex Lorentz action.

Light-cone coordinates: u = z0 + z1, v = z0 - z1, so the Minkowski square
z0^2 - z1^2 is the product u*v. The proper complex Lorentz group acts as
(u, v) -> (lam*u, v/lam) for nonzero complex lam.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import TooFewPoints, ZeroLambda

RationalLike = Union[int, Fraction]


class GaussianRational:
    """Complex number re + i*im with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, tuple) and len(x) == 2:
            return cls(x[0], x[1])
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def on_cut(self) -> bool:
        """True iff the value lies on the nonnegative real axis [0, inf)."""
        return self.im == 0 and self.re >= 0

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


@dataclass(frozen=True)
class LightConeVector:
    u: GaussianRational
    v: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "u", GaussianRational.coerce(self.u))
        object.__setattr__(self, "v", GaussianRational.coerce(self.v))

    @classmethod
    def from_cartesian(cls, z0, z1) -> LightConeVector:
        z0, z1 = GaussianRational.coerce(z0), GaussianRational.coerce(z1)
        return cls(z0 + z1, z0 - z1)

    def to_cartesian(self) -> tuple[GaussianRational, GaussianRational]:
        half = Fraction(1, 2)
        return (self.u + self.v) * half, (self.u - self.v) * half

    def __add__(self, other: LightConeVector) -> LightConeVector:
        return LightConeVector(self.u + other.u, self.v + other.v)

    def __sub__(self, other: LightConeVector) -> LightConeVector:
        return LightConeVector(self.u - other.u, self.v - other.v)

    def __neg__(self) -> LightConeVector:
        return LightConeVector(-self.u, -self.v)

    def is_real(self) -> bool:
        return self.u.im == 0 and self.v.im == 0

    def __repr__(self):
        return f"({self.u}, {self.v})"


@dataclass(frozen=True)
class PointConfig:
    points: tuple[LightConeVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) < 1:
            raise TooFewPoints("a point configuration needs m >= 1 points")

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        """Number of complex coordinates, n = s*m with s = 2."""
        return 2 * len(self.points)

    def permuted(self, images: Iterable[int]) -> PointConfig:
        """Relabel: the i-th point of the result is points[images[i]]."""
        return PointConfig(tuple(self.points[k] for k in images))

    def shifted(self, a: LightConeVector) -> PointConfig:
        return PointConfig(tuple(p + a for p in self.points))

    def is_real(self) -> bool:
        return all(p.is_real() for p in self.points)


@dataclass(frozen=True)
class DiffConfig:
    diffs: tuple[LightConeVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "diffs", tuple(self.diffs))

    def __len__(self):
        return len(self.diffs)

    def __iter__(self):
        return iter(self.diffs)

    def __getitem__(self, j):
        return self.diffs[j]

    @property
    def m(self) -> int:
        return len(self.diffs) + 1

    def is_real(self) -> bool:
        return all(d.is_real() for d in self.diffs)


def to_diffs(cfg: PointConfig) -> DiffConfig:
    pts = cfg.points
    if len(pts) < 2:
        raise TooFewPoints(f"need m >= 2 points to form differences, got {len(pts)}")
    return DiffConfig(tuple(pts[j] - pts[j + 1] for j in range(len(pts) - 1)))


def diffs_to_points(cfg: DiffConfig) -> PointConfig:
    """Canonical preimage of to_diffs: the last point is placed at the origin."""
    z = LightConeVector(ZERO, ZERO)
    pts = [z]
    for d in reversed(cfg.diffs):
        z = z + d
        pts.append(z)
    return PointConfig(tuple(reversed(pts)))


def pair_difference(cfg: DiffConfig, i: int, k: int) -> LightConeVector:
    """z_i - z_k for i < k, as the sum of the consecutive differences i..k-1."""
    acc = LightConeVector(ZERO, ZERO)
    for j in range(i, k):
        acc = acc + cfg.diffs[j]
    return acc


def minkowski_square(vec: LightConeVector) -> GaussianRational:
    return vec.u * vec.v


def lorentz_scale(cfg: DiffConfig, lam) -> DiffConfig:
    lam = GaussianRational.coerce(lam)
    if lam.is_zero():
        raise ZeroLambda("lambda must be nonzero")
    inv = lam.inverse()
    return DiffConfig(tuple(LightConeVector(lam * d.u, inv * d.v) for d in cfg.diffs))
