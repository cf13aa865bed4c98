"""Brute-force cross-checker for the exact engine.

Directions are primitive integer vectors (Farey enumeration), never floats,
so a positive answer from the oracle is unconditionally correct. The oracle
substitutes lam = x + i*y directly into the configuration with complex
multiplication; it does not use the half-plane normals of the engine.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import DiffConfig, GaussianRational, LightConeVector
from .tube import in_extended_tube

Direction = tuple[int, int]


@dataclass(frozen=True)
class OracleConfig:
    theta_steps: int = 64
    modulus_samples: int = 5

    def __post_init__(self):
        if self.theta_steps < 8:
            raise ValueError("theta_steps must be at least 8")


def farey(order: int) -> list[tuple[int, int]]:
    """Farey sequence F_order as (numerator, denominator) pairs, 0/1 .. 1/1."""
    a, b, c, d = 0, 1, 1, order
    out = [(a, b)]
    while c <= order:
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append((a, b))
    return out


def grid_directions(order: int) -> list[Direction]:
    """All primitive integer vectors with max(|x|, |y|) <= order, counterclockwise from (1, 0)."""
    first = [(q, p) for p, q in farey(order)]            # angles 0 .. pi/4
    octant = first + [(p, q) for q, p in reversed(first[:-1])]  # 0 .. pi/2
    quad = octant[:-1]
    out = []
    for x, y in quad:
        out.append((x, y))
    for x, y in quad:
        out.append((-y, x))
    for x, y in quad:
        out.append((-x, -y))
    for x, y in quad:
        out.append((y, -x))
    return out


@functools.lru_cache(maxsize=None)
def grid_for_steps(theta_steps: int) -> tuple[Direction, ...]:
    """Smallest Farey grid with at least theta_steps directions (grids are nested)."""
    order = 1
    while True:
        g = grid_directions(order)
        if len(g) >= theta_steps:
            return tuple(g)
        order += 1


def _integral(z: GaussianRational) -> tuple[int, int]:
    # positive multiple of z with integer parts; signs of imaginary parts are unchanged
    den = z.re.denominator * z.im.denominator
    return int(z.re * den), int(z.im * den)


def _im_product(a: tuple[int, int], b: tuple[int, int]) -> int:
    return a[0] * b[1] + a[1] * b[0]


def integral_config(cfg: DiffConfig) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    return [(_integral(d.u), _integral(d.v)) for d in cfg.diffs]


def satisfies(cfg, w: Direction) -> bool:
    """lam = x + i*y maps cfg into the forward tube (1/lam is a positive multiple of conj(lam))."""
    rows = cfg if isinstance(cfg, list) else integral_config(cfg)
    lam, lam_bar = (w[0], w[1]), (w[0], -w[1])
    for u, v in rows:
        if _im_product(lam, u) <= 0 or _im_product(lam_bar, v) <= 0:
            return False
    return True


@dataclass(frozen=True)
class OracleVerdict:
    found: bool
    direction: Direction | None
    scanned: int

    @property
    def verdict(self) -> str:
        return "member" if self.found else "not found at this resolution"


def oracle_extended_membership(cfg: DiffConfig, oc: OracleConfig = OracleConfig()) -> OracleVerdict:
    grid = grid_for_steps(oc.theta_steps)
    rows = integral_config(cfg)
    for w in grid:
        if satisfies(rows, w):
            return OracleVerdict(True, w, len(grid))
    return OracleVerdict(False, None, len(grid))


def r_independence(cfg: DiffConfig, w: Direction, oc: OracleConfig = OracleConfig()) -> bool:
    """lam = r*(x + i*y) must map cfg into the forward tube for every sampled r > 0."""
    moduli = [Fraction(1, 2 ** k) for k in range(oc.modulus_samples)] + \
             [Fraction(2 ** k) for k in range(1, oc.modulus_samples)]
    for r in moduli:
        lam = GaussianRational(r * w[0], r * w[1])
        inv = lam.inverse()
        if not all((lam * d.u).im > 0 and (inv * d.v).im > 0 for d in cfg.diffs):
            return False
    return True


def random_rational(rng: random.Random, span: int = 9, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_upper(rng: random.Random) -> GaussianRational:
    """Random Gaussian rational with strictly positive imaginary part."""
    return GaussianRational(random_rational(rng), Fraction(rng.randint(1, 9), rng.randint(1, 6)))


def off_cut_preimage(c: GaussianRational) -> LightConeVector:
    """Exact (u, v), both in the open upper half-plane, with u*v == c, for c off [0, inf).

    For Im c > 0 take u = t + c with t > 0, for Im c < 0 take u = -c - t; in
    both cases arg u lies between the admissible bounds and v = c/u is then
    in the upper half-plane too. For negative real c take u = i.
    """
    if c.on_cut():
        raise ValueError(f"{c} lies on the cut [0, inf)")
    if c.im == 0:
        u = GaussianRational(0, 1)
    else:
        t = abs(c.re) + abs(c.im)
        u = c + t if c.im > 0 else -c - t
    return LightConeVector(u, c / u)


@dataclass
class CutScanReport:
    samples: int
    seed: int
    cut_hits: list = field(default_factory=list)
    non_members: list = field(default_factory=list)
    targets: int = 0
    construction_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.cut_hits or self.non_members or self.construction_failures)

    def to_json(self) -> dict:
        return {"samples": self.samples, "seed": self.seed, "targets": self.targets,
                "cut_hits": len(self.cut_hits), "non_members": len(self.non_members),
                "construction_failures": len(self.construction_failures),
                "failures": [str(x) for x in self.cut_hits + self.non_members
                             + self.construction_failures]}


def oracle_cut_scan(samples: int, seed: int, targets: int | None = None) -> CutScanReport:
    rng = random.Random(seed)
    rep = CutScanReport(samples, seed)
    for _ in range(samples):
        vec = LightConeVector(random_upper(rng), random_upper(rng))
        cfg = DiffConfig((vec,))
        if not in_extended_tube(cfg).member:
            rep.non_members.append(vec)
        if (vec.u * vec.v).on_cut():
            rep.cut_hits.append(vec)
    n_targets = samples // 10 if targets is None else targets
    rep.targets = n_targets
    for _ in range(n_targets):
        c = GaussianRational(random_rational(rng), random_rational(rng))
        if c.on_cut():
            c = c - GaussianRational(abs(c.re) + 1, 0)
        vec = off_cut_preimage(c)
        if vec.u * vec.v != c or not in_extended_tube(DiffConfig((vec,))).member:
            rep.construction_failures.append(c)
    return rep
