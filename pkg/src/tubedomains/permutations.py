"""Unions of permuted extended tubes.

A permutation relabels the points before differences are formed: the i-th
point of sigma*cfg is points[sigma[i]]. Differences are recomputed for every
sigma.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cells import SemiAlgebraicSet, as_set, interior_cell_formula
from .errors import ArityGuard, NotRealConfig, NotTotallySpacelike, ProbeOutsideFormula
from .exact import LightConeVector, PointConfig, minkowski_square, to_diffs
from .tube import MembershipCertificate, in_extended_tube

DEFAULT_MAX_M = 8


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection on {0..m-1}; images[i] is the label placed at position i."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(m)))

    @classmethod
    def reversal(cls, m: int) -> Permutation:
        return cls(tuple(reversed(range(m))))

    @classmethod
    def from_one_based(cls, seq) -> Permutation:
        return cls(tuple(int(k) - 1 for k in seq))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: Permutation) -> Permutation:
        """(self o other)(i) = self(other(i))."""
        return Permutation(tuple(self.images[k] for k in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, k in enumerate(self.images):
            inv[k] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(len(self.images)))

    def apply(self, cfg: PointConfig) -> PointConfig:
        return cfg.permuted(self.images)

    def one_based(self) -> list[int]:
        return [k + 1 for k in self.images]

    def __str__(self):
        return "[" + ",".join(str(k) for k in self.one_based()) + "]"


def all_permutations(m: int):
    """P_m in lexicographic order."""
    for p in itertools.permutations(range(m)):
        yield Permutation(p)


@dataclass(frozen=True)
class UnionVerdict:
    member: bool
    admitting_permutations: tuple[Permutation, ...]
    per_permutation_certificates: dict = field(hash=False, compare=False)

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "admitting_permutations": [p.one_based() for p in self.admitting_permutations],
                "certificates": [{"permutation": p.one_based(), **c.to_json()}
                                 for p, c in sorted(self.per_permutation_certificates.items())]}


def _guard(m: int, max_m: int):
    if m < 2:
        raise ArityGuard(f"union membership needs m >= 2, got {m}")
    if m > max_m:
        raise ArityGuard(f"m = {m} exceeds the factorial guard {max_m}")


def union_membership(cfg: PointConfig, mode: str = "first", max_m: int = DEFAULT_MAX_M) -> UnionVerdict:
    if mode not in ("first", "all"):
        raise ValueError("mode must be 'first' or 'all'")
    _guard(cfg.m, max_m)
    certs: dict[Permutation, MembershipCertificate] = {}
    admitting = []
    for sigma in all_permutations(cfg.m):
        cert = in_extended_tube(to_diffs(sigma.apply(cfg)))
        certs[sigma] = cert
        if cert.member:
            admitting.append(sigma)
            if mode == "first":
                break
    return UnionVerdict(bool(admitting), tuple(admitting), certs)


def primitive_member(cfg: PointConfig) -> bool:
    return in_extended_tube(to_diffs(cfg)).member


# -- locality -------------------------------------------------------------------------

def spacelike_pairs_violation(cfg: PointConfig):
    pts = cfg.points
    for i in range(len(pts)):
        for k in range(i + 1, len(pts)):
            sq = minkowski_square(pts[i] - pts[k])
            if not (sq.im == 0 and sq.re < 0):
                return (i, k), sq
    return None


@dataclass(frozen=True)
class LocalityReport:
    member: bool
    admitting_permutations: tuple[Permutation, ...]

    def to_json(self) -> dict:
        return {"verdict": "member" if self.member else "non-member",
                "admitting_permutations": [p.one_based() for p in self.admitting_permutations]}


def spacelike_locality_check(cfg: PointConfig, max_m: int = DEFAULT_MAX_M) -> LocalityReport:
    """Union membership of a real, totally space-like configuration (expected: always member)."""
    if not cfg.is_real():
        raise NotRealConfig("locality check takes a real configuration")
    bad = spacelike_pairs_violation(cfg)
    if bad is not None:
        raise NotTotallySpacelike(*bad)
    uv = union_membership(cfg, "all", max_m)
    return LocalityReport(uv.member, uv.admitting_permutations)


def random_spacelike_config(rng: random.Random, m: int) -> PointConfig:
    """Real points with u strictly decreasing along one ordering and v increasing, then shuffled."""
    us = sorted({Fraction(rng.randint(-60, 60), rng.randint(1, 5)) for _ in range(4 * m)})
    vs = sorted({Fraction(rng.randint(-60, 60), rng.randint(1, 5)) for _ in range(4 * m)})
    while len(us) < m or len(vs) < m:
        us.append(us[-1] + 1 if us else Fraction(0))
        vs.append(vs[-1] + 1 if vs else Fraction(0))
    us = sorted(rng.sample(us, m))
    vs = sorted(rng.sample(vs, m), reverse=True)
    pts = [LightConeVector(u, v) for u, v in zip(us, vs)]
    rng.shuffle(pts)
    return PointConfig(tuple(pts))


@dataclass
class LocalitySweep:
    samples: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def locality_sweep(samples: int, seed: int, m_max: int = 5) -> LocalitySweep:
    rng = random.Random(seed)
    rep = LocalitySweep(samples)
    for s in range(samples):
        cfg = random_spacelike_config(rng, 2 + s % (m_max - 1))
        if not spacelike_locality_check(cfg).member:
            rep.failures.append(cfg)
    return rep


# -- coverage queries -----------------------------------------------------------------

@dataclass(frozen=True)
class CoverageEntry:
    probe: int
    satisfying: tuple[Permutation, ...]

    @property
    def covered(self) -> bool:
        return bool(self.satisfying)


@dataclass(frozen=True)
class CoverageReport:
    m: int
    entries: tuple[CoverageEntry, ...]

    @property
    def all_covered(self) -> bool:
        return all(e.covered for e in self.entries)

    def to_json(self) -> dict:
        return {"m": self.m, "all_covered": self.all_covered,
                "probes": [{"probe": e.probe, "covered": e.covered,
                            "satisfying_disjuncts": [p.one_based() for p in e.satisfying]}
                           for e in self.entries]}


def union_coverage_query(formula, m: int, probes: list[PointConfig],
                         max_m: int = DEFAULT_MAX_M) -> CoverageReport:
    """Evaluate the disjunction over sigma of the permuted interior formulas at each probe.

    formula is stated in the difference coordinates of the probe in its given
    order; each probe must satisfy it. The per-probe list of satisfying sigma
    is a truth assignment for the Boolean structure of the union.
    """
    _guard(m, max_m)
    region: SemiAlgebraicSet = as_set(formula)
    interior = interior_cell_formula(m)
    entries = []
    for idx, probe in enumerate(probes):
        if probe.m != m:
            raise ProbeOutsideFormula(f"probe {idx} has {probe.m} points, expected {m}")
        if not region.satisfied_by(to_diffs(probe)):
            raise ProbeOutsideFormula(f"probe {idx} does not satisfy the formula")
        sat = tuple(s for s in all_permutations(m)
                    if interior.satisfied_by(to_diffs(s.apply(probe))))
        entries.append(CoverageEntry(idx, sat))
    return CoverageReport(m, tuple(entries))
