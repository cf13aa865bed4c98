"""Guess-and-verify holomorphic extension through convex hulls of tube bases.

A base lives in the imaginary-part plane (Im u_j, Im v_j) of one difference
and is the open cone spanned by its generators. Permuted forward tubes whose
difference map is a signed permutation (identity and full reversal) are
products of per-difference bases; the tube theorem then extends to the
convex hull of those bases. Other permutations are reported as skipped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import EmptyBase, NonAxisBase
from .exact import DiffConfig, GaussianRational, LightConeVector, PointConfig, to_diffs
from .permutations import Permutation
from .tube import (
    Direction,
    HalfPlaneNormal,
    MembershipCertificate,
    cross,
    dot,
    in_forward_tube,
    primitive,
    rot_ccw,
    rot_cw,
    solve_common_direction,
    sort_directions,
)
from .uniformity import pairwise_cut_violations

AXES = {(1, 0), (-1, 0), (0, 1), (0, -1)}


@dataclass(frozen=True)
class ConeBase:
    """Open convex cone: interior of the conic hull of the generators."""

    generators: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        gens = tuple((Fraction(x), Fraction(y)) for x, y in self.generators)
        if not gens:
            raise EmptyBase("a cone base needs generators")
        if any(x == 0 and y == 0 for x, y in gens):
            raise EmptyBase("zero generator")
        object.__setattr__(self, "generators", gens)
        self._shape()  # rejects bases with empty interior

    def directions(self) -> list[Direction]:
        return sort_directions(primitive(x, y) for x, y in self.generators)

    def _shape(self) -> tuple[str, tuple[Direction, ...]]:
        """("pointed", (cw, ccw)), ("halfplane", (inward normal,)) or ("plane", ())."""
        dirs = self.directions()
        k = len(dirs)
        if k < 2:
            raise EmptyBase("a single ray has empty interior")
        big = []
        straight = []
        for i in range(k):
            a, b = dirs[i], dirs[(i + 1) % k]
            c = cross(a, b)
            if c < 0:
                big.append(i)
            elif c == 0:
                straight.append(i)
        if big:
            i = big[0]
            return "pointed", (dirs[(i + 1) % k], dirs[i])
        if len(straight) >= 2:
            raise EmptyBase("generators span only a line")
        if straight:
            i = straight[0]
            a = dirs[i]
            other = dirs[(i + 2) % k]
            n = rot_ccw(a) if dot(rot_ccw(a), other) > 0 else rot_cw(a)
            return "halfplane", (n,)
        return "plane", ()

    @property
    def kind(self) -> str:
        return self._shape()[0]

    @property
    def convex(self) -> bool:
        return True

    def inward_normals(self) -> tuple[Direction, ...]:
        kind, data = self._shape()
        if kind == "pointed":
            b, a = data
            return (rot_ccw(b), rot_cw(a))
        return data

    def contains(self, y: Sequence) -> bool:
        return all(n[0] * y[0] + n[1] * y[1] > 0 for n in self.inward_normals())

    def canonical(self) -> tuple:
        kind, data = self._shape()
        return kind, data

    def __eq__(self, other):
        return isinstance(other, ConeBase) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def negated(self) -> ConeBase:
        return ConeBase(tuple((-x, -y) for x, y in self.generators))

    def to_json(self) -> dict:
        kind, data = self._shape()
        return {"kind": kind, "extreme_or_normal": [list(d) for d in data],
                "generators": [[f"{x.numerator}/{x.denominator}", f"{y.numerator}/{y.denominator}"]
                               for x, y in self.generators]}


def quadrant(su: int, sv: int) -> ConeBase:
    return ConeBase(((su, 0), (0, sv)))


FORWARD_CONE = quadrant(1, 1)
BACKWARD_CONE = quadrant(-1, -1)


def hull(bases: Sequence[ConeBase]) -> ConeBase:
    """Convex hull of a union of open cones: interior of the cone over all generators."""
    if not bases:
        raise EmptyBase("nothing to hull")
    gens: list = []
    for b in bases:
        gens.extend(b.generators)
    # keep one generator per direction so repeated hulls stay small
    seen = {}
    for g in gens:
        seen.setdefault(primitive(*g), g)
    return ConeBase(tuple(seen[d] for d in sort_directions(seen)))


def difference_map(sigma: Permutation) -> list[list[int]]:
    """Rows express the sigma-ordered differences in the original consecutive differences."""
    m = sigma.m
    rows = []
    for i in range(m - 1):
        a, b = sigma(i), sigma(i + 1)
        row = [0] * (m - 1)
        if a < b:
            for j in range(a, b):
                row[j] = 1
        else:
            for j in range(b, a):
                row[j] = -1
        rows.append(row)
    return rows


def signed_permutation(rows: list[list[int]]) -> list[tuple[int, int]] | None:
    """For each row, (column, sign) if the map is a signed permutation, else None."""
    out = []
    for row in rows:
        nz = [(j, c) for j, c in enumerate(row) if c != 0]
        if len(nz) != 1:
            return None
        out.append(nz[0])
    return out


@dataclass(frozen=True)
class ExtensionResult:
    bases: tuple[ConeBase, ...]
    accepted: tuple[Permutation, ...]
    skipped: tuple[Permutation, ...]

    @property
    def over_extension(self) -> bool:
        """Some hull contains a line: the tube overshoots and must be cut back."""
        return any(b.kind != "pointed" for b in self.bases)

    def to_json(self) -> dict:
        return {"bases": [b.to_json() for b in self.bases],
                "accepted_permutations": [p.one_based() for p in self.accepted],
                "skipped_permutations": [p.one_based() for p in self.skipped],
                "over_extension": self.over_extension,
                "note": ("over-extension; must be cut back by cut-avoidance constraint"
                         if self.over_extension else "")}


def convex_tube_extension(bases: Sequence, permuted_copies: Sequence[Permutation] | None = None) -> ExtensionResult:
    per_index: list[list[ConeBase]] = []
    for entry in bases:
        group = [entry] if isinstance(entry, ConeBase) else list(entry)
        if not group:
            raise EmptyBase("every difference index needs a base")
        per_index.append(group)
    n = len(per_index)
    m = n + 1
    copies = list(permuted_copies) if permuted_copies else [Permutation.identity(m)]
    contributions: list[list[ConeBase]] = [[] for _ in range(n)]
    accepted, skipped = [], []
    for sigma in copies:
        if sigma.m != m:
            raise ValueError(f"permutation {sigma} does not act on {m} points")
        sp = signed_permutation(difference_map(sigma))
        if sp is None:
            skipped.append(sigma)
            continue
        accepted.append(sigma)
        # sigma-difference i is sign * zeta_j; requiring Im(it) in B_i puts Im zeta_j in sign * B_i
        for i, (j, sign) in enumerate(sp):
            for b in per_index[i]:
                contributions[j].append(b if sign > 0 else b.negated())
    return ExtensionResult(tuple(hull(c) for c in contributions), tuple(accepted), tuple(skipped))


# -- verification -----------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionVerdict:
    member: bool
    certificate: MembershipCertificate | None
    cut_back_applied: bool
    cut_violations: tuple[tuple[int, int], ...] = ()

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "cut_back_applied": self.cut_back_applied,
               "cut_violations": [f"C({i},{k})" for i, k in self.cut_violations]}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def extension_conditions(cfg: DiffConfig, ext: ExtensionResult) -> list[HalfPlaneNormal]:
    conds = []
    for j, (d, base) in enumerate(zip(cfg.diffs, ext.bases)):
        for n in base.inward_normals():
            if n not in AXES:
                raise NonAxisBase(f"base {j} has non-axis normal {n}; its test depends on |lambda|")
            if n[0] != 0:
                nx, ny, kind = d.u.im, d.u.re, "U"
            else:
                nx, ny, kind = d.v.im, -d.v.re, "V"
            sign = n[0] + n[1]
            conds.append(HalfPlaneNormal(sign * nx, sign * ny, kind if sign > 0 else "-" + kind, j))
    return conds


def verify_extension(candidate: PointConfig, ext: ExtensionResult) -> ExtensionVerdict:
    cfg = to_diffs(candidate)
    if len(cfg.diffs) != len(ext.bases):
        raise ValueError("candidate arity does not match the extended bases")
    cut_back = ext.over_extension
    if cut_back:
        bad = tuple(pairwise_cut_violations(candidate))
        if bad:
            return ExtensionVerdict(False, None, True, bad)
    conds = extension_conditions(cfg, ext)
    for h in conds:
        if h.is_zero():
            return ExtensionVerdict(False, MembershipCertificate(False, "extension", degenerate_condition=h.tag),
                                    cut_back)
    if not conds:
        return ExtensionVerdict(True, MembershipCertificate(True, "extension", witness=(1, 0)), cut_back)
    sol = solve_common_direction(conds)
    if sol.witness is not None:
        return ExtensionVerdict(True, MembershipCertificate(True, "extension", witness=sol.witness), cut_back)
    return ExtensionVerdict(False, MembershipCertificate(False, "extension", infeasible_core=sol.core), cut_back)


# -- proposals --------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainDescriptor:
    """Union of sigma-permuted forward tubes (no Lorentz orbit taken)."""

    m: int
    permutations: tuple[Permutation, ...]

    @classmethod
    def primitive(cls, m: int, with_reversal: bool = True) -> DomainDescriptor:
        perms = [Permutation.identity(m)]
        if with_reversal and m > 1:
            perms.append(Permutation.reversal(m))
        return cls(m, tuple(perms))

    def contains(self, cfg: PointConfig) -> bool:
        return any(in_forward_tube(to_diffs(s.apply(cfg))).member for s in self.permutations)


@dataclass
class Proposal:
    candidate: PointConfig | None
    draws_used: int
    rejections: list = field(default_factory=list)

    def to_json(self) -> dict:
        from .io import point_config_to_json
        return {"candidate": point_config_to_json(self.candidate) if self.candidate else None,
                "draws_used": self.draws_used,
                "rejections": self.rejections}


def _near_boundary_component(rng: random.Random) -> GaussianRational:
    re = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
    im = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
    return GaussianRational(re, im)


def _draw(rng: random.Random, m: int) -> PointConfig:
    pts = [LightConeVector(_near_boundary_component(rng), _near_boundary_component(rng)) for _ in range(m)]
    return PointConfig(tuple(pts))


def proposal_stream(domain: DomainDescriptor, seed: int, draws: int = 256):
    """Deterministic stream of (draw index, candidate or None, rejection record or None)."""
    rng = random.Random(seed)
    for t in range(draws):
        cfg = _draw(rng, domain.m)
        if domain.contains(cfg):
            yield t, None, {"draw": t, "reason": "member"}
            continue
        bad = pairwise_cut_violations(cfg)
        if bad:
            yield t, None, {"draw": t, "reason": "cut", "strata": [f"C({i},{k})" for i, k in bad]}
            continue
        yield t, cfg, None


def propose_extension_point(domain: DomainDescriptor, seed: int, draws: int = 256) -> Proposal:
    rejections = []
    for t, cfg, rej in proposal_stream(domain, seed, draws):
        if cfg is not None:
            return Proposal(cfg, t + 1, rejections)
        rejections.append(rej)
    return Proposal(None, draws, rejections)


def primitive_extension(m: int, with_reversal: bool = True) -> ExtensionResult:
    """Hull of the forward cone over the identity (and optionally reversed) copy."""
    dom = DomainDescriptor.primitive(m, with_reversal)
    return convex_tube_extension([FORWARD_CONE] * (m - 1), dom.permutations)
