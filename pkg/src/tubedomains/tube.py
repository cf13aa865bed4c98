"""Exact membership in the forward tube and the extended tube for s = 2.

With lam = r*(x + i*y), Im(lam*u_j) = r*(x*Im u_j + y*Re u_j) and
Im(v_j/lam) = (x*Im v_j - y*Re v_j)/(r*(x^2 + y^2)). Only the direction
w = (x, y) decides the signs, so membership in the extended tube is the
question whether 2(m-1) open half-planes through the origin share a point.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyConfig, NotRealConfig, WrongArity
from .exact import DiffConfig, GaussianRational, LightConeVector

Direction = tuple[int, int]


@dataclass(frozen=True)
class HalfPlaneNormal:
    """Condition nx*x + ny*y > 0 on the direction w = (x, y).

    kind is "U" or "V" for the tube conditions; holo-extend also uses the
    negated kinds "-U" and "-V".
    """

    nx: Fraction
    ny: Fraction
    kind: str
    index: int

    @property
    def tag(self) -> str:
        return f"{self.kind}{self.index}"

    def is_zero(self) -> bool:
        return self.nx == 0 and self.ny == 0

    def value_at(self, w: Sequence) -> Fraction:
        return self.nx * w[0] + self.ny * w[1]

    def direction(self) -> Direction:
        return primitive(self.nx, self.ny)

    def to_json(self) -> dict:
        return {"source": self.tag, "kind": self.kind, "index": self.index,
                "normal": [fmt_q(self.nx), fmt_q(self.ny)]}


def fmt_q(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def u_normal(u: GaussianRational, j: int) -> HalfPlaneNormal:
    return HalfPlaneNormal(u.im, u.re, "U", j)


def v_normal(v: GaussianRational, j: int) -> HalfPlaneNormal:
    return HalfPlaneNormal(v.im, -v.re, "V", j)


def half_plane_normals(cfg: DiffConfig) -> list[HalfPlaneNormal]:
    """Normals in source order U0, V0, U1, V1, ..."""
    out = []
    for j, d in enumerate(cfg.diffs):
        out.append(u_normal(d.u, j))
        out.append(v_normal(d.v, j))
    return out


# -- exact angular machinery on integer directions ---------------------------

def primitive(x, y) -> Direction:
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    x, y = Fraction(x), Fraction(y)
    den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
    a, b = int(x * den), int(y * den)
    g = math.gcd(a, b)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return a // g, b // g


def cross(a: Direction, b: Direction) -> int:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Direction, b: Direction) -> int:
    return a[0] * b[0] + a[1] * b[1]


def _half(a: Direction) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1


def _angle_cmp(a: Direction, b: Direction) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = functools.cmp_to_key(_angle_cmp)


def sort_directions(dirs) -> list[Direction]:
    """Distinct primitive directions in counterclockwise order starting at angle 0."""
    return sorted(set(dirs), key=angle_key)


def rot_ccw(a: Direction) -> Direction:
    return (-a[1], a[0])


def rot_cw(a: Direction) -> Direction:
    return (a[1], -a[0])


def reduce_direction(a: Sequence[int]) -> Direction:
    g = math.gcd(a[0], a[1])
    return a[0] // g, a[1] // g


@dataclass(frozen=True)
class DirectionSolution:
    """Outcome of the common-direction problem for a set of nonzero normals."""

    witness: Direction | None
    core: tuple[HalfPlaneNormal, ...] | None
    arc: tuple[Direction, Direction] | None = None  # cw-most and ccw-most normal directions


def solve_common_direction(normals: Sequence[HalfPlaneNormal]) -> DirectionSolution:
    """Find w with n.w > 0 for every normal, or an infeasible subset of size <= 3.

    All normals must be nonzero. Witness rule: when the normal directions span
    the closed arc from b (clockwise end) to a (counterclockwise end), the
    admissible directions form the open arc between rot_cw(a) and rot_ccw(b);
    the witness is the mediant rot_cw(a) + rot_ccw(b) reduced to lowest terms.
    A single direction is its own witness.
    """
    rep: dict[Direction, HalfPlaneNormal] = {}
    for h in normals:
        d = h.direction()
        if d not in rep:
            rep[d] = h
    dirs = sort_directions(rep)
    if not dirs:
        raise EmptyConfig("no conditions")
    if len(dirs) == 1:
        return DirectionSolution(dirs[0], None, (dirs[0], dirs[0]))

    k = len(dirs)
    gap_start = None
    for i in range(k):
        a, b = dirs[i], dirs[(i + 1) % k]
        c = cross(a, b)
        if c < 0:
            gap_start = i
            break
        if c == 0:
            # consecutive distinct directions with zero cross are antipodal:
            # a gap of exactly pi, so no open half-plane contains them all
            return DirectionSolution(None, (rep[a], rep[b]))
    if gap_start is not None:
        a = dirs[gap_start]               # ccw-most normal
        b = dirs[(gap_start + 1) % k]     # cw-most normal
        r1, r2 = rot_cw(a), rot_ccw(b)
        w = reduce_direction((r1[0] + r2[0], r1[1] + r2[1]))
        return DirectionSolution(w, None, (b, a))

    # every gap is below pi: the normals positively span the plane
    return DirectionSolution(None, _three_core(dirs, rep))


def _three_core(dirs: list[Direction], rep) -> tuple[HalfPlaneNormal, ...]:
    a = dirs[0]
    anti = (-a[0], -a[1])
    if anti in rep:
        return (rep[a], rep[anti])
    upper = [d for d in dirs[1:] if cross(a, d) > 0]
    lower = [d for d in dirs[1:] if cross(a, d) < 0]
    # last direction strictly inside (a, a+pi) and first inside (a+pi, a+2pi)
    b = upper[-1]
    c = lower[0]
    return (rep[a], rep[b], rep[c])


# -- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    domain: str  # "forward" or "extended"
    witness: Direction | None = None
    infeasible_core: tuple[HalfPlaneNormal, ...] | None = None
    degenerate_condition: str | None = None

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "domain": self.domain}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.infeasible_core is not None:
            out["infeasible_core"] = [h.to_json() for h in self.infeasible_core]
        if self.degenerate_condition is not None:
            out["degenerate_condition"] = self.degenerate_condition
        return out


def _check_nonempty(cfg: DiffConfig):
    if len(cfg.diffs) == 0:
        raise EmptyConfig("configuration has no difference vectors")


def in_forward_tube(cfg: DiffConfig) -> MembershipCertificate:
    _check_nonempty(cfg)
    for h in half_plane_normals(cfg):
        # at w = (1, 0) the condition value is nx = Im u_j or Im v_j
        if h.nx <= 0:
            return MembershipCertificate(False, "forward", infeasible_core=(h,))
    return MembershipCertificate(True, "forward", witness=(1, 0))


def in_extended_tube(cfg: DiffConfig) -> MembershipCertificate:
    _check_nonempty(cfg)
    normals = half_plane_normals(cfg)
    for h in normals:
        if h.is_zero():
            return MembershipCertificate(False, "extended", degenerate_condition=h.tag)
    sol = solve_common_direction(normals)
    if sol.witness is not None:
        return MembershipCertificate(True, "extended", witness=sol.witness)
    return MembershipCertificate(False, "extended", infeasible_core=sol.core)


def witness_lambda(w: Direction, r: Fraction = Fraction(1)) -> GaussianRational:
    """A complex Lorentz parameter with direction w and modulus factor r > 0."""
    return GaussianRational(r * w[0], r * w[1])


def is_jost_point(cfg: DiffConfig) -> tuple[bool, MembershipCertificate]:
    """s = 2 Jost criterion on a real configuration.

    True iff all u_j have one strict sign and all v_j the opposite strict sign.
    """
    _check_nonempty(cfg)
    if not cfg.is_real():
        raise NotRealConfig("Jost points are real; imaginary parts must vanish")
    us = [d.u.re for d in cfg.diffs]
    vs = [d.v.re for d in cfg.diffs]
    jost = (all(x > 0 for x in us) and all(x < 0 for x in vs)) or \
           (all(x < 0 for x in us) and all(x > 0 for x in vs))
    return jost, in_extended_tube(cfg)


def two_point_invariant_image(cfg: DiffConfig) -> tuple[GaussianRational, bool]:
    """Return (u*v, cut_flag) for a single difference; cut_flag marks u*v in [0, inf)."""
    if len(cfg.diffs) != 1:
        raise WrongArity(f"expected one difference vector, got {len(cfg.diffs)}")
    d = cfg.diffs[0]
    c = d.u * d.v
    return c, c.on_cut()


# -- independent certificate checking -----------------------------------------

def core_unsatisfiable(core: Sequence[Sequence]) -> bool:
    """Exhaustive sign analysis: are the open half-planes n.w > 0 (|core| <= 3) jointly empty?

    Nonzero normals only. Two normals are infeasible iff antipodal. Three are
    infeasible iff a pair is antipodal or the three pairwise cross products,
    taken cyclically, share one strict sign (the origin is strictly inside
    their triangle).
    """
    vecs = [(Fraction(p[0]), Fraction(p[1])) for p in core]
    if not 1 <= len(vecs) <= 3 or any(x == 0 and y == 0 for x, y in vecs):
        return False

    def cr(a, b):
        return a[0] * b[1] - a[1] * b[0]

    def dt(a, b):
        return a[0] * b[0] + a[1] * b[1]

    for i in range(len(vecs)):
        for k in range(i + 1, len(vecs)):
            if cr(vecs[i], vecs[k]) == 0 and dt(vecs[i], vecs[k]) < 0:
                return True
    if len(vecs) == 3:
        a, b, c = vecs
        s = [cr(a, b), cr(b, c), cr(c, a)]
        return all(x > 0 for x in s) or all(x < 0 for x in s)
    return False


def _lookup(cfg: DiffConfig, kind: str, index: int) -> GaussianRational:
    d = cfg.diffs[index]
    return d.u if kind.lstrip("-") == "U" else d.v


def _substitute(cfg: DiffConfig, w: Direction) -> bool:
    lam = GaussianRational(w[0], w[1])
    lam_bar = lam.conj()
    # Im(v/lam) has the sign of Im(conj(lam)*v)
    return all((lam * d.u).im > 0 and (lam_bar * d.v).im > 0 for d in cfg.diffs)


def verify_certificate(cfg: DiffConfig, cert: MembershipCertificate) -> bool:
    """Re-check a certificate against cfg by direct substitution or sign analysis."""
    if cert.member:
        if cert.witness is None:
            return False
        if cert.domain == "forward":
            return cert.witness == (1, 0) and _substitute(cfg, (1, 0))
        return _substitute(cfg, cert.witness)
    if cert.degenerate_condition is not None:
        kind, idx = cert.degenerate_condition[0], int(cert.degenerate_condition[1:])
        return _lookup(cfg, kind, idx).is_zero()
    if not cert.infeasible_core:
        return False
    # the core must be the conditions cfg actually induces
    for h in cert.infeasible_core:
        z = _lookup(cfg, h.kind, h.index)
        expect = (z.im, z.re) if h.kind == "U" else (z.im, -z.re)
        if (h.nx, h.ny) != expect:
            return False
    if cert.domain == "forward":
        (h,) = cert.infeasible_core
        return h.nx <= 0
    return len(cert.infeasible_core) <= 3 and core_unsatisfiable(
        [(h.nx, h.ny) for h in cert.infeasible_core])


def lands_in_forward_tube(cfg: DiffConfig, lam: GaussianRational) -> bool:
    """Direct check that lam maps cfg into the forward tube."""
    inv = lam.inverse()
    return all((lam * d.u).im > 0 and (inv * d.v).im > 0 for d in cfg.diffs)


def diff_config(*pairs) -> DiffConfig:
    """Convenience constructor: diff_config((u0, v0), (u1, v1), ...)."""
    return DiffConfig(tuple(LightConeVector(u, v) for u, v in pairs))
