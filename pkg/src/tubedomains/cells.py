"""Semi-algebraic cells over configuration coordinates.

Variables are the real coordinates re_u<j>, im_u<j>, re_v<j>, im_v<j> of the
difference vectors. Polynomials have integer coefficients and are kept in a
canonical form so their JSON serialization is stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import BadArity, DegenerateCoordinate, NotOnBoundary
from .exact import DiffConfig
from .tube import (
    Direction,
    HalfPlaneNormal,
    cross,
    dot,
    half_plane_normals,
    in_extended_tube,
    reduce_direction,
    rot_ccw,
    rot_cw,
    sort_directions,
)

Monomial = tuple[tuple[str, int], ...]


def _var_key(name: str):
    # re_u3 -> (3, "u", "re") so variables group by difference index
    part, coord = name.split("_")
    return int(coord[1:]), coord[0], part


class Poly:
    """Sparse polynomial with integer coefficients."""

    __slots__ = ("terms", "_deg")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c != 0:
                clean[tuple(sorted(mono, key=lambda t: _var_key(t[0])))] = int(c)
        self.terms: dict[Monomial, int] = clean
        self._deg = max((sum(e for _, e in mono) for mono in clean), default=0)

    @classmethod
    def var(cls, name: str) -> Poly:
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls({(): c})

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return Poly(out)

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                exps = dict(m1)
                for v, e in m2:
                    exps[v] = exps.get(v, 0) + e
                mono = tuple(sorted(exps.items(), key=lambda t: _var_key(t[0])))
                out[mono] = out.get(mono, 0) + c1 * c2
        return Poly(out)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for mono in self.terms for v, _ in mono}

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            t = Fraction(c)
            for v, e in mono:
                t *= values[v] ** e
            total += t
        return total

    def degree(self) -> int:
        return self._deg

    def scaled_value(self, nums: Mapping[str, int], den: int) -> int:
        """den**degree * value, for values nums[v]/den; an integer with the sign of the value."""
        deg = self._deg
        total = 0
        for mono, c in self.terms.items():
            t = c * den ** (deg - sum(e for _, e in mono))
            for v, e in mono:
                t *= nums[v] ** e
            total += t
        return total

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(),
                      key=lambda mc: (-sum(e for _, e in mc[0]),
                                      [(_var_key(v), e) for v, e in mc[0]]))

    def to_json(self) -> list:
        return [[c, [[v, e] for v, e in mono]] for mono, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> Poly:
        return cls({tuple((v, int(e)) for v, e in mono): int(c) for c, mono in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


class ScaledValues:
    """Coordinates as integer numerators over one common positive denominator."""

    __slots__ = ("nums", "den")

    def __init__(self, values: Mapping[str, Fraction]):
        den = 1
        for x in values.values():
            den = den * x.denominator // math.gcd(den, x.denominator)
        self.den = den
        self.nums = {k: int(x * den) for k, x in values.items()}


def coordinate_values(cfg: DiffConfig) -> dict[str, Fraction]:
    vals = {}
    for j, d in enumerate(cfg.diffs):
        vals[f"re_u{j}"] = d.u.re
        vals[f"im_u{j}"] = d.u.im
        vals[f"re_v{j}"] = d.v.re
        vals[f"im_v{j}"] = d.v.im
    return vals


RELATIONS = (">", "=", "<")


@dataclass(frozen=True)
class SignCondition:
    poly: Poly
    relation: str

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}")

    def holds(self, values) -> bool:
        if not isinstance(values, ScaledValues):
            values = ScaledValues(values)
        x = self.poly.scaled_value(values.nums, values.den)
        if self.relation == ">":
            return x > 0
        if self.relation == "<":
            return x < 0
        return x == 0

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "rel": self.relation}

    @classmethod
    def from_json(cls, data) -> SignCondition:
        return cls(Poly.from_json(data["poly"]), data["rel"])

    def __repr__(self):
        return f"{self.poly!r} {self.relation} 0"


@dataclass(frozen=True)
class CellFormula:
    """Conjunction of sign conditions."""

    conditions: tuple[SignCondition, ...]
    label: str = "interior"

    def holds(self, values) -> bool:
        if not isinstance(values, ScaledValues):
            values = ScaledValues(values)
        return all(c.holds(values) for c in self.conditions)

    def satisfied_by(self, cfg: DiffConfig) -> bool:
        return self.holds(coordinate_values(cfg))

    def to_json(self) -> dict:
        return {"and": [c.to_json() for c in self.conditions], "label": self.label}

    @classmethod
    def from_json(cls, data) -> CellFormula:
        return cls(tuple(SignCondition.from_json(c) for c in data["and"]), data.get("label", "interior"))


@dataclass(frozen=True)
class SemiAlgebraicSet:
    """Finite disjunction of CellFormula conjunctions."""

    cells: tuple[CellFormula, ...]
    label: str = "interior"

    def holds(self, values) -> bool:
        if not isinstance(values, ScaledValues):
            values = ScaledValues(values)
        return any(c.holds(values) for c in self.cells)

    def satisfied_by(self, cfg: DiffConfig) -> bool:
        return self.holds(coordinate_values(cfg))

    def satisfying_cells(self, cfg: DiffConfig) -> list[int]:
        vals = ScaledValues(coordinate_values(cfg))
        return [i for i, c in enumerate(self.cells) if c.holds(vals)]

    def to_json(self) -> dict:
        return {"or": [c.to_json() for c in self.cells], "label": self.label}

    @classmethod
    def from_json(cls, data) -> SemiAlgebraicSet:
        if "and" in data:
            cell = CellFormula.from_json(data)
            return cls((cell,), cell.label)
        return cls(tuple(CellFormula.from_json(c) for c in data["or"]), data.get("label", "interior"))


def as_set(formula) -> SemiAlgebraicSet:
    if isinstance(formula, SemiAlgebraicSet):
        return formula
    return SemiAlgebraicSet((formula,), formula.label)


# -- symbolic normals -----------------------------------------------------------

def symbolic_normals(m: int) -> list[tuple[str, Poly, Poly]]:
    out = []
    for j in range(m - 1):
        out.append((f"U{j}", Poly.var(f"im_u{j}"), Poly.var(f"re_u{j}")))
        out.append((f"V{j}", Poly.var(f"im_v{j}"), -Poly.var(f"re_v{j}")))
    return out


def interior_cell_formula(m: int) -> SemiAlgebraicSet:
    """Quantifier-free description of the extended tube for m points.

    The direction variable is eliminated by enumerating the witness a
    common direction would have. If all normals point one way, normal n_i
    itself is a witness. Otherwise, with n_i the counterclockwise-extreme and
    n_k the clockwise-extreme normal, rot_cw(n_i) + rot_ccw(n_k) is one. So
    the tube is the union over i of {n_l . n_i > 0 for all l} and over i != k
    of {n_l . (rot_cw(n_i) + rot_ccw(n_k)) > 0 for all l}. Strict positivity
    against any witness forces every normal to be nonzero.
    """
    if not isinstance(m, int) or m < 2:
        raise BadArity(f"interior formula needs m >= 2, got {m!r}")
    normals = symbolic_normals(m)
    cells = []
    for _, xi, yi in normals:
        conds = tuple(SignCondition(xl * xi + yl * yi, ">") for _, xl, yl in normals)
        cells.append(CellFormula(conds, "interior"))
    for i, (_, xi, yi) in enumerate(normals):
        for k, (_, xk, yk) in enumerate(normals):
            if i == k:
                continue
            wx = yi - yk
            wy = xk - xi
            conds = tuple(SignCondition(xl * wx + yl * wy, ">") for _, xl, yl in normals)
            cells.append(CellFormula(conds, "interior"))
    return SemiAlgebraicSet(tuple(cells), "interior")


def forward_tube_formula(m: int) -> CellFormula:
    conds = []
    for j in range(m - 1):
        conds.append(SignCondition(Poly.var(f"im_u{j}"), ">"))
        conds.append(SignCondition(Poly.var(f"im_v{j}"), ">"))
    return CellFormula(tuple(conds), "forward-tube")


def jost_wedge_formula(m: int) -> CellFormula:
    """Real configurations with every u_j > 0 and every v_j < 0."""
    conds = []
    for j in range(m - 1):
        conds += [SignCondition(Poly.var(f"im_u{j}"), "="), SignCondition(Poly.var(f"im_v{j}"), "="),
                  SignCondition(Poly.var(f"re_u{j}"), ">"), SignCondition(Poly.var(f"re_v{j}"), "<")]
    return CellFormula(tuple(conds), "jost-wedge")


def cut_formula(j: int = 0) -> CellFormula:
    """Real difference j with u_j*v_j > 0: the open part of the two-point cut."""
    conds = (SignCondition(Poly.var(f"im_u{j}"), "="), SignCondition(Poly.var(f"im_v{j}"), "="),
             SignCondition(Poly.var(f"re_u{j}") * Poly.var(f"re_v{j}"), ">"))
    return CellFormula(conds, f"boundary(C({j}))")


# -- arrangement on the direction circle -----------------------------------------

@dataclass(frozen=True)
class Arc:
    """Open arc of directions w between two consecutive boundary points, counterclockwise."""

    start: Direction
    end: Direction
    satisfied: frozenset[str]

    def interior_directions(self) -> list[Direction]:
        if cross(self.start, self.end) > 0:
            s, e = self.start, self.end
            return [reduce_direction((s[0] + e[0], s[1] + e[1])),
                    reduce_direction((2 * s[0] + e[0], 2 * s[1] + e[1])),
                    reduce_direction((s[0] + 2 * e[0], s[1] + 2 * e[1]))]
        # half-circle arc: go through the midpoint rot_ccw(start)
        s, mid, e = self.start, rot_ccw(self.start), self.end
        return [mid, reduce_direction((s[0] + mid[0], s[1] + mid[1])),
                reduce_direction((mid[0] + e[0], mid[1] + e[1]))]

    def to_json(self) -> dict:
        return {"start": list(self.start), "end": list(self.end),
                "satisfied": sorted(self.satisfied, key=_tag_key)}


def _tag_key(tag: str):
    kind = tag.rstrip("0123456789")
    return int(tag[len(kind):]), kind


@dataclass(frozen=True)
class Arrangement:
    normals: tuple[tuple[Direction, tuple[HalfPlaneNormal, ...]], ...]
    arcs: tuple[Arc, ...]
    all_tags: frozenset[str] = field(default_factory=frozenset)

    def admissible_arcs(self) -> list[Arc]:
        return [a for a in self.arcs if a.satisfied == self.all_tags]

    def to_json(self) -> dict:
        return {"normals": [{"direction": list(d), "sources": [h.tag for h in hs]}
                            for d, hs in self.normals],
                "arcs": [a.to_json() for a in self.arcs],
                "admissible": [a.to_json() for a in self.admissible_arcs()]}


def build_arrangement(cfg: DiffConfig) -> Arrangement:
    normals = half_plane_normals(cfg)
    for h in normals:
        if h.is_zero():
            raise DegenerateCoordinate(f"condition {h.tag} has a zero coordinate")
    groups: dict[Direction, list[HalfPlaneNormal]] = {}
    for h in normals:
        groups.setdefault(h.direction(), []).append(h)
    ordered = tuple((d, tuple(groups[d])) for d in sort_directions(groups))

    # condition n.w > 0 switches where w is perpendicular to n
    bpoints = set()
    for d in groups:
        bpoints.add(rot_ccw(d))
        bpoints.add(rot_cw(d))
    bps = sort_directions(bpoints)
    arcs = []
    for i, s in enumerate(bps):
        e = bps[(i + 1) % len(bps)]
        probe = Arc(s, e, frozenset()).interior_directions()[0]
        sat = frozenset(h.tag for h in normals if dot(h.direction(), probe) > 0)
        arcs.append(Arc(s, e, sat))
    return Arrangement(ordered, tuple(arcs), frozenset(h.tag for h in normals))


# -- boundary strata ----------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryStratum:
    tag: str          # "C(j)" or "JOINT(j,k)"
    indices: tuple[int, ...]
    active_conditions: tuple[SignCondition, ...]

    def to_json(self) -> dict:
        return {"tag": self.tag, "indices": list(self.indices),
                "active_conditions": [c.to_json() for c in self.active_conditions]}


def _linear(h: HalfPlaneNormal) -> tuple[Poly, Poly]:
    j = h.index
    if h.kind == "U":
        return Poly.var(f"im_u{j}"), Poly.var(f"re_u{j}")
    return Poly.var(f"im_v{j}"), -Poly.var(f"re_v{j}")


def classify_boundary(cfg: DiffConfig) -> list[BoundaryStratum]:
    """Degenerate strata a non-member configuration lies on.

    C(j): u_j*v_j real and >= 0 (null coordinates included).
    JOINT(j,k): antipodal normals coming from two different differences.
    """
    cert = in_extended_tube(cfg)
    if cert.member:
        raise NotOnBoundary("configuration is an interior member")
    strata = []
    for j, d in enumerate(cfg.diffs):
        if d.u.is_zero() or d.v.is_zero():
            which = "u" if d.u.is_zero() else "v"
            conds = (SignCondition(Poly.var(f"re_{which}{j}"), "="),
                     SignCondition(Poly.var(f"im_{which}{j}"), "="))
            strata.append(BoundaryStratum(f"C({j})", (j,), conds))
        elif (d.u * d.v).on_cut():
            ru, iu, rv, iv = (Poly.var(f"{p}_{c}{j}") for p, c in
                              (("re", "u"), ("im", "u"), ("re", "v"), ("im", "v")))
            conds = (SignCondition(iu * rv + ru * iv, "="), SignCondition(ru * rv - iu * iv, ">"))
            strata.append(BoundaryStratum(f"C({j})", (j,), conds))

    normals = [h for h in half_plane_normals(cfg) if not h.is_zero()]
    joint: dict[tuple[int, int], list[SignCondition]] = {}
    for a_i, a in enumerate(normals):
        for b in normals[a_i + 1:]:
            if a.index == b.index:
                continue
            da, db = a.direction(), b.direction()
            if cross(da, db) == 0 and dot(da, db) < 0:
                (xa, ya), (xb, yb) = _linear(a), _linear(b)
                key = (min(a.index, b.index), max(a.index, b.index))
                joint.setdefault(key, []).extend(
                    [SignCondition(xa * yb - ya * xb, "="), SignCondition(xa * xb + ya * yb, "<")])
    for (j, k), conds in sorted(joint.items()):
        strata.append(BoundaryStratum(f"JOINT({j},{k})", (j, k), tuple(conds)))
    if not strata:
        raise NotOnBoundary("non-member with every condition strictly signed")
    return strata


def formula_from_conditions(conds: Iterable[SignCondition], label: str) -> CellFormula:
    return CellFormula(tuple(conds), label)
