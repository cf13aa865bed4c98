"""Order classes over arbitrary space-time dimension and projection checks on union domains."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .errors import BadDimension, BadOrder, BadR, NotMember
from .exact import PointConfig, minkowski_square, to_diffs
from .permutations import DEFAULT_MAX_M, Permutation, union_membership
from .tube import in_extended_tube, lands_in_forward_tube, witness_lambda


class OrderClass(enum.Enum):
    A = "A"  # lower order
    B = "B"  # intermediate order
    C = "C"  # high order

    @property
    def description(self) -> str:
        return {"A": "lower", "B": "intermediate", "C": "high"}[self.value]


def classify_order(s: int, m: int) -> OrderClass:
    if not isinstance(s, int) or s < 2:
        raise BadDimension(f"space-time dimension must be >= 2, got {s!r}")
    if not isinstance(m, int) or m < 2:
        raise BadOrder(f"order must be >= 2, got {m!r}")
    if m <= s + 1:
        return OrderClass.A
    # s(s-1)/2 + 2 compared in integers
    if 2 * m > s * (s - 1) + 4:
        return OrderClass.C
    return OrderClass.B


def intermediate_orders(s: int) -> list[int]:
    """All m in class B for dimension s (finite: s+1 < m <= s(s-1)/2 + 2)."""
    return [m for m in range(s + 2, s * (s - 1) // 2 + 3) if classify_order(s, m) is OrderClass.B]


@dataclass
class ProjectionReport:
    m: int
    r: int
    subsets_checked: int = 0
    pairs_covered: int = 0
    vacuous: bool = False
    admitting_permutation: Permutation | None = None
    violations: list = field(default_factory=list)
    witness_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.violations or self.witness_violations)

    def to_json(self) -> dict:
        return {"m": self.m, "r": self.r, "vacuous": self.vacuous, "ok": self.ok,
                "subsets_checked": self.subsets_checked,
                "sigma_selection_pairs": self.pairs_covered,
                "admitting_permutation": (self.admitting_permutation.one_based()
                                          if self.admitting_permutation else None),
                "violations": [list(v) for v in self.violations],
                "witness_violations": [list(v) for v in self.witness_violations],
                "note": "restriction property on computable union domains; envelopes are not computed"}


def projection_inclusion_check(cfg: PointConfig, r: int, max_m: int = DEFAULT_MAX_M) -> ProjectionReport:
    """Every sub-configuration of m - r points of a union member is a union member.

    Union membership is invariant under relabeling, so the (sigma, selection)
    pairs reduce to the distinct point subsets. Additionally, for the first
    admitting sigma the same Lorentz parameter that maps sigma*cfg into the
    forward tube must map every order-preserving selection into it.
    """
    m = cfg.m
    if not isinstance(r, int) or r <= 0 or r >= m:
        raise BadR(f"need 0 < r < m, got r = {r!r} for m = {m}")
    full = union_membership(cfg, "first", max_m)
    if not full.member:
        raise NotMember("configuration is not in the permuted union")
    k = m - r
    rep = ProjectionReport(m, r, admitting_permutation=full.admitting_permutations[0])
    if k < 2:
        rep.vacuous = True
        return rep

    sigma = rep.admitting_permutation
    ordered = sigma.apply(cfg)
    w = in_extended_tube(to_diffs(ordered)).witness
    lam = witness_lambda(w)
    for sel in itertools.combinations(range(m), k):
        sub = PointConfig(tuple(ordered.points[i] for i in sel))
        if not lands_in_forward_tube(to_diffs(sub), lam):
            rep.witness_violations.append(tuple(sigma(i) for i in sel))

    n_perm = 1
    for t in range(2, m + 1):
        n_perm *= t
    for subset in itertools.combinations(range(m), k):
        sub = PointConfig(tuple(cfg.points[i] for i in subset))
        rep.subsets_checked += 1
        if not union_membership(sub, "first", max_m).member:
            rep.violations.append(subset)
    # each sigma contributes C(m, k) order-preserving selections
    rep.pairs_covered = n_perm * rep.subsets_checked
    return rep


def pairwise_cut_violations(cfg: PointConfig) -> list[tuple[int, int]]:
    """Pairs whose invariant (z_i - z_k)^2 lies on [0, inf)."""
    out = []
    pts = cfg.points
    for i in range(len(pts)):
        for k in range(i + 1, len(pts)):
            if minkowski_square(pts[i] - pts[k]).on_cut():
                out.append((i, k))
    return out
