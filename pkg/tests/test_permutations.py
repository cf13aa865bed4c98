from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import point_configs
from tubedomains.cells import CellFormula, Poly, SignCondition, cut_formula, forward_tube_formula, jost_wedge_formula
from tubedomains.errors import ArityGuard, NotTotallySpacelike, ProbeOutsideFormula
from tubedomains.exact import GaussianRational as G, LightConeVector as V, PointConfig, to_diffs
from tubedomains.oracle import oracle_extended_membership
from tubedomains.permutations import (
    Permutation,
    all_permutations,
    locality_sweep,
    primitive_member,
    random_spacelike_config,
    spacelike_locality_check,
    union_coverage_query,
    union_membership,
)
from tubedomains.sampling import random_union_member
from tubedomains.tube import is_jost_point, verify_certificate

I = G(0, 1)
ZERO = V(0, 0)


def two_points(u, v):
    return PointConfig((V(u, v), ZERO))


def test_permutation_group_laws():
    p = Permutation((2, 0, 1))
    q = Permutation((1, 0, 2))
    assert p.compose(p.inverse()).is_identity()
    assert p.compose(q).images == (0, 2, 1)
    assert Permutation.from_one_based([3, 1, 2]) == p
    assert str(p) == "[3,1,2]"
    assert [x.images for x in all_permutations(3)][:2] == [(0, 1, 2), (0, 2, 1)]
    with pytest.raises(ValueError):
        Permutation((0, 0))


def test_spacelike_pair_both_orderings():
    uv = union_membership(two_points(1, -1), "all")
    assert uv.member
    assert [p.images for p in uv.admitting_permutations] == [(0, 1), (1, 0)]
    swapped = to_diffs(Permutation((1, 0)).apply(two_points(1, -1)))
    assert swapped[0] == V(-1, 1)
    assert is_jost_point(swapped)[0]


def test_forward_pair_admits_both_orderings():
    # the swap gives (-i, -i), which lam = -1 maps back onto (i, i)
    uv = union_membership(two_points(I, I), "all")
    assert [p.images for p in uv.admitting_permutations] == [(0, 1), (1, 0)]
    assert uv.per_permutation_certificates[Permutation((1, 0))].witness == (-1, 0)


def test_timelike_pair_not_member():
    cfg = two_points(1, 1)
    uv = union_membership(cfg, "all")
    assert not uv.member
    for sigma, cert in uv.per_permutation_certificates.items():
        assert not cert.member
        assert not oracle_extended_membership(to_diffs(sigma.apply(cfg))).found


def test_first_mode_stops_early():
    uv = union_membership(two_points(1, -1), "first")
    assert len(uv.admitting_permutations) == 1
    assert len(uv.per_permutation_certificates) == 1


def test_factorial_guard():
    cfg = PointConfig(tuple(V(k, -k) for k in range(9)))
    with pytest.raises(ArityGuard):
        union_membership(cfg)
    assert union_membership(PointConfig(tuple(V(k, -k) for k in range(3))), max_m=3).member


@settings(max_examples=40, deadline=None)
@given(point_configs(max_size=4), st.randoms(use_true_random=False))
def test_relabeling_invariance(cfg, rnd):
    images = list(range(cfg.m))
    rnd.shuffle(images)
    relabeled = Permutation(tuple(images)).apply(cfg)
    assert union_membership(cfg).member == union_membership(relabeled).member


@settings(max_examples=40, deadline=None)
@given(point_configs(max_size=4))
def test_monotonicity_and_certificates(cfg):
    uv = union_membership(cfg, "all")
    if primitive_member(cfg):
        assert uv.member
    if not uv.member:
        assert len(uv.per_permutation_certificates) == len(list(all_permutations(cfg.m)))
    for sigma, cert in uv.per_permutation_certificates.items():
        assert verify_certificate(to_diffs(sigma.apply(cfg)), cert)


# locality

def test_locality_examples():
    rep = spacelike_locality_check(two_points(1, -1))
    assert rep.member and len(rep.admitting_permutations) == 2
    cfg = PointConfig((V(2, -2), V(1, -1), ZERO))
    rep = spacelike_locality_check(cfg)
    assert rep.member and Permutation.identity(3) in rep.admitting_permutations


def test_locality_rejects_timelike():
    with pytest.raises(NotTotallySpacelike) as exc:
        spacelike_locality_check(two_points(1, 1))
    assert exc.value.pair == (0, 1)


def test_locality_sweep():
    assert locality_sweep(200, seed=5).ok


def test_random_spacelike_configs_are_spacelike():
    rng = random.Random(2)
    for m in range(2, 6):
        cfg = random_spacelike_config(rng, m)
        pts = cfg.points
        assert all(((pts[i] - pts[k]).u * (pts[i] - pts[k]).v).re < 0
                   for i in range(m) for k in range(i + 1, m))


# coverage queries

def test_coverage_jost_wedge():
    probes = [two_points(Fraction(p), Fraction(-q)) for p, q in ((1, 1), (3, 2), (1, 5))]
    rep = union_coverage_query(jost_wedge_formula(2), 2, probes)
    assert rep.all_covered
    assert all(Permutation.identity(2) in e.satisfying for e in rep.entries)


def test_coverage_forward_tube():
    probes = [two_points(I, I), two_points(G(1, 2), G(-3, 1))]
    rep = union_coverage_query(forward_tube_formula(2), 2, probes)
    assert rep.all_covered
    assert all(e.satisfying[0].is_identity() for e in rep.entries)


def test_coverage_cut_not_covered():
    probes = [two_points(1, 1), two_points(2, Fraction(1, 3))]
    rep = union_coverage_query(cut_formula(0), 2, probes)
    assert not any(e.covered for e in rep.entries)
    for p in probes:
        assert not union_membership(p).member


def test_coverage_rejects_outside_probe():
    with pytest.raises(ProbeOutsideFormula):
        union_coverage_query(jost_wedge_formula(2), 2, [two_points(1, 1)])


def test_coverage_matches_engine_on_random_members():
    rng = random.Random(8)
    probes = [random_union_member(rng, 3) for _ in range(10)]
    anything = CellFormula((SignCondition(Poly.const(1), ">"),), "all")
    rep = union_coverage_query(anything, 3, probes)
    for e, p in zip(rep.entries, probes):
        assert list(e.satisfying) == list(union_membership(p, "all").admitting_permutations)
