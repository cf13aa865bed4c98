from __future__ import annotations

import random

import pytest

from tubedomains.errors import EmptyBase, NonAxisBase
from tubedomains.exact import GaussianRational as G, LightConeVector as V, PointConfig, to_diffs
from tubedomains.extend import (
    BACKWARD_CONE,
    FORWARD_CONE,
    ConeBase,
    DomainDescriptor,
    convex_tube_extension,
    hull,
    primitive_extension,
    propose_extension_point,
    proposal_stream,
    verify_extension,
)
from tubedomains.permutations import Permutation, union_membership
from tubedomains.sampling import random_union_member
from tubedomains.tube import in_extended_tube
from tubedomains.uniformity import pairwise_cut_violations

I = G(0, 1)
UPPER_U = ConeBase(((0, 1), (1, 0), (0, -1)))  # y_u > 0


def two_points(u, v):
    return PointConfig((V(u, v), V(0, 0)))


def test_cone_shapes():
    assert FORWARD_CONE.kind == "pointed"
    assert FORWARD_CONE.contains((1, 1)) and not FORWARD_CONE.contains((1, 0))
    assert UPPER_U.kind == "halfplane" and UPPER_U.inward_normals() == ((1, 0),)
    with pytest.raises(EmptyBase):
        ConeBase(((1, 0), (-1, 0)))
    with pytest.raises(EmptyBase):
        ConeBase(((1, 1),))
    with pytest.raises(EmptyBase):
        ConeBase(())


def test_hull_of_convex_base_is_itself():
    assert hull([FORWARD_CONE]) == FORWARD_CONE
    ext = convex_tube_extension([FORWARD_CONE])
    assert ext.bases == (FORWARD_CONE,) and not ext.over_extension


def test_antipodal_quadrants_hull_to_plane():
    ext = convex_tube_extension([FORWARD_CONE], [Permutation.identity(2), Permutation.reversal(2)])
    (b,) = ext.bases
    assert b.kind == "plane"
    assert ext.over_extension
    assert "cut back" in ext.to_json()["note"]
    assert hull([FORWARD_CONE, BACKWARD_CONE]).kind == "plane"


def test_quadrant_and_half_plane():
    ext = convex_tube_extension([[FORWARD_CONE, UPPER_U]])
    assert ext.bases == (UPPER_U,)


def test_non_product_permutations_are_skipped():
    perms = list(map(Permutation, [(0, 1, 2), (1, 0, 2), (2, 1, 0)]))
    ext = convex_tube_extension([FORWARD_CONE, FORWARD_CONE], perms)
    assert [p.images for p in ext.accepted] == [(0, 1, 2), (2, 1, 0)]
    assert [p.images for p in ext.skipped] == [(1, 0, 2)]


def test_reversal_moves_bases_between_indices():
    ext = convex_tube_extension([FORWARD_CONE, UPPER_U], [Permutation.reversal(3)])
    assert ext.bases[0] == UPPER_U.negated()
    assert ext.bases[1] == BACKWARD_CONE


def test_hull_idempotence():
    perms = [Permutation.identity(3), Permutation.reversal(3)]
    for bases in ([FORWARD_CONE, FORWARD_CONE], [FORWARD_CONE, UPPER_U]):
        once = convex_tube_extension(bases, perms)
        twice = convex_tube_extension(once.bases, perms)
        assert twice.bases == once.bases


# verification

def test_mixed_sign_candidate_verifies_after_cut_back():
    ext = primitive_extension(2)
    cand = two_points(I, 1)  # Im parts (1, 0): outside T and -T, uv = i off the cut
    assert not DomainDescriptor.primitive(2).contains(cand)
    ver = verify_extension(cand, ext)
    assert ver.member and ver.cut_back_applied


def test_cut_candidate_rejected_after_cut_back():
    ver = verify_extension(two_points(G(1, 1), G(1, -1)), primitive_extension(2))
    assert not ver.member and ver.cut_violations == ((0, 1),)


def test_candidate_violating_every_base():
    ext = convex_tube_extension([FORWARD_CONE])
    ver = verify_extension(two_points(1, 1), ext)
    assert not ver.member and len(ver.certificate.infeasible_core) == 2


def test_forward_point_is_member():
    for ext in (convex_tube_extension([FORWARD_CONE]), primitive_extension(2)):
        assert verify_extension(two_points(I, 2 * I), ext).member


def test_non_axis_bases_refused():
    skew = ConeBase(((1, 2), (2, 1)))
    ext = convex_tube_extension([skew])
    with pytest.raises(NonAxisBase):
        verify_extension(two_points(I, I), ext)


@pytest.mark.parametrize("with_reversal", [False, True])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_monotonicity(m, with_reversal):
    rng = random.Random(m)
    ext = primitive_extension(m, with_reversal)
    perms = DomainDescriptor.primitive(m, with_reversal).permutations
    hits = 0
    for _ in range(150):
        cfg = random_union_member(rng, m)
        if any(in_extended_tube(to_diffs(s.apply(cfg))).member for s in perms):
            hits += 1
            assert verify_extension(cfg, ext).member
    assert hits > 0


def test_two_point_soundness_against_cut():
    ext = primitive_extension(2)
    for t, cand, _ in proposal_stream(DomainDescriptor.primitive(2), seed=12, draws=400):
        if cand is None:
            continue
        ver = verify_extension(cand, ext)
        if ver.member:
            assert pairwise_cut_violations(cand) == []
            # in two points the verified extension is exactly the extended tube
            assert union_membership(cand).member


# proposals

def test_proposal_is_outside_domain_and_off_cut():
    dom = DomainDescriptor.primitive(2)
    prop = propose_extension_point(dom, seed=7)
    assert prop.candidate is not None
    assert not dom.contains(prop.candidate)
    assert pairwise_cut_violations(prop.candidate) == []
    for rej in prop.rejections:
        assert rej["reason"] in ("member", "cut")
        if rej["reason"] == "cut":
            assert rej["strata"]


def test_proposals_are_deterministic():
    dom = DomainDescriptor.primitive(3)
    a = [repr(x) for x in proposal_stream(dom, 99, 100)]
    b = [repr(x) for x in proposal_stream(dom, 99, 100)]
    assert a == b
    assert propose_extension_point(dom, 5).to_json() == propose_extension_point(dom, 5).to_json()


def test_exhausted_budget_emits_nothing():
    prop = propose_extension_point(DomainDescriptor.primitive(2), seed=1, draws=0)
    assert prop.candidate is None and prop.draws_used == 0


def test_extension_json_shape():
    data = primitive_extension(2).to_json()
    assert data["over_extension"] is True
    assert data["accepted_permutations"] == [[1, 2], [2, 1]]
