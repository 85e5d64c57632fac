import itertools

import pytest

from gammalab.abelian import (SearchStats, enumerate_additive_maps, identity_map,
                              make_additive_map, zero_map)
from gammalab.errors import CapExceeded, ShapeMismatch
from gammalab.abelian import make_group
from gammalab.instances import random_instance, rect_matrix_instance
from gammalab.maps import (IDENTITY_ROLES, MapRole, classify_map, defect_map, enumerate_maps,
                           image_in_center, is_scp)
from gammalab.structure import center

from oracles import Oracle


def test_zero_map_roles(suite):
    for gr in suite.values():
        M = gr.m_group
        roles = classify_map(gr, zero_map(M, M))
        for r in (MapRole.LEFT_DERIVATION, MapRole.RIGHT_DERIVATION, MapRole.DERIVATION):
            assert roles[r].verdict
        # 0(x a y) = 0 = 0 a 0, so the zero map is always an endomorphism
        assert roles[MapRole.ENDOMORPHISM].verdict
        if M.order <= 16:
            assert Oracle.of(gr).role_holds("endomorphism", zero_map(M, M).images)
        assert roles[MapRole.ADDITIVE_ONLY].verdict


def test_identity_on_rect(suite):
    gr = suite["rect12"]
    roles = classify_map(gr, identity_map(gr.m_group))
    assert roles[MapRole.ENDOMORPHISM].verdict
    assert not roles[MapRole.DERIVATION].verdict
    w = roles[MapRole.DERIVATION].witnesses[0]
    assert any(w["residual"])


def test_dual_left_derivation(suite):
    gr = suite["dual"]
    M = gr.m_group
    delta = make_additive_map(M, M, [(0, 0), (1, 0)])
    assert classify_map(gr, delta)[MapRole.LEFT_DERIVATION].verdict
    assert Oracle.of(gr).role_holds("left_derivation", delta.images)
    assert image_in_center(gr, delta).verdict


def test_scp_examples(suite, analog):
    for gr in suite.values():
        assert is_scp(gr, identity_map(gr.m_group)).verdict
    rect = suite["rect12"]
    rep = is_scp(rect, zero_map(rect.m_group, rect.m_group))
    assert not rep.verdict and rep.witnesses[0]["rhs"] == (0, 1)
    gr, sigma = analog
    assert is_scp(gr, sigma).verdict


def test_image_in_center_examples(suite):
    rect = suite["rect12"]
    M = rect.m_group
    assert image_in_center(rect, zero_map(M, M)).verdict
    rep = image_in_center(rect, identity_map(M))
    assert not rep.verdict and rep.witnesses[0]["generator"] == 0


def test_defect_identity(suite):
    for gr in suite.values():
        dm = defect_map(gr, identity_map(gr.m_group))
        assert dm.defect.is_zero() and dm.central


def test_shape_checks(suite):
    gr = suite["rect12"]
    other = make_group([2])
    with pytest.raises(ShapeMismatch):
        classify_map(gr, zero_map(other, other))
    with pytest.raises(ShapeMismatch):
        is_scp(gr, zero_map(other, other))


def test_enumerate_examples(suite):
    z2 = suite["z2"]
    assert [m.is_zero() for m in enumerate_maps(z2, MapRole.LEFT_DERIVATION)] == [True]
    dual = suite["dual"]
    lds = enumerate_maps(dual, MapRole.LEFT_DERIVATION)
    assert {m.images for m in lds} == {((0, 0), y) for y in dual.m_group.elements()}
    rect = suite["rect12"]
    endos = enumerate_maps(rect, MapRole.ENDOMORPHISM)
    assert [m for m in endos if is_scp(rect, m).verdict] == [identity_map(rect.m_group)]


def test_enumerate_budget(analog):
    gr, _ = analog
    with pytest.raises(CapExceeded) as exc:
        enumerate_maps(gr, MapRole.ENDOMORPHISM, budget=50)
    assert exc.value.survivors is not None


def test_scp_pruning_equals_filtering(analog):
    gr, sigma = analog
    for role in (MapRole.DERIVATION, MapRole.ENDOMORPHISM):
        full = enumerate_maps(gr, role)
        pruned = enumerate_maps(gr, role, scp=True)
        assert pruned == [m for m in full if is_scp(gr, m).verdict]
    assert sigma in enumerate_maps(gr, MapRole.ENDOMORPHISM, scp=True)


def test_workers_same_result(analog):
    gr, _ = analog
    s1, s2 = SearchStats(), SearchStats()
    a = enumerate_maps(gr, MapRole.ENDOMORPHISM, workers=1, stats=s1)
    b = enumerate_maps(gr, MapRole.ENDOMORPHISM, workers=3, stats=s2)
    assert a == b and s1.found == s2.found


def _small():
    out = [rect_matrix_instance(1, 2, 2), rect_matrix_instance(2, 1, 2),
           rect_matrix_instance(1, 2, 3)]
    out += [random_instance(s) for s in range(40)]
    return [g for g in out if g.m_group.order * g.g_group.order <= 2**10
            and g.m_group.order ** g.m_group.rank <= 4096]


@pytest.mark.parametrize("gr", _small(), ids=lambda g: g.label())
def test_roles_match_oracle(gr):
    o = Oracle.of(gr)
    M = gr.m_group
    for images in o.all_additive_maps():
        f = make_additive_map(M, M, images)
        roles = classify_map(gr, f)
        for r in IDENTITY_ROLES:
            assert roles[r].verdict == o.role_holds(r.value, images), (r, images)
        assert is_scp(gr, f).verdict == o.scp(images)
        assert image_in_center(gr, f).verdict == o.image_central(images)


@pytest.mark.parametrize("gr", _small(), ids=lambda g: g.label())
def test_enumeration_matches_oracle(gr):
    o = Oracle.of(gr)
    for r in IDENTITY_ROLES:
        assert {m.images for m in enumerate_maps(gr, r)} == o.maps_with_role(r.value)


def test_defect_central_matches_center(analog):
    gr, sigma = analog
    Z = center(gr)
    for s in enumerate_maps(gr, MapRole.ENDOMORPHISM):
        dm = defect_map(gr, s)
        assert dm.central == all(z in Z for z in dm.defect.images)
