import pytest

from gammalab.errors import CapExceeded, NotValidated, NotWellDefined
from gammalab.gammaring import validate_associativity
from gammalab.instances import (RECIPE_SPACES, builtin_instances, direct_product, dual_numbers,
                                f4, make_ring, matrix_ring, paper_example_analog,
                                random_instance, rect_matrix_instance, ring_as_gamma_ring,
                                ring_product, trivial_instance, upper_triangular, z2_instance,
                                zn_ring)
from gammalab.abelian import make_group
from gammalab.maps import MapRole, classify_map, defect_map, enumerate_maps, is_scp
from gammalab.structure import center, is_commutative, is_prime, is_semiprime


def test_every_builtin_validates(suite):
    for gr in suite.values():
        assert validate_associativity(gr).verdict


def test_ring_as_gamma_ring_examples():
    assert ring_as_gamma_ring(zn_ring(2)) == z2_instance()
    dual = ring_as_gamma_ring(dual_numbers(2), "zn", n=2)
    assert len(enumerate_maps(dual, MapRole.LEFT_DERIVATION)) == 4
    with pytest.raises(ValueError):
        ring_as_gamma_ring(zn_ring(2), "zn")
    with pytest.raises(ValueError):
        ring_as_gamma_ring(zn_ring(2), "bogus")
    with pytest.raises(NotWellDefined):
        ring_as_gamma_ring(zn_ring(4), "subgroup", gens=[(1,)], moduli=[2])


def test_make_ring_rejects_nonassociative():
    G = make_group([2, 2])
    # e0 e0 = e1, e1 e0 = e0, others zero: (e0 e0) e0 = e0 but e0 (e0 e0) = 0
    with pytest.raises(NotValidated):
        make_ring(G, [[(0, 1), (0, 0)], [(1, 0), (0, 0)]])


def test_f4_field():
    R = f4()
    x = (0, 1)
    assert R.times(x, x) == (1, 1)
    assert R.times(x, R.times(x, x)) == (1, 0)


def test_rect_examples():
    gr = rect_matrix_instance(1, 2, 2)
    assert gr.m_group.order == 4 and gr.g_group.order == 4
    assert is_prime(gr).verdict and not is_commutative(gr).verdict
    assert center(gr).order == 1
    assert rect_matrix_instance(1, 1, 3) == ring_as_gamma_ring(zn_ring(3))
    assert is_prime(rect_matrix_instance(2, 1, 2)).verdict
    with pytest.raises(CapExceeded):
        rect_matrix_instance(3, 3, 2, cap=256)


@pytest.mark.parametrize("shape", [(1, 2, 2), (2, 1, 2), (1, 3, 2), (2, 2, 2), (1, 2, 3),
                                   (2, 1, 3), (1, 1, 5)])
def test_rect_prime_for_prime_q(shape):
    assert is_prime(rect_matrix_instance(*shape)).verdict


def test_direct_product_examples(suite):
    z2, rect = suite["z2"], suite["rect12"]
    p = direct_product(z2, z2)
    assert p.m_group.order == 4 and is_commutative(p).verdict and not is_prime(p).verdict
    q = direct_product(rect, z2)
    assert is_semiprime(q).verdict and not is_commutative(q).verdict and not is_prime(q).verdict
    t = direct_product(rect, trivial_instance())
    assert t.tensor == rect.tensor
    # semiprime iff both factors are
    assert not is_semiprime(direct_product(suite["dual"], z2)).verdict


def test_m2f2_x_f4_guarantees(analog):
    gr, sigma = analog
    assert gr.m_group.order == 64
    roles = classify_map(gr, sigma)
    assert roles[MapRole.ENDOMORPHISM].verdict
    assert sigma.images != tuple(gr.m_group.gens())
    assert is_scp(gr, sigma).verdict
    dm = defect_map(gr, sigma)
    # x -> x^2 = x + 1, so the defect sends x to 1 and everything else to 0
    assert dm.central and dm.defect.images[5] == (0, 0, 0, 0, 1, 0)
    assert is_semiprime(gr).verdict and not is_commutative(gr).verdict
    assert not is_prime(gr).verdict


def test_unital_whole_ring_left_derivations_zero():
    for R in (zn_ring(2), zn_ring(3), dual_numbers(2), f4(), upper_triangular(2, 2),
              matrix_ring(2, 2), ring_product(zn_ring(2), f4())):
        gr = ring_as_gamma_ring(R, "whole_ring")
        maps = enumerate_maps(gr, MapRole.LEFT_DERIVATION)
        assert [m.is_zero() for m in maps] == [True], R.name


def test_random_instance_deterministic():
    a, b = random_instance(1), random_instance(1)
    assert a == b and a.name == b.name


@pytest.mark.parametrize("space", RECIPE_SPACES)
def test_random_sweep_validates(space):
    for s in range(100 if space == "all" else 30):
        gr = random_instance(s, space)
        assert validate_associativity(gr).verdict


def test_random_rect_family_prime():
    for s in range(30):
        assert is_prime(random_instance(s, "rect")).verdict


def test_random_bad_space():
    with pytest.raises(ValueError):
        random_instance(0, "nope")


def test_builtin_names(suite):
    assert set(suite) == {"z2", "dual", "rect12", "rect21", "z2xz2", "rect12xz2",
                          "m2f2_x_f4"}
    assert builtin_instances()["m2f2_x_f4"] == paper_example_analog()[0]
