import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammalab.abelian import make_group
from gammalab.errors import NotValidated, NotWellDefined, ShapeMismatch, TensorShapeMismatch
from gammalab.gammaring import (ProductTable, build_gamma_ring, commutator,
                                commutator_expansion_residual, gamma_bracket, product,
                                require_valid, tensor_from_entries, validate_associativity)
from gammalab.instances import rect_matrix_instance, z2_instance
from gammalab.structure import center

from oracles import Oracle


def z2():
    G = make_group([2])
    return build_gamma_ring(G, G, [[[(1,)]]])


def rect12():
    return rect_matrix_instance(1, 2, 2)


def perturbed_rect():
    gr = rect12()
    T = [[[list(v) for v in col] for col in row] for row in gr.tensor]
    T[0][0][0] = [1, 1]
    return build_gamma_ring(gr.m_group, gr.g_group, T)


def test_build_z2():
    gr = z2()
    assert gr == z2_instance()
    assert product(gr, (1,), (1,), (1,)) == (1,)
    assert validate_associativity(gr).verdict


def test_shape_errors():
    G = make_group([2])
    with pytest.raises(TensorShapeMismatch):
        build_gamma_ring(make_group([2, 2]), G, [[[(1,)]]])
    with pytest.raises(TensorShapeMismatch):
        build_gamma_ring(G, G, [[[(1, 0)]]])
    with pytest.raises(ShapeMismatch):
        product(z2(), (1, 0), (1,), (1,))


def test_not_well_defined():
    M, G = make_group([4]), make_group([2])
    with pytest.raises(NotWellDefined) as exc:
        build_gamma_ring(M, G, [[[(1,)]]])
    assert exc.value.index == (0, 0, 0)
    assert build_gamma_ring(M, G, [[[(2,)]]]).tensor[0][0][0] == (2,)


def test_tensor_from_entries_and_numpy_input():
    M = make_group([2, 2])
    T = tensor_from_entries(2, 1, {(0, 0, 1): (1, 0)}, M)
    gr = build_gamma_ring(M, make_group([2]), np.asarray(T))
    assert gr.tensor == T
    assert gr.mul((1, 0), (1,), (0, 1)) == (1, 0)


def test_rect_is_associative_and_matches_full_oracle():
    gr = rect12()
    assert validate_associativity(gr).verdict
    assert Oracle.of(gr).associative()


def test_perturbed_tensor_fails_with_witness():
    bad = perturbed_rect()
    rep = validate_associativity(bad)
    assert not rep.verdict
    i, j, k, l, m = rep.witnesses[0]["generators"]
    e, f = bad.m_group.gens(), bad.g_group.gens()
    assert bad.word(e[i], f[j], e[k], f[l], e[m]) != \
        bad.mul(e[i], f[j], bad.mul(e[k], f[l], e[m]))
    assert not Oracle.of(bad).associative()
    with pytest.raises(NotValidated):
        require_valid(bad)
    with pytest.raises(NotValidated):
        center(bad)


def test_product_and_commutator_examples():
    gr = rect12()
    assert product(gr, (1, 0), (1, 0), (0, 1)) == (0, 1)
    assert commutator(gr, (1, 0), (0, 1), (1, 0)) == (0, 1)
    for a in gr.m_group.elements():
        for al in gr.g_group.elements():
            assert commutator(gr, a, a, al) == (0, 0)
            assert product(gr, (0, 0), al, a) == (0, 0)
    assert commutator(z2(), (1,), (1,), (1,)) == (0,)


def _matmul_mod(*ms, q=2):
    out = ms[0]
    for m in ms[1:]:
        out = out @ m % q
    return out


def test_gamma_bracket_against_matrix_arithmetic():
    gr = rect12()
    a, c, b = np.array([[1, 0]]), np.array([[1, 1]]), np.array([[1, 0]])
    al, be = np.array([[1], [0]]), np.array([[0], [1]])
    expected = (_matmul_mod(a, al, c, be, b) - _matmul_mod(a, be, c, al, b)) % 2
    got = gamma_bracket(gr, (1, 0), (1, 0), (0, 1), (1, 1), (1, 0))
    assert got == tuple(expected.ravel()) == (1, 0)
    for x in gr.m_group.elements():
        for g in gr.g_group.elements():
            assert gamma_bracket(gr, x, g, g, (1, 1), (0, 1)) == (0, 0)


def test_gamma_bracket_vanishes_on_z2():
    gr = z2()
    for args in itertools.product([(0,), (1,)], repeat=5):
        assert gamma_bracket(gr, *args) == (0,)


@pytest.mark.parametrize("make", [z2, rect12])
def test_commutator_expansion_exhaustive(make):
    gr = make()
    M, G = gr.m_group.elements(), gr.g_group.elements()
    for a, b, c in itertools.product(M, repeat=3):
        for al, be in itertools.product(G, repeat=2):
            for side in ("left", "right"):
                assert commutator_expansion_residual(gr, side, a, b, c, al, be).is_zero


def test_commutator_expansion_detects_broken_instance():
    bad = perturbed_rect()
    M, G = bad.m_group.elements(), bad.g_group.elements()
    found = any(not commutator_expansion_residual(bad, side, a, b, c, al, be).is_zero
                for side in ("left", "right")
                for a, b, c in itertools.product(M, repeat=3)
                for al, be in itertools.product(G, repeat=2))
    assert found


def test_commutator_expansion_bad_side():
    with pytest.raises(ValueError):
        commutator_expansion_residual(z2(), "middle", (1,), (1,), (1,), (1,), (1,))


def test_product_table_matches_mul():
    gr = rect_matrix_instance(1, 2, 3)
    tb = ProductTable(gr)
    M, G = gr.m_group, gr.g_group
    for a, al, b in itertools.product(M.elements(), G.elements(), M.elements()):
        assert M.element(int(tb.prod[M.index(a), G.index(al), M.index(b)])) == gr.mul(a, al, b)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_triadditivity(seed):
    rng = random.Random(seed)
    gr = rect_matrix_instance(*rng.choice([(1, 2, 2), (2, 1, 3), (2, 2, 2), (1, 3, 2)]))
    M, G = gr.m_group, gr.g_group

    def rm():
        return tuple(rng.randrange(d) for d in M.moduli)

    def rg():
        return tuple(rng.randrange(d) for d in G.moduli)

    a, a2, b, b2 = rm(), rm(), rm(), rm()
    al, al2 = rg(), rg()
    mul = gr.mul
    assert mul(M.add(a, a2), al, b) == M.add(mul(a, al, b), mul(a2, al, b))
    assert mul(a, G.add(al, al2), b) == M.add(mul(a, al, b), mul(a, al2, b))
    assert mul(a, al, M.add(b, b2)) == M.add(mul(a, al, b), mul(a, al, b2))
    assert gr.comm(M.add(a, a2), b, al) == M.add(gr.comm(a, b, al), gr.comm(a2, b, al))
    assert gr.comm(a, b, G.add(al, al2)) == M.add(gr.comm(a, b, al), gr.comm(a, b, al2))


def test_triadditivity_exhaustive_small():
    gr = rect12()
    M, G = gr.m_group.elements(), gr.g_group.elements()
    add = gr.m_group.add
    for a, a2, b in itertools.product(M, repeat=3):
        for al in G:
            assert gr.mul(add(a, a2), al, b) == add(gr.mul(a, al, b), gr.mul(a2, al, b))
            assert gr.mul(b, al, add(a, a2)) == add(gr.mul(b, al, a), gr.mul(b, al, a2))
