from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C, T, elements
from qclutch import S, SSstar, one, tensor, u
from qclutch import hopf, suq
from qclutch.algebra import Element
from qclutch.matrix import AlgebraMatrix

Q = Fraction(1, 2)
al, als, ga, gas = suq.alpha(Q), suq.alpha_star(Q), suq.gamma(Q), suq.gamma_star(Q)
ONE = suq.suq_one(Q)


def rep_generators(levels=40, q=0.5):
    n = np.arange(levels)
    a = np.zeros((levels, levels))
    a[n[:-1], n[1:]] = np.sqrt(1 - q ** (2 * n[1:]))
    return a, np.diag(q ** n)


def test_circle_hopf_examples():
    assert hopf.circle_hopf(u(3), "coproduct") == tensor(u(3), u(3))
    assert hopf.circle_hopf(u(2), "antipode") * u(2) == one((C,))
    assert hopf.circle_hopf(u(-5), "counit") == Element.scalar((), 1)


def test_gauge_examples():
    assert hopf.gauge(tensor(S(), one((C,)))) == tensor(S(), u())
    x = tensor(S(), u())
    assert hopf.gauge_inv(hopf.gauge(x)) == x
    y = tensor(one() - SSstar(), u())
    assert hopf.gauge(y) == y


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(T, C), (T, T, C), (C, T, C)]).flatmap(elements))
def test_gauge_roundtrip(a):
    assert hopf.gauge_inv(hopf.gauge(a)) == a
    assert hopf.gauge(hopf.gauge_inv(a)) == a


def test_commutation_relation_and_representation():
    assert ga * al == (al * ga).scale(1 / Q)
    a, g = rep_generators()
    lhs, rhs = g @ a, (a @ g) / 0.5
    assert np.allclose(lhs[:-1, :-1], rhs[:-1, :-1])
    assert np.allclose(suq.represent_suq(ga * al, 30), lhs[:30, :30])


def test_unitarity_relation():
    assert als * al + gas * ga == ONE
    a, g = rep_generators()
    m = a.T @ a + g @ g
    assert np.allclose(m[:-1, :-1], np.eye(len(m) - 1))
    assert np.allclose(suq.represent_suq(als * al + gas * ga, 20), np.eye(20))


def test_gamma_commutes_with_its_adjoint():
    assert (al * ga) * gas == al * (ga * gas)
    assert ga * gas == gas * ga


def test_coproduct_examples():
    D = suq.suq_coproduct
    assert D(al) == tensor(al, al) - tensor(gas, ga).scale(Q)
    assert D(ga) == tensor(ga, al) + tensor(als, ga)
    assert suq.suq_counit(D(al), 0) == al


def test_antipode_counit_examples():
    assert suq.suq_antipode(al) == als
    assert suq.suq_antipode(ga) == ga.scale(-Q)
    assert suq.suq_counit(ga) == Element.zero(())
    assert suq.suq_counit(al) == Element.scalar((), 1)


def test_hopf_axioms_on_generators():
    for x in suq.generators(Q).values():
        D = suq.suq_coproduct(x)
        assert suq.suq_coproduct(D, 0) == suq.suq_coproduct(D, 1)
        assert suq.suq_counit(D, 1) == x
        eps = suq.suq_counit(x).coeff(())
        target = ONE.scale(eps) if eps else Element.zero(ONE.signature)
        assert hopf.multiply_legs(suq.suq_antipode(D, 0), 0, 1) == target
        assert hopf.multiply_legs(suq.suq_antipode(D, 1), 0, 1) == target


def test_fundamental_unitary():
    U = AlgebraMatrix(suq.fundamental_entries(Q))
    I2 = AlgebraMatrix.identity(2, U.space)
    assert U.adjoint() @ U == I2
    assert U @ U.adjoint() == I2
    assert hopf.check_comodule(suq.fundamental_entries(Q))


def test_pi_to_circle():
    assert suq.pi_to_circle(al) == u()
    assert suq.pi_to_circle(gas * ga).is_zero()
    assert suq.pi_to_circle(als * al + gas * ga) == one((C,))


def test_cleaving_product():
    sig = suq.suq_signature(Q)
    tail = one((C,)).tensor(Element.one(sig))
    for x in (al, ga, als, gas, ONE):
        assert hopf.cleaving_product(x) == x.tensor(tail)


def test_clutching_chi_examples():
    sig = suq.suq_signature(Q)
    b = Element.one(sig + (C,) + sig)
    triv = [[Element.one(sig)]]
    assert hopf.clutching_chi(b, 0, triv, hopf.gamma1_bar, hopf.gamma2_bar) == [b]
    circ = [[u()]]
    bc = u(2)
    ident = hopf.clutching_chi(bc, 0, circ, lambda x: x, lambda x: x, lambda x: hopf.circle_hopf(x, "antipode"))
    assert ident == [bc]
    R = suq.fundamental_entries(Q)
    tail = one((C,)).tensor(Element.one(sig))
    for i in range(2):
        comps = hopf.clutching_chi(b, i, R, hopf.gamma1_bar, hopf.gamma2_bar)
        assert comps == [R[i][j].tensor(tail) for j in range(2)]


def test_clutching_chi_rejects_bad_comodule():
    sig = suq.suq_signature(Q)
    with pytest.raises(ValueError):
        hopf.clutching_chi(Element.one(sig), 0, [[al]], hopf.gamma1_bar, hopf.gamma2_bar)


def test_cotensor_examples():
    assert hopf.cotensor_member(tensor(S(), u()), 1)
    assert not hopf.cotensor_member(tensor(S(), u(-1)), 1)
    assert hopf.cotensor_member(tensor(one(), one((C,))), 1)
    assert not hopf.cotensor_member(tensor(S(), one((C,))), 1)
