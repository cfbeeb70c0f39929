import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import C, T, elements
from qclutch import S, SSstar, Sstar, one, tensor, u
from qclutch.algebra import Element, random_element
from qclutch.homotopy import tail_bound, x_t
from qclutch.matrix import AlgebraMatrix, ShapeError
from qclutch.milnor import (
    V_tilde_closed,
    V_tilde_generic,
    boundary_01,
    clutching_matrices,
    exp_Q_closed,
    idempotent_E,
    lift_entry,
    lifts_cd,
    loring_beta,
    loring_f,
    loring_fourier,
    loring_g,
    loring_grid_defects,
    loring_h,
    loring_lift_Q,
    loring_symbol_defect,
    milnor_idempotent,
    milnor_second_leg,
    reduce_pU,
    reduction_permutation,
)
from qclutch.numeric import TruncationConfig, represent
from qclutch.pullback import CompatStatus, make_diagram, unit_of, zero_of

TT = (T, T)
P = one() - SSstar()


def random_cd(rng, n):
    def m():
        return AlgebraMatrix([[random_element(rng, TT, 2, 2) for _ in range(n)] for _ in range(n)], TT)

    return m(), m()


def test_trivial_clutching():
    I1 = AlgebraMatrix.identity(1, TT)
    V, Vi = clutching_matrices(I1, I1)
    assert V == AlgebraMatrix.identity(2, TT) and Vi == V
    d = make_diagram("CP2T")
    p = milnor_idempotent(I1, I1)
    zero = zero_of(d)
    assert p == AlgebraMatrix.diag([unit_of(d), zero], d)


def test_trivial_reduction_rank_one():
    I2 = AlgebraMatrix.identity(2, TT)
    red = reduce_pU(milnor_idempotent(I2, I2))
    d = make_diagram("CP2T")
    assert red.p_tilde == AlgebraMatrix.diag([unit_of(d), zero_of(d)], d)
    assert red.stripped_rank == 1


@pytest.mark.parametrize("n", [1, 2])
def test_random_ring_identities(rng, n):
    c, d = random_cd(rng, n)
    V, Vi = clutching_matrices(c, d)
    I = AlgebraMatrix.identity(2 * n, TT)
    assert V @ Vi == I and Vi @ V == I
    p = milnor_idempotent(c, d, None)
    assert p @ p == p
    assert p == milnor_second_leg(c, d)


def test_shape_errors():
    with pytest.raises(ShapeError):
        clutching_matrices(AlgebraMatrix.identity(1, TT), AlgebraMatrix.identity(2, TT))
    with pytest.raises(ShapeError):
        milnor_idempotent(AlgebraMatrix.identity(1, (T, C)), AlgebraMatrix.identity(1, (T, C)))


def test_lifted_products_match_display(rng):
    x = random_element(rng, (T,), 2, 2)
    y = x.adjoint()
    c, d = lifts_cd(x)
    assert c == d.adjoint()
    dc = d @ c
    ss1 = tensor(SSstar(), one())
    assert dc[0, 0] == ss1 + tensor(P, x * y)
    top = c @ (AlgebraMatrix.identity(2, TT).scale(2) - dc)
    assert top[0, 0] == ss1 + tensor(P, y.scale(2) - y * x * y)
    assert top[1, 1] == one(TT)
    assert (AlgebraMatrix.identity(2, TT) - dc)[1, 1].is_zero()


def test_V_entries_match_display(rng):
    c, d = random_cd(rng, 1)
    V, Vi = clutching_matrices(c, d)
    cc, dd = c[0, 0], d[0, 0]
    o = one(TT)
    assert V[0, 0] == cc * (o.scale(2) - dd * cc)
    assert V[0, 1] == cc * dd - o
    assert V[1, 0] == o - dd * cc
    assert V[1, 1] == dd
    assert Vi[0, 0] == dd and Vi[1, 1] == V[0, 0]


def test_reduction_permutation_is_involution_for_two():
    perm = reduction_permutation(2)
    assert perm == [0, 2, 1, 3]
    assert [perm[i] for i in perm] == [0, 1, 2, 3]


def test_reduction_matches_V_tilde(rng):
    x = random_element(rng, (T,), 2, 1)
    p = milnor_idempotent(*lifts_cd(x))
    red = reduce_pU(p)
    Vt, Vti = V_tilde_closed(x)
    second = Vt.submatrix([0, 1], [0]) @ Vti.submatrix([0], [0, 1])
    assert red.p_tilde.component(2) == second
    assert red.p_tilde @ red.p_tilde == red.p_tilde
    assert red.stripped_rank == 1


def test_V_tilde_closed_equals_generic(rng):
    x = random_element(rng, (T,), 2, 2)
    c, d = lift_entry(x.adjoint()), lift_entry(x)
    closed = V_tilde_closed(x)
    generic = V_tilde_generic(c, d)
    assert closed[0] == generic[0] and closed[1] == generic[1]


@settings(max_examples=15, deadline=None)
@given(elements((T,), 2))
def test_V_tilde_inverse(x):
    V, Vi = V_tilde_closed(x)
    I = AlgebraMatrix.identity(2, TT)
    assert V @ Vi == I and Vi @ V == I


def test_lift_ring_identities_float():
    c, d = lifts_cd(M=32)
    V, Vi = clutching_matrices(c, d)
    I = AlgebraMatrix.identity(4, TT)
    assert (V @ Vi - I).max_coeff() <= 1e-12
    p = milnor_idempotent(c, d, None)
    assert (p @ p - p).max_coeff() <= 1e-12


def test_d_second_entry_and_symbol():
    c, d = lifts_cd(M=32)
    assert d[1, 1] == one(TT)
    # symbol on the second factor sends SS* ⊗ 1 + (1 - SS*) ⊗ x to the truncated nu series
    from qclutch.milnor import nu_series

    sym = d[0, 0].symbol_map(1)
    expect = tensor(SSstar(), one((C,))) + tensor(P, nu_series(32))
    assert sym.allclose(expect, 1e-15)


def test_compat_defect_within_tail_bound():
    for M in (8, 16):
        p = milnor_idempotent(*lifts_cd(M=M), tol=math.inf)
        assert p.compat_defect(tol=math.inf) <= 2 * tail_bound(M)


def test_loring_f_values():
    assert loring_f(0) == 1 and loring_f(0.5) == 0 and loring_f(0.75) == 0.5


def test_loring_beta_pointwise():
    d = loring_grid_defects(64)
    assert max(d.values()) <= 1e-12
    # where g = h = 0 only f in {0, 1} gives an idempotent
    B = loring_beta(0.3, 0.0)
    assert np.allclose(B @ B, B)
    diag = np.diag([0.3, 0.7])
    assert not np.allclose(diag @ diag, diag)


def test_loring_g_h_supports():
    s = np.linspace(0, 1, 101)
    assert np.all(loring_h(s[s > 0.5]) == 0)
    assert np.all(loring_g(s[(s > 0) & (s < 0.5)]) == 0)


@pytest.mark.parametrize("name,fn", [("f", loring_f), ("g", loring_g), ("h", loring_h)])
def test_loring_fourier_against_quadrature(name, fn):
    from qclutch.numeric import quadrature_fourier

    for k in range(-6, 7):
        ref = quadrature_fourier(lambda s: complex(fn(s)), k, breakpoints=(0.5,))
        assert loring_fourier(name, k) == pytest.approx(ref, abs=1e-9)


def test_loring_lift_Q():
    from qclutch.algebra import circle_series

    Q = loring_lift_Q(16)
    f16 = circle_series({k: loring_fourier("f", k) for k in range(-16, 17)})
    assert Q[0, 0] == tensor(one(), f16)
    assert Q.distance(Q.adjoint()) == 0
    assert loring_symbol_defect(32) <= tail_bound(32)


def test_exp_Q_closed_entries():
    E = exp_Q_closed(16)
    assert E[1, 1] == one((T, C))
    assert E[0, 1].is_zero()
    assert E[0, 0].symbol_map(0) == Element.one((C, C))


def test_boundary_examples():
    cfg = TruncationConfig(N=4, M_rep=4, margin=1)
    z = AlgebraMatrix.zeros(2, 2, (T, C))
    bp = boundary_01(z, cfg)
    assert np.allclose(bp.exponential, np.eye(bp.exponential.shape[0]))
    assert bp.legs[0] == AlgebraMatrix.identity(2, (T, C))
    k = AlgebraMatrix.diag([tensor(P, Element.one((C,)))] * 2, (T, C))
    assert np.allclose(boundary_01(k, cfg).exponential, np.eye(2 * 4 * 9), atol=1e-12)
    flipped = boundary_01(z, cfg, ordering="exponential-first")
    assert isinstance(flipped.legs[0], np.ndarray)
    with pytest.raises(ValueError):
        boundary_01(z, cfg, ordering="sideways")
    with pytest.raises(ValueError):
        boundary_01(AlgebraMatrix([[tensor(S(), Element.one((C,)))]], (T, C)), cfg)


def test_boundary_of_Q():
    M = 48
    cfg = TruncationConfig(N=3, M_rep=M, margin=8, toeplitz_margin=1)
    bp = boundary_01(loring_lift_Q(M), cfg, closed_form=exp_Q_closed(M))
    assert bp.defect <= 2 * tail_bound(M)


def test_matrix_json_roundtrip(rng):
    c, d = random_cd(rng, 1)
    p = milnor_idempotent(c, d)
    back = AlgebraMatrix.from_json(p.to_json())
    assert back == p
    assert AlgebraMatrix.from_json(c.to_json()) == c
