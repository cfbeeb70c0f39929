import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import T
from qclutch import SSstar, Sstar, one, tensor
from qclutch.algebra import Element
from qclutch.homotopy import (
    HomotopyConfig,
    V_tilde_family,
    chi_t,
    coefficient_bound,
    continuity_constants,
    final_projection,
    fourier_coeff,
    fourier_coeff_exact,
    nu_t,
    p_tilde_t,
    scan,
    tail_bound,
    x_t,
    y_t,
)
from qclutch.matrix import AlgebraMatrix
from qclutch.numeric import TruncationConfig, represent, spec_norm_rank_trace
from qclutch.pullback import CompatStatus, pb_compat

TT = (T, T)

# c_1(0) worked out by hand from the piecewise definition of nu_0
C1_AT_0 = 2j / (3 * math.pi)


def midpoint_coeff(k, t, n=400_000):
    """Composite midpoint rule, split at the jump; a check independent of the closed form."""
    cut = (1 + t) / 2
    total = 0j
    for a, b in ((0.0, cut), (cut, 1.0)):
        if b <= a:
            continue
        s = a + (np.arange(n) + 0.5) * (b - a) / n
        total += np.sum(nu_t(s, t) * np.exp(-2j * np.pi * k * s)) * (b - a) / n
    return complex(total)


def test_coefficient_examples():
    assert fourier_coeff(0, 0.5) == pytest.approx(0.25)
    assert fourier_coeff(-2, 0.0) == pytest.approx(0.5)
    assert fourier_coeff(1, 0.0) == pytest.approx(C1_AT_0, abs=1e-15)
    assert midpoint_coeff(1, 0.0) == pytest.approx(C1_AT_0, abs=1e-9)


@pytest.mark.parametrize("t", [0.0, 0.3, 0.77, 1.0])
def test_closed_form_vs_midpoint(t):
    for k in range(-5, 6):
        assert fourier_coeff(k, t) == pytest.approx(midpoint_coeff(k, t), abs=1e-9)


def test_singular_points_are_continuous():
    for k in (-2, -1):
        for t0 in (0.0, 1.0):
            t = t0 + (1e-7 if t0 == 0 else -1e-7)
            assert fourier_coeff(k, t) == pytest.approx(fourier_coeff(k, t0), abs=1e-5)


def test_nu_examples():
    assert nu_t(0.9, 0.5) == 1
    assert nu_t(0.25, 0.0) == pytest.approx(-1)
    s = np.linspace(0, 1, 17)
    assert np.allclose(nu_t(s, 1.0), np.exp(-2j * np.pi * s))
    assert list(chi_t([0.0, 0.5, 0.6], 0.0)) == [1, 1, 0]
    with pytest.raises(ValueError):
        nu_t(0.1, 1.5)


def test_x_t_examples():
    assert x_t(1, 8, exact=True) == Sstar()
    assert x_t(0.0, 8).coeff(((0, 0),)) == pytest.approx(0.5)
    assert y_t(0.3, 8) == x_t(0.3, 8).adjoint()


def test_exact_coefficients():
    assert fourier_coeff_exact(-1, 1) == 1
    assert all(fourier_coeff_exact(k, 1) == 0 for k in range(-10, 11) if k != -1)
    with pytest.raises(ValueError):
        fourier_coeff_exact(1, 0)


def test_x_t_norm_below_bound():
    cfg = TruncationConfig(N=64, M_rep=2, margin=0)
    for t in (0.0, 0.37, 0.9):
        x = x_t(t, 32)
        assert spec_norm_rank_trace(represent(x, cfg))[0] <= x.norm_bound()


def test_V_tilde_family():
    V, Vi = V_tilde_family(1, 8, exact=True)
    assert V[1, 1] == tensor(SSstar(), one()) + tensor(one() - SSstar(), Sstar())
    I = AlgebraMatrix.identity(2, TT)
    assert V @ Vi == I
    top = V[0, 0] * Vi[0, 0]
    assert top == tensor(SSstar(), one()) + tensor(one() - SSstar(), SSstar())
    V, Vi = V_tilde_family(0.37, 32)
    assert (V @ Vi - I).max_coeff() <= 1e-12


def test_final_projection():
    p = final_projection()
    assert p * p == p and p.adjoint() == p
    assert p.status is CompatStatus.EXACT
    rest = one(TT) - p.a2
    for N in (2, 4, 8):
        assert spec_norm_rank_trace(represent(rest, TruncationConfig(N=N, M_rep=2, margin=0)))[1] == 1


def test_p_tilde_endpoint():
    p = p_tilde_t(1, 8, exact=True)
    assert p.compat_defect() == 0
    assert p @ p == p


def test_p_tilde_float_idempotent():
    p = p_tilde_t(0.5, 16, tol=math.inf)
    assert (p.component(2) @ p.component(2) - p.component(2)).max_coeff() <= 1e-12
    assert p.compat_defect(tol=math.inf) <= 2 * tail_bound(16)


def test_bound_example():
    assert abs(fourier_coeff(5, 0.3)) <= 6 / (25 * math.pi)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 500) | st.integers(-500, -3), st.floats(0, 1))
def test_coefficient_bound(k, t):
    assert abs(fourier_coeff(k, t)) <= coefficient_bound(k) * (1 + 1e-12)


def test_tail_bound():
    for M in (4, 8, 16, 100, 1000):
        assert tail_bound(M) <= 12 / (math.pi * M)
        direct = 12 / math.pi * (sum(1 / k**2 for k in range(M + 1, 200_000)) + 1 / 199_999.5)
        assert tail_bound(M) == pytest.approx(direct, rel=1e-6)
    vals = [tail_bound(M) for M in range(4, 200)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        tail_bound(3)


def test_config_validation():
    with pytest.raises(ValueError):
        HomotopyConfig(M=3)
    with pytest.raises(ValueError):
        HomotopyConfig(t_grid=(0.0, 0.5))
    assert len(HomotopyConfig().t_grid) == 33


def test_scan_rows():
    rows = scan(HomotopyConfig.uniform(5, 16), idempotent_at=(0.5,))
    assert [r.t for r in rows] == [0, 0.25, 0.5, 0.75, 1.0]
    assert all(r.max_coeff_defect <= 1e-12 for r in rows)
    assert all(r.compat_defect <= 2 * r.tail_bound for r in rows)
    assert rows[2].idempotent_defect <= 1e-12 and rows[0].idempotent_defect is None
    assert rows[-1].compat_defect <= 1e-15


def test_continuity_stable_under_refinement():
    coarse = max(continuity_constants(HomotopyConfig.uniform(9, 16)))
    fine = max(continuity_constants(HomotopyConfig.uniform(17, 16)))
    assert fine <= 1.5 * coarse


@settings(max_examples=10, deadline=None)
@given(st.floats(0, 1))
def test_similarity_preserves_trace(t):
    from qclutch.milnor import idempotent_E

    cfg = TruncationConfig(N=6, M_rep=2, margin=0)
    V, _ = V_tilde_family(t, 8)
    R = represent(V, cfg)
    E = represent(idempotent_E(1, TT), cfg)
    conj = R @ E @ np.linalg.inv(R)
    assert np.trace(conj) == pytest.approx(np.trace(E), abs=1e-8)
