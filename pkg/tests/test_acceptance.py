"""Acceptance criteria, one test each. Every test records a single PASS/FAIL line with its measurements."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, C, T
from qclutch import S, SSstar, Sstar, one, tensor
from qclutch import hopf, suq
from qclutch.algebra import Element, random_element
from qclutch.homotopy import (
    V_tilde_family,
    coefficient_bound,
    final_projection,
    fourier_coeff,
    nu_t,
    tail_bound,
    x_t,
)
from qclutch.matrix import AlgebraMatrix
from qclutch.milnor import (
    boundary_01,
    clutching_matrices,
    exp_Q_closed,
    idempotent_E,
    lifts_cd,
    loring_grid_defects,
    loring_lift_Q,
    milnor_idempotent,
    reduce_pU,
)
from qclutch.numeric import TruncationConfig, herm_exp, interior_compress, quadrature_fourier, represent, spec_norm_rank_trace
from qclutch.pullback import CompatStatus, PullbackElement, make_diagram, pb_compat, unit_of, zero_of

TT = (T, T)


def record(num, ok, detail, elapsed):
    line = f"C{num:02d} {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.1f} s]"
    ACCEPTANCE_LINES.append(line)
    print(line)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c01_exact_algebra_laws():
    rng = np.random.default_rng(1)
    bad = 0
    with Timer() as tm:
        for i in range(200):
            sig = ((T, C), (T, T))[i % 2]
            a, b, c = (random_element(rng, sig) for _ in range(3))
            bad += (a * b) * c != a * (b * c)
            bad += (a * b).adjoint() != b.adjoint() * a.adjoint()
            bad += a.adjoint().adjoint() != a
            bad += (a * b).symbol_map(0) != a.symbol_map(0) * b.symbol_map(0)
            bad += a.adjoint().symbol_map(0) != a.symbol_map(0).adjoint()
    ok = bad == 0 and tm.elapsed < 5
    record(1, ok, f"exact algebra laws: 200 cases, {bad} failures", tm.elapsed)
    assert ok


def test_c02_milnor_ring_identities():
    rng = np.random.default_rng(2)
    bad = []
    with Timer() as tm:
        for n in (1, 2):
            c = AlgebraMatrix([[random_element(rng, TT, 2, 2) for _ in range(n)] for _ in range(n)], TT)
            d = AlgebraMatrix([[random_element(rng, TT, 2, 2) for _ in range(n)] for _ in range(n)], TT)
            V, Vi = clutching_matrices(c, d)
            I = AlgebraMatrix.identity(2 * n, TT)
            p = milnor_idempotent(c, d, None)
            if not (V @ Vi == I and Vi @ V == I and p @ p == p):
                bad.append(n)
        c, d = lifts_cd(M=32)
        V, Vi = clutching_matrices(c, d)
        I = AlgebraMatrix.identity(4, TT)
        p = milnor_idempotent(c, d, None)
        roundoff = max((V @ Vi - I).max_coeff(), (Vi @ V - I).max_coeff(), (p @ p - p).max_coeff())
    ok = not bad and roundoff <= 1e-12 and tm.elapsed < 30
    record(2, ok, f"random c,d exact failures {bad}; lifts at M=32 roundoff {roundoff:.2e} (<= 1e-12)", tm.elapsed)
    assert ok


def test_c03_fourier_closed_forms():
    with Timer() as tm:
        quad = 0.0
        for t in (0.0, 0.25, 0.5, 0.75, 1.0):
            for k in range(-12, 13):
                ref = quadrature_fourier(lambda s: complex(nu_t(s, t)), k, breakpoints=((1 + t) / 2,))
                quad = max(quad, abs(fourier_coeff(k, t) - ref))
        ratio = 0.0
        M = 32
        for t in np.linspace(0, 1, 33):
            for k in range(-2 * M, 2 * M + 1):
                if abs(k) >= 3:
                    ratio = max(ratio, abs(fourier_coeff(k, float(t))) / coefficient_bound(k))
        endpoint = max(abs(fourier_coeff(k, 1.0) - (k == -1)) for k in range(-2 * M, 2 * M + 1))
        x1 = x_t(1, M, exact=True)
        x1_ok = x1 == Sstar() and len(x1) == 1
    ok = quad <= 1e-8 and ratio <= 1 and endpoint <= 1e-12 and x1_ok
    record(3, ok, f"quadrature gap {quad:.2e} (<= 1e-8), max |c_k|/bound {ratio:.3f} (<= 1), "
                  f"endpoint {endpoint:.1e} (<= 1e-12), x1 = S* exact: {x1_ok}", tm.elapsed)
    assert ok


def test_c04_endpoint_algebra():
    with Timer() as tm:
        V, Vi = V_tilde_family(1, 32, exact=True)
        I = AlgebraMatrix.identity(2, TT)
        inv_ok = V @ Vi == I and Vi @ V == I
        conj = V @ idempotent_E(1, TT) @ Vi
        target = tensor(SSstar(), one()) + tensor(one() - SSstar(), SSstar())
        top_ok = conj[0, 0] == target and conj.exact
    ok = inv_ok and top_ok
    record(4, ok, f"V~1 V~1^-1 = I exact: {inv_ok}; top-left = SS*⊗1 + (1-SS*)⊗SS* exact: {top_ok}", tm.elapsed)
    assert ok


def test_c05_final_projection():
    with Timer() as tm:
        p = final_projection()
        proj_ok = p == p.adjoint() and p * p == p
        compat = pb_compat(p).status is CompatStatus.EXACT
        rest = one(TT) - p.a2
        ranks = [spec_norm_rank_trace(represent(rest, TruncationConfig(N=N, M_rep=2, margin=0)))[1] for N in (2, 4, 8)]
    ok = proj_ok and compat and ranks == [1, 1, 1]
    record(5, ok, f"p = p* = p²: {proj_ok}; exact compatibility: {compat}; rank(1 - p) for N=2,4,8: {ranks}", tm.elapsed)
    assert ok


def test_c06_exponential_closed_form():
    gaps = []
    with Timer() as tm:
        for M in (48, 96, 192):
            cfg = TruncationConfig(N=3, M_rep=M, margin=8, toeplitz_margin=1)
            D = herm_exp(represent(loring_lift_Q(M), cfg)) - represent(exp_Q_closed(M), cfg)
            gaps.append(float(np.linalg.norm(interior_compress(D, cfg, (T, C), blocks=2), 2)))
    thr = 2 * tail_bound(192)
    mono = all(b < a for a, b in zip(gaps, gaps[1:]))
    ok = mono and gaps[-1] <= thr and tm.elapsed < 120
    record(6, ok, "interior gap at M_rep 48/96/192: " + ", ".join(f"{g:.3e}" for g in gaps)
           + f"; decreasing: {mono}; final <= {thr:.3e}", tm.elapsed)
    assert ok


def test_c07_compat_defect_scaling():
    defects = []
    with Timer() as tm:
        for M in (16, 32, 64):
            p = milnor_idempotent(*lifts_cd(M=M), tol=math.inf)
            defects.append(p.compat_defect(tol=math.inf))
    ratios = [b / a for a, b in zip(defects, defects[1:])]
    bounded = all(d <= 2 * tail_bound(M) for d, M in zip(defects, (16, 32, 64)))
    halves = all(abs(r - 0.5) <= 0.2 for r in ratios)
    ok = bounded and halves
    record(7, ok, "defect at M=16/32/64: " + ", ".join(f"{d:.3e}" for d in defects)
           + "; ratios " + ", ".join(f"{r:.3f}" for r in ratios) + f" (0.5 ± 0.2: {halves}); <= 2·tail_bound: {bounded}",
           tm.elapsed)
    assert ok


def test_c08_loring_projection():
    with Timer() as tm:
        d = loring_grid_defects(64)
    worst = max(d["idempotent"], d["selfadjoint"])
    ok = worst <= 1e-12 and d["trace"] <= 1e-12
    record(8, ok, f"64×64 grid: |β²-β| {d['idempotent']:.1e}, |β-β*| {d['selfadjoint']:.1e}, |tr β - 1| {d['trace']:.1e}",
           tm.elapsed)
    assert ok


def test_c09_hopf_suite():
    q = Fraction(1, 2)
    rng = np.random.default_rng(9)
    fails = []
    with Timer() as tm:
        U = AlgebraMatrix(suq.fundamental_entries(q))
        I2 = AlgebraMatrix.identity(2, U.space)
        if not (U.adjoint() @ U == I2 and U @ U.adjoint() == I2):
            fails.append("unitary")
        unit = suq.suq_one(q)
        sig = suq.suq_signature(q)
        tail = one((C,)).tensor(Element.one(sig))
        for name, x in suq.generators(q).items():
            D = suq.suq_coproduct(x)
            eps = suq.suq_counit(x).coeff(())
            target = unit.scale(eps) if eps else Element.zero(unit.signature)
            if suq.suq_coproduct(D, 0) != suq.suq_coproduct(D, 1):
                fails.append(f"coassoc {name}")
            if suq.suq_counit(D, 0) != x or suq.suq_counit(D, 1) != x:
                fails.append(f"counit {name}")
            if hopf.multiply_legs(suq.suq_antipode(D, 0), 0, 1) != target:
                fails.append(f"antipode {name}")
            if hopf.multiply_legs(suq.suq_antipode(D, 1), 0, 1) != target:
                fails.append(f"antipode' {name}")
            if hopf.cleaving_product(x) != x.tensor(tail):
                fails.append(f"cleaving {name}")
        for i in range(100):
            sig_i = ((T, C), (T, T, C), (C, T, C))[i % 3]
            a = random_element(rng, sig_i, terms=1)
            if hopf.gauge_inv(hopf.gauge(a)) != a or hopf.gauge(hopf.gauge_inv(a)) != a:
                fails.append(f"gauge {i}")
    ok = not fails
    record(9, ok, f"unitarity, Hopf axioms, s⊗1⊗1 on 4 generators, 100 gauge roundtrips: failures {fails}", tm.elapsed)
    assert ok


def test_c10_end_to_end():
    with Timer() as tm:
        M = 48
        cfg = TruncationConfig(N=3, M_rep=M, margin=8, toeplitz_margin=1)
        bp = boundary_01(loring_lift_Q(M), cfg, closed_form=exp_Q_closed(M))
        boundary_ok = bp.defect <= 2 * tail_bound(M)
        # the lift d at t = 0 has symbol X = SS*⊗1 + (1-SS*)⊗nu, the nontrivial entry of the boundary
        c0, d0 = lifts_cd(M=32)
        X = exp_Q_closed(32)[0, 0]
        sym_ok = d0[0, 0].symbol_map(1).allclose(X, 1e-15)
        # homotopy endpoint: x_1 = S* exactly, then Milnor idempotent and block reduction
        c, d = lifts_cd(x_t(1, 32, exact=True))
        p = milnor_idempotent(c, d)
        red = reduce_pU(p)
        diagram = make_diagram("CP2T")
        expected = AlgebraMatrix([[final_projection(), zero_of(diagram)], [zero_of(diagram), zero_of(diagram)]], diagram)
        final_ok = red.p_tilde == expected and red.p_tilde.exact and red.stripped_rank == 1
    ok = boundary_ok and sym_ok and final_ok and tm.elapsed < 60
    record(10, ok, f"boundary gap {bp.defect:.3e} (<= {2 * tail_bound(M):.3e}); lift symbol matches: {sym_ok}; "
                   f"reduced p_U at t=1 = diag(p, 0) exact after permutation {red.permutation}: {final_ok}", tm.elapsed)
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
