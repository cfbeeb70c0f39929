"""Verification suites: named checks grouped by subsystem, run into a structured report."""

from __future__ import annotations

import datetime as _dt
import io
import json
import math
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import hopf, suq
from .algebra import CIRCLE, TOEPLITZ, Element, random_element
from .homotopy import (
    HomotopyConfig,
    V_tilde_family,
    coefficient_bound,
    continuity_constants,
    final_projection,
    fourier_coeff,
    nu_t,
    scan,
    tail_bound,
    x_t,
)
from .matrix import AlgebraMatrix
from .milnor import (
    clutching_matrices,
    exp_Q_closed,
    idempotent_E,
    lifts_cd,
    loring_grid_defects,
    loring_lift_Q,
    loring_symbol_defect,
    milnor_idempotent,
    milnor_second_leg,
    reduce_pU,
)
from .numeric import (
    TruncationConfig,
    herm_exp,
    interior_compress,
    quadrature_fourier,
    represent,
    spec_norm_rank_trace,
)
from .pullback import (
    Diagram,
    PullbackElement,
    alpha_by_gauge,
    beta_by_gauge,
    chi_by_gauge,
    Omega_by_gauge,
    make_diagram,
    named_morphism,
    pb_compat,
    registered_diagrams,
    registered_morphisms,
    same_space,
    unit_of,
    values_equal,
)

T = TOEPLITZ
C = CIRCLE

SCHEMA = "qclutch-report/1"
SUITES = ("algebra-laws", "hopf", "pullback", "milnor", "homotopy", "numeric-exp", "end-to-end")
ALL_SUITES = SUITES + ("full",)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    trunc_n: int = 64
    fourier_m: int = 32
    t_steps: int = 33
    margin: int = 8
    tol: float = 1e-10
    scalar: str = "float"
    q: str = "1/2"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.scalar not in ("exact", "float"):
            raise ConfigError("scalar mode is exact or float")
        if self.fourier_m < 4:
            raise ConfigError("--fourier-m must be at least 4")
        if self.t_steps < 2:
            raise ConfigError("--t-steps must be at least 2")
        if self.trunc_n < 2:
            raise ConfigError("--trunc-n must be at least 2")
        if self.margin < 0:
            raise ConfigError("--margin must be non-negative")
        if not self.tol > 0:
            raise ConfigError("--tol must be positive")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        try:
            q = Fraction(self.q)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"--q must be a fraction P/Q: {exc}") from exc
        if not 0 < abs(q) <= 1:
            raise ConfigError("--q must satisfy 0 < |q| <= 1")

    @property
    def q_value(self) -> Fraction:
        return Fraction(self.q)

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])


@dataclass
class CheckResult:
    name: str
    suite: str
    status: str
    mode: str
    defect: float | None
    threshold: float | None
    anchor: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Report:
    suite: str
    config: dict
    checks: list
    wall_time: float
    timestamp: str

    @property
    def failed(self) -> bool:
        return any(c.status == "FAIL" for c in self.checks)

    def summary(self) -> dict:
        out = {"PASS": 0, "FAIL": 0, "SKIP": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "config": self.config,
            "summary": self.summary(),
            "checks": [c.to_json() for c in self.checks],
            "timestamp": {"utc": self.timestamp, "wall_time_s": self.wall_time},
        }


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    mode: str  # EXACT or FLOAT
    anchor: str
    fn: Callable

    def run(self, cfg: SuiteConfig) -> CheckResult:
        if cfg.scalar == "exact" and self.mode == "FLOAT":
            return CheckResult(self.name, self.suite, "SKIP", self.mode, None, None, self.anchor,
                               {"reason": "float check in exact mode"})
        try:
            ok, defect, threshold, detail = self.fn(cfg, cfg.rng(self.name))
        except Exception as exc:  # a crashing check is a failing check
            return CheckResult(self.name, self.suite, "FAIL", self.mode, None, None, self.anchor,
                               {"error": f"{type(exc).__name__}: {exc}"})
        return CheckResult(self.name, self.suite, "PASS" if ok else "FAIL", self.mode,
                           None if defect is None else float(defect),
                           None if threshold is None else float(threshold), self.anchor, detail or {})


_CHECKS: list = []


def check(name: str, suite: str, mode: str, anchor: str):
    def deco(fn):
        _CHECKS.append(Check(name, suite, mode, anchor, fn))
        return fn

    return deco


def _exact_result(failures: list, total: int):
    return (not failures, len(failures), 0, {"cases": total, "failures": failures[:5]})


# algebra-laws

_SIGS = ((T, C), (T, T))


@check("algebra.associativity", "algebra-laws", "EXACT", "(ab)c = a(bc)")
def _assoc(cfg, rng):
    bad = []
    for i in range(200):
        sig = _SIGS[i % 2]
        a, b, c = (random_element(rng, sig) for _ in range(3))
        if (a * b) * c != a * (b * c):
            bad.append(i)
    return _exact_result(bad, 200)


@check("algebra.adjoint", "algebra-laws", "EXACT", "(ab)* = b* a*, a** = a")
def _adjoint(cfg, rng):
    bad = []
    for i in range(200):
        sig = _SIGS[i % 2]
        a, b = random_element(rng, sig), random_element(rng, sig)
        if (a * b).adjoint() != b.adjoint() * a.adjoint() or a.adjoint().adjoint() != a:
            bad.append(i)
    return _exact_result(bad, 200)


@check("algebra.symbol_homomorphism", "algebra-laws", "EXACT", "σ(ab) = σ(a)σ(b), σ(a*) = σ(a)*")
def _symbol(cfg, rng):
    bad = []
    for i in range(200):
        a, b = random_element(rng, (T, C)), random_element(rng, (T, C))
        if (a * b).symbol_map(0) != a.symbol_map(0) * b.symbol_map(0):
            bad.append(i)
        elif a.adjoint().symbol_map(0) != a.symbol_map(0).adjoint():
            bad.append(i)
    return _exact_result(bad, 200)


@check("algebra.isometry", "algebra-laws", "EXACT", "S*S = 1, 1 - SS* ≠ 0 with σ(1 - SS*) = 0")
def _isometry(cfg, rng):
    S = Element.word((T,), ((1, 0),))
    one = Element.one((T,))
    proj = one - S * S.adjoint()
    ok = S.adjoint() * S == one and not proj.is_zero() and proj.symbol_map(0).is_zero() and proj * proj == proj
    return ok, 0 if ok else 1, 0, {}


@check("algebra.weight_grading", "algebra-laws", "EXACT", "weight(ab) = weight(a) + weight(b) on words")
def _grading(cfg, rng):
    bad = []
    for i in range(200):
        a, b = random_element(rng, (T, C), terms=1), random_element(rng, (T, C), terms=1)
        for k in (a * b).weights():
            if k not in {x + y for x in a.weights() for y in b.weights()}:
                bad.append(i)
    return _exact_result(bad, 200)


# hopf


def _q(cfg):
    return cfg.q_value


@check("hopf.fundamental_unitary", "hopf", "EXACT", "U*U = UU* = I₂ for U = [[α, -qγ*], [γ, α*]]")
def _unitary(cfg, rng):
    q = _q(cfg)
    U = AlgebraMatrix(suq.fundamental_entries(q))
    I = AlgebraMatrix.identity(2, U.space)
    ok = U.adjoint() @ U == I and U @ U.adjoint() == I
    return ok, 0 if ok else 1, 0, {"q": str(q)}


@check("hopf.axioms", "hopf", "EXACT", "coassociativity, counit and antipode laws on α, α*, γ, γ*")
def _axioms(cfg, rng):
    q = _q(cfg)
    bad = []
    one = suq.suq_one(q)
    for name, x in suq.generators(q).items():
        D = suq.suq_coproduct(x)
        if suq.suq_coproduct(D, 0) != suq.suq_coproduct(D, 1):
            bad.append(f"{name}:coassoc")
        if suq.suq_counit(D, 0) != x or suq.suq_counit(D, 1) != x:
            bad.append(f"{name}:counit")
        eps = suq.suq_counit(x).coeff(())
        target = one.scale(eps) if eps else Element.zero(one.signature)
        if hopf.multiply_legs(suq.suq_antipode(D, 0), 0, 1) != target:
            bad.append(f"{name}:S*id")
        if hopf.multiply_legs(suq.suq_antipode(D, 1), 0, 1) != target:
            bad.append(f"{name}:id*S")
    return _exact_result(bad, 4)


@check("hopf.comodule", "hopf", "EXACT", "ΔU_ij = Σ_k U_ik ⊗ U_kj, ε(U_ij) = δ_ij")
def _comodule(cfg, rng):
    ok = hopf.check_comodule(suq.fundamental_entries(_q(cfg)))
    return ok, 0 if ok else 1, 0, {}


@check("hopf.cleaving_product", "hopf", "EXACT", "γ̄₁(s₍₁₎) γ̄₂⁻¹(s₍₂₎) = s ⊗ 1 ⊗ 1 on generators")
def _cleaving(cfg, rng):
    q = _q(cfg)
    bad = []
    sig = suq.suq_signature(q)
    for name, x in suq.generators(q).items():
        expect = x.tensor(Element.one((C,))).tensor(Element.one(sig))
        if hopf.cleaving_product(x) != expect:
            bad.append(name)
    return _exact_result(bad, 4)


@check("hopf.clutching_fundamental", "hopf", "EXACT", "χ(1 ⊗ e_i) = Σ_j (U_ij ⊗ 1 ⊗ 1) ⊗ e_j")
def _clutch(cfg, rng):
    q = _q(cfg)
    R = suq.fundamental_entries(q)
    sig = suq.suq_signature(q)
    b = Element.one(sig + (C,) + sig)
    bad = []
    for i in range(2):
        comps = hopf.clutching_chi(b, i, R, hopf.gamma1_bar, hopf.gamma2_bar)
        for j in range(2):
            if comps[j] != R[i][j].tensor(Element.one((C,))).tensor(Element.one(sig)):
                bad.append((i, j))
    return _exact_result(bad, 4)


@check("hopf.gauge_roundtrip", "hopf", "EXACT", "g⁻¹(g(a)) = a = g(g⁻¹(a)) on 100 words")
def _gauge(cfg, rng):
    bad = []
    for i in range(100):
        sig = ((T, C), (T, T, C), (C, T, C))[i % 3]
        a = random_element(rng, sig, terms=1)
        if hopf.gauge_inv(hopf.gauge(a)) != a or hopf.gauge(hopf.gauge_inv(a)) != a:
            bad.append(i)
    return _exact_result(bad, 100)


@check("hopf.cotensor_examples", "hopf", "EXACT", "S⊗u ∈ M□N, S⊗u⁻¹ ∉, S⊗1 ∉")
def _cotensor(cfg, rng):
    S = Element.word((T,), ((1, 0),))
    got = [hopf.cotensor_member(S.tensor(Element.word((C,), (k,))), 1) for k in (1, -1, 0)]
    ok = got == [True, False, False]
    return ok, 0 if ok else 1, 0, {"got": got}


# pullback


def _leg_homomorphism(leg, xs):
    bad = 0
    for x in xs:
        for y in xs:
            if not values_equal(leg(x * y), leg(x) * leg(y)):
                bad += 1
        if not values_equal(leg(x.adjoint()), leg(x).adjoint()):
            bad += 1
    return bad


def _samples_for(space, rng, count):
    if isinstance(space, Diagram):
        return space.samples(rng, count)
    return [random_element(rng, space, terms=2, max_deg=2) for _ in range(count)]


@check("pullback.diagram_samples", "pullback", "EXACT", "π₁(a₁) = π₂(a₂) on sampled elements of every diagram")
def _pb_samples(cfg, rng):
    bad = []
    total = 0
    for d in registered_diagrams():
        for s in d.samples(rng, 6):
            total += 1
            if pb_compat(s).status.value != "EXACT":
                bad.append(d.name)
    return _exact_result(bad, total)


@check("pullback.legs_homomorphism", "pullback", "EXACT", "legs are unital *-homomorphisms")
def _pb_legs(cfg, rng):
    bad = []
    for d in registered_diagrams():
        for leg, space in ((d.pi1, d.A1), (d.pi2, d.A2)):
            xs = _samples_for(space, rng, 4)
            if _leg_homomorphism(leg, xs) or not values_equal(leg(unit_of(space)), unit_of(d.A12)):
                bad.append(f"{d.name}:{leg.name}")
    return _exact_result(bad, 2 * len(registered_diagrams()))


@check("pullback.morphisms_homomorphism", "pullback", "EXACT",
       "every registered algebra map is multiplicative, unital and *-preserving on 100 random pairs")
def _pb_morphisms(cfg, rng):
    bad = []
    skipped = []
    for key, m in sorted(registered_morphisms().items()):
        if isinstance(m.source, Diagram) and m.source.sampler is None:
            skipped.append(key)
            continue
        pairs = 0
        fails = 0
        while pairs < 100:
            xs = _samples_for(m.source, rng, 2)
            x, y = xs[0], xs[1]
            pairs += 1
            if not values_equal(m(x * y), m(x) * m(y)) or not values_equal(m(x.adjoint()), m(x).adjoint()):
                fails += 1
        if fails or not values_equal(m(unit_of(m.source)), unit_of(m.target)):
            bad.append(key)
    return (not bad, len(bad), 0, {"failures": bad, "unsampled": skipped})


@check("pullback.h_roundtrip", "pullback", "EXACT", "h⁻¹∘h = id on P2 samples, h∘h⁻¹ = id on the gauged presentation")
def _pb_h(cfg, rng):
    h, hi = named_morphism("h"), named_morphism("h_inv")
    bad = [i for i, s in enumerate(make_diagram("P2").samples(rng, 20)) if hi(h(s)) != s]
    bad += [i for i, s in enumerate(make_diagram("S3H-heegaard").samples(rng, 20)) if h(hi(s)) != s]
    return _exact_result(bad, 40)


@check("pullback.gauge_dual_routes", "pullback", "EXACT",
       "g∘φ∘g⁻¹ equals the closed forms of α, β, χ, Ω")
def _pb_dual(cfg, rng):
    bad = []
    beta, Omega, chi, alpha = (named_morphism(n) for n in ("beta", "Omega", "chi", "alpha"))
    for s in make_diagram("SUq2^R").samples(rng, 20):
        if beta(s) != beta_by_gauge(s):
            bad.append("beta")
        if Omega(s) != Omega_by_gauge(s):
            bad.append("Omega")
    for s in make_diagram("(S3H⊗T)^R").samples(rng, 20):
        if chi(s) != chi_by_gauge(s):
            bad.append("chi")
        for comp in (s.a1, s.a2):
            if alpha(comp) != alpha_by_gauge(comp):
                bad.append("alpha")
    return _exact_result(bad, 100)


@check("pullback.large_diagram", "pullback", "EXACT", "(id⊗σ)∘(ω⊗1_T) = (ω⊗id)∘(id⊗1_C)")
def _pb_large(cfg, rng):
    lhs = [named_morphism("id⊗σ[S3H⊗T]"), named_morphism("omega⊗1_T")]
    rhs = [named_morphism("(omega)⊗id"), named_morphism("id⊗1")]
    bad = []
    for i, s in enumerate(make_diagram("SUq2").samples(rng, 30)):
        if lhs[0](lhs[1](s)) != rhs[0](rhs[1](s)):
            bad.append(i)
    return _exact_result(bad, 30)


@check("pullback.gamma_hat", "pullback", "EXACT", "γ̂ = h∘γ and γ̂(S⊗1) = (1⊗u, S⊗u)")
def _pb_gamma_hat(cfg, rng):
    gh, g, h = named_morphism("gamma_hat"), named_morphism("gamma"), named_morphism("h")
    bad = []
    for i in range(50):
        y = random_element(rng, (T, T))
        if gh(y) != h(g(y)) or pb_compat(gh(y)).status.value != "EXACT":
            bad.append(i)
    S1 = Element.word((T, T), ((1, 0), (0, 0)))
    img = gh(S1)
    if img.a1 != Element.word((T, C), ((0, 0), 1)) or img.a2 != Element.word((T, C), ((1, 0), 1)):
        bad.append("S⊗1")
    return _exact_result(bad, 51)


@check("pullback.induced_f", "pullback", "EXACT", "f: P5 → S5H preserves compatibility and units")
def _pb_induced(cfg, rng):
    f = named_morphism("f")
    bad = [i for i, s in enumerate(make_diagram("P5").samples(rng, 10)) if f(s).status.value != "EXACT"]
    if f(unit_of(make_diagram("P5"))) != unit_of(make_diagram("S5H")):
        bad.append("unit")
    return _exact_result(bad, 11)


# milnor


def _random_cd(rng, n):
    sig = (T, T)
    c = AlgebraMatrix([[random_element(rng, sig, terms=2, max_deg=2) for _ in range(n)] for _ in range(n)], sig)
    d = AlgebraMatrix([[random_element(rng, sig, terms=2, max_deg=2) for _ in range(n)] for _ in range(n)], sig)
    return c, d


@check("milnor.ring_identities_random", "milnor", "EXACT", "VV⁻¹ = V⁻¹V = I and p_U² = p_U for any c, d")
def _ml_random(cfg, rng):
    bad = []
    for n in (1, 2):
        for trial in range(2 if n == 1 else 1):
            c, d = _random_cd(rng, n)
            V, Vi = clutching_matrices(c, d)
            I = AlgebraMatrix.identity(2 * n, c.space)
            p = milnor_idempotent(c, d, None)
            if V @ Vi != I or Vi @ V != I:
                bad.append(f"n={n}:inverse")
            if p @ p != p:
                bad.append(f"n={n}:idempotent")
            if p != milnor_second_leg(c, d):
                bad.append(f"n={n}:expanded")
    return _exact_result(bad, 3)


@check("milnor.trivial_clutching", "milnor", "EXACT", "c = d = 1 gives V = I and p_U = diag((1,1), (0,0))")
def _ml_trivial(cfg, rng):
    sig = (T, T)
    one = AlgebraMatrix.identity(1, sig)
    V, _ = clutching_matrices(one, one)
    p = milnor_idempotent(one, one)
    d = make_diagram("CP2T")
    expect = AlgebraMatrix.diag([unit_of(d), PullbackElement(d, unit_of(d.A1).scale(0), Element.zero(sig))], d)
    red = reduce_pU(p)
    ok = V == AlgebraMatrix.identity(2, sig) and p == expect and red.stripped_rank == 0
    return ok, 0 if ok else 1, 0, {}


@check("milnor.lift_ring_identities", "milnor", "FLOAT", "VV⁻¹ = I and p_U² = p_U for the truncated lifts")
def _ml_lift(cfg, rng):
    c, d = lifts_cd(M=cfg.fourier_m)
    V, Vi = clutching_matrices(c, d)
    I = AlgebraMatrix.identity(4, c.space)
    p = milnor_idempotent(c, d, None)
    defect = max((V @ Vi - I).max_coeff(), (Vi @ V - I).max_coeff(), (p @ p - p).max_coeff())
    return defect <= 1e-12, defect, 1e-12, {"M": cfg.fourier_m}


@check("milnor.compat_defect", "milnor", "FLOAT", "compatibility defect of p_U ≤ 2·tail_bound(M)")
def _ml_compat(cfg, rng):
    M = cfg.fourier_m
    c, d = lifts_cd(M=M)
    p = milnor_idempotent(c, d, tol=math.inf)
    defect = p.compat_defect(tol=math.inf)
    thr = 2 * tail_bound(M)
    return defect <= thr, defect, thr, {"M": M}


@check("milnor.compat_scaling", "milnor", "FLOAT",
       "compatibility defect of p_U halves (ratio 0.5 ± 0.2) as M doubles across 16, 32, 64")
def _ml_scaling(cfg, rng):
    Ms = (16, 32, 64)
    defects = [milnor_idempotent(*lifts_cd(M=M), tol=math.inf).compat_defect(tol=math.inf) for M in Ms]
    ratios = [b / a for a, b in zip(defects, defects[1:])]
    worst = max(abs(r - 0.5) for r in ratios)
    return worst <= 0.2, worst, 0.2, {"M": list(Ms), "defects": defects, "ratios": ratios}


@check("milnor.loring_grid", "milnor", "FLOAT", "β² = β = β*, tr β = 1 on a 64×64 grid")
def _ml_loring(cfg, rng):
    d = loring_grid_defects(64)
    worst = max(d.values())
    return worst <= 1e-12, worst, 1e-12, d


@check("milnor.loring_symbol", "milnor", "FLOAT", "sup |β - σ(Q_M)| ≤ tail_bound(M)")
def _ml_symbol(cfg, rng):
    M = cfg.fourier_m
    defect = loring_symbol_defect(M)
    return defect <= tail_bound(M), defect, tail_bound(M), {"M": M}


# homotopy


@check("homotopy.coefficient_bound", "homotopy", "FLOAT", "|c_k(t)| ≤ 6/(πk²) for 3 ≤ |k| ≤ 2M")
def _ht_bound(cfg, rng):
    M = cfg.fourier_m
    worst = 0.0
    for t in np.linspace(0, 1, cfg.t_steps):
        for k in range(-2 * M, 2 * M + 1):
            if abs(k) >= 3:
                worst = max(worst, abs(fourier_coeff(k, float(t))) / coefficient_bound(k))
    return worst <= 1.0, worst, 1.0, {"ratio": "max |c_k| / bound"}


@check("homotopy.endpoint_coefficients", "homotopy", "FLOAT", "c_k(1) = δ_{k,-1}")
def _ht_end(cfg, rng):
    M = cfg.fourier_m
    defect = max(abs(fourier_coeff(k, 1.0) - (1 if k == -1 else 0)) for k in range(-2 * M, 2 * M + 1))
    return defect <= 1e-12, defect, 1e-12, {}


@check("homotopy.quadrature", "homotopy", "FLOAT", "closed-form c_k(t) vs adaptive quadrature of ν_t")
def _ht_quad(cfg, rng):
    worst = 0.0
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        for k in range(-12, 13):
            val = quadrature_fourier(lambda s: complex(nu_t(s, t)), k, breakpoints=((1 + t) / 2,))
            worst = max(worst, abs(val - fourier_coeff(k, t)))
    return worst <= 1e-8, worst, 1e-8, {}


@check("homotopy.x1_exact", "homotopy", "EXACT", "x₁ = S*")
def _ht_x1(cfg, rng):
    ok = x_t(1, cfg.fourier_m, exact=True) == Element.word((T,), ((0, 1),))
    return ok, 0 if ok else 1, 0, {}


@check("homotopy.endpoint_V", "homotopy", "EXACT", "V~₁V~₁⁻¹ = I, top-left of V~₁EV~₁⁻¹ = SS*⊗1 + (1-SS*)⊗SS*")
def _ht_V1(cfg, rng):
    V, Vi = V_tilde_family(1, cfg.fourier_m, exact=True)
    I = AlgebraMatrix.identity(2, (T, T))
    top = (V.submatrix([0], [0]) @ Vi.submatrix([0], [0]))[0, 0]
    ss = Element.word((T,), ((1, 1),))
    one = Element.one((T,))
    ok = V @ Vi == I and Vi @ V == I and top == ss.tensor(one) + (one - ss).tensor(ss)
    return ok, 0 if ok else 1, 0, {}


@check("homotopy.final_projection", "homotopy", "EXACT", "p = p* = p², exact compatibility")
def _ht_final(cfg, rng):
    p = final_projection()
    ok = p == p.adjoint() and p * p == p and p.status.value == "EXACT"
    return ok, 0 if ok else 1, 0, {}


@check("homotopy.final_rank", "homotopy", "FLOAT", "rank of 1 - p (second leg) is 1 in N-level sections, N ∈ {2, 4, 8}")
def _ht_rank(cfg, rng):
    q = final_projection()
    rest = Element.one((T, T)) - q.a2
    ranks = [spec_norm_rank_trace(represent(rest, TruncationConfig(N=n, M_rep=2, margin=0)), cfg.tol)[1]
             for n in (2, 4, 8)]
    return ranks == [1, 1, 1], max(abs(r - 1) for r in ranks), 0, {"ranks": ranks}


@check("homotopy.continuity", "homotopy", "FLOAT", "max_k |c_k(t) - c_k(t')| / |t - t'| stays bounded under refinement")
def _ht_cont(cfg, rng):
    coarse = max(continuity_constants(HomotopyConfig.uniform(cfg.t_steps, cfg.fourier_m)))
    fine = max(continuity_constants(HomotopyConfig.uniform(2 * cfg.t_steps - 1, cfg.fourier_m)))
    return fine <= 1.5 * coarse, fine, 1.5 * coarse, {"coarse": coarse, "fine": fine}


def _homotopy_grid(cfg) -> list:
    hc = HomotopyConfig.uniform(cfg.t_steps, cfg.fourier_m)
    thr = 2 * tail_bound(cfg.fourier_m)
    out = []
    for i, row in enumerate(scan(hc)):
        ok = row.max_coeff_defect <= 1e-12 and row.compat_defect <= thr
        out.append(CheckResult(f"homotopy.grid[{i:03d}]", "homotopy", "PASS" if ok else "FAIL", "FLOAT",
                               row.compat_defect, thr, "p~_t compatibility defect ≤ 2·tail_bound(M), V~_tV~_t⁻¹ = I",
                               row.to_json()))
    return out


# numeric-exp


@check("numeric.herm_exp_unitarity", "numeric-exp", "FLOAT", "‖E*E - I‖ ≤ 1e-10 for random Hermitian inputs")
def _nx_unit(cfg, rng):
    worst = 0.0
    for n in (1, 8, 64, 256):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        A = (A + A.conj().T) / 2
        E = herm_exp(A)
        worst = max(worst, float(np.linalg.norm(E.conj().T @ E - np.eye(n), 2)))
    return worst <= 1e-10, worst, 1e-10, {}


@check("numeric.representation_interior", "numeric-exp", "FLOAT",
       "finite sections multiply exactly on the interior for words of degree < margin")
def _nx_rep(cfg, rng):
    margin = max(1, cfg.margin)
    deg = max(0, (margin - 1) // 2)
    worst = 0.0
    cases = (
        ((T,), TruncationConfig(N=cfg.trunc_n, M_rep=cfg.fourier_m, margin=min(margin, (cfg.trunc_n - 1) // 2),
                                toeplitz_margin=min(margin, (cfg.trunc_n - 1) // 2))),
        ((C,), TruncationConfig(N=cfg.trunc_n, M_rep=cfg.fourier_m, margin=min(margin, (cfg.fourier_m - 1) // 2),
                                toeplitz_margin=0)),
        ((T, C), TruncationConfig(N=4 * margin, M_rep=4 * margin, margin=margin)),
    )
    for sig, tc in cases:
        for _ in range(20):
            a = random_element(rng, sig, terms=2, max_deg=deg)
            b = random_element(rng, sig, terms=2, max_deg=deg)
            D = represent(a * b, tc) - represent(a, tc) @ represent(b, tc)
            worst = max(worst, float(np.max(np.abs(interior_compress(D, tc, sig)), initial=0.0)))
    return worst <= 1e-12, worst, 1e-12, {"margin": margin}


@check("numeric.norm_vs_bound", "numeric-exp", "FLOAT", "‖x_t‖ in an N-level section ≤ Σ|coefficients|")
def _nx_norm(cfg, rng):
    tc = TruncationConfig(N=cfg.trunc_n, M_rep=cfg.fourier_m, margin=0)
    worst = 0.0
    for t in (0.0, 0.37, 1.0):
        x = x_t(t, cfg.fourier_m)
        norm, _, _ = spec_norm_rank_trace(represent(x, tc))
        worst = max(worst, norm / x.norm_bound())
    return worst <= 1 + 1e-12, worst, 1 + 1e-12, {"N": cfg.trunc_n}


def exp_convergence(margin: int = 8, sizes=(48, 96, 192), N: int = 3, toeplitz_margin: int = 1) -> list:
    """Interior spectral-norm gap between exp(2πiQ) computed numerically and its closed form."""
    out = []
    for M in sizes:
        tc = TruncationConfig(N=N, M_rep=M, margin=margin, toeplitz_margin=toeplitz_margin)
        Q = loring_lift_Q(M)
        D = herm_exp(represent(Q, tc)) - represent(exp_Q_closed(M), tc)
        D = interior_compress(D, tc, (T, C), blocks=2)
        out.append((M, float(np.linalg.norm(D, 2))))
    return out


@check("numeric.exp_convergence", "numeric-exp", "FLOAT",
       "interior gap between exp(2πiQ) and its closed form decreases as M_rep doubles")
def _nx_conv(cfg, rng):
    rows = exp_convergence(margin=cfg.margin)
    vals = [v for _, v in rows]
    thr = 2 * tail_bound(rows[-1][0])
    ok = all(b < a for a, b in zip(vals, vals[1:])) and vals[-1] <= thr
    return ok, vals[-1], thr, {"scan": rows}


# end-to-end


@check("e2e.boundary_stage", "end-to-end", "FLOAT",
       "∂₀₁ of the Loring lift: exp(2πiQ) matches its closed form; lifted p_U compatible within 2·tail_bound")
def _e2e_float(cfg, rng):
    M = 48
    tc = TruncationConfig(N=3, M_rep=M, margin=min(cfg.margin, 8), toeplitz_margin=1)
    from .milnor import boundary_01

    bp = boundary_01(loring_lift_Q(M), tc, closed_form=exp_Q_closed(M))
    c, d = lifts_cd(M=cfg.fourier_m)
    p = milnor_idempotent(c, d, tol=math.inf)
    compat = p.compat_defect(tol=math.inf)
    thr = 2 * tail_bound(cfg.fourier_m)
    exp_thr = 2 * tail_bound(M)
    ok = bp.defect <= exp_thr and compat <= thr
    return ok, compat, thr, {"exp_gap": bp.defect, "exp_threshold": exp_thr}


def endpoint_pipeline(M: int = 32):
    """Lifts from x₁, Milnor idempotent, block reduction; returns (reduction, expected)."""
    x1 = x_t(1, M, exact=True)
    c, d = lifts_cd(x1)
    p = milnor_idempotent(c, d)
    red = reduce_pU(p)
    diagram = make_diagram("CP2T")
    fp = final_projection()
    zero = PullbackElement(diagram, unit_of(diagram.A1).scale(0), Element.zero((T, T)))
    expected = AlgebraMatrix([[fp, zero], [zero, zero]], diagram)
    return red, expected


@check("e2e.endpoint_pipeline", "end-to-end", "EXACT",
       "reduce(p_U at t = 1) = diag(p, 0) with p = (1, SS*⊗1 + (1-SS*)⊗SS*)")
def _e2e_exact(cfg, rng):
    red, expected = endpoint_pipeline(cfg.fourier_m)
    ok = red.p_tilde == expected and red.stripped_rank == 1
    return ok, 0 if ok else 1, 0, {"permutation": red.permutation, "stripped_rank": red.stripped_rank}


# running


def checks_for(suite: str) -> list:
    if suite not in ALL_SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(ALL_SUITES)}")
    if suite == "full":
        return list(_CHECKS)
    return [c for c in _CHECKS if c.suite == suite]


def run_suite(name: str, config: SuiteConfig | None = None) -> Report:
    cfg = config or SuiteConfig()
    checks = checks_for(name)
    start = time.perf_counter()
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        results = list(pool.map(lambda c: c.run(cfg), checks))
    if name in ("homotopy", "full"):
        if cfg.scalar == "exact":
            results.append(CheckResult("homotopy.grid", "homotopy", "SKIP", "FLOAT", None, None,
                                       "p~_t grid scan", {"reason": "float check in exact mode"}))
        else:
            try:
                results.extend(_homotopy_grid(cfg))
            except Exception as exc:
                results.append(CheckResult("homotopy.grid", "homotopy", "FAIL", "FLOAT", None, None,
                                           "p~_t grid scan", {"error": f"{type(exc).__name__}: {exc}"}))
    results.sort(key=lambda r: r.name)
    return Report(name, asdict(cfg), results, round(time.perf_counter() - start, 3), stamp)


def report_json(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n"


def _fmt(x) -> str:
    return "" if x is None else f"{x:.3e}"


def report_markdown(report: Report) -> str:
    buf = io.StringIO()
    s = report.summary()
    buf.write(f"# Verification report: {report.suite}\n\n")
    buf.write(f"PASS {s['PASS']} / FAIL {s['FAIL']} / SKIP {s['SKIP']}, wall time {report.wall_time:.1f} s\n")
    suites = sorted({c.suite for c in report.checks}, key=lambda x: SUITES.index(x) if x in SUITES else 99)
    for suite in suites:
        buf.write(f"\n## {suite}\n\n| check | status | mode | defect | threshold | identity |\n|---|---|---|---|---|---|\n")
        for c in report.checks:
            if c.suite == suite:
                anchor = c.anchor.replace("|", "\\|")
                buf.write(f"| {c.name} | {c.status} | {c.mode} | {_fmt(c.defect)} | {_fmt(c.threshold)} | {anchor} |\n")
    return buf.getvalue()


def emit_report(report: Report, fmt: str = "json", out=None) -> str:
    """Render the report; write it to ``out`` (path) when given. Returns the text."""
    if fmt == "json":
        text = report_json(report)
    elif fmt == "md":
        text = report_markdown(report)
    else:
        raise ConfigError(f"unknown report format {fmt!r}")
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
