"""The path nu_t of circle functions, its Toeplitz lifts x_t, the invertible family V~_t
and the elementary projection reached at t = 1."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import polygamma

from .algebra import TOEPLITZ, Element, toeplitz_series
from .matrix import AlgebraMatrix
from .milnor import V_tilde_closed, idempotent_E
from .pullback import PullbackElement, make_diagram, pb_compat, unit_of
from .scalars import GaussianRational

T = TOEPLITZ
DEFAULT_THRESHOLD = 1e-4


@dataclass(frozen=True)
class HomotopyConfig:
    M: int = 32
    t_grid: tuple = field(default_factory=lambda: tuple(np.linspace(0.0, 1.0, 33)))
    singularity_threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if self.M < 4:
            raise ValueError("Fourier truncation order must be at least 4")
        grid = tuple(float(t) for t in self.t_grid)
        if not grid or min(grid) != 0.0 or max(grid) != 1.0:
            raise ValueError("t_grid must include both endpoints 0 and 1")
        if any(not 0.0 <= t <= 1.0 for t in grid):
            raise ValueError("t_grid must lie in [0, 1]")
        object.__setattr__(self, "t_grid", grid)

    @classmethod
    def uniform(cls, steps: int = 33, M: int = 32, threshold: float = DEFAULT_THRESHOLD):
        if steps < 2:
            raise ValueError("need at least two grid points")
        return cls(M, tuple(np.linspace(0.0, 1.0, steps)), threshold)


def _expm1_over(z: complex, threshold: float) -> complex:
    """(e^z - 1)/z, with a 4-term Taylor expansion near 0."""
    if abs(z) < threshold:
        return 1 + z / 2 + z * z / 6 + z**3 / 24
    return (cmath.exp(z) - 1) / z


def _check_t(t):
    if not 0 <= t <= 1:
        raise ValueError(f"t = {t} outside [0, 1]")


def fourier_coeff(k: int, t: float, threshold: float = DEFAULT_THRESHOLD) -> complex:
    """k-th Fourier coefficient of nu_t."""
    _check_t(t)
    if k == 0:
        return complex((1 - t) / 2)
    if k == -2:
        return 0.5 * _expm1_over(2j * math.pi * t, threshold)
    if k == -1:
        return _expm1_over(1j * math.pi * (t - 1), threshold)
    return 1j / (2 * math.pi) * (1 - cmath.exp(-1j * math.pi * k * (1 + t))) / (k * (k * (1 + t) / 2 + 1))


def fourier_coeff_exact(k: int, t) -> GaussianRational:
    """Exact value when it is rational (e.g. every k at t = 1); ValueError otherwise."""
    t = Fraction(t)
    _check_t(t)
    if k == 0:
        return GaussianRational((1 - t) / 2)
    if k == -2:
        if t == 0:
            return GaussianRational(Fraction(1, 2))
        if t.denominator == 1:
            return GaussianRational(0)
    elif k == -1:
        if t == 1:
            return GaussianRational(1)
    else:
        phase = k * (1 + t)
        if phase.denominator == 1 and phase.numerator % 2 == 0:
            return GaussianRational(0)
    raise ValueError(f"c_{k}({t}) is not rational")


def chi_t(s, t):
    return np.where((np.asarray(s) >= 0) & (np.asarray(s) <= (1 + t) / 2), 1, 0)


def nu_t(s, t):
    _check_t(t)
    return np.exp(-4j * np.pi * chi_t(s, t) * np.asarray(s) / (1 + t))


def coefficient_vector(t: float, M: int, threshold: float = DEFAULT_THRESHOLD) -> np.ndarray:
    """c_{-M}, ..., c_M at t."""
    return np.array([fourier_coeff(k, t, threshold) for k in range(-M, M + 1)])


def x_t(t, M: int = 32, exact: bool = False, threshold: float = DEFAULT_THRESHOLD) -> Element:
    """c_0 + sum_k c_k S^k + sum_k c_{-k} S*^k truncated at |k| <= M."""
    if exact:
        return toeplitz_series({k: fourier_coeff_exact(k, t) for k in range(-M, M + 1)})
    return toeplitz_series({k: fourier_coeff(k, t, threshold) for k in range(-M, M + 1)})


def y_t(t, M: int = 32, exact: bool = False, threshold: float = DEFAULT_THRESHOLD) -> Element:
    return x_t(t, M, exact, threshold).adjoint()


def V_tilde_family(t, M: int = 32, exact: bool = False, threshold: float = DEFAULT_THRESHOLD) -> tuple:
    """(V~_t, V~_t^-1) over T⊗T built from x_t and y_t = x_t*."""
    x = x_t(t, M, exact, threshold)
    return V_tilde_closed(x, x.adjoint())


def p_tilde_t(t, M: int = 32, exact: bool = False, threshold: float = DEFAULT_THRESHOLD,
              tol: float | None = None) -> AlgebraMatrix:
    """(diag(1, 0), V~_t diag(1, 0) V~_t^-1) as a 2x2 matrix over the CP2T pullback."""
    V, V_inv = V_tilde_family(t, M, exact, threshold)
    diagram = make_diagram("CP2T")
    second = V.submatrix(range(2), [0]) @ V_inv.submatrix([0], range(2))
    return AlgebraMatrix.from_components(diagram, idempotent_E(1, diagram.A1), second).checked(tol)


def final_projection() -> PullbackElement:
    """(1, SS*⊗1 + (1-SS*)⊗SS*) in the CP2T pullback."""
    diagram = make_diagram("CP2T")
    ss = Element.word((T,), ((1, 1),))
    one = Element.one((T,))
    second = ss.tensor(one) + (one - ss).tensor(ss)
    return PullbackElement(diagram, unit_of(diagram.A1), second).checked()


def tail_bound(M: int) -> float:
    """(6/pi) * sum_{|k| > M} 1/k^2."""
    if M < 4:
        raise ValueError("tail_bound needs M >= 4")
    return float(12 / math.pi * polygamma(1, M + 1))


def coefficient_bound(k: int) -> float:
    return 6 / (math.pi * k * k)


@dataclass
class ScanRow:
    t: float
    max_coeff_defect: float
    compat_defect: float
    tail_bound: float
    idempotent_defect: float | None = None

    def to_json(self) -> dict:
        out = {
            "t": self.t,
            "max_coeff_defect": self.max_coeff_defect,
            "compat_defect": self.compat_defect,
            "tail_bound": self.tail_bound,
        }
        if self.idempotent_defect is not None:
            out["idempotent_defect"] = self.idempotent_defect
        return out


def scan(config: HomotopyConfig | None = None, idempotent_at=()) -> list:
    """Per grid point: largest coefficient of V~V~^-1 - I, compatibility defect of p~_t, tail bound.

    p~_t^2 - p~_t is only expanded at the t values listed in ``idempotent_at`` (it is the costly part).
    """
    cfg = config or HomotopyConfig()
    tb = tail_bound(cfg.M)
    rows = []
    check_at = {float(t) for t in idempotent_at}
    I = AlgebraMatrix.identity(2, (T, T))
    diagram = make_diagram("CP2T")
    for t in cfg.t_grid:
        V, V_inv = V_tilde_family(t, cfg.M, threshold=cfg.singularity_threshold)
        inv_defect = max((V @ V_inv - I).max_coeff(), (V_inv @ V - I).max_coeff())
        second = V.submatrix(range(2), [0]) @ V_inv.submatrix([0], range(2))
        p = AlgebraMatrix.from_components(diagram, idempotent_E(1, diagram.A1), second)
        compat = max(pb_compat(x, tol=math.inf).defect for r in p.entries for x in r)
        idem = None
        if t in check_at:
            idem = (second @ second - second).max_coeff()
        rows.append(ScanRow(float(t), float(inv_defect), float(compat), tb, idem))
    return rows


def continuity_constants(config: HomotopyConfig | None = None) -> list:
    """max_k |c_k(t) - c_k(t')| / |t - t'| on adjacent grid points."""
    cfg = config or HomotopyConfig()
    grid = cfg.t_grid
    vecs = [coefficient_vector(t, 2 * cfg.M, cfg.singularity_threshold) for t in grid]
    return [float(np.max(np.abs(b - a)) / (t2 - t1)) for a, b, t1, t2 in zip(vecs, vecs[1:], grid, grid[1:])]
