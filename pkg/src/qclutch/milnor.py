"""Milnor clutching at the level of representatives: idempotents, clutching matrices,
the Loring projection on the 2-torus, its Toeplitz lift and the block reduction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import j1

from .algebra import CIRCLE, TOEPLITZ, Element, circle_series
from .matrix import AlgebraMatrix, ShapeError
from .pullback import Diagram, PullbackElement, make_diagram, unit_of, zero_of

T = TOEPLITZ
C = CIRCLE


def _unit(space):
    return unit_of(space)


def _check_square_pair(c: AlgebraMatrix, d: AlgebraMatrix):
    if c.rows != c.cols or d.rows != d.cols or c.shape != d.shape:
        raise ShapeError(f"c and d must be square of equal size, got {c.shape} and {d.shape}")
    if c.space != d.space:
        raise ShapeError("c and d live over different algebras")


def clutching_matrices(c: AlgebraMatrix, d: AlgebraMatrix) -> tuple:
    """V = [[c(2-dc), cd-1], [1-dc, d]] and its inverse [[d, 1-dc], [cd-1, c(2-dc)]]."""
    _check_square_pair(c, d)
    n = c.rows
    I = AlgebraMatrix.identity(n, c.space)
    dc = d @ c
    cd = c @ d
    top = c @ (I.scale(2) - dc)
    V = AlgebraMatrix.blocks([[top, cd - I], [I - dc, d]])
    V_inv = AlgebraMatrix.blocks([[d, I - dc], [cd - I, top]])
    return V, V_inv


def idempotent_E(n: int, space) -> AlgebraMatrix:
    """diag(I_n, 0_n)."""
    return AlgebraMatrix.diag([_unit(space)] * n + [zero_of(space)] * n, space)


def conjugated_idempotent(V: AlgebraMatrix, V_inv: AlgebraMatrix, n: int) -> AlgebraMatrix:
    """V diag(I_n, 0) V^-1, using only the first n columns / rows."""
    return V.submatrix(range(V.rows), range(n)) @ V_inv.submatrix(range(n), range(V_inv.cols))


def milnor_second_leg(c: AlgebraMatrix, d: AlgebraMatrix) -> AlgebraMatrix:
    """Expanded form [[c(2-dc)d, c(2-dc)(1-dc)], [(1-dc)d, (1-dc)^2]]."""
    _check_square_pair(c, d)
    I = AlgebraMatrix.identity(c.rows, c.space)
    dc = d @ c
    a = c @ (I.scale(2) - dc)
    b = I - dc
    return AlgebraMatrix.blocks([[a @ d, a @ b], [b @ d, b @ b]])


def milnor_idempotent(c: AlgebraMatrix, d: AlgebraMatrix, diagram: Diagram | str | None = "CP2T",
                      tol: float | None = None) -> AlgebraMatrix:
    """p_U = (diag(I,0), V diag(I,0) V^-1) over ``diagram``; with diagram=None only the second leg."""
    _check_square_pair(c, d)
    n = c.rows
    V, V_inv = clutching_matrices(c, d)
    second = conjugated_idempotent(V, V_inv, n)
    if diagram is None:
        return second
    if isinstance(diagram, str):
        diagram = make_diagram(diagram)
    if c.space != diagram.A2:
        raise ShapeError("c, d must live over the second node of the diagram")
    first = idempotent_E(n, diagram.A1)
    return AlgebraMatrix.from_components(diagram, first, second).checked(tol)


# lifts of X = SS*⊗1 + (1-SS*)⊗nu


def lift_entry(x: Element) -> Element:
    """SS*⊗1 + (1-SS*)⊗x on T⊗T for x in T."""
    if x.signature != (T,):
        raise ShapeError("the lifted function must be a single Toeplitz element")
    ss = Element.word((T,), ((1, 1),))
    proj = Element.one((T,)) - ss
    return ss.tensor(Element.one((T,))) + proj.tensor(x)


def lifts_cd(x: Element | None = None, M: int = 32) -> tuple:
    """(c, d) = (diag(lift(x*), 1), diag(lift(x), 1)); x defaults to the truncated lift of nu."""
    if x is None:
        from .homotopy import x_t

        x = x_t(0.0, M)
    sig = (T, T)
    one = Element.one(sig)
    d = AlgebraMatrix.diag([lift_entry(x), one], sig)
    c = AlgebraMatrix.diag([lift_entry(x.adjoint()), one], sig)
    return c, d


# reduction by a permutation of rows and columns


def reduction_permutation(n: int) -> list:
    """Brings row/column n next to row/column 0: [0, n, 1, ..., n-1, n+1, ..., 2n-1]."""
    return [0, n] + [i for i in range(1, 2 * n) if i != n]


@dataclass
class Reduction:
    p_tilde: AlgebraMatrix
    stripped_rank: int
    permutation: list
    permuted: AlgebraMatrix


def reduce_pU(p: AlgebraMatrix, tol: float | None = None) -> Reduction:
    """Split p_U (built from c = diag(c~, I), d = diag(d~, I)) into p~ (2x2) plus a free summand of rank n-1."""
    if p.rows != p.cols or p.rows % 2:
        raise ShapeError("p_U must be square of even size")
    n = p.rows // 2
    perm = reduction_permutation(n)
    q = p.conjugate_by_permutation(perm)
    space = p.space
    k = 2 * n - 2
    rest_expected = AlgebraMatrix.diag([_unit(space)] * (n - 1) + [zero_of(space)] * (n - 1), space) if k else None

    def close(a, b):
        if tol is None and a.exact and b.exact:
            return a == b
        return a.distance(b) <= (1e-12 if tol is None else tol)

    if k:
        off1 = q.submatrix(range(2), range(2, 2 * n))
        off2 = q.submatrix(range(2, 2 * n), range(2))
        rest = q.submatrix(range(2, 2 * n), range(2, 2 * n))
        if not (close(off1, AlgebraMatrix.zeros(2, k, space)) and close(off2, AlgebraMatrix.zeros(k, 2, space))):
            raise ShapeError("p_U is not block diagonal after the permutation")
        if not close(rest, rest_expected):
            raise ShapeError("lower block is not the expected free summand diag(I, 0)")
    return Reduction(q.submatrix(range(2), range(2)), n - 1, perm, q)


def V_tilde_closed(x: Element, y: Element | None = None) -> tuple:
    """SS*⊗I + (1-SS*)⊗[[y(2-xy), yx-1], [1-xy, x]] and the matching inverse, over T⊗T."""
    if y is None:
        y = x.adjoint()
    one = Element.one((T,))
    xy = x * y
    yx = y * x
    y2 = y * (one.scale(2) - xy)
    blocks = [[y2, yx - one], [one - xy, x]]
    inv_blocks = [[x, one - xy], [yx - one, y2]]
    ss = Element.word((T,), ((1, 1),))
    proj = one - ss

    def assemble(bl):
        rows = []
        for i in range(2):
            row = []
            for j in range(2):
                e = proj.tensor(bl[i][j])
                if i == j:
                    e = e + ss.tensor(one)
                row.append(e)
            rows.append(row)
        return AlgebraMatrix(rows, (T, T))

    return assemble(blocks), assemble(inv_blocks)


def V_tilde_generic(c_t: Element, d_t: Element) -> tuple:
    """[[c(2-dc), cd-1], [1-dc, d]] for scalars-as-1x1 blocks c~, d~."""
    return clutching_matrices(AlgebraMatrix([[c_t]]), AlgebraMatrix([[d_t]]))


# Loring projection on the torus


def loring_f(s):
    s = np.mod(s, 1.0)
    return np.abs(1.0 - 2.0 * s)


def _semicircle(s):
    f = loring_f(s)
    return np.sqrt(np.clip(f - f * f, 0.0, None))


def loring_h(s):
    """Supported on [0, 1/2]; pairs with u so that the exponential is nontrivial there."""
    s = np.mod(s, 1.0)
    return np.where(s <= 0.5, _semicircle(s), 0.0)


def loring_g(s):
    s = np.mod(s, 1.0)
    return np.where(s >= 0.5, _semicircle(s), 0.0)


def loring_beta(s1, s2) -> np.ndarray:
    """2x2 value at (s1, s2); u = exp(2 pi i s1) on the first circle, f, g, h of s2."""
    u = np.exp(2j * np.pi * s1)
    f, g, h = loring_f(s2), loring_g(s2), loring_h(s2)
    return np.array([[f, g + u * h], [g + np.conj(u) * h, 1.0 - f]], dtype=complex)


def loring_grid_defects(n: int = 64) -> dict:
    """Max of |b^2 - b|, |b - b*|, |tr b - 1| over an n x n grid of the torus."""
    s = np.arange(n) / n
    s1, s2 = np.meshgrid(s, s, indexing="ij")
    u = np.exp(2j * np.pi * s1)
    f, g, h = loring_f(s2), loring_g(s2), loring_h(s2)
    B = np.empty(s1.shape + (2, 2), dtype=complex)
    B[..., 0, 0] = f
    B[..., 0, 1] = g + u * h
    B[..., 1, 0] = g + np.conj(u) * h
    B[..., 1, 1] = 1.0 - f
    sq = B @ B
    adj = np.conj(np.swapaxes(B, -1, -2))
    tr = B[..., 0, 0] + B[..., 1, 1]
    return {
        "idempotent": float(np.max(np.abs(sq - B))),
        "selfadjoint": float(np.max(np.abs(B - adj))),
        "trace": float(np.max(np.abs(tr - 1.0))),
    }


def loring_fourier(name: str, k: int) -> complex:
    """Closed-form Fourier coefficient int_0^1 e^{-2 pi i k s} F(s) ds for F in {f, g, h}."""
    if name == "f":
        if k == 0:
            return 0.5
        return (1 - (-1) ** (k % 2)) / (np.pi**2 * k**2) + 0j
    if name not in ("g", "h"):
        raise ValueError(f"unknown Loring function {name!r}")
    w = np.pi * k / 2
    core = np.pi / 2 if k == 0 else np.pi * j1(w) / w
    shift = 1 if name == "h" else 3
    return complex(core / 8 * np.exp(-1j * np.pi * k * shift / 2))


@lru_cache(maxsize=32)
def _loring_series(name: str, M: int) -> Element:
    return circle_series({k: loring_fourier(name, k) for k in range(-M, M + 1)})


def loring_symbol_defect(M: int, grid: int = 4096) -> float:
    """sup over a grid of |F(s) - F_M(s)| for F in {f, g, h}: the symbol defect of the truncated lift."""
    s = np.arange(grid) / grid
    ks = np.arange(-M, M + 1)
    waves = np.exp(2j * np.pi * np.outer(s, ks))
    worst = 0.0
    for name, fn in (("f", loring_f), ("g", loring_g), ("h", loring_h)):
        coef = np.array([loring_fourier(name, int(k)) for k in ks])
        worst = max(worst, float(np.max(np.abs(waves @ coef - fn(s)))))
    return worst


def loring_lift_Q(M: int = 32) -> AlgebraMatrix:
    """[[1⊗f, 1⊗g + S⊗h], [adjoint, 1⊗(1-f)]] over T⊗C with Fourier data truncated at |k| <= M."""
    oneT = Element.one((T,))
    oneC = Element.one((C,))
    S = Element.word((T,), ((1, 0),))
    f, g, h = (_loring_series(n, M) for n in "fgh")
    q11 = oneT.tensor(f)
    q12 = oneT.tensor(g) + S.tensor(h)
    q22 = oneT.tensor(oneC - f)
    return AlgebraMatrix([[q11, q12], [q12.adjoint(), q22]], (T, C))


def nu_series(M: int = 32) -> Element:
    """Truncated Fourier series of nu = exp(2 pi i chi_[0,1/2] f) on the circle."""
    from .homotopy import fourier_coeff

    return circle_series({k: fourier_coeff(k, 0.0) for k in range(-M, M + 1)})


def exp_Q_closed(M: int = 32) -> AlgebraMatrix:
    """diag(1⊗1 + (1-SS*)⊗(nu - 1), 1⊗1) over T⊗C."""
    oneT = Element.one((T,))
    oneC = Element.one((C,))
    proj = oneT - Element.word((T,), ((1, 1),))
    x = oneT.tensor(oneC) + proj.tensor(nu_series(M) - oneC)
    return AlgebraMatrix.diag([x, Element.one((T, C))], (T, C))


# the even-to-odd boundary map


@dataclass
class BoundaryPair:
    """(I_n, exp(2 pi i p~)) with the exponential evaluated in a finite section."""

    identity: AlgebraMatrix
    exponential: np.ndarray
    closed_form: AlgebraMatrix | None
    ordering: str
    defect: float | None

    @property
    def legs(self) -> tuple:
        if self.ordering == "identity-first":
            return (self.identity, self.exponential)
        return (self.exponential, self.identity)


def boundary_01(p_tilde: AlgebraMatrix, cfg=None, closed_form: AlgebraMatrix | None = None,
                ordering: str = "identity-first", tol: float = 1e-10) -> BoundaryPair:
    """Boundary of a self-adjoint lift: the identity on one leg, exp(2 pi i p~) on the lifted leg.

    ``ordering`` selects which leg comes first ("identity-first" or "exponential-first").
    If ``closed_form`` is given, its finite section is compared on the interior block.
    """
    from .numeric import TruncationConfig, herm_exp, interior_compress, represent

    if ordering not in ("identity-first", "exponential-first"):
        raise ValueError(f"unknown ordering {ordering!r}")
    if not isinstance(p_tilde.space, tuple):
        raise ShapeError("boundary_01 expects a matrix over a plain algebra")
    if p_tilde.distance(p_tilde.adjoint()) > tol:
        raise ValueError("lift is not self-adjoint")
    cfg = cfg or TruncationConfig()
    E = herm_exp(represent(p_tilde, cfg), tol)
    defect = None
    if closed_form is not None:
        D = E - represent(closed_form, cfg)
        D = interior_compress(D, cfg, p_tilde.space, blocks=p_tilde.rows)
        defect = float(np.linalg.norm(D, 2))
    ident = AlgebraMatrix.identity(p_tilde.rows, p_tilde.space)
    return BoundaryPair(ident, E, closed_form, ordering, defect)
