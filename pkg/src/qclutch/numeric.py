"""Finite sections of the word algebras, Hermitian exponentials and a quadrature oracle."""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .algebra import CIRCLE, TOEPLITZ, Element, SignatureError, signature_str

MAX_DIM = 4096


class TruncationError(ValueError):
    pass


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class TruncationConfig:
    """N: Toeplitz basis e_0..e_{N-1}; M_rep: circle modes -M..M; margins cut the edges off comparisons."""

    N: int = 64
    M_rep: int = 32
    margin: int = 8
    tol: float = 1e-10
    toeplitz_margin: int | None = None
    max_dim: int = MAX_DIM

    def __post_init__(self):
        if self.N < 2 or self.M_rep < 2:
            raise TruncationError("need N >= 2 and M_rep >= 2")
        if self.margin < 0 or (self.toeplitz_margin is not None and self.toeplitz_margin < 0):
            raise TruncationError("margins must be non-negative")
        if self.toeplitz_margin is None:
            if not self.margin < min(self.N, self.M_rep) / 2:
                raise TruncationError(f"margin {self.margin} too large for N={self.N}, M_rep={self.M_rep}")
        else:
            if not self.margin < self.M_rep / 2:
                raise TruncationError(f"margin {self.margin} too large for M_rep={self.M_rep}")
            if not self.toeplitz_margin < self.N / 2:
                raise TruncationError(f"toeplitz_margin {self.toeplitz_margin} too large for N={self.N}")

    @property
    def t_margin(self) -> int:
        return self.margin if self.toeplitz_margin is None else self.toeplitz_margin

    @property
    def circle_dim(self) -> int:
        return 2 * self.M_rep + 1

    def factor_dim(self, kind) -> int:
        if kind == TOEPLITZ:
            return self.N
        if kind == CIRCLE:
            return self.circle_dim
        raise SignatureError(f"no finite section for factor kind {kind!r}")

    def to_json(self) -> dict:
        return asdict(self)


# single-factor matrices


def toeplitz_word_matrix(m: int, n: int, N: int) -> np.ndarray:
    """Compression of S^m S*^n to span(e_0..e_{N-1})."""
    out = np.zeros((N, N), dtype=complex)
    # S^m S*^n e_j = e_{j-n+m} for j >= n
    for j in range(n, N):
        i = j - n + m
        if i < N:
            out[i, j] = 1.0
    return out


def circle_word_matrix(k: int, M: int) -> np.ndarray:
    """Compression of u^k to Fourier modes -M..M."""
    return np.eye(2 * M + 1, k=-k, dtype=complex)


def _factor_matrix(kind, w, cfg: TruncationConfig) -> np.ndarray:
    if kind == TOEPLITZ:
        return toeplitz_word_matrix(w[0], w[1], cfg.N)
    if kind == CIRCLE:
        return circle_word_matrix(w, cfg.M_rep)
    raise SignatureError(f"no finite section for factor kind {kind!r}")


def signature_dim(signature, cfg: TruncationConfig) -> int:
    return int(np.prod([cfg.factor_dim(k) for k in signature], dtype=np.int64)) if signature else 1


def _represent_terms(signature, terms: list, cfg: TruncationConfig) -> np.ndarray:
    if not signature:
        return np.array([[sum(c for _, c in terms)]], dtype=complex)
    kind = signature[0]
    if len(signature) == 1:
        dim = cfg.factor_dim(kind)
        out = np.zeros((dim, dim), dtype=complex)
        for w, c in terms:
            out += c * _factor_matrix(kind, w[0], cfg)
        return out
    groups: dict = {}
    for w, c in terms:
        groups.setdefault(w[0], []).append((w[1:], c))
    rest = signature[1:]
    out = None
    for head, sub in groups.items():
        block = np.kron(_factor_matrix(kind, head, cfg), _represent_terms(rest, sub, cfg))
        out = block if out is None else out + block
    if out is None:
        d = signature_dim(signature, cfg)
        out = np.zeros((d, d), dtype=complex)
    return out


def represent(a, cfg: TruncationConfig) -> np.ndarray:
    """Finite-section matrix of an Element, or the block matrix of an AlgebraMatrix of Elements."""
    from .matrix import AlgebraMatrix

    if isinstance(a, AlgebraMatrix):
        if not isinstance(a.space, tuple):
            raise TruncationError("represent needs plain (non-pullback) entries; take a component first")
        d = signature_dim(a.space, cfg)
        if d * max(a.rows, a.cols) > cfg.max_dim:
            raise TruncationError(f"matrix dimension {d * max(a.rows, a.cols)} exceeds cap {cfg.max_dim}")
        return np.block([[represent(x, cfg) for x in row] for row in a.entries])
    if not isinstance(a, Element):
        raise TypeError("represent expects an Element or AlgebraMatrix")
    d = signature_dim(a.signature, cfg)
    if d > cfg.max_dim:
        raise TruncationError(f"dimension {d} of {signature_str(a.signature)} exceeds cap {cfg.max_dim}")
    terms = [(w, complex(c)) for w, c in a.items()]
    return _represent_terms(a.signature, terms, cfg)


def interior_indices(signature, cfg: TruncationConfig, blocks: int = 1) -> np.ndarray:
    """Basis indices away from the truncation edges: top Toeplitz levels, outer circle modes."""
    per = []
    for kind in signature:
        if kind == TOEPLITZ:
            per.append(np.arange(0, cfg.N - cfg.t_margin))
        elif kind == CIRCLE:
            per.append(np.arange(cfg.margin, cfg.circle_dim - cfg.margin))
        else:
            raise SignatureError(f"no finite section for factor kind {kind!r}")
    dims = [cfg.factor_dim(k) for k in signature]
    idx = np.array([0])
    for d, keep in zip(dims, per):
        idx = (idx[:, None] * d + keep[None, :]).ravel()
    total = signature_dim(signature, cfg)
    return np.concatenate([b * total + idx for b in range(blocks)])


def interior_compress(A: np.ndarray, cfg: TruncationConfig, signature, blocks: int = 1) -> np.ndarray:
    if cfg.margin == 0 and cfg.t_margin == 0:
        return A
    idx = interior_indices(signature, cfg, blocks)
    if idx.size == 0:
        raise TruncationError("margin leaves no interior")
    return A[np.ix_(idx, idx)]


# spectral tools


def herm_exp(A: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """exp(2 pi i A) for Hermitian A through its eigendecomposition."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("herm_exp needs a square matrix")
    skew = np.linalg.norm(A - A.conj().T, 2) if A.size else 0.0
    if skew > tol:
        raise ValueError(f"input is not Hermitian (defect {skew:.3g})")
    lam, V = np.linalg.eigh((A + A.conj().T) / 2)
    return (V * np.exp(2j * np.pi * lam)) @ V.conj().T


def spec_norm_rank_trace(A: np.ndarray, tol: float = 1e-10) -> tuple:
    A = np.asarray(A, dtype=complex)
    sv = np.linalg.svd(A, compute_uv=False)
    norm = float(sv[0]) if sv.size else 0.0
    return norm, int(np.sum(sv > tol)), complex(np.trace(A))


def quadrature_fourier(f: Callable[[float], complex], k: int, breakpoints: Sequence[float] = (),
                       tol: float = 1e-10, limit: int = 200) -> complex:
    """int_0^1 exp(-2 pi i k s) f(s) ds, panel by panel between breakpoints."""
    cuts = sorted({0.0, 1.0, *[float(b) for b in breakpoints if 0.0 < b < 1.0]})

    def part(fn, a, b):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(fn, a, b, epsabs=tol / 4, epsrel=0.0, limit=limit)
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(f"refinement did not converge on [{a}, {b}]: {exc}") from exc
        if err > tol:
            raise QuadratureError(f"error estimate {err:.3g} above {tol:.3g} on [{a}, {b}]")
        return val

    total = 0j
    for a, b in zip(cuts[:-1], cuts[1:]):
        def g(s):
            return np.exp(-2j * np.pi * k * s) * f(s)

        total += part(lambda s: g(s).real, a, b) + 1j * part(lambda s: g(s).imag, a, b)
    return complex(total)


# export


def save_npy(A: np.ndarray, path) -> None:
    np.save(path, np.asarray(A).astype("<c16"))


def matrix_to_json(A: np.ndarray) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"shape": list(A.shape), "re": A.real.tolist(), "im": A.imag.tolist()}


def matrix_from_json(d: dict) -> np.ndarray:
    return (np.array(d["re"], dtype=float) + 1j * np.array(d["im"], dtype=float)).reshape(d["shape"])


def write_scan_csv(rows: Sequence[tuple], path, header=("M", "defect")) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow(r)


def dump_json(obj, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)


__all__ = [
    "TruncationConfig",
    "TruncationError",
    "QuadratureError",
    "represent",
    "interior_indices",
    "interior_compress",
    "herm_exp",
    "spec_norm_rank_trace",
    "quadrature_fourier",
    "save_npy",
    "matrix_to_json",
    "matrix_from_json",
    "write_scan_csv",
    "toeplitz_word_matrix",
    "circle_word_matrix",
    "signature_dim",
]
