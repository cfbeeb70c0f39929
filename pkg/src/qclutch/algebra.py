"""Sparse *-algebra elements over tensor products of Toeplitz, circle and SU_q(2) factors.

A basis word is a tuple with one entry per tensor factor:

* Toeplitz factor: ``(m, n)`` standing for ``S^m (S*)^n`` (always normal ordered),
* circle factor: ``k`` standing for ``u^k``,
* SU_q(2) factor: ``(star, a, b, c)`` standing for ``alpha^a gamma^b gamma*^c``
  (or ``alpha*^a ...`` when ``star`` is true), see :mod:`qclutch.suq`.

Coefficients are either exact :class:`GaussianRational` values or Python complex
numbers. Float elements drop coefficients below ``eps`` (default ``1e-14``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .scalars import GaussianRational, coerce_scalar, scalar_from_json, scalar_to_json

DEFAULT_EPS = 1e-14

# below this many term pairs the dict product is cheaper than the dense kernel
DENSE_MIN_PAIRS = 1500
DENSE_MAX_WORK = 4e9


class SignatureError(ValueError):
    pass


class FactorKind:
    """One tensor factor: its word product, adjoint and U(1)-weight."""

    code = "?"
    monomial = True

    def mul1(self, w1, w2):
        raise NotImplementedError

    def mul(self, w1, w2):
        return [(self.mul1(w1, w2), 1)]

    def star1(self, w):
        raise NotImplementedError

    def star(self, w):
        return [(self.star1(w), 1)]

    def weight(self, w) -> int:
        raise NotImplementedError

    one = None

    def word_to_json(self, w):
        raise NotImplementedError

    def word_from_json(self, d):
        raise NotImplementedError

    def to_json(self):
        return self.code

    def __repr__(self):
        return self.code

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(self.code)


class ToeplitzKind(FactorKind):
    code = "T"
    one = (0, 0)

    def mul1(self, w1, w2):
        m1, n1 = w1
        m2, n2 = w2
        r = n1 if n1 < m2 else m2
        return (m1 + m2 - r, n1 + n2 - r)

    def star1(self, w):
        return (w[1], w[0])

    def weight(self, w):
        return w[0] - w[1]

    def word_to_json(self, w):
        return {"T": [w[0], w[1]]}

    def word_from_json(self, d):
        m, n = d["T"]
        if m < 0 or n < 0:
            raise ValueError("Toeplitz word exponents must be non-negative")
        return (int(m), int(n))


class CircleKind(FactorKind):
    code = "C"
    one = 0

    def mul1(self, w1, w2):
        return w1 + w2

    def star1(self, w):
        return -w

    def weight(self, w):
        return w

    def word_to_json(self, w):
        return {"C": w}

    def word_from_json(self, d):
        return int(d["C"])


TOEPLITZ = ToeplitzKind()
CIRCLE = CircleKind()

_KIND_PARSERS = {"T": lambda d: TOEPLITZ, "C": lambda d: CIRCLE}


def register_kind(code: str, parser) -> None:
    _KIND_PARSERS[code] = parser


def signature_to_json(sig) -> list:
    return [f.to_json() for f in sig]


def signature_from_json(items) -> tuple:
    out = []
    for it in items:
        code = it if isinstance(it, str) else next(iter(it))
        if code not in _KIND_PARSERS:
            raise ValueError(f"unknown factor kind {code!r}")
        out.append(_KIND_PARSERS[code](it))
    return tuple(out)


def signature_str(sig) -> str:
    return "⊗".join(repr(f) for f in sig) or "ℂ"


class Element:
    """Immutable sparse linear combination of basis words over a fixed signature."""

    __slots__ = ("signature", "terms", "exact")

    def __init__(self, signature, terms: Mapping | None = None, *, eps: float = DEFAULT_EPS):
        self.signature = tuple(signature)
        terms = dict(terms or {})
        exact = not any(isinstance(c, (float, complex)) for c in terms.values())
        clean = {}
        if exact:
            for w, c in terms.items():
                if c:
                    clean[w] = c if isinstance(c, GaussianRational) else GaussianRational.coerce(c)
        else:
            for w, c in terms.items():
                c = complex(c)
                if abs(c) > eps:
                    clean[w] = c
        self.terms = clean
        self.exact = exact

    # construction

    @classmethod
    def zero(cls, signature) -> "Element":
        return cls(signature)

    @classmethod
    def scalar(cls, signature, c=1) -> "Element":
        sig = tuple(signature)
        return cls(sig, {tuple(f.one for f in sig): _coerce(c)})

    @classmethod
    def one(cls, signature) -> "Element":
        return cls.scalar(signature, 1)

    @classmethod
    def word(cls, signature, word, c=1) -> "Element":
        return cls(signature, {tuple(word): _coerce(c)})

    # basic queries

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def coeff(self, word):
        return self.terms.get(tuple(word), 0)

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.signature != self.signature:
            raise SignatureError(
                f"signature mismatch: {signature_str(self.signature)} vs {signature_str(other.signature)}"
            )

    # linear structure

    def __add__(self, other):
        if not isinstance(other, Element):
            return self + Element.scalar(self.signature, other)
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc[w] + c if w in acc else c
        return Element(self.signature, acc)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Element(self.signature, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return self + (-_coerce(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "Element":
        s = _coerce(s)
        return Element(self.signature, {w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        return _multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = Element.one(self.signature)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # *-structure

    def adjoint(self) -> "Element":
        sig = self.signature
        acc = {}
        for w, c in self.terms.items():
            partial = [((), c.conjugate())]
            for f, x in zip(sig, w):
                if f.monomial:
                    y = f.star1(x)
                    partial = [(pw + (y,), pc) for pw, pc in partial]
                else:
                    st = f.star(x)
                    partial = [(pw + (y,), pc * yc) for pw, pc in partial for y, yc in st]
            for pw, pc in partial:
                acc[pw] = acc[pw] + pc if pw in acc else pc
        return Element(sig, acc)

    @property
    def star(self) -> "Element":
        return self.adjoint()

    # grading

    def word_weight(self, word) -> int:
        return sum(f.weight(x) for f, x in zip(self.signature, word))

    def weights(self) -> set:
        return {self.word_weight(w) for w in self.terms}

    def weight_component(self, k: int) -> "Element":
        return Element(self.signature, {w: c for w, c in self.terms.items() if self.word_weight(w) == k})

    def factor_weight_component(self, factors: Iterable[int], k: int) -> "Element":
        """Part of weight k for the action rephasing only the listed factors."""
        fs = tuple(factors)
        sig = self.signature
        return Element(sig, {w: c for w, c in self.terms.items() if sum(sig[i].weight(w[i]) for i in fs) == k})

    def coaction(self) -> "Element":
        """Diagonal U(1) coaction: append a circle factor carrying u^{weight}."""
        sig = self.signature + (CIRCLE,)
        return Element(sig, {w + (self.word_weight(w),): c for w, c in self.terms.items()})

    # factor bookkeeping

    def symbol_map(self, factor: int) -> "Element":
        """Replace the Toeplitz factor at ``factor`` by a circle factor, S^m S*^n -> u^{m-n}."""
        sig = self.signature
        if not 0 <= factor < len(sig) or sig[factor] != TOEPLITZ:
            raise SignatureError(f"factor {factor} of {signature_str(sig)} is not a Toeplitz factor")
        new_sig = sig[:factor] + (CIRCLE,) + sig[factor + 1:]
        acc = {}
        for w, c in self.terms.items():
            m, n = w[factor]
            nw = w[:factor] + (m - n,) + w[factor + 1:]
            acc[nw] = acc[nw] + c if nw in acc else c
        return Element(new_sig, acc)

    def permute(self, perm) -> "Element":
        """New element whose factor i is the old factor perm[i]."""
        perm = tuple(perm)
        if sorted(perm) != list(range(len(self.signature))):
            raise ValueError(f"{perm} is not a permutation of the factors")
        sig = tuple(self.signature[p] for p in perm)
        return Element(sig, {tuple(w[p] for p in perm): c for w, c in self.terms.items()})

    def tensor(self, other: "Element") -> "Element":
        acc = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                acc[w] = acc[w] + c if w in acc else c
        return Element(self.signature + other.signature, acc)

    def map_words(self, fn, signature) -> "Element":
        """Linear extension of ``fn: word -> Element`` (target signature given)."""
        acc = {}
        for w, c in self.terms.items():
            img = fn(w)
            if img.signature != tuple(signature):
                raise SignatureError("word map produced the wrong signature")
            for iw, ic in img.terms.items():
                v = c * ic
                acc[iw] = acc[iw] + v if iw in acc else v
        return Element(signature, acc)

    def map_block(self, start: int, stop: int, fn, new_kinds) -> "Element":
        """Replace factors ``start:stop`` using ``fn: tuple_of_entries -> Element`` over ``new_kinds``."""
        new_kinds = tuple(new_kinds)
        sig = self.signature
        new_sig = sig[:start] + new_kinds + sig[stop:]
        cache = {}
        acc = {}
        for w, c in self.terms.items():
            x = w[start:stop]
            img = cache.get(x)
            if img is None:
                img = fn(x)
                if img.signature != new_kinds:
                    raise SignatureError("block map produced the wrong signature")
                cache[x] = img
            head, tail = w[:start], w[stop:]
            for iw, ic in img.terms.items():
                nw = head + iw + tail
                v = c * ic
                acc[nw] = acc[nw] + v if nw in acc else v
        return Element(new_sig, acc)

    def map_factor(self, index: int, fn, new_kinds) -> "Element":
        """Replace factor ``index`` by ``new_kinds`` using ``fn: entry -> Element`` over ``new_kinds``."""
        new_kinds = tuple(new_kinds)
        sig = self.signature
        new_sig = sig[:index] + new_kinds + sig[index + 1:]
        cache = {}
        acc = {}
        for w, c in self.terms.items():
            x = w[index]
            img = cache.get(x)
            if img is None:
                img = fn(x)
                if img.signature != new_kinds:
                    raise SignatureError("factor map produced the wrong signature")
                cache[x] = img
            head, tail = w[:index], w[index + 1:]
            for iw, ic in img.terms.items():
                nw = head + iw + tail
                v = c * ic
                acc[nw] = acc[nw] + v if nw in acc else v
        return Element(new_sig, acc)

    # norms and comparison

    def norm_bound(self) -> float:
        return float(sum(abs(c) for c in self.terms.values()))

    def max_coeff(self) -> float:
        return float(max((abs(c) for c in self.terms.values()), default=0.0))

    def distance(self, other: "Element") -> float:
        return (self - other).norm_bound()

    def allclose(self, other: "Element", tol: float = 1e-12) -> bool:
        return (self - other).max_coeff() <= tol

    def __eq__(self, other):
        if not isinstance(other, Element):
            if self.signature == () or isinstance(other, (int, float, complex, Fraction, GaussianRational)):
                return self == Element.scalar(self.signature, other)
            return NotImplemented
        return self.signature == other.signature and self.terms == other.terms

    __hash__ = None

    def to_exact(self) -> "Element":
        return Element(self.signature, {w: GaussianRational.coerce(c) for w, c in self.terms.items()})

    def to_float(self, eps: float = DEFAULT_EPS) -> "Element":
        return Element(self.signature, {w: complex(c) for w, c in self.terms.items()}, eps=eps)

    # serialization

    def to_json(self) -> dict:
        sig = self.signature
        terms = []
        for w in sorted(self.terms):
            re, im = scalar_to_json(self.terms[w])
            terms.append({"word": [f.word_to_json(x) for f, x in zip(sig, w)], "re": re, "im": im})
        return {"signature": signature_to_json(sig), "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Element":
        sig = signature_from_json(data["signature"])
        acc = {}
        for t in data["terms"]:
            if len(t["word"]) != len(sig):
                raise SignatureError("word length does not match the signature")
            w = tuple(f.word_from_json(x) for f, x in zip(sig, t["word"]))
            acc[w] = scalar_from_json(t["re"], t["im"])
        return cls(sig, acc)

    def __repr__(self):
        if not self.terms:
            return f"0[{signature_str(self.signature)}]"
        parts = []
        for w in sorted(self.terms)[:8]:
            parts.append(f"{self.terms[w]!r}*{_word_str(self.signature, w)}")
        more = " + ..." if len(self.terms) > 8 else ""
        return " + ".join(parts) + more


def _word_str(sig, w) -> str:
    out = []
    for f, x in zip(sig, w):
        if f == TOEPLITZ:
            out.append(f"S{x[0]}S*{x[1]}")
        elif f == CIRCLE:
            out.append(f"u{x}")
        else:
            out.append(repr(x))
    return "⊗".join(out) or "1"


def _coerce(c):
    if isinstance(c, (float, complex)):
        return complex(c)
    return GaussianRational.coerce(c)


# multiplication


def _multiply(a: Element, b: Element) -> Element:
    sig = a.signature
    if not a.terms or not b.terms:
        return Element(sig)
    if not (a.exact and b.exact) and len(a.terms) * len(b.terms) >= DENSE_MIN_PAIRS:
        t = _dense_factor(a, b)
        if t is not None:
            return _dense_multiply(a, b, t)
    acc = {}
    if all(f.monomial for f in sig):
        if len(sig) == 1 and sig[0] == TOEPLITZ:
            for ((m1, n1),), ca in a.terms.items():
                for ((m2, n2),), cb in b.terms.items():
                    r = n1 if n1 < m2 else m2
                    w = ((m1 + m2 - r, n1 + n2 - r),)
                    c = ca * cb
                    acc[w] = acc[w] + c if w in acc else c
            return Element(sig, acc)
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                w = tuple(f.mul1(x, y) for f, x, y in zip(sig, wa, wb))
                c = ca * cb
                acc[w] = acc[w] + c if w in acc else c
        return Element(sig, acc)
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            partial = [((), ca * cb)]
            for f, x, y in zip(sig, wa, wb):
                if f.monomial:
                    z = f.mul1(x, y)
                    partial = [(pw + (z,), pc) for pw, pc in partial]
                else:
                    prods = f.mul(x, y)
                    partial = [(pw + (z,), pc * zc) for pw, pc in partial for z, zc in prods]
            for pw, pc in partial:
                acc[pw] = acc[pw] + pc if pw in acc else pc
    return Element(sig, acc)


def toeplitz_matrix(coeffs: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """Top-left rows x cols block of the operator sum_{m,n} coeffs[m, n] S^m S*^n.

    Entry (i, j) collects coeffs[i-l, j-l] over l >= 0, so each row is the
    previous row shifted one step along the diagonal plus the new coefficients.
    """
    A = np.zeros((rows, cols), dtype=complex)
    r = min(rows, coeffs.shape[0])
    c = min(cols, coeffs.shape[1])
    A[:r, :c] = coeffs[:r, :c]
    for i in range(1, rows):
        A[i, 1:] += A[i - 1, :-1]
    return A


def toeplitz_coeff_product(ca: np.ndarray, cb: np.ndarray) -> np.ndarray:
    """Coefficient array of the product of two Toeplitz polynomials.

    The product of finite-rank-plus-Toeplitz operators only touches finitely
    many matrix entries, so a single dense block product recovers it exactly
    (up to roundoff). Coefficients are diagonal differences of that block.
    """
    ma, na = ca.shape[0] - 1, ca.shape[1] - 1
    mb, nb = cb.shape[0] - 1, cb.shape[1] - 1
    rows = ma + mb + 1
    inner = na + nb + mb + 1
    cols = na + nb + 1
    P = toeplitz_matrix(ca, rows, inner) @ toeplitz_matrix(cb, inner, cols)
    out = P.copy()
    out[1:, 1:] -= P[:-1, :-1]
    return out


def _dense_factor(a: Element, b: Element):
    best, best_score = None, 0
    for i, f in enumerate(a.signature):
        if f != TOEPLITZ:
            continue
        da = {w[i] for w in a.terms}
        db = {w[i] for w in b.terms}
        score = len(da) * len(db)
        if score > best_score:
            best, best_score = i, score
    if best is None or best_score < DENSE_MIN_PAIRS // 4:
        return None
    ma = max(w[best][0] for w in a.terms)
    na = max(w[best][1] for w in a.terms)
    mb = max(w[best][0] for w in b.terms)
    nb = max(w[best][1] for w in b.terms)
    work = (ma + mb + 1) * (na + nb + mb + 1) * (na + nb + 1)
    if work > DENSE_MAX_WORK:
        return None
    return best


def _group(e: Element, t: int):
    groups = {}
    for w, c in e.terms.items():
        rest = w[:t] + w[t + 1:]
        groups.setdefault(rest, {})[w[t]] = c
    out = {}
    for rest, d in groups.items():
        mm = max(x[0] for x in d)
        nn = max(x[1] for x in d)
        arr = np.zeros((mm + 1, nn + 1), dtype=complex)
        for (m, n), c in d.items():
            arr[m, n] = c
        out[rest] = arr
    return out


def _dense_multiply(a: Element, b: Element, t: int) -> Element:
    sig = a.signature
    rest_sig = sig[:t] + sig[t + 1:]
    ga = _group(a, t)
    gb = _group(b, t)
    results: dict = {}
    for ra, arr_a in ga.items():
        for rb, arr_b in gb.items():
            rest_prod = _multiply(
                Element(rest_sig, {ra: GaussianRational(1)}), Element(rest_sig, {rb: GaussianRational(1)})
            ) if rest_sig else Element((), {(): GaussianRational(1)})
            if rest_prod.is_zero():
                continue
            prod = toeplitz_coeff_product(arr_a, arr_b)
            for rw, rc in rest_prod.terms.items():
                rc = complex(rc)
                cur = results.get(rw)
                if cur is None:
                    results[rw] = rc * prod
                else:
                    if cur.shape != prod.shape:
                        shape = (max(cur.shape[0], prod.shape[0]), max(cur.shape[1], prod.shape[1]))
                        grown = np.zeros(shape, dtype=complex)
                        grown[: cur.shape[0], : cur.shape[1]] = cur
                        cur = grown
                        results[rw] = cur
                    cur[: prod.shape[0], : prod.shape[1]] += rc * prod
    acc = {}
    for rw, arr in results.items():
        ms, ns = np.nonzero(np.abs(arr) > DEFAULT_EPS)
        for m, n in zip(ms.tolist(), ns.tolist()):
            acc[rw[:t] + ((m, n),) + rw[t:]] = complex(arr[m, n])
    return Element(sig, acc)


# convenience constructors

T1 = (TOEPLITZ,)
C1 = (CIRCLE,)


def toeplitz_word(m: int, n: int, c=1) -> Element:
    return Element.word(T1, ((m, n),), c)


def S() -> Element:
    return toeplitz_word(1, 0)


def Sstar() -> Element:
    return toeplitz_word(0, 1)


def SSstar() -> Element:
    return toeplitz_word(1, 1)


def circle_word(k: int, c=1) -> Element:
    return Element.word(C1, (k,), c)


def u(k: int = 1) -> Element:
    return circle_word(k)


def one(signature=T1) -> Element:
    return Element.one(signature)


def tensor(*elements: Element) -> Element:
    out = Element.one(())
    for e in elements:
        out = out.tensor(e)
    return out


def from_coeffs(signature, coeffs: Mapping, exact: bool | None = None) -> Element:
    if exact is None:
        exact = all(not isinstance(c, (float, complex)) for c in coeffs.values())
    return Element(signature, {tuple(w): coerce_scalar(c, exact) for w, c in coeffs.items()})


def toeplitz_series(coeffs: Mapping[int, complex], signature=T1, index: int = 0, pad_one=True) -> Element:
    """sum_k c_k S^k + sum_k c_{-k} S*^k placed on one Toeplitz factor (other factors carry 1)."""
    sig = tuple(signature)
    acc = {}
    for k, c in coeffs.items():
        w = [f.one for f in sig]
        w[index] = (k, 0) if k >= 0 else (0, -k)
        acc[tuple(w)] = complex(c) if isinstance(c, (float, complex)) else GaussianRational.coerce(c)
    return Element(sig, acc)


def circle_series(coeffs: Mapping[int, complex], signature=C1, index: int = 0) -> Element:
    sig = tuple(signature)
    acc = {}
    for k, c in coeffs.items():
        w = [f.one for f in sig]
        w[index] = k
        acc[tuple(w)] = complex(c) if isinstance(c, (float, complex)) else GaussianRational.coerce(c)
    return Element(sig, acc)


def random_word(rng, signature, max_deg: int = 3) -> tuple:
    out = []
    for kind in signature:
        if kind == TOEPLITZ:
            out.append((int(rng.integers(0, max_deg + 1)), int(rng.integers(0, max_deg + 1))))
        elif kind == CIRCLE:
            out.append(int(rng.integers(-max_deg, max_deg + 1)))
        else:
            raise SignatureError(f"no random words for factor kind {kind!r}")
    return tuple(out)


def random_element(rng, signature, terms: int = 3, max_deg: int = 3, max_coeff: int = 3) -> Element:
    """Small Gaussian-integer combination of random low-degree words."""
    acc = {}
    for _ in range(terms):
        w = random_word(rng, signature, max_deg)
        c = GaussianRational(int(rng.integers(-max_coeff, max_coeff + 1)), int(rng.integers(-1, 2)))
        acc[w] = acc.get(w, 0) + c
    return Element(signature, acc)
