"""Polynomial algebra O(SU_q(2)) in PBW normal form, with its Hopf structure.

Relations: a g = q g a, a g* = q g* a, g g* = g* g, a* a + g* g = 1,
a a* + q^2 g g* = 1 (a = alpha, g = gamma). Words are ``(star, a, b, c)``
meaning ``alpha^a gamma^b gamma*^c`` or, when ``star``, ``alpha*^a gamma^b gamma*^c``
with ``a >= 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import CIRCLE, Element, FactorKind, register_kind
from .scalars import GaussianRational

ONE_WORD = (False, 0, 0, 0)


def _gr(x) -> GaussianRational:
    return GaussianRational(x)


class SUqKind(FactorKind):
    code = "Q"
    monomial = False
    one = ONE_WORD

    def __init__(self, q=Fraction(1, 2)):
        q = Fraction(q)
        if not 0 < q < 1:
            raise ValueError("q must lie strictly between 0 and 1")
        self.q = q

    def __eq__(self, other):
        return isinstance(other, SUqKind) and other.q == self.q

    def __hash__(self):
        return hash(("Q", self.q))

    def __repr__(self):
        return f"Q({self.q})"

    def to_json(self):
        return {"Q": str(self.q)}

    def word_to_json(self, w):
        star, a, b, c = w
        return {"A": a, "G": b, "Gs": c, "star": bool(star)}

    def word_from_json(self, d):
        a, b, c, star = int(d["A"]), int(d["G"]), int(d["Gs"]), bool(d.get("star", False))
        if min(a, b, c) < 0:
            raise ValueError("PBW exponents must be non-negative")
        if a == 0:
            star = False
        return (star, a, b, c)

    def weight(self, w):
        star, a, b, c = w
        return (-a if star else a) + b - c

    def mul(self, w1, w2):
        return _pbw_mul(self.q, w1, w2)

    def star(self, w):
        return _pbw_star(self.q, w)


register_kind("Q", lambda d: SUqKind(Fraction(d["Q"])))


@lru_cache(maxsize=200_000)
def _pbw_mul(q: Fraction, w1, w2):
    s1, a1, b1, c1 = w1
    s2, a2, b2, c2 = w2
    # move gamma^b1 gamma*^c1 to the right of the second alpha-block
    if a2 == 0:
        pre = Fraction(1)
    elif s2:
        pre = q ** (a2 * (b1 + c1))
    else:
        pre = q ** (-a2 * (b1 + c1))
    b, c = b1 + b2, c1 + c2
    if a1 == 0 or a2 == 0 or s1 == s2:
        if a1 == 0:
            star, a = s2, a2
        elif a2 == 0:
            star, a = s1, a1
        else:
            star, a = s1, a1 + a2
        return ((( star and a > 0, a, b, c), _gr(pre)),)
    r = min(a1, a2)
    if not s1:
        # alpha^a1 alpha*^a2: factors (1 - q^{2(a2-i)} g g*)
        factors = [q ** (2 * (a2 - i)) for i in range(r)]
    else:
        # alpha*^a1 alpha^a2: factors (1 - q^{-2(a2-1-i)} g g*)
        factors = [q ** (-2 * (a2 - 1 - i)) for i in range(r)]
    poly = [Fraction(1)]
    for f in factors:
        nxt = [Fraction(0)] * (len(poly) + 1)
        for j, p in enumerate(poly):
            nxt[j] += p
            nxt[j + 1] -= p * f
        poly = nxt
    if a1 > a2:
        star, a = s1, a1 - r
    elif a2 > a1:
        star, a = s2, a2 - r
    else:
        star, a = False, 0
    out = []
    for j, p in enumerate(poly):
        if p:
            out.append(((star and a > 0, a, b + j, c + j), _gr(p * pre)))
    return tuple(out)


def _pbw_star(q: Fraction, w):
    star, a, b, c = w
    # (A g^b g*^c)* = g^c g*^b A*, then move the gamma block right past A*
    if a == 0:
        return (((False, 0, c, b), _gr(1)),)
    new_star = not star
    f = q ** (a * (b + c)) if new_star else q ** (-a * (b + c))
    return (((new_star, a, c, b), _gr(f)),)


DEFAULT_Q = Fraction(1, 2)


def suq_signature(q=DEFAULT_Q, legs: int = 1) -> tuple:
    return (SUqKind(q),) * legs


def suq_word(star: bool, a: int, b: int, c: int, q=DEFAULT_Q, coeff=1) -> Element:
    return Element.word(suq_signature(q), ((bool(star) and a > 0, a, b, c),), coeff)


def alpha(q=DEFAULT_Q) -> Element:
    return suq_word(False, 1, 0, 0, q)


def alpha_star(q=DEFAULT_Q) -> Element:
    return suq_word(True, 1, 0, 0, q)


def gamma(q=DEFAULT_Q) -> Element:
    return suq_word(False, 0, 1, 0, q)


def gamma_star(q=DEFAULT_Q) -> Element:
    return suq_word(False, 0, 0, 1, q)


def suq_one(q=DEFAULT_Q, legs: int = 1) -> Element:
    return Element.one(suq_signature(q, legs))


def generators(q=DEFAULT_Q) -> dict:
    return {"alpha": alpha(q), "alpha*": alpha_star(q), "gamma": gamma(q), "gamma*": gamma_star(q)}


def fundamental_entries(q=DEFAULT_Q) -> list:
    """Entries of U = [[alpha, -q gamma*], [gamma, alpha*]]."""
    qq = GaussianRational(Fraction(q))
    return [[alpha(q), gamma_star(q).scale(-qq)], [gamma(q), alpha_star(q)]]


def _kind(x: Element, index: int) -> SUqKind:
    f = x.signature[index]
    if not isinstance(f, SUqKind):
        raise TypeError(f"factor {index} is not an SU_q(2) factor")
    return f


def _letters(w):
    star, a, b, c = w
    return [("a*" if star else "a")] * a + ["g"] * b + ["g*"] * c


@lru_cache(maxsize=64)
def _coproduct_letters(q: Fraction):
    kind = SUqKind(q)
    sig = (kind, kind)
    qq = GaussianRational(q)

    def w(s, a, b, c):
        return (s and a > 0, a, b, c)

    A, As, G, Gs = w(False, 1, 0, 0), w(True, 1, 0, 0), w(False, 0, 1, 0), w(False, 0, 0, 1)
    d_alpha = Element(sig, {(A, A): _gr(1), (Gs, G): -qq})
    d_gamma = Element(sig, {(G, A): _gr(1), (As, G): _gr(1)})
    return {"a": d_alpha, "a*": d_alpha.adjoint(), "g": d_gamma, "g*": d_gamma.adjoint()}


@lru_cache(maxsize=20_000)
def _coproduct_word(q: Fraction, w) -> Element:
    letters = _coproduct_letters(q)
    kind = SUqKind(q)
    out = Element.one((kind, kind))
    for l in _letters(w):
        out = out * letters[l]
    return out


def suq_coproduct(x: Element, index: int = 0) -> Element:
    """Delta on the SU_q(2) factor at ``index`` (that factor becomes two)."""
    k = _kind(x, index)
    return x.map_factor(index, lambda w: _coproduct_word(k.q, w), (k, k))


def _counit_word(w):
    star, a, b, c = w
    return 1 if b == 0 and c == 0 else 0


def suq_counit(x: Element, index: int = 0) -> Element:
    """epsilon on the factor at ``index`` (that factor is removed)."""
    _kind(x, index)
    return x.map_factor(index, lambda w: Element.scalar((), _counit_word(w)), ())


@lru_cache(maxsize=20_000)
def _antipode_word(q: Fraction, w) -> Element:
    kind = SUqKind(q)
    qq = GaussianRational(q)
    images = {
        "a": Element.word((kind,), ((True, 1, 0, 0),)),
        "a*": Element.word((kind,), ((False, 1, 0, 0),)),
        "g": Element.word((kind,), ((False, 0, 1, 0),), -qq),
        "g*": Element.word((kind,), ((False, 0, 0, 1),), -(GaussianRational(1) / qq)),
    }
    out = Element.one((kind,))
    for l in reversed(_letters(w)):
        out = out * images[l]
    return out


def suq_antipode(x: Element, index: int = 0) -> Element:
    k = _kind(x, index)
    return x.map_factor(index, lambda w: _antipode_word(k.q, w), (k,))


def _pi_word(w) -> Element:
    star, a, b, c = w
    if b or c:
        return Element.zero((CIRCLE,))
    return Element.word((CIRCLE,), (-a if star else a,))


def pi_to_circle(x: Element, index: int = 0) -> Element:
    """alpha -> u, gamma -> 0 on the factor at ``index``."""
    _kind(x, index)
    return x.map_factor(index, _pi_word, (CIRCLE,))


def random_pbw_word(rng, max_deg: int = 2):
    a = int(rng.integers(0, max_deg + 1))
    b = int(rng.integers(0, max_deg + 1))
    c = int(rng.integers(0, max_deg + 1))
    star = bool(rng.integers(0, 2)) and a > 0
    return (star, a, b, c)


def represent_suq(x: Element, levels: int = 30) -> np.ndarray:
    """Matrix of x in the irreducible representation on l^2(N), cut to ``levels`` basis vectors.

    alpha e_n = sqrt(1 - q^{2n}) e_{n-1}, gamma e_n = q^n e_n.
    Products are formed on a padded space so the top-left block is exact
    for words whose alpha-degree stays below the padding.
    """
    if len(x.signature) != 1:
        raise ValueError("single SU_q(2) factor expected")
    q = float(_kind(x, 0).q)
    pad = levels + 2 * max((w[0][1] for w in x.terms), default=0) + 2
    n = np.arange(pad)
    a = np.zeros((pad, pad))
    a[n[:-1], n[1:]] = np.sqrt(1.0 - q ** (2 * n[1:]))
    g = np.diag(q ** n.astype(float))
    out = np.zeros((pad, pad), dtype=complex)
    for (w,), c in x.terms.items():
        star, k, b, cc = w
        A = a.T if star else a
        m = np.linalg.matrix_power(A, k) @ np.linalg.matrix_power(g, b) @ np.linalg.matrix_power(g, cc)
        out += complex(c) * m
    return out[:levels, :levels]
