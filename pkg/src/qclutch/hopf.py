"""Hopf structure of O(U(1)) and O(SU_q(2)), gauge isomorphisms, cleaving maps and clutching.

Comodule convention: a finite-dimensional left comodule V with basis e_i is
given by a matrix R over H with rho(e_i) = sum_j R[i][j] (x) e_j, so
coassociativity reads Delta(R_ij) = sum_k R_ik (x) R_kj and counitality
reads eps(R_ij) = delta_ij.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Sequence

from .algebra import CIRCLE, Element, SignatureError
from .suq import SUqKind, pi_to_circle, suq_antipode, suq_coproduct, suq_counit


class HopfOp(str, Enum):
    COPRODUCT = "coproduct"
    COUNIT = "counit"
    ANTIPODE = "antipode"


def circle_hopf(x: Element, which: HopfOp | str) -> Element:
    """Hopf maps of the group algebra of Z (the circle algebra); all words are group-like."""
    if any(f != CIRCLE for f in x.signature):
        raise SignatureError("circle_hopf needs a circle-only signature")
    which = HopfOp(which)
    if which is HopfOp.COPRODUCT:
        return Element(x.signature * 2, {w + w: c for w, c in x.items()})
    if which is HopfOp.COUNIT:
        return Element((), {(): sum(x.terms.values(), 0)} if x.terms else {})
    return Element(x.signature, {tuple(-k for k in w): c for w, c in x.items()})


def coproduct(x: Element, index: int = 0) -> Element:
    f = x.signature[index]
    if f == CIRCLE:
        return x.map_factor(index, lambda k: Element.word((CIRCLE, CIRCLE), (k, k)), (CIRCLE, CIRCLE))
    if isinstance(f, SUqKind):
        return suq_coproduct(x, index)
    raise SignatureError(f"factor {index} carries no Hopf structure")


def counit(x: Element, index: int = 0) -> Element:
    f = x.signature[index]
    if f == CIRCLE:
        return x.map_factor(index, lambda k: Element.one(()), ())
    if isinstance(f, SUqKind):
        return suq_counit(x, index)
    raise SignatureError(f"factor {index} carries no Hopf structure")


def antipode(x: Element, index: int = 0) -> Element:
    f = x.signature[index]
    if f == CIRCLE:
        return x.map_factor(index, lambda k: Element.word((CIRCLE,), (-k,)), (CIRCLE,))
    if isinstance(f, SUqKind):
        return suq_antipode(x, index)
    raise SignatureError(f"factor {index} carries no Hopf structure")


def multiply_legs(x: Element, i: int, j: int) -> Element:
    """Multiply tensor legs i and j (j = i + 1, same kind) into one leg at position i."""
    if j != i + 1 or x.signature[i] != x.signature[j]:
        raise SignatureError("can only multiply adjacent legs of the same kind")
    kind = x.signature[i]
    return x.map_block(
        i, j + 1, lambda ws: Element.word((kind,), (ws[0],)) * Element.word((kind,), (ws[1],)), (kind,)
    )


# gauge isomorphisms


def _gauge_shift(a: Element, sign: int, weight_factors=None) -> Element:
    sig = a.signature
    if not sig or sig[-1] != CIRCLE:
        raise SignatureError("gauge needs a trailing circle factor")
    fs = range(len(sig) - 1) if weight_factors is None else tuple(weight_factors)
    if len(sig) - 1 in fs:
        raise ValueError("the gauge factor cannot weigh itself")
    acc = {}
    for w, c in a.items():
        wt = sum(sig[i].weight(w[i]) for i in fs)
        nw = w[:-1] + (w[-1] + sign * wt,)
        acc[nw] = c
    return Element(sig, acc)


def gauge(a: Element, weight_factors=None) -> Element:
    """a (x) u^j -> a (x) u^{j + weight(a)}; the trailing circle factor is the gauge factor."""
    return _gauge_shift(a, +1, weight_factors)


def gauge_inv(a: Element, weight_factors=None) -> Element:
    return _gauge_shift(a, -1, weight_factors)


def move_factor_last(a: Element, index: int) -> Element:
    """Named permutation bringing factor ``index`` to the rightmost position."""
    n = len(a.signature)
    perm = [i for i in range(n) if i != index] + [index]
    return a.permute(perm)


def right_coaction(a: Element) -> Element:
    return a.coaction()


def left_coaction(a: Element) -> Element:
    """Diagonal left coaction: prepend a circle factor carrying u^{weight}."""
    return Element((CIRCLE,) + a.signature, {(a.word_weight(w),) + w: c for w, c in a.items()})


def cotensor_member(
    x: Element,
    split: int,
    right: Callable[[Element], Element] = right_coaction,
    left: Callable[[Element], Element] = left_coaction,
    tol: float | None = None,
) -> bool:
    """Membership of x in M cotensor N, where M occupies factors [0, split)."""
    sig = x.signature
    m_sig, n_sig = sig[:split], sig[split:]
    lhs = x.map_block(0, split, lambda ws: right(Element.word(m_sig, ws)), right(Element.one(m_sig)).signature)
    rhs = x.map_block(split, len(sig), lambda ws: left(Element.word(n_sig, ws)), left(Element.one(n_sig)).signature)
    if lhs.signature != rhs.signature:
        raise SignatureError("the two coaction sides land in different signatures")
    if tol is None and lhs.exact and rhs.exact:
        return lhs == rhs
    return (lhs - rhs).max_coeff() <= (tol if tol is not None else 1e-12)


# cleaving maps for O(SU_q(2)) over the circle


def convolve(f, g, x: Element) -> Element:
    """(f * g)(x) = sum f(x_(1)) g(x_(2)) for x in a single-factor Hopf algebra."""
    dx = coproduct(x, 0)
    kind = x.signature[0]
    out = None
    for (w1, w2), c in dx.items():
        term = f(Element.word((kind,), (w1,))) * g(Element.word((kind,), (w2,)))
        term = term.scale(c)
        out = term if out is None else out + term
    if out is None:
        out = f(Element.zero(x.signature)) * g(Element.zero(x.signature))
    return out


def gamma1_bar(s: Element) -> Element:
    """s -> s_(1) (x) pi(s_(2)) (x) s_(3)."""
    return pi_to_circle(suq_coproduct(suq_coproduct(s, 0), 1), 1)


def gamma2_bar(s: Element) -> Element:
    """s -> 1 (x) pi(s_(1)) (x) s_(2)."""
    kind = s.signature[0]
    return Element.one((kind,)).tensor(pi_to_circle(suq_coproduct(s, 0), 0))


def gamma2_bar_inv(s: Element) -> Element:
    return gamma2_bar(suq_antipode(s, 0))


def cleaving_product(s: Element) -> Element:
    """gamma1_bar(s_(1)) gamma2_bar^{-1}(s_(2)); equals s (x) 1 (x) 1."""
    return convolve(gamma1_bar, gamma2_bar_inv, s)


def check_comodule(R: Sequence[Sequence[Element]]) -> bool:
    n = len(R)
    if any(len(row) != n for row in R):
        return False
    for i in range(n):
        for j in range(n):
            lhs = coproduct(R[i][j], 0)
            rhs = None
            for k in range(n):
                t = R[i][k].tensor(R[k][j])
                rhs = t if rhs is None else rhs + t
            if lhs != rhs:
                return False
            if counit(R[i][j], 0) != Element.scalar((), 1 if i == j else 0):
                return False
    return True


def clutching_chi(
    b: Element,
    v: int | Sequence,
    R: Sequence[Sequence[Element]],
    gamma1: Callable[[Element], Element],
    gamma2: Callable[[Element], Element],
    gamma2_inv: Callable[[Element], Element] | None = None,
) -> list:
    """chi(b (x) v) = b gamma1(v_(-2)) gamma2^{-1}(v_(-1)) (x) v_(0), as the list of components on e_j."""
    if not check_comodule(R):
        raise ValueError("coaction matrix fails the comodule check")
    n = len(R)
    if isinstance(v, int):
        vec = [1 if i == v else 0 for i in range(n)]
    else:
        vec = list(v)
        if len(vec) != n:
            raise ValueError("vector length does not match the comodule dimension")
    if gamma2_inv is None:
        def gamma2_inv(x):
            return gamma2(antipode(x, 0))
    out = [b.scale(0) for _ in range(n)]
    for i, vi in enumerate(vec):
        if not vi:
            continue
        for j in range(n):
            out[j] = out[j] + (b * convolve(gamma1, gamma2_inv, R[i][j])).scale(vi)
    return out
