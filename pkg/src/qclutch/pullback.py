"""Pullback diagrams of algebras, pullback elements and the named morphisms between them.

A *space* is either a plain signature (tuple of factor kinds) or a
:class:`Diagram`. Values living in a plain signature are :class:`Element`;
values in a diagram are :class:`PullbackElement` pairs, possibly nested.
Tensoring a diagram with a plain algebra K tensors every node with K and
every leg with id_K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .algebra import CIRCLE, TOEPLITZ, Element, SignatureError, signature_str

T = TOEPLITZ
C = CIRCLE


class MorphismError(ValueError):
    pass


class CompatStatus(str, Enum):
    EXACT = "EXACT"
    TOL = "TOL"
    UNCHECKED = "UNCHECKED"
    FAILED = "FAILED"


# spaces


def space_name(space) -> str:
    if isinstance(space, Diagram):
        return space.name
    return signature_str(space)


def space_of(x):
    if isinstance(x, PullbackElement):
        return x.diagram
    if isinstance(x, Element):
        return x.signature
    raise TypeError(f"not an algebra value: {type(x).__name__}")


def same_space(a, b) -> bool:
    if isinstance(a, Diagram) or isinstance(b, Diagram):
        return isinstance(a, Diagram) and isinstance(b, Diagram) and a.name == b.name
    return tuple(a) == tuple(b)


def tensor_space(space, K: tuple):
    K = tuple(K)
    if not K:
        return space
    if isinstance(space, Diagram):
        return space.tensor(K)
    return tuple(space) + K


def unit_of(space):
    if isinstance(space, Diagram):
        return PullbackElement(space, unit_of(space.A1), unit_of(space.A2), CompatStatus.EXACT)
    return Element.one(space)


def zero_of(space):
    if isinstance(space, Diagram):
        return PullbackElement(space, zero_of(space.A1), zero_of(space.A2), CompatStatus.EXACT)
    return Element.zero(space)


def scalar_of(space, c):
    if isinstance(space, Diagram):
        return PullbackElement(space, scalar_of(space.A1, c), scalar_of(space.A2, c), CompatStatus.EXACT)
    return Element.scalar(space, c)


def values_equal(x, y) -> bool:
    if isinstance(x, PullbackElement) and isinstance(y, PullbackElement):
        return x.diagram.name == y.diagram.name and values_equal(x.a1, y.a1) and values_equal(x.a2, y.a2)
    if isinstance(x, Element) and isinstance(y, Element):
        return x == y
    return False


def value_distance(x, y) -> float:
    """Largest coefficient-l1 distance over all leaves."""
    if isinstance(x, PullbackElement) and isinstance(y, PullbackElement):
        if x.diagram.name != y.diagram.name:
            raise MorphismError("values live in different diagrams")
        return max(value_distance(x.a1, y.a1), value_distance(x.a2, y.a2))
    if isinstance(x, Element) and isinstance(y, Element):
        return x.distance(y)
    raise MorphismError("values live in different spaces")


def value_is_exact(x) -> bool:
    if isinstance(x, PullbackElement):
        return value_is_exact(x.a1) and value_is_exact(x.a2)
    return x.exact


def value_adjoint(x):
    return x.adjoint()


# pullback elements


class PullbackElement:
    """Pair (a1, a2) over a diagram, with the recorded compatibility status."""

    __slots__ = ("diagram", "a1", "a2", "status", "defect")

    def __init__(self, diagram: "Diagram", a1, a2, status: CompatStatus = CompatStatus.UNCHECKED, defect=None):
        if not same_space(space_of(a1), diagram.A1):
            raise MorphismError(f"first component is not in {space_name(diagram.A1)}")
        if not same_space(space_of(a2), diagram.A2):
            raise MorphismError(f"second component is not in {space_name(diagram.A2)}")
        self.diagram = diagram
        self.a1 = a1
        self.a2 = a2
        self.status = CompatStatus(status)
        self.defect = defect if defect is not None else (0.0 if self.status is CompatStatus.EXACT else None)

    def _other(self, other) -> "PullbackElement":
        if isinstance(other, PullbackElement):
            if other.diagram.name != self.diagram.name:
                raise MorphismError(f"diagram mismatch: {self.diagram.name} vs {other.diagram.name}")
            return other
        return scalar_of(self.diagram, other)

    def _combine_status(self, other):
        if self.status is CompatStatus.EXACT and other.status is CompatStatus.EXACT:
            return CompatStatus.EXACT
        return CompatStatus.UNCHECKED

    def __add__(self, other):
        o = self._other(other)
        return PullbackElement(self.diagram, self.a1 + o.a1, self.a2 + o.a2, self._combine_status(o))

    __radd__ = __add__

    def __neg__(self):
        return PullbackElement(self.diagram, -self.a1, -self.a2, self.status, self.defect)

    def __sub__(self, other):
        o = self._other(other)
        return PullbackElement(self.diagram, self.a1 - o.a1, self.a2 - o.a2, self._combine_status(o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PullbackElement):
            return self.scale(other)
        o = self._other(other)
        return PullbackElement(self.diagram, self.a1 * o.a1, self.a2 * o.a2, self._combine_status(o))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        st = self.status if self.status is CompatStatus.EXACT else CompatStatus.UNCHECKED
        return PullbackElement(self.diagram, self.a1.scale(s), self.a2.scale(s), st)

    def adjoint(self):
        return PullbackElement(self.diagram, self.a1.adjoint(), self.a2.adjoint(), self.status, self.defect)

    @property
    def star(self):
        return self.adjoint()

    @property
    def exact(self) -> bool:
        return value_is_exact(self)

    def components(self):
        return (self.a1, self.a2)

    def is_zero(self) -> bool:
        return self.a1.is_zero() and self.a2.is_zero()

    def weight_component(self, k: int):
        return PullbackElement(self.diagram, self.a1.weight_component(k), self.a2.weight_component(k), self.status)

    def max_coeff(self) -> float:
        return max(self.a1.max_coeff(), self.a2.max_coeff())

    def norm_bound(self) -> float:
        return max(self.a1.norm_bound(), self.a2.norm_bound())

    def distance(self, other) -> float:
        return value_distance(self, other)

    def checked(self, tol: float | None = None) -> "PullbackElement":
        rep = pb_compat(self, tol)
        return PullbackElement(self.diagram, self.a1, self.a2, rep.status, rep.defect)

    def __eq__(self, other):
        if not isinstance(other, PullbackElement):
            return NotImplemented
        return values_equal(self, other)

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram.name,
            "a1": self.a1.to_json(),
            "a2": self.a2.to_json(),
            "compat": self.status.value,
            "defect": self.defect,
        }

    @classmethod
    def from_json(cls, data: dict, diagram: "Diagram | None" = None) -> "PullbackElement":
        d = diagram or make_diagram(data["diagram"])

        def load(x, space):
            if isinstance(space, Diagram):
                return cls.from_json(x, space)
            return Element.from_json(x)

        return cls(d, load(data["a1"], d.A1), load(data["a2"], d.A2), data.get("compat", "UNCHECKED"),
                   data.get("defect"))

    def __repr__(self):
        return f"({self.a1!r} | {self.a2!r})@{self.diagram.name}"


@dataclass(frozen=True)
class CompatReport:
    status: CompatStatus
    defect: float
    image1: object
    image2: object

    @property
    def compatible(self) -> bool:
        return self.status in (CompatStatus.EXACT, CompatStatus.TOL)


def pb_compat(e: PullbackElement, tol: float | None = None) -> CompatReport:
    """Compare the leg images pi1(a1) and pi2(a2); exact when possible, else measured."""
    d = e.diagram
    i1 = d.pi1(e.a1)
    i2 = d.pi2(e.a2)
    inner_ok = True
    for comp, space in ((e.a1, d.A1), (e.a2, d.A2)):
        if isinstance(comp, PullbackElement):
            inner_ok = inner_ok and pb_compat(comp, tol).compatible
    if value_is_exact(i1) and value_is_exact(i2) and tol is None:
        ok = values_equal(i1, i2) and inner_ok
        return CompatReport(CompatStatus.EXACT if ok else CompatStatus.FAILED, 0.0 if ok else value_distance(i1, i2), i1, i2)
    defect = value_distance(i1, i2)
    limit = 1e-12 if tol is None else tol
    ok = defect <= limit and inner_ok
    return CompatReport(CompatStatus.TOL if ok else CompatStatus.FAILED, defect, i1, i2)


def pb_arith(e1: PullbackElement, e2: PullbackElement, op: str, s=1) -> PullbackElement:
    """Componentwise e1 op s*e2 with op in ADD, SUB, MUL."""
    op = op.upper()
    if op == "ADD":
        return e1 + e2.scale(s)
    if op == "SUB":
        return e1 - e2.scale(s)
    if op == "MUL":
        return (e1 * e2).scale(s)
    raise ValueError(f"unknown op {op}")


# morphisms


class Morphism:
    """Named map between spaces. Subclasses know how to extend themselves by id_K."""

    kind = "map"

    def __init__(self, name: str, source, target, formula: str = ""):
        self.name = name
        self.source = source
        self.target = target
        self.formula = formula

    def _apply(self, x):
        raise NotImplementedError

    def __call__(self, x):
        if not same_space(space_of(x), self.source):
            raise MorphismError(
                f"{self.name} expects {space_name(self.source)}, got {space_name(space_of(x))}"
            )
        return self._apply(x)

    def tensor_id(self, K: tuple) -> "Morphism":
        raise NotImplementedError

    def after(self, other: "Morphism") -> "Morphism":
        """self o other."""
        return Composite(self, other)

    def catalog_entry(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "source": space_name(self.source),
            "target": space_name(self.target),
            "formula": self.formula,
        }

    def __repr__(self):
        return f"<{self.kind} {self.name}: {space_name(self.source)} -> {space_name(self.target)}>"


class WordMap(Morphism):
    """Linear map acting on the factor block [start, stop) of plain elements; other factors pass through."""

    kind = "word"

    def __init__(self, name, source, target, fn, start=0, stop=None, block_target=None, formula=""):
        source, target = tuple(source), tuple(target)
        super().__init__(name, source, target, formula)
        self.fn = fn
        self.start = start
        self.stop = len(source) if stop is None else stop
        if block_target is None:
            block_target = target[start: len(target) - (len(source) - self.stop)]
        self.block_target = tuple(block_target)

    def _apply(self, x: Element) -> Element:
        return x.map_block(self.start, self.stop, self.fn, self.block_target)

    def tensor_id(self, K):
        K = tuple(K)
        return WordMap(
            f"({self.name})⊗id",
            self.source + K,
            self.target + K,
            self.fn,
            self.start,
            self.stop,
            self.block_target,
            self.formula,
        )


class InsertUnit(Morphism):
    """x -> x with unit factors K' inserted ``tail`` factors from the right of every leaf (id (x) 1)."""

    kind = "unit"

    def __init__(self, source, K, tail: int = 0, name=None):
        K = tuple(K)
        self.K = K
        self.tail = tail
        target = _insert_space(source, K, tail)
        super().__init__(name or f"id⊗1[{signature_str(K)}]", source, target, "x ↦ x⊗1")

    def _apply(self, x):
        return _insert_value(x, self.target, self.K, self.tail)

    def tensor_id(self, K):
        return InsertUnit(tensor_space(self.source, K), self.K, self.tail + len(tuple(K)), f"({self.name})⊗id")


def _insert_space(space, K, tail):
    if isinstance(space, Diagram):
        return _insert_diagram(space, K, tail)
    sig = tuple(space)
    cut = len(sig) - tail
    return sig[:cut] + K + sig[cut:]


@lru_cache(maxsize=None)
def _insert_diagram(d: "Diagram", K, tail) -> "Diagram":
    if tail == 0:
        return d.tensor(K)
    core = d.base if d.base is not None else d
    extra = d.extra
    if tail > len(extra):
        raise MorphismError("cannot insert a unit inside a diagram's own factors")
    cut = len(extra) - tail
    return core.tensor(extra[:cut] + K + extra[cut:])


def _insert_value(x, target, K, tail):
    if isinstance(x, PullbackElement):
        return PullbackElement(
            target, _insert_value(x.a1, target.A1, K, tail), _insert_value(x.a2, target.A2, K, tail), x.status, x.defect
        )
    sig = x.signature
    cut = len(sig) - tail
    ones = tuple(f.one for f in K)
    return Element(sig[:cut] + K + sig[cut:], {w[:cut] + ones + w[cut:]: c for w, c in x.items()})


class ComponentMap(Morphism):
    """Diagram-to-diagram map acting separately on the two components."""

    kind = "componentwise"

    def __init__(self, name, source: "Diagram", target: "Diagram", f1: Morphism, f2: Morphism, formula=""):
        super().__init__(name, source, target, formula)
        self.f1 = f1
        self.f2 = f2

    def _apply(self, x: PullbackElement):
        return PullbackElement(self.target, self.f1(x.a1), self.f2(x.a2), x.status, x.defect)

    def tensor_id(self, K):
        return ComponentMap(
            f"({self.name})⊗id",
            self.source.tensor(tuple(K)),
            self.target.tensor(tuple(K)),
            self.f1.tensor_id(K),
            self.f2.tensor_id(K),
            self.formula,
        )


class Pairing(Morphism):
    """x -> (g1(x), g2(x)) into a diagram."""

    kind = "pairing"

    def __init__(self, name, source, target: "Diagram", g1: Morphism, g2: Morphism, formula=""):
        super().__init__(name, source, target, formula)
        self.g1 = g1
        self.g2 = g2

    def _apply(self, x):
        return PullbackElement(self.target, self.g1(x), self.g2(x))

    def tensor_id(self, K):
        return Pairing(
            f"({self.name})⊗id",
            tensor_space(self.source, K),
            self.target.tensor(tuple(K)),
            self.g1.tensor_id(K),
            self.g2.tensor_id(K),
            self.formula,
        )


class Projection(Morphism):
    kind = "projection"

    def __init__(self, diagram: "Diagram", index: int, name=None):
        if index not in (1, 2):
            raise ValueError("projection index is 1 or 2")
        target = diagram.A1 if index == 1 else diagram.A2
        super().__init__(name or f"pr{index}[{diagram.name}]", diagram, target, f"(a1, a2) ↦ a{index}")
        self.index = index

    def _apply(self, x):
        return x.a1 if self.index == 1 else x.a2

    def tensor_id(self, K):
        return Projection(self.source.tensor(tuple(K)), self.index, f"({self.name})⊗id")


class Composite(Morphism):
    kind = "composite"

    def __init__(self, outer: Morphism, inner: Morphism, name=None):
        if not same_space(inner.target, outer.source):
            raise MorphismError(
                f"cannot compose {outer.name} after {inner.name}: {space_name(inner.target)} vs {space_name(outer.source)}"
            )
        super().__init__(name or f"{outer.name}∘{inner.name}", inner.source, outer.target)
        self.outer = outer
        self.inner = inner

    def _apply(self, x):
        return self.outer(self.inner(x))

    def tensor_id(self, K):
        return Composite(self.outer.tensor_id(K), self.inner.tensor_id(K), f"({self.name})⊗id")


class Identity(Morphism):
    kind = "identity"

    def __init__(self, space):
        super().__init__(f"id[{space_name(space)}]", space, space, "x ↦ x")

    def _apply(self, x):
        return x

    def tensor_id(self, K):
        return Identity(tensor_space(self.source, K))


class Induced(Morphism):
    """Map of pullbacks induced by phi1, phi2 over phi12; the commuting squares are checked per element."""

    kind = "induced"

    def __init__(self, name, source: "Diagram", target: "Diagram", phi1, phi2, phi12, formula="", tol=None):
        super().__init__(name, source, target, formula)
        self.phi1, self.phi2, self.phi12 = phi1, phi2, phi12
        self.tol = tol

    def _apply(self, x):
        return induced_map(self.phi1, self.phi2, self.phi12, x, self.target, self.tol)

    def tensor_id(self, K):
        return Induced(
            f"({self.name})⊗id",
            self.source.tensor(tuple(K)),
            self.target.tensor(tuple(K)),
            self.phi1.tensor_id(K),
            self.phi2.tensor_id(K),
            self.phi12.tensor_id(K),
            self.formula,
            self.tol,
        )


def induced_map(phi1, phi2, phi12, e: PullbackElement, target: "Diagram", tol: float | None = None) -> PullbackElement:
    """(a1, a2) -> (phi1(a1), phi2(a2)) after checking rho_i o phi_i = phi12 o pi_i on the element."""
    src = e.diagram
    sq1 = (target.pi1(phi1(e.a1)), phi12(src.pi1(e.a1)))
    sq2 = (target.pi2(phi2(e.a2)), phi12(src.pi2(e.a2)))
    for lhs, rhs in (sq1, sq2):
        if tol is None and value_is_exact(lhs) and value_is_exact(rhs):
            if not values_equal(lhs, rhs):
                raise MorphismError(f"commuting square fails (defect {value_distance(lhs, rhs):.3g})")
        else:
            d = value_distance(lhs, rhs)
            if d > (1e-12 if tol is None else tol):
                raise MorphismError(f"commuting square defect {d:.3g} above tolerance")
    out = PullbackElement(target, phi1(e.a1), phi2(e.a2))
    return out.checked(tol)


# diagrams


class Diagram:
    """Pullback of A1 -pi1-> A12 <-pi2- A2."""

    def __init__(self, name, A1, A2, A12, pi1: Morphism, pi2: Morphism, surjective=(True, True),
                 sampler=None, formula="", base=None, extra=()):
        self.name = name
        self.A1, self.A2, self.A12 = A1, A2, A12
        self.pi1, self.pi2 = pi1, pi2
        self.surjective = tuple(surjective)
        self.sampler = sampler
        self.formula = formula
        self.base = base
        self.extra = tuple(extra)
        self._tensored = {}

    def tensor(self, K: tuple) -> "Diagram":
        K = tuple(K)
        if not K:
            return self
        if self.base is not None:
            return self.base.tensor(self.extra + K)
        if K not in self._tensored:
            sampler = None
            if self.sampler is not None:
                base_sampler = self.sampler

                def sampler(rng, count=4, _K=K, _self=self):
                    ins = InsertUnit(_self, _K)
                    return [ins(s) for s in base_sampler(rng, count)]

            self._tensored[K] = Diagram(
                f"{self.name}⊗{signature_str(K)}",
                tensor_space(self.A1, K),
                tensor_space(self.A2, K),
                tensor_space(self.A12, K),
                self.pi1.tensor_id(K),
                self.pi2.tensor_id(K),
                self.surjective,
                sampler,
                self.formula,
                base=self,
                extra=K,
            )
        return self._tensored[K]

    def element(self, a1, a2, tol: float | None = None) -> PullbackElement:
        return PullbackElement(self, a1, a2).checked(tol)

    def unit(self) -> PullbackElement:
        return unit_of(self)

    def zero(self) -> PullbackElement:
        return zero_of(self)

    def samples(self, rng, count: int = 4) -> list:
        if self.sampler is None:
            return [self.unit()]
        return self.sampler(rng, count)

    def catalog_entry(self) -> dict:
        return {
            "name": self.name,
            "A1": space_name(self.A1),
            "A2": space_name(self.A2),
            "A12": space_name(self.A12),
            "pi1": self.pi1.name,
            "pi2": self.pi2.name,
            "surjective": list(self.surjective),
            "formula": self.formula,
        }

    def __repr__(self):
        return f"<Diagram {self.name}: {space_name(self.A1)} -> {space_name(self.A12)} <- {space_name(self.A2)}>"

    def __eq__(self, other):
        return isinstance(other, Diagram) and other.name == self.name

    def __hash__(self):
        return hash(self.name)


# word-level building blocks


def tword(m: int, n: int) -> tuple:
    return (m, n)


def lift_circle(k: int) -> tuple:
    """Toeplitz word with symbol u^k: S^k or S*^{-k}."""
    return (k, 0) if k >= 0 else (0, -k)


def twt(w) -> int:
    return w[0] - w[1]


def _word(sig, *entries, c=1) -> Element:
    return Element.word(sig, tuple(entries), c)


def sigma_on(source: tuple, index: int, name=None) -> WordMap:
    source = tuple(source)
    if source[index] != T:
        raise SignatureError(f"factor {index} of {signature_str(source)} is not Toeplitz")
    target = source[:index] + (C,) + source[index + 1:]

    def fn(ws):
        m, n = ws[0]
        return _word((C,), m - n)

    return WordMap(name or f"σ{index}[{signature_str(source)}]", source, target, fn, index, index + 1, (C,),
                   "S^m S*^n ↦ u^(m-n)")


def antipode_on(source: tuple, index: int, name=None) -> WordMap:
    source = tuple(source)
    if source[index] != C:
        raise SignatureError("antipode needs a circle factor")
    return WordMap(name or f"S{index}[{signature_str(source)}]", source, source,
                   lambda ws: _word((C,), -ws[0]), index, index + 1, (C,), "u^k ↦ u^-k")


def permutation_map(source: tuple, perm, name=None) -> WordMap:
    source = tuple(source)
    perm = tuple(perm)
    target = tuple(source[p] for p in perm)
    return WordMap(name or f"perm{perm}[{signature_str(source)}]", source, target,
                   lambda ws: Element.word(target, tuple(ws[p] for p in perm)), formula=f"factor permutation {perm}")


# the named word maps (w, w' denote U(1)-weights of Toeplitz words)

psi01 = WordMap("psi01", (C, T), (C, T), lambda ws: _word((C, T), -ws[0] - twt(ws[1]), ws[1]),
                formula="u^j⊗t ↦ u^(-j-w)⊗t")
psi02 = WordMap("psi02", (C, T), (T, C), lambda ws: _word((T, C), ws[1], -ws[0] - twt(ws[1])),
                formula="u^j⊗t ↦ t⊗u^(-j-w)")
psi12 = WordMap("psi12", (T, C), (T, C), lambda ws: _word((T, C), ws[0], -twt(ws[0]) - ws[1]),
                formula="t⊗u^j ↦ t⊗u^(-w-j)")
phi_tilde = WordMap("phi_tilde", (C, C), (C, C), lambda ws: _word((C, C), -ws[0] - ws[1], ws[1]),
                    formula="u^a⊗u^b ↦ u^(-a-b)⊗u^b")
psi = WordMap("psi", (C, C), (C, C), lambda ws: _word((C, C), ws[1] - ws[0], ws[1]),
              formula="u^a⊗u^b ↦ u^(b-a)⊗u^b")
alpha_tilde = WordMap("alpha_tilde", (T, T), (C, T), lambda ws: _word((C, T), -twt(ws[0]) - twt(ws[1]), ws[1]),
                      formula="t⊗t' ↦ u^(-w-w')⊗t'")
alpha_map = WordMap("alpha", (T, T, C), (C, T, C),
                    lambda ws: _word((C, T, C), ws[2] - twt(ws[0]) - twt(ws[1]), ws[1], ws[2]),
                    formula="t⊗t'⊗u^j ↦ u^(j-w-w')⊗t'⊗u^j")
flip_CT = permutation_map((C, T), (1, 0), "flip[C⊗T]")

sigma_T = sigma_on((T,), 0, "sigma")
sigma1_TT = sigma_on((T, T), 0, "sigma1[T⊗T]")
sigma2_TT = sigma_on((T, T), 1, "sigma2[T⊗T]")
sigma1_TC = sigma_on((T, C), 0, "sigma⊗id[T⊗C]")
sigma2_CT = sigma_on((C, T), 1, "id⊗sigma[C⊗T]")


def _gauge_TC(sign):
    return lambda ws: _word((T, C), ws[0], ws[1] + sign * twt(ws[0]))


gauge_TC = WordMap("g[T⊗C]", (T, C), (T, C), _gauge_TC(+1), formula="t⊗u^j ↦ t⊗u^(j+w)")
gauge_TC_inv = WordMap("g^-1[T⊗C]", (T, C), (T, C), _gauge_TC(-1), formula="t⊗u^j ↦ t⊗u^(j-w)")
unit_C = WordMap("1[C]", (), (C,), lambda ws: _word((C,), 0), formula="c ↦ c·1")


# samples


def _rand_T(rng, deg=3) -> tuple:
    return (int(rng.integers(0, deg + 1)), int(rng.integers(0, deg + 1)))


def _rand_k(rng, r=3) -> int:
    return int(rng.integers(-r, r + 1))


def _rand_c(rng) -> int:
    v = int(rng.integers(-3, 4))
    return v if v else 1


def kernel_T(a: int, b: int) -> Element:
    """S^a (1 - SS*) S*^b, a word combination killed by the symbol map."""
    return Element((T,), {((a, b),): 1, ((a + 1, b + 1),): -1})


def _kernel_rand(rng):
    return kernel_T(int(rng.integers(0, 3)), int(rng.integers(0, 3)))


# registry

_REGISTRY: dict = {}
_MORPHISMS: dict = {}


def _register_morphism(m: Morphism, alias: str | None = None):
    _MORPHISMS[alias or m.name] = m
    return m


def _build_registry():
    one_C = Element.one((C,))
    one_T = Element.one((T,))

    # S2q: T -sigma-> C <-1- complex numbers
    def s2q_sampler(rng, count=4):
        out = []
        for _ in range(count):
            c = _rand_c(rng)
            t = Element.scalar((T,), c) + _kernel_rand(rng).scale(_rand_c(rng))
            out.append(PullbackElement(S2q, t, Element.scalar((), c)))
        return out

    S2q = Diagram("S2q", (T,), (), (C,), sigma_T, unit_C, (True, False), s2q_sampler,
                  "T -σ-> C(S¹) <-1- ℂ")

    # SUq2: T⊗C -sigma⊗id-> C⊗C <-id⊗1- C
    id_otimes_1 = WordMap("id⊗1[C]", (C,), (C, C), lambda ws: _word((C, C), ws[0], 0), formula="v ↦ v⊗1")

    def suq_sampler(rng, count=4):
        out = []
        for _ in range(count):
            tw = _rand_T(rng)
            c = _rand_c(rng)
            a1 = _word((T, C), tw, 0, c=c) + _kernel_rand(rng).tensor(_word((C,), _rand_k(rng))).scale(_rand_c(rng))
            a2 = _word((C,), twt(tw), c=c)
            out.append(PullbackElement(SUq2, a1, a2))
        return out

    SUq2 = Diagram("SUq2-C*", (T, C), (C,), (C, C), sigma1_TC, id_otimes_1, (True, False), suq_sampler,
                   "T⊗C(S¹) -σ⊗id-> C(S¹)⊗C(S¹) <-id⊗1- C(S¹)")

    # S3H: T⊗C -sigma⊗id-> C⊗C <-id⊗sigma- C⊗T
    def nu_pair(tw1, tw2, c=1):
        return (_word((T, C), tw1, twt(tw2), c=c), _word((C, T), twt(tw1), tw2, c=c))

    def s3h_sampler(rng, count=4):
        out = []
        for _ in range(count):
            a1, a2 = nu_pair(_rand_T(rng), _rand_T(rng), _rand_c(rng))
            a1 = a1 + _kernel_rand(rng).tensor(_word((C,), _rand_k(rng)))
            a2 = a2 + _word((C,), _rand_k(rng)).tensor(_kernel_rand(rng)).scale(_rand_c(rng))
            out.append(PullbackElement(S3H, a1, a2))
        return out

    S3H = Diagram("S3H", (T, C), (C, T), (C, C), sigma1_TC, sigma2_CT, (True, True), s3h_sampler,
                  "T⊗C(S¹) -σ⊗id-> C(S¹)⊗C(S¹) <-id⊗σ- C(S¹)⊗T")

    # the gauged (Heegaard-type) presentation of the same algebra
    psi_sigma = Composite(psi, sigma1_TC, "psi∘(σ⊗id)")

    def heeg_sampler(rng, count=4):
        return [heegaard_iso(s) for s in s3h_sampler(rng, count)]

    S3Hh = Diagram("S3H-heegaard-presentation", (T, C), (T, C), (C, C), sigma1_TC, psi_sigma, (True, True),
                   heeg_sampler, "T⊗C(S¹) -σ⊗id-> C(S¹)⊗C(S¹) <-ψ∘(σ⊗id)- T⊗C(S¹)")

    flip_gauge = Composite(gauge_TC, flip_CT, "g∘flip")
    heegaard_iso = ComponentMap("heegaard_iso", S3H, S3Hh, gauge_TC, flip_gauge,
                                "(a, b) ↦ (g(a), g(flip b))")
    heegaard_iso_inv = ComponentMap("heegaard_iso_inv", S3Hh, S3H, gauge_TC_inv,
                                    Composite(permutation_map((T, C), (1, 0), "flip[T⊗C]"), gauge_TC_inv),
                                    "(a, b) ↦ (g⁻¹(a), flip g⁻¹(b))")

    # omega, nu
    ins_T = InsertUnit((C,), (T,))
    omega = ComponentMap("omega", SUq2, S3H, Identity((T, C)), ins_T, "(t⊗u, v) ↦ (t⊗u, v⊗1)")
    nu = Pairing("nu", (T, T), S3H, sigma_on((T, T), 1, "id⊗σ[T⊗T]"), sigma_on((T, T), 0, "σ⊗id[T⊗T]"),
                 "t1⊗t2 ↦ (t1⊗σ(t2), σ(t1)⊗t2)")

    # B4: SUq2 -omega-> S3H <-nu- T⊗T
    def b4_sampler(rng, count=4):
        out = []
        for _ in range(count):
            tw = _rand_T(rng)
            c = _rand_c(rng)
            y = _word((T, T), tw, (0, 0), c=c)
            y = y + _kernel_rand(rng).tensor(_word((T,), _rand_T(rng)))
            s = PullbackElement(SUq2, nu.g1(y), Element((C,), {(twt(tw),): c}))
            out.append(PullbackElement(B4, s, y))
        return out

    B4 = Diagram("B4", SUq2, (T, T), S3H, omega, nu, (False, True), b4_sampler,
                 "C(SU_q(2)) -ω-> C(S³_H) <-ν- T⊗T")

    # S5H: S3H⊗T -id⊗sigma-> S3H⊗C <-nu⊗id- T⊗T⊗C
    S3H_T = S3H.tensor((T,))
    S3H_C = S3H.tensor((C,))
    id_sigma_S3H = ComponentMap("id⊗σ[S3H⊗T]", S3H_T, S3H_C, sigma_on((T, C, T), 2), sigma_on((C, T, T), 2),
                                "x⊗t ↦ x⊗σ(t)")
    nu_id = nu.tensor_id((C,))

    def s5h_sampler(rng, count=4):
        out = []
        nu_T = nu.tensor_id((T,))
        for _ in range(count):
            y = _word((T, T, T), _rand_T(rng), _rand_T(rng), _rand_T(rng), c=_rand_c(rng))
            a = nu_T(y)
            b = sigma_on((T, T, T), 2)(y)
            out.append(PullbackElement(S5H, a, b))
        return out

    S5H = Diagram("S5H", S3H_T, (T, T, C), S3H_C, id_sigma_S3H, nu_id, (True, True), s5h_sampler,
                  "C(S³_H)⊗T -id⊗σ-> C(S³_H)⊗C(S¹) <-ν⊗id- T⊗T⊗C(S¹)")

    # P5: SUq2 -id⊗1-> SUq2⊗C <-pr1⊗id- B4⊗C
    SUq2_C = SUq2.tensor((C,))
    B4_C = B4.tensor((C,))
    id_1 = InsertUnit(SUq2, (C,))
    pr1_id = Projection(B4, 1).tensor_id((C,))

    def p5_sampler(rng, count=4):
        out = []
        for s in b4_sampler(rng, count):
            b = InsertUnit(B4, (C,))(s)
            kern = PullbackElement(B4_C, zero_of(SUq2_C),
                                   _kernel_rand(rng).tensor(_kernel_rand(rng)).tensor(_word((C,), _rand_k(rng))))
            out.append(PullbackElement(P5, s.a1, b + kern))
        return out

    P5 = Diagram("P5", SUq2, B4_C, SUq2_C, id_1, pr1_id, (False, True), p5_sampler,
                 "C(SU_q(2)) -id⊗1-> C(SU_q(2))⊗C(S¹) <-pr1⊗id- B4⊗C(S¹)")

    # P1, P2, CP2T
    psi01_sigma = Composite(psi01, sigma1_TT, "psi01∘σ1")
    sigma1_TC2 = sigma_on((T, C), 0, "σ1[T⊗C]")
    phi_sigma = Composite(phi_tilde, sigma1_TC2, "phi_tilde∘σ1")

    def lifted(k):
        return lift_circle(k)

    def p1_pair(tw, tw2, c=1):
        k = -twt(tw) - twt(tw2)
        # b = t⊗t' ; a = lift(-w-w')... chosen so that sigma1(a) = psi01(sigma1(b))
        return (_word((T, T), lifted(k), tw2, c=c), _word((T, T), tw, tw2, c=c))

    def p1_sampler(rng, count=4):
        out = []
        for _ in range(count):
            a, b = p1_pair(_rand_T(rng), _rand_T(rng), _rand_c(rng))
            a = a + _kernel_rand(rng).tensor(_word((T,), _rand_T(rng)))
            b = b + _kernel_rand(rng).tensor(_word((T,), _rand_T(rng))).scale(_rand_c(rng))
            out.append(PullbackElement(P1, a, b))
        return out

    P1 = Diagram("P1", (T, T), (T, T), (C, T), sigma1_TT, psi01_sigma, (True, True), p1_sampler,
                 "T⊗T -σ1-> C(S¹)⊗T <-ψ01∘σ1- T⊗T")

    def p2_sampler(rng, count=4):
        out = []
        for _ in range(count):
            tw, j, c = _rand_T(rng), _rand_k(rng), _rand_c(rng)
            b = _word((T, C), tw, j, c=c)
            a = _word((T, C), lifted(-twt(tw) - j), j, c=c)
            a = a + _kernel_rand(rng).tensor(_word((C,), _rand_k(rng)))
            out.append(PullbackElement(P2, a, b))
        return out

    P2 = Diagram("P2", (T, C), (T, C), (C, C), sigma1_TC2, phi_sigma, (True, True), p2_sampler,
                 "T⊗C(S¹) -σ1-> C(S¹)⊗C(S¹) <-φ̃∘σ1- T⊗C(S¹)")

    sigma2_pair = ComponentMap("(σ2,σ2)", P1, P2, sigma_on((T, T), 1, "σ2[T⊗T]"), sigma_on((T, T), 1, "σ2[T⊗T]"),
                               "(a, b) ↦ (σ2(a), σ2(b))")
    gamma_leg = Pairing("gamma", (T, T), P2, Composite(psi02, sigma1_TT, "psi02∘σ1"),
                        Composite(psi12, sigma2_TT, "psi12∘σ2"), "γ = (ψ02∘σ1, ψ12∘σ2)")

    def cp2_sampler(rng, count=4):
        out = []
        for _ in range(count):
            tw, tw2, c = _rand_T(rng), _rand_T(rng), _rand_c(rng)
            k = -twt(tw) - twt(tw2)
            y = _word((T, T), tw, tw2, c=c)
            a = _word((T, T), tw2, lifted(k), c=c)
            b = _word((T, T), tw, lifted(k), c=c)
            kern = _kernel_rand(rng).tensor(_kernel_rand(rng))
            first = PullbackElement(P1, a + kern, b)
            y = y + _kernel_rand(rng).tensor(_kernel_rand(rng)).scale(_rand_c(rng))
            out.append(PullbackElement(CP2T, first, y))
        return out

    CP2T = Diagram("CP2T", P1, (T, T), P2, sigma2_pair, gamma_leg, (True, True), cp2_sampler,
                   "P1 -(σ2,σ2)-> P2 <-γ- T⊗T")

    for d in (S2q, SUq2, S3H, S3Hh, B4, S5H, P5, P1, P2, CP2T):
        _REGISTRY[d.name] = d

    # more named maps
    h = Induced("h", P2, S3Hh, antipode_on((T, C), 1, "id⊗S[T⊗C]"), antipode_on((T, C), 1, "id⊗S[T⊗C]"),
                antipode_on((C, C), 1, "id⊗S[C⊗C]"), "(a, b) ↦ ((id⊗S)a, (id⊗S)b)")
    h_inv = Induced("h_inv", S3Hh, P2, antipode_on((T, C), 1, "id⊗S[T⊗C]"), antipode_on((T, C), 1, "id⊗S[T⊗C]"),
                    antipode_on((C, C), 1, "id⊗S[C⊗C]"), "(a, b) ↦ ((id⊗S)a, (id⊗S)b)")

    def gh1(ws):
        t, t2 = ws
        return _word((T, C), t2, twt(t) + twt(t2))

    def gh2(ws):
        t, t2 = ws
        return _word((T, C), t, twt(t) + twt(t2))

    gamma_hat = Pairing("gamma_hat", (T, T), S3Hh, WordMap("gamma_hat1", (T, T), (T, C), gh1),
                        WordMap("gamma_hat2", (T, T), (T, C), gh2),
                        "t⊗t' ↦ (t'⊗u^(w+w'), t⊗u^(w+w'))")

    omega_1T = Composite(InsertUnit(S3H, (T,)), omega, "omega⊗1_T")
    omega_id = omega.tensor_id((C,))
    pr2_id = Projection(B4, 2).tensor_id((C,))
    f_map = Induced("f", P5, S5H, omega_1T, pr2_id, omega_id, "induced by (ω⊗1_T, pr2⊗id) over ω⊗id")

    # gauged presentations: the U(1)-action is moved onto the last circle factor
    gauge_SUq2 = ComponentMap("gauge[SUq2]", SUq2, None, gauge_TC, Identity((C,)), "(t⊗u^j, v) ↦ (t⊗u^(j+w), v)")
    coproduct_C = WordMap("Δ[C]", (C,), (C, C), lambda ws: _word((C, C), ws[0], ws[0]), formula="u^k ↦ u^k⊗u^k")

    def suqr_sampler(rng, count=4):
        return [gauge_SUq2(x) for x in suq_sampler(rng, count)]

    SUq2R = Diagram("SUq2^R", (T, C), (C,), (C, C), sigma1_TC, coproduct_C, (True, False), suqr_sampler,
                    "T⊗C(S¹) -σ⊗id-> C(S¹)⊗C(S¹) <-Δ- C(S¹)")
    gauge_SUq2.target = SUq2R
    gauge_SUq2_inv = ComponentMap("gauge_inv[SUq2]", SUq2R, SUq2, gauge_TC_inv, Identity((C,)),
                                  "(t⊗u^j, v) ↦ (t⊗u^(j-w), v)")

    def suqcr_sampler(rng, count=4):
        out = []
        for x in suq_sampler(rng, count):
            y = InsertUnit(SUq2, (C,))(x)
            out.append(PullbackElement(SUq2CR, gauge_component(y.a1, 2), gauge_component(y.a2, 1)))
        return out

    SUq2CR = Diagram("(SUq2⊗C)^R", (T, C, C), (C, C), (C, C, C), sigma_on((T, C, C), 0, "σ⊗id⊗id"),
                     InsertUnit((C, C), (C,), 1, "id⊗1⊗id"), (True, False), suqcr_sampler,
                     "T⊗C(S¹)⊗C(S¹) -σ⊗id⊗id-> C(S¹)^⊗3 <-id⊗1⊗id- C(S¹)⊗C(S¹)")
    _REGISTRY[SUq2R.name] = SUq2R
    _REGISTRY[SUq2CR.name] = SUq2CR
    _REGISTRY[gauged_diagram_S3H_T().name] = gauged_diagram_S3H_T()
    _REGISTRY[gauged_diagram_S3H_C().name] = gauged_diagram_S3H_C()

    # gauged maps, closed forms on components
    def beta1(ws):
        t, j = ws
        return _word((T, C, C), t, j - twt(t), j)

    def beta2(ws):
        return _word((C, C), ws[0], ws[0])

    beta_map = ComponentMap(
        "beta", SUq2R, SUq2CR, WordMap("beta1", (T, C), (T, C, C), beta1), WordMap("beta2", (C,), (C, C), beta2),
        "s ↦ g⁻¹(s_(0))⊗s_(1): t⊗u^j ↦ t⊗u^(j-w)⊗u^j, v ↦ v⊗v"
    )
    gauged_S3H_T = gauged_diagram_S3H_T()
    gauged_S3H_C = gauged_diagram_S3H_C()

    def Omega1(ws):
        t, j = ws
        return _word((T, T, C), t, (0, 0), j)

    def Omega2(ws):
        return _word((T, T, C), (0, 0), (0, 0), ws[0])

    Omega_map = ComponentMap("Omega", SUq2R, gauged_S3H_T, WordMap("Omega1", (T, C), (T, T, C), Omega1),
                             WordMap("Omega2", (C,), (T, T, C), Omega2), "(t⊗u, v) ↦ (t⊗1⊗u, 1⊗1⊗v)")

    def chi_c(ws):
        s, s2, j = ws
        return _word((T, C, C), s, j - twt(s) - twt(s2), j)

    chi_map = ComponentMap("chi", gauged_S3H_T, gauged_S3H_C, WordMap("chi1", (T, T, C), (T, C, C), chi_c),
                           WordMap("chi2", (T, T, C), (T, C, C), chi_c),
                           "(s⊗s'⊗u^j, t⊗t'⊗u^l) ↦ (s⊗u^(j-w-w')⊗u^j, t⊗u^(l-w-w')⊗u^l)")

    def beta_t1(ws):
        t = ws[0]
        return _word((T, C), t, -twt(t))

    beta_tilde = ComponentMap("beta_tilde", S2q, SUq2, WordMap("beta_tilde1", (T,), (T, C), beta_t1),
                              WordMap("c1[C]", (), (C,), lambda ws: _word((C,), 0)), "(t, c) ↦ (t⊗u^(-w), c·1)")
    Omega_tilde = ComponentMap("Omega_tilde", S2q, P1, InsertUnit((T,), (T,)),
                               WordMap("c1⊗1", (), (T, T), lambda ws: _word((T, T), (0, 0), (0, 0))),
                               "(t, c) ↦ (t⊗1, c·1⊗1)")

    for m in (psi01, psi02, psi12, phi_tilde, psi, alpha_tilde, alpha_map, gauge_TC, gauge_TC_inv):
        _register_morphism(m)
    _register_morphism(sigma_T, "sigma")
    _register_morphism(sigma1_TT, "sigma1")
    _register_morphism(sigma2_TT, "sigma2")
    for m in (gauge_SUq2, gauge_SUq2_inv, h, h_inv, gamma_hat, gamma_leg, omega, nu, beta_map, Omega_map, chi_map, beta_tilde, Omega_tilde,
              f_map, heegaard_iso, heegaard_iso_inv, sigma2_pair, omega_1T, omega_id, id_sigma_S3H, nu_id):
        _register_morphism(m)
    _register_morphism(Projection(B4, 1, "pr1"), "pr1")
    _register_morphism(Projection(B4, 2, "pr2"), "pr2")
    _register_morphism(Projection(P5, 1, "q1"), "q1")
    _register_morphism(pr1_id, "pr1⊗id")
    _register_morphism(pr2_id, "pr2⊗id")
    _register_morphism(id_1, "id⊗1")


@lru_cache(maxsize=None)
def gauged_diagram_S3H_T() -> "Diagram":
    """Componentwise gauge of S3H⊗T: both components become T⊗T⊗C with the action on the last factor."""
    sig = (T, T, C)

    def sampler(rng, count=4):
        base = make_diagram("S3H").tensor((T,))
        return [gauge_S3H_T(x) for x in base.samples(rng, count)]

    return Diagram("(S3H⊗T)^R", sig, sig, (C, T, C), sigma_on(sig, 0, "σ⊗id⊗id"), alpha_map, (True, True),
                   sampler, "(T⊗T⊗C)^R -σ⊗id⊗id-> (C⊗T⊗C)^R <-α- (T⊗T⊗C)^R")


@lru_cache(maxsize=None)
def gauged_diagram_S3H_C() -> "Diagram":
    sig = (T, C, C)

    def leg2(ws):
        t, a, j = ws
        return _word((C, C, C), a, twt(t), j)

    def sampler(rng, count=4):
        base = make_diagram("S3H").tensor((C,))
        return [gauge_S3H_C(x) for x in base.samples(rng, count)]

    leg1 = sigma_on(sig, 0, "σ⊗id⊗id")
    leg2m = WordMap("g(id⊗σ⊗id)g⁻¹", sig, (C, C, C), leg2, formula="t⊗u^a⊗u^j ↦ u^a⊗u^w⊗u^j")
    return Diagram("(S3H⊗C)^R", sig, sig, (C, C, C), leg1, leg2m, (True, True),
                   sampler, "(T⊗C⊗C)^R -σ⊗id⊗id-> (C⊗C⊗C)^R <-g(id⊗σ⊗id)g⁻¹- (T⊗C⊗C)^R")


def make_diagram(name: str) -> Diagram:
    if not _REGISTRY:
        _build_registry()
    aliases = {"S3H-heegaard": "S3H-heegaard-presentation", "SUq2": "SUq2-C*"}
    name = aliases.get(name, name)
    if name not in _REGISTRY:
        raise KeyError(f"unknown diagram {name!r}; known: {sorted(_REGISTRY)}")
    return _REGISTRY[name]


def named_morphism(name: str, x=None):
    if not _REGISTRY:
        _build_registry()
    if name not in _MORPHISMS:
        raise KeyError(f"unknown morphism {name!r}; known: {sorted(_MORPHISMS)}")
    m = _MORPHISMS[name]
    return m if x is None else m(x)


def registered_diagrams() -> list:
    if not _REGISTRY:
        _build_registry()
    return list(_REGISTRY.values())


def registered_morphisms() -> dict:
    if not _REGISTRY:
        _build_registry()
    return dict(_MORPHISMS)


def catalog() -> dict:
    return {
        "diagrams": [d.catalog_entry() for d in registered_diagrams()],
        "morphisms": [dict(m.catalog_entry(), key=k) for k, m in sorted(registered_morphisms().items())],
    }


# spectral subspaces and Milnor modules


def fixed_point(e, k: int = 0):
    """Weight-k part for the diagonal action (k = 0 gives the fixed-point part)."""
    return e.weight_component(k)


def milnor_module_member(diagram: Diagram, v1: Sequence, v2: Sequence, chi: Callable[[list], list],
                         tol: float | None = None) -> bool:
    """True iff chi((pi1 (x) id)(v1)) == (pi2 (x) id)(v2) for column vectors v1, v2."""
    if len(v1) != len(v2):
        raise ValueError("component vectors have different lengths")
    left = chi([diagram.pi1(x) for x in v1])
    right = [diagram.pi2(y) for y in v2]
    if len(left) != len(right):
        raise ValueError("chi changed the vector length")
    for a, b in zip(left, right):
        if tol is None and value_is_exact(a) and value_is_exact(b):
            if not values_equal(a, b):
                return False
        elif value_distance(a, b) > (1e-12 if tol is None else tol):
            return False
    return True


def identity_diagram(space, name=None) -> Diagram:
    """Trivial pullback space -> space <- space with identity legs."""
    return Diagram(name or f"id-pullback[{space_name(space)}]", space, space, space, Identity(space), Identity(space))


# gauge-composition derivations of the gauged maps (independent route to the closed forms)


def _move_last(x: Element, index: int) -> Element:
    n = len(x.signature)
    return x.permute([i for i in range(n) if i != index] + [index])


def _move_from_last(x: Element, index: int) -> Element:
    n = len(x.signature)
    perm = list(range(n - 1))
    perm.insert(index, n - 1)
    return x.permute(perm)


def gauge_component(x: Element, gauge_factor: int) -> Element:
    """Move the circle factor ``gauge_factor`` last, then rephase it by the weight of all others."""
    from .hopf import gauge

    return gauge(_move_last(x, gauge_factor))


def gauge_component_inv(x: Element, gauge_factor: int) -> Element:
    from .hopf import gauge_inv

    return _move_from_last(gauge_inv(x), gauge_factor)


def gauge_S3H_T(x: PullbackElement) -> PullbackElement:
    """S3H⊗T -> (S3H⊗T)^R: the S3H circle factor carries the action."""
    return PullbackElement(gauged_diagram_S3H_T(), gauge_component(x.a1, 1), gauge_component(x.a2, 0), x.status)


def gauge_S3H_C(x: PullbackElement) -> PullbackElement:
    """S3H⊗C -> (S3H⊗C)^R: the extra circle factor carries the action; C⊗T⊗C is reordered T⊗C⊗C."""
    a2 = gauge_component(x.a2, 2).permute([1, 0, 2])
    return PullbackElement(gauged_diagram_S3H_C(), gauge_component(x.a1, 2), a2, x.status)


def beta_by_gauge(s: PullbackElement) -> PullbackElement:
    """g o (id (x) 1) o g^-1 on C(SU_q(2))^R."""
    a1 = gauge_component_inv(s.a1, 1)
    a1 = _insert_value(a1, None, (C,), 0)
    # C^R carries the action on its only factor, so g^-1 fixes the second component
    a2 = _insert_value(s.a2, None, (C,), 0)
    return PullbackElement(make_diagram("(SUq2⊗C)^R"), gauge_component(a1, 2), gauge_component(a2, 1))


def Omega_by_gauge(s: PullbackElement) -> PullbackElement:
    """g o (omega (x) 1_T) o g^-1 on C(SU_q(2))^R."""
    a1 = gauge_component_inv(s.a1, 1)
    b1 = _insert_value(a1, None, (T,), 0)  # T⊗C⊗T
    b2 = _insert_value(_insert_value(s.a2, None, (T,), 0), None, (T,), 0)  # C⊗T⊗T
    return PullbackElement(gauged_diagram_S3H_T(), gauge_component(b1, 1), gauge_component(b2, 0))


def chi_by_gauge(x: PullbackElement) -> PullbackElement:
    """g o (id (x) sigma) o g^-1 on (S3H (x) T)^R; the sigma-image becomes the new gauge factor."""
    # first component: (T⊗T⊗C)^R -> T⊗C⊗T -> T⊗C⊗C -> T⊗C⊗C
    b1 = gauge_component_inv(x.a1, 1)
    b1 = b1.symbol_map(2)
    c1 = gauge_component(b1, 2)
    # second component: (T⊗T⊗C)^R -> C⊗T⊗T -> C⊗T⊗C -> (gauge on the sigma factor) -> T⊗C⊗C
    b2 = gauge_component_inv(x.a2, 0)
    b2 = b2.symbol_map(2)
    c2 = gauge_component(b2, 2).permute([1, 0, 2])
    return PullbackElement(gauged_diagram_S3H_C(), c1, c2)


def alpha_by_gauge(x: Element) -> Element:
    """g o (id (x) sigma (x) id) o g^-1 on (T⊗T⊗C)^R, the sigma factor becoming the gauge factor."""
    y = gauge_component_inv(x, 0)  # C⊗T⊗T
    y = y.symbol_map(1)  # C⊗C⊗T
    y = gauge_component(y, 1)  # C⊗T⊗C
    return y
