"""Matrices whose entries are word-algebra elements or pullback elements."""

from __future__ import annotations

from typing import Callable, Sequence

from .algebra import Element
from .pullback import (
    Diagram,
    PullbackElement,
    pb_compat,
    same_space,
    scalar_of,
    space_name,
    space_of,
    unit_of,
    value_distance,
    value_is_exact,
    values_equal,
    zero_of,
)


class ShapeError(ValueError):
    pass


class AlgebraMatrix:
    """rows x cols array of entries sharing one space (plain signature or diagram)."""

    __slots__ = ("space", "entries")

    def __init__(self, entries: Sequence[Sequence], space=None):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ShapeError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        if space is None:
            space = next((space_of(x) for r in rows for x in r if isinstance(x, (Element, PullbackElement))), None)
            if space is None:
                raise ShapeError("cannot infer the entry space from scalars only")
        self.space = space
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if not isinstance(x, (Element, PullbackElement)):
                    r[j] = scalar_of(space, x)
                elif not same_space(space_of(x), space):
                    raise ShapeError(f"entry ({i},{j}) lives in {space_name(space_of(x))}, not {space_name(space)}")
        self.entries = rows

    # construction

    @classmethod
    def identity(cls, n: int, space) -> "AlgebraMatrix":
        return cls([[unit_of(space) if i == j else zero_of(space) for j in range(n)] for i in range(n)], space)

    @classmethod
    def zeros(cls, rows: int, cols: int, space) -> "AlgebraMatrix":
        return cls([[zero_of(space)] * cols for _ in range(rows)], space)

    @classmethod
    def diag(cls, items: Sequence, space=None) -> "AlgebraMatrix":
        n = len(items)
        if space is None:
            space = space_of(next(x for x in items if isinstance(x, (Element, PullbackElement))))
        return cls([[items[i] if i == j else zero_of(space) for j in range(n)] for i in range(n)], space)

    @classmethod
    def scalar_matrix(cls, values: Sequence[Sequence], space) -> "AlgebraMatrix":
        return cls([[scalar_of(space, v) for v in row] for row in values], space)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["AlgebraMatrix"]]) -> "AlgebraMatrix":
        rows = []
        for brow in grid:
            height = brow[0].rows
            if any(b.rows != height for b in brow):
                raise ShapeError("block heights differ in a block row")
            for i in range(height):
                rows.append([x for b in brow for x in b.entries[i]])
        return cls(rows, grid[0][0].space)

    @classmethod
    def from_components(cls, diagram: Diagram, first: "AlgebraMatrix", second: "AlgebraMatrix") -> "AlgebraMatrix":
        """Entrywise pairs (first_ij, second_ij) over ``diagram``; compatibility left UNCHECKED."""
        if first.shape != second.shape:
            raise ShapeError("component matrices differ in shape")
        return cls(
            [[PullbackElement(diagram, a, b) for a, b in zip(ra, rb)] for ra, rb in zip(first.entries, second.entries)],
            diagram,
        )

    # shape and access

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "AlgebraMatrix":
        return AlgebraMatrix([[self.entries[i][j] for j in cols] for i in rows], self.space)

    def component(self, index: int) -> "AlgebraMatrix":
        """Leg 1 or leg 2 of a matrix over a pullback."""
        if index not in (1, 2):
            raise ValueError("leg index must be 1 or 2")
        if not isinstance(self.space, Diagram):
            raise ShapeError("entries are not pullback elements")
        sub = self.space.A1 if index == 1 else self.space.A2
        return AlgebraMatrix([[x.a1 if index == 1 else x.a2 for x in r] for r in self.entries], sub)

    # arithmetic

    def _same_shape(self, other: "AlgebraMatrix"):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return AlgebraMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.space)

    def __sub__(self, other):
        self._same_shape(other)
        return AlgebraMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.space)

    def __neg__(self):
        return AlgebraMatrix([[-a for a in r] for r in self.entries], self.space)

    def scale(self, s) -> "AlgebraMatrix":
        return AlgebraMatrix([[a.scale(s) for a in r] for r in self.entries], self.space)

    def __matmul__(self, other: "AlgebraMatrix") -> "AlgebraMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    p = a * b
                    acc = p if acc is None else acc + p
                row.append(zero_of(self.space) if acc is None else acc)
            out.append(row)
        return AlgebraMatrix(out, self.space)

    def __mul__(self, other):
        if isinstance(other, AlgebraMatrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "AlgebraMatrix":
        return AlgebraMatrix([[self.entries[j][i].adjoint() for j in range(self.rows)] for i in range(self.cols)],
                             self.space)

    def transpose(self) -> "AlgebraMatrix":
        return AlgebraMatrix([[self.entries[j][i] for j in range(self.rows)] for i in range(self.cols)], self.space)

    def conjugate_by_permutation(self, perm: Sequence[int]) -> "AlgebraMatrix":
        """P A P^T where row i of the result is row perm[i] of A."""
        perm = list(perm)
        if sorted(perm) != list(range(self.rows)) or self.rows != self.cols:
            raise ShapeError("permutation does not match a square matrix")
        return AlgebraMatrix([[self.entries[pi][pj] for pj in perm] for pi in perm], self.space)

    def map_entries(self, fn: Callable, space=None) -> "AlgebraMatrix":
        return AlgebraMatrix([[fn(x) for x in r] for r in self.entries], space)

    def trace(self):
        acc = zero_of(self.space)
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i][i]
        return acc

    # comparison

    @property
    def exact(self) -> bool:
        return all(value_is_exact(x) for r in self.entries for x in r)

    def __eq__(self, other):
        if not isinstance(other, AlgebraMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            values_equal(a, b) for r, s in zip(self.entries, other.entries) for a, b in zip(r, s)
        )

    __hash__ = None

    def distance(self, other: "AlgebraMatrix") -> float:
        self._same_shape(other)
        return max(value_distance(a, b) for r, s in zip(self.entries, other.entries) for a, b in zip(r, s))

    def max_coeff(self) -> float:
        return max(x.max_coeff() for r in self.entries for x in r)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def compat_defect(self, tol: float | None = None) -> float:
        """Largest leg-image defect over all pullback entries."""
        if not isinstance(self.space, Diagram):
            raise ShapeError("entries are not pullback elements")
        return max(pb_compat(x, tol).defect for r in self.entries for x in r)

    def checked(self, tol: float | None = None) -> "AlgebraMatrix":
        return self.map_entries(lambda x: x.checked(tol), self.space)

    # serialization

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "space": space_name(self.space),
            "entries": [[x.to_json() for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraMatrix":
        def load(d):
            return PullbackElement.from_json(d) if "diagram" in d else Element.from_json(d)

        entries = [[load(x) for x in r] for r in data["entries"]]
        if len(entries) != data["rows"] or any(len(r) != data["cols"] for r in entries):
            raise ShapeError("declared shape does not match entries")
        return cls(entries)

    def __repr__(self):
        inner = ";\n ".join(", ".join(repr(x) for x in r) for r in self.entries)
        return f"[{inner}]"
