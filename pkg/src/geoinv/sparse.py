"""Exact sparse integer matrices (row-of-dicts storage)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeMismatch


class SparseIntMatrix:
    """Sparse matrix of Python ints; zero entries are never stored.

    `data` maps a row number to ``{col: value}``; rows without entries are
    absent from the mapping.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: dict[int, dict[int, int]] | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        self.data: dict[int, dict[int, int]] = {}
        if data:
            for r, row in data.items():
                clean = {c: int(v) for c, v in row.items() if v}
                if clean:
                    self.data[r] = clean

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]):
        m = cls(rows, cols)
        for r, c, v in entries:
            m.add(r, c, v)
        return m

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c, v) for r, row in enumerate(dense) for c, v in enumerate(row))
        )

    def add(self, r: int, c: int, v: int):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"({r}, {c}) outside {self.shape}")
        if not v:
            return
        row = self.data.setdefault(r, {})
        new = row.get(c, 0) + int(v)
        if new:
            row[c] = new
        else:
            del row[c]
            if not row:
                del self.data[r]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def entries(self):
        """Nonzero ``(row, col, value)`` triplets in row-major order."""
        for r in sorted(self.data):
            row = self.data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def row(self, r: int) -> dict[int, int]:
        return dict(self.data.get(r, {}))

    def transpose(self) -> "SparseIntMatrix":
        out = SparseIntMatrix(self.cols, self.rows)
        for r, row in self.data.items():
            for c, v in row.items():
                out.data.setdefault(c, {})[r] = v
        return out

    def select_rows(self, rows: Sequence[int]) -> "SparseIntMatrix":
        out = SparseIntMatrix(len(rows), self.cols)
        for new, old in enumerate(rows):
            if old in self.data:
                out.data[new] = dict(self.data[old])
        return out

    def select_cols(self, cols: Sequence[int]) -> "SparseIntMatrix":
        remap = {old: new for new, old in enumerate(cols)}
        out = SparseIntMatrix(self.rows, len(cols))
        for r, row in self.data.items():
            kept = {remap[c]: v for c, v in row.items() if c in remap}
            if kept:
                out.data[r] = kept
        return out

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = SparseIntMatrix(self.rows, other.cols)
        for r, row in self.data.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                for c, w in other.data.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out.data[r] = acc
        return out

    def __matmul__(self, other):
        return self.matmul(other)

    def __sub__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        out = self.copy()
        for r, c, v in other.entries():
            out.add(r, c, -v)
        return out

    def __neg__(self):
        return SparseIntMatrix(
            self.rows, self.cols, {r: {c: -v for c, v in row.items()} for r, row in self.data.items()}
        )

    def copy(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols, self.data)

    def left_apply(self, vec: Sequence) -> list:
        """Exact product ``vec^T @ self`` for an int/Fraction vector."""
        if len(vec) != self.rows:
            raise ShapeMismatch(f"vector of length {len(vec)} against {self.shape}")
        out = [0] * self.cols
        for r, row in self.data.items():
            a = vec[r]
            if a:
                for c, v in row.items():
                    out[c] += a * v
        return out

    def apply(self, vec: Sequence) -> list:
        """Exact product ``self @ vec``."""
        if len(vec) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vec)} against {self.shape}")
        out = [0] * self.rows
        for r, row in self.data.items():
            out[r] = sum(v * vec[c] for c, v in row.items())
        return out

    def is_zero(self) -> bool:
        return not self.data

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            dense[r][c] = v
        return dense

    def to_numpy(self, dtype=float) -> np.ndarray:
        arr = np.zeros(self.shape, dtype=dtype)
        for r, c, v in self.entries():
            arr[r, c] = v
        return arr

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def integerize(vec: Sequence) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    fracs = [Fraction(v) for v in vec]
    den = lcm(*(f.denominator for f in fracs)) if fracs else 1
    return [int(f * den) for f in fracs]


def primitive(vec: Sequence[int]) -> list[int]:
    """Divide out the content and make the first nonzero entry positive."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g == 0:
        return list(vec)
    first = next(v for v in vec if v)
    if first < 0:
        g = -g
    return [v // g for v in vec]
