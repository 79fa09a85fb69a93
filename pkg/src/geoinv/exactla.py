"""Exact rational null spaces of sparse integer systems.

Elimination is fraction-free on Python ints. Rows stay sparse dicts and are
divided by their content after every update, which keeps entries small
without ever leaving the integers. The pivot in each column is the entry of
largest magnitude, ties going to the lowest remaining row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import ShapeMismatch
from .sparse import SparseIntMatrix, integerize, primitive


@dataclass(frozen=True)
class KernelBasis:
    """Canonical integer basis of a null space.

    The vectors are the rows of the reduced row echelon form of the kernel,
    each scaled to a primitive integer vector with positive leading entry,
    sorted by leading position. Two systems with the same null space give
    identical bases.
    """

    ambient: int
    vectors: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def contains(self, vec: Sequence) -> bool:
        """Exact span-membership test."""
        return in_span(self.vectors, vec)


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = _content(row)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _combine(p: int, row: dict[int, int], f: int, prow: dict[int, int]) -> dict[int, int]:
    """``p*row - f*prow`` with zeros dropped, then made content-free."""
    out = {c: p * v for c, v in row.items()}
    for c, v in prow.items():
        new = out.get(c, 0) - f * v
        if new:
            out[c] = new
        else:
            out.pop(c, None)
    return _normalize(out)


def echelon(rows: Sequence[dict[int, int]], ncols: int, reduced: bool = True):
    """Fraction-free (reduced) row echelon form.

    Returns ``[(pivot_col, row_dict), ...]`` sorted by pivot column. With
    `reduced`, every pivot column is zero in all other returned rows.
    """
    active = [_normalize(dict(r)) for r in rows if r]
    pivots: list[tuple[int, dict[int, int]]] = []
    for c in range(ncols):
        best = -1
        best_mag = 0
        for i, r in enumerate(active):
            v = r.get(c)
            if v is not None and abs(v) > best_mag:
                best, best_mag = i, abs(v)
        if best < 0:
            continue
        prow = active.pop(best)
        p = prow[c]
        nxt = []
        for r in active:
            f = r.get(c)
            if f is not None:
                r = _combine(p, r, f, prow)
            if r:
                nxt.append(r)
        active = nxt
        pivots.append((c, prow))
    if reduced:
        for k in range(len(pivots) - 1, -1, -1):
            c, prow = pivots[k]
            p = prow[c]
            for j in range(k):
                cj, r = pivots[j]
                f = r.get(c)
                if f is not None:
                    pivots[j] = (cj, _combine(p, r, f, prow))
    return [(c, _orient(r, c)) for c, r in pivots]


def _orient(row, c):
    if row[c] < 0:
        return {k: -v for k, v in row.items()}
    return row


def stack_transposed(ops: Sequence[SparseIntMatrix], extra_rows: Sequence[Sequence] = (),
                     width: int | None = None) -> SparseIntMatrix:
    """Vertical stack of ``op.T`` for every op, followed by `extra_rows`.

    Extra rows may be rational; each is cleared to integers by its own
    common denominator (which does not change the null space).
    """
    if width is None:
        if ops:
            width = ops[0].rows
        elif extra_rows:
            width = len(extra_rows[0])
        else:
            width = 0
    for op in ops:
        if op.rows != width:
            raise ShapeMismatch(f"operator with {op.rows} rows in a stack of width {width}")
    for row in extra_rows:
        if len(row) != width:
            raise ShapeMismatch(f"extra row of length {len(row)} in a stack of width {width}")
    total = sum(op.cols for op in ops) + len(extra_rows)
    out = SparseIntMatrix(total, width)
    offset = 0
    for op in ops:
        t = op.transpose()
        for r, row in t.data.items():
            out.data[offset + r] = dict(row)
        offset += op.cols
    for row in extra_rows:
        ints = integerize(row)
        d = {c: v for c, v in enumerate(ints) if v}
        if d:
            out.data[offset] = d
        offset += 1
    return out


def prune_zero_rows(m: SparseIntMatrix) -> SparseIntMatrix:
    """Drop all-zero rows; the null space is unchanged."""
    keep = sorted(m.data)
    return m.select_rows(keep)


def rank(m: SparseIntMatrix) -> int:
    return len(echelon(list(m.data.values()), m.cols, reduced=False))


def _kernel_from_rref(pivots, ncols):
    pivot_cols = {c for c, _ in pivots}
    vectors = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for c, row in pivots:
            v = row.get(f)
            if v:
                x[c] = Fraction(-v, row[c])
        vectors.append(integerize(x))
    return vectors


def canonical_basis(vectors: Sequence[Sequence], ambient: int) -> KernelBasis:
    """Canonical basis (primitive RREF rows) of the span of `vectors`."""
    rows = []
    for v in vectors:
        ints = integerize(v)
        rows.append({c: x for c, x in enumerate(ints) if x})
    rref = echelon(rows, ambient, reduced=True)
    out = []
    for _, row in rref:
        dense = [0] * ambient
        for c, v in row.items():
            dense[c] = v
        out.append(tuple(primitive(dense)))
    return KernelBasis(ambient, tuple(out))


def rational_kernel(m: SparseIntMatrix) -> KernelBasis:
    """Exact null space ``{x : m x = 0}`` in canonical integer form."""
    pivots = echelon(list(m.data.values()), m.cols, reduced=True)
    return canonical_basis(_kernel_from_rref(pivots, m.cols), m.cols)


def in_span(basis: Sequence[Sequence], vec: Sequence) -> bool:
    """Exact test whether `vec` is a rational combination of `basis`."""
    if not any(vec):
        return True
    ambient = len(vec)
    rows = [{c: x for c, x in enumerate(integerize(b)) if x} for b in basis]
    r0 = len(echelon(rows, ambient, reduced=False))
    rows.append({c: x for c, x in enumerate(integerize(vec)) if x})
    return len(echelon(rows, ambient, reduced=False)) == r0


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], ambient: int) -> bool:
    return canonical_basis(a, ambient).vectors == canonical_basis(b, ambient).vectors
