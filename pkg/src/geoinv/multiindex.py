"""Multi-indices and the monomial bases built from them.

Ordering convention used everywhere in the package:

* multi-indices are graded by total order; within one order they are sorted
  in *descending* lexicographic order of the exponent tuple, so the 2D
  order-2 set is ``(2,0), (1,1), (0,2)`` and the 3D order-3 set starts
  ``(3,0,0), (2,1,0), (2,0,1), (1,2,0), ...``;
* a degree-k monomial over an ordered base is the sorted tuple of base
  positions of its factors (with repetition); monomials are listed in
  ascending lexicographic order of that tuple, which is exactly the order
  of :func:`itertools.combinations_with_replacement`;
* a product basis concatenates the per-part position tuples and is listed
  in ascending lexicographic order of the concatenation (the order of
  :func:`itertools.product`).

Every matrix row/column and every kernel vector in the package is indexed
by this order.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .errors import BasisMismatch, InvalidDimension


class MultiIndex(tuple):
    """Exponent tuple ``(p1, ..., pn)`` addressing one moment."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @property
    def dim(self) -> int:
        return len(self)

    def order(self) -> int:
        return sum(self)

    def shifted(self, dec: int, inc: int) -> "MultiIndex":
        """Move one unit of exponent from slot `dec` to slot `inc`."""
        e = list(self)
        e[dec] -= 1
        e[inc] += 1
        return MultiIndex(e)

    def label(self) -> str:
        return "m" + "".join(str(e) for e in self) if max(self, default=0) < 10 \
            else "m_" + "_".join(str(e) for e in self)

    def __repr__(self):
        return f"MultiIndex{tuple(self)}"


def _compositions(p: int, n: int):
    # descending lexicographic
    if n == 1:
        yield (p,)
        return
    for first in range(p, -1, -1):
        for rest in _compositions(p - first, n - 1):
            yield (first,) + rest


def enumerate_order(n: int, p: int) -> list[MultiIndex]:
    """All multi-indices of dimension `n` and total order `p`, canonical order."""
    if n < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {n}")
    if p < 0:
        raise ValueError(f"order must be >= 0, got {p}")
    return [MultiIndex(c) for c in _compositions(p, n)]


def enumerate_up_to(n: int, max_order: int) -> list[MultiIndex]:
    out = []
    for p in range(max_order + 1):
        out.extend(enumerate_order(n, p))
    return out


@dataclass(frozen=True)
class MonomialEntry:
    """A product of moments, stored as ``(MultiIndex, power)`` pairs."""

    factors: tuple[tuple[MultiIndex, int], ...]

    def degree(self) -> int:
        return sum(k for _, k in self.factors)

    def key(self) -> tuple:
        """Order-independent identity of the product."""
        return tuple(sorted(self.factors))

    def as_counter(self) -> Counter:
        c = Counter()
        for idx, k in self.factors:
            c[idx] += k
        return c

    def exponent_sums(self) -> tuple[int, ...]:
        """Per-coordinate sums of ``(p_j + 1) * power`` over the factors."""
        n = self.factors[0][0].dim
        return tuple(sum((idx[j] + 1) * k for idx, k in self.factors) for j in range(n))

    def label(self) -> str:
        parts = []
        for idx, k in self.factors:
            parts.append(idx.label() + (f"^{k}" if k > 1 else ""))
        return "*".join(parts)

    def __repr__(self):
        return f"MonomialEntry({self.label()})"


def _entry_from_positions(base: Sequence[MultiIndex], positions: Sequence[int]):
    counts = Counter(positions)
    return [(base[i], counts[i]) for i in sorted(counts)]


def monomial_basis(base: Sequence[MultiIndex], k: int) -> list[MonomialEntry]:
    """All degree-`k` monomials over `base`, i.e. multisets of size `k`."""
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    base = [MultiIndex(b) for b in base]
    return [
        MonomialEntry(tuple(_entry_from_positions(base, combo)))
        for combo in itertools.combinations_with_replacement(range(len(base)), k)
    ]


def _normalize_parts(parts):
    merged: dict[int, int] = {}
    for p, k in parts:
        p, k = int(p), int(k)
        if p < 0 or k < 1:
            raise ValueError(f"invalid part (order={p}, degree={k})")
        merged[p] = merged.get(p, 0) + k
    return tuple(merged.items())


@dataclass(frozen=True)
class BasisDescriptor:
    """Ordered monomial basis mixing one or more (order, degree) parts.

    Parts sharing an order are merged (their degrees add), since the product
    of two monomial sets over the same moments is the higher-degree set.
    """

    dimension: int
    components: tuple[tuple[int, int], ...]
    entries: tuple[MonomialEntry, ...] = field(repr=False, compare=False)
    _lookup: dict = field(repr=False, compare=False, hash=False, default=None)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def position(self, factors) -> int:
        """Row/column position of a product given as ``{MultiIndex: power}`` or pairs."""
        items = factors.items() if isinstance(factors, dict) else factors
        key = tuple(sorted((idx, k) for idx, k in items if k))
        try:
            return self._lookup[key]
        except KeyError:
            raise BasisMismatch(f"product {key} is not an entry of {self.label()}") from None

    def contains(self, factors) -> bool:
        items = factors.items() if isinstance(factors, dict) else factors
        return tuple(sorted((idx, k) for idx, k in items if k)) in self._lookup

    @property
    def total_degree(self) -> int:
        return sum(k for _, k in self.components)

    def orders(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.components)

    def max_order(self) -> int:
        return max(self.orders())

    def label(self) -> str:
        return ",".join(f"{p}:{k}" for p, k in self.components)


def product_basis(parts: Sequence[tuple[int, int]], n: int) -> BasisDescriptor:
    """Basis of all products of one degree-k_i monomial from each part."""
    if n < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {n}")
    if not parts:
        raise ValueError("need at least one (order, degree) part")
    components = _normalize_parts(parts)
    per_part = [monomial_basis(enumerate_order(n, p), k) for p, k in components]
    entries = []
    for combo in itertools.product(*per_part):
        factors = tuple(f for entry in combo for f in entry.factors)
        entries.append(MonomialEntry(factors))
    lookup = {e.key(): i for i, e in enumerate(entries)}
    return BasisDescriptor(n, components, tuple(entries), lookup)


def basis_size(n: int, parts: Sequence[tuple[int, int]]) -> int:
    """Closed-form size of ``product_basis(parts, n)``."""
    size = 1
    for p, k in _normalize_parts(parts):
        m = comb(p + n - 1, n - 1)
        size *= comb(m + k - 1, k)
    return size


def parse_parts(text: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"2:1,5:2"`` into ``((2, 1), (5, 2))``."""
    parts = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        p, sep, k = chunk.partition(":")
        if not sep:
            raise ValueError(f"part {chunk!r} is not of the form p:k")
        parts.append((int(p), int(k)))
    if not parts:
        raise ValueError(f"no parts in {text!r}")
    return tuple(parts)
