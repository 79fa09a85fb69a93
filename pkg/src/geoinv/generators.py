"""Rotation-plane generators and the integer derivative operators they induce.

For a plane ``(a, b)`` the generator ``E`` has ``E[b][a] = +1`` and
``E[a][b] = -1`` (1-based axes), so in 2D it is ``[[0, -1], [1, 0]]``.
Points move as ``dX/dt = E X`` and a moment ``m_p`` moves as

    dm_p/dt = sum_ij p_i E[i][j] m_{p - e_i + e_j}

which is a combination of moments of the same order. On a monomial basis the
product rule turns this into an integer matrix ``M`` with ``dv/dt = M v``.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import InvalidDimension
from .multiindex import BasisDescriptor, MultiIndex
from .sparse import SparseIntMatrix


class RotationPlane(NamedTuple):
    """Plane spanned by axes `a` < `b` (1-based)."""

    a: int
    b: int

    def label(self) -> str:
        return f"{self.a}{self.b}"


def rotation_planes(n: int) -> list[RotationPlane]:
    if n < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {n}")
    return [RotationPlane(a, b) for a, b in combinations(range(1, n + 1), 2)]


def fan_planes(n: int) -> list[RotationPlane]:
    """The n-1 planes containing the first axis."""
    if n < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {n}")
    return [RotationPlane(1, b) for b in range(2, n + 1)]


def planes_for(n: int, mode: str) -> list[RotationPlane]:
    if mode == "fan":
        return fan_planes(n)
    if mode == "all":
        return rotation_planes(n)
    raise ValueError(f"unknown plane mode {mode!r} (expected 'fan' or 'all')")


def _check_plane(plane: RotationPlane, n: int):
    a, b = plane
    if not (1 <= a < b <= n):
        raise ValueError(f"invalid plane {tuple(plane)} for dimension {n}")


def generator_sign_convention(plane: RotationPlane, n: int) -> list[list[int]]:
    """Antisymmetric n x n integer generator of a unit-speed rotation in `plane`."""
    _check_plane(plane, n)
    a, b = plane[0] - 1, plane[1] - 1
    E = [[0] * n for _ in range(n)]
    E[b][a] = 1
    E[a][b] = -1
    return E


def derivative_with_generator(idx: MultiIndex, E: Sequence[Sequence[int]]) -> dict[MultiIndex, int]:
    """Time derivative of ``m_idx`` under ``dX/dt = E X`` as ``{index: coefficient}``."""
    n = len(idx)
    out: Counter = Counter()
    for i in range(n):
        if idx[i] == 0:
            continue
        for j in range(n):
            l = E[i][j]
            if l:
                out[idx.shifted(i, j)] += idx[i] * l
    return {k: v for k, v in out.items() if v}


def derivative_single(idx: MultiIndex, plane: RotationPlane) -> dict[MultiIndex, int]:
    """Time derivative of one moment under unit rotational speed in `plane`."""
    idx = MultiIndex(idx)
    return derivative_with_generator(idx, generator_sign_convention(plane, idx.dim))


def operator_from_generator(desc: BasisDescriptor, E: Sequence[Sequence[int]],
                            rows: Sequence[int] | None = None) -> SparseIntMatrix:
    """Product-rule lift of a generator to `desc`.

    If `rows` is given only those entries are differentiated; the result is
    then ``len(rows) x len(desc)``.
    """
    row_ids = range(len(desc)) if rows is None else rows
    derivs: dict[MultiIndex, dict[MultiIndex, int]] = {}
    out = SparseIntMatrix(len(row_ids), len(desc))
    for r, i in enumerate(row_ids):
        entry = desc[i]
        base = entry.as_counter()
        for idx, power in entry.factors:
            d = derivs.get(idx)
            if d is None:
                d = derivs[idx] = derivative_with_generator(idx, E)
            for new_idx, c in d.items():
                factors = base.copy()
                factors[idx] -= 1
                factors[new_idx] += 1
                # a product-rule term outside the basis raises BasisMismatch
                out.add(r, desc.position(factors), power * c)
    return out


@lru_cache(maxsize=256)
def _cached_operator(desc: BasisDescriptor, plane: RotationPlane) -> SparseIntMatrix:
    return operator_from_generator(desc, generator_sign_convention(plane, desc.dimension))


def operator_on_basis(desc: BasisDescriptor, plane: RotationPlane) -> SparseIntMatrix:
    """Integer matrix ``M`` with ``dv/dt = M v`` for unit speed in `plane`.

    Results are cached per (descriptor, plane); a copy is returned so callers
    may mutate it.
    """
    _check_plane(plane, desc.dimension)
    return _cached_operator(desc, RotationPlane(*plane)).copy()


def restricted_operator(desc: BasisDescriptor, plane: RotationPlane,
                        rows: Sequence[int]) -> SparseIntMatrix:
    """Rows of :func:`operator_on_basis` for the given entry positions."""
    return operator_on_basis(desc, plane).select_rows(list(rows))
