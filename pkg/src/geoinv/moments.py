"""Central moments of discrete weighted point sets."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from . import _accel
from .errors import DegenerateCloud, DimensionMismatch, InvalidDimension, MalformedFile
from .multiindex import MultiIndex, enumerate_up_to

# clouds at least this large are summed with compensation
COMPENSATED_THRESHOLD = 100_000


@dataclass
class PointCloud:
    """Points as an ``(N, n)`` array with one positive weight per point."""

    coords: np.ndarray
    weights: np.ndarray = None

    def __post_init__(self):
        self.coords = np.atleast_2d(np.asarray(self.coords, dtype=np.float64))
        if self.weights is None:
            self.weights = np.ones(len(self.coords))
        self.weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if self.coords.ndim != 2 or self.coords.shape[0] != self.weights.shape[0]:
            raise DimensionMismatch(
                f"coords {self.coords.shape} and weights {self.weights.shape} disagree")
        if self.coords.shape[1] < 2:
            raise InvalidDimension(f"dimension must be >= 2, got {self.coords.shape[1]}")

    @property
    def dimension(self) -> int:
        return self.coords.shape[1]

    def __len__(self):
        return self.coords.shape[0]

    def total_weight(self) -> float:
        return float(self.weights.sum())


@dataclass
class MomentTable:
    """Central moments ``mu[idx]`` for every multi-index of order <= max_order."""

    dimension: int
    max_order: int
    values: dict[MultiIndex, float]
    centroid: tuple[float, ...] = field(default=())

    def __getitem__(self, idx) -> float:
        return self.values[MultiIndex(idx)]

    @property
    def mu0(self) -> float:
        return self.values[MultiIndex((0,) * self.dimension)]


def _check_weight(cloud: PointCloud) -> float:
    total = cloud.total_weight()
    if not total > 0:
        raise DegenerateCloud(f"total weight must be positive, got {total}")
    return total


def centroid(cloud: PointCloud) -> np.ndarray:
    total = _check_weight(cloud)
    return (cloud.weights @ cloud.coords) / total


def central_moments(cloud: PointCloud, max_order: int, compensated: bool | None = None) -> MomentTable:
    """Weighted central moments up to `max_order`.

    Each moment is the direct sum ``sum_i w_i prod_j (x_ij - c_j)^p_j``.
    Summation is compensated for clouds of at least
    ``COMPENSATED_THRESHOLD`` points unless `compensated` says otherwise.
    """
    if max_order < 0:
        raise ValueError(f"max_order must be >= 0, got {max_order}")
    c = centroid(cloud)
    idxs = enumerate_up_to(cloud.dimension, max_order)
    exps = np.array(idxs, dtype=np.int64).reshape(len(idxs), cloud.dimension)
    if compensated is None:
        compensated = len(cloud) >= COMPENSATED_THRESHOLD
    sums = _accel.moment_sums(cloud.coords - c, cloud.weights, exps, compensated)
    values = {idx: float(v) for idx, v in zip(idxs, sums)}
    return MomentTable(cloud.dimension, max_order, values, tuple(float(x) for x in c))


def uniform_scale_normalize(table: MomentTable) -> dict[MultiIndex, float]:
    """Divide each order-p moment by ``mu0 ** ((p + n) / n)``."""
    mu0 = table.mu0
    if not mu0 > 0:
        raise DegenerateCloud(f"mu0 must be positive, got {mu0}")
    n = table.dimension
    return {idx: v / mu0 ** ((idx.order() + n) / n) for idx, v in table.values.items()}


def normalize_cloud(cloud: PointCloud) -> PointCloud:
    """Centre the cloud, rescale it to unit weighted RMS radius and unit total weight."""
    c = centroid(cloud)
    total = cloud.total_weight()
    x = cloud.coords - c
    rms = np.sqrt((cloud.weights @ (x * x).sum(axis=1)) / total)
    if rms == 0:
        raise DegenerateCloud("all points coincide")
    return PointCloud(x / rms, cloud.weights / total)


def parse_points(text: str, dim: int | None = None) -> PointCloud:
    """Parse the whitespace point format.

    One point per line: n coordinates and an optional trailing weight.
    Blank lines and lines starting with ``#`` are skipped. The first data
    line fixes the column count; weights are present iff a line has n+1
    columns, so the dimension is taken from the first line's column count
    unless `dim` is passed or a ``# dim=<n>`` comment precedes the data.
    """
    ncols = None
    coords, weights = [], []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            tag = s[1:].strip()
            if tag.startswith("dim=") and ncols is None:
                if dim is not None and tag[4:].strip() != str(dim):
                    raise MalformedFile(f"file declares {tag!r}, expected dim={dim}", line=lineno)
                try:
                    dim = int(tag[4:])
                except ValueError:
                    raise MalformedFile(f"bad dimension tag {tag!r}", line=lineno) from None
            continue
        fields = s.split()
        try:
            vals = [float(f) for f in fields]
        except ValueError as exc:
            raise MalformedFile(str(exc), line=lineno) from None
        if ncols is None:
            ncols = len(vals)
            if dim is None:
                dim = ncols
            if ncols not in (dim, dim + 1):
                raise MalformedFile(f"{ncols} columns for dimension {dim}", line=lineno)
        if len(vals) != ncols:
            raise MalformedFile(f"expected {ncols} columns, got {len(vals)}", line=lineno)
        coords.append(vals[:dim])
        weights.append(vals[dim] if ncols == dim + 1 else 1.0)
    if not coords:
        raise MalformedFile("no points")
    return PointCloud(np.array(coords), np.array(weights))


def read_points(path: str | os.PathLike, dim: int | None = None) -> PointCloud:
    return parse_points(Path(path).read_text(), dim)


def format_points(cloud: PointCloud, with_weights: bool = True) -> str:
    lines = [f"# dim={cloud.dimension}"]
    for x, w in zip(cloud.coords, cloud.weights):
        row = " ".join(repr(float(v)) for v in x)
        lines.append(f"{row} {float(w)!r}" if with_weights else row)
    return "\n".join(lines) + "\n"


def random_cloud(n: int, npoints: int, seed: int = 0) -> PointCloud:
    """Generic test cloud: skewed, anisotropic, with varying positive weights.

    Exponentially distributed coordinates give every odd-order moment a
    sizeable value, so odd-order invariants do not sit near zero.
    """
    rng = np.random.default_rng(seed)
    x = rng.exponential(size=(npoints, n))
    mix = np.eye(n) + 0.3 * rng.normal(size=(n, n))
    w = rng.uniform(0.5, 1.5, size=npoints)
    return normalize_cloud(PointCloud(x @ mix.T, w))


def moments_from_mapping(n: int, values: Mapping) -> MomentTable:
    """Wrap a ``{index: value}`` mapping (e.g. exact Fractions) as a table."""
    vals = {MultiIndex(k): v for k, v in values.items()}
    for k in vals:
        if len(k) != n:
            raise DimensionMismatch(f"index {tuple(k)} in a {n}D table")
    top = max((k.order() for k in vals), default=0)
    return MomentTable(n, top, vals)
