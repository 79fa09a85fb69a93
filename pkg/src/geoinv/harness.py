"""Seeded numerical checks of invariance under random transformations.

Random draws come from numpy's ``default_rng`` (PCG64) seeded with the
caller's integer seed; trial ``t`` uses the seed sequence ``[seed, t]`` so
any single trial can be replayed.

Transforming a cloud multiplies every weight by ``|det A|``: the points
stand in for a density, and the volume element of a density changes by
that factor under ``X' = A X``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, IncompatibleClass
from .invariants import InvariantPolynomial
from .moments import PointCloud, central_moments, normalize_cloud
from .poly import condition_number, evaluate

TRANSFORM_KINDS = ("rotation", "scale", "affine", "translation")
SCALE_RANGE = (0.25, 4.0)

# transform classes each invariant class is expected to survive
COMPATIBLE = {
    "scale": ("scale", "translation"),
    "rotation": ("rotation", "translation"),
    "affine": ("rotation", "scale", "translation", "affine"),
}
REL_FLOOR = 1e-12


@dataclass
class TransformSpec:
    kind: str
    matrix: np.ndarray
    det: float
    offset: np.ndarray | None = None
    seed: int | None = None
    parts: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def _rng(seed):
    return np.random.default_rng(seed)


def random_rotation(n: int, rng) -> np.ndarray:
    """Haar-distributed proper rotation (QR of a Gaussian matrix)."""
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_scale(n: int, rng) -> np.ndarray:
    lo, hi = np.log(SCALE_RANGE[0]), np.log(SCALE_RANGE[1])
    return np.diag(np.exp(rng.uniform(lo, hi, size=n)))


def random_transform(n: int, kind: str, seed) -> TransformSpec:
    if n < 2:
        raise DimensionMismatch(f"dimension must be >= 2, got {n}")
    rng = _rng(seed)
    if kind == "rotation":
        q = random_rotation(n, rng)
        return TransformSpec(kind, q, 1.0, seed=seed)
    if kind == "scale":
        s = random_scale(n, rng)
        return TransformSpec(kind, s, float(np.prod(np.diag(s))), seed=seed)
    if kind == "affine":
        r1 = random_rotation(n, rng)
        s = random_scale(n, rng)
        r2 = random_rotation(n, rng)
        a = r2 @ s @ r1
        return TransformSpec(kind, a, float(np.prod(np.diag(s))), seed=seed,
                             parts={"R1": r1, "S": s, "R2": r2})
    if kind == "translation":
        offset = rng.uniform(-10.0, 10.0, size=n)
        return TransformSpec(kind, np.eye(n), 1.0, offset=offset, seed=seed)
    raise ValueError(f"unknown transform class {kind!r}")


def scale_transform(sigmas: Sequence[float]) -> TransformSpec:
    s = np.diag(np.asarray(sigmas, dtype=float))
    return TransformSpec("scale", s, float(np.prod(sigmas)))


def apply(t: TransformSpec, cloud: PointCloud) -> PointCloud:
    if t.dimension != cloud.dimension:
        raise DimensionMismatch(f"{t.dimension}D transform on a {cloud.dimension}D cloud")
    if t.kind == "translation":
        return PointCloud(cloud.coords + t.offset, cloud.weights.copy())
    coords = cloud.coords @ t.matrix.T
    return PointCloud(coords, cloud.weights * abs(t.det))


@dataclass
class CheckResult:
    label: str
    invariant_class: str
    transform_class: str
    trials: int
    max_rel_error: float
    tol: float
    seed: int | None
    reference: float
    condition: float = 1.0

    @property
    def passed(self) -> bool:
        return bool(self.max_rel_error <= self.tol)


@dataclass
class InvarianceReport:
    results: list[CheckResult]
    seed: int | None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_text(self) -> str:
        lines = [f"# seed={self.seed}"]
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status} {r.label} class={r.invariant_class} transform={r.transform_class} "
                         f"trials={r.trials} max_rel_err={r.max_rel_error:.3e} tol={r.tol:.1e} "
                         f"cond={r.condition:.1e} seed={r.seed}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "results": [
                {"invariant": r.label, "class": r.invariant_class, "transform": r.transform_class,
                 "trials": r.trials, "max_rel_error": r.max_rel_error, "tol": r.tol,
                 "passed": r.passed, "seed": r.seed, "reference": r.reference,
                 "condition": r.condition}
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _values(invs, cloud, max_order, with_condition=False):
    table = central_moments(cloud, max_order)
    vals = np.array([evaluate(inv, table) for inv in invs])
    if with_condition:
        return vals, [condition_number(inv, table) for inv in invs]
    return vals


def check_invariance(invs: Sequence[InvariantPolynomial], cloud: PointCloud, kind: str,
                     trials: int = 100, tol: float = 1e-8, seed: int = 0,
                     labels: Sequence[str] | None = None, transforms: Sequence[TransformSpec] | None = None,
                     force: bool = False, normalize: bool = True) -> InvarianceReport:
    """Max relative change of each invariant over random transforms of class `kind`.

    Relative error is ``|I(T X) - I(X)| / max(|I(X)|, 1e-12)``. Pairing an
    invariant with a transform class it is not built for raises
    IncompatibleClass unless `force` is set (negative controls).
    """
    if kind not in TRANSFORM_KINDS:
        raise ValueError(f"unknown transform class {kind!r}")
    if not force:
        for inv in invs:
            if kind not in COMPATIBLE[inv.kind]:
                raise IncompatibleClass(f"{inv.kind} invariants are not expected to survive {kind}")
    if normalize:
        cloud = normalize_cloud(cloud)
    labels = list(labels) if labels is not None else [f"{inv.label()}#{i}" for i, inv in enumerate(invs)]
    max_order = max((inv.max_order() for inv in invs), default=0)
    ref, cond = _values(invs, cloud, max_order, with_condition=True)
    if transforms is None:
        transforms = [random_transform(cloud.dimension, kind, [seed, t]) for t in range(trials)]
    worst = np.zeros(len(invs))
    for t in transforms:
        vals = _values(invs, apply(t, cloud), max_order)
        err = np.abs(vals - ref) / np.maximum(np.abs(ref), REL_FLOOR)
        worst = np.maximum(worst, err)
    results = [
        CheckResult(labels[i], inv.kind, kind, len(transforms), float(worst[i]), tol, seed,
                    float(ref[i]), float(cond[i]))
        for i, inv in enumerate(invs)
    ]
    return InvarianceReport(results, seed)


def default_tolerance(inv_kind: str) -> float:
    return 1e-9 if inv_kind == "scale" else 1e-8


def verify_all(invs: Sequence[InvariantPolynomial], cloud: PointCloud, trials: int = 100,
               tol: float | None = None, seed: int = 0) -> InvarianceReport:
    """Check every invariant against every transform class it should survive."""
    results = []
    for i, inv in enumerate(invs):
        label = f"{inv.label()}#{i}"
        for kind in COMPATIBLE[inv.kind]:
            t = default_tolerance(inv.kind) if tol is None else tol
            rep = check_invariance([inv], cloud, kind, trials, t, seed, labels=[label])
            results.extend(rep.results)
    return InvarianceReport(results, seed)
