"""Scale, rotation and affine invariants as kernels of integer systems.

* scale: single monomials whose per-coordinate sums ``sum (p_j + 1) k`` are
  all equal to some d, divided by ``mu0 ** d``;
* rotation: ``alpha . v`` with ``alpha^T M = 0`` for every plane operator M;
* affine: the same condition restricted to a scale-invariant selection, so
  the combination survives both rotations and axis scalings, and hence any
  proper linear map ``A = R2 S R1``.
"""

from __future__ import annotations

import itertools
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BasisMismatch, ShapeMismatch
from .exactla import KernelBasis, canonical_basis, prune_zero_rows, rational_kernel, stack_transposed
from .generators import RotationPlane, operator_on_basis, planes_for
from .multiindex import BasisDescriptor, MonomialEntry, MultiIndex
from .sparse import SparseIntMatrix

KINDS = ("scale", "rotation", "affine")


@dataclass(frozen=True)
class InvariantPolynomial:
    """``sum(coef * entry) / mu0 ** denominator_power`` over one basis.

    `kind` is the invariance class (scale, rotation or affine); `components`
    and `planes` record how the invariant was generated.
    """

    dimension: int
    kind: str
    terms: tuple[tuple[MonomialEntry, Fraction], ...]
    denominator_power: int
    components: tuple[tuple[int, int], ...]
    planes: str = "fan"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown invariant class {self.kind!r}")
        if not self.terms:
            raise ValueError("an invariant needs at least one term")
        if any(c == 0 for _, c in self.terms):
            raise ValueError("zero coefficient stored in an invariant")

    def orders(self) -> set[int]:
        return {idx.order() for e, _ in self.terms for idx, _ in e.factors}

    def max_order(self) -> int:
        return max(self.orders())

    def coefficient_vector(self, desc: BasisDescriptor) -> list[Fraction]:
        vec = [Fraction(0)] * len(desc)
        for entry, c in self.terms:
            vec[desc.position(entry.factors)] += c
        return vec

    def scaled(self, factor) -> "InvariantPolynomial":
        factor = Fraction(factor)
        return InvariantPolynomial(
            self.dimension, self.kind, tuple((e, c * factor) for e, c in self.terms),
            self.denominator_power, self.components, self.planes)

    def label(self) -> str:
        return f"{self.kind}[{','.join(f'{p}:{k}' for p, k in self.components)}]"

    def __str__(self):
        chunks = []
        for entry, c in self.terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            chunks.append(f"{sign} {coef}{entry.label()}")
        body = " ".join(chunks).lstrip("+ ")
        if self.denominator_power:
            zero = MultiIndex((0,) * self.dimension).label()
            return f"({body}) / {zero}^{self.denominator_power}"
        return body


@dataclass(frozen=True)
class ScaleSelection:
    descriptor: BasisDescriptor
    selected: tuple[int, ...]
    d: int | None

    def __len__(self):
        return len(self.selected)

    def entries(self) -> list[MonomialEntry]:
        return [self.descriptor[i] for i in self.selected]


@dataclass
class GenerationReport:
    """Sizes met while generating invariants for one descriptor."""

    kind: str
    basis_size: int
    selected: int | None = None
    d: int | None = None
    system_shape: tuple[int, int] | None = None
    pruned_shape: tuple[int, int] | None = None
    kernel_dim: int = 0
    known_rows: int = 0
    planes: str = "fan"
    notes: list[str] = field(default_factory=list)


def select_scale_invariant(desc: BasisDescriptor) -> ScaleSelection:
    """Entries whose weighted exponent sums agree across coordinates."""
    selected = []
    d = None
    for i, entry in enumerate(desc):
        sums = entry.exponent_sums()
        if all(s == sums[0] for s in sums):
            if d is None:
                d = sums[0]
            elif sums[0] != d:
                # cannot happen for homogeneous descriptors; kept as a guard
                raise BasisMismatch(f"scale selection mixes d={d} and d={sums[0]}")
            selected.append(i)
    return ScaleSelection(desc, tuple(selected), d)


def _resolve_planes(desc: BasisDescriptor, planes) -> tuple[str, list[RotationPlane]]:
    if isinstance(planes, str):
        return planes, planes_for(desc.dimension, planes)
    planes = [RotationPlane(*p) for p in planes]
    return "custom", planes


def scale_invariants(desc: BasisDescriptor) -> list[InvariantPolynomial]:
    sel = select_scale_invariant(desc)
    return [
        InvariantPolynomial(desc.dimension, "scale", ((desc[i], Fraction(1)),), sel.d,
                            desc.components, "none")
        for i in sel.selected
    ]


def rotation_system(desc: BasisDescriptor, planes="fan") -> SparseIntMatrix:
    """Stacked transposed plane operators over the full basis."""
    _, plist = _resolve_planes(desc, planes)
    return stack_transposed([operator_on_basis(desc, p) for p in plist])


def affine_system(desc: BasisDescriptor, planes="fan",
                  selection: ScaleSelection | None = None) -> SparseIntMatrix:
    """Stacked transposes of the plane operators restricted to selected rows."""
    sel = selection or select_scale_invariant(desc)
    _, plist = _resolve_planes(desc, planes)
    ops = [operator_on_basis(desc, p).select_rows(sel.selected) for p in plist]
    return stack_transposed(ops, width=len(sel.selected))


def _to_invariants(desc, kernel: KernelBasis, kind, d, columns, planes_label):
    out = []
    for vec in kernel:
        terms = tuple((desc[columns[j]], Fraction(c)) for j, c in enumerate(vec) if c)
        out.append(InvariantPolynomial(desc.dimension, kind, terms, d, desc.components, planes_label))
    return out


def _known_rows(known, width, columns=None, full=None, report=None):
    rows = []
    skipped = 0
    keep = set(columns) if columns is not None else None
    for vec in known:
        if len(vec) == width:
            rows.append(list(vec))
        elif columns is not None and len(vec) == full:
            if any(v for c, v in enumerate(vec) if c not in keep):
                # not supported on the scale selection, so not an affine invariant
                skipped += 1
                continue
            rows.append([vec[c] for c in columns])
        else:
            raise ShapeMismatch(f"known vector of length {len(vec)}, expected {width}"
                                + (f" or {full}" if full is not None else ""))
    if skipped and report is not None:
        report.notes.append(f"ignored {skipped} known vector(s) with support outside the scale selection")
    return rows


def generate(desc: BasisDescriptor, kind: str, planes="fan", known: Sequence[Sequence] = (),
             orbits: bool = False) -> tuple[list[InvariantPolynomial], GenerationReport]:
    """Generate invariants of one class and report the system sizes.

    `known` holds coefficient vectors (over the full basis, or over the
    scale selection for the affine class) that every result must be
    orthogonal to; this is how products of lower invariants are excluded.
    For the affine class a full-width known vector that has weight outside
    the scale selection cannot be an affine invariant and is ignored.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown invariant class {kind!r}")
    if len(desc) == 0:
        raise ValueError("empty descriptor")
    label, plist = _resolve_planes(desc, planes)
    report = GenerationReport(kind, len(desc), planes=label)
    if kind == "scale":
        if known:
            raise ValueError("known products are not used for scale invariants")
        invs = scale_invariants(desc)
        report.selected = len(invs)
        report.d = select_scale_invariant(desc).d
        report.kernel_dim = len(invs)
        return invs, report

    if kind == "rotation":
        columns = list(range(len(desc)))
        system = rotation_system(desc, plist)
        d = 0
        extra = _known_rows(known, len(desc))
    else:
        sel = select_scale_invariant(desc)
        report.selected = len(sel)
        report.d = sel.d
        if not sel.selected:
            report.notes.append("no scale-invariant entries")
            return [], report
        columns = list(sel.selected)
        system = affine_system(desc, plist, sel)
        d = sel.d
        extra = _known_rows(known, len(columns), columns, len(desc), report)

    report.system_shape = system.shape
    pruned = prune_zero_rows(system)
    report.pruned_shape = pruned.shape
    if extra:
        report.known_rows = len(extra)
        pruned = stack_transposed([], [list(r) for r in _rows_of(pruned)] + extra, width=pruned.cols)

    if kind == "affine" and orbits:
        kernel = _orbit_kernel(pruned, ScaleSelection(desc, tuple(columns), d), report)
    else:
        kernel = rational_kernel(pruned)
    report.kernel_dim = len(kernel)
    return _to_invariants(desc, kernel, kind, d, columns, label), report


def _rows_of(m: SparseIntMatrix):
    for r in range(m.rows):
        dense = [0] * m.cols
        for c, v in m.data.get(r, {}).items():
            dense[c] = v
        yield dense


def rotation_invariants(desc: BasisDescriptor, planes="fan") -> list[InvariantPolynomial]:
    return generate(desc, "rotation", planes)[0]


def affine_invariants(desc: BasisDescriptor, planes="fan", orbits: bool = False) -> list[InvariantPolynomial]:
    return generate(desc, "affine", planes, orbits=orbits)[0]


def independent_invariants(desc: BasisDescriptor, known: Sequence[Sequence], kind: str,
                           planes="fan") -> list[InvariantPolynomial]:
    """Invariants of `desc` orthogonal to every vector in `known`."""
    if kind not in ("rotation", "affine"):
        raise ValueError(f"redundancy removal applies to rotation/affine, not {kind!r}")
    return generate(desc, kind, planes, known)[0]


def multiply(a: InvariantPolynomial, b: InvariantPolynomial) -> dict[tuple, Fraction]:
    """Product of two invariants as ``{factor-key: coefficient}``."""
    if a.dimension != b.dimension:
        raise ShapeMismatch(f"dimensions {a.dimension} and {b.dimension}")
    out: dict[tuple, Fraction] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            merged = ea.as_counter() + eb.as_counter()
            key = tuple(sorted(merged.items()))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def expand_product(a: InvariantPolynomial, b: InvariantPolynomial,
                   target: BasisDescriptor) -> list[Fraction]:
    """Coefficient vector of ``a * b`` in the canonical order of `target`."""
    vec = [Fraction(0)] * len(target)
    for key, c in multiply(a, b).items():
        vec[target.position(key)] += c
    return vec


def product_invariant(a: InvariantPolynomial, b: InvariantPolynomial,
                      target: BasisDescriptor) -> InvariantPolynomial:
    """``a * b`` as an invariant over `target` (class is the weaker of the two)."""
    kind = "rotation" if "rotation" in (a.kind, b.kind) else a.kind
    if {a.kind, b.kind} == {"scale"}:
        kind = "scale"
    vec = expand_product(a, b, target)
    terms = tuple((target[i], c) for i, c in enumerate(vec) if c)
    return InvariantPolynomial(target.dimension, kind, terms,
                               a.denominator_power + b.denominator_power, target.components, a.planes)


def expand_products(factor_sets: Sequence[Sequence[InvariantPolynomial]],
                    target: BasisDescriptor) -> list[list[Fraction]]:
    """Coefficient vectors of every product taking one invariant per set."""
    out = []
    for combo in itertools.product(*factor_sets):
        acc = {tuple(sorted(e.as_counter().items())): c for e, c in combo[0].terms}
        for inv in combo[1:]:
            nxt: dict = {}
            for key, c in acc.items():
                for e, ce in inv.terms:
                    merged = Counter(dict(key)) + e.as_counter()
                    k2 = tuple(sorted(merged.items()))
                    nxt[k2] = nxt.get(k2, Fraction(0)) + c * ce
            acc = {k: v for k, v in nxt.items() if v}
        vec = [Fraction(0)] * len(target)
        for key, c in acc.items():
            vec[target.position(key)] += c
        out.append(vec)
    return out


def _permute_entry(entry: MonomialEntry, perm) -> tuple:
    c = Counter()
    for idx, k in entry.factors:
        c[MultiIndex(idx[perm[j]] for j in range(len(idx)))] += k
    return tuple(sorted(c.items()))


def orbit_partition(selection: ScaleSelection) -> list[list[int]]:
    """Group selected entries into orbits under coordinate permutations.

    Returned groups hold positions into ``selection.selected`` and are
    ordered by their first member.
    """
    desc = selection.descriptor
    n = desc.dimension
    pos = {desc[i].key(): j for j, i in enumerate(selection.selected)}
    seen = [False] * len(selection.selected)
    groups = []
    perms = list(itertools.permutations(range(n)))
    for j, i in enumerate(selection.selected):
        if seen[j]:
            continue
        group = set()
        for perm in perms:
            key = _permute_entry(desc[i], perm)
            other = pos.get(key)
            if other is None:
                raise BasisMismatch(f"selection is not closed under permutation {perm}")
            group.add(other)
        for g in group:
            seen[g] = True
        groups.append(sorted(group))
    return groups


def reduce_by_orbits(system: SparseIntMatrix, groups: Sequence[Sequence[int]]) -> SparseIntMatrix:
    """Columns of one orbit summed, i.e. the system restricted to orbit-constant vectors."""
    owner = {c: g for g, members in enumerate(groups) for c in members}
    out = SparseIntMatrix(system.rows, len(groups))
    for r, row in system.data.items():
        for c, v in row.items():
            out.add(r, owner[c], v)
    return out


def _orbit_kernel(system: SparseIntMatrix, sel: ScaleSelection, report: GenerationReport) -> KernelBasis:
    full = rational_kernel(system)
    try:
        groups = orbit_partition(sel)
    except BasisMismatch as exc:
        report.notes.append(f"orbit reduction skipped: {exc}")
        return full
    reduced = rational_kernel(reduce_by_orbits(system, groups))
    expanded = []
    for vec in reduced:
        x = [0] * system.cols
        for g, members in enumerate(groups):
            for c in members:
                x[c] = vec[g]
        expanded.append(x)
    candidate = canonical_basis(expanded, system.cols)
    if candidate.vectors != full.vectors:
        msg = (f"orbit-reduced kernel (dim {len(candidate)}) differs from the full kernel "
               f"(dim {len(full)}); using the full kernel")
        warnings.warn(msg, RuntimeWarning, stacklevel=3)
        report.notes.append(msg)
        return full
    report.notes.append(f"orbit reduction: {system.cols} unknowns -> {len(groups)}")
    return candidate


def kernel_residuals(inv: InvariantPolynomial, planes="all") -> list[list[Fraction]]:
    """Exact ``alpha^T M`` for each plane operator M of the invariant's basis."""
    from .multiindex import product_basis

    desc = product_basis(inv.components, inv.dimension)
    alpha = inv.coefficient_vector(desc)
    _, plist = _resolve_planes(desc, planes)
    return [operator_on_basis(desc, p).left_apply(alpha) for p in plist]
