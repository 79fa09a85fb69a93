"""Moment invariants to scale, rotation and affine maps in n dimensions.

Invariants are linear combinations of moment monomials whose coefficient
vectors span the exact null space of integer derivative operators.
"""

from .errors import GeoinvError
from .exactla import KernelBasis, prune_zero_rows, rational_kernel, stack_transposed
from .generators import (RotationPlane, derivative_single, generator_sign_convention,
                         operator_on_basis, rotation_planes)
from .harness import apply, check_invariance, random_transform, verify_all
from .invariants import (InvariantPolynomial, ScaleSelection, affine_invariants, expand_product,
                         generate, independent_invariants, orbit_partition, rotation_invariants,
                         scale_invariants, select_scale_invariant)
from .moments import MomentTable, PointCloud, central_moments, centroid, uniform_scale_normalize
from .multiindex import BasisDescriptor, MonomialEntry, MultiIndex, enumerate_order, monomial_basis, product_basis
from .poly import evaluate, parse, serialize
from .sparse import SparseIntMatrix

__version__ = "0.1.0"
