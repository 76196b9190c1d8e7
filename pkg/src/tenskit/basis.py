"""Change of basis for tensor-map representations.

A change is given by the array ``[a_j^i]`` with ``ē_j = Σ_i a_j^i e_i``.
Each subscript of a representation picks up one factor of ``[a]`` and each
superscript one factor of ``[a]⁻¹``; for an operator this is ``A T A⁻¹``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BasisMismatchError, ShapeError
from .numeric import Array, array_from_rows, array_inner, array_inverse, array_mul, array_regroup
from .tensormap import TensorMap

__all__ = [
    "BasisChange",
    "basis_change",
    "compose_changes",
    "identity_change",
    "transform",
    "transform_operator",
    "transform_coords",
    "scalar_invariance_check",
]


@dataclass(frozen=True)
class BasisChange:
    a: Array
    ainv: Array = field(repr=False)
    source: str | None = None
    target: str = "ebar"

    @property
    def dim(self) -> int:
        return self.a.dim


def basis_change(a, source: str | None = None, target: str = "ebar") -> BasisChange:
    """Validate ``[a_j^i]`` (rows = new basis vectors in old coordinates) and cache its inverse.

    ``source=None`` accepts maps in any basis.
    """
    if not isinstance(a, Array):
        a = array_from_rows(a, (1, 1), len(a))
    if a.valence != (1, 1):
        raise ShapeError(f"a change of basis needs valence (1 over 1), got {a.valence}")
    return BasisChange(a, array_inverse(a), source, target)


def identity_change(dim: int, source=None, target="e") -> BasisChange:
    from .numeric import delta

    d = delta(dim, 1)
    return BasisChange(d, d, source, target)


def compose_changes(c1: BasisChange, c2: BasisChange) -> BasisChange:
    """The single change equivalent to applying ``c1`` and then ``c2``: ``[a2][a1]``."""
    if c1.dim != c2.dim:
        raise ShapeError(f"dimensions differ: {c1.dim} vs {c2.dim}")
    if c2.source is not None and c2.source != c1.target:
        raise BasisMismatchError(f"{c2.source!r} does not follow {c1.target!r}")
    return BasisChange(array_inner(c2.a, c1.a), array_inner(c1.ainv, c2.ainv), c1.source, c2.target)


def transform_coords(coeffs: Array, c: BasisChange) -> Array:
    """Apply ``[a]`` along every subscript and ``[a]⁻¹`` along every superscript."""
    if coeffs.dim != c.dim:
        raise ShapeError(f"array has dim {coeffs.dim}, change has dim {c.dim}")
    m, n = coeffs.subs, coeffs.supers
    out = coeffs
    for k in range(m):
        # new sub lands in front; move it back to slot k
        out = array_mul(c.a, out, [(0, k)])
        order = list(range(1, k + 1)) + [0] + list(range(k + 1, m))
        out = array_regroup(out, order, list(range(m, m + n)))
    for k in range(n):
        out = array_mul(out, c.ainv, [(k, 0)])
        sup = list(range(m, m + k)) + [m + n - 1] + list(range(m + k, m + n - 1))
        out = array_regroup(out, list(range(m)), sup)
    return out


def transform(t: TensorMap, c: BasisChange) -> TensorMap:
    """Re-express ``t`` relative to the new basis; labels and valence are unchanged."""
    if t.dim != c.dim:
        raise ShapeError(f"map has dim {t.dim}, change has dim {c.dim}")
    if c.source is not None and c.source != t.basis:
        raise BasisMismatchError(f"change expects basis {c.source!r}, map is in {t.basis!r}")
    return TensorMap(transform_coords(t.coeffs, c), t.subs, t.supers, c.target)


def transform_operator(t: TensorMap, c: BasisChange) -> TensorMap:
    """``[t̄] = [a][t][a]⁻¹`` for a valence (1 over 1) map.

    This is the row convention for ``[t_j^i]``; with column vectors the same
    operator reads ``A⁻¹ T A`` on the transposed arrays.
    """
    if t.coeffs.valence != (1, 1):
        raise ShapeError(f"transform_operator needs valence (1 over 1), got {t.coeffs.valence}")
    if t.dim != c.dim:
        raise ShapeError(f"map has dim {t.dim}, change has dim {c.dim}")
    if c.source is not None and c.source != t.basis:
        raise BasisMismatchError(f"change expects basis {c.source!r}, map is in {t.basis!r}")
    coeffs = array_inner(array_inner(c.a, t.coeffs), c.ainv)
    return TensorMap(coeffs, t.subs, t.supers, c.target)


def scalar_invariance_check(t: TensorMap, changes) -> bool:
    """True when a scalar-like map keeps its coefficient under every given change."""
    if t.coeffs.rank != 0:
        raise ShapeError(f"scalar invariance applies to valence (0 over 0), got {t.coeffs.valence}")
    return all(transform(t, c).coeffs == t.coeffs for c in changes)
