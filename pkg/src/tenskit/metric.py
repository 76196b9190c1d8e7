"""Index shifting between V and V*, and raising/lowering with a metric."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LabelError, ShapeError
from .numeric import Array, array_inverse, array_mul, array_regroup, array_transpose
from .tensormap import IndexLabel, TensorMap, as_label

__all__ = [
    "Metric",
    "metric_new",
    "lower_index",
    "raise_index",
    "dual_shift",
    "metric_map",
    "inverse_metric_map",
]


def _as_matrix(a: Array) -> Array:
    """View a two-index array as a valence (1 over 1) matrix."""
    if a.subs == 2:
        return array_transpose(a, [1])
    if a.supers == 2:
        return array_transpose(a, [0])
    return a


@dataclass(frozen=True)
class Metric:
    """A symmetric nondegenerate bilinear form ``g_ij`` with its inverse ``g^ij``.

    Build through :func:`metric_new`, which validates ``g`` and computes
    ``ginv`` once.
    """

    g: Array
    ginv: Array = field(repr=False)

    @property
    def dim(self) -> int:
        return self.g.dim


def metric_new(g) -> Metric:
    if not isinstance(g, Array):
        g = Array(len(g), 2, 0, tuple(x for row in g for x in row))
    if g.valence != (2, 0):
        raise ShapeError(f"a metric needs two subscripts, got valence {g.valence}")
    n = g.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if g[i, j] != g[j, i]:
                raise ShapeError(f"metric is not symmetric: g_{i}{j} = {g[i, j]}, g_{j}{i} = {g[j, i]}")
    inv = array_inverse(_as_matrix(g))
    return Metric(g, array_transpose(inv, [0]))


def metric_map(m: Metric, a="a", b="b", basis="e") -> TensorMap:
    """``g_ab`` as a tensor map ``V⊗V -> K``."""
    return TensorMap(m.g, (a, b), (), basis)


def inverse_metric_map(m: Metric, a="a", b="b", basis="e") -> TensorMap:
    """``g^ab`` as a tensor map ``K -> V⊗V``."""
    return TensorMap(m.ginv, (), (a, b), basis)


def _fresh(t: TensorMap, label: IndexLabel) -> IndexLabel:
    new = label.primed()
    if new in t.labels:
        raise LabelError(f"new label {new} already occurs in {t}")
    return new


def lower_index(t: TensorMap, label, m: Metric) -> TensorMap:
    """Lower superscript ``label``: the new subscript ``label'`` goes first."""
    label = as_label(label)
    if m.dim != t.dim:
        raise ShapeError(f"metric has dim {m.dim}, map has dim {t.dim}")
    k = t.super_position(label)
    new = _fresh(t, label)
    # t's output slot k fed into the first slot of g; the second slot of g is free
    c = array_mul(t.coeffs, m.g, [(k, 0)])
    p = len(t.subs)
    regrouped = array_regroup(c, [p] + list(range(p)), list(range(p + 1, c.rank)))
    supers = tuple(x for x in t.supers if x != label)
    return TensorMap(regrouped, (new,) + t.subs, supers, t.basis)


def raise_index(t: TensorMap, label, m: Metric) -> TensorMap:
    """Raise subscript ``label``: the new superscript ``label'`` goes last."""
    label = as_label(label)
    if m.dim != t.dim:
        raise ShapeError(f"metric has dim {m.dim}, map has dim {t.dim}")
    k = t.sub_position(label)
    new = _fresh(t, label)
    c = array_mul(m.ginv, t.coeffs, [(0, k)])
    q = len(t.subs) - 1
    regrouped = array_regroup(c, list(range(q)), list(range(q + 1, c.rank)) + [q])
    subs = tuple(x for x in t.subs if x != label)
    return TensorMap(regrouped, subs, t.supers + (new,), t.basis)


def dual_shift(t: TensorMap, label) -> TensorMap:
    """Move ``label`` across to the dual space, toggling its star.

    A shifted superscript becomes a subscript after the existing ones; a
    shifted subscript becomes a superscript before the existing ones.
    Coefficients are unchanged, only reindexed.
    """
    label = as_label(label)
    if label in t.supers:
        k = len(t.subs) + t.supers.index(label)
        subs = t.subs + (label.shifted(),)
        supers = tuple(x for x in t.supers if x != label)
    elif label in t.subs:
        k = t.subs.index(label)
        subs = tuple(x for x in t.subs if x != label)
        supers = (label.shifted(),) + t.supers
    else:
        raise LabelError(f"{label} is not an index of {t}")
    if label.shifted() in t.labels:
        raise LabelError(f"shifted label {label.shifted()} already occurs in {t}")
    return TensorMap(array_transpose(t.coeffs, [k]), subs, supers, t.basis)
