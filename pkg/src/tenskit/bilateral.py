"""Bilateral tensors: elements of ``V*^{⊗m} ⊗ V^{⊗n}``.

Coefficients are taken against the basis ``e^{i1}⊗…⊗e^{im}⊗e_{j1}⊗…⊗e_{jn}``
and stored in an :class:`~tenskit.numeric.Array` with the form indices as
subscripts.  Multiplication, contraction and permutation are written out
on basis elements, independently of the tensor-map kernels, so that
``lambda_b`` can be used as a cross-check on composition.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import BasisMismatchError, LabelError, ShapeError
from .numeric import Array, to_scalar
from .tensormap import TensorMap, _as_permutation, _fmt, _normalize_pairs, parse_labels


@dataclass(frozen=True)
class BilateralTensor:
    coeffs: Array
    subs: tuple = ()
    supers: tuple = ()
    basis: str = "e"

    def __post_init__(self):
        subs, supers = parse_labels(self.subs), parse_labels(self.supers)
        object.__setattr__(self, "subs", subs)
        object.__setattr__(self, "supers", supers)
        if (self.coeffs.subs, self.coeffs.supers) != (len(subs), len(supers)):
            raise ShapeError(f"coefficient valence {self.coeffs.valence} does not match "
                             f"labels _{_fmt(subs)}^{_fmt(supers)}")
        labels = subs + supers
        if len(set(labels)) != len(labels):
            raise LabelError(f"repeated index label in _{_fmt(subs)}^{_fmt(supers)}")

    @property
    def dim(self):
        return self.coeffs.dim

    def __add__(self, other):
        if not isinstance(other, BilateralTensor):
            return NotImplemented
        if (self.subs, self.supers, self.basis) != (other.subs, other.supers, other.basis):
            raise LabelError("bilateral tensors with different index sets cannot be added")
        return BilateralTensor(self.coeffs + other.coeffs, self.subs, self.supers, self.basis)

    def __mul__(self, k):
        if isinstance(k, BilateralTensor):
            return NotImplemented
        return BilateralTensor(to_scalar(k) * self.coeffs, self.subs, self.supers, self.basis)

    __rmul__ = __mul__


def _from_terms(dim, n_forms, n_vecs, terms) -> Array:
    entries = [Fraction(0)] * dim ** (n_forms + n_vecs)
    for key, v in terms.items():
        pos = 0
        for i in key:
            pos = pos * dim + i
        entries[pos] = v
    return Array(dim, n_forms, n_vecs, tuple(entries))


def lambda_b(b: BilateralTensor) -> TensorMap:
    """Send ``e^I ⊗ e_J`` to the basis map ``<e_I -> e_J>``; coefficients carry over."""
    return TensorMap(b.coeffs, b.subs, b.supers, b.basis)


def lambda_b_inv(t: TensorMap) -> BilateralTensor:
    return BilateralTensor(t.coeffs, t.subs, t.supers, t.basis)


def bilateral_mul(s: BilateralTensor, t: BilateralTensor, pairs=()) -> BilateralTensor:
    """Product of bilateral tensors pairing forms of ``s`` with vectors of ``t``.

    On basis elements, each matched form ``e^i`` of ``s`` is evaluated on the
    matched vector ``e_j`` of ``t`` (giving 1 when i == j, else 0); the
    surviving factors are concatenated as: unmatched forms of s, forms of t,
    vectors of s, unmatched vectors of t.
    """
    if s.dim != t.dim:
        raise ShapeError(f"dimensions differ: {s.dim} vs {t.dim}")
    if s.basis != t.basis:
        raise BasisMismatchError(f"bases differ: {s.basis!r} vs {t.basis!r}")
    pairs = _normalize_pairs(pairs)
    for x, y in pairs:
        if x not in s.subs:
            raise LabelError(f"{x} is not a subscript of the left factor")
        if y not in t.supers:
            raise LabelError(f"{y} is not a superscript of the right factor")
    fpos = [s.subs.index(x) for x, _ in pairs]
    vpos = [t.supers.index(y) for _, y in pairs]
    m, p = len(s.subs), len(t.subs)
    keep_f = [i for i in range(m) if i not in fpos]
    keep_v = [j for j in range(len(t.supers)) if j not in vpos]
    subs = tuple(s.subs[i] for i in keep_f) + t.subs
    supers = s.supers + tuple(t.supers[j] for j in keep_v)
    if len(set(subs + supers)) != len(subs + supers):
        raise LabelError("product would repeat an index label")

    terms = defaultdict(Fraction)
    for s_idx, sv in s.coeffs.nonzero():
        s_forms, s_vecs = s_idx[:m], s_idx[m:]
        for t_idx, tv in t.coeffs.nonzero():
            t_forms, t_vecs = t_idx[:p], t_idx[p:]
            if any(s_forms[i] != t_vecs[j] for i, j in zip(fpos, vpos)):
                continue
            key = (tuple(s_forms[i] for i in keep_f) + t_forms
                   + s_vecs + tuple(t_vecs[j] for j in keep_v))
            terms[key] += sv * tv
    coeffs = _from_terms(s.dim, len(subs), len(supers), terms)
    return BilateralTensor(coeffs, subs, supers, s.basis)


def bilateral_contract(t: BilateralTensor, pairs) -> BilateralTensor:
    """Evaluate form ``a`` on vector ``b`` for each (a, b) pair of one tensor."""
    pairs = _normalize_pairs(pairs)
    for x, y in pairs:
        if x not in t.subs or y not in t.supers:
            raise LabelError(f"cannot contract {x} with {y} in _{_fmt(t.subs)}^{_fmt(t.supers)}")
    fpos = [t.subs.index(x) for x, _ in pairs]
    vpos = [t.supers.index(y) for _, y in pairs]
    m = len(t.subs)
    keep_f = [i for i in range(m) if i not in fpos]
    keep_v = [j for j in range(len(t.supers)) if j not in vpos]
    terms = defaultdict(Fraction)
    for idx, v in t.coeffs.nonzero():
        forms, vecs = idx[:m], idx[m:]
        if all(forms[i] == vecs[j] for i, j in zip(fpos, vpos)):
            terms[tuple(forms[i] for i in keep_f) + tuple(vecs[j] for j in keep_v)] += v
    coeffs = _from_terms(t.dim, len(keep_f), len(keep_v), terms)
    return BilateralTensor(coeffs, tuple(t.subs[i] for i in keep_f),
                           tuple(t.supers[j] for j in keep_v), t.basis)


def bilateral_permute(t: BilateralTensor, sub_perm=None, super_perm=None) -> BilateralTensor:
    """Reorder tensor factors; each basis element's factors move with their labels."""
    fp = _as_permutation(sub_perm, t.subs, "subscript")
    vp = _as_permutation(super_perm, t.supers, "superscript")
    m = len(t.subs)
    terms = {}
    for idx, v in t.coeffs.nonzero():
        forms, vecs = idx[:m], idx[m:]
        terms[tuple(forms[i] for i in fp) + tuple(vecs[j] for j in vp)] = v
    coeffs = _from_terms(t.dim, m, len(t.supers), terms)
    return BilateralTensor(coeffs, tuple(t.subs[i] for i in fp),
                           tuple(t.supers[j] for j in vp), t.basis)
