"""Classical tensors as linear tensor maps ``V^{⊗m} -> V^{⊗n}``.

A :class:`TensorMap` is stored extensionally: its coefficient array relative
to a named basis, with subscripts labelling input slots and superscripts
labelling output slots.  Entry ``t[I, J]`` is the coefficient of the basis
map ``<e_I -> e_J>``, so ``t(e_I) = sum_J t[I, J] e_J``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import BasisMismatchError, LabelError, ShapeError
from .numeric import (
    Array,
    array_contract,
    array_inner,
    array_mul,
    array_regroup,
    delta,
    to_scalar,
)

__all__ = [
    "IndexLabel",
    "as_label",
    "parse_labels",
    "TensorMap",
    "scalar_like",
    "vector_like",
    "form_like",
    "compose_general",
    "outer",
    "inner",
    "contract",
    "permute",
    "apply",
    "apply_multi",
    "identity_map",
]

_LABEL = re.compile(r"([A-Za-z][0-9]*)(\*?)('*)")


@dataclass(frozen=True, order=True)
class IndexLabel:
    """Abstract index: a name, a base/dual space flag, and a prime count.

    Rendered as the name, then ``*`` for the dual space, then one apostrophe
    per generation (``"b*"``, ``"a''"``).
    """

    name: str
    dual: bool = False
    generation: int = 0

    def __post_init__(self):
        if not self.name:
            raise LabelError("index label needs a nonempty name")
        if self.generation < 0:
            raise LabelError("label generation must be nonnegative")

    def __str__(self):
        return self.name + ("*" if self.dual else "") + "'" * self.generation

    def primed(self) -> IndexLabel:
        return IndexLabel(self.name, self.dual, self.generation + 1)

    def shifted(self) -> IndexLabel:
        return IndexLabel(self.name, not self.dual, self.generation)

    @classmethod
    def parse(cls, text: str) -> IndexLabel:
        m = _LABEL.fullmatch(text.strip())
        if not m:
            raise LabelError(f"bad index label {text!r}")
        return cls(m.group(1), bool(m.group(2)), len(m.group(3)))


def as_label(x) -> IndexLabel:
    if isinstance(x, IndexLabel):
        return x
    if isinstance(x, str):
        return IndexLabel.parse(x)
    raise LabelError(f"cannot use {x!r} as an index label")


def parse_labels(items) -> tuple[IndexLabel, ...]:
    """``"ab'c*"`` or ``["a", "b'"]`` -> tuple of labels."""
    if isinstance(items, str):
        out, pos = [], 0
        items = items.replace(" ", "")
        while pos < len(items):
            m = _LABEL.match(items, pos)
            if not m or m.end() == pos:
                raise LabelError(f"bad label list {items!r} at column {pos + 1}")
            out.append(IndexLabel(m.group(1), bool(m.group(2)), len(m.group(3))))
            pos = m.end()
        return tuple(out)
    return tuple(as_label(x) for x in items)


def _fmt(labels) -> str:
    return "".join(str(x) for x in labels)


@dataclass(frozen=True)
class TensorMap:
    """A linear tensor map with labelled input (sub) and output (super) slots."""

    coeffs: Array
    subs: tuple = ()
    supers: tuple = ()
    basis: str = "e"

    def __post_init__(self):
        subs = parse_labels(self.subs)
        supers = parse_labels(self.supers)
        object.__setattr__(self, "subs", subs)
        object.__setattr__(self, "supers", supers)
        if (self.coeffs.subs, self.coeffs.supers) != (len(subs), len(supers)):
            raise ShapeError(f"coefficient valence {self.coeffs.valence} does not match "
                             f"labels _{_fmt(subs)}^{_fmt(supers)}")
        labels = subs + supers
        if len(set(labels)) != len(labels):
            raise LabelError(f"repeated index label in _{_fmt(subs)}^{_fmt(supers)}")

    @property
    def dim(self) -> int:
        return self.coeffs.dim

    @property
    def valence(self):
        return self.coeffs.valence

    @property
    def labels(self) -> tuple:
        return self.subs + self.supers

    def signature(self) -> str:
        out = ""
        if self.subs:
            out += "_" + _fmt(self.subs)
        if self.supers:
            out += "^" + _fmt(self.supers)
        return out

    def __str__(self):
        return f"t{self.signature()} [{self.basis}] {list(map(str, self.coeffs.entries))}"

    def sub_position(self, label) -> int:
        label = as_label(label)
        if label in self.subs:
            return self.subs.index(label)
        if label in self.supers:
            raise LabelError(f"{label} is a superscript of t{self.signature()}, not a subscript")
        raise LabelError(f"{label} is not an index of t{self.signature()}")

    def super_position(self, label) -> int:
        label = as_label(label)
        if label in self.supers:
            return self.supers.index(label)
        if label in self.subs:
            raise LabelError(f"{label} is a subscript of t{self.signature()}, not a superscript")
        raise LabelError(f"{label} is not an index of t{self.signature()}")

    def relabel(self, subs=None, supers=None) -> TensorMap:
        """Same coefficients, new label names (positionally)."""
        return TensorMap(self.coeffs,
                         self.subs if subs is None else subs,
                         self.supers if supers is None else supers,
                         self.basis)

    def with_basis(self, basis: str) -> TensorMap:
        return TensorMap(self.coeffs, self.subs, self.supers, basis)

    def apply(self, arg) -> Array:
        return apply(self, arg)

    # vector space structure ------------------------------------------

    def _check_same(self, other):
        if (self.subs, self.supers) != (other.subs, other.supers):
            raise LabelError(f"cannot add t{self.signature()} and t{other.signature()}")
        if self.basis != other.basis:
            raise BasisMismatchError(f"bases differ: {self.basis!r} vs {other.basis!r}")

    def __add__(self, other):
        if not isinstance(other, TensorMap):
            return NotImplemented
        self._check_same(other)
        return TensorMap(self.coeffs + other.coeffs, self.subs, self.supers, self.basis)

    def __sub__(self, other):
        if not isinstance(other, TensorMap):
            return NotImplemented
        self._check_same(other)
        return TensorMap(self.coeffs - other.coeffs, self.subs, self.supers, self.basis)

    def __neg__(self):
        return TensorMap(-self.coeffs, self.subs, self.supers, self.basis)

    def __mul__(self, k):
        if isinstance(k, TensorMap):
            return NotImplemented
        return TensorMap(to_scalar(k) * self.coeffs, self.subs, self.supers, self.basis)

    __rmul__ = __mul__


def scalar_like(dim: int, sigma, basis="e") -> TensorMap:
    """The map ``eta -> eta * sigma`` on K."""
    return TensorMap(Array.scalar(sigma, dim), (), (), basis)


def vector_like(dim: int, coords: Array, label="a", basis="e") -> TensorMap:
    """The map ``eta -> eta * v`` with ``coords`` the row array ``[v^i]``."""
    if not isinstance(coords, Array):
        coords = Array.vector(coords)
    if coords.dim != dim or coords.valence != (0, 1):
        raise ShapeError(f"need a valence (1 over 0) array of dim {dim}")
    return TensorMap(coords, (), (label,), basis)


def form_like(dim: int, coords: Array, label="a", basis="e") -> TensorMap:
    """The linear form ``v -> sum_i f_i v^i``; ``coords`` is ``[f_i]``."""
    if not isinstance(coords, Array):
        coords = Array.vector(coords, upper=False)
    if coords.dim != dim or coords.valence != (1, 0):
        raise ShapeError(f"need a valence (0 over 1) array of dim {dim}")
    return TensorMap(coords, (label,), (), basis)


def _check_compatible(s: TensorMap, t: TensorMap):
    if s.dim != t.dim:
        raise ShapeError(f"dimensions differ: {s.dim} vs {t.dim}")
    if s.basis != t.basis:
        raise BasisMismatchError(f"cannot combine maps in bases {s.basis!r} and {t.basis!r}")


def _normalize_pairs(pairs) -> list:
    out = []
    for pair in pairs:
        if isinstance(pair, (str, IndexLabel)):
            pair = (pair, pair)
        x, y = pair
        out.append((as_label(x), as_label(y)))
    left = [x for x, _ in out]
    right = [y for _, y in out]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise LabelError(f"duplicate label in match list {[(str(x), str(y)) for x, y in out]}")
    for x, y in out:
        if x.dual != y.dual:
            raise LabelError(f"cannot match {x} with {y}: one is on V, the other on V*")
    return out


def compose_general(s: TensorMap, t: TensorMap, pairs=()) -> TensorMap:
    """General composition ``s ∘ t`` along matched index pairs.

    Each pair names a subscript of ``s`` and a superscript of ``t``; a bare
    label ``"a"`` is shorthand for ``("a", "a")``.  The result has subscripts
    ``(s unmatched, t)`` and superscripts ``(s, t unmatched)``.
    """
    _check_compatible(s, t)
    pairs = _normalize_pairs(pairs)
    s_pos = [s.sub_position(x) for x, _ in pairs]
    t_pos = [t.super_position(y) for _, y in pairs]
    s_free = [k for k in range(len(s.subs)) if k not in s_pos]
    t_free = [k for k in range(len(t.supers)) if k not in t_pos]
    new_subs = tuple(s.subs[k] for k in s_free) + t.subs
    new_supers = s.supers + tuple(t.supers[k] for k in t_free)
    labels = new_subs + new_supers
    if len(set(labels)) != len(labels):
        dup = sorted({str(x) for x in labels if labels.count(x) > 1})
        raise LabelError(f"composition would repeat label(s) {', '.join(dup)}")

    # array form of s ∘ t is [t][s]: t's output slots feed s's input slots
    c = array_mul(t.coeffs, s.coeffs, list(zip(t_pos, s_pos)))
    p, ns, nt, n = len(t.subs), len(s_free), len(t_free), len(s.supers)
    sub_order = [p + k for k in range(ns)] + list(range(p))
    base = p + ns
    super_order = [base + nt + k for k in range(n)] + [base + k for k in range(nt)]
    return TensorMap(array_regroup(c, sub_order, super_order), new_subs, new_supers, s.basis)


def outer(s: TensorMap, t: TensorMap) -> TensorMap:
    """Outer composition ``s ⊗ t`` (no matched indices)."""
    return compose_general(s, t, ())


def inner(s: TensorMap, t: TensorMap) -> TensorMap:
    """Inner composition ``s ∘ t``: all of s's inputs fed by all of t's outputs, in order."""
    if len(s.subs) != len(t.supers):
        raise ShapeError(f"inner composition needs {len(s.subs)} outputs from the right "
                         f"operand, it has {len(t.supers)}")
    t_subs = t.subs
    if set(t_subs) & set(s.labels):
        # right operand's inputs would collide with the left's labels
        t_subs = _fresh_labels(len(t_subs), set(s.labels))
    return compose_general(s, t.relabel(subs=t_subs, supers=s.subs), list(s.subs))


def _fresh_labels(count: int, taken: set) -> tuple:
    out = []
    n = 1
    while len(out) < count:
        cand = IndexLabel("z", generation=n)
        if cand not in taken:
            out.append(cand)
        n += 1
    return tuple(out)


def contract(t: TensorMap, pairs) -> TensorMap:
    """Contract (subscript, superscript) label pairs of a single map."""
    pairs = _normalize_pairs(pairs)
    sub_pos = [t.sub_position(x) for x, _ in pairs]
    sup_pos = [t.super_position(y) for _, y in pairs]
    new_subs = tuple(x for k, x in enumerate(t.subs) if k not in sub_pos)
    new_supers = tuple(x for k, x in enumerate(t.supers) if k not in sup_pos)
    return TensorMap(array_contract(t.coeffs, list(zip(sub_pos, sup_pos))),
                     new_subs, new_supers, t.basis)


def _as_permutation(perm, labels: tuple, what: str) -> list:
    if perm is None:
        return list(range(len(labels)))
    perm = list(perm)
    if all(isinstance(p, int) and not isinstance(p, bool) for p in perm):
        positions = perm
    else:
        wanted = [as_label(p) for p in perm]
        missing = [str(x) for x in wanted if x not in labels]
        if missing:
            raise LabelError(f"{what} permutation names unknown label(s) {missing}")
        positions = [labels.index(x) for x in wanted]
    if sorted(positions) != list(range(len(labels))):
        raise LabelError(f"{perm} is not a permutation of the {what}s {_fmt(labels)}")
    return positions


def permute(t: TensorMap, sub_perm=None, super_perm=None) -> TensorMap:
    """Reorder input and/or output slots.

    Each permutation lists the new order, either as labels or as old
    positions.  Coefficients move with their labels, so this is ``t``
    pre- and post-composed with the slot-swapping automorphisms.
    """
    sp = _as_permutation(sub_perm, t.subs, "subscript")
    pp = _as_permutation(super_perm, t.supers, "superscript")
    m = len(t.subs)
    coeffs = array_regroup(t.coeffs, sp, [m + k for k in pp])
    return TensorMap(coeffs, tuple(t.subs[k] for k in sp), tuple(t.supers[k] for k in pp), t.basis)


def apply(t: TensorMap, arg) -> Array:
    """Image of a coordinate tensor in ``V^{⊗m}`` under ``t``.

    ``arg`` is a valence-(m over 0) array (a scalar when m = 0); the result
    is the valence-(n over 0) coordinate array of the image.
    """
    if not isinstance(arg, Array):
        arg = Array.scalar(arg, t.dim)
    if arg.dim != t.dim and arg.rank:
        raise ShapeError(f"argument has dim {arg.dim}, map has dim {t.dim}")
    if arg.rank == 0 and arg.dim != t.dim:
        arg = Array.scalar(arg.item(), t.dim)
    if arg.subs != 0 or arg.supers != len(t.subs):
        raise ShapeError(f"argument must have valence ({len(t.subs)} over 0), got {arg.valence}")
    return array_inner(arg, t.coeffs)


def apply_multi(t: TensorMap, args: Sequence[Array]) -> Array:
    """Evaluate ``t`` as a separately linear map on ``m`` vectors.

    Feeds one coordinate vector per input slot, left to right, so the
    tensor product of the arguments is never formed.
    """
    args = list(args)
    if len(args) != len(t.subs):
        raise ShapeError(f"map takes {len(t.subs)} vector arguments, got {len(args)}")
    current = t.coeffs
    for k, v in enumerate(args):
        if not isinstance(v, Array):
            v = Array.vector(v)
        if v.dim != t.dim or v.valence != (0, 1):
            raise ShapeError(f"argument {k} must be a dim-{t.dim} vector [v^i]")
        current = array_mul(v, current, [(0, 0)])
    return current


def identity_map(dim: int, sub="a", sup="b", basis="e") -> TensorMap:
    """The identity operator ``t_a^b`` with delta coefficients."""
    return TensorMap(delta(dim, 1), (sub,), (sup,), basis)
