"""Exact scalars and generalized arrays.

An :class:`Array` of valence (supers over subs) is a dense collection of
``dim ** (subs + supers)`` rational entries.  Subscripts index rows and
superscripts index columns; both run lexicographically, so the flat entry
order is the row-major order of the ``dim**subs x dim**supers`` matrix view.

Slots are addressed by 0-based *positions*.  Where one position number has to
cover both kinds of slot (``array_transpose``, ``array_regroup``), subscripts
come first: positions ``0..subs-1`` are subscripts and ``subs..subs+supers-1``
are superscripts.  Index *values* are 1-based in the user-facing accessors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

from .errors import ShapeError, SingularError

Scalar = Fraction

__all__ = [
    "Scalar",
    "Valence",
    "Array",
    "to_scalar",
    "array_from_rows",
    "array_add",
    "array_scale",
    "array_mul",
    "array_contract",
    "array_regroup",
    "array_transpose",
    "array_inverse",
    "array_inner",
    "array_outer",
    "delta",
    "kron",
]


def to_scalar(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, rationals, valence-(0,0) arrays and strings such as
    ``"3"``, ``"-2/5"`` or ``"0.25"``.  Floats are refused.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, Array):
        return value.item()
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


class Valence(NamedTuple):
    subs: int
    supers: int

    def __str__(self):
        return f"({self.supers} over {self.subs})"


@dataclass(frozen=True)
class Array:
    """Dense exact array with ``subs`` row indices and ``supers`` column indices."""

    dim: int
    subs: int
    supers: int
    entries: tuple

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ShapeError(f"index range must be a positive integer, got {self.dim!r}")
        if self.subs < 0 or self.supers < 0:
            raise ShapeError("valence counts must be nonnegative")
        entries = tuple(to_scalar(x) for x in self.entries)
        expected = self.dim ** (self.subs + self.supers)
        if len(entries) != expected:
            raise ShapeError(f"expected {expected} entries for dim {self.dim} and valence "
                             f"{self.valence}, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    # construction -----------------------------------------------------

    @classmethod
    def zeros(cls, dim, subs=0, supers=0):
        return cls(dim, subs, supers, (Fraction(0),) * dim ** (subs + supers))

    @classmethod
    def from_function(cls, dim, subs, supers, fn):
        """Build an array from ``fn(sub_index, super_index)`` with 1-based tuples."""
        entries = []
        for idx in itertools.product(range(1, dim + 1), repeat=subs + supers):
            entries.append(fn(idx[:subs], idx[subs:]))
        return cls(dim, subs, supers, tuple(entries))

    @classmethod
    def scalar(cls, value, dim=1):
        return cls(dim, 0, 0, (to_scalar(value),))

    @classmethod
    def vector(cls, coords, upper=True):
        """Row array ``[v^i]`` (``upper``) or column array ``[v_i]``."""
        coords = tuple(coords)
        return cls(len(coords), 0 if upper else 1, 1 if upper else 0, coords)

    # views ------------------------------------------------------------

    @property
    def valence(self) -> Valence:
        return Valence(self.subs, self.supers)

    @property
    def rank(self) -> int:
        return self.subs + self.supers

    def offset(self, index: Sequence[int]) -> int:
        """Flat position of a 0-based full multi-index (subscripts first)."""
        pos = 0
        for i in index:
            pos = pos * self.dim + i
        return pos

    def __getitem__(self, index):
        """Entry at a 1-based full multi-index, subscripts first.

        ``a[1, 2]`` on a valence-(1 over 1) array is ``a_1^2``.
        """
        if not isinstance(index, tuple):
            index = (index,)
        if len(index) != self.rank:
            raise ShapeError(f"need {self.rank} indices, got {len(index)}")
        if any(not 1 <= i <= self.dim for i in index):
            raise IndexError(f"index {index} outside 1..{self.dim}")
        return self.entries[self.offset([i - 1 for i in index])]

    def get(self, sub_index=(), super_index=()):
        return self[tuple(sub_index) + tuple(super_index)]

    def items(self):
        """Yield ``(zero_based_index, value)`` for every entry in storage order."""
        return zip(itertools.product(range(self.dim), repeat=self.rank), self.entries)

    def nonzero(self):
        return ((idx, v) for idx, v in self.items() if v)

    def item(self) -> Fraction:
        if self.rank:
            raise ShapeError(f"array of valence {self.valence} is not a singleton")
        return self.entries[0]

    def rows(self) -> list:
        """Matrix view: ``dim**subs`` rows of ``dim**supers`` entries."""
        width = self.dim ** self.supers
        return [list(self.entries[r * width:(r + 1) * width])
                for r in range(self.dim ** self.subs)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    # vector space ops -------------------------------------------------

    def _check_same_space(self, other):
        if not isinstance(other, Array):
            return NotImplemented
        if (self.dim, self.subs, self.supers) != (other.dim, other.subs, other.supers):
            raise ShapeError(f"arrays differ: dim {self.dim} valence {self.valence} vs "
                             f"dim {other.dim} valence {other.valence}")
        return None

    def __add__(self, other):
        if self._check_same_space(other) is NotImplemented:
            return NotImplemented
        return Array(self.dim, self.subs, self.supers,
                     tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if self._check_same_space(other) is NotImplemented:
            return NotImplemented
        return Array(self.dim, self.subs, self.supers,
                     tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self):
        return Array(self.dim, self.subs, self.supers, tuple(-x for x in self.entries))

    def __mul__(self, k):
        if isinstance(k, Array):
            return NotImplemented
        k = to_scalar(k)
        return Array(self.dim, self.subs, self.supers, tuple(k * x for x in self.entries))

    __rmul__ = __mul__

    def __str__(self):
        def fmt(row):
            return "[" + ", ".join(str(x) for x in row) + "]"
        body = ", ".join(fmt(r) for r in self.rows())
        return f"Array(dim={self.dim}, valence={self.valence}, rows=[{body}])"


def array_from_rows(rows, valence, dim: int) -> Array:
    """Index a plain matrix: subscripts pick rows, superscripts pick columns."""
    subs, supers = valence
    rows = [list(r) for r in rows]
    if len(rows) != dim ** subs:
        raise ShapeError(f"need {dim ** subs} rows for {subs} subscripts, got {len(rows)}")
    width = dim ** supers
    for r in rows:
        if len(r) != width:
            raise ShapeError(f"need {width} columns for {supers} superscripts, got {len(r)}")
    return Array(dim, subs, supers, tuple(x for r in rows for x in r))


def array_add(a: Array, b: Array) -> Array:
    return a + b


def array_scale(k, a: Array) -> Array:
    return to_scalar(k) * a


def _check_dims(a: Array, b: Array):
    if a.dim != b.dim:
        raise ShapeError(f"index ranges differ: {a.dim} vs {b.dim}")


def _check_positions(positions, count, what):
    positions = list(positions)
    if len(set(positions)) != len(positions):
        raise ShapeError(f"duplicate {what} position in {positions}")
    for p in positions:
        if not 0 <= p < count:
            raise ShapeError(f"{what} position {p} out of range 0..{count - 1}")
    return positions


def array_mul(a: Array, b: Array, matches: Iterable[tuple[int, int]] = ()) -> Array:
    """General array product summing over matched index pairs.

    Each match ``(i, j)`` pairs superscript ``i`` of ``a`` with subscript ``j``
    of ``b``.  The result carries ``a``'s subscripts then ``b``'s unmatched
    subscripts, and ``a``'s unmatched superscripts then ``b``'s superscripts.
    With no matches this is the entrywise (outer) product.
    """
    _check_dims(a, b)
    matches = list(matches)
    a_pos = _check_positions([i for i, _ in matches], a.supers, "superscript")
    b_pos = _check_positions([j for _, j in matches], b.subs, "subscript")
    a_free = [k for k in range(a.supers) if k not in a_pos]
    b_free = [k for k in range(b.subs) if k not in b_pos]

    groups: dict = {}
    for idx, v in b.nonzero():
        sub, sup = idx[:b.subs], idx[b.subs:]
        key = tuple(sub[j] for j in b_pos)
        groups.setdefault(key, []).append((tuple(sub[j] for j in b_free) + sup, v))

    out_subs = a.subs + len(b_free)
    out_supers = len(a_free) + b.supers
    result = [Fraction(0)] * a.dim ** (out_subs + out_supers)
    dim = a.dim
    for idx, v in a.nonzero():
        sub, sup = idx[:a.subs], idx[a.subs:]
        key = tuple(sup[i] for i in a_pos)
        a_sup_free = tuple(sup[i] for i in a_free)
        for b_rest, w in groups.get(key, ()):
            b_sub_free = b_rest[:len(b_free)]
            b_sup = b_rest[len(b_free):]
            pos = 0
            for i in sub + b_sub_free + a_sup_free + b_sup:
                pos = pos * dim + i
            result[pos] += v * w
    return Array(dim, out_subs, out_supers, tuple(result))


def array_contract(a: Array, pairs: Iterable[tuple[int, int]]) -> Array:
    """Sum ``a`` over the diagonal of each (subscript, superscript) position pair."""
    pairs = list(pairs)
    sub_pos = _check_positions([i for i, _ in pairs], a.subs, "subscript")
    sup_pos = _check_positions([j for _, j in pairs], a.supers, "superscript")
    sub_free = [k for k in range(a.subs) if k not in sub_pos]
    sup_free = [k for k in range(a.supers) if k not in sup_pos]
    out_subs, out_supers = len(sub_free), len(sup_free)
    result = [Fraction(0)] * a.dim ** (out_subs + out_supers)
    for idx, v in a.nonzero():
        sub, sup = idx[:a.subs], idx[a.subs:]
        if all(sub[i] == sup[j] for i, j in zip(sub_pos, sup_pos)):
            pos = 0
            for i in [sub[k] for k in sub_free] + [sup[k] for k in sup_free]:
                pos = pos * a.dim + i
            result[pos] += v
    return Array(a.dim, out_subs, out_supers, tuple(result))


def array_regroup(a: Array, new_subs: Sequence[int], new_supers: Sequence[int]) -> Array:
    """Rearrange slots: new subscript ``k`` is old slot ``new_subs[k]``, etc.

    Slot numbers use the combined numbering (subscripts first).  Every old
    slot must appear exactly once across ``new_subs`` and ``new_supers``.
    """
    order = list(new_subs) + list(new_supers)
    if sorted(order) != list(range(a.rank)):
        raise ShapeError(f"{order} is not a rearrangement of slots 0..{a.rank - 1}")
    if order == list(range(a.rank)) and len(new_subs) == a.subs:
        return a
    result = [Fraction(0)] * len(a.entries)
    for idx, v in a.items():
        pos = 0
        for k in order:
            pos = pos * a.dim + idx[k]
        result[pos] = v
    return Array(a.dim, len(new_subs), len(new_supers), tuple(result))


def array_transpose(a: Array, flips: Iterable[int] | None = None) -> Array:
    """Move the slots in ``flips`` across the row/column divide.

    A flipped superscript becomes a subscript placed after the remaining
    subscripts; a flipped subscript becomes a superscript placed before the
    remaining superscripts.  ``flips=None`` flips every slot (the full
    transpose ``A^T``).
    """
    if flips is None:
        flips = range(a.rank)
    flips = set(_check_positions(flips, a.rank, "slot"))
    subs = list(range(a.subs))
    supers = list(range(a.subs, a.rank))
    new_subs = [p for p in subs if p not in flips] + [p for p in supers if p in flips]
    new_supers = [p for p in subs if p in flips] + [p for p in supers if p not in flips]
    return array_regroup(a, new_subs, new_supers)


def _gauss_jordan_inverse(rows):
    n = len(rows)
    work = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularError(f"singular: no pivot in column {col + 1}")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [r[n:] for r in work]


def array_inverse(a: Array) -> Array:
    """Inverse of a valence-(n over n) array via its square matrix view."""
    if a.subs != a.supers:
        raise ShapeError(f"only valence (n over n) arrays are invertible, got {a.valence}")
    inv = _gauss_jordan_inverse(a.rows())
    return Array(a.dim, a.subs, a.supers, tuple(x for r in inv for x in r))


def delta(dim: int, n: int = 1) -> Array:
    """Generalized Kronecker delta of valence (n over n)."""
    if n < 0:
        raise ShapeError("delta needs n >= 0")
    size = dim ** n
    return Array(dim, n, n, tuple(Fraction(int(r == c)) for r in range(size) for c in range(size)))


def array_inner(a: Array, b: Array) -> Array:
    """Contract every superscript of ``a`` with the matching subscript of ``b``."""
    if a.supers != b.subs:
        raise ShapeError(f"inner product needs a.supers == b.subs, got {a.supers} and {b.subs}")
    return array_mul(a, b, [(k, k) for k in range(a.supers)])


def array_outer(a: Array, b: Array) -> Array:
    return array_mul(a, b)


def kron(*vectors: Array) -> Array:
    """Coordinate tensor product of row arrays ``[v^i]``: valence (len over 0)."""
    if not vectors:
        raise ShapeError("kron needs at least one factor")
    out = vectors[0]
    for v in vectors[1:]:
        out = array_outer(out, v)
    return out
