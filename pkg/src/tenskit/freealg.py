"""Free unital associative algebra on finitely many coordinate spaces.

Elements are finite formal sums of *words*, tuples of letters ``(space, i)``
with ``1 <= i <= dim(space)``.  The product concatenates words and extends
bilinearly; the empty word is the unit.  Linearity relations are applied at
embedding time, so every element is already in basis-word normal form and
equality is plain dictionary equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .errors import CapacityError, ShapeError
from .numeric import Array, to_scalar

__all__ = ["Letter", "Word", "FreeElement", "FreeAlgebra", "free_mul", "tensor_product"]

Letter = tuple  # (space id, 1-based basis index)
Word = tuple  # tuple of letters; () is the unit word

DEFAULT_MAX_DEGREE = 6
DEFAULT_MAX_TERMS = 10_000


@dataclass(frozen=True, eq=False)
class FreeElement:
    """Immutable map ``Word -> Fraction`` with no zero coefficients."""

    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, c in dict(self.terms).items():
            c = to_scalar(c)
            if c:
                clean[tuple(w)] = c
        object.__setattr__(self, "terms", MappingProxyType(clean))

    @classmethod
    def word(cls, *letters, coeff=1) -> FreeElement:
        return cls({tuple(letters): coeff})

    @classmethod
    def scalar(cls, value) -> FreeElement:
        return cls({(): value})

    def __eq__(self, other):
        if isinstance(other, FreeElement):
            return dict(self.terms) == dict(other.terms)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __add__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FreeElement(out)

    def __neg__(self):
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            return free_mul(self, other)
        k = to_scalar(other)
        return FreeElement({w: k * c for w, c in self.terms.items()})

    def __rmul__(self, k):
        k = to_scalar(k)
        return FreeElement({w: k * c for w, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            word = "(" + ",".join(f"{s}{i}" for s, i in w) + ")"
            parts.append(f"{self.terms[w]}*{word}")
        return " + ".join(parts)


def free_mul(x: FreeElement, y: FreeElement, max_degree=DEFAULT_MAX_DEGREE,
             max_terms=DEFAULT_MAX_TERMS) -> FreeElement:
    """Concatenation product extended bilinearly; caps raise :class:`CapacityError`."""
    out: dict = {}
    for (u, a), (v, b) in itertools.product(x.terms.items(), y.terms.items()):
        w = u + v
        if len(w) > max_degree:
            raise CapacityError(f"product has degree {len(w)} > cap {max_degree}")
        out[w] = out.get(w, 0) + a * b
        if len(out) > max_terms:
            raise CapacityError(f"product has more than {max_terms} terms")
    return FreeElement(out)


def tensor_product(u: FreeElement, v: FreeElement, **caps) -> FreeElement:
    """``u ⊗ v`` for degree-homogeneous ``u`` and ``v``; equals the algebra product."""
    for name, e in (("left", u), ("right", v)):
        if not e.is_homogeneous():
            raise ShapeError(f"{name} factor mixes degrees {sorted(e.degrees())}")
    return free_mul(u, v, **caps)


@dataclass(frozen=True)
class FreeAlgebra:
    """The free algebra generated by the bases of the named spaces."""

    spaces: Mapping = field(default_factory=dict)

    def __post_init__(self):
        spaces = dict(self.spaces)
        for name, n in spaces.items():
            if not isinstance(n, int) or n < 1:
                raise ShapeError(f"space {name!r} needs a positive dimension, got {n!r}")
        object.__setattr__(self, "spaces", MappingProxyType(spaces))

    def _dim(self, space) -> int:
        try:
            return self.spaces[space]
        except KeyError:
            raise ShapeError(f"unknown space {space!r}") from None

    def unit(self) -> FreeElement:
        return FreeElement.scalar(1)

    def basis_word(self, *letters) -> FreeElement:
        for s, i in letters:
            if not 1 <= i <= self._dim(s):
                raise ShapeError(f"basis index {i} out of range for space {s!r}")
        return FreeElement.word(*letters)

    def embed_vector(self, space, coords) -> FreeElement:
        """``Σ_i coords[i] · (space, i)`` as a degree-1 element."""
        n = self._dim(space)
        if isinstance(coords, Array):
            if coords.rank != 1:
                raise ShapeError(f"need a one-index coordinate array, got valence {coords.valence}")
            coords = coords.entries
        coords = list(coords)
        if len(coords) != n:
            raise ShapeError(f"space {space!r} has dim {n}, got {len(coords)} coordinates")
        return FreeElement({((space, i + 1),): c for i, c in enumerate(coords)})

    def basis_words(self, signature) -> list:
        ranges = [[(s, i) for i in range(1, self._dim(s) + 1)] for s in signature]
        return [tuple(w) for w in itertools.product(*ranges)]

    def to_coeff_array(self, x: FreeElement, signature) -> Array:
        """Coordinates of a pure element of ``V_1 ⊗ … ⊗ V_n`` (all ``V_k`` of equal dim)."""
        signature = list(signature)
        dims = {self._dim(s) for s in signature}
        if len(dims) > 1:
            raise ShapeError(f"coordinate arrays need equal dims, got {sorted(dims)}")
        n = dims.pop() if dims else 1
        entries = [Fraction(0)] * n ** len(signature)
        for w, c in x.terms.items():
            if len(w) != len(signature) or any(s != t for (s, _), t in zip(w, signature)):
                raise ShapeError(f"word {w} does not match signature {signature}")
            pos = 0
            for _, i in w:
                pos = pos * n + (i - 1)
            entries[pos] = c
        return Array(n, 0, len(signature), tuple(entries))

    def from_coeff_array(self, a: Array, signature) -> FreeElement:
        signature = list(signature)
        if a.rank != len(signature):
            raise ShapeError(f"array rank {a.rank} does not match signature length {len(signature)}")
        return FreeElement({tuple(zip(signature, (i + 1 for i in idx))): v
                            for idx, v in a.nonzero()})
