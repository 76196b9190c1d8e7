"""Exception hierarchy shared by every tenskit module."""


class TensorError(ValueError):
    """Base class for domain errors raised by tenskit."""


class ShapeError(TensorError):
    """Dimension, valence or entry-count mismatch."""


class SingularError(TensorError):
    """An array or matrix that had to be inverted is singular."""


class LabelError(TensorError):
    """Bad, unknown, duplicate or colliding index label."""


class BasisMismatchError(TensorError):
    """Operands are represented relative to different bases."""


class CapacityError(TensorError):
    """A configured size cap (degree, term count) was exceeded."""


class ParseError(TensorError):
    """Malformed expression text."""

    def __init__(self, message, pos=None):
        super().__init__(message if pos is None else f"{message} (at column {pos + 1})")
        self.pos = pos


class ValidationError(TensorError):
    """An expression is well formed but violates index discipline or the environment."""

    def __init__(self, message, label=None, span=None):
        parts = [message]
        if label is not None:
            parts.append(f"label {label}")
        if span is not None:
            parts.append(f"in factor {span}")
        super().__init__("; ".join(parts))
        self.label = label
        self.span = span
