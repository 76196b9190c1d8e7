"""JSON file formats for arrays, tensor maps and bilateral tensors; environments.

Array:       {"dim": N, "subs": m, "supers": n, "entries": ["1", "-3/2", ...]}
             plus an optional "role" ("metric", "basis_change").
TensorMap:   {"name": s, "dim": N, "sub": ["a", ...], "super": ["b", ...],
              "basis": "e", "entries": [...]}
Bilateral:   the TensorMap format with "kind": "bilateral".

Entries are decimal-integer or ``p/q`` strings in lexicographic order,
subscripts first.  Integers are also accepted on input.
"""

from __future__ import annotations

import json
import warnings
from fractions import Fraction
from pathlib import Path

from .bilateral import BilateralTensor
from .errors import ShapeError
from .numeric import Array
from .tensormap import TensorMap

__all__ = [
    "FileFormatError",
    "array_to_json",
    "array_from_json",
    "tensor_to_json",
    "tensor_from_json",
    "dumps",
    "read_json",
    "load_array",
    "load_tensor",
    "load_env",
]


class FileFormatError(ShapeError):
    """A file parsed as JSON but does not describe the expected object."""


def _entry(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FileFormatError(f"entries must be integer or 'p/q' strings, got {x!r}")
    try:
        return Fraction(x) if isinstance(x, int) else Fraction(x.strip())
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(f"bad rational entry {x!r}") from None


def _need(obj, key, kind):
    if key not in obj:
        raise FileFormatError(f"missing field {key!r}")
    if not isinstance(obj[key], kind) or isinstance(obj[key], bool):
        raise FileFormatError(f"field {key!r} has the wrong type")
    return obj[key]


def array_to_json(a: Array, role: str | None = None) -> dict:
    out = {"dim": a.dim, "subs": a.subs, "supers": a.supers,
           "entries": [str(x) for x in a.entries]}
    if role:
        out["role"] = role
    return out


def array_from_json(obj) -> Array:
    if not isinstance(obj, dict):
        raise FileFormatError("an array file holds a JSON object")
    return Array(_need(obj, "dim", int), _need(obj, "subs", int), _need(obj, "supers", int),
                 tuple(_entry(x) for x in _need(obj, "entries", list)))


def tensor_to_json(t, name: str = "t") -> dict:
    out = {"name": name, "dim": t.dim,
           "sub": [str(x) for x in t.subs], "super": [str(x) for x in t.supers],
           "basis": t.basis, "entries": [str(x) for x in t.coeffs.entries]}
    if isinstance(t, BilateralTensor):
        out["kind"] = "bilateral"
    return out


def tensor_from_json(obj):
    """TensorMap, or BilateralTensor when ``"kind": "bilateral"``; returns (name, value)."""
    if not isinstance(obj, dict):
        raise FileFormatError("a tensor file holds a JSON object")
    subs = _need(obj, "sub", list)
    supers = _need(obj, "super", list)
    dim = _need(obj, "dim", int)
    entries = tuple(_entry(x) for x in _need(obj, "entries", list))
    coeffs = Array(dim, len(subs), len(supers), entries)
    basis = obj.get("basis", "e")
    kind = obj.get("kind", "map")
    if kind not in ("map", "bilateral"):
        raise FileFormatError(f"unknown tensor kind {kind!r}")
    cls = BilateralTensor if kind == "bilateral" else TensorMap
    return obj.get("name", "t"), cls(coeffs, tuple(subs), tuple(supers), basis)


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def read_json(path):
    """Load JSON; OSError propagates, malformed JSON becomes :class:`FileFormatError`."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_array(path) -> tuple:
    """(Array, role) from an array file."""
    obj = read_json(path)
    return array_from_json(obj), obj.get("role")


def load_tensor(path) -> tuple:
    """(name, tensor) from a tensor file.

    A plain array file is read as a tensor map named after the file, with
    labels a, b, c, ... (subscripts first).
    """
    obj = read_json(path)
    if isinstance(obj, dict) and ("sub" in obj or "super" in obj):
        return tensor_from_json(obj)
    a = array_from_json(obj)
    letters = "abcdefghijklmnopqrstuvwxy"
    if a.rank > len(letters):
        raise FileFormatError("too many slots to label automatically")
    return Path(path).stem, TensorMap(a, tuple(letters[:a.subs]), tuple(letters[a.subs:a.rank]))


def _env_from_file(path, skip_arrays=False) -> dict:
    obj = read_json(path)
    if skip_arrays and isinstance(obj, dict) and "sub" not in obj and "tensors" not in obj:
        return {}  # plain array files (metrics, basis changes) may share the directory
    if isinstance(obj, dict) and "tensors" in obj:
        items = obj["tensors"]
        if not isinstance(items, list):
            raise FileFormatError(f"{path}: 'tensors' must be a list")
    else:
        items = [obj]
    out = {}
    for item in items:
        name, t = tensor_from_json(item)
        if name in out:
            raise FileFormatError(f"{path}: tensor name {name!r} defined twice")
        out[name] = t
    return out


def _env_from_dir(path) -> dict:
    out = {}
    for f in sorted(Path(path).glob("*.json")):
        for name, t in _env_from_file(f, skip_arrays=True).items():
            if name in out:
                raise FileFormatError(f"{f}: tensor name {name!r} defined twice in {path}")
            out[name] = t
    return out


def load_env(sources) -> dict:
    """Merge tensors from directories and files.

    A name defined both by a directory and by a file keeps the directory's
    definition, with a warning.
    """
    from_dirs, from_files = {}, {}
    for src in sources:
        p = Path(src)
        if p.is_dir():
            part, target = _env_from_dir(p), from_dirs
        else:
            part, target = _env_from_file(p), from_files
        for name, t in part.items():
            if name in target:
                raise FileFormatError(f"tensor name {name!r} defined more than once (again in {p})")
            target[name] = t
    env = dict(from_files)
    for name, t in from_dirs.items():
        if name in env:
            warnings.warn(f"tensor {name!r} defined in both a directory and a file; "
                          f"using the directory version", stacklevel=2)
        env[name] = t
    return env
