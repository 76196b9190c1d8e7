"""Exact tensor-map algebra with abstract index notation."""

from .basis import BasisChange, basis_change, compose_changes, transform, transform_operator
from .bilateral import BilateralTensor, bilateral_contract, bilateral_mul, bilateral_permute, lambda_b, lambda_b_inv
from .errors import (BasisMismatchError, CapacityError, LabelError, ParseError, ShapeError, SingularError,
                     TensorError, ValidationError)
from .exprlang import evaluate, evaluate_text, parse, pretty_print, reference_evaluate, validate
from .freealg import FreeAlgebra, FreeElement, free_mul, tensor_product
from .metric import Metric, dual_shift, lower_index, metric_new, raise_index
from .numeric import (Array, Valence, array_add, array_from_rows, array_inner, array_inverse, array_mul,
                      array_outer, array_scale, array_transpose, delta, kron)
from .tensormap import (IndexLabel, TensorMap, apply, apply_multi, compose_general, contract, form_like,
                        identity_map, inner, outer, permute, scalar_like, vector_like)

__version__ = "0.1.0"

__all__ = [
    "Array", "Valence", "array_add", "array_from_rows", "array_inner", "array_inverse", "array_mul",
    "array_outer", "array_scale", "array_transpose", "delta", "kron",
    "IndexLabel", "TensorMap", "apply", "apply_multi", "compose_general", "contract", "form_like",
    "identity_map", "inner", "outer", "permute", "scalar_like", "vector_like",
    "BilateralTensor", "bilateral_contract", "bilateral_mul", "bilateral_permute", "lambda_b", "lambda_b_inv",
    "Metric", "dual_shift", "lower_index", "metric_new", "raise_index",
    "BasisChange", "basis_change", "compose_changes", "transform", "transform_operator",
    "FreeAlgebra", "FreeElement", "free_mul", "tensor_product",
    "evaluate", "evaluate_text", "parse", "pretty_print", "reference_evaluate", "validate",
    "TensorError", "ShapeError", "SingularError", "LabelError", "BasisMismatchError", "CapacityError",
    "ParseError", "ValidationError",
]
