"""Walk through the small worked examples with the library and the sample files.

    python scripts/worked_examples.py
"""

from pathlib import Path

from tenskit import (array_from_rows, array_inner, array_inverse, basis_change, evaluate_text, lower_index,
                     metric_new, transform, transform_operator)
from tenskit.io import load_array, load_env, load_tensor
from tenskit.tensormap import TensorMap

DATA = Path(__file__).resolve().parent / "data"


def fmt(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(fmt(x) for x in v) + "]"
    return str(v)


def show(title, value):
    print(f"{title:<30} {fmt(value)}")


def main():
    env = load_env([DATA / "env"])
    show("g_ab u^a v^b", evaluate_text("g_ab u^a v^b", env).coeffs.item())
    show("trace x_a^a", evaluate_text("x_a^a", env).coeffs.item())
    show("x_a^b x_c^a", evaluate_text("x_a^b x_c^a", env).coeffs.rows())

    x = array_from_rows([[1, 2], [3, 4]], (1, 1), 2)
    show("X X", array_inner(x, x).rows())
    show("X^-1", array_inverse(x).rows())
    z = array_from_rows([[4 * r + c + 1 for c in range(4)] for r in range(4)], (2, 2), 2)
    show("z_12^21 of a 4x4 indexation", z[1, 2, 2, 1])

    _, w = load_tensor(DATA / "vec.json")
    a, _ = load_array(DATA / "change.json")
    c = basis_change(a)
    show("w^a in the new basis", transform(w, c).coeffs.entries)
    op = transform_operator(TensorMap(x, "a", "b"), c)
    show("[a] X [a]^-1", op.coeffs.rows())

    g, _ = load_array(DATA / "metric.json")
    show("w^a lowered by diag(2,3)", lower_index(w, "a", metric_new(g)).coeffs.entries)


if __name__ == "__main__":
    main()
