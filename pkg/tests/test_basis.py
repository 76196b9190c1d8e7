from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import arrays, matrix, naive_matmul, tuples
from tenskit.basis import (basis_change, compose_changes, identity_change, scalar_invariance_check, transform,
                           transform_operator)
from tenskit.errors import BasisMismatchError, ShapeError, SingularError
from tenskit.numeric import Array
from tenskit.tensormap import TensorMap, apply, compose_general, contract, form_like, scalar_like, vector_like

A = [[2, 0], [0, 1]]
X = [[1, 2], [3, 4]]


@st.composite
def changes(draw, dim):
    """Upper-triangular with nonzero diagonal, then rows shuffled: invertible by construction."""
    rows = [[draw(st.sampled_from([1, -1, 2])) if i == j else (draw(st.integers(-2, 2)) if j > i else 0)
             for j in range(dim)] for i in range(dim)]
    return basis_change(draw(st.permutations(rows)))


class TestExamples:
    def test_vector(self):
        v = vector_like(2, Array.vector([4, 5]), "a")
        vbar = transform(v, basis_change(A))
        assert vbar.coeffs.entries == (2, 5)
        # old coordinates are recovered as vbar times [a]
        assert [sum(vbar.coeffs[j] * A[j - 1][i - 1] for j in (1, 2)) for i in (1, 2)] == [4, 5]

    def test_form(self):
        f = form_like(2, [5, 7], "a")
        assert transform(f, basis_change(A)).coeffs.entries == (10, 7)

    def test_operator(self):
        t = TensorMap(matrix(X), "a", "b")
        c = basis_change(A)
        got = transform_operator(t, c)
        assert got.coeffs.rows() == naive_matmul(naive_matmul(A, X), [[Fraction(1, 2), 0], [0, 1]])
        assert got.coeffs.rows() == [[1, 4], [Fraction(3, 2), 4]]
        assert got == transform(t, c)

    def test_inverse_change_gives_conjugate(self):
        t = TensorMap(matrix(X), "a", "b")
        c = basis_change([[Fraction(1, 2), 0], [0, 1]])
        assert transform_operator(t, c).coeffs.rows() == [[1, 1], [6, 4]]

    def test_tags_target(self):
        v = vector_like(2, Array.vector([4, 5]), "a")
        assert transform(v, basis_change(A, target="f")).basis == "f"


class TestErrors:
    def test_singular(self):
        with pytest.raises(SingularError):
            basis_change([[1, 2], [2, 4]])

    def test_source_checked(self):
        v = vector_like(2, Array.vector([4, 5]), "a")
        with pytest.raises(BasisMismatchError):
            transform(v, basis_change(A, source="f"))

    def test_dims(self):
        with pytest.raises(ShapeError):
            transform(vector_like(3, Array.vector([1, 2, 3]), "a"), basis_change(A))

    def test_operator_valence(self):
        with pytest.raises(ShapeError):
            transform_operator(form_like(2, [1, 2], "a"), basis_change(A))

    def test_compose_chain_checked(self):
        with pytest.raises(BasisMismatchError):
            compose_changes(basis_change(A, "e", "f"), basis_change(A, "g", "h"))


class TestLaws:
    def test_identity(self):
        t = TensorMap(matrix(X), "a", "b")
        assert transform(t, identity_change(2)).coeffs == t.coeffs

    def test_scalar_invariant(self):
        assert scalar_invariance_check(scalar_like(2, 7), [basis_change(A), basis_change([[1, 1], [0, 1]])])

    @settings(max_examples=50)
    @given(st.data())
    def test_loop_oracle(self, data):
        dim = data.draw(st.integers(1, 3))
        c = data.draw(changes(dim))
        t = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=1)), "a", "b")
        got = transform(t, c)
        for j, i in tuples(dim, 2):
            want = sum(c.a[j, k] * t.coeffs[k, l] * c.ainv[l, i] for k, l in tuples(dim, 2))
            assert got.coeffs[j, i] == want

    @settings(max_examples=50)
    @given(st.data())
    def test_commutes_with_composition(self, data):
        dim = data.draw(st.integers(1, 3))
        c = data.draw(changes(dim))
        s = TensorMap(data.draw(arrays(dim=dim, subs=2, supers=1)), "ab", "x")
        t = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=1)), "c", "a")
        lhs = transform(compose_general(s, t, ["a"]), c)
        assert lhs == compose_general(transform(s, c), transform(t, c), ["a"])

    @settings(max_examples=50)
    @given(st.data())
    def test_commutes_with_contract_and_apply(self, data):
        dim = data.draw(st.integers(1, 3))
        c = data.draw(changes(dim))
        t = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=2)), "a", "bc")
        assert transform(contract(t, [("a", "c")]), c) == contract(transform(t, c), [("a", "c")])
        v = vector_like(dim, data.draw(arrays(dim=dim, subs=0, supers=1)), "a")
        vbar = transform(v, c)
        assert transform(TensorMap(apply(t, v.coeffs), "", "bc"), c).coeffs == apply(transform(t, c), vbar.coeffs)

    @settings(max_examples=50)
    @given(st.data())
    def test_composed_changes(self, data):
        dim = data.draw(st.integers(1, 3))
        c1, c2 = data.draw(changes(dim)), data.draw(changes(dim))
        t = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=2)), "a", "bc")
        assert transform(transform(t, c1), c2).coeffs == transform(t, compose_changes(c1, c2)).coeffs
