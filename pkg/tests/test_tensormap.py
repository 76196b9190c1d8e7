from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import apply_map_loop, arrays, matrix, naive_matmul, small_ints, tuples
from tenskit.errors import BasisMismatchError, LabelError, ShapeError
from tenskit.numeric import Array, delta, kron
from tenskit.tensormap import (IndexLabel, TensorMap, apply, apply_multi, compose_general, contract, form_like,
                               identity_map, inner, outer, parse_labels, permute, scalar_like, vector_like)

X = matrix([[1, 2], [3, 4]])
Y = matrix([[5, 6], [7, 8]])


def vec(*xs):
    return Array.vector(xs)


class TestLabels:
    def test_parse_and_print(self):
        labels = parse_labels("ab'c*d2")
        assert [str(x) for x in labels] == ["a", "b'", "c*", "d2"]
        assert labels[1] == IndexLabel("b", generation=1)
        assert labels[2] == IndexLabel("c", dual=True)

    def test_all_fields_distinguish(self):
        assert len({IndexLabel("a"), IndexLabel("a", True), IndexLabel("a", False, 1)}) == 3

    def test_bad(self):
        with pytest.raises(LabelError):
            parse_labels("a-b")

    def test_repeated_label_rejected(self):
        with pytest.raises(LabelError):
            TensorMap(X, "a", "a")

    def test_valence_must_match(self):
        with pytest.raises(ShapeError):
            TensorMap(X, "ab", "")


class TestLikes:
    def test_scalar_like(self):
        s = scalar_like(2, 3)
        assert apply(s, 2).item() == 6

    def test_vector_like(self):
        assert vector_like(2, vec(1, 0), "a").coeffs.entries == (1, 0)

    def test_form_like(self):
        f = form_like(2, [5, 7], "a")
        assert apply(f, vec(1, 1)).item() == 12

    def test_dim_mismatch(self):
        with pytest.raises(ShapeError):
            vector_like(3, vec(1, 0))


class TestCompose:
    def test_is_function_composition(self):
        s, t = TensorMap(X, "a", "b"), TensorMap(Y, "c", "a")
        q = compose_general(s, t, ["a"])
        assert (q.subs, q.supers) == (parse_labels("c"), parse_labels("b"))
        for e in ([1, 0], [0, 1]):
            assert list(apply(q, vec(*e)).entries) == apply_map_loop(s, [apply_map_loop(t, [e])])

    def test_outer_layout(self):
        p = outer(TensorMap(X, "a", "b"), TensorMap(Y, "c", "d"))
        assert [str(x) for x in p.subs + p.supers] == ["a", "c", "b", "d"]
        for a, c, b, d in tuples(2, 4):
            assert p.coeffs[a, c, b, d] == X[a, b] * Y[c, d]

    def test_form_on_vector(self):
        f, v = form_like(2, [5, 7], "a"), vector_like(2, vec(1, 1), "a")
        assert compose_general(f, v, ["a"]).coeffs.item() == 12

    def test_crossed_matches(self):
        # s_ab t_f^{bda}: both subscripts of s matched out of order
        s = TensorMap(Array.from_function(2, 2, 0, lambda i, _: 3 * i[0] + i[1]), "ab", "")
        t = TensorMap(Array.from_function(2, 1, 3, lambda i, j: i[0] + 2 * j[0] - j[1] + 5 * j[2]), "f", "bda")
        q = compose_general(s, t, ["a", "b"])
        assert [str(x) for x in q.subs + q.supers] == ["f", "d"]
        for f, d in tuples(2, 2):
            want = sum(s.coeffs[a, b] * t.coeffs[f, b, d, a] for a, b in tuples(2, 2))
            assert q.coeffs[f, d] == want

    def test_reverse_direction_rejected(self):
        with pytest.raises(LabelError):
            compose_general(TensorMap(X, "a", "b"), TensorMap(Y, "c", "a"), ["b"])

    def test_collision(self):
        with pytest.raises(LabelError):
            compose_general(TensorMap(X, "a", "b"), TensorMap(Y, "a", "c"))

    def test_basis_mismatch(self):
        with pytest.raises(BasisMismatchError):
            compose_general(TensorMap(X, "a", "b"), TensorMap(Y, "c", "a", "f"), ["a"])

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            compose_general(TensorMap(X, "a", "b"), TensorMap(Y, "c", "a"), ["z"])

    def test_dual_flags_must_agree(self):
        s = TensorMap(X, "a*", "b")
        t = TensorMap(Y, "c", "a")
        with pytest.raises(LabelError):
            compose_general(s, t, [("a*", "a")])


class TestInnerOuter:
    def test_scalars(self):
        assert inner(scalar_like(2, 2), scalar_like(2, 3)).coeffs.item() == 6
        assert outer(scalar_like(2, 2), scalar_like(2, 3)) == inner(scalar_like(2, 2), scalar_like(2, 3))

    def test_outer_vectors(self):
        t = outer(vector_like(2, vec(1, 2), "a"), vector_like(2, vec(3, 4), "b"))
        assert t.coeffs.entries == (3, 4, 6, 8)

    def test_metric_on_outer(self):
        u, v = vector_like(2, vec(1, 2), "c"), vector_like(2, vec(3, 4), "d")
        g = TensorMap(Array(2, 2, 0, (1, 0, 0, 1)), "ab", "")
        assert inner(g, outer(u, v)).coeffs.item() == 1 * 3 + 2 * 4

    def test_count_mismatch(self):
        with pytest.raises(ShapeError):
            inner(TensorMap(X, "a", "b"), scalar_like(2, 1))

    def test_fresh_labels_avoid_collisions(self):
        s = TensorMap(X, "a", "b")
        t = TensorMap(Y, "b", "c")  # t's input label b collides with s's output
        q = inner(s, t)
        assert len(set(q.labels)) == 2
        # as arrays, s after t is [t][s]
        assert q.coeffs == matrix(naive_matmul([[5, 6], [7, 8]], [[1, 2], [3, 4]]))


class TestContract:
    def test_trace(self):
        assert contract(TensorMap(X, "a", "b"), [("a", "b")]).coeffs.item() == 5

    def test_identity_trace(self):
        assert contract(identity_map(3), [("a", "b")]).coeffs.item() == 3

    def test_double(self):
        y = Array.from_function(2, 2, 2, lambda i, j: 8 * i[0] + 4 * i[1] + 2 * j[0] + j[1])
        t = TensorMap(y, "ab", "cd")
        want = sum(y[i, j, j, i] for i, j in tuples(2, 2))
        assert contract(t, [("a", "d"), ("b", "c")]).coeffs.item() == want

    def test_empty_pairs(self):
        t = TensorMap(X, "a", "b")
        assert contract(t, []) == t

    def test_unknown(self):
        with pytest.raises(LabelError):
            contract(TensorMap(X, "a", "b"), [("b", "a")])


class TestPermute:
    def test_swap(self):
        t = TensorMap(Array(2, 0, 2, (1, 2, 3, 4)), "", "ab")
        p = permute(t, None, "ba")
        assert p.coeffs.entries == (1, 3, 2, 4)
        assert [str(x) for x in p.supers] == ["b", "a"]

    def test_symmetric_fixed(self):
        t = TensorMap(Array(2, 0, 2, (1, 2, 2, 5)), "", "ab")
        assert permute(t, None, [1, 0]).coeffs == t.coeffs

    def test_not_a_permutation(self):
        with pytest.raises(LabelError):
            permute(TensorMap(Array(2, 0, 2, (1, 2, 3, 4)), "", "ab"), None, [0, 0])

    @given(st.data())
    def test_inverse_restores(self, data):
        t = TensorMap(data.draw(arrays(dim=2, subs=2, supers=2)), "ab", "cd")
        sp = data.draw(st.permutations([0, 1]))
        pp = data.draw(st.permutations([0, 1]))
        p = permute(t, sp, pp)
        assert permute(p, list(t.subs), list(t.supers)) == t


class TestApply:
    def test_identity(self):
        assert apply(identity_map(2), vec(3, -1)) == vec(3, -1)

    def test_basis_vector_picks_row(self):
        assert apply(TensorMap(X, "a", "b"), vec(1, 0)).entries == (1, 2)

    def test_dim_mismatch(self):
        with pytest.raises(ShapeError):
            apply(TensorMap(X, "a", "b"), vec(1, 0, 0))

    def test_bilinear_form(self):
        g = TensorMap(Array(2, 2, 0, (2, -1, -1, 3)), "ab", "")
        u, v = vec(1, 2), vec(-1, 4)
        want = sum(g.coeffs[i, j] * u[i] * v[j] for i, j in tuples(2, 2))
        assert apply(g, kron(u, v)).item() == want
        assert apply_multi(g, [u, v]).item() == want

    def test_apply_multi_single(self):
        t = TensorMap(X, "a", "b")
        assert apply_multi(t, [vec(2, 5)]) == apply(t, vec(2, 5))

    def test_wrong_count(self):
        with pytest.raises(ShapeError):
            apply_multi(TensorMap(X, "a", "b"), [])

    @settings(max_examples=60)
    @given(st.data())
    def test_multilinear_equals_kron(self, data):
        dim = data.draw(st.integers(1, 3))
        m = data.draw(st.integers(1, 3))
        n = data.draw(st.integers(0, 4 - m))
        t = TensorMap(data.draw(arrays(dim=dim, subs=m, supers=n, max_rank=4)), "abc"[:m], "wxyz"[:n])
        args = [data.draw(arrays(dim=dim, subs=0, supers=1)) for _ in range(m)]
        assert apply_multi(t, args) == apply(t, kron(*args))
        k = data.draw(small_ints)
        scaled = [k * args[0]] + args[1:]
        assert apply_multi(t, scaled) == k * apply_multi(t, args)


@settings(max_examples=60)
@given(st.data())
def test_contract_of_outer_is_composition(data):
    dim = data.draw(st.integers(1, 3))
    p = TensorMap(data.draw(arrays(dim=dim, subs=2, supers=0)), "ab", "")
    q = TensorMap(data.draw(arrays(dim=dim, subs=0, supers=2)), "", "cd")
    pairs = [("a", "d"), ("b", "c")][:data.draw(st.integers(0, 2))]
    assert contract(outer(p, q), pairs) == compose_general(p, q, pairs)


@settings(max_examples=60)
@given(st.data())
def test_associative(data):
    dim = data.draw(st.integers(1, 3))
    r = TensorMap(data.draw(arrays(dim=dim, subs=2, supers=1)), "ab", "x")
    s = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=1)), "c", "a")
    t = TensorMap(data.draw(arrays(dim=dim, subs=0, supers=2)), "", "bc")
    left = compose_general(compose_general(r, s, ["a"]), t, ["b", "c"])
    right = compose_general(r, compose_general(s, t, ["c"]), ["a", "b"])
    assert left == right


@given(st.data())
def test_bilinear(data):
    s, s2 = (TensorMap(data.draw(arrays(dim=2, subs=1, supers=1)), "a", "b") for _ in range(2))
    t = TensorMap(data.draw(arrays(dim=2, subs=1, supers=1)), "c", "a")
    k = data.draw(small_ints)
    assert compose_general(k * s + s2, t, ["a"]) == k * compose_general(s, t, ["a"]) + compose_general(s2, t, ["a"])


def test_identity_delta():
    assert identity_map(3).coeffs == delta(3, 1)
    assert Fraction(1) == contract(identity_map(1), [("a", "b")]).coeffs.item()
