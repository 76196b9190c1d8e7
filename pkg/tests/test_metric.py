from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import arrays, tuples
from tenskit.errors import LabelError, ShapeError, SingularError
from tenskit.metric import dual_shift, inverse_metric_map, lower_index, metric_map, metric_new, raise_index
from tenskit.numeric import Array, delta
from tenskit.tensormap import IndexLabel, TensorMap, compose_general, vector_like

G = [[2, 1], [1, 1]]


@st.composite
def metrics(draw, dim):
    """g = L D L^T with L unit lower-triangular and D a nonzero diagonal: always invertible."""
    d = [draw(st.sampled_from([1, -1, 2, -2, 3])) for _ in range(dim)]
    low = [[1 if i == j else (draw(st.integers(-2, 2)) if j < i else 0) for j in range(dim)] for i in range(dim)]
    rows = [[sum(Fraction(low[i][k]) * d[k] * low[j][k] for k in range(dim)) for j in range(dim)]
            for i in range(dim)]
    return metric_new(rows)


class TestConstruction:
    def test_inverse(self):
        m = metric_new(G)
        assert m.ginv.entries == (1, -1, -1, 2)
        assert m.ginv.valence == (0, 2)

    def test_not_symmetric(self):
        with pytest.raises(ShapeError):
            metric_new([[1, 2], [3, 4]])

    def test_degenerate(self):
        with pytest.raises(SingularError):
            metric_new([[1, 1], [1, 1]])

    def test_wrong_valence(self):
        with pytest.raises(ShapeError):
            metric_new(Array(2, 1, 1, (1, 0, 0, 1)))


class TestLowerRaise:
    def test_lower_vector(self):
        w = vector_like(2, Array.vector([4, 5]), "a")
        low = lower_index(w, "a", metric_new([[2, 0], [0, 3]]))
        assert low.coeffs.entries == (8, 15)
        assert low.subs == (IndexLabel("a", generation=1),)

    def test_lower_against_loops(self):
        m = metric_new(G)
        t = TensorMap(Array.from_function(2, 1, 2, lambda s, u: 4 * s[0] + 2 * u[0] + u[1]), "c", "ab")
        low = lower_index(t, "b", m)
        assert [str(x) for x in low.subs + low.supers] == ["b'", "c", "a"]
        for bp, c, a in tuples(2, 3):
            assert low.coeffs[bp, c, a] == sum(t.coeffs[c, a, k] * m.g[k, bp] for k in (1, 2))

    def test_raise_against_loops(self):
        m = metric_new(G)
        t = TensorMap(Array.from_function(2, 2, 1, lambda s, u: 4 * s[0] + 2 * s[1] + u[0]), "ab", "c")
        up = raise_index(t, "a", m)
        assert [str(x) for x in up.subs + up.supers] == ["b", "c", "a'"]
        for b, c, ap in tuples(2, 3):
            assert up.coeffs[b, c, ap] == sum(m.ginv[ap, k] * t.coeffs[k, b, c] for k in (1, 2))

    def test_lower_is_composition_with_g(self):
        m = metric_new(G)
        w = vector_like(2, Array.vector([4, 5]), "a")
        via = compose_general(metric_map(m, "a", "a'"), w, ["a"])
        assert via.coeffs == lower_index(w, "a", m).coeffs

    def test_g_ginv_is_delta(self):
        m = metric_new(G)
        q = compose_general(metric_map(m, "a", "b"), inverse_metric_map(m, "c", "a"), ["a"])
        assert q.coeffs == delta(2, 1)

    def test_errors(self):
        m = metric_new(G)
        w = vector_like(2, Array.vector([4, 5]), "a")
        with pytest.raises(LabelError):
            lower_index(w, "b", m)
        with pytest.raises(LabelError):
            raise_index(w, "a", m)
        with pytest.raises(ShapeError):
            lower_index(vector_like(3, Array.vector([1, 2, 3]), "a"), "a", m)

    @settings(max_examples=60)
    @given(st.data())
    def test_round_trip(self, data):
        dim = data.draw(st.integers(1, 3))
        m = data.draw(metrics(dim))
        t = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=2)), "c", "ab")
        low = lower_index(t, "b", m)
        back = raise_index(low, IndexLabel("b", generation=1), m)
        assert back.coeffs == t.coeffs


class TestDualShift:
    def test_toggle(self):
        t = TensorMap(Array(2, 1, 1, (1, 2, 3, 4)), "a", "b")
        s = dual_shift(t, "b")
        assert [str(x) for x in s.subs] == ["a", "b*"]
        assert s.coeffs.entries == t.coeffs.entries
        assert dual_shift(s, "b*") == t

    @given(arrays(dim=2, subs=1, supers=2))
    def test_entries_preserved(self, a):
        t = TensorMap(a, "a", "bc")
        s = dual_shift(t, "c")
        for x, y, z in tuples(2, 3):
            assert s.coeffs[x, z, y] == t.coeffs[x, y, z]
