"""Shared strategies and brute-force oracles for the test suite.

The oracles loop over explicit 1-based index tuples and never call the
library kernels, so they serve as independent references.
"""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from tenskit.numeric import Array

small_ints = st.integers(-3, 3).map(Fraction)
fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
dims = st.integers(1, 3)


@st.composite
def arrays(draw, dim=None, subs=None, supers=None, max_rank=3):
    dim = draw(dims) if dim is None else dim
    if subs is None:
        subs = draw(st.integers(0, max_rank))
    if supers is None:
        supers = draw(st.integers(0, max_rank - subs if max_rank >= subs else 0))
    n = dim ** (subs + supers)
    return Array(dim, subs, supers, tuple(draw(st.lists(small_ints, min_size=n, max_size=n))))


def tuples(dim, k):
    return itertools.product(range(1, dim + 1), repeat=k)


def entry(a, subs, supers):
    return a[tuple(subs) + tuple(supers)]


def matrix(rows):
    """Array of valence (1 over 1) from a list of rows."""
    n = len(rows)
    return Array(n, 1, 1, tuple(Fraction(x) for r in rows for x in r))


def naive_matmul(x, y):
    n = len(x)
    return [[sum(Fraction(x[i][k]) * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def naive_array_mul(a, b, matches):
    """Loop oracle: matches pair superscript i of a with subscript j of b."""
    dim = a.dim
    a_pos = [i for i, _ in matches]
    b_pos = [j for _, j in matches]
    a_free = [k for k in range(a.supers) if k not in a_pos]
    b_free = [k for k in range(b.subs) if k not in b_pos]
    out_subs = a.subs + len(b_free)
    out_supers = len(a_free) + b.supers
    entries = []
    for idx in tuples(dim, out_subs + out_supers):
        a_sub = idx[:a.subs]
        b_sub_free = idx[a.subs:out_subs]
        a_sup_free = idx[out_subs:out_subs + len(a_free)]
        b_sup = idx[out_subs + len(a_free):]
        total = Fraction(0)
        for m in tuples(dim, len(matches)):
            a_sup = [0] * a.supers
            for k, p in enumerate(a_free):
                a_sup[p] = a_sup_free[k]
            for k, p in enumerate(a_pos):
                a_sup[p] = m[k]
            b_sub = [0] * b.subs
            for k, p in enumerate(b_free):
                b_sub[p] = b_sub_free[k]
            for k, p in enumerate(b_pos):
                b_sub[p] = m[k]
            total += entry(a, a_sub, a_sup) * entry(b, b_sub, b_sup)
        entries.append(total)
    return Array(dim, out_subs, out_supers, tuple(entries))


def apply_map_loop(t, vecs):
    """Image of v1 ⊗ ... ⊗ vm under t, from t(e_J) = Σ_I t_J^I e_I."""
    m, n = len(t.subs), len(t.supers)
    out = []
    for i in tuples(t.dim, n):
        total = Fraction(0)
        for j in tuples(t.dim, m):
            coeff = Fraction(1)
            for v, jj in zip(vecs, j):
                coeff *= v[jj - 1]
            total += coeff * t.coeffs[tuple(j) + tuple(i)]
        out.append(total)
    return out
