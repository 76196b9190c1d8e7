"""Randomized property suites for the algebraic laws of the engine.

Every suite is a list of properties; each property draws ``cases`` random
instances from its own ``random.Random`` stream (seeded from the suite
seed and the property name) and compares both sides exactly.  Entries are
integers in ``[-3, 3]``; invertible and symmetric arrays are found by
rejection sampling.
"""

from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .basis import BasisChange, basis_change, compose_changes, transform, transform_coords, transform_operator
from .bilateral import (BilateralTensor, bilateral_contract, bilateral_mul, lambda_b, lambda_b_inv)
from .errors import SingularError
from .exprlang import (Compose, Factor, Outer, Scale, Sum, evaluate, free_labels, parse, pretty_print,
                       reference_evaluate, validate)
from .freealg import FreeAlgebra, FreeElement, free_mul, tensor_product
from .metric import Metric, inverse_metric_map, lower_index, metric_map, metric_new, raise_index
from .numeric import (Array, array_add, array_inner, array_inverse, array_mul, array_scale, array_transpose,
                      delta, kron)
from .tensormap import (IndexLabel, TensorMap, apply, apply_multi, compose_general, contract, inner, outer,
                        permute)

__all__ = [
    "SuiteConfig",
    "PropertyResult",
    "SUITES",
    "run_suite",
    "run_all",
    "rand_array",
    "rand_map",
    "rand_invertible",
    "rand_metric",
    "rand_composable",
    "rand_chain",
    "rand_expr",
    "rand_env",
]

LETTERS = "abcdefghijklmnopqrstuvw"
# largest total valence of one random operand, by dimension
BUDGET = {1: 4, 2: 4, 3: 3, 4: 2}


@dataclass(frozen=True)
class SuiteConfig:
    """``dim=None`` draws the dimension per case from ``dims``."""

    cases: int = 100
    seed: int = 0
    dim: int | None = None
    dims: tuple = (1, 2, 3, 4)


@dataclass
class PropertyResult:
    suite: str
    name: str
    cases: int
    failures: int = 0
    first_failure: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.cases > 0


# ---------------------------------------------------------------- generators

def rand_entries(rng, n, lo=-3, hi=3):
    return tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))


def rand_array(rng, dim, subs, supers) -> Array:
    return Array(dim, subs, supers, rand_entries(rng, dim ** (subs + supers)))


def rand_valence(rng, budget):
    total = rng.randint(0, budget)
    m = rng.randint(0, total)
    return m, total - m


def _label_pool(rng, dual_rate=0.15):
    """Distinct labels in random order; some on V*, some primed."""
    out = []
    for ch in rng.sample(LETTERS, len(LETTERS)):
        r = rng.random()
        out.append(IndexLabel(ch, dual=r < dual_rate, generation=1 if r > 0.9 else 0))
    return iter(out)


def rand_map(rng, dim, subs, supers, basis="e") -> TensorMap:
    return TensorMap(rand_array(rng, dim, len(subs), len(supers)), tuple(subs), tuple(supers), basis)


def rand_invertible(rng, dim, n=1) -> Array:
    while True:
        a = rand_array(rng, dim, n, n)
        try:
            array_inverse(a)
            return a
        except SingularError:
            continue


def rand_metric(rng, dim) -> Metric:
    while True:
        rows = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                rows[i][j] = rows[j][i] = rng.randint(-3, 3)
        try:
            return metric_new(rows)
        except SingularError:
            continue


def _pick_dim(rng, cfg: SuiteConfig, dims=None):
    if cfg.dim is not None:
        return cfg.dim
    return rng.choice([d for d in (dims or cfg.dims) if d in cfg.dims] or list(cfg.dims))


def rand_composable(rng, dim, budget=None):
    """Maps ``s``, ``t`` and matched labels (subscripts of s = superscripts of t)."""
    budget = budget or BUDGET.get(dim, 2)
    sm, sn = rand_valence(rng, budget)
    tm, tn = rand_valence(rng, budget)
    rho = rng.randint(0, min(sm, tn))
    pool = _label_pool(rng)
    matched = [next(pool) for _ in range(rho)]
    s_subs = matched + [next(pool) for _ in range(sm - rho)]
    t_supers = matched + [next(pool) for _ in range(tn - rho)]
    rng.shuffle(s_subs)
    rng.shuffle(t_supers)
    s = rand_map(rng, dim, s_subs, [next(pool) for _ in range(sn)])
    t = rand_map(rng, dim, [next(pool) for _ in range(tm)], t_supers)
    return s, t, matched


def rand_chain(rng, dim, count, budget=None, link_rate=0.5):
    """``count`` maps whose shared labels run from a subscript of an earlier map
    to a superscript of a later one; every other label is unique."""
    budget = budget or BUDGET.get(dim, 2)
    pool = _label_pool(rng)
    subs = [[] for _ in range(count)]
    supers = [[] for _ in range(count)]
    for i, j in itertools.combinations(range(count), 2):
        while rng.random() < link_rate and len(subs[i]) + len(supers[i]) < budget \
                and len(subs[j]) + len(supers[j]) < budget:
            x = next(pool)
            subs[i].append(x)
            supers[j].append(x)
    maps = []
    for k in range(count):
        used = len(subs[k]) + len(supers[k])
        extra_m, extra_n = rand_valence(rng, max(0, min(budget - used, 1)))
        subs[k] += [next(pool) for _ in range(extra_m)]
        supers[k] += [next(pool) for _ in range(extra_n)]
        rng.shuffle(subs[k])
        rng.shuffle(supers[k])
        maps.append(rand_map(rng, dim, subs[k], supers[k]))
    return maps


def auto_pairs(s: TensorMap, t: TensorMap) -> list:
    return [x for x in s.subs if x in t.supers]


def basis_vectors(dim, p):
    """Coordinate arrays (valence p over 0) of every basis tuple of ``V^{⊗p}``."""
    for k in range(dim ** p):
        entries = [0] * dim ** p
        entries[k] = 1
        yield Array(dim, 0, p, tuple(entries))


# expression corpus --------------------------------------------------

def _chain_factors(rng, n, budget):
    pool = _label_pool(rng, dual_rate=0.1)
    subs = [[] for _ in range(n)]
    supers = [[] for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < 0.55 and len(subs[i]) + len(supers[i]) < budget \
                and len(subs[j]) + len(supers[j]) < budget:
            x = next(pool)
            subs[i].append(x)
            supers[j].append(x)
    out = []
    for k in range(n):
        room = budget - len(subs[k]) - len(supers[k])
        if room >= 2 and rng.random() < 0.15:
            x = next(pool)  # self-contraction
            subs[k].append(x)
            supers[k].append(x)
            room -= 2
        m, p = rand_valence(rng, min(room, 2))
        subs[k] += [next(pool) for _ in range(m)]
        supers[k] += [next(pool) for _ in range(p)]
        rng.shuffle(subs[k])
        rng.shuffle(supers[k])
        out.append(Factor(f"t{k}", tuple(subs[k]), tuple(supers[k])))
    return out


def _rand_scalar(rng):
    return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))


def _group(rng, items, names):
    """Random binary bracketing of a factor list, with optional scales and sums."""
    if len(items) == 1:
        node = items[0]
    else:
        cut = rng.randint(1, len(items) - 1)
        left, right = _group(rng, items[:cut], names), _group(rng, items[cut:], names)
        lsub, lsup = free_labels(left)
        rsub, rsup = free_labels(right)
        disjoint = not (set(lsub + lsup) & set(rsub + rsup))
        node = Outer(left, right) if disjoint and rng.random() < 0.5 else Compose(left, right)
    r = rng.random()
    if r < 0.15:
        node = Scale(_rand_scalar(rng), node)
    elif r < 0.3:
        subs, supers = free_labels(node)
        subs, supers = list(subs), list(supers)
        rng.shuffle(subs)
        rng.shuffle(supers)
        other = Factor(f"s{next(names)}", tuple(subs), tuple(supers))
        if rng.random() < 0.4:
            other = Scale(_rand_scalar(rng), other)
        node = Sum(node, other)
    return node


def rand_expr(rng, max_factors=4, budget=3):
    """A random expression obeying the index discipline."""
    while True:
        n = rng.randint(1, max_factors)
        e = _group(rng, _chain_factors(rng, n, budget), itertools.count())
        try:
            validate(e)
            return e
        except Exception:
            continue


def rand_env(rng, e, dim) -> dict:
    from .exprlang import factors

    env = {}
    for f in factors(e):
        if f.name not in env:
            env[f.name] = TensorMap(rand_array(rng, dim, len(f.subs), len(f.supers)),
                                    tuple(LETTERS[:len(f.subs)]),
                                    tuple(LETTERS[len(f.subs):len(f.subs) + len(f.supers)]))
    return env


# ---------------------------------------------------------------- properties

def _eq(name, left, right):
    if left != right:
        return f"{name}: {left} != {right}"
    return None


def p_lambda_b_mul(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    s, t, m = rand_composable(rng, dim, budget=BUDGET[dim] if dim < 3 else 3)
    bs, bt = lambda_b_inv(s), lambda_b_inv(t)
    return _eq("compose vs bilateral", compose_general(lambda_b(bs), lambda_b(bt), m),
               lambda_b(bilateral_mul(bs, bt, m)))


def p_lambda_b_contract(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    m, n = rand_valence(rng, BUDGET[dim])
    rho = rng.randint(0, min(m, n))
    pool = _label_pool(rng)
    subs, supers = [next(pool) for _ in range(m)], [next(pool) for _ in range(n)]
    pairs = list(zip(rng.sample(subs, rho), rng.sample(supers, rho)))
    pairs = [(x, y) for x, y in pairs if x.dual == y.dual]
    b = BilateralTensor(rand_array(rng, dim, m, n), tuple(subs), tuple(supers))
    return _eq("contract", lambda_b(bilateral_contract(b, pairs)), contract(lambda_b(b), pairs))


def p_lambda_b_linear(rng, cfg):
    dim = _pick_dim(rng, cfg)
    m, n = rand_valence(rng, BUDGET[dim])
    pool = _label_pool(rng)
    subs, supers = tuple(next(pool) for _ in range(m)), tuple(next(pool) for _ in range(n))
    s = BilateralTensor(rand_array(rng, dim, m, n), subs, supers)
    t = BilateralTensor(rand_array(rng, dim, m, n), subs, supers)
    k = _rand_scalar(rng)
    return _eq("linearity", lambda_b(k * s + t), k * lambda_b(s) + lambda_b(t)) or \
        _eq("inverse", lambda_b_inv(lambda_b(s)), s)


def p_function_composition(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    budget = BUDGET[dim]
    m = rng.randint(0, min(2, budget))
    n = rng.randint(0, budget - m)
    p = rng.randint(0, budget - m)
    pool = _label_pool(rng, 0)
    s = rand_map(rng, dim, [next(pool) for _ in range(m)], [next(pool) for _ in range(n)])
    t = rand_map(rng, dim, [next(pool) for _ in range(p)], [next(pool) for _ in range(m)])
    st = inner(s, t)
    for x in basis_vectors(dim, p):
        err = _eq(f"basis tuple {x.entries}", apply(st, x), apply(s, apply(t, x)))
        if err:
            return err
    return None


def p_contract_vs_compose(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    budget = BUDGET[dim]
    m = rng.randint(0, budget // 2)
    n = rng.randint(0, budget - m)
    pool = _label_pool(rng, 0)
    p = rand_map(rng, dim, [next(pool) for _ in range(m)], [])
    q = rand_map(rng, dim, [], [next(pool) for _ in range(n)])
    rho = rng.randint(0, min(m, n))
    pairs = list(zip(rng.sample(p.subs, rho), rng.sample(q.supers, rho)))
    return _eq("contract(outer) vs compose", contract(outer(p, q), pairs), compose_general(p, q, pairs))


def p_compose_bilinear(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    s, t, m = rand_composable(rng, dim)
    s2 = rand_map(rng, dim, s.subs, s.supers)
    t2 = rand_map(rng, dim, t.subs, t.supers)
    k = _rand_scalar(rng)
    return _eq("left", compose_general(k * s + s2, t, m),
               k * compose_general(s, t, m) + compose_general(s2, t, m)) or \
        _eq("right", compose_general(s, k * t + t2, m),
            k * compose_general(s, t, m) + compose_general(s, t2, m))


def p_compose_assoc(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    r, s, t = rand_chain(rng, dim, 3, budget=3 if dim < 3 else 2)
    rs = compose_general(r, s, auto_pairs(r, s))
    st = compose_general(s, t, auto_pairs(s, t))
    return _eq("(rs)t vs r(st)", compose_general(rs, t, auto_pairs(rs, t)),
               compose_general(r, st, auto_pairs(r, st)))


def p_bilateral_assoc(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    r, s, t = (lambda_b_inv(x) for x in rand_chain(rng, dim, 3, budget=3 if dim < 3 else 2))
    rs = bilateral_mul(r, s, auto_pairs(r, s))
    st = bilateral_mul(s, t, auto_pairs(s, t))
    return _eq("(rs)t vs r(st)", bilateral_mul(rs, t, auto_pairs(rs, t)),
               bilateral_mul(r, st, auto_pairs(r, st)))


def p_array_assoc(rng, cfg):
    dim = _pick_dim(rng, cfg)
    k = rng.randint(1, 2) if dim <= 2 else 1
    a, b, c = (rand_array(rng, dim, k, k) for _ in range(3))
    return _eq("(ab)c vs a(bc)", array_inner(array_inner(a, b), c), array_inner(a, array_inner(b, c)))


def p_metric_roundtrip(rng, cfg):
    dim = _pick_dim(rng, cfg)
    g = rand_metric(rng, dim)
    m, n = rand_valence(rng, BUDGET[dim])
    if m + n == 0:
        n = 1
    pool = _label_pool(rng, 0)
    t = rand_map(rng, dim, [next(pool) for _ in range(m)], [next(pool) for _ in range(n)])
    if n:
        x = rng.choice(t.supers)
        k = t.supers.index(x)
        back = raise_index(lower_index(t, x, g), x.primed(), g)
        order = list(back.supers[:k]) + [back.supers[-1]] + list(back.supers[k:-1])
        err = _eq(f"raise(lower(t, {x}))", permute(back, None, order).coeffs, t.coeffs)
        if err:
            return err
        y = IndexLabel("y", x.dual, 9)
        via_compose = contract(outer(metric_map(g, y, x.primed()), t), [(y, x)])
        err = _eq("lower vs contract(outer(g, t))", lower_index(t, x, g), via_compose)
        if err:
            return err
    if m:
        x = rng.choice(t.subs)
        k = t.subs.index(x)
        back = lower_index(raise_index(t, x, g), x.primed(), g)
        order = list(back.subs[1:k + 1]) + [back.subs[0]] + list(back.subs[k + 1:])
        return _eq(f"lower(raise(t, {x}))", permute(back, order).coeffs, t.coeffs)
    return None


def p_metric_inverse(rng, cfg):
    dim = _pick_dim(rng, cfg)
    g = rand_metric(rng, dim)
    left = compose_general(metric_map(g, "a", "b"), inverse_metric_map(g, "b", "c"), ["b"])
    right = compose_general(metric_map(g, "b", "c"), inverse_metric_map(g, "a", "b"), ["b"])
    return _eq("g_ab g^bc", left.coeffs, delta(dim, 1)) or _eq("g^ab g_bc", right.coeffs, delta(dim, 1))


def _rand_change(rng, dim, target="ebar") -> BasisChange:
    return basis_change(rand_invertible(rng, dim), None, target)


def p_basis_compose(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    s, t, m = rand_composable(rng, dim)
    c = _rand_change(rng, dim)
    return _eq("transform(s∘t)", transform(compose_general(s, t, m), c),
               compose_general(transform(s, c), transform(t, c), m))


def p_basis_contract(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    m, n = rand_valence(rng, BUDGET[dim])
    rho = rng.randint(0, min(m, n))
    pool = _label_pool(rng, 0)
    t = rand_map(rng, dim, [next(pool) for _ in range(m)], [next(pool) for _ in range(n)])
    pairs = list(zip(rng.sample(t.subs, rho), rng.sample(t.supers, rho)))
    c = _rand_change(rng, dim)
    return _eq("transform(contract t)", transform(contract(t, pairs), c), contract(transform(t, c), pairs))


def p_basis_apply(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    m, n = rand_valence(rng, BUDGET[dim])
    pool = _label_pool(rng, 0)
    t = rand_map(rng, dim, [next(pool) for _ in range(m)], [next(pool) for _ in range(n)])
    x = rand_array(rng, dim, 0, m)
    c = _rand_change(rng, dim)
    return _eq("apply", transform_coords(apply(t, x), c), apply(transform(t, c), transform_coords(x, c)))


def p_basis_reductions(rng, cfg):
    dim = _pick_dim(rng, cfg)
    c = _rand_change(rng, dim)
    v = rand_map(rng, dim, [], ["a"])
    f = rand_map(rng, dim, ["a"], [])
    op = rand_map(rng, dim, ["a"], ["b"])
    vbar = transform(v, c).coeffs
    fbar = transform(f, c).coeffs
    return (_eq("contravariant [v] = [vbar][a]", array_inner(vbar, c.a), v.coeffs)
            or _eq("covariant [fbar] = [a][f]", fbar, array_inner(c.a, f.coeffs))
            or _eq("operator [a][t][a]^-1", transform(op, c), transform_operator(op, c)))


def p_basis_invariants(rng, cfg):
    dim = _pick_dim(rng, cfg)
    c1, c2 = _rand_change(rng, dim, "e1"), _rand_change(rng, dim, "e2")
    g = metric_map(rand_metric(rng, dim), "a", "b")
    u, v = rand_map(rng, dim, [], ["a"]), rand_map(rng, dim, [], ["b"])
    before = compose_general(compose_general(g, u, ["a"]), v, ["b"])
    gb, ub, vb = (transform(x, c1) for x in (g, u, v))
    after = compose_general(compose_general(gb, ub, ["a"]), vb, ["b"])
    op = rand_map(rng, dim, ["a"], ["b"])
    t = rand_map(rng, dim, ["a"], ["b", "c"] if dim < 4 else ["b"])
    return (_eq("scalar g(u, v)", after.coeffs, before.coeffs)
            or _eq("trace", contract(transform(op, c1), [("a", "b")]).coeffs,
                   contract(op, [("a", "b")]).coeffs)
            or _eq("functoriality", transform(transform(t, c1), c2).coeffs,
                   transform(t, compose_changes(c1, c2)).coeffs))


def p_array_transpose_product(rng, cfg):
    dim = _pick_dim(rng, cfg)
    budget = BUDGET[dim]
    m = rng.randint(0, budget // 2)
    k = rng.randint(0, budget // 2)
    n = rng.randint(0, budget - max(m, k))
    a, b = rand_array(rng, dim, m, k), rand_array(rng, dim, k, n)
    t = array_transpose
    return _eq("(ab)^T vs b^T a^T", t(array_inner(a, b)), array_inner(t(b), t(a))) or \
        _eq("involution", t(t(a)), a)


def p_array_inverse(rng, cfg):
    dim = _pick_dim(rng, cfg)
    n = 1 if dim > 2 else rng.randint(1, 2)
    a = rand_invertible(rng, dim, n)
    inv = array_inverse(a)
    return _eq("a a^-1", array_inner(a, inv), delta(dim, n)) or _eq("a^-1 a", array_inner(inv, a), delta(dim, n))


def p_array_bilinear(rng, cfg):
    dim = _pick_dim(rng, cfg)
    budget = BUDGET[dim]
    sa, pa = rand_valence(rng, budget // 2)
    sb, pb = rand_valence(rng, budget // 2)
    a, a2 = rand_array(rng, dim, sa, pa), rand_array(rng, dim, sa, pa)
    b = rand_array(rng, dim, sb, pb)
    rho = rng.randint(0, min(pa, sb))
    matches = list(zip(rng.sample(range(pa), rho), rng.sample(range(sb), rho)))
    k = _rand_scalar(rng)
    return _eq("bilinear", array_mul(array_add(array_scale(k, a), a2), b, matches),
               array_add(array_scale(k, array_mul(a, b, matches)), array_mul(a2, b, matches)))


def _rand_free(rng, alg, degree, terms=3):
    spaces = list(alg.spaces)
    out = FreeElement()
    for _ in range(rng.randint(0, terms)):
        d = degree if degree is not None else rng.randint(0, 3)
        letters = []
        for _ in range(d):
            s = rng.choice(spaces)
            letters.append((s, rng.randint(1, alg.spaces[s])))
        out = out + FreeElement.word(*letters, coeff=_rand_scalar(rng))
    return out


def _rand_alg(rng):
    return FreeAlgebra({"U": rng.randint(1, 2), "V": rng.randint(1, 2)})


def p_free_assoc(rng, cfg):
    alg = _rand_alg(rng)
    x, y, z = (_rand_free(rng, alg, None) for _ in range(3))
    mul = functools.partial(free_mul, max_degree=9)  # three factors of degree <= 3
    return _eq("(xy)z vs x(yz)", mul(mul(x, y), z), mul(x, mul(y, z)))


def p_free_unit(rng, cfg):
    alg = _rand_alg(rng)
    x = _rand_free(rng, alg, None)
    return _eq("1x", alg.unit() * x, x) or _eq("x1", x * alg.unit(), x)


def p_free_bilinear(rng, cfg):
    alg = _rand_alg(rng)
    d1, d2 = rng.randint(0, 2), rng.randint(0, 2)
    u, u2 = _rand_free(rng, alg, d1), _rand_free(rng, alg, d1)
    v, v2 = _rand_free(rng, alg, d2), _rand_free(rng, alg, d2)
    k = _rand_scalar(rng)
    tp = tensor_product
    return _eq("left", tp(k * u + u2, v), k * tp(u, v) + tp(u2, v)) or \
        _eq("right", tp(u, k * v + v2), k * tp(u, v) + tp(u, v2))


def p_free_expansion(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    alg = FreeAlgebra({"V": dim})
    p = rng.randint(1, BUDGET.get(dim, 2))
    vecs = [rand_array(rng, dim, 0, 1) for _ in range(p)]
    prod = alg.unit()
    for v in vecs:
        prod = tensor_product(prod, alg.embed_vector("V", v))
    coords = alg.to_coeff_array(prod, ["V"] * p)
    x = _rand_free(rng, alg, p)
    y = _rand_free(rng, alg, p)
    sig = ["V"] * p
    same_coords = alg.to_coeff_array(x, sig) == alg.to_coeff_array(y, sig)
    return (_eq("coords of ⊗ vs kron", coords, kron(*vecs))
            or _eq("expansion round trip", alg.from_coeff_array(alg.to_coeff_array(x, sig), sig), x)
            or _eq("injective", same_coords, x == y))


def p_free_noncommutative(rng, cfg):
    alg = _rand_alg(rng)
    a = (rng.choice("UV"), 1)
    b = (rng.choice("UV"), rng.randint(1, 2))
    if b[1] > alg.spaces[b[0]]:
        b = (b[0], 1)
    u, v = alg.basis_word(a), alg.basis_word(b)
    if a == b:
        return _eq("equal letters commute", u * v, v * u)
    if u * v == v * u:
        return f"{a} and {b} commute"
    return None


def _accept_reject(rng, cfg):
    for text in ("s_a t^a", "s_a . t^a", "s_a ∘ t^a", "g_ab u^a v^b"):
        validate(parse(text))
    for text in ("t^a . s_a", "t^a s_a", "t^a ∘ s_a"):
        try:
            parse(text)
        except Exception:
            continue
        return f"{text!r} accepted"
    return None


def p_parser_roundtrip(rng, cfg):
    e = rand_expr(rng)
    text = pretty_print(e)
    back = parse(text)
    return _eq("parse(print(e))", back, e) or _eq("print stable", pretty_print(back), text)


def p_parser_semantics(rng, cfg):
    dim = _pick_dim(rng, cfg, (1, 2, 3))
    e = rand_expr(rng, max_factors=4, budget=3 if dim < 3 else 2)
    env = rand_env(rng, e, dim)
    e = parse(pretty_print(e))
    return _eq(pretty_print(e), evaluate(validate(e, env), env), reference_evaluate(e, env))


def p_lambda_m(rng, cfg):
    dim = _pick_dim(rng, cfg)
    m, n = rand_valence(rng, BUDGET[dim])
    if m == 0:
        m, n = 1, max(0, n - 1)
    t = rand_map(rng, dim, LETTERS[:m], LETTERS[m:m + n])
    args = [rand_array(rng, dim, 0, 1) for _ in range(m)]
    return _eq("apply_multi vs apply(kron)", apply_multi(t, args), apply(t, kron(*args)))


def p_lambda_m_linear(rng, cfg):
    dim = _pick_dim(rng, cfg)
    m = rng.randint(1, BUDGET[dim])
    t = rand_map(rng, dim, LETTERS[:m], LETTERS[m:m + rng.randint(0, BUDGET[dim] - m)])
    args = [rand_array(rng, dim, 0, 1) for _ in range(m)]
    slot = rng.randrange(m)
    k = _rand_scalar(rng)
    scaled = list(args)
    scaled[slot] = k * args[slot]
    return _eq("multilinear", apply_multi(t, scaled), k * apply_multi(t, args))


# ---------------------------------------------------------------- registry

@dataclass(frozen=True)
class Suite:
    name: str
    criterion: int
    title: str
    properties: tuple = field(default=())


SUITES = {s.name: s for s in (
    Suite("lambdaB", 1, "bilateral multiplication agrees with general composition",
          (("compose", p_lambda_b_mul), ("contract", p_lambda_b_contract),
           ("linear", p_lambda_b_linear))),
    Suite("compose", 2, "inner composition is function composition",
          (("function", p_function_composition), ("contract-outer", p_contract_vs_compose),
           ("bilinear", p_compose_bilinear))),
    Suite("assoc", 3, "associativity of composition and bilateral multiplication",
          (("tensormap", p_compose_assoc), ("bilateral", p_bilateral_assoc),
           ("array", p_array_assoc))),
    Suite("metric", 4, "metric raise/lower round trip and g g^-1 = delta",
          (("roundtrip", p_metric_roundtrip), ("inverse", p_metric_inverse))),
    Suite("basis", 5, "change of basis commutes with the operations",
          (("compose", p_basis_compose), ("contract", p_basis_contract), ("apply", p_basis_apply),
           ("reductions", p_basis_reductions), ("invariants", p_basis_invariants))),
    Suite("array", 6, "array algebra: transposes, inverses, bilinearity",
          (("transpose", p_array_transpose_product), ("inverse", p_array_inverse),
           ("bilinear", p_array_bilinear))),
    Suite("freealg", 7, "free algebra laws",
          (("assoc", p_free_assoc), ("unit", p_free_unit), ("bilinear", p_free_bilinear),
           ("expansion", p_free_expansion), ("noncommutative", p_free_noncommutative))),
    Suite("parser", 8, "parser legitimacy, round trip and evaluation",
          (("legitimacy", _accept_reject), ("roundtrip", p_parser_roundtrip),
           ("semantics", p_parser_semantics))),
    Suite("lambdaM", 9, "separately linear evaluation matches apply on kron",
          (("kron", p_lambda_m), ("multilinear", p_lambda_m_linear))),
)}

# properties that are fixed checks rather than random draws
_SINGLE = {_accept_reject}
# the parser round-trip runs on a larger corpus
_MIN_CASES = {p_parser_roundtrip: 200}


def _run_property(suite: str, name: str, fn: Callable, cfg: SuiteConfig) -> PropertyResult:
    cases = 1 if fn in _SINGLE else max(cfg.cases, _MIN_CASES.get(fn, 0))
    rng = random.Random(f"{cfg.seed}:{suite}:{name}")
    res = PropertyResult(suite, name, cases)
    start = time.perf_counter()
    for k in range(cases):
        try:
            err = fn(rng, cfg)
        except Exception as exc:  # a crash counts as a failure of the law
            err = f"{type(exc).__name__}: {exc}"
        if err:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = f"case {k}: {err}"
    res.seconds = time.perf_counter() - start
    return res


def run_suite(name: str, cfg: SuiteConfig = SuiteConfig()) -> list:
    suite = SUITES[name]
    return [_run_property(name, pname, fn, cfg) for pname, fn in suite.properties]


def run_all(cfg: SuiteConfig = SuiteConfig()) -> dict:
    return {name: run_suite(name, cfg) for name in SUITES}
