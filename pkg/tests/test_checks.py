import random

from tenskit import checks
from tenskit.checks import SuiteConfig, _run_property, rand_composable, rand_expr, rand_metric, run_all
from tenskit.exprlang import parse, pretty_print


def test_every_suite_passes_small():
    results = run_all(SuiteConfig(cases=5, seed=7))
    assert sorted(s.criterion for s in checks.SUITES.values()) == list(range(1, 10))
    assert all(r.passed for rs in results.values() for r in rs)


def test_failures_are_counted():
    res = _run_property("x", "odd", lambda rng, cfg: "bad" if rng.random() < 2 else None, SuiteConfig(cases=4))
    assert (res.cases, res.failures, res.passed) == (4, 4, False)
    assert res.first_failure == "case 0: bad"


def test_crash_is_a_failure():
    res = _run_property("x", "boom", lambda rng, cfg: 1 / 0, SuiteConfig(cases=2))
    assert res.failures == 2 and "ZeroDivisionError" in res.first_failure


def test_same_seed_same_draws():
    a = [pretty_print(rand_expr(random.Random("s"))) for _ in range(5)]
    assert a == [pretty_print(rand_expr(random.Random("s"))) for _ in range(5)]


def test_generators_respect_budget():
    rng = random.Random(1)
    for dim in (1, 2, 3, 4):
        s, t, pairs = rand_composable(rng, dim)
        assert len(s.labels) <= checks.BUDGET[dim] and len(t.labels) <= checks.BUDGET[dim]
        m = rand_metric(rng, dim)
        assert m.g.dim == dim
    parse(pretty_print(rand_expr(rng)))
