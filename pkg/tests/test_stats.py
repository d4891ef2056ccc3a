import math
import random

import pytest

from cafeval.stats import (
    CorrelationResult,
    pearson,
    regularized_incomplete_beta,
    student_t_two_sided_p,
)

scipy_stats = pytest.importorskip("scipy.stats")


def brute_force_r(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    return sxy / math.sqrt(sxx * syy)


def test_perfect_correlation():
    assert pearson([1, 2, 3], [1, 2, 3]).r == 1.0


def test_hand_example_is_exact_half():
    assert pearson([1, 2, 3], [2, 1, 3]).r == 0.5


def test_linear_transforms_hit_plus_minus_one():
    rng = random.Random(3)
    for _ in range(30):
        xs = [rng.uniform(-5, 5) for _ in range(rng.randint(3, 20))]
        if len(set(xs)) < 2:
            continue
        a = rng.uniform(0.1, 4)
        b = rng.uniform(-3, 3)
        up = pearson(xs, [a * x + b for x in xs])
        down = pearson(xs, [-a * x + b for x in xs])
        assert abs(up.r - 1.0) <= 1e-12
        assert abs(down.r + 1.0) <= 1e-12


def test_r_matches_brute_force_random():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(5, 50)
        xs = [rng.gauss(0, 3) for _ in range(n)]
        ys = [rng.gauss(0, 3) for _ in range(n)]
        got = pearson(xs, ys)
        assert math.isclose(got.r, brute_force_r(xs, ys), abs_tol=1e-9)
        assert got.n == n


def test_r_and_p_match_scipy():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(4, 40)
        xs = [rng.gauss(0, 1) for _ in range(n)]
        ys = [0.4 * x + rng.gauss(0, 1) for x in xs]
        got = pearson(xs, ys)
        want = scipy_stats.pearsonr(xs, ys)
        assert math.isclose(got.r, want.statistic, abs_tol=1e-10)
        assert math.isclose(got.p, want.pvalue, abs_tol=1e-8)


def test_p_one_for_zero_r():
    # antisymmetric data: r = 0 exactly, so the two-sided p must be 1
    got = pearson([-1, 0, 1, 2, -2], [1, 0, 1, 4, 4])
    assert math.isclose(got.p, 1.0, abs_tol=1e-12)


def test_short_inputs_rejected():
    with pytest.raises(ValueError):
        pearson([1, 2], [3, 4])


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        pearson([1, 2, 3], [1, 2])


def test_zero_variance_rejected():
    with pytest.raises(ValueError, match="variance"):
        pearson([1, 1, 1], [1, 2, 3])
    with pytest.raises(ValueError, match="variance"):
        pearson([1, 2, 3], [5, 5, 5])


def test_result_validation():
    with pytest.raises(ValueError):
        CorrelationResult(r=1.5, p=0.5, n=3)
    with pytest.raises(ValueError):
        CorrelationResult(r=0.5, p=-0.1, n=3)


def test_incomplete_beta_against_scipy():
    special = pytest.importorskip("scipy.special")
    rng = random.Random(13)
    for _ in range(200):
        a = rng.uniform(0.5, 30)
        b = rng.uniform(0.5, 30)
        x = rng.random()
        assert math.isclose(
            regularized_incomplete_beta(a, b, x), special.betainc(a, b, x), abs_tol=1e-10
        )


def test_incomplete_beta_bounds():
    assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
    assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0


def test_student_t_p_against_scipy():
    rng = random.Random(17)
    for _ in range(100):
        t = rng.uniform(-6, 6)
        df = rng.randint(1, 60)
        want = 2.0 * scipy_stats.t.sf(abs(t), df)
        assert math.isclose(student_t_two_sided_p(t, df), want, abs_tol=1e-10)


def test_student_t_p_at_zero_is_one():
    assert student_t_two_sided_p(0.0, 5) == 1.0
