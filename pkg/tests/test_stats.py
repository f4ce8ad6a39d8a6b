import itertools
import math
import random

import pytest

from sotea.stats import EXACT_LIMIT, mann_whitney_u, midranks, normal_p


def oracle_u(a, b):
    """Count-based U for sample a: pairs where a > b, ties half."""
    u = 0.0
    for x in a:
        for y in b:
            if x > y:
                u += 1.0
            elif x == y:
                u += 0.5
    return u


def oracle_exact_p(a, b):
    pool = list(a) + list(b)
    n1 = len(a)
    u_obs = oracle_u(a, b)
    hits = total = 0
    for chosen in itertools.combinations(range(len(pool)), n1):
        sel = [pool[i] for i in chosen]
        rest = [pool[i] for i in range(len(pool)) if i not in set(chosen)]
        if oracle_u(sel, rest) <= u_obs + 1e-9:
            hits += 1
        total += 1
    return hits / total


def test_u_statistic_equals_pair_count():
    rng = random.Random(0)
    for _ in range(200):
        a = [rng.randint(0, 8) for _ in range(rng.randint(1, 6))]
        b = [rng.randint(0, 8) for _ in range(rng.randint(1, 6))]
        u, _ = mann_whitney_u(a, b)
        assert u == pytest.approx(oracle_u(a, b))


def test_textbook_example():
    u, p = mann_whitney_u([1, 2], [3, 4])
    assert u == 0.0
    assert p == pytest.approx(1 / 6)


def test_identical_samples_marker():
    _, p = mann_whitney_u([3.0, 1.0, 2.0], [1.0, 2.0, 3.0])
    assert p == 0.5


def test_constant_pool_marker():
    _, p = mann_whitney_u([5.0] * 4, [5.0] * 7)
    assert p == 0.5


def test_large_disjoint_samples():
    a = [float(i) for i in range(30)]
    b = [float(i + 100) for i in range(30)]
    _, p = mann_whitney_u(a, b)
    assert p < 0.0001
    _, p_rev = mann_whitney_u(b, a)
    assert p_rev > 0.9999


def test_exact_path_matches_independent_oracle():
    rng = random.Random(1)
    for _ in range(150):
        n1 = rng.randint(1, 6)
        n2 = rng.randint(1, EXACT_LIMIT - n1)
        a = [rng.randint(0, 5) for _ in range(n1)]
        b = [rng.randint(0, 5) for _ in range(n2)]
        if sorted(a) == sorted(b):
            continue
        _, p = mann_whitney_u(a, b)
        assert p == pytest.approx(oracle_exact_p(a, b))


def test_empty_sample_rejected():
    with pytest.raises(ValueError):
        mann_whitney_u([], [1.0])


def test_midranks_ties():
    assert midranks([10, 20, 20, 30]) == [1.0, 2.5, 2.5, 4.0]
    assert midranks([5, 5, 5]) == [2.0, 2.0, 2.0]


def test_normal_approximation_close_to_exact_for_tie_free_samples():
    # holds for tie-free data once both samples have at least 3 values
    rng = random.Random(2)
    worst = 0.0
    for n1 in range(3, 10):
        for n2 in range(3, EXACT_LIMIT - n1 + 1):
            if n1 + n2 > EXACT_LIMIT:
                continue
            for _ in range(40):
                a = [rng.random() for _ in range(n1)]
                b = [rng.random() for _ in range(n2)]
                p_ex = oracle_exact_p(a, b)
                p_no = normal_p(oracle_u(a, b), n1, n2, midranks(a + b))
                worst = max(worst, abs(p_ex - p_no))
    assert worst <= 0.02


@pytest.mark.xfail(strict=True,
                   reason="the normal approximation cannot track exact "
                          "enumeration within 0.02 for every sample-size "
                          "pair up to 12: with ties or a 1- or 2-element "
                          "sample the measured gap reaches 0.33 (e.g. "
                          "a=[0], b=[1,1,2] gives exact 1.0 vs normal 0.75)")
def test_normal_approximation_universal_bound():
    rng = random.Random(3)
    worst = 0.0
    for n1 in range(1, EXACT_LIMIT):
        for n2 in range(1, EXACT_LIMIT - n1 + 1):
            for trial in range(60):
                if trial % 2:
                    a = [rng.randint(0, 3) for _ in range(n1)]
                    b = [rng.randint(0, 3) for _ in range(n2)]
                else:
                    a = [rng.random() for _ in range(n1)]
                    b = [rng.random() for _ in range(n2)]
                if len(set(a + b)) == 1 or sorted(a) == sorted(b):
                    continue
                p_ex = oracle_exact_p(a, b)
                p_no = normal_p(oracle_u(a, b), n1, n2, midranks(a + b))
                worst = max(worst, abs(p_ex - p_no))
    assert worst <= 0.02


def test_direction_convention():
    # smaller values in the first sample give small p
    _, p_small = mann_whitney_u([1.0, 2.0, 3.0], [10.0, 11.0, 12.0])
    assert p_small < 0.1
    _, p_big = mann_whitney_u([10.0, 11.0, 12.0], [1.0, 2.0, 3.0])
    assert p_big > 0.9
