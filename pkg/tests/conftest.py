import numpy as np
import pytest

from densitylab.intset import IntegerSetSpec


@pytest.fixture(scope="session")
def canonical_specs():
    return {
        "full": IntegerSetSpec.full(),
        "even": IntegerSetSpec.even(),
        "squarefree": IntegerSetSpec.squarefree(),
        "primes": IntegerSetSpec.primes(),
        "example2": IntegerSetSpec.example2(2, 4),
    }


@pytest.fixture()
def rng():
    return np.random.RandomState(987654321)


def random_explicit(rng, hi, p):
    els = np.flatnonzero(rng.random(hi) < p) + 1
    return IntegerSetSpec("explicit", elements=tuple(els.tolist()))


def random_big_intervals(rng, n_window, count, a_min=10**3, separated=False):
    """Random interval set with all ratios b/a in [2.6, 60], optionally with
    a_{i+1} > 2*b_i, fitting inside [a_min, n_window]."""
    import math

    from densitylab.intset import IntervalSet

    comps = []
    a = a_min * int(rng.randint(1, 50))
    for _ in range(count):
        ratio = 2.6 + 57.4 * rng.random()
        b = int(a * ratio)
        if b > n_window:
            break
        comps.append((a, b))
        jump = 2.2 + 8.0 * rng.random() if separated else 1.3 + 4.0 * rng.random()
        a = int(b * jump) + 1
    return IntervalSet(tuple(comps))


def tiled_big_intervals(rng, n_window, count=5, gap_max=1.002):
    """Random big intervals that tile [a_1, ~N] with tiny multiplicative
    gaps; the only uncovered log-mass is the gaps plus the region above the
    top component (which ends within a factor 1+1e-6 of N)."""
    import math

    from densitylab.intset import IntervalSet

    a1 = int(rng.randint(10**3, 10**4))
    top = n_window - int(rng.randint(0, max(2, n_window // 10**7)))
    gaps = 1.0 + rng.random(count - 1) * (gap_max - 1.0)
    span = math.log(top) - math.log(a1) - float(np.sum(np.log(gaps)))
    parts = rng.dirichlet(np.ones(count)) * (span - count * 1.05) + 1.05
    comps = []
    a = a1
    for i in range(count):
        b = int(round(a * math.exp(parts[i]))) if i < count - 1 else top
        comps.append((a, b))
        if i < count - 1:
            a = int(round(b * gaps[i]))
            if a <= b + 1:
                a = b + 2
    return IntervalSet(tuple(comps))
