import random
from fractions import Fraction

import pytest

from setavg.intervals import IntervalSet, canonicalize


def random_interval_set(rng: random.Random, span: int = 10, den: int = 4,
                        max_intervals: int = 3) -> IntervalSet:
    """Random canonical interval set with small rational endpoints."""
    k = rng.randint(1, max_intervals)
    points = sorted(rng.sample([Fraction(i, den) for i in range(span * den + 1)], 2 * k))
    return canonicalize([(points[2 * i], points[2 * i + 1]) for i in range(k)])


def random_weights(rng: random.Random, n: int) -> list[Fraction]:
    raw = [Fraction(rng.randint(1, 9)) for _ in range(n)]
    total = sum(raw)
    return [x / total for x in raw]


@pytest.fixture
def rng():
    return random.Random(0)
