import json
import os

import numpy as np
import pytest

from src.core import bounded_exponent_vectors, new_monomial_set, normalize, steiner_set
from tests.helpers import edge_set, make_set, squarefree

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def _random_normalized(rng, max_n, max_d, max_q, degree=None):
    while True:
        n = int(rng.integers(2, max_n + 1))
        d = degree if degree is not None else int(rng.integers(1, max_d + 1))
        pool = list(bounded_exponent_vectors(n, d))
        q_top = min(max_q, len(pool))
        if q_top < 2:
            continue
        q = int(rng.integers(2, q_top + 1))
        picks = rng.choice(len(pool), size=q, replace=False)
        return normalize(new_monomial_set(n, [pool[i] for i in picks]))


@pytest.fixture
def random_normalized_sets():
    """Factory for seeded pseudo-random normalized sets."""

    def factory(count, seed=2024, max_n=6, max_d=4, max_q=8, degree=None):
        rng = np.random.default_rng(seed)
        return [
            _random_normalized(rng, max_n, max_d, max_q, degree) for _ in range(count)
        ]

    return factory


@pytest.fixture
def random_squarefree_square_sets():
    """Factory for seeded random squarefree sets with q = n (not necessarily normalized)."""

    def factory(count, seed=7, max_n=6):
        rng = np.random.default_rng(seed)
        sets = []
        while len(sets) < count:
            n = int(rng.integers(2, max_n + 1))
            d = int(rng.integers(1, n))
            pool = list(bounded_exponent_vectors(n, d, [1] * n))
            if len(pool) < n:
                continue
            picks = rng.choice(len(pool), size=n, replace=False)
            sets.append(new_monomial_set(n, [pool[i] for i in picks]))
        return sets

    return factory


@pytest.fixture
def triangle():
    """x1x2, x1x3, x2x3."""
    return squarefree(3, (1, 2), (1, 3), (2, 3))


@pytest.fixture
def fourth_powers():
    """x1^4, x1^2x2^2, x2^4: a reparametrized 2-Veronese."""
    return make_set(2, (4, 0), (2, 2), (0, 4))


@pytest.fixture
def cubic_example():
    """x1^3, x1^2x2, x2x3^2: cohesive of maximal rank, not birational."""
    return make_set(3, (3, 0, 0), (2, 1, 0), (0, 1, 2))


@pytest.fixture
def disjoint_pair():
    """x1x2, x3x4."""
    return squarefree(4, (1, 2), (3, 4))


@pytest.fixture
def four_cycle():
    return edge_set(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


@pytest.fixture
def tree_with_loop():
    """x1x2, x1x3, x3^2."""
    return make_set(3, (1, 1, 0), (1, 0, 1), (0, 0, 2))


@pytest.fixture
def steiner6():
    return steiner_set(6)


@pytest.fixture
def golden():
    """Worked examples with their expected facts."""
    with open(os.path.join(DATA_DIR, "golden_examples.json"), encoding="utf-8") as handle:
        return json.load(handle)
