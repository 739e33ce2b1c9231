"""Small builders for monomial sets used across the tests."""

from src.core import new_monomial_set


def make_set(n, *vectors):
    """Build a set from exponent vectors given inline."""
    return new_monomial_set(n, list(vectors))


def squarefree(n, *supports):
    """Build a squarefree set from 1-based variable supports, e.g. (1, 2), (2, 3)."""
    return new_monomial_set(
        n, [tuple(1 if i + 1 in support else 0 for i in range(n)) for support in supports]
    )


def edge_set(n, edges, loops=()):
    """Degree-2 set of a graph: x_i*x_k per edge, x_i^2 per loop (1-based)."""
    vectors = [tuple(1 if t + 1 in edge else 0 for t in range(n)) for edge in edges]
    vectors += [tuple(2 if t + 1 == v else 0 for t in range(n)) for v in loops]
    return new_monomial_set(n, vectors)
