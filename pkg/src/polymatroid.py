#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/polymatroid.py

"""
Polymatroid Module

Combinatorial sufficient conditions for birationality: the polymatroidal
exchange property, linear quotients in reverse lexicographic order and the
sets of Veronese type.
"""

# Standard library imports
from typing import List, Optional, Sequence, Tuple

# Local imports
from src.config.logging_config import get_logger, get_set_logger
from src.core import (
    Monomial,
    MonomialSet,
    bounded_exponent_vectors,
    log_matrix,
    new_monomial_set,
)
from src.decide import Verdict
from src.exactla import rank
from src.exceptions import EmptyResult, LengthMismatch

# Initialize logger
logger = get_logger(__name__)


def is_polymatroidal(monomial_set: MonomialSet) -> bool:
    """
    Check the exchange property.

    Whenever u_i > v_i for members u, v there must be an index j with
    u_j < v_j such that (x_j / x_i) * x^u is again a member.

    Args:
        monomial_set: Set of monomials of the same degree

    Returns:
        True if the set is polymatroidal
    """
    members = set(monomial_set.vectors())
    for u in members:
        for v in members:
            for i in range(monomial_set.n):
                if u[i] <= v[i]:
                    continue
                exchanged = False
                for j in range(monomial_set.n):
                    if u[j] < v[j]:
                        candidate = tuple(
                            a - (t == i) + (t == j) for t, a in enumerate(u)
                        )
                        if candidate in members:
                            exchanged = True
                            break
                if not exchanged:
                    get_set_logger(__name__, monomial_set).debug(
                        f"No exchange for u={u}, v={v}, i={i + 1}"
                    )
                    return False
    return True


def revlex_sorted(monomial_set: MonomialSet) -> List[Monomial]:
    """
    Members in reverse lexicographic order.

    Exponent vectors are compared from the last variable backwards and the
    smaller entry comes first, so x1*x2 < x1*x3 < x2*x3.
    """
    return sorted(monomial_set.members, key=lambda m: tuple(reversed(m.exponents)))


def _minimal_generators(generators: Sequence[Monomial]) -> List[Monomial]:
    unique = sorted(set(generators))
    return [
        g for g in unique if not any(h != g and h.divides(g) for h in unique)
    ]


def colon_generators(monomial_set: MonomialSet) -> List[Tuple[Monomial, List[Monomial]]]:
    """
    Minimal generators of (x^v_1, ..., x^v_(i-1)) : x^v_i along revlex order.

    Returns:
        One (member, minimal generators) pair per member after the first
    """
    ordered = revlex_sorted(monomial_set)
    colons = []
    for i in range(1, len(ordered)):
        current = ordered[i]
        generators = [ordered[j].lcm(current).quotient(current) for j in range(i)]
        colons.append((current, _minimal_generators(generators)))
    return colons


def has_linear_quotients_revlex(monomial_set: MonomialSet) -> bool:
    """Whether every colon ideal along revlex order is generated by variables."""
    return all(
        all(g.degree == 1 for g in generators)
        for _, generators in colon_generators(monomial_set)
    )


def veronese_type_set(n: int, d: int, bounds: Sequence[int]) -> MonomialSet:
    """
    All monomials of degree d with x_i-exponent at most bounds[i].

    Args:
        n: Number of variables
        d: Degree
        bounds: Upper bounds s_1..s_n

    Returns:
        MonomialSet in descending lexicographic order

    Raises:
        LengthMismatch: If len(bounds) != n
        EmptyResult: If the bounds sum to less than d
    """
    if len(bounds) != n:
        error_msg = f"Expected {n} bounds, got {len(bounds)}"
        logger.error(error_msg)
        raise LengthMismatch(error_msg)
    if sum(bounds) < d:
        error_msg = f"Bounds {list(bounds)} sum to less than the degree {d}"
        logger.error(error_msg)
        raise EmptyResult(error_msg)

    return new_monomial_set(n, list(bounded_exponent_vectors(n, d, bounds)))


def sufficient_polymatroidal(monomial_set: MonomialSet) -> Optional[Verdict]:
    """
    Birational if the set is polymatroidal and its log-matrix has rank n;
    None otherwise (the test is one-sided).
    """
    if rank(log_matrix(monomial_set)) != monomial_set.n:
        return None
    if is_polymatroidal(monomial_set):
        return Verdict.BIRATIONAL
    return None
