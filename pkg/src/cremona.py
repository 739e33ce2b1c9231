#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/cremona.py

"""
Cremona Module

Cremona sets are n monomials in n variables, without common factor, that
define a birational self-map of projective (n-1)-space. This module provides
the Cremona predicate, the degree-2 shape characterization, the duality
identity between a squarefree set and its dual complement, the DB
(d-doubly-stochastic) tools and the exhaustive classification of squarefree
Cremona sets up to permutation of variables and monomials.
"""

# Standard library imports
import concurrent.futures
import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

# Third-party imports
from tqdm import tqdm

# Local imports
from src.config.logging_config import get_logger, get_set_logger
from src.config.settings import DEFAULT_ENUMERATION_BOUND, load_settings
from src.core import (
    IntMatrix,
    Monomial,
    MonomialSet,
    bounded_exponent_vectors,
    format_monomial_set,
    is_cohesive,
    log_matrix,
    new_monomial_set,
)
from src.decide import degree2_graph, dpb, require_normalized
from src.exactla import canonical_key, determinant
from src.exceptions import (
    InvariantViolation,
    NotDB,
    NotPermutation,
    NotSquare,
    NotSquarefree,
    PreconditionViolated,
    TooLarge,
)

# Initialize logger
logger = get_logger(__name__)

TAG_DB = "DB"
TAG_COMPLEMENT_VALID = "SquarefreeComplementValid"


class CremonaShape(str, Enum):
    ODD_UNIQUE_CYCLE = "OddUniqueCycle"
    TREE_WITH_LOOP = "TreeWithLoop"
    NOT_CREMONA = "NotCremona"


@dataclass(frozen=True)
class DualityCheck:
    """
    Determinants of A and of its complement 1 - A.

    Attributes:
        det_a: det(A)
        det_a_hat: det(1 - A)
        identity_holds: Whether (n - d) det(A) = (-1)^(n-1) d det(1 - A)
    """

    det_a: int
    det_a_hat: int
    identity_holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "detA": str(self.det_a),
            "detAhat": str(self.det_a_hat),
            "identity_holds": self.identity_holds,
        }


@dataclass(frozen=True)
class CremonaClass:
    """
    A permutation class of squarefree Cremona sets.

    Attributes:
        canonical_matrix: Canonical log-matrix of the class
        representative: Smallest member set found by the enumeration
        n: Number of variables
        d: Degree
        tags: Subset of {"DB", "SquarefreeComplementValid"}
    """

    canonical_matrix: IntMatrix
    representative: MonomialSet
    n: int
    d: int
    tags: FrozenSet[str]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "representative": format_monomial_set(self.representative),
            "canonical_matrix": self.canonical_matrix.to_strings(),
            "tags": sorted(self.tags),
        }


def _require_square(monomial_set: MonomialSet, operation: str) -> None:
    if monomial_set.q != monomial_set.n:
        error_msg = (
            f"{operation} needs as many monomials as variables, "
            f"got q={monomial_set.q}, n={monomial_set.n}"
        )
        logger.error(error_msg)
        raise NotSquare(error_msg)


def is_cremona_set(monomial_set: MonomialSet) -> bool:
    """
    Whether the set is a Cremona set: q = n and birational.

    Raises:
        NotNormalized: If the set is not normalized
    """
    require_normalized(monomial_set, "is_cremona_set")
    if monomial_set.q != monomial_set.n:
        return False
    return dpb(monomial_set).is_birational


def degree2_cremona_shape(monomial_set: MonomialSet) -> CremonaShape:
    """
    Shape of the graph with loops of a square degree-2 set.

    A cohesive square degree-2 set is Cremona exactly when its graph has a
    unique cycle of odd length and no loop, or is a tree with one loop.

    Args:
        monomial_set: Normalized cohesive set with d = 2 and q = n

    Returns:
        CremonaShape

    Raises:
        PreconditionViolated: If a precondition fails
    """
    problems = []
    if monomial_set.d != 2:
        problems.append(f"degree {monomial_set.d} != 2")
    if monomial_set.q != monomial_set.n:
        problems.append(f"q={monomial_set.q} != n={monomial_set.n}")
    if not monomial_set.is_normalized:
        problems.append("not normalized")
    elif not is_cohesive(monomial_set):
        problems.append("not cohesive")
    if problems:
        error_msg = f"degree2_cremona_shape preconditions violated: {', '.join(problems)}"
        logger.error(error_msg)
        raise PreconditionViolated(error_msg)

    graph = degree2_graph(monomial_set)
    edge_count = len(graph.edges)
    if graph.loop_count == 0 and edge_count == monomial_set.n and not graph.bipartite:
        return CremonaShape.ODD_UNIQUE_CYCLE
    if graph.loop_count == 1 and edge_count == monomial_set.n - 1:
        return CremonaShape.TREE_WITH_LOOP
    return CremonaShape.NOT_CREMONA


def complement_matrix(matrix: IntMatrix) -> IntMatrix:
    """Entrywise 1 - a."""
    return IntMatrix.from_rows(
        [[1 - a for a in row] for row in matrix.entries], cols=matrix.cols
    )


def duality_check(monomial_set: MonomialSet) -> DualityCheck:
    """
    Check (n - d) det(A) = (-1)^(n-1) d det(1 - A) for a square squarefree set.

    Args:
        monomial_set: Squarefree set with q = n and 1 <= d <= n - 1

    Returns:
        DualityCheck

    Raises:
        NotSquarefree: If an exponent exceeds 1
        NotSquare: If q != n
        PreconditionViolated: If d is not in 1..n-1
        InvariantViolation: If the identity fails
    """
    if not monomial_set.is_squarefree:
        error_msg = "The duality identity is stated for squarefree sets"
        logger.error(error_msg)
        raise NotSquarefree(error_msg)
    _require_square(monomial_set, "duality_check")
    n, d = monomial_set.n, monomial_set.d
    if not 1 <= d <= n - 1:
        error_msg = f"The duality identity needs 1 <= d <= n - 1, got d={d}, n={n}"
        logger.error(error_msg)
        raise PreconditionViolated(error_msg)

    matrix = log_matrix(monomial_set)
    det_a = determinant(matrix)
    det_a_hat = determinant(complement_matrix(matrix))
    holds = (n - d) * det_a == (-1) ** (n - 1) * d * det_a_hat
    if not holds:
        error_msg = f"Duality identity fails: det(A)={det_a}, det(1-A)={det_a_hat}"
        logger.error(error_msg)
        raise InvariantViolation(error_msg)

    return DualityCheck(det_a=det_a, det_a_hat=det_a_hat, identity_holds=holds)


def row_sums(monomial_set: MonomialSet) -> Tuple[int, ...]:
    """How many times (with multiplicity) each variable occurs in the set."""
    return tuple(sum(column) for column in zip(*monomial_set.vectors()))


def is_doubly_stochastic(monomial_set: MonomialSet) -> bool:
    """
    Whether every row of the square log-matrix sums to d.

    Raises:
        NotSquare: If q != n
    """
    _require_square(monomial_set, "is_doubly_stochastic")
    return all(total == monomial_set.d for total in row_sums(monomial_set))


def db_obstruction(n: int, d: int) -> bool:
    """
    Whether DB Cremona sets with these parameters may exist (gcd(n, d) = 1).

    False certifies that no DB set in n variables of degree d is Cremona.
    """
    return math.gcd(n, d) == 1


def inductive_step(
    monomial_set: MonomialSet, assignment: Sequence[int]
) -> Optional[MonomialSet]:
    """
    Divide the t-th member by x_{i_t}.

    Args:
        monomial_set: Squarefree DB set with q = n
        assignment: Permutation i_1..i_n of the 1-based variable numbers

    Returns:
        The divided set (squarefree DB of degree d - 1), or None when some
        x_{i_t} does not divide the t-th member or two quotients coincide

    Raises:
        NotDB: If the set is not a squarefree DB set
        NotPermutation: If the assignment is not a permutation of 1..n
    """
    n = monomial_set.n
    if (
        monomial_set.q != n
        or not monomial_set.is_squarefree
        or not is_doubly_stochastic(monomial_set)
    ):
        error_msg = "inductive_step needs a squarefree DB set"
        logger.error(error_msg)
        raise NotDB(error_msg)
    if sorted(assignment) != list(range(1, n + 1)):
        error_msg = f"{list(assignment)} is not a permutation of 1..{n}"
        logger.error(error_msg)
        raise NotPermutation(error_msg)

    set_logger = get_set_logger(__name__, monomial_set)
    quotients = []
    for member, variable in zip(monomial_set.members, assignment):
        unit = Monomial.unit(n, variable - 1)
        if not unit.divides(member):
            set_logger.debug(f"x{variable} does not divide the member {len(quotients) + 1}")
            return None
        quotients.append(member.quotient(unit).exponents)

    if monomial_set.d < 2 or len(set(quotients)) != len(quotients):
        set_logger.debug("Quotients are not distinct monomials of positive degree")
        return None
    return new_monomial_set(n, quotients)


def squarefree_vectors(n: int, d: int) -> List[Tuple[int, ...]]:
    """All squarefree exponent vectors of degree d, descending lex order."""
    return list(bounded_exponent_vectors(n, d, [1] * n))


def _vector_mask(vector: Sequence[int]) -> int:
    return sum(1 << i for i, a in enumerate(vector) if a)


def _scan_first_index(
    n: int,
    d: int,
    vectors: List[Tuple[int, ...]],
    first: int,
    db_only: bool,
) -> List[Tuple[Tuple[Tuple[int, ...], ...], Tuple[int, ...]]]:
    """
    Scan every n-subset whose smallest index is first.

    Returns:
        One (canonical key, smallest combination) pair per class found
    """
    masks = [_vector_mask(v) for v in vectors]
    full = (1 << n) - 1
    found: Dict[Tuple[Tuple[int, ...], ...], Tuple[int, ...]] = {}

    for rest in combinations(range(first + 1, len(vectors)), n - 1):
        combo = (first,) + rest
        chosen = [masks[j] for j in combo]
        if reduce(lambda x, y: x | y, chosen) != full:
            continue
        if reduce(lambda x, y: x & y, chosen) != 0:
            continue
        columns = [vectors[j] for j in combo]
        if db_only and any(sum(column[i] for column in columns) != d for i in range(n)):
            continue
        matrix = IntMatrix.from_columns(columns, rows=n)
        if abs(determinant(matrix)) != d:
            continue
        key = canonical_key(matrix)
        if key not in found:
            found[key] = combo
    return list(found.items())


def _class_from_combo(
    n: int,
    d: int,
    vectors: List[Tuple[int, ...]],
    key: Tuple[Tuple[int, ...], ...],
    combo: Tuple[int, ...],
) -> CremonaClass:
    members = tuple(Monomial(vectors[j]) for j in combo)
    representative = MonomialSet(n=n, d=d, members=members)

    tags = set()
    if all(total == d for total in row_sums(representative)):
        tags.add(TAG_DB)
    complements = {tuple(1 - a for a in m.exponents) for m in members}
    complement = MonomialSet(
        n=n, d=n - d, members=tuple(Monomial(v) for v in sorted(complements))
    )
    if len(complements) == n and complement.is_normalized:
        tags.add(TAG_COMPLEMENT_VALID)

    return CremonaClass(
        canonical_matrix=IntMatrix.from_columns(key, rows=n),
        representative=representative,
        n=n,
        d=d,
        tags=frozenset(tags),
    )


def _check_enumeration_size(n: int, bound: Optional[int]) -> None:
    bound = DEFAULT_ENUMERATION_BOUND if bound is None else bound
    if n > bound:
        error_msg = f"Classification is limited to n <= {bound}, got n={n}"
        logger.error(error_msg)
        raise TooLarge(error_msg)


def classify_squarefree_cremona(
    n: int,
    d: int,
    jobs: Optional[int] = None,
    progress: bool = False,
    bound: Optional[int] = None,
    db_only: bool = False,
) -> List[CremonaClass]:
    """
    Classify squarefree Cremona sets of degree d in n variables.

    Every n-subset of the squarefree degree-d monomials is scanned; conic
    subsets and subsets with a common factor are skipped before the
    determinant test |det A| = d, and survivors are grouped by canonical
    log-matrix.

    Args:
        n: Number of variables
        d: Degree, 2 <= d <= n - 1
        jobs: Worker processes (settings default if None; 1 runs inline)
        progress: Whether to show a progress bar on standard error
        bound: Largest accepted n (settings default if None)
        db_only: Keep only DB sets

    Returns:
        Classes sorted by canonical matrix

    Raises:
        TooLarge: If n exceeds the bound
        PreconditionViolated: If d is not in 2..n-1
    """
    _check_enumeration_size(n, bound)
    if not 2 <= d <= n - 1:
        error_msg = f"Classification needs 2 <= d <= n - 1, got n={n}, d={d}"
        logger.error(error_msg)
        raise PreconditionViolated(error_msg)
    if jobs is None:
        jobs = load_settings().jobs

    vectors = squarefree_vectors(n, d)
    first_indices = range(len(vectors) - n + 1)
    logger.info(
        f"Classifying n={n}, d={d}: C({len(vectors)}, {n}) subsets, {jobs} job(s)"
    )

    results: Dict[Tuple[Tuple[int, ...], ...], Tuple[int, ...]] = {}

    def merge(found: List[Tuple[Tuple[Tuple[int, ...], ...], Tuple[int, ...]]]) -> None:
        for key, combo in found:
            if key not in results or combo < results[key]:
                results[key] = combo

    with tqdm(
        total=len(first_indices), desc=f"classify n={n} d={d}", disable=not progress
    ) as bar:
        if jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
                future_to_first = {
                    executor.submit(_scan_first_index, n, d, vectors, first, db_only): first
                    for first in first_indices
                }
                for future in concurrent.futures.as_completed(future_to_first):
                    merge(future.result())
                    bar.update(1)
        else:
            for first in first_indices:
                merge(_scan_first_index(n, d, vectors, first, db_only))
                bar.update(1)

    classes = [
        _class_from_combo(n, d, vectors, key, results[key]) for key in sorted(results)
    ]
    logger.info(f"n={n}, d={d}: {len(classes)} class(es)")
    return classes


def classify_db_squarefree_cremona(
    n: int,
    jobs: Optional[int] = None,
    progress: bool = False,
    prune: bool = True,
    bound: Optional[int] = None,
) -> List[CremonaClass]:
    """
    Classify squarefree DB Cremona sets in n variables over 2 <= d <= n - 1.

    Degrees with gcd(n, d) > 1 are skipped when prune is set, since no DB
    Cremona set exists there.

    Args:
        n: Number of variables
        jobs: Worker processes (settings default if None)
        progress: Whether to show progress bars
        prune: Skip degrees excluded by the gcd obstruction
        bound: Largest accepted n (settings default if None)

    Returns:
        Classes ordered by degree, then canonical matrix

    Raises:
        TooLarge: If n exceeds the bound
    """
    _check_enumeration_size(n, bound)
    classes: List[CremonaClass] = []
    for d in range(2, n):
        if prune and not db_obstruction(n, d):
            logger.info(f"Skipping d={d}: gcd({n}, {d}) = {math.gcd(n, d)}")
            continue
        classes.extend(
            classify_squarefree_cremona(
                n, d, jobs=jobs, progress=progress, bound=bound, db_only=True
            )
        )
    return classes
