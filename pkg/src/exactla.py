#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/exactla.py

"""
Exact Linear Algebra Module

This module provides exact integer linear algebra on IntMatrix values:
Smith and Hermite normal forms, rank and determinant, gcd of minors, lattice
comparison, total unimodularity and a canonical form under row and column
permutations.

Hermite forms, ranks and determinants are computed by sympy DomainMatrix over
ZZ. The Smith form is computed here because its transforms and pivot order
are part of the reported certificates.
"""

# Standard library imports
import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, List, Optional, Sequence, Tuple

# Third-party imports
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form as _sympy_hnf

# Local imports
from src.config.logging_config import get_logger
from src.config.settings import DEFAULT_CANONICAL_BOUND, DEFAULT_TU_BOUND
from src.core import IntMatrix
from src.exceptions import BadMinorSize, DimensionMismatch, NotSquare, TooLarge

# Initialize logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class SmithForm:
    """
    Smith normal form of an integer matrix M.

    Attributes:
        invariant_factors: Positive factors d_1 | d_2 | ... | d_rank
        rank: Number of invariant factors
        left: Unimodular U (rows x rows)
        right: Unimodular V (cols x cols) with U * M * V diagonal
    """

    invariant_factors: Tuple[int, ...]
    rank: int
    left: IntMatrix
    right: IntMatrix

    def diagonal(self, rows: int, cols: int) -> IntMatrix:
        """Embed the invariant factors in a rows x cols zero matrix."""
        return IntMatrix.from_rows(
            [
                [
                    self.invariant_factors[i] if i == j and i < self.rank else 0
                    for j in range(cols)
                ]
                for i in range(rows)
            ],
            cols=cols,
        )

    @property
    def is_torsion_free(self) -> bool:
        """Whether the cokernel has no torsion (every factor is 1)."""
        return all(factor == 1 for factor in self.invariant_factors)


@dataclass(frozen=True)
class HermiteForm:
    """
    Column Hermite normal form.

    Attributes:
        basis: rows x rank upper echelon matrix spanning the column lattice
        rank: Number of basis columns
        pivot_rows: Row index of the pivot (lowest nonzero entry) of each basis column
    """

    basis: IntMatrix
    rank: int
    pivot_rows: Tuple[int, ...]


def _copy_rows(matrix: IntMatrix) -> List[List[int]]:
    return [list(row) for row in matrix.entries]


def _identity_rows(size: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def smith_normal_form(matrix: IntMatrix) -> SmithForm:
    """
    Compute the Smith normal form with its unimodular transforms.

    The pivot at each stage is the nonzero entry of smallest absolute value
    in the remaining submatrix; ties go to the smallest (row, col).

    Args:
        matrix: Integer matrix M

    Returns:
        SmithForm with U * M * V equal to the diagonal of invariant factors
    """
    a = _copy_rows(matrix)
    rows, cols = matrix.rows, matrix.cols
    left = _identity_rows(rows)
    right = _identity_rows(cols)

    def swap_rows(i: int, k: int) -> None:
        if i != k:
            a[i], a[k] = a[k], a[i]
            left[i], left[k] = left[k], left[i]

    def swap_cols(j: int, k: int) -> None:
        if j != k:
            for row in a:
                row[j], row[k] = row[k], row[j]
            for row in right:
                row[j], row[k] = row[k], row[j]

    def add_row(target: int, source: int, factor: int) -> None:
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        left[target] = [x + factor * y for x, y in zip(left[target], left[source])]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in a:
            row[target] += factor * row[source]
        for row in right:
            row[target] += factor * row[source]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))

            # Smallest leftover in row t or column t becomes the new pivot
            leftovers = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            leftovers += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            if leftovers:
                _, i, j = min(leftovers)
                if abs(a[i][j]) < abs(a[t][t]):
                    swap_rows(t, i)
                    swap_cols(t, j)
                continue

            blocker = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i][j] % a[t][t]
                ),
                None,
            )
            if blocker is None:
                break
            add_row(t, blocker, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    factors = tuple(a[i][i] for i in range(t))
    logger.debug(f"Smith form of {rows}x{cols} matrix: factors {factors}")
    return SmithForm(
        invariant_factors=factors,
        rank=t,
        left=IntMatrix.from_rows(left, cols=rows),
        right=IntMatrix.from_rows(right, cols=cols),
    )


def _to_domain(matrix: IntMatrix) -> DomainMatrix:
    return DomainMatrix(
        [[ZZ(a) for a in row] for row in matrix.entries], matrix.shape, ZZ
    )


def _from_domain(domain_matrix: DomainMatrix) -> IntMatrix:
    return IntMatrix.from_rows(
        [[int(a) for a in row] for row in domain_matrix.to_list()],
        cols=domain_matrix.shape[1],
    )


def hermite_normal_form(matrix: IntMatrix) -> HermiteForm:
    """
    Compute the column Hermite normal form.

    The basis is upper echelon: the lowest nonzero entry of each column is a
    positive pivot, pivot rows increase from left to right, and every entry to
    the right of a pivot lies in [0, pivot). Two matrices with the same row
    count generate the same column lattice iff their bases are identical.

    Args:
        matrix: Integer matrix M

    Returns:
        HermiteForm
    """
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return HermiteForm(basis=IntMatrix.zeros(rows, 0), rank=0, pivot_rows=())

    basis = _from_domain(_sympy_hnf(_to_domain(matrix)))
    pivot_rows = tuple(
        max(i for i, value in enumerate(basis.column(k)) if value)
        for k in range(basis.cols)
    )
    return HermiteForm(basis=basis, rank=basis.cols, pivot_rows=pivot_rows)


def rank(matrix: IntMatrix) -> int:
    """
    Rank over the rationals.

    Args:
        matrix: Integer matrix

    Returns:
        Rank of the matrix
    """
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return int(_to_domain(matrix).rank())


def determinant(matrix: IntMatrix) -> int:
    """
    Exact determinant over ZZ.

    Args:
        matrix: Square integer matrix

    Returns:
        Determinant (1 for the empty matrix)

    Raises:
        NotSquare: If the matrix is not square
    """
    if matrix.rows != matrix.cols:
        error_msg = f"Determinant of a non-square {matrix.rows}x{matrix.cols} matrix"
        logger.error(error_msg)
        raise NotSquare(error_msg)

    if matrix.rows == 0:
        return 1
    return int(_to_domain(matrix).det())


def iter_minors(matrix: IntMatrix, r: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], int]]:
    """
    Enumerate every r x r minor.

    Args:
        matrix: Integer matrix
        r: Minor size, 1 <= r <= min(rows, cols)

    Yields:
        Tuples (row indices, column indices, minor value)

    Raises:
        BadMinorSize: If r is out of range
    """
    if r < 1 or r > min(matrix.rows, matrix.cols):
        error_msg = f"Minor size {r} is invalid for a {matrix.rows}x{matrix.cols} matrix"
        logger.error(error_msg)
        raise BadMinorSize(error_msg)

    for row_idx in combinations(range(matrix.rows), r):
        for col_idx in combinations(range(matrix.cols), r):
            yield row_idx, col_idx, determinant(matrix.submatrix(row_idx, col_idx))


def minor_gcd(matrix: IntMatrix, r: int) -> int:
    """
    Gcd of all r x r minors (Delta_r), read off the Smith normal form.

    Args:
        matrix: Integer matrix
        r: Minor size, 0 <= r <= min(rows, cols)

    Returns:
        Delta_r, or 0 when every r x r minor vanishes

    Raises:
        BadMinorSize: If r is out of range
    """
    if r < 0 or r > min(matrix.rows, matrix.cols):
        error_msg = f"Minor size {r} is invalid for a {matrix.rows}x{matrix.cols} matrix"
        logger.error(error_msg)
        raise BadMinorSize(error_msg)

    smith = smith_normal_form(matrix)
    if r > smith.rank:
        return 0
    return math.prod(smith.invariant_factors[:r])


def _check_same_rows(first: IntMatrix, second: int) -> None:
    if first.rows != second:
        error_msg = f"Row counts differ: {first.rows} and {second}"
        logger.error(error_msg)
        raise DimensionMismatch(error_msg)


def lattice_equal(first: IntMatrix, second: IntMatrix) -> bool:
    """
    Whether two matrices generate the same column lattice.

    Raises:
        DimensionMismatch: If the row counts differ
    """
    _check_same_rows(first, second.rows)
    return hermite_normal_form(first).basis == hermite_normal_form(second).basis


def lattice_contains(matrix: IntMatrix, vector: Sequence[int]) -> bool:
    """
    Whether a vector is an integer combination of the columns.

    Args:
        matrix: Generators as columns
        vector: Integer vector of length rows

    Returns:
        True if the vector lies in the column lattice

    Raises:
        DimensionMismatch: If the vector length differs from the row count
    """
    _check_same_rows(matrix, len(vector))

    hermite = hermite_normal_form(matrix)
    residual = [int(x) for x in vector]
    for k in reversed(range(hermite.rank)):
        pivot_row = hermite.pivot_rows[k]
        column = hermite.basis.column(k)
        quotient, remainder = divmod(residual[pivot_row], column[pivot_row])
        if remainder:
            return False
        residual = [x - quotient * y for x, y in zip(residual, column)]
    return not any(residual)


def is_totally_unimodular(matrix: IntMatrix, bound: Optional[int] = None) -> bool:
    """
    Whether every square minor is 0, 1 or -1 (exhaustive check).

    Args:
        matrix: Integer matrix
        bound: Largest accepted min(rows, cols) (settings default if None)

    Returns:
        True if the matrix is totally unimodular

    Raises:
        TooLarge: If min(rows, cols) exceeds the bound
    """
    bound = DEFAULT_TU_BOUND if bound is None else bound
    size = min(matrix.rows, matrix.cols)
    if size > bound:
        error_msg = f"Total unimodularity check limited to size {bound}, got {size}"
        logger.error(error_msg)
        raise TooLarge(error_msg)

    if any(abs(x) > 1 for row in matrix.entries for x in row):
        return False
    for r in range(2, size + 1):
        for row_idx, col_idx, value in iter_minors(matrix, r):
            if abs(value) > 1:
                logger.debug(f"Minor {value} on rows {row_idx}, cols {col_idx}")
                return False
    return True


def canonical_rowcol_form(matrix: IntMatrix, bound: Optional[int] = None) -> IntMatrix:
    """
    Least matrix under row permutations followed by column sorting.

    Every row permutation is tried; for each, the columns are sorted in
    descending lexicographic order, and the smallest resulting tuple of
    columns wins. The identity matrix is its own canonical form.

    Args:
        matrix: Integer matrix
        bound: Largest accepted row count (settings default if None)

    Returns:
        The canonical representative of the permutation class

    Raises:
        TooLarge: If the row count exceeds the bound
    """
    bound = DEFAULT_CANONICAL_BOUND if bound is None else bound
    if matrix.rows > bound:
        error_msg = f"Canonical form limited to {bound} rows, got {matrix.rows}"
        logger.error(error_msg)
        raise TooLarge(error_msg)

    columns = matrix.columns()
    best = min(
        tuple(
            sorted((tuple(column[i] for i in order) for column in columns), reverse=True)
        )
        for order in permutations(range(matrix.rows))
    )
    return IntMatrix.from_columns(best, rows=matrix.rows)


def canonical_key(matrix: IntMatrix, bound: Optional[int] = None) -> Tuple[Tuple[int, ...], ...]:
    """Column tuple of canonical_rowcol_form, used as a hashable class key."""
    return tuple(canonical_rowcol_form(matrix, bound).columns())

