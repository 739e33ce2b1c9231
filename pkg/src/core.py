#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/core.py

"""
Core Module

This module defines monomials, validated monomial sets and dense exact
integer matrices, builds the integer matrices associated with a set of
monomials of the same degree and provides the structural predicates
(conic, common factor, cohesiveness, dual complement).

Variables are numbered x1..xn in text and in the 1-based arguments of the
public operations; exponent vectors are ordinary 0-based tuples.
"""

# Standard library imports
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterator, List, Optional, Sequence, Tuple

# Third-party imports
import numpy as np
from networkx.utils import UnionFind

# Local imports
from src.config.logging_config import get_logger
from src.exceptions import (
    DegenerateResult,
    DimensionMismatch,
    DuplicateMonomial,
    EmptySet,
    LengthMismatch,
    MixedDegrees,
    NotSquarefree,
    PreconditionViolated,
)

# Initialize logger
logger = get_logger(__name__)


@dataclass(frozen=True, order=True)
class Monomial:
    """
    A monomial x^a given by its exponent vector.

    Attributes:
        exponents: Exponent of variable i at position i (0-based)
    """

    exponents: Tuple[int, ...]

    def __post_init__(self) -> None:
        exponents = tuple(int(a) for a in self.exponents)
        if any(a < 0 for a in exponents):
            error_msg = f"Negative exponent in {exponents}"
            logger.error(error_msg)
            raise PreconditionViolated(error_msg)
        object.__setattr__(self, "exponents", exponents)

    @classmethod
    def unit(cls, n: int, i: int) -> "Monomial":
        """Return the variable x_{i+1} (0-based index i) in n variables."""
        exponents = [0] * n
        exponents[i] = 1
        return cls(tuple(exponents))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> Tuple[int, ...]:
        """0-based indices of the variables dividing the monomial."""
        return tuple(i for i, a in enumerate(self.exponents) if a > 0)

    def is_squarefree(self) -> bool:
        return all(a <= 1 for a in self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def quotient(self, other: "Monomial") -> "Monomial":
        """Return self / other; other must divide self."""
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))


@dataclass(frozen=True)
class MonomialSet:
    """
    A finite sequence of distinct monomials of the same degree.

    Attributes:
        n: Number of variables
        d: Common degree
        members: The monomials, in input order
    """

    n: int
    d: int
    members: Tuple[Monomial, ...] = field(default_factory=tuple)

    @property
    def q(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def vectors(self) -> List[Tuple[int, ...]]:
        """Exponent vectors of the members, in order."""
        return [m.exponents for m in self.members]

    def common_factor(self) -> Monomial:
        """The monomial gcd of all members."""
        return Monomial(
            tuple(min(m.exponents[i] for m in self.members) for i in range(self.n))
        )

    def unused_variables(self) -> Tuple[int, ...]:
        """0-based indices of the variables dividing no member."""
        return tuple(
            i for i in range(self.n) if all(m.exponents[i] == 0 for m in self.members)
        )

    @property
    def is_conic(self) -> bool:
        return bool(self.unused_variables())

    @property
    def has_common_factor(self) -> bool:
        return self.common_factor().degree > 0

    @property
    def is_normalized(self) -> bool:
        return not self.is_conic and not self.has_common_factor

    @property
    def is_squarefree(self) -> bool:
        return all(m.is_squarefree() for m in self.members)

    def __contains__(self, monomial: object) -> bool:
        return monomial in self.members


def new_monomial_set(n: int, vectors: Sequence[Sequence[int]]) -> MonomialSet:
    """
    Validate exponent vectors and build a monomial set.

    The degree is inferred from the first vector. Conic sets and sets with a
    common factor are accepted; the flags are available on the result.

    Args:
        n: Number of variables
        vectors: Exponent vectors, each of length n

    Returns:
        MonomialSet

    Raises:
        EmptySet: If no vector is given
        LengthMismatch: If a vector does not have length n
        MixedDegrees: If the degrees differ
        DuplicateMonomial: If a monomial is repeated
        DegenerateResult: If the common degree is 0
    """
    if not vectors:
        error_msg = "A monomial set needs at least one monomial"
        logger.error(error_msg)
        raise EmptySet(error_msg)

    members = []
    seen = set()
    d = None
    for position, vector in enumerate(vectors):
        if len(vector) != n:
            error_msg = (
                f"Monomial {position + 1} has {len(vector)} exponents, expected {n}"
            )
            logger.error(error_msg)
            raise LengthMismatch(error_msg)

        monomial = Monomial(tuple(vector))
        if d is None:
            d = monomial.degree
        elif monomial.degree != d:
            error_msg = (
                f"Monomial {position + 1} has degree {monomial.degree}, expected {d}"
            )
            logger.error(error_msg)
            raise MixedDegrees(error_msg)

        if monomial in seen:
            error_msg = f"Monomial {format_monomial(monomial)} is repeated"
            logger.error(error_msg)
            raise DuplicateMonomial(error_msg)
        seen.add(monomial)
        members.append(monomial)

    if d == 0:
        error_msg = "Monomials of degree 0 do not define a set of forms"
        logger.error(error_msg)
        raise DegenerateResult(error_msg)

    monomial_set = MonomialSet(n=n, d=d, members=tuple(members))
    if monomial_set.is_conic:
        logger.warning(
            f"Set is conic: variables {[i + 1 for i in monomial_set.unused_variables()]} divide no member"
        )
    if monomial_set.has_common_factor:
        logger.warning(
            f"Set has common factor {format_monomial(monomial_set.common_factor())}"
        )
    return monomial_set


def normalize(monomial_set: MonomialSet) -> MonomialSet:
    """
    Remove the common factor and the unused variables.

    Surviving variables keep their relative order.

    Args:
        monomial_set: Set to normalize

    Returns:
        A non-conic set without common factor

    Raises:
        DegenerateResult: If the normalized degree is 0
    """
    gcd = monomial_set.common_factor()
    if gcd.degree == monomial_set.d:
        error_msg = "Normalization leaves degree 0 (the set has a single monomial)"
        logger.error(error_msg)
        raise DegenerateResult(error_msg)

    reduced = [m.quotient(gcd) for m in monomial_set.members]
    kept = [
        i for i in range(monomial_set.n) if any(m.exponents[i] > 0 for m in reduced)
    ]
    vectors = [tuple(m.exponents[i] for i in kept) for m in reduced]

    if gcd.degree or len(kept) != monomial_set.n:
        logger.debug(
            f"Normalized: removed factor {format_monomial(gcd)}, "
            f"n {monomial_set.n} -> {len(kept)}, d {monomial_set.d} -> {monomial_set.d - gcd.degree}"
        )

    return MonomialSet(
        n=len(kept),
        d=monomial_set.d - gcd.degree,
        members=tuple(Monomial(v) for v in vectors),
    )


def reparametrize(monomial_set: MonomialSet) -> Tuple[MonomialSet, int]:
    """
    Divide every exponent by the gcd g of all exponents.

    {x1^4, x1^2x2^2, x2^4} is the set {y1^2, y1y2, y2^2} evaluated at
    y_i = x_i^2, so it reparametrizes with g = 2.

    Args:
        monomial_set: Set to reparametrize

    Returns:
        Tuple of (reparametrized set, g); the set is unchanged when g = 1
    """
    g = reduce(math.gcd, (a for m in monomial_set.members for a in m.exponents), 0)
    if g <= 1:
        return monomial_set, 1

    members = tuple(
        Monomial(tuple(a // g for a in m.exponents)) for m in monomial_set.members
    )
    return MonomialSet(n=monomial_set.n, d=monomial_set.d // g, members=members), g


@dataclass(frozen=True)
class IntMatrix:
    """
    Dense matrix of exact (arbitrary precision) integers.

    Attributes:
        rows: Number of rows
        cols: Number of columns
        entries: Row-major tuple of row tuples
    """

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            error_msg = f"Entries do not match the declared shape {self.rows}x{self.cols}"
            logger.error(error_msg)
            raise DimensionMismatch(error_msg)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build a matrix from row sequences (cols is needed only when there are no rows)."""
        entries = tuple(tuple(int(a) for a in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(rows=len(entries), cols=cols, entries=entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        """Build a matrix with the given column vectors of length rows."""
        entries = tuple(
            tuple(int(column[i]) for column in columns) for i in range(rows)
        )
        return cls(rows=rows, cols=len(columns), entries=entries)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "IntMatrix":
        """Build a matrix from a 2-d numpy array of integers (any integer dtype)."""
        rows, cols = array.shape
        entries = tuple(tuple(int(array[i, j]) for j in range(cols)) for i in range(rows))
        return cls(rows=rows, cols=cols, entries=entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows=rows, cols=cols, entries=tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(size)] for i in range(size)], cols=size
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_array(self) -> np.ndarray:
        """Return a numpy array of dtype object holding Python ints."""
        array = np.empty((self.rows, self.cols), dtype=object)
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                array[i, j] = value
        return array

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self.entries[i][j] for j in col_idx] for i in row_idx], cols=len(col_idx)
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            error_msg = f"Cannot multiply {self.shape} by {other.shape}"
            logger.error(error_msg)
            raise DimensionMismatch(error_msg)
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_array(self.to_array().dot(other.to_array()))

    def to_strings(self) -> List[List[str]]:
        """Row-major decimal strings (safe for JSON at any precision)."""
        return [[str(value) for value in row] for row in self.entries]


def log_matrix(monomial_set: MonomialSet) -> IntMatrix:
    """Return the n x q log-matrix A whose j-th column is v_j."""
    return IntMatrix.from_columns(monomial_set.vectors(), rows=monomial_set.n)


def extended_log_matrix(monomial_set: MonomialSet) -> IntMatrix:
    """Return the (n+1) x q matrix A' (the log-matrix with a row of ones appended)."""
    columns = [vector + (1,) for vector in monomial_set.vectors()]
    return IntMatrix.from_columns(columns, rows=monomial_set.n + 1)


def dual_complement(monomial_set: MonomialSet) -> MonomialSet:
    """
    Return the dual complement: the set whose log-matrix is (1 - a_ij).

    Args:
        monomial_set: A squarefree set

    Returns:
        Squarefree set of degree n - d

    Raises:
        NotSquarefree: If some member has an exponent above 1
        DuplicateMonomial, DegenerateResult: If the complement is not a valid set
    """
    if not monomial_set.is_squarefree:
        error_msg = "The dual complement is defined for squarefree sets only"
        logger.error(error_msg)
        raise NotSquarefree(error_msg)

    vectors = [tuple(1 - a for a in vector) for vector in monomial_set.vectors()]
    return new_monomial_set(monomial_set.n, vectors)


def support_components(monomial_set: MonomialSet) -> List[frozenset]:
    """
    Connected components of the variable co-occurrence graph.

    Two variables are joined when they divide a common member. Components
    are returned as sets of 0-based variable indices, ordered by their
    smallest element.
    """
    components = UnionFind(range(monomial_set.n))
    for monomial in monomial_set.members:
        components.union(*monomial.support)
    return sorted((frozenset(c) for c in components.to_sets()), key=min)


def is_cohesive(monomial_set: MonomialSet) -> bool:
    """
    Whether the set cannot be split into two parts on disjoint variables.

    For d >= 2 a non-cohesive set is never birational.
    """
    return len(support_components(monomial_set)) == 1


def bounded_exponent_vectors(
    n: int, d: int, bounds: Optional[Sequence[int]] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Yield all exponent vectors of degree d with 0 <= a_i <= bounds[i].

    Vectors come in descending lexicographic order (x1^d first).
    """
    if bounds is None:
        bounds = [d] * n

    def _extend(prefix: Tuple[int, ...], remaining: int) -> Iterator[Tuple[int, ...]]:
        i = len(prefix)
        if i == n:
            if remaining == 0:
                yield prefix
            return
        room_after = sum(bounds[i + 1:])
        top = min(bounds[i], remaining)
        for a in range(top, -1, -1):
            if remaining - a <= room_after:
                yield from _extend(prefix + (a,), remaining - a)

    yield from _extend((), d)


def full_veronese_set(n: int, d: int) -> MonomialSet:
    """Return the set x_d of all monomials of degree d in n variables."""
    return new_monomial_set(n, list(bounded_exponent_vectors(n, d)))


def steiner_set(n: int) -> MonomialSet:
    """
    Return the n squarefree monomials of degree n - 1.

    The member omitting x_n comes first and the one omitting x_1 last.
    """
    if n < 2:
        error_msg = f"The Steiner set needs n >= 2, got {n}"
        logger.error(error_msg)
        raise PreconditionViolated(error_msg)
    vectors = [tuple(0 if i == n - 1 - t else 1 for i in range(n)) for t in range(n)]
    return new_monomial_set(n, vectors)


def format_monomial(monomial: Monomial) -> str:
    """Render a monomial as 'x1*x2^2' (degree-0 monomials render as '1')."""
    factors = []
    for i, a in enumerate(monomial.exponents):
        if a == 1:
            factors.append(f"x{i + 1}")
        elif a > 1:
            factors.append(f"x{i + 1}^{a}")
    return "*".join(factors) if factors else "1"


def format_monomial_set(monomial_set: MonomialSet) -> str:
    """Render a set as comma separated monomials, in member order."""
    return ", ".join(format_monomial(m) for m in monomial_set.members)
