#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/termmat.py

"""
Term Matrix Module

Matrices whose entries are single signed monomial terms c * x^a: the formal
Jacobian, the linear syzygy matrix and the Taylor matrix of a monomial set,
their specialization at x_i = 1 and exact symbolic minors of small size.

Minors and ranks of these three families are governed by the integer
matrices they specialize to, which is what term_rank relies on.
"""

# Standard library imports
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

# Third-party imports
import networkx as nx

# Local imports
from src.config.logging_config import get_logger, get_set_logger
from src.config.settings import DEFAULT_MINOR_BOUND
from src.core import IntMatrix, MonomialSet
from src.exactla import rank
from src.exceptions import BadMinorSize, FamilyRequired, TooLarge

# Initialize logger
logger = get_logger(__name__)

JACOBIAN = "jacobian"
LINEAR_SYZYGY = "linear_syzygy"
TAYLOR = "taylor"
FAMILIES = (JACOBIAN, LINEAR_SYZYGY, TAYLOR)


@dataclass(frozen=True, order=True)
class Term:
    """
    A signed monomial term.

    Attributes:
        coeff: Integer coefficient (0 for the zero term)
        exponents: Exponent vector; all zero when coeff is 0
    """

    coeff: int
    exponents: Tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "Term":
        return cls(0, (0,) * n)

    @classmethod
    def make(cls, coeff: int, exponents: Sequence[int]) -> "Term":
        """Build a term, canonicalizing the zero term."""
        if coeff == 0:
            return cls.zero(len(exponents))
        return cls(int(coeff), tuple(int(a) for a in exponents))

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other: "Term") -> "Term":
        return Term.make(
            self.coeff * other.coeff,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def __neg__(self) -> "Term":
        return Term(-self.coeff, self.exponents)

    def to_text(self) -> str:
        """Render as '-2*x1*x3^2' ('0' for the zero term)."""
        if self.is_zero:
            return "0"
        factors = []
        for i, a in enumerate(self.exponents):
            if a == 1:
                factors.append(f"x{i + 1}")
            elif a > 1:
                factors.append(f"x{i + 1}^{a}")
        if not factors:
            return str(self.coeff)
        body = "*".join(factors)
        if self.coeff == 1:
            return body
        if self.coeff == -1:
            return f"-{body}"
        return f"{self.coeff}*{body}"


@dataclass(frozen=True)
class TermMatrix:
    """
    Dense matrix of terms.

    Attributes:
        rows: Number of rows
        cols: Number of columns
        n: Number of variables of every entry
        entries: Row-major tuple of row tuples of Terms
        family: Which monomial construction produced the matrix (None if unknown)
    """

    rows: int
    cols: int
    n: int
    entries: Tuple[Tuple[Term, ...], ...]
    family: Optional[str] = None

    def __getitem__(self, index: Tuple[int, int]) -> Term:
        i, j = index
        return self.entries[i][j]

    def to_strings(self) -> List[List[str]]:
        return [[term.to_text() for term in row] for row in self.entries]


def _from_columns(
    columns: Sequence[Dict[int, Term]], rows: int, n: int, family: str
) -> TermMatrix:
    """Assemble a matrix from sparse columns {row: term}."""
    zero = Term.zero(n)
    entries = tuple(
        tuple(column.get(i, zero) for column in columns) for i in range(rows)
    )
    return TermMatrix(rows=rows, cols=len(columns), n=n, entries=entries, family=family)


def formal_jacobian(monomial_set: MonomialSet) -> TermMatrix:
    """
    Formal Jacobian matrix over the integers.

    Entry (j, i) is a_i * x^(v_j - e_i) where a_i is the i-th exponent of
    the j-th member; coefficients are never reduced modulo a prime.

    Args:
        monomial_set: Set of q monomials in n variables

    Returns:
        q x n TermMatrix tagged as a Jacobian
    """
    n = monomial_set.n
    entries = []
    for vector in monomial_set.vectors():
        row = []
        for i, a in enumerate(vector):
            if a == 0:
                row.append(Term.zero(n))
            else:
                row.append(
                    Term.make(a, tuple(b - 1 if k == i else b for k, b in enumerate(vector)))
                )
        entries.append(tuple(row))
    return TermMatrix(
        rows=monomial_set.q, cols=n, n=n, entries=tuple(entries), family=JACOBIAN
    )


def linear_syzygy_pairs(monomial_set: MonomialSet) -> List[Tuple[int, int, int, int]]:
    """
    Pairs of members related by a linear syzygy x_i * x^v_j = x_k * x^v_l.

    Returns:
        Tuples (j, l, i, k) of 0-based indices with j < l and
        v_j - v_l = e_k - e_i, in lexicographic (j, l) order
    """
    vectors = monomial_set.vectors()
    pairs = []
    for j, l in combinations(range(monomial_set.q), 2):
        diff = [a - b for a, b in zip(vectors[j], vectors[l])]
        plus = [t for t, x in enumerate(diff) if x == 1]
        minus = [t for t, x in enumerate(diff) if x == -1]
        if len(plus) == 1 and len(minus) == 1 and sum(1 for x in diff if x) == 2:
            pairs.append((j, l, minus[0], plus[0]))
    return pairs


def linear_syzygy_matrix(monomial_set: MonomialSet) -> TermMatrix:
    """
    Matrix of linear syzygies LS(F).

    The column of a related pair (j, l) holds x_i at row j and -x_k at row l.

    Args:
        monomial_set: Set of q monomials

    Returns:
        q x r TermMatrix (r may be 0)
    """
    n = monomial_set.n
    columns = []
    for j, l, i, k in linear_syzygy_pairs(monomial_set):
        unit_i = tuple(1 if t == i else 0 for t in range(n))
        unit_k = tuple(1 if t == k else 0 for t in range(n))
        columns.append({j: Term(1, unit_i), l: Term(-1, unit_k)})

    get_set_logger(__name__, monomial_set).debug(f"{len(columns)} linear syzygies")
    return _from_columns(columns, monomial_set.q, n, LINEAR_SYZYGY)


def taylor_matrix(monomial_set: MonomialSet) -> TermMatrix:
    """
    First Taylor syzygy matrix T(F).

    For j < l the column holds lcm/x^v_j at row j and -lcm/x^v_l at row l.

    Args:
        monomial_set: Set of q monomials

    Returns:
        q x C(q, 2) TermMatrix
    """
    members = monomial_set.members
    columns = []
    for j, l in combinations(range(monomial_set.q), 2):
        lcm = members[j].lcm(members[l])
        columns.append(
            {
                j: Term(1, lcm.quotient(members[j]).exponents),
                l: Term(-1, lcm.quotient(members[l]).exponents),
            }
        )
    return _from_columns(columns, monomial_set.q, monomial_set.n, TAYLOR)


def specialize_ones(matrix: TermMatrix) -> IntMatrix:
    """Substitute x_i = 1 everywhere, keeping only the coefficients."""
    return IntMatrix.from_rows(
        [[term.coeff for term in row] for row in matrix.entries], cols=matrix.cols
    )


def term_rank(matrix: TermMatrix) -> int:
    """
    Rank over the field of rational functions.

    For the Jacobian, linear syzygy and Taylor families this equals the rank
    of the specialization at x_i = 1.

    Args:
        matrix: A term matrix built by this module

    Returns:
        Rank

    Raises:
        FamilyRequired: If the matrix carries no known family tag
    """
    if matrix.family not in FAMILIES:
        error_msg = (
            f"term_rank needs a matrix from one of {FAMILIES}, got family {matrix.family!r}"
        )
        logger.error(error_msg)
        raise FamilyRequired(error_msg)
    return rank(specialize_ones(matrix))


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(order)
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        position = start
        while not seen[position]:
            seen[position] = True
            position = order[position]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def term_minor(
    matrix: TermMatrix,
    row_idx: Sequence[int],
    col_idx: Sequence[int],
    bound: Optional[int] = None,
) -> List[Term]:
    """
    Exact symbolic minor by permutation expansion.

    Args:
        matrix: Term matrix
        row_idx: Row indices (0-based)
        col_idx: Column indices (0-based), same count as row_idx
        bound: Largest accepted minor size (settings default if None)

    Returns:
        Nonzero terms of the determinant sorted by exponent vector; an empty
        list means the minor is zero

    Raises:
        TooLarge: If the size exceeds the bound
        BadMinorSize: If the index sets have different sizes
    """
    bound = DEFAULT_MINOR_BOUND if bound is None else bound
    if len(row_idx) != len(col_idx):
        error_msg = f"Row and column index counts differ: {len(row_idx)}, {len(col_idx)}"
        logger.error(error_msg)
        raise BadMinorSize(error_msg)
    size = len(row_idx)
    if size > bound:
        error_msg = f"Symbolic minors are limited to size {bound}, got {size}"
        logger.error(error_msg)
        raise TooLarge(error_msg)

    merged: Dict[Tuple[int, ...], int] = defaultdict(int)
    for order in permutations(range(size)):
        product = Term(_permutation_sign(order), (0,) * matrix.n)
        for r, c in enumerate(order):
            product = product * matrix.entries[row_idx[r]][col_idx[c]]
            if product.is_zero:
                break
        if not product.is_zero:
            merged[product.exponents] += product.coeff

    return [Term(coeff, exps) for exps, coeff in sorted(merged.items()) if coeff]


def difference_matrix_and_digraph(monomial_set: MonomialSet) -> Tuple[IntMatrix, int]:
    """
    Difference matrix M and the component count of its variable digraph.

    Column t of M is v_j - v_l = e_k - e_i for the t-th linear syzygy pair,
    so M = A * S. The digraph has one arc (x_i, x_k) per column; c counts
    its weakly connected components, and rank(M) = n - c.

    Args:
        monomial_set: Set of monomials in n variables

    Returns:
        Tuple of (M as an n x r IntMatrix, c)
    """
    n = monomial_set.n
    pairs = linear_syzygy_pairs(monomial_set)
    columns = [
        tuple((1 if t == k else 0) - (1 if t == i else 0) for t in range(n))
        for _, _, i, k in pairs
    ]

    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(n))
    digraph.add_edges_from((i, k) for _, _, i, k in pairs)
    components = nx.number_weakly_connected_components(digraph)

    return IntMatrix.from_columns(columns, rows=n), components


def jacobian_minor_units(monomial_set: MonomialSet, max_size: int = 3) -> bool:
    """
    Whether every nonzero minor of the formal Jacobian up to max_size has
    coefficient 1 or -1.

    This holds exactly when the log-matrix is totally unimodular (for the
    sizes checked).
    """
    jacobian = formal_jacobian(monomial_set)
    for size in range(1, min(max_size, jacobian.rows, jacobian.cols) + 1):
        for row_idx in combinations(range(jacobian.rows), size):
            for col_idx in combinations(range(jacobian.cols), size):
                terms = term_minor(jacobian, row_idx, col_idx)
                if any(abs(term.coeff) != 1 for term in terms):
                    return False
    return True


@dataclass(frozen=True)
class MinorAudit:
    """
    Result of checking the minors of a Taylor matrix.

    Attributes:
        max_size: Largest minor size examined
        checked: Number of minors examined
        nonzero: Number of nonzero minors
        violations: Index sets of minors that are not a single +-1 term
    """

    max_size: int
    checked: int
    nonzero: int
    violations: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "max_size": self.max_size,
            "checked": self.checked,
            "nonzero": self.nonzero,
            "violations": [
                {"rows": list(rows), "cols": list(cols)} for rows, cols in self.violations
            ],
        }


def taylor_minor_audit(monomial_set: MonomialSet, max_size: int = 3) -> MinorAudit:
    """
    Check that every minor of the Taylor matrix up to max_size is zero or a
    single term with coefficient 1 or -1.

    Args:
        monomial_set: Set of monomials
        max_size: Largest minor size to examine

    Returns:
        MinorAudit
    """
    taylor = taylor_matrix(monomial_set)
    checked = 0
    nonzero = 0
    violations = []
    for size in range(1, min(max_size, taylor.rows, taylor.cols) + 1):
        for row_idx in combinations(range(taylor.rows), size):
            for col_idx in combinations(range(taylor.cols), size):
                terms = term_minor(taylor, row_idx, col_idx)
                checked += 1
                if terms:
                    nonzero += 1
                if len(terms) > 1 or any(abs(term.coeff) != 1 for term in terms):
                    violations.append((row_idx, col_idx))

    if violations:
        get_set_logger(__name__, monomial_set).warning(
            f"{len(violations)} Taylor minors are not a single unit term"
        )
    return MinorAudit(
        max_size=max_size, checked=checked, nonzero=nonzero, violations=tuple(violations)
    )
