import pytest

from src.core import (
    IntMatrix,
    Monomial,
    bounded_exponent_vectors,
    dual_complement,
    extended_log_matrix,
    format_monomial,
    format_monomial_set,
    full_veronese_set,
    is_cohesive,
    log_matrix,
    new_monomial_set,
    normalize,
    reparametrize,
    steiner_set,
    support_components,
)
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
from tests.helpers import make_set, squarefree


# Construction and validation
def test_new_monomial_set_triangle(triangle):
    """Test that the triangle set infers d=2 and q=3."""
    assert triangle.n == 3
    assert triangle.d == 2
    assert triangle.q == 3
    assert triangle.is_normalized


def test_new_monomial_set_pure_squares():
    """Test building two pure squares in two variables."""
    monomial_set = make_set(2, (2, 0), (0, 2))
    assert monomial_set.d == 2
    assert monomial_set.q == 2


@pytest.mark.parametrize(
    "n, vectors, error",
    [
        (3, [(1, 1, 0), (1, 0, 1), (1, 1, 1)], MixedDegrees),
        (2, [(1, 1), (1, 1)], DuplicateMonomial),
        (2, [], EmptySet),
        (3, [(1, 1)], LengthMismatch),
        (2, [(0, 0)], DegenerateResult),
    ],
)
def test_new_monomial_set_errors(n, vectors, error):
    """Test that invalid inputs raise the matching domain error."""
    with pytest.raises(error):
        new_monomial_set(n, vectors)


def test_new_monomial_set_flags_without_normalizing():
    """Test that conic and common-factor sets are accepted and flagged."""
    monomial_set = make_set(3, (2, 1, 0), (2, 0, 1))
    assert monomial_set.has_common_factor
    assert not monomial_set.is_conic
    assert monomial_set.common_factor() == Monomial((2, 0, 0))

    conic = make_set(3, (1, 1, 0), (2, 0, 0))
    assert conic.is_conic
    assert conic.unused_variables() == (2,)


def test_error_codes_match_names():
    """Test that domain errors expose their name as code."""
    with pytest.raises(MixedDegrees) as excinfo:
        make_set(2, (1, 0), (1, 1))
    assert excinfo.value.to_dict()["code"] == "MixedDegrees"


# Normalization
def test_normalize_removes_gcd_and_unused_variable():
    """Test that x1^2x2, x1^2x3 normalizes to x1, x2 of degree 1."""
    normalized = normalize(make_set(3, (2, 1, 0), (2, 0, 1)))
    assert normalized.n == 2
    assert normalized.d == 1
    assert normalized.vectors() == [(1, 0), (0, 1)]


def test_normalize_keeps_normalized_set(triangle):
    """Test that a normalized set is returned unchanged."""
    assert normalize(triangle) == triangle


def test_normalize_single_monomial_is_degenerate():
    """Test that a single monomial normalizes to degree 0."""
    with pytest.raises(DegenerateResult):
        normalize(make_set(2, (2, 0)))


def test_normalize_is_idempotent(random_normalized_sets):
    """Test normalize(normalize(F)) == normalize(F) on conic inputs."""
    for monomial_set in random_normalized_sets(50, seed=11):
        padded = new_monomial_set(
            monomial_set.n + 1,
            [(1,) + vector for vector in monomial_set.vectors()],
        )
        once = normalize(padded)
        assert normalize(once) == once
        assert once.is_normalized


# Matrices
def test_log_matrix_triangle(triangle):
    """Test the log-matrix of the triangle."""
    assert log_matrix(triangle).entries == ((1, 1, 0), (1, 0, 1), (0, 1, 1))


def test_log_matrix_fourth_powers(fourth_powers):
    """Test the log-matrix of x1^4, x1^2x2^2, x2^4."""
    assert log_matrix(fourth_powers).entries == ((4, 2, 0), (0, 2, 4))


def test_log_matrix_single_monomial():
    """Test the column of a single pure power."""
    assert log_matrix(make_set(3, (5, 0, 0))).entries == ((5,), (0,), (0,))


def test_extended_log_matrix(triangle, fourth_powers):
    """Test that the extended matrix appends a row of ones."""
    assert extended_log_matrix(triangle).row(3) == (1, 1, 1)
    assert extended_log_matrix(make_set(1, (4,))).entries == ((4,), (1,))
    assert extended_log_matrix(fourth_powers).entries == ((4, 2, 0), (0, 2, 4), (1, 1, 1))


def test_log_matrix_columns_sum_to_degree(random_normalized_sets):
    """Test that every column of A sums to d."""
    for monomial_set in random_normalized_sets(100, seed=3):
        for column in log_matrix(monomial_set).columns():
            assert sum(column) == monomial_set.d


def test_int_matrix_product_and_transpose():
    """Test exact matrix product and transpose on large entries."""
    big = 2**80
    left = IntMatrix.from_rows([[big, 1], [0, 1]])
    right = IntMatrix.from_rows([[1], [big]])
    assert (left @ right).entries == ((2 * big,), (big,))
    assert left.transpose().entries == ((big, 0), (1, 1))
    assert IntMatrix.from_rows([], cols=3).transpose().shape == (3, 0)


# Dual complement
def test_dual_complement_triangle(triangle):
    """Test that the triangle complement is the three variables."""
    dual = dual_complement(triangle)
    assert dual.d == 1
    assert dual.vectors() == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_dual_complement_steiner(steiner6):
    """Test that the Steiner complement is the set of variables."""
    dual = dual_complement(steiner6)
    assert dual.d == 1
    assert sorted(dual.vectors()) == sorted(
        tuple(1 if i == j else 0 for i in range(6)) for j in range(6)
    )


def test_dual_complement_census_is_pentagon():
    """Test that the DB census set is dual to the pentagon."""
    census = squarefree(5, (3, 4, 5), (1, 4, 5), (1, 2, 5), (1, 2, 3), (2, 3, 4))
    dual = dual_complement(census)
    assert dual.d == 2
    assert {m.support for m in dual.members} == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


def test_dual_complement_is_involution(random_squarefree_square_sets):
    """Test that complementing twice gives the set back."""
    for monomial_set in random_squarefree_square_sets(50):
        assert dual_complement(dual_complement(monomial_set)) == monomial_set


def test_dual_complement_rejects_powers(fourth_powers):
    """Test that non-squarefree sets are rejected."""
    with pytest.raises(NotSquarefree):
        dual_complement(fourth_powers)


# Cohesiveness
def test_is_cohesive(triangle, cubic_example, disjoint_pair):
    """Test cohesiveness on connected and disconnected supports."""
    assert is_cohesive(triangle)
    assert is_cohesive(cubic_example)
    assert not is_cohesive(disjoint_pair)
    assert support_components(disjoint_pair) == [frozenset({0, 1}), frozenset({2, 3})]


# Named sets
def test_steiner_set():
    """Test the Steiner sets for n = 2, 3 and 6."""
    assert steiner_set(2).vectors() == [(1, 0), (0, 1)]
    assert set(steiner_set(3).vectors()) == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}
    six = steiner_set(6)
    assert six.d == 5
    assert six.q == 6
    assert six.vectors()[0] == (1, 1, 1, 1, 1, 0)


def test_steiner_set_needs_two_variables():
    """Test that n = 1 is refused with a domain error."""
    with pytest.raises(PreconditionViolated):
        steiner_set(1)


def test_monomial_rejects_negative_exponents():
    """Test that exponents must be natural numbers."""
    with pytest.raises(PreconditionViolated):
        Monomial((1, -1))


def test_int_matrix_shape_errors():
    """Test ragged entries and mismatched products."""
    with pytest.raises(DimensionMismatch):
        IntMatrix(rows=2, cols=2, entries=((1, 0), (0,)))
    with pytest.raises(DimensionMismatch):
        IntMatrix.identity(2) @ IntMatrix.identity(3)


def test_full_veronese_set_order():
    """Test that the full Veronese set lists x1^d first."""
    veronese = full_veronese_set(3, 2)
    assert veronese.q == 6
    assert veronese.vectors()[0] == (2, 0, 0)
    assert veronese.vectors()[-1] == (0, 0, 2)


def test_bounded_exponent_vectors_respects_bounds():
    """Test the box-bounded enumeration."""
    vectors = list(bounded_exponent_vectors(3, 3, [1, 1, 1]))
    assert vectors == [(1, 1, 1)]
    assert list(bounded_exponent_vectors(2, 3, [1, 1])) == []


def test_reparametrize(fourth_powers, triangle):
    """Test dividing all exponents by their gcd."""
    reduced, g = reparametrize(fourth_powers)
    assert g == 2
    assert reduced.d == 2
    assert reduced.vectors() == [(2, 0), (1, 1), (0, 2)]
    assert reparametrize(triangle) == (triangle, 1)


# Formatting
def test_format_monomial():
    """Test the monomial printer."""
    assert format_monomial(Monomial((1, 2, 0))) == "x1*x2^2"
    assert format_monomial(Monomial((0, 0))) == "1"


def test_format_monomial_set(triangle):
    """Test the set printer."""
    assert format_monomial_set(triangle) == "x1*x2, x1*x3, x2*x3"
