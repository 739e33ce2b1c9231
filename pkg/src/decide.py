#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/decide.py

"""
Decision Module

This module implements the birationality criteria for a set F of monomials
of the same degree d in n variables and the orchestrating decide()
procedure. Every verdict comes with the certificates needed to replay it.

The determinantal criterion (Delta_n(A) = d) is the reference decision;
the torsion, syzygy, difference-matrix and graph criteria either agree with
it or are one-sided sufficient conditions.
"""

# Standard library imports
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

# Third-party imports
import networkx as nx

# Local imports
from src.config.logging_config import get_logger, get_set_logger
from src.config.settings import Settings, load_settings
from src.core import (
    IntMatrix,
    MonomialSet,
    extended_log_matrix,
    format_monomial,
    is_cohesive,
    log_matrix,
    new_monomial_set,
    normalize,
    reparametrize,
    support_components,
)
from src.exactla import lattice_equal, minor_gcd, rank, smith_normal_form
from src.exceptions import (
    CollapseCollision,
    InvariantViolation,
    NotAnEdge,
    NotNormalized,
    NotSubset,
    TooFewMonomials,
    WrongDegree,
)
from src.termmat import difference_matrix_and_digraph, linear_syzygy_matrix, term_rank

# Initialize logger
logger = get_logger(__name__)


class Verdict(str, Enum):
    BIRATIONAL = "Birational"
    NOT_BIRATIONAL = "NotBirational"


class Criterion(str, Enum):
    DPB = "DPB"
    TORSION = "Torsion"
    EXTENDED_TORSION = "ExtendedTorsion"
    RANK_M = "RankM"
    SYZYGY_RANK = "SyzygyRank"
    DEGREE2_GRAPH = "Degree2Graph"
    COHESION = "Cohesion"


@dataclass(frozen=True)
class Certificates:
    """
    Facts supporting a verdict; fields not used by a criterion stay None.

    Attributes:
        delta_n: Gcd of the maximal minors of A (0 if rank(A) < n)
        expected_delta: The degree d that delta_n is compared with
        rank_a: Rank of the log-matrix
        exponent_gcd: Gcd of all exponents (> 1 means a reparametrization)
        invariant_factors: Smith factors of the difference matrix
        extended_invariant_factors: Smith factors of the extended matrix A'
        difference_lattice_standard: Whether the differences span Z{e_1 - e_k}
        rank_ls: Rank of the linear syzygy matrix
        rank_m: Rank of the difference matrix M
        components: Components of the variable digraph (or of the support graph)
        cohesive: Whether the set is cohesive
        connected: Whether the degree-2 graph is connected
        bipartite: Whether the degree-2 graph without loops is bipartite
        loops: Number of loops (squares) of the degree-2 graph
    """

    delta_n: Optional[int] = None
    expected_delta: Optional[int] = None
    rank_a: Optional[int] = None
    exponent_gcd: Optional[int] = None
    invariant_factors: Optional[Tuple[int, ...]] = None
    extended_invariant_factors: Optional[Tuple[int, ...]] = None
    difference_lattice_standard: Optional[bool] = None
    rank_ls: Optional[int] = None
    rank_m: Optional[int] = None
    components: Optional[int] = None
    cohesive: Optional[bool] = None
    connected: Optional[bool] = None
    bipartite: Optional[bool] = None
    loops: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        payload = {}
        for key, value in asdict(self).items():
            if value is None:
                continue
            payload[key] = list(value) if isinstance(value, tuple) else value
        return payload


@dataclass(frozen=True)
class BirationalityReport:
    """
    Verdict of a criterion together with its certificates.

    Attributes:
        verdict: Birational or NotBirational
        criterion: The criterion that produced the verdict
        certificates: Supporting facts
        n, d, q: Shape of the set that was decided
        normalized: Whether decide() had to normalize the input first
    """

    verdict: Verdict
    criterion: Criterion
    certificates: Certificates
    n: int
    d: int
    q: int
    normalized: bool = False

    @property
    def is_birational(self) -> bool:
        return self.verdict is Verdict.BIRATIONAL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "criterion": self.criterion.value,
            "certificates": self.certificates.to_dict(),
            "n": self.n,
            "d": self.d,
            "q": self.q,
            "normalized": self.normalized,
        }


def _report(
    monomial_set: MonomialSet,
    birational: bool,
    criterion: Criterion,
    certificates: Certificates,
) -> BirationalityReport:
    verdict = Verdict.BIRATIONAL if birational else Verdict.NOT_BIRATIONAL
    return BirationalityReport(
        verdict=verdict,
        criterion=criterion,
        certificates=certificates,
        n=monomial_set.n,
        d=monomial_set.d,
        q=monomial_set.q,
    )


def require_normalized(monomial_set: MonomialSet, operation: str) -> None:
    """
    Raise NotNormalized unless the set is non-conic and gcd-free.

    Args:
        monomial_set: Set to check
        operation: Name of the calling operation, for the message
    """
    if not monomial_set.is_normalized:
        error_msg = (
            f"{operation} needs a normalized set "
            f"(conic: {monomial_set.is_conic}, common factor: "
            f"{format_monomial(monomial_set.common_factor())})"
        )
        logger.error(error_msg)
        raise NotNormalized(error_msg)


def _require_degree_two(monomial_set: MonomialSet, operation: str) -> None:
    if monomial_set.d != 2:
        error_msg = f"{operation} needs degree 2, got degree {monomial_set.d}"
        logger.error(error_msg)
        raise WrongDegree(error_msg)


def dpb(monomial_set: MonomialSet) -> BirationalityReport:
    """
    Determinantal criterion: birational iff rank(A) = n and Delta_n(A) = d.

    Args:
        monomial_set: Normalized set

    Returns:
        BirationalityReport with delta_n, rank_a and exponent_gcd certificates

    Raises:
        NotNormalized: If the set is not normalized
    """
    require_normalized(monomial_set, "dpb")
    matrix = log_matrix(monomial_set)
    rank_a = rank(matrix)
    delta = minor_gcd(matrix, monomial_set.n) if rank_a == monomial_set.n else 0
    _, exponent_gcd = reparametrize(monomial_set)

    birational = delta == monomial_set.d
    get_set_logger(__name__, monomial_set).debug(
        f"DPB: rank(A)={rank_a}, Delta_n={delta}, birational={birational}"
    )
    return _report(
        monomial_set,
        birational,
        Criterion.DPB,
        Certificates(
            delta_n=delta,
            expected_delta=monomial_set.d,
            rank_a=rank_a,
            exponent_gcd=exponent_gcd,
        ),
    )


def apb(first: MonomialSet, second: MonomialSet) -> bool:
    """
    Lattice criterion for F contained in G: k[F] in k[G] is birational iff
    the log-matrices of F and G span the same lattice.

    Args:
        first: The set F
        second: The set G containing every member of F

    Returns:
        True if the extension is birational

    Raises:
        NotSubset: If some member of F is not in G
        DimensionMismatch: If the variable counts differ
    """
    missing = [m for m in first.members if m not in second.members]
    if missing:
        error_msg = f"{format_monomial(missing[0])} is not a member of the larger set"
        logger.error(error_msg)
        raise NotSubset(error_msg)
    return lattice_equal(log_matrix(first), log_matrix(second))


def difference_matrix(monomial_set: MonomialSet) -> IntMatrix:
    """The n x (q-1) matrix with columns v_1 - v_j for j = 2..q."""
    vectors = monomial_set.vectors()
    first = vectors[0]
    columns = [tuple(a - b for a, b in zip(first, v)) for v in vectors[1:]]
    return IntMatrix.from_columns(columns, rows=monomial_set.n)


def standard_difference_matrix(n: int) -> IntMatrix:
    """The n x (n-1) matrix with columns e_1 - e_k for k = 2..n."""
    columns = [
        tuple(1 if t == 0 else (-1 if t == k else 0) for t in range(n))
        for k in range(1, n)
    ]
    return IntMatrix.from_columns(columns, rows=n)


def birational_via_torsion(monomial_set: MonomialSet) -> BirationalityReport:
    """
    Torsion criterion: birational iff Z^n modulo the lattice of the
    differences v_1 - v_j is free of rank 1.

    The certificates also record whether the difference lattice equals the
    lattice spanned by e_1 - e_k.

    Args:
        monomial_set: Normalized set with at least two members

    Returns:
        BirationalityReport

    Raises:
        NotNormalized: If the set is not normalized
        TooFewMonomials: If the set has a single member
    """
    require_normalized(monomial_set, "birational_via_torsion")
    if monomial_set.q < 2:
        error_msg = "The torsion criterion needs at least two monomials"
        logger.error(error_msg)
        raise TooFewMonomials(error_msg)

    differences = difference_matrix(monomial_set)
    smith = smith_normal_form(differences)
    birational = smith.rank == monomial_set.n - 1 and smith.is_torsion_free
    standard = lattice_equal(differences, standard_difference_matrix(monomial_set.n))

    get_set_logger(__name__, monomial_set).debug(
        f"Torsion: rank {smith.rank}, factors {smith.invariant_factors}"
    )
    return _report(
        monomial_set,
        birational,
        Criterion.TORSION,
        Certificates(
            invariant_factors=smith.invariant_factors,
            difference_lattice_standard=standard,
        ),
    )


def birational_via_extended_torsion(monomial_set: MonomialSet) -> BirationalityReport:
    """
    Extended torsion criterion: birational iff rank(A) = n and Z^(n+1)
    modulo the column lattice of A' is torsion-free.

    Raises:
        NotNormalized: If the set is not normalized
    """
    require_normalized(monomial_set, "birational_via_extended_torsion")
    rank_a = rank(log_matrix(monomial_set))
    smith = smith_normal_form(extended_log_matrix(monomial_set))
    birational = rank_a == monomial_set.n and smith.is_torsion_free
    return _report(
        monomial_set,
        birational,
        Criterion.EXTENDED_TORSION,
        Certificates(rank_a=rank_a, extended_invariant_factors=smith.invariant_factors),
    )


def sufficient_rank_m(monomial_set: MonomialSet) -> Optional[Verdict]:
    """
    Birational if the difference matrix M has rank n - 1; None otherwise
    (the test is one-sided).
    """
    require_normalized(monomial_set, "sufficient_rank_m")
    matrix, _ = difference_matrix_and_digraph(monomial_set)
    if rank(matrix) == monomial_set.n - 1:
        return Verdict.BIRATIONAL
    return None


def sufficient_syzygy(monomial_set: MonomialSet) -> Optional[Verdict]:
    """
    Birational if rank(A) = n and the linear syzygy matrix has rank q - 1;
    None otherwise (the test is one-sided).
    """
    require_normalized(monomial_set, "sufficient_syzygy")
    if rank(log_matrix(monomial_set)) != monomial_set.n:
        return None
    if term_rank(linear_syzygy_matrix(monomial_set)) == monomial_set.q - 1:
        return Verdict.BIRATIONAL
    return None


def sufficient_reports(monomial_set: MonomialSet) -> List[BirationalityReport]:
    """
    Reports of the one-sided criteria that conclude Birational.

    Args:
        monomial_set: Normalized set

    Returns:
        A RankM report and/or a SyzygyRank report; empty when neither
        criterion applies
    """
    reports = []
    if sufficient_rank_m(monomial_set) is Verdict.BIRATIONAL:
        matrix, components = difference_matrix_and_digraph(monomial_set)
        reports.append(
            _report(
                monomial_set,
                True,
                Criterion.RANK_M,
                Certificates(rank_m=rank(matrix), components=components),
            )
        )
    if sufficient_syzygy(monomial_set) is Verdict.BIRATIONAL:
        reports.append(
            _report(
                monomial_set,
                True,
                Criterion.SYZYGY_RANK,
                Certificates(
                    rank_a=monomial_set.n,
                    rank_ls=term_rank(linear_syzygy_matrix(monomial_set)),
                ),
            )
        )
    return reports


@dataclass(frozen=True)
class Degree2Graph:
    """
    Graph with loops of a degree-2 set: an edge {i, k} per x_i*x_k and a loop
    per x_i^2 (0-based vertices).

    Attributes:
        n: Number of vertices
        edges: Non-loop edges (i, k) with i < k, in member order
        loops: Vertices carrying a loop, in member order
        connected: Whether the graph with loops is connected
        bipartite: Whether the graph without loops is bipartite
    """

    n: int
    edges: Tuple[Tuple[int, int], ...]
    loops: Tuple[int, ...]
    connected: bool
    bipartite: bool
    cycle_basis: List[List[int]] = field(default_factory=list)

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": self.n,
            "edges": [[i + 1, k + 1] for i, k in self.edges],
            "loops": [i + 1 for i in self.loops],
            "connected": self.connected,
            "bipartite": self.bipartite,
            "loop_count": self.loop_count,
            "cycles": [[v + 1 for v in cycle] for cycle in self.cycle_basis],
        }


def degree2_graph(monomial_set: MonomialSet) -> Degree2Graph:
    """
    Build the graph with loops of a degree-2 set.

    Connectivity uses the same support union-find as cohesiveness, so a
    vertex carrying only a loop counts as reached through that loop.

    Raises:
        WrongDegree: If d != 2
    """
    _require_degree_two(monomial_set, "degree2_graph")
    edges = []
    loops = []
    for monomial in monomial_set.members:
        support = monomial.support
        if len(support) == 1:
            loops.append(support[0])
        else:
            edges.append(support)

    simple = nx.Graph()
    simple.add_nodes_from(range(monomial_set.n))
    simple.add_edges_from(edges)

    return Degree2Graph(
        n=monomial_set.n,
        edges=tuple(edges),
        loops=tuple(loops),
        connected=len(support_components(monomial_set)) == 1,
        bipartite=nx.is_bipartite(simple),
        cycle_basis=[sorted(cycle) for cycle in nx.cycle_basis(simple)],
    )


def degree2_decide(monomial_set: MonomialSet) -> BirationalityReport:
    """
    Complete degree-2 criterion: birational iff the graph with loops is
    connected and either non-bipartite or carries at least one loop.

    Raises:
        WrongDegree: If d != 2
        NotNormalized: If the set is not normalized
    """
    _require_degree_two(monomial_set, "degree2_decide")
    require_normalized(monomial_set, "degree2_decide")

    graph = degree2_graph(monomial_set)
    birational = graph.connected and (not graph.bipartite or graph.loop_count >= 1)
    return _report(
        monomial_set,
        birational,
        Criterion.DEGREE2_GRAPH,
        Certificates(
            connected=graph.connected,
            bipartite=graph.bipartite,
            loops=graph.loop_count,
        ),
    )


def contract_to_loop(monomial_set: MonomialSet, edge: Tuple[int, int]) -> MonomialSet:
    """
    Contract an edge x_s*x_t (s < t) to a loop around x_s.

    Every occurrence of x_t is replaced by x_s and x_t is deleted; the
    variables after x_t shift down by one.

    Args:
        monomial_set: Degree-2 set
        edge: Pair of 1-based variable numbers whose product is a member

    Returns:
        Degree-2 set in n - 1 variables

    Raises:
        WrongDegree: If d != 2
        NotAnEdge: If x_s*x_t is not a member
        CollapseCollision: If two members become equal
    """
    _require_degree_two(monomial_set, "contract_to_loop")
    s, t = sorted(int(v) - 1 for v in edge)
    n = monomial_set.n
    if s == t or s < 0 or t >= n or not any(
        m.support == (s, t) for m in monomial_set.members
    ):
        error_msg = f"x{s + 1}*x{t + 1} is not an edge of the set"
        logger.error(error_msg)
        raise NotAnEdge(error_msg)

    vectors = []
    for vector in monomial_set.vectors():
        merged = list(vector)
        merged[s] += merged[t]
        del merged[t]
        vectors.append(tuple(merged))

    if len(set(vectors)) != len(vectors):
        error_msg = f"Contracting x{s + 1}*x{t + 1} makes two members equal"
        logger.error(error_msg)
        raise CollapseCollision(error_msg)

    return new_monomial_set(n - 1, vectors)


def _cross_check(
    monomial_set: MonomialSet, report: BirationalityReport
) -> None:
    """Run the torsion criteria (and DPB after a graph verdict) and compare."""
    checks = [birational_via_torsion(monomial_set), birational_via_extended_torsion(monomial_set)]
    if report.criterion is not Criterion.DPB:
        checks.append(dpb(monomial_set))

    for check in checks:
        if check.verdict is not report.verdict:
            error_msg = (
                f"{check.criterion.value} says {check.verdict.value} but "
                f"{report.criterion.value} says {report.verdict.value}"
            )
            logger.error(error_msg)
            raise InvariantViolation(error_msg)


def decide(
    monomial_set: MonomialSet, settings: Optional[Settings] = None
) -> BirationalityReport:
    """
    Decide birationality of any monomial set.

    The input is normalized first when needed. A non-cohesive set of
    degree >= 2 is rejected without matrix work; degree 2 uses the graph
    criterion and every other degree the determinantal one.

    Args:
        monomial_set: Set to decide
        settings: Runtime settings (loaded from the environment if None);
            settings.verify cross-runs the torsion criteria

    Returns:
        BirationalityReport of the normalized set

    Raises:
        InvariantViolation: If verify mode finds two criteria disagreeing
    """
    if settings is None:
        settings = load_settings()

    was_normalized = False
    if not monomial_set.is_normalized:
        logger.warning("Input is not normalized; deciding its normalization")
        monomial_set = normalize(monomial_set)
        was_normalized = True

    set_logger = get_set_logger(__name__, monomial_set)

    if monomial_set.d >= 2 and not is_cohesive(monomial_set):
        report = _report(
            monomial_set,
            False,
            Criterion.COHESION,
            Certificates(
                cohesive=False, components=len(support_components(monomial_set))
            ),
        )
    elif monomial_set.d == 2:
        report = degree2_decide(monomial_set)
    else:
        report = dpb(monomial_set)

    if settings.verify:
        _cross_check(monomial_set, report)

    if was_normalized:
        report = replace(report, normalized=True)

    set_logger.info(f"{report.verdict.value} by {report.criterion.value}")
    return report
