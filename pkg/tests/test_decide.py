import networkx as nx
import numpy as np
import pytest

import src.decide as decide_module
import src.exactla as exactla_module
from src.config.settings import Settings
from src.core import full_veronese_set, is_cohesive, log_matrix
from src.decide import (
    BirationalityReport,
    Certificates,
    Criterion,
    Verdict,
    apb,
    birational_via_extended_torsion,
    birational_via_torsion,
    contract_to_loop,
    decide,
    degree2_decide,
    degree2_graph,
    difference_matrix,
    dpb,
    standard_difference_matrix,
    sufficient_rank_m,
    sufficient_reports,
    sufficient_syzygy,
)
from src.exceptions import (
    CollapseCollision,
    InvariantViolation,
    NotAnEdge,
    NotNormalized,
    NotSubset,
    TooFewMonomials,
    WrongDegree,
)
from src.parser import parse_monomials
from src.exactla import rank
from src.termmat import difference_matrix_and_digraph, linear_syzygy_matrix, term_rank
from tests.helpers import edge_set, make_set, squarefree

QUIET = Settings(verify=False)
VERIFY = Settings(verify=True)


# Determinantal criterion
def test_dpb_triangle(triangle):
    """Test Delta_3 = 2 = d for the triangle."""
    report = dpb(triangle)
    assert report.is_birational
    assert report.criterion is Criterion.DPB
    assert report.certificates.delta_n == 2
    assert report.certificates.rank_a == 3


def test_dpb_fourth_powers(fourth_powers):
    """Test that a reparametrized Veronese fails with Delta_2 = 8."""
    report = dpb(fourth_powers)
    assert not report.is_birational
    assert report.certificates.delta_n == 8
    assert report.certificates.expected_delta == 4
    assert report.certificates.exponent_gcd == 2


def test_dpb_cubic_example(cubic_example):
    """Test a cohesive set of maximal rank that is not birational."""
    report = dpb(cubic_example)
    assert not report.is_birational
    assert report.certificates.delta_n == 6
    assert report.certificates.rank_a == 3


def test_dpb_rank_deficient(four_cycle):
    """Test that rank(A) < n gives Delta_n = 0."""
    report = dpb(four_cycle)
    assert not report.is_birational
    assert report.certificates.rank_a == 3
    assert report.certificates.delta_n == 0


def test_dpb_linear_set_is_birational():
    """Test that the variables themselves are birational."""
    assert dpb(make_set(3, (1, 0, 0), (0, 1, 0), (0, 0, 1))).is_birational


def test_dpb_requires_normalized():
    """Test that a set with a common factor is refused."""
    with pytest.raises(NotNormalized):
        dpb(make_set(3, (2, 1, 0), (2, 0, 1)))


def test_golden_examples(golden):
    """Test verdicts and certificates of the worked examples."""
    for example in golden["examples"]:
        monomial_set = parse_monomials(example["text"])
        report = dpb(monomial_set)
        assert report.is_birational == example["birational"], example["name"]
        assert report.certificates.delta_n == example["delta_n"], example["name"]
        assert report.certificates.rank_a == example["rank_a"], example["name"]
        assert term_rank(linear_syzygy_matrix(monomial_set)) == example["rank_ls"]
        assert decide(monomial_set, QUIET).is_birational == example["birational"]


# Lattice criterion
def test_apb_against_full_veronese(triangle, fourth_powers):
    """Test the lattice criterion inside the full Veronese set."""
    assert apb(triangle, full_veronese_set(3, 2))
    assert not apb(fourth_powers, full_veronese_set(2, 4))


def test_apb_requires_subset(triangle):
    """Test that the smaller set must be contained in the larger one."""
    with pytest.raises(NotSubset):
        apb(full_veronese_set(3, 2), triangle)


# Torsion criteria
def test_difference_matrices(triangle):
    """Test the difference matrix and its standard counterpart."""
    assert difference_matrix(triangle).entries == ((0, 1), (1, 0), (-1, -1))
    assert standard_difference_matrix(3).entries == ((1, 1), (-1, 0), (0, -1))


def test_torsion_triangle(triangle):
    """Test the torsion-free difference lattice of the triangle."""
    report = birational_via_torsion(triangle)
    assert report.is_birational
    assert report.certificates.invariant_factors == (1, 1)
    assert report.certificates.difference_lattice_standard


def test_torsion_fourth_powers(fourth_powers):
    """Test the order-2 torsion of x1^4, x1^2x2^2, x2^4."""
    report = birational_via_torsion(fourth_powers)
    assert not report.is_birational
    assert report.certificates.invariant_factors == (2,)
    assert not report.certificates.difference_lattice_standard


def test_torsion_needs_two_monomials():
    """Test that a single variable is refused."""
    with pytest.raises(TooFewMonomials):
        birational_via_torsion(make_set(1, (1,)))


def test_extended_torsion(triangle, fourth_powers):
    """Test the extended matrix criterion on both examples."""
    assert birational_via_extended_torsion(triangle).is_birational
    report = birational_via_extended_torsion(fourth_powers)
    assert not report.is_birational
    assert report.certificates.extended_invariant_factors == (1, 2)


@pytest.mark.parametrize("count", [100, pytest.param(500, marks=pytest.mark.slow)])
def test_criteria_agree(random_normalized_sets, count):
    """Test that the determinantal, torsion and lattice criteria agree."""
    for monomial_set in random_normalized_sets(count):
        expected = dpb(monomial_set).verdict
        torsion = birational_via_torsion(monomial_set)
        assert torsion.verdict is expected
        assert torsion.certificates.difference_lattice_standard == (
            expected is Verdict.BIRATIONAL
        )
        assert birational_via_extended_torsion(monomial_set).verdict is expected
        veronese = full_veronese_set(monomial_set.n, monomial_set.d)
        assert apb(monomial_set, veronese) == (expected is Verdict.BIRATIONAL)


def test_degree2_criterion_agrees_with_dpb(random_normalized_sets):
    """Test the graph criterion against Delta_n on degree-2 sets."""
    for monomial_set in random_normalized_sets(200, seed=8, degree=2):
        if monomial_set.d != 2:
            continue
        assert degree2_decide(monomial_set).verdict is dpb(monomial_set).verdict


def test_non_cohesive_sets_are_not_birational(random_normalized_sets):
    """Test that a non-cohesive set of degree >= 2 is rejected and has rank(LS) <= q - 2."""
    for monomial_set in random_normalized_sets(300, seed=12):
        if monomial_set.d >= 2 and not is_cohesive(monomial_set):
            assert not dpb(monomial_set).is_birational
            assert term_rank(linear_syzygy_matrix(monomial_set)) <= monomial_set.q - 2


def test_degree2_cohesion_matches_syzygy_rank(random_normalized_sets):
    """Test that a degree-2 set is cohesive iff rank(LS) = q - 1."""
    seen = set()
    for monomial_set in random_normalized_sets(200, seed=23, degree=2):
        if monomial_set.d != 2:
            continue
        full_rank = term_rank(linear_syzygy_matrix(monomial_set)) == monomial_set.q - 1
        assert full_rank == is_cohesive(monomial_set)
        seen.add(full_rank)
    assert seen == {True, False}


def test_syzygy_rank_implies_difference_rank(random_normalized_sets):
    """Test that rank(LS) = q - 1 and rank(A) = n force rank(M) = n - 1."""
    hits = 0
    for monomial_set in random_normalized_sets(200, seed=29):
        n, q = monomial_set.n, monomial_set.q
        if rank(log_matrix(monomial_set)) != n:
            continue
        if term_rank(linear_syzygy_matrix(monomial_set)) != q - 1:
            continue
        matrix, _ = difference_matrix_and_digraph(monomial_set)
        assert rank(matrix) == n - 1
        hits += 1
    assert hits > 0


# One-sided criteria
def test_sufficient_criteria_triangle(triangle):
    """Test that both one-sided criteria fire on the triangle."""
    assert sufficient_rank_m(triangle) is Verdict.BIRATIONAL
    assert sufficient_syzygy(triangle) is Verdict.BIRATIONAL
    criteria = [report.criterion for report in sufficient_reports(triangle)]
    assert criteria == [Criterion.RANK_M, Criterion.SYZYGY_RANK]


def test_sufficient_criteria_are_inconclusive(cubic_example, fourth_powers):
    """Test that failing one-sided criteria return None."""
    assert sufficient_rank_m(cubic_example) is None
    assert sufficient_syzygy(cubic_example) is None
    assert sufficient_rank_m(fourth_powers) is None
    assert sufficient_reports(fourth_powers) == []


def test_sufficient_criteria_syzygy_rank_four(golden):
    """Test that a birational set can have rank(LS) < q - 1."""
    example = next(e for e in golden["examples"] if e["name"] == "six_variables_syzygy_rank4")
    assert sufficient_syzygy(parse_monomials(example["text"])) is None


@pytest.mark.parametrize("count", [100, pytest.param(500, marks=pytest.mark.slow)])
def test_sufficient_criteria_are_sound(random_normalized_sets, count):
    """Test that no one-sided criterion accepts a non-birational set."""
    for monomial_set in random_normalized_sets(count, seed=77):
        if sufficient_rank_m(monomial_set) or sufficient_syzygy(monomial_set):
            assert dpb(monomial_set).is_birational


# Degree-2 graphs
def test_degree2_graph_facts(triangle, tree_with_loop, four_cycle):
    """Test connectivity, bipartiteness and loops."""
    graph = degree2_graph(triangle)
    assert graph.connected
    assert not graph.bipartite
    assert graph.loop_count == 0
    assert graph.to_dict()["cycles"] == [[1, 2, 3]]

    loop_graph = degree2_graph(tree_with_loop)
    assert loop_graph.bipartite
    assert loop_graph.loops == (2,)
    assert loop_graph.to_dict()["loops"] == [3]

    assert degree2_graph(four_cycle).bipartite


@pytest.mark.parametrize(
    "graph_set, birational",
    [
        (edge_set(3, [(1, 2), (1, 3), (2, 3)]), True),
        (edge_set(3, [(1, 2), (1, 3)], loops=(3,)), True),
        (edge_set(4, [(1, 2), (2, 3), (3, 4), (1, 4)]), False),
        (edge_set(4, [(1, 2), (3, 4)], loops=(1, 3)), False),
        (edge_set(2, [(1, 2)], loops=(1, 2)), True),
    ],
)
def test_degree2_decide(graph_set, birational):
    """Test the degree-2 criterion on small graphs."""
    report = degree2_decide(graph_set)
    assert report.is_birational == birational
    assert report.criterion is Criterion.DEGREE2_GRAPH


def test_degree2_requires_degree_two(triangle):
    """Test that other degrees are refused."""
    with pytest.raises(WrongDegree):
        degree2_graph(squarefree(3, (1, 2, 3)))
    with pytest.raises(WrongDegree):
        degree2_decide(make_set(2, (1, 0), (0, 1)))


# Contraction
def test_contract_to_loop(four_cycle):
    """Test contracting the edge x3*x4 of the 4-cycle."""
    contracted = contract_to_loop(four_cycle, (3, 4))
    assert contracted.n == 3
    assert contracted.vectors() == [(1, 1, 0), (0, 1, 1), (0, 0, 2), (1, 0, 1)]
    assert degree2_decide(contracted).is_birational


def test_contract_to_loop_errors(four_cycle, triangle):
    """Test non-edges and collisions."""
    with pytest.raises(NotAnEdge):
        contract_to_loop(four_cycle, (1, 3))
    with pytest.raises(CollapseCollision):
        contract_to_loop(triangle, (1, 2))


def _random_bipartite_cycle_graphs(count, seed):
    """Connected bipartite graphs with at least one cycle, as 1-based edge lists."""
    rng = np.random.default_rng(seed)
    graphs = []
    while len(graphs) < count:
        left = int(rng.integers(2, 4))
        right = int(rng.integers(2, 4))
        candidates = [(i, left + k) for i in range(left) for k in range(right)]
        size = int(rng.integers(left + right, len(candidates) + 1))
        picks = rng.choice(len(candidates), size=size, replace=False)
        graph = nx.Graph()
        graph.add_nodes_from(range(left + right))
        graph.add_edges_from(candidates[i] for i in picks)
        if nx.is_connected(graph):
            graphs.append((left + right, [(u + 1, v + 1) for u, v in graph.edges()], graph))
    return graphs


def test_contracting_a_cycle_edge_is_birational():
    """Test that contracting an even-cycle edge of a bipartite graph makes it birational."""
    rng = np.random.default_rng(31)
    for n, edges, graph in _random_bipartite_cycle_graphs(50, seed=31):
        monomial_set = edge_set(n, edges)
        assert not decide(monomial_set, QUIET).is_birational
        bridges = {frozenset(edge) for edge in nx.bridges(graph)}
        on_cycle = [edge for edge in graph.edges() if frozenset(edge) not in bridges]
        u, v = on_cycle[int(rng.integers(len(on_cycle)))]
        contracted = contract_to_loop(monomial_set, (u + 1, v + 1))
        assert contracted.n == n - 1
        assert decide(contracted, QUIET).is_birational


# Orchestration
def test_decide_dispatch(triangle, fourth_powers, disjoint_pair):
    """Test the criterion picked for each kind of set."""
    assert decide(triangle, QUIET).criterion is Criterion.DEGREE2_GRAPH
    assert decide(fourth_powers, QUIET).criterion is Criterion.DPB

    report = decide(disjoint_pair, QUIET)
    assert report.criterion is Criterion.COHESION
    assert report.certificates.cohesive is False
    assert report.certificates.components == 2


def test_decide_normalizes_input():
    """Test that the report of a non-normalized set is flagged."""
    report = decide(make_set(4, (1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1)), QUIET)
    assert report.normalized
    assert report.n == 3
    assert report.d == 2
    assert report.is_birational


def test_decide_report_to_dict(triangle):
    """Test the JSON shape of a report."""
    payload = decide(triangle, QUIET).to_dict()
    assert payload["verdict"] == "Birational"
    assert payload["criterion"] == "Degree2Graph"
    assert payload["certificates"] == {"connected": True, "bipartite": False, "loops": 0}
    assert payload["normalized"] is False


def test_decide_verify_mode_agrees(random_normalized_sets):
    """Test that verify mode raises nothing on consistent criteria."""
    for monomial_set in random_normalized_sets(50, seed=3):
        decide(monomial_set, VERIFY)


def test_decide_cohesion_skips_matrix_work(disjoint_pair, mocker):
    """Test that a non-cohesive set is decided without a Smith form."""
    local_spy = mocker.spy(decide_module, "smith_normal_form")
    shared_spy = mocker.spy(exactla_module, "smith_normal_form")
    decide(disjoint_pair, QUIET)
    local_spy.assert_not_called()
    shared_spy.assert_not_called()


def test_decide_verify_runs_torsion(triangle, mocker):
    """Test that verify mode runs the torsion criteria."""
    torsion_spy = mocker.spy(decide_module, "birational_via_torsion")
    extended_spy = mocker.spy(decide_module, "birational_via_extended_torsion")
    decide(triangle, VERIFY)
    torsion_spy.assert_called_once_with(triangle)
    extended_spy.assert_called_once_with(triangle)

    torsion_spy.reset_mock()
    decide(triangle, QUIET)
    torsion_spy.assert_not_called()


def test_decide_verify_detects_disagreement(triangle, mocker):
    """Test that a disagreeing criterion raises InvariantViolation."""
    wrong = BirationalityReport(
        verdict=Verdict.NOT_BIRATIONAL,
        criterion=Criterion.TORSION,
        certificates=Certificates(),
        n=3,
        d=2,
        q=3,
    )
    mocker.patch.object(decide_module, "birational_via_torsion", return_value=wrong)
    with pytest.raises(InvariantViolation):
        decide(triangle, VERIFY)


def test_decide_reads_verify_from_environment(triangle, mocker, monkeypatch):
    """Test that MONOCREM_VERIFY switches on the cross-check."""
    monkeypatch.setenv("MONOCREM_VERIFY", "1")
    torsion_spy = mocker.spy(decide_module, "birational_via_torsion")
    decide(triangle)
    torsion_spy.assert_called_once()


def test_log_matrix_of_contracted_set(four_cycle):
    """Test that contraction keeps the degree."""
    contracted = contract_to_loop(four_cycle, (1, 2))
    assert all(sum(column) == 2 for column in log_matrix(contracted).columns())
