import pytest

from solochess.board import Configuration, PieceKind, Square, verify_sequence
from solochess.graphs import solve_dag_exact, solve_graph_exact, verify_graph_sequence
from solochess.oracle import solve_exact
from solochess.reductions import (
    CnfFormula,
    ColorfulRBDSInstance,
    InvalidAssignment,
    InvalidDominatingSet,
    MalformedInstance,
    PlacementOverflow,
    RBDSInstance,
    colorful_rbds_to_graph,
    rbds_brute_force,
    rbds_to_rooks,
    rbds_witness_to_sequence,
    rooks_to_queens,
    three_sat_to_dag,
    uniformize_queen_budgets,
)
from solochess.sweep import WORKED_CNF


def rbds(n, m, edges, k):
    return RBDSInstance(n, m, frozenset(edges), k)


def test_rbds_board_shape():
    inst = rbds(3, 2, {(1, 1), (2, 1), (3, 2)}, 2)
    out = rbds_to_rooks(inst)
    c = out.instance
    assert len(c) == 3 + 3 + 2 + 2 + 1
    assert max(p.square.y for p in c.pieces) == 2 * 2 + 1
    assert max(p.square.x for p in c.pieces) == 3 + 2 + 2 + 1
    assert out.provenance[("target",)] == (Square(8, 5),)
    assert c.at(Square(8, 5)).budget == 0
    assert sorted(p.budget for p in c.pieces).count(2) == 2 + 2


def test_rbds_single_vertex():
    inst = rbds(1, 1, {(1, 1)}, 1)
    out = rbds_to_rooks(inst)
    assert len(out.instance) == 5
    moves = rbds_witness_to_sequence(inst, {1})
    assert verify_sequence(out.instance, moves).ok
    assert solve_exact(out.instance).solvable


def test_rbds_no_blue_vertices():
    inst = rbds(2, 0, set(), 1)
    c = rbds_to_rooks(inst).instance
    assert len(c) == 2 + 1 + 1
    assert verify_sequence(c, rbds_witness_to_sequence(inst, set())).ok


def test_rbds_no_instance():
    # two blue vertices with disjoint neighbourhoods and k = 1
    inst = rbds(2, 2, {(1, 1), (2, 2)}, 1)
    assert rbds_brute_force(inst) is None
    assert not solve_exact(rbds_to_rooks(inst).instance).solvable


def test_budget_one_target_breaks_soundness():
    # NO instance (needs two reds) whose board turns solvable once the target may capture
    inst = rbds(4, 3, {(4, 1), (1, 1), (2, 3), (2, 2), (1, 3)}, 1)
    assert rbds_brute_force(inst) is None
    assert not solve_exact(rbds_to_rooks(inst).instance).solvable
    assert solve_exact(rbds_to_rooks(inst, target_budget=1).instance).solvable
    with pytest.raises(ValueError):
        rbds_to_rooks(inst, target_budget=2)


def test_rbds_witness_errors():
    inst = rbds(3, 2, {(1, 1), (2, 1), (3, 2)}, 2)
    with pytest.raises(InvalidDominatingSet):
        rbds_witness_to_sequence(inst, {1})
    with pytest.raises(InvalidDominatingSet):
        rbds_witness_to_sequence(inst, {1, 2, 3})
    with pytest.raises(InvalidDominatingSet):
        rbds_witness_to_sequence(inst, {1, 3}, choice={1: 2})
    moves = rbds_witness_to_sequence(inst, {2, 3}, choice={1: 2})
    assert verify_sequence(rbds_to_rooks(inst).instance, moves).ok


def test_rbds_malformed():
    with pytest.raises(MalformedInstance):
        rbds(2, 1, {(3, 1)}, 1)
    with pytest.raises(MalformedInstance):
        rbds(2, 1, set(), 0)


def test_rooks_to_queens():
    rooks = Configuration.of(PieceKind.ROOK, [(1, 1, 1), (2, 1, 0), (1, 2, 1)], 2)
    q = rooks_to_queens(rooks)
    assert {p.square for p in q.pieces} == {Square(10, 1), Square(20, 1), Square(10, 2)}
    assert all(p.kind is PieceKind.QUEEN for p in q.pieces)
    assert solve_exact(q).solvable == solve_exact(rooks).solvable
    with pytest.raises(ValueError):
        rooks_to_queens(q)


def test_uniformize_single_queen():
    c = Configuration.of(PieceKind.QUEEN, [(10, 1, 1)], 2)
    u = uniformize_queen_budgets(c)
    assert {(p.square, p.budget) for p in u.pieces} == {(Square(10, 1), 2), (Square(9, 2), 2)}


def test_uniformize_leaves_two_budget_boards_alone():
    c = Configuration.of(PieceKind.QUEEN, [(1, 1, 2), (5, 1, 2)], 2)
    assert set(uniformize_queen_budgets(c).pieces) == set(c.pieces)


def test_uniformize_shifts_at_left_edge():
    c = Configuration.of(PieceKind.QUEEN, [(1, 1, 1)], 2)
    u = uniformize_queen_budgets(c)
    assert {p.square for p in u.pieces} == {Square(2, 1), Square(1, 2)}


def test_uniformize_overflow_and_validation():
    c = Configuration.of(PieceKind.QUEEN, [(2, 1, 1), (1, 2, 2)], 2)
    with pytest.raises(PlacementOverflow):
        uniformize_queen_budgets(c, bound=0)
    with pytest.raises(ValueError):
        uniformize_queen_budgets(Configuration.of(PieceKind.QUEEN, [(2, 1, 0)], 2))
    with pytest.raises(ValueError):
        uniformize_queen_budgets(Configuration.of(PieceKind.ROOK, [(2, 1, 1)], 2))


def test_uniformize_preserves_solvability_on_spread_boards():
    # the supporting queen gadget is expected to preserve solvability on every
    # board produced by rooks_to_queens
    rooks = Configuration.of(PieceKind.ROOK, [(1, 1, 1), (1, 3, 2), (4, 3, 1), (4, 4, 1)], 2)
    q = rooks_to_queens(rooks)
    assert solve_exact(uniformize_queen_budgets(q)).solvable == solve_exact(q).solvable


def test_colorful_sizes_and_example():
    inst = ColorfulRBDSInstance(rbds(1, 1, {(1, 1)}, 1), (1,))
    out = colorful_rbds_to_graph(inst, choice={1: 1})
    g = out.instance
    assert len(g.vertices) == 1 + 6 + 1 + 3
    assert verify_graph_sequence(g, out.embedded_witness).ok
    assert solve_graph_exact(g).solvable

    no = ColorfulRBDSInstance(rbds(2, 2, {(1, 1), (2, 2)}, 2), (1, 2))
    assert colorful_rbds_to_graph(no, choice={1: 1, 2: 2}).embedded_witness is not None
    blocked = ColorfulRBDSInstance(rbds(2, 2, {(1, 1), (2, 1)}, 1), (1, 1))
    assert not solve_graph_exact(colorful_rbds_to_graph(blocked).instance).solvable
    with pytest.raises(InvalidDominatingSet):
        colorful_rbds_to_graph(blocked, choice={1: 1})
    with pytest.raises(InvalidDominatingSet):
        colorful_rbds_to_graph(no, choice={1: 2, 2: 1})


def test_colorful_malformed():
    with pytest.raises(MalformedInstance):
        ColorfulRBDSInstance(rbds(3, 1, set(), 2), (1, 1, 2))
    with pytest.raises(MalformedInstance):
        ColorfulRBDSInstance(rbds(2, 1, set(), 1), (1,))


def test_sat_dag_figure_formula():
    out = three_sat_to_dag(WORKED_CNF, {1: True, 2: True, 3: False})
    g = out.instance
    assert len(g.vertices) == 4 + 3 * 3 + 1
    assert verify_graph_sequence(g, out.embedded_witness).ok
    assert solve_dag_exact(g).solvable


def test_sat_dag_contradiction():
    phi = CnfFormula(1, ((1,), (-1,)))
    assert not solve_dag_exact(three_sat_to_dag(phi).instance).solvable
    with pytest.raises(InvalidAssignment):
        three_sat_to_dag(phi, {1: True})


def test_cnf_malformed():
    with pytest.raises(MalformedInstance):
        CnfFormula(2, ((),))
    with pytest.raises(MalformedInstance):
        CnfFormula(2, ((1, 2, -1, -2),))
    with pytest.raises(MalformedInstance):
        CnfFormula(2, ((3,),))
