import random
from itertools import combinations

import pytest

from solochess.board import Configuration, PieceKind
from solochess.graphs import (
    CaptureGraph,
    NonUniformBudgets,
    NotADag,
    NotSolvable,
    RootedTree,
    decide_undirected_by_characterization,
    is_spanning_tree,
    knight_graph,
    solve_dag_exact,
    solve_graph_exact,
    solve_rooted_tree,
    spanning_trees,
    tree_solvable,
    tree_solvable_recursive,
    tree_solvable_structural,
    used_edges,
    verify_graph_sequence,
    witness_tree_capture,
)
from solochess.oracle import SearchBudgetExceeded, solve_exact


def path(n, budget=2):
    names = [chr(ord("a") + i) for i in range(n)]
    return CaptureGraph.uniform(names, list(zip(names, names[1:])), budget)


def test_graph_validation():
    with pytest.raises(ValueError):
        CaptureGraph.uniform("ab", [("a", "a")])
    with pytest.raises(ValueError):
        CaptureGraph.uniform("ab", [("a", "z")])
    with pytest.raises(ValueError):
        CaptureGraph(("a",), (), (3,), d=2)


def test_small_paths():
    assert solve_graph_exact(path(1)).solvable
    assert solve_graph_exact(path(3)).solvable
    assert solve_graph_exact(path(4)).solvable


def test_p5_is_solvable_with_center_final():
    # a -> b, b -> c, e -> d, d -> c clears the 5-path onto its centre
    g = path(5)
    res = solve_graph_exact(g)
    assert res.solvable and verify_graph_sequence(g, res.witness).ok
    assert solve_graph_exact(g, target="c").solvable
    assert not solve_graph_exact(g, target="a").solvable


def test_disconnected_is_unsolvable():
    g = CaptureGraph.uniform("abc", [("a", "b")])
    assert not solve_graph_exact(g).solvable


def test_dag_examples():
    assert solve_dag_exact(CaptureGraph.uniform("uv", [("u", "v")], directed=True)).solvable
    assert solve_dag_exact(CaptureGraph.uniform("vwu", [("v", "u"), ("w", "u")], directed=True)).solvable
    assert not solve_dag_exact(CaptureGraph.uniform("ab", [], directed=True)).solvable
    with pytest.raises(NotADag):
        solve_dag_exact(CaptureGraph.uniform("ab", [("a", "b"), ("b", "a")], directed=True))
    with pytest.raises(NotADag):
        solve_dag_exact(path(2))


def test_directed_star_with_budget_one():
    for n in range(1, 7):
        leaves = [f"l{i}" for i in range(n)]
        g = CaptureGraph(("c", *leaves), tuple((l, "c") for l in leaves), (0,) + (1,) * n, True, 1)
        assert solve_dag_exact(g).solvable


def test_state_cap():
    g = CaptureGraph.uniform(range(10), list(combinations(range(10), 2)))
    with pytest.raises(SearchBudgetExceeded):
        solve_graph_exact(g, state_cap=2, method="search")


# ---------------------------------------------------------------- trees


def star(n):
    return RootedTree(tuple(range(n + 1)), tuple((0, i) for i in range(1, n + 1)), 0)


def test_star_rooted_at_center():
    t = star(3)
    assert tree_solvable(t, 0) and tree_solvable(t, 1)
    moves = witness_tree_capture(t)
    assert len(moves) == 3 and all(m.dst == 0 for m in moves)
    assert verify_graph_sequence(t.as_graph(), moves).ok


def test_path_three_roots():
    t = RootedTree("abc", (("a", "b"), ("b", "c")), "a")
    # c takes b and the token on b still has a capture for a
    assert tree_solvable(t, 0)
    assert not tree_solvable(t, 1)
    assert solve_graph_exact(t.as_graph(), target="a").solvable
    mid = t.rerooted("b")
    assert tree_solvable(mid, 0) and tree_solvable(mid, 1)
    assert len(witness_tree_capture(mid)) == 2


def test_singleton_tree():
    t = RootedTree(("x",), (), "x")
    assert tree_solvable(t, 1) and witness_tree_capture(t) == []


def test_p4_witness():
    t = RootedTree("abcd", (("a", "b"), ("b", "c"), ("c", "d")), "b")
    moves = witness_tree_capture(t)
    assert len(moves) == 3 and verify_graph_sequence(t.as_graph(), moves).ok


def test_witness_refuses_unsolvable():
    t = RootedTree("abcde", tuple(zip("abcd", "bcde")), "a")
    assert not tree_solvable(t, 0)
    with pytest.raises(NotSolvable):
        witness_tree_capture(t)


def test_tree_forms_agree_up_to_ten():
    from solochess.sweep import free_trees

    for vertices, edges in free_trees(10):
        for root in vertices:
            t = RootedTree(vertices, edges, root)
            for level in (0, 1):
                assert tree_solvable_recursive(t, level) == tree_solvable_structural(t, level)


def test_rooted_tree_validation():
    with pytest.raises(ValueError):
        RootedTree("abc", (("a", "b"),), "a")
    with pytest.raises(ValueError):
        RootedTree("abc", (("a", "b"), ("a", "b")), "a")
    with pytest.raises(ValueError):
        RootedTree("ab", (("a", "b"),), "z")


def test_solve_rooted_tree_general_budgets():
    t = RootedTree("abc", (("a", "b"), ("b", "c")), "a")
    left, moves = solve_rooted_tree(t, {"a": 0, "b": 1, "c": 1})
    assert left is None
    left, moves = solve_rooted_tree(t, {"a": 0, "b": 0, "c": 3})
    assert left == 1
    g = CaptureGraph(tuple("abc"), (("a", "b"), ("b", "c")), (0, 0, 3))
    assert verify_graph_sequence(g, moves).ok


# ---------------------------------------------------------------- characterization


def test_characterization_examples():
    c4 = CaptureGraph.uniform("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    res = decide_undirected_by_characterization(c4)
    assert res.solvable and verify_graph_sequence(c4, witness_tree_capture(res.tree)).ok
    assert decide_undirected_by_characterization(path(2)).solvable
    assert decide_undirected_by_characterization(path(5)).solvable
    assert not decide_undirected_by_characterization(path(6)).solvable
    with pytest.raises(NonUniformBudgets):
        decide_undirected_by_characterization(path(3, budget=1))


def test_spanning_tree_count():
    k4 = list(combinations(range(4), 2))
    assert sum(1 for _ in spanning_trees(range(4), k4)) == 16
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    assert sum(1 for _ in spanning_trees(range(5), c5)) == 5


def test_oracle_witness_edges_form_spanning_tree():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(2, 7)
        edges = [(a, b) for a, b in combinations(range(n), 2) if rng.random() < 0.5]
        g = CaptureGraph(tuple(range(n)), tuple(edges), tuple(rng.randint(0, 3) for _ in range(n)))
        res = solve_graph_exact(g, method="search")
        if res.solvable:
            assert is_spanning_tree(list(range(n)), used_edges(res.witness))


def test_search_and_spanning_tree_methods_agree():
    rng = random.Random(4)
    for _ in range(400):
        n = rng.randint(1, 7)
        edges = [(a, b) for a, b in combinations(range(n), 2) if rng.random() < 0.45]
        g = CaptureGraph(tuple(range(n)), tuple(edges), tuple(rng.randint(0, 3) for _ in range(n)))
        target = rng.choice([None] + list(range(n)))
        lo = rng.randint(0, 1)
        a = solve_graph_exact(g, target, lo, method="search")
        b = solve_graph_exact(g, target, lo, method="spanning-trees")
        assert a.solvable == b.solvable
        if b.solvable:
            assert verify_graph_sequence(g, b.witness).ok


def test_knight_graph_matches_board():
    rng = random.Random(5)
    cells = [(x, y) for x in range(1, 5) for y in range(1, 5)]
    for _ in range(100):
        chosen = rng.sample(cells, rng.randint(1, 6))
        c = Configuration.of(PieceKind.KNIGHT, [(x, y, rng.randint(0, 2)) for x, y in chosen], 2)
        assert solve_exact(c).solvable == solve_graph_exact(knight_graph(c)).solvable
