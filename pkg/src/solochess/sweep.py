"""Oracle-equivalence sweeps: each fast decider or reduction against brute force.

Every sweep returns a :class:`SweepReport`; a sweep is clean when its
``mismatches`` list is empty. Instance sizes are chosen to stay well inside
the oracle's state cap.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Optional

import networkx as nx

from .board import Configuration, PieceKind, verify_sequence
from .graphs import (
    CaptureGraph,
    RootedTree,
    decide_undirected_by_characterization,
    is_spanning_tree,
    solve_dag_exact,
    solve_graph_exact,
    tree_solvable_recursive,
    tree_solvable_structural,
    used_edges,
    verify_graph_sequence,
    witness_tree_capture,
)
from .linear import (
    RookString,
    d1_witness,
    decide_d1,
    decide_pawns,
    decide_pawns_super_solvable,
    decide_rooks_1d,
    decide_rooks_1d_d2,
    pawn_witness,
    witness_rooks_1d,
)
from .generate import random_cnf, random_colorful, random_pawn_forest, random_rbds
from .oracle import solve_exact
from .reductions import (
    CnfFormula,
    PlacementOverflow,
    cnf_brute_force,
    colorful_brute_force,
    colorful_rbds_to_graph,
    rbds_brute_force,
    rbds_to_rooks,
    rbds_witness_to_sequence,
    rooks_to_queens,
    three_sat_to_dag,
    uniformize_queen_budgets,
)

SWEEP_FAMILIES = ("rooks1d", "pawns", "trees", "graphs", "d1", "reductions", "queens")


@dataclass
class SweepReport:
    family: str
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def fail(self, what: str) -> None:
        self.mismatches.append(what)

    def summary(self) -> str:
        return f"{self.family}: {self.checked} instances, {len(self.mismatches)} mismatches"


# ---------------------------------------------------------------- rooks 1D


def sweep_rooks1d(max_len: int = 6, d: int = 2, samples: Optional[int] = None, seed: int = 0) -> SweepReport:
    """Exhaustive over every string up to ``max_len`` (or ``samples`` random ones)."""
    rep = SweepReport(f"rooks1d d={d}")
    alphabet = (None,) + tuple(range(d + 1))
    if samples is None:
        strings = (cells for n in range(1, max_len + 1) for cells in product(alphabet, repeat=n))
    else:
        rng = random.Random(seed)
        strings = (
            tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_len))) for _ in range(samples)
        )
    for cells in strings:
        if all(c is None for c in cells):
            continue
        s = RookString(cells, d)
        rep.checked += 1
        fast = decide_rooks_1d(s)
        oracle = solve_exact(s.to_configuration())
        if fast.solvable != oracle.solvable:
            rep.fail(f"{s}: decider {fast.solvable}, oracle {oracle.solvable}")
            continue
        if d == 2 and decide_rooks_1d_d2(s).solvable != fast.solvable:
            rep.fail(f"{s}: d=2 form disagrees")
        if fast.solvable:
            if oracle.witness is not None and not verify_sequence(s.to_configuration(), oracle.witness):
                rep.fail(f"{s}: oracle witness fails replay")
            w = witness_rooks_1d(s, fast.target)
            if not verify_sequence(s.to_configuration(), w):
                rep.fail(f"{s}: constructed witness fails replay")
    return rep


# ---------------------------------------------------------------- pawns


def sweep_pawns(samples: int = 2000, seed: int = 0, max_pawns: int = 8, window: int = 6) -> SweepReport:
    rep = SweepReport("pawns")
    for i in range(samples):
        rng = random.Random(f"pawns:{seed}:{i}")
        forest = random_pawn_forest(rng, max_pawns, window, window)
        config = forest.to_configuration()
        rep.checked += 1
        t = forest.target
        plain = decide_pawns(forest).solvable
        if plain != solve_exact(config).solvable:
            rep.fail(f"{sorted(map(str, forest.squares))}: decide_pawns says {plain}")
        sup = decide_pawns_super_solvable(forest).solvable
        ref = solve_exact(config, target=t, require_leftover=1).solvable if t is not None else False
        if t is None and solve_exact(config, require_leftover=1).solvable:
            rep.fail(f"{sorted(map(str, forest.squares))}: no unique top yet clearable with a spare capture")
        if sup != ref:
            rep.fail(f"{sorted(map(str, forest.squares))}: super-solvable decider says {sup}")
        for flag, ok in ((False, plain), (True, sup)):
            if ok:
                w = pawn_witness(forest, flag)
                rep_ok = verify_sequence(config, w)
                if not rep_ok or w and w[-1].dst != t:
                    rep.fail(f"{sorted(map(str, forest.squares))}: pawn witness fails replay")
    return rep


# ---------------------------------------------------------------- trees and graphs


def free_trees(max_n: int):
    """Every unlabelled tree with 1..max_n vertices, as (vertices, edges)."""
    for n in range(1, max_n + 1):
        if n == 1:
            yield ("0",), ()
            continue
        for t in nx.nonisomorphic_trees(n):
            yield tuple(str(v) for v in sorted(t.nodes)), tuple((str(a), str(b)) for a, b in t.edges)


def sweep_trees(max_n: int = 9) -> SweepReport:
    rep = SweepReport("trees")
    for vertices, edges in free_trees(max_n):
        g = CaptureGraph.uniform(vertices, edges, 2)
        for root in vertices:
            t = RootedTree(vertices, edges, root)
            rep.checked += 1
            tag = f"tree {edges} rooted at {root}"
            zero_s = tree_solvable_structural(t, 0)
            zero_r = tree_solvable_recursive(t, 0)
            zero_o = solve_graph_exact(g, target=root).solvable
            if not zero_s == zero_r == zero_o:
                rep.fail(f"{tag}: level 0 structural {zero_s}, recursive {zero_r}, oracle {zero_o}")
            one_s = tree_solvable_structural(t, 1)
            one_r = tree_solvable_recursive(t, 1)
            one_o = solve_graph_exact(g, target=root, require_leftover=1).solvable
            if not one_s == one_r == one_o:
                rep.fail(f"{tag}: level 1 structural {one_s}, recursive {one_r}, oracle {one_o}")
            if zero_r:
                w = witness_tree_capture(t)
                if not verify_graph_sequence(g, w) or (w and w[-1].dst != root):
                    rep.fail(f"{tag}: tree witness fails replay")
    return rep


def connected_graphs(max_n: int):
    """Every connected graph on 1..max_n vertices up to isomorphism."""
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(h):
            yield tuple(str(v) for v in sorted(h.nodes)), tuple((str(a), str(b)) for a, b in h.edges)


def sweep_graphs(max_n: int = 6) -> SweepReport:
    rep = SweepReport("graphs")
    for vertices, edges in connected_graphs(max_n):
        g = CaptureGraph.uniform(vertices, edges, 2)
        rep.checked += 1
        oracle = solve_graph_exact(g, method="search")
        char = decide_undirected_by_characterization(g)
        if oracle.solvable != char.solvable:
            rep.fail(f"graph {edges}: oracle {oracle.solvable}, characterization {char.solvable}")
        if oracle.solvable:
            if not verify_graph_sequence(g, oracle.witness):
                rep.fail(f"graph {edges}: oracle witness fails replay")
            if not is_spanning_tree(vertices, used_edges(oracle.witness)):
                rep.fail(f"graph {edges}: witness edges do not form a spanning tree")
    return rep


# ---------------------------------------------------------------- d = 1


def sweep_d1(max_pieces: int = 5, window: int = 4) -> SweepReport:
    rep = SweepReport("d1")
    cells = [(x, y) for y in range(1, window + 1) for x in range(1, window + 1)]
    for kind in PieceKind:
        for n in range(1, max_pieces + 1):
            for chosen in combinations(cells, n):
                config = Configuration.of(kind, [(x, y, 1) for x, y in chosen], 1)
                rep.checked += 1
                fast = decide_d1(config)
                if fast.solvable != solve_exact(config).solvable:
                    rep.fail(f"{kind.name} {chosen}: decider {fast.solvable}")
                elif fast.solvable and not verify_sequence(config, d1_witness(config, fast.target)):
                    rep.fail(f"{kind.name} {chosen}: d1 witness fails replay")
    return rep


# ---------------------------------------------------------------- reductions


def rbds_shapes():
    return [(n, m, k) for n in range(1, 5) for m in range(0, 4) for k in (1, 2)]


def sweep_rbds_rooks(seeds: int = 200) -> SweepReport:
    """Seed ``s`` uses shape ``s`` modulo the 32 shapes with n <= 4, m <= 3, k <= 2."""
    rep = SweepReport("rbds->rooks")
    shapes = rbds_shapes()
    for s in range(seeds):
        n, m, k = shapes[s % len(shapes)]
        rng = random.Random(f"rbds:{s}")
        inst = random_rbds(rng, n, m, k, rng.choice((0.3, 0.5, 0.7)))
        rep.checked += 1
        S = rbds_brute_force(inst)
        board = rbds_to_rooks(inst).instance
        got = solve_exact(board).solvable
        if got != (S is not None):
            rep.fail(f"{inst}: dominating set {sorted(S) if S else None}, oracle {got}")
        if S is not None and not verify_sequence(board, rbds_witness_to_sequence(inst, S)):
            rep.fail(f"{inst}: forward witness fails replay")
    return rep


WORKED_CNF = CnfFormula(3, ((1, -2, 3), (2, 3), (-1, 2, -3), (-2, -3)))


def sweep_sat_dag(seeds: int = 200) -> SweepReport:
    rep = SweepReport("3sat->dag")
    shapes = [(n, m) for n in range(1, 4) for m in range(1, 5)]
    for s in range(seeds):
        n, m = shapes[s % len(shapes)]
        phi = random_cnf(random.Random(f"cnf:{s}"), n, m)
        rep.checked += 1
        a = cnf_brute_force(phi)
        out = three_sat_to_dag(phi, a)
        got = solve_dag_exact(out.instance).solvable
        if got != (a is not None):
            rep.fail(f"{phi}: satisfiable {a is not None}, oracle {got}")
        if a is not None and not verify_graph_sequence(out.instance, out.embedded_witness):
            rep.fail(f"{phi}: phase witness fails replay")
    rep.checked += 1
    worked = three_sat_to_dag(WORKED_CNF, {1: True, 2: True, 3: False})
    if not solve_dag_exact(worked.instance).solvable or not verify_graph_sequence(worked.instance, worked.embedded_witness):
        rep.fail("worked 3-CNF example: not solvable with its phase witness")
    return rep


def sweep_colorful(seeds: int = 100) -> SweepReport:
    rep = SweepReport("colorful->graph")
    shapes = [(k, n, b) for k in (1, 2) for n in (1, 2) for b in (1, 2)]
    for s in range(seeds):
        k, n, b = shapes[s % len(shapes)]
        rng = random.Random(f"colorful:{s}")
        inst = random_colorful(rng, k, n, b, rng.choice((0.3, 0.5, 0.7)))
        rep.checked += 1
        choice = colorful_brute_force(inst)
        out = colorful_rbds_to_graph(inst, choice)
        got = solve_graph_exact(out.instance).solvable
        if got != (choice is not None):
            rep.fail(f"{inst}: colorful choice {choice}, oracle {got}")
        if choice is not None and not verify_graph_sequence(out.instance, out.embedded_witness):
            rep.fail(f"{inst}: embedded witness fails replay")
    return rep


def sweep_reductions(rbds_seeds: int = 200, cnf_seeds: int = 200, colorful_seeds: int = 100) -> list[SweepReport]:
    return [sweep_rbds_rooks(rbds_seeds), sweep_sat_dag(cnf_seeds), sweep_colorful(colorful_seeds)]


# ---------------------------------------------------------------- queens


def _random_rooks(rng: random.Random, max_pieces: int, budgets, window: int = 4) -> Configuration:
    cells = [(x, y) for x in range(1, window + 1) for y in range(1, window + 1)]
    chosen = rng.sample(cells, rng.randint(1, max_pieces))
    return Configuration.of(PieceKind.ROOK, [(x, y, rng.choice(budgets)) for x, y in chosen], 2)


def sweep_rooks_to_queens(seeds: int = 100) -> SweepReport:
    rep = SweepReport("rooks->queens")
    for s in range(seeds):
        rooks = _random_rooks(random.Random(f"r2q:{s}"), 6, (0, 1, 2))
        rep.checked += 1
        a, b = solve_exact(rooks).solvable, solve_exact(rooks_to_queens(rooks)).solvable
        if a != b:
            rep.fail(f"{rooks.canonical()}: rooks {a}, queens {b}")
    return rep


def sweep_uniformize(seeds: int = 500) -> SweepReport:
    """Spaced queen boards (as produced by :func:`rooks_to_queens`) from
    rook boards of at most four pieces with budgets 1 and 2.
    """
    rep = SweepReport("uniformize")
    for s in range(seeds):
        queens = rooks_to_queens(_random_rooks(random.Random(f"unif:{s}"), 4, (1, 2)))
        rep.checked += 1
        try:
            out = uniformize_queen_budgets(queens)
        except PlacementOverflow:
            rep.fail(f"{queens.canonical()}: no placement for a supporting queen")
            continue
        if any(p.budget != 2 for p in out.pieces):
            rep.fail(f"{queens.canonical()}: output has a budget other than 2")
        a, b = solve_exact(queens).solvable, solve_exact(out).solvable
        if a != b:
            rep.fail(f"{queens.canonical()}: before {a}, after {b}")
    return rep


def run_sweep(family: str, **kw) -> list[SweepReport]:
    table: dict[str, Callable[..., object]] = {
        "rooks1d": sweep_rooks1d,
        "pawns": sweep_pawns,
        "trees": sweep_trees,
        "graphs": sweep_graphs,
        "d1": sweep_d1,
        "reductions": sweep_reductions,
        "queens": lambda **k: [sweep_rooks_to_queens(**k), sweep_uniformize(**k)],
    }
    if family not in table:
        raise ValueError(f"unknown sweep family {family!r}")
    out = table[family](**kw)
    return out if isinstance(out, list) else [out]
