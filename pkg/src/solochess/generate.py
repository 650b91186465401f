"""Seeded random instance generators for sweeps and the ``gen`` command.

The same ``(family, size, seed)`` always yields the same instance.
"""
from __future__ import annotations

import random
from itertools import combinations

from .board import Configuration, PieceKind, PlacedPiece, SoloChessError, Square
from .graphs import CaptureGraph
from .linear import PawnForest, RookString
from .reductions import CnfFormula, ColorfulRBDSInstance, RBDSInstance

FAMILIES = ("rooks1d", "pawns", "trees", "graphs", "dags", "d1", "rbds", "colorful", "cnf")


class UnsupportedFamily(SoloChessError):
    pass


def _rng(family: str, size: int, seed: int) -> random.Random:
    return random.Random(f"{family}:{size}:{seed}")


def random_rook_string(rng: random.Random, length: int, d: int = 2) -> RookString:
    alphabet = [None] + list(range(d + 1))
    return RookString(tuple(rng.choice(alphabet) for _ in range(length)), d)


def random_pawn_forest(rng: random.Random, max_pawns: int = 8, width: int = 6, height: int = 6) -> PawnForest:
    """Half the time grow a tree down from a top square (usually clearable
    shapes), otherwise scatter pawns uniformly (usually defective shapes).
    """
    n = rng.randint(1, max_pawns)
    if rng.random() < 0.5:
        top = Square(rng.randint(1, width), rng.randint(2, height))
        squares = {top}
        frontier = [top]
        while len(squares) < n and frontier:
            sq = rng.choice(frontier)
            kids = [
                Square(sq.x + dx, sq.y - 1)
                for dx in (-1, 1)
                if 1 <= sq.x + dx <= width and sq.y > 1 and Square(sq.x + dx, sq.y - 1) not in squares
            ]
            if not kids:
                frontier.remove(sq)
                continue
            kid = rng.choice(kids)
            squares.add(kid)
            frontier.append(kid)
        return PawnForest(frozenset(squares))
    cells = [Square(x, y) for x in range(1, width + 1) for y in range(1, height + 1)]
    return PawnForest(frozenset(rng.sample(cells, n)))


def random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    return [(rng.randrange(i), i) for i in range(1, n)]


def random_connected_graph(rng: random.Random, n: int, p: float = 0.35) -> CaptureGraph:
    edges = set(tuple(sorted(e)) for e in random_tree_edges(rng, n))
    for a, b in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((a, b))
    names = [str(i) for i in range(n)]
    return CaptureGraph.uniform(names, [(names[a], names[b]) for a, b in sorted(edges)], 2)


def random_dag(rng: random.Random, n: int, p: float = 0.4) -> CaptureGraph:
    names = [str(i) for i in range(n)]
    edges = [(names[a], names[b]) for a, b in combinations(range(n), 2) if rng.random() < p]
    return CaptureGraph.uniform(names, edges, 2, directed=True)


def random_d1_board(rng: random.Random, n: int, kind: PieceKind, window: int = 4) -> Configuration:
    cells = [(x, y) for x in range(1, window + 1) for y in range(1, window + 1)]
    return Configuration.of(kind, [(x, y, 1) for x, y in rng.sample(cells, n)], 1)


def random_rbds(rng: random.Random, n: int, m: int, k: int, p: float = 0.5) -> RBDSInstance:
    edges = {(r, b) for r in range(1, n + 1) for b in range(1, m + 1) if rng.random() < p}
    return RBDSInstance(n, m, frozenset(edges), k)


def random_colorful(rng: random.Random, k: int, class_size: int, m: int, p: float = 0.5) -> ColorfulRBDSInstance:
    n = k * class_size
    classes = tuple(1 + i // class_size for i in range(n))
    return ColorfulRBDSInstance(random_rbds(rng, n, m, k, p), classes)


def random_cnf(rng: random.Random, n: int, m: int) -> CnfFormula:
    clauses = []
    for _ in range(m):
        width = rng.randint(1, min(3, n))
        vars_ = rng.sample(range(1, n + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CnfFormula(n, tuple(clauses))


def gen_instance(family: str, size: int, seed: int):
    """Build one instance; ``size`` is the family's natural size parameter
    (string length, pawn cap, vertex count, piece count, red vertices or
    variables).
    """
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if size < 1:
        raise ValueError("size must be at least 1")
    rng = _rng(family, size, seed)
    if family == "rooks1d":
        return random_rook_string(rng, size)
    if family == "pawns":
        return random_pawn_forest(rng, size).to_configuration()
    if family == "trees":
        names = [str(i) for i in range(size)]
        return CaptureGraph.uniform(names, [(names[a], names[b]) for a, b in random_tree_edges(rng, size)], 2)
    if family == "graphs":
        return random_connected_graph(rng, size)
    if family == "dags":
        return random_dag(rng, size)
    if family == "d1":
        kind = rng.choice(list(PieceKind))
        return random_d1_board(rng, min(size, 16), kind)
    if family == "rbds":
        return random_rbds(rng, size, rng.randint(1, 3), rng.randint(1, 2))
    if family == "colorful":
        k = rng.randint(1, 2)
        return random_colorful(rng, k, max(1, size // k), rng.randint(1, 2))
    return random_cnf(rng, size, rng.randint(1, 4))
