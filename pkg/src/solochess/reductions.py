"""Compilers from NP-hard source problems to capture-game instances.

* Red-Blue Dominating Set -> rook boards (budgets 1 and 2)
* rook boards -> queen boards (column spreading), then all-budget-2 queen boards
* Colorful Red-Blue Dominating Set -> undirected capture graphs
* 3-SAT -> directed acyclic capture graphs

Each compiler returns a :class:`ReductionOutput` carrying a provenance map
from source entities to the emitted squares or vertices, and, when given a
certificate for the source instance, a clearing sequence for the output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .board import (
    CaptureMove,
    Configuration,
    PieceKind,
    PlacedPiece,
    SoloChessError,
    Square,
    apply_capture,
    attacks,
)
from .graphs import CaptureGraph, RootedTree, witness_tree_capture
from .linear import RookString, witness_rooks_1d


class MalformedInstance(SoloChessError):
    pass


class InvalidDominatingSet(SoloChessError):
    pass


class InvalidAssignment(SoloChessError):
    pass


class PlacementOverflow(SoloChessError):
    pass


@dataclass(frozen=True)
class ReductionOutput:
    instance: object
    provenance: dict
    embedded_witness: Optional[tuple] = None


# ---------------------------------------------------------------- source problems


@dataclass(frozen=True)
class RBDSInstance:
    """Bipartite graph with red vertices ``1..n_red`` and blue ``1..n_blue``.

    ``edges`` holds ``(red, blue)`` pairs.
    """

    n_red: int
    n_blue: int
    edges: frozenset
    k: int

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        if self.k < 1:
            raise MalformedInstance("k must be at least 1")
        if self.n_red < 0 or self.n_blue < 0:
            raise MalformedInstance("vertex counts must be non-negative")
        for r, b in self.edges:
            if not (1 <= r <= self.n_red and 1 <= b <= self.n_blue):
                raise MalformedInstance(f"edge ({r}, {b}) out of range")

    def red_neighbors(self, blue: int) -> list[int]:
        return sorted(r for r, b in self.edges if b == blue)

    def dominates(self, reds: Iterable[int]) -> bool:
        reds = set(reds)
        return all(reds.intersection(self.red_neighbors(b)) for b in range(1, self.n_blue + 1))


def rbds_brute_force(inst: RBDSInstance) -> Optional[frozenset]:
    """Smallest-first subset enumeration; returns a dominating set of size <= k or None."""
    for size in range(0, min(inst.k, inst.n_red) + 1):
        for subset in combinations(range(1, inst.n_red + 1), size):
            if inst.dominates(subset):
                return frozenset(subset)
    return None


@dataclass(frozen=True)
class ColorfulRBDSInstance:
    """An RBDS instance whose reds are split into ``k`` equal colour classes.

    ``classes[r - 1]`` is the class (1..k) of red vertex ``r``.
    """

    base: RBDSInstance
    classes: tuple

    def __post_init__(self):
        classes = tuple(self.classes)
        object.__setattr__(self, "classes", classes)
        if len(classes) != self.base.n_red:
            raise MalformedInstance("every red vertex needs a class")
        k = self.base.k
        if any(not 1 <= c <= k for c in classes):
            raise MalformedInstance("class index out of range")
        sizes = {sum(1 for c in classes if c == j) for j in range(1, k + 1)}
        if len(sizes) != 1 or 0 in sizes:
            raise MalformedInstance("colour classes must be non-empty and of equal size")

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def class_size(self) -> int:
        return self.base.n_red // self.base.k

    def members(self, j: int) -> list[int]:
        return [r for r, c in enumerate(self.classes, start=1) if c == j]


def colorful_brute_force(inst: ColorfulRBDSInstance) -> Optional[dict]:
    """Enumerate one red per class; returns ``{class: red}`` or None."""
    for pick in product(*(inst.members(j) for j in range(1, inst.k + 1))):
        if inst.base.dominates(pick):
            return {j: r for j, r in enumerate(pick, start=1)}
    return None


@dataclass(frozen=True)
class CnfFormula:
    """Clauses over variables ``1..n_vars``; literal ``-j`` negates ``x_j``."""

    n_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for c in clauses:
            if not c:
                raise MalformedInstance("empty clause")
            if len(c) > 3:
                raise MalformedInstance(f"clause {c} has more than three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise MalformedInstance(f"literal {lit} out of range")

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)


def cnf_brute_force(phi: CnfFormula) -> Optional[dict]:
    for values in product((False, True), repeat=phi.n_vars):
        assignment = {j: v for j, v in enumerate(values, start=1)}
        if phi.satisfied_by(assignment):
            return assignment
    return None


# ---------------------------------------------------------------- RBDS -> rooks


def _cell(row: int, col: int) -> Square:
    return Square(col, row)


def rbds_to_rooks(inst: RBDSInstance, target_budget: int = 0) -> ReductionOutput:
    """Rook board of height 2m + 1 and width n + m + k + 1.

    Cells are written (row, column) below; squares use ``x = column``.

    The target rook defaults to budget 0. With budget 1 the target can itself
    sweep up one extra 0-rook on the top row, so boards built from NO
    instances with a dominating set of size k + 1 become solvable.
    """
    if target_budget not in (0, 1):
        raise ValueError("target budget must be 0 or 1")
    n, m, k = inst.n_red, inst.n_blue, inst.k
    top = 2 * m + 1
    pieces = []
    prov: dict = {}

    def place(key, row, col, budget):
        sq = _cell(row, col)
        pieces.append(PlacedPiece(PieceKind.ROOK, sq, budget))
        prov.setdefault(key, []).append(sq)

    for i in range(1, n + 1):
        place(("red", i), top, i, 1)
    for j in range(1, m + 1):
        for i in inst.red_neighbors(j):
            place(("blue", j), 2 * j - 1, i, 1)
        place(("collector", j), 2 * j - 1, n + j, 2)
    for c in range(1, k + 1):
        place(("cleaner", c), top, n + m + c, 2)
    place(("target",), top, n + m + k + 1, target_budget)
    prov = {key: tuple(v) for key, v in prov.items()}
    return ReductionOutput(Configuration(tuple(pieces), 2), prov)


def rbds_witness_to_sequence(
    inst: RBDSInstance, dominating_set: Iterable[int], choice: Optional[Mapping[int, int]] = None
) -> list[CaptureMove]:
    """Clear the board of :func:`rbds_to_rooks` given a dominating set.

    ``choice[j]`` picks the dominating neighbour each blue vertex ``j`` collapses
    onto; by default the smallest one.
    """
    S = set(dominating_set)
    n, m, k = inst.n_red, inst.n_blue, inst.k
    if len(S) > k or not S <= set(range(1, n + 1)):
        raise InvalidDominatingSet(f"need at most {k} red vertices, got {sorted(S)}")
    f = {}
    for j in range(1, m + 1):
        nbrs = [i for i in inst.red_neighbors(j) if i in S]
        if not nbrs:
            raise InvalidDominatingSet(f"blue vertex {j} is not dominated")
        f[j] = nbrs[0]
        if choice is not None and j in choice:
            if choice[j] not in nbrs:
                raise InvalidDominatingSet(f"choice for blue vertex {j} is not a dominating neighbour")
            f[j] = choice[j]

    config = rbds_to_rooks(inst).instance
    moves: list[CaptureMove] = []
    top = 2 * m + 1

    def play(src: Square, dst: Square):
        nonlocal config
        move = CaptureMove(src, dst)
        config = apply_capture(config, move)
        moves.append(move)

    # (a) terminal rooks of each row collapse onto column f(j), nearest first
    for j in range(1, m + 1):
        row = 2 * j - 1
        others = [i for i in inst.red_neighbors(j) if i != f[j]]
        for i in sorted(others, key=lambda i: (abs(i - f[j]), i)):
            play(_cell(row, i), _cell(row, f[j]))
    # (b) collectors pick up the collapsed rook and drop it on the top row;
    # rows nearest the top go first so the columns are clear
    for j in range(m, 0, -1):
        row = 2 * j - 1
        play(_cell(row, n + j), _cell(row, f[j]))
        play(_cell(row, f[j]), _cell(top, f[j]))
    # (c) the top row is now a 1D board; clear it onto the target cell
    line = RookString.from_configuration(config)
    moves.extend(
        CaptureMove(Square(mv.src.x, top), Square(mv.dst.x, top))
        for mv in witness_rooks_1d(line, n + m + k + 1)
    )
    return moves


# ---------------------------------------------------------------- queens


def rooks_to_queens(config: Configuration, spacing: Optional[int] = None) -> Configuration:
    """Spread columns apart and turn rooks into queens.

    Column ``x`` becomes ``x * (spacing + 1)``; ``spacing`` defaults to the
    square of the piece count.
    """
    if any(p.kind is not PieceKind.ROOK for p in config.pieces):
        raise ValueError("rooks_to_queens expects an all-rook configuration")
    if spacing is None:
        spacing = len(config) ** 2
    factor = spacing + 1
    return Configuration(
        tuple(PlacedPiece(PieceKind.QUEEN, Square(p.square.x * factor, p.square.y), p.budget) for p in config.pieces),
        config.max_budget,
    )


def _shares_line(a: Square, b: Square) -> bool:
    return attacks(PieceKind.QUEEN, a, b)


def uniformize_queen_budgets(config: Configuration, bound: Optional[int] = None) -> Configuration:
    """Replace each budget-1 queen by two budget-2 queens.

    The original square keeps a budget-2 queen (the partner); a supporting
    queen goes on the partner's north-west diagonal, at the nearest distance
    where it shares no rank, file or diagonal with any other piece. When a
    diagonal would leave the board at column 1, the whole board is first
    shifted right by the smallest amount that makes room (translation does
    not change the game).
    """
    if any(p.kind is not PieceKind.QUEEN for p in config.pieces):
        raise ValueError("uniformize_queen_budgets expects an all-queen configuration")
    if any(p.budget not in (1, 2) for p in config.pieces):
        raise ValueError("queen budgets must be 1 or 2")
    if bound is None:
        width = max((p.square.x for p in config.pieces), default=1)
        bound = 10 * len(config) * width
    for shift in range(0, bound + 1):
        out = _support_queens(config, shift, bound)
        if out is not None:
            return Configuration(tuple(out), 2)
    raise PlacementOverflow("no collision-free north-west placement within the bound")


def _support_queens(config: Configuration, shift: int, bound: int) -> Optional[list]:
    pieces = [PlacedPiece(p.kind, Square(p.square.x + shift, p.square.y), p.budget) for p in config.pieces]
    squares = [p.square for p in pieces]
    out = []
    for p in pieces:
        out.append(PlacedPiece(PieceKind.QUEEN, p.square, 2))
        if p.budget == 2:
            continue
        s = None
        for delta in range(1, min(bound, p.square.x - 1) + 1):
            cand = Square(p.square.x - delta, p.square.y + delta)
            if cand not in squares and all(q == p.square or not _shares_line(cand, q) for q in squares):
                s = cand
                break
        if s is None:
            return None
        squares.append(s)
        out.append(PlacedPiece(PieceKind.QUEEN, s, 2))
    return out


# ---------------------------------------------------------------- colorful RBDS -> graph


def colorful_rbds_to_graph(
    inst: ColorfulRBDSInstance, choice: Optional[Mapping[int, int]] = None
) -> ReductionOutput:
    """Undirected capture graph: the bipartite graph plus selection gadgets,
    one guard per colour class and a star vertex with a two-vertex tail.

    ``choice`` maps each class to its selected red vertex; when it dominates
    every blue vertex the spanning tree from the forward argument is built and
    turned into an embedded clearing sequence.
    """
    base = inst.base
    reds = range(1, base.n_red + 1)
    blues = range(1, base.n_blue + 1)
    vertices: list = []
    edges: list = []
    prov: dict = {}

    def add(key, *names):
        vertices.extend(names)
        prov.setdefault(key, []).extend(names)

    for b in blues:
        add(("blue", b), f"b{b}")
    for r in reds:
        add(("red", r), f"v{r}")
    for r in reds:
        add(("red", r), f"u{r}", f"p{r}", f"q{r}", f"r{r}", f"s{r}")
    for j in range(1, inst.k + 1):
        add(("class", j), f"w{j}")
    add(("star",), "star", "star_p", "star_q")

    edges.extend((f"v{r}", f"b{b}") for r, b in sorted(base.edges))
    gadget = []
    for r in reds:
        gadget += [
            (f"u{r}", f"v{r}"),
            (f"u{r}", f"p{r}"),
            (f"u{r}", f"q{r}"),
            (f"p{r}", f"r{r}"),
            (f"q{r}", f"s{r}"),
            ("star", f"u{r}"),
        ]
    gadget += [("star", "star_p"), ("star_p", "star_q")]
    guards = [(f"w{inst.classes[r - 1]}", f"u{r}") for r in reds]
    edges += gadget + guards
    graph = CaptureGraph.uniform(vertices, edges, 2)
    prov = {key: tuple(v) for key, v in prov.items()}

    witness = None
    if choice is not None:
        chosen = dict(choice)
        if set(chosen) != set(range(1, inst.k + 1)):
            raise InvalidDominatingSet("choose exactly one red vertex per class")
        for j, r in chosen.items():
            if inst.classes[r - 1] != j:
                raise InvalidDominatingSet(f"red vertex {r} is not in class {j}")
        tree_edges = list(gadget)
        for b in blues:
            cls = next((j for j in sorted(chosen) if (chosen[j], b) in base.edges), None)
            if cls is None:
                raise InvalidDominatingSet(f"blue vertex {b} is not dominated")
            tree_edges.append((f"v{chosen[cls]}", f"b{b}"))
        for j in sorted(chosen):
            tree_edges.append((f"u{chosen[j]}", f"w{j}"))
        tree = RootedTree(graph.vertices, tuple(tree_edges), "star")
        witness = tuple(witness_tree_capture(tree))
    return ReductionOutput(graph, prov, witness)


# ---------------------------------------------------------------- 3-SAT -> DAG


def three_sat_to_dag(phi: CnfFormula, assignment: Optional[Mapping[int, bool]] = None) -> ReductionOutput:
    """DAG with a clause vertex per clause, three vertices per variable and a sink.

    Clause ``u_i`` points at ``v_j^T`` (``v_j^F``) when ``x_j`` (``not x_j``)
    occurs in it; both literal vertices point at ``v_j``, and every ``v_j`` at ``w``.
    """
    m, n = len(phi.clauses), phi.n_vars
    vertices = [f"u{i}" for i in range(1, m + 1)]
    for j in range(1, n + 1):
        vertices += [f"v{j}", f"v{j}T", f"v{j}F"]
    vertices.append("w")
    edges = []
    for i, clause in enumerate(phi.clauses, start=1):
        for lit in clause:
            edges.append((f"u{i}", f"v{abs(lit)}{'T' if lit > 0 else 'F'}"))
    for j in range(1, n + 1):
        edges += [(f"v{j}T", f"v{j}"), (f"v{j}F", f"v{j}"), (f"v{j}", "w")]
    graph = CaptureGraph.uniform(vertices, edges, 2, directed=True)
    prov: dict = {("clause", i): (f"u{i}",) for i in range(1, m + 1)}
    for j in range(1, n + 1):
        prov[("var", j)] = (f"v{j}", f"v{j}T", f"v{j}F")
    prov[("sink",)] = ("w",)

    witness = None
    if assignment is not None:
        a = dict(assignment)
        if set(a) != set(range(1, n + 1)) or not phi.satisfied_by(a):
            raise InvalidAssignment("assignment does not satisfy the formula")
        moves = []
        # phase 1: each clause captures at its least satisfying variable
        for i, clause in enumerate(phi.clauses, start=1):
            j = min(abs(l) for l in clause if a[abs(l)] == (l > 0))
            moves.append(CaptureMove(f"u{i}", f"v{j}{'T' if a[j] else 'F'}"))
        # phase 2: the untouched literal vertex captures last at v_j
        for j in range(1, n + 1):
            first, second = ("T", "F") if a[j] else ("F", "T")
            moves.append(CaptureMove(f"v{j}{first}", f"v{j}"))
            moves.append(CaptureMove(f"v{j}{second}", f"v{j}"))
        # phase 3
        for j in range(1, n + 1):
            moves.append(CaptureMove(f"v{j}", "w"))
        witness = tuple(moves)
    return ReductionOutput(graph, prov, witness)
