"""Exact brute-force solver for capture games.

Pieces only ever move onto occupied squares, so every position reachable from
a configuration lives on a subset of its initial squares. The search indexes
those squares once, precomputes attack lists and blocker masks, and runs a
memoized depth-first search over per-square ``(kind, budget)`` cells.

The same engine drives the graph capture game (see :mod:`solochess.graphs`),
where the "squares" are vertices and attacks are edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

from .board import (
    LINE_KINDS,
    CaptureMove,
    Configuration,
    PieceKind,
    SoloChessError,
    Square,
    attacks,
    strictly_between,
)

DEFAULT_STATE_CAP = 10**7

_EMPTY = -1
_BUDGET_BITS = 6
_BUDGET_MASK = (1 << _BUDGET_BITS) - 1


class SearchBudgetExceeded(SoloChessError):
    """The search visited more canonical states than its cap allows."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"search exceeded {cap} states; instance too large for the exact solver")


@dataclass(frozen=True)
class SolveResult:
    solvable: bool
    witness: Optional[tuple[CaptureMove, ...]]
    states_explored: int
    target: Optional[Hashable] = None

    def __bool__(self) -> bool:
        return self.solvable


class Arena:
    """Indexed sites plus, per piece kind, the attack list of every site.

    ``moves[kind][i]`` is a list of ``(j, blocker_mask)`` pairs sorted by ``j``.
    ``neighbors[i]`` is the undirected union of all attack relations, used for
    the connectivity bound. ``symmetric`` marks arenas where every attack
    relation is symmetric, which enables the stranded-leaf bound.
    """

    def __init__(self, sites: Sequence[Hashable], moves, symmetric: bool):
        self.sites = list(sites)
        self.index = {s: i for i, s in enumerate(self.sites)}
        self.moves = moves
        self.symmetric = symmetric
        n = len(self.sites)
        neighbors = [0] * n
        for per_kind in moves:
            for i, lst in enumerate(per_kind):
                for j, _ in lst:
                    neighbors[i] |= 1 << j
                    neighbors[j] |= 1 << i
        self.neighbors = neighbors


def board_arena(config: Configuration, kinds: Sequence[PieceKind]) -> Arena:
    squares = list(config.squares)
    n = len(squares)
    moves = []
    for kind in kinds:
        per_site = []
        for i, a in enumerate(squares):
            lst = []
            for j, b in enumerate(squares):
                if i == j or not attacks(kind, a, b):
                    continue
                mask = 0
                if kind in LINE_KINDS:
                    for k in range(n):
                        if k != i and k != j and strictly_between(a, b, squares[k]):
                            mask |= 1 << k
                lst.append((j, mask))
            per_site.append(lst)
        moves.append(per_site)
    symmetric = PieceKind.PAWN not in kinds
    return Arena(squares, moves, symmetric)


def encode(kind_index: int, budget: int) -> int:
    if budget > _BUDGET_MASK:
        raise ValueError(f"budget {budget} too large for the exact solver")
    return (kind_index << _BUDGET_BITS) | budget


class _Search:
    def __init__(self, arena: Arena, target: Optional[int], leftover: int, memo: bool, cap: int):
        self.arena = arena
        self.target_bit = None if target is None else 1 << target
        self.leftover = leftover
        self.memo = memo
        self.cap = cap
        self.failed: set = set()
        self.explored = 0
        self.path: list[tuple[int, int]] = []
        self.final_site: Optional[int] = None

    def connected(self, mask: int) -> bool:
        nbrs = self.arena.neighbors
        seen = mask & -mask
        frontier = seen
        while frontier:
            grow = 0
            f = frontier
            while f:
                low = f & -f
                grow |= nbrs[low.bit_length() - 1]
                f ^= low
            frontier = grow & mask & ~seen
            seen |= frontier
        return seen == mask

    def stranded(self, cells, mask: int) -> bool:
        # A budget-0 piece with a single potential neighbour can only be taken
        # by that neighbour, and that capture isolates it: it must be the last
        # move. Two such pieces cannot both be last.
        nbrs = self.arena.neighbors
        count = 0
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            if cells[i] & _BUDGET_MASK == 0 and (nbrs[i] & mask).bit_count() == 1:
                count += 1
                if count > 1:
                    return True
        return False

    def run(self, cells: tuple, mask: int, count: int) -> bool:
        if count == 1:
            i = mask.bit_length() - 1
            if self.target_bit is not None and mask != self.target_bit:
                return False
            if cells[i] & _BUDGET_MASK < self.leftover:
                return False
            self.final_site = i
            return True
        if self.target_bit is not None and not mask & self.target_bit:
            return False
        if self.memo and cells in self.failed:
            return False
        self.explored += 1
        if self.explored > self.cap:
            raise SearchBudgetExceeded(self.cap)
        if not self.connected(mask) or (self.arena.symmetric and count > 2 and self.stranded(cells, mask)):
            if self.memo:
                self.failed.add(cells)
            return False
        moves = self.arena.moves
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            cell = cells[i]
            budget = cell & _BUDGET_MASK
            if budget == 0:
                continue
            for j, block in moves[cell >> _BUDGET_BITS][i]:
                if not (mask >> j) & 1 or mask & block:
                    continue
                nxt = list(cells)
                nxt[i] = _EMPTY
                nxt[j] = cell - 1
                if self.run(tuple(nxt), mask & ~low, count - 1):
                    self.path.append((i, j))
                    return True
        if self.memo:
            self.failed.add(cells)
        return False


def search(
    arena: Arena,
    cells: Sequence[int],
    target: Optional[Hashable] = None,
    require_leftover: int = 0,
    memo: bool = True,
    state_cap: int = DEFAULT_STATE_CAP,
) -> SolveResult:
    """Depth-first search from ``cells`` (one encoded cell per arena site)."""
    cells = tuple(cells)
    mask = 0
    for i, c in enumerate(cells):
        if c != _EMPTY:
            mask |= 1 << i
    if not mask:
        raise ValueError("cannot solve an empty position")
    target_index = None
    if target is not None:
        target_index = arena.index.get(target)
        if target_index is None or not (mask >> target_index) & 1:
            return SolveResult(False, None, 0)
    s = _Search(arena, target_index, require_leftover, memo, state_cap)
    ok = s.run(cells, mask, bin(mask).count("1"))
    if not ok:
        return SolveResult(False, None, s.explored)
    sites = arena.sites
    witness = tuple(CaptureMove(sites[i], sites[j]) for i, j in reversed(s.path))
    return SolveResult(True, witness, s.explored, sites[s.final_site])


def _prepare(config: Configuration):
    kinds = sorted(config.kinds, key=lambda k: k.value)
    arena = board_arena(config, kinds)
    kind_index = {k: n for n, k in enumerate(kinds)}
    cells = [encode(kind_index[p.kind], p.budget) for p in config.pieces]
    return arena, cells


def solve_exact(
    config: Configuration,
    target: Optional[Square] = None,
    require_leftover: int = 0,
    *,
    memo: bool = True,
    state_cap: int = DEFAULT_STATE_CAP,
) -> SolveResult:
    """Decide whether ``config`` can be cleared down to one piece.

    With ``target`` the last piece must stand on that square; with
    ``require_leftover`` it must keep at least that many captures. The witness
    is the first solution in canonical move order.
    """
    if len(config) == 0:
        raise ValueError("configuration has no pieces")
    arena, cells = _prepare(config)
    return search(arena, cells, target, require_leftover, memo, state_cap)


def solve_all_targets(config: Configuration, *, state_cap: int = DEFAULT_STATE_CAP) -> dict[Square, bool]:
    if len(config) == 0:
        raise ValueError("configuration has no pieces")
    arena, cells = _prepare(config)
    return {sq: search(arena, cells, sq, 0, True, state_cap).solvable for sq in config.squares}


def canonical_state(config: Configuration) -> tuple:
    return config.canonical()
