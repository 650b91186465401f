"""Board geometry, capture legality and configurations for Generalized Solo Chess.

Squares are 1-based ``(x, y)`` lattice points: ``x`` is the column, ``y`` the
row. White pawns capture towards larger ``y``. The board is unbounded.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import Iterable, Optional


class SoloChessError(Exception):
    """Base class for all errors raised by this package."""


class IllegalMove(SoloChessError):
    """Raised by :func:`apply_capture` for a move that is not a legal capture.

    ``reason`` is one of ``"empty"``, ``"zero-budget"``, ``"geometry"`` or
    ``"blocked"``.
    """

    def __init__(self, reason: str, move: "CaptureMove", detail: str = ""):
        self.reason = reason
        self.move = move
        msg = f"illegal capture {move}: {reason}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NonBishopPiece(SoloChessError):
    pass


@total_ordering
@dataclass(frozen=True)
class Square:
    x: int
    y: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1:
            raise ValueError(f"coordinates must be >= 1, got ({self.x},{self.y})")

    @property
    def key(self) -> tuple[int, int]:
        return (self.y, self.x)

    @property
    def color(self) -> int:
        return (self.x + self.y) % 2

    def __lt__(self, other: "Square") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"{self.x},{self.y}"


class PieceKind(Enum):
    ROOK = "R"
    QUEEN = "Q"
    BISHOP = "B"
    KNIGHT = "N"
    PAWN = "P"  # white pawn

    @property
    def letter(self) -> str:
        return self.value

    @classmethod
    def from_letter(cls, letter: str) -> "PieceKind":
        return cls(letter.upper())


LINE_KINDS = frozenset({PieceKind.ROOK, PieceKind.QUEEN, PieceKind.BISHOP})
_KNIGHT_STEPS = frozenset({(1, 2), (2, 1)})


@dataclass(frozen=True)
class PlacedPiece:
    kind: PieceKind
    square: Square
    budget: int

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError("budget must be non-negative")


@dataclass(frozen=True)
class CaptureMove:
    """One capture: the piece (or token) on ``src`` captures the one on ``dst``.

    Used for board squares and for graph vertices alike.
    """

    src: object
    dst: object

    def __str__(self) -> str:
        return f"{self.src} -> {self.dst}"


def attacks(kind: PieceKind, a: Square, b: Square) -> bool:
    """Whether a piece of ``kind`` on ``a`` attacks ``b``, ignoring blockers."""
    dx, dy = b.x - a.x, b.y - a.y
    if dx == 0 and dy == 0:
        return False
    if kind is PieceKind.ROOK:
        return dx == 0 or dy == 0
    if kind is PieceKind.BISHOP:
        return abs(dx) == abs(dy)
    if kind is PieceKind.QUEEN:
        return dx == 0 or dy == 0 or abs(dx) == abs(dy)
    if kind is PieceKind.KNIGHT:
        return (abs(dx), abs(dy)) in _KNIGHT_STEPS
    if kind is PieceKind.PAWN:
        return abs(dx) == 1 and dy == 1
    raise ValueError(kind)


def strictly_between(a: Square, b: Square, c: Square) -> bool:
    """True when ``c`` lies strictly inside the straight segment from ``a`` to ``b``.

    Only meaningful when ``a`` and ``b`` share a rank, file or diagonal.
    """
    dx, dy = b.x - a.x, b.y - a.y
    cx, cy = c.x - a.x, c.y - a.y
    if dx * cy != dy * cx:
        return False
    # c is collinear; check it is on the open segment
    if dx:
        return 0 < cx / dx < 1
    return 0 < cy / dy < 1


def blockers(kind: PieceKind, a: Square, b: Square, occupied: Iterable[Square]) -> list[Square]:
    if kind not in LINE_KINDS:
        return []
    return [c for c in occupied if strictly_between(a, b, c)]


@dataclass(frozen=True)
class Configuration:
    """An immutable set of placed pieces; ``pieces`` is kept sorted by square."""

    pieces: tuple[PlacedPiece, ...]
    max_budget: Optional[int] = None
    _by_square: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pieces = tuple(sorted(self.pieces, key=lambda p: p.square.key))
        by_square = {}
        for p in pieces:
            if p.square in by_square:
                raise ValueError(f"two pieces on square {p.square}")
            by_square[p.square] = p
        d = self.max_budget
        if d is None:
            d = max((p.budget for p in pieces), default=0)
        elif any(p.budget > d for p in pieces):
            raise ValueError(f"piece budget exceeds max budget {d}")
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "max_budget", d)
        object.__setattr__(self, "_by_square", by_square)

    @classmethod
    def of(cls, kind: PieceKind, placements: Iterable[tuple[int, int, int]], max_budget=None) -> "Configuration":
        """Build a single-kind configuration from ``(x, y, budget)`` triples."""
        return cls(tuple(PlacedPiece(kind, Square(x, y), b) for x, y, b in placements), max_budget)

    def __len__(self) -> int:
        return len(self.pieces)

    def __contains__(self, square: Square) -> bool:
        return square in self._by_square

    def at(self, square: Square) -> Optional[PlacedPiece]:
        return self._by_square.get(square)

    @property
    def squares(self) -> tuple[Square, ...]:
        return tuple(p.square for p in self.pieces)

    @property
    def kinds(self) -> frozenset:
        return frozenset(p.kind for p in self.pieces)

    def canonical(self) -> tuple:
        return tuple((p.kind.letter, p.square.x, p.square.y, p.budget) for p in self.pieces)


def check_capture(config: Configuration, move: CaptureMove) -> Optional[str]:
    """Return the reason ``move`` is illegal in ``config``, or None if legal."""
    attacker = config.at(move.src)
    victim = config.at(move.dst)
    if attacker is None or victim is None or move.src == move.dst:
        return "empty"
    if attacker.budget < 1:
        return "zero-budget"
    if not attacks(attacker.kind, move.src, move.dst):
        return "geometry"
    if blockers(attacker.kind, move.src, move.dst, config.squares):
        return "blocked"
    return None


def legal_captures(config: Configuration) -> list[CaptureMove]:
    """All legal captures, ordered by (attacker square, victim square) in (y, x) order."""
    moves = []
    squares = config.squares
    for p in config.pieces:
        if p.budget < 1:
            continue
        for q in config.pieces:
            if q is p or not attacks(p.kind, p.square, q.square):
                continue
            if blockers(p.kind, p.square, q.square, squares):
                continue
            moves.append(CaptureMove(p.square, q.square))
    return moves


def apply_capture(config: Configuration, move: CaptureMove) -> Configuration:
    reason = check_capture(config, move)
    if reason is not None:
        raise IllegalMove(reason, move)
    attacker = config.at(move.src)
    moved = PlacedPiece(attacker.kind, move.dst, attacker.budget - 1)
    rest = tuple(p for p in config.pieces if p.square not in (move.src, move.dst))
    return Configuration(rest + (moved,), config.max_budget)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    moves_applied: int
    remaining: int
    failed_index: Optional[int] = None
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_sequence(config: Configuration, moves: Iterable[CaptureMove]) -> VerificationReport:
    """Replay ``moves`` on ``config``; success iff all are legal and one piece remains."""
    current = config
    applied = 0
    for i, move in enumerate(moves):
        reason = check_capture(current, move)
        if reason is not None:
            return VerificationReport(False, applied, len(current), i, reason)
        current = apply_capture(current, move)
        applied += 1
    if len(current) != 1:
        return VerificationReport(False, applied, len(current), None, "incomplete")
    return VerificationReport(True, applied, 1)


def final_configuration(config: Configuration, moves: Iterable[CaptureMove]) -> Configuration:
    for move in moves:
        config = apply_capture(config, move)
    return config


def rotate_bishops_to_rooks(config: Configuration) -> Configuration:
    """Turn an all-bishop board into an equivalent all-rook board.

    The map ``(x, y) -> (x + y, y - x + offset)`` sends diagonals to files and
    anti-diagonals to ranks; ``offset`` is the smallest shift keeping rows >= 1.
    """
    if any(p.kind is not PieceKind.BISHOP for p in config.pieces):
        raise NonBishopPiece("rotation is defined for all-bishop configurations only")
    offset = max(0, 1 - min((p.square.y - p.square.x for p in config.pieces), default=1))
    return Configuration(
        tuple(
            PlacedPiece(PieceKind.ROOK, Square(p.square.x + p.square.y, p.square.y - p.square.x + offset), p.budget)
            for p in config.pieces
        ),
        config.max_budget,
    )
