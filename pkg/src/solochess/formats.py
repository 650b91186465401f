"""Text formats: board instances, capture graphs, witnesses, DIMACS CNF and RBDS.

Every ``emit_*`` function produces the canonical text of its object and every
``parse_*`` function is strict: unknown tokens, duplicates and out-of-range
values raise :class:`ParseError` with a 1-based line and column.
"""
from __future__ import annotations

import re
from typing import Iterable, Optional, Union

from .board import CaptureMove, Configuration, PieceKind, PlacedPiece, SoloChessError, Square
from .graphs import CaptureGraph
from .reductions import CnfFormula, ColorfulRBDSInstance, MalformedInstance, RBDSInstance

BOARD_HEADER = "solo-chess v1"
GRAPH_HEADER = "capture-graph v1"
RBDS_HEADER = "rbds v1"


class ParseError(SoloChessError):
    """``code`` is a short machine-readable tag such as ``duplicate``."""

    def __init__(self, line: int, column: int, message: str, code: str = "syntax"):
        self.line = line
        self.column = column
        self.code = code
        super().__init__(f"line {line}, column {column}: {message}")


def _lines(text: str):
    """Yield ``(line_no, tokens)`` for non-blank, non-comment lines.

    Each token is ``(column, text)``.
    """
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if not stripped.strip():
            continue
        yield no, [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", stripped)]


def _int(tok, line: int, lo: Optional[int] = None, what: str = "integer") -> int:
    col, s = tok
    try:
        v = int(s)
    except ValueError:
        raise ParseError(line, col, f"expected {what}, got {s!r}") from None
    if lo is not None and v < lo:
        raise ParseError(line, col, f"expected {what} >= {lo}, got {v}", "range")
    return v


def _key_values(tokens, line: int, keys: tuple) -> dict:
    out = {}
    for col, s in tokens:
        k, sep, v = s.partition("=")
        if not sep or k not in keys:
            raise ParseError(line, col, f"expected one of {', '.join(k + '=' for k in keys)}, got {s!r}")
        if k in out:
            raise ParseError(line, col, f"repeated header field {k!r}", "duplicate")
        out[k] = _int((col + len(k) + 1, v), line, 0, f"value for {k}")
    for k in keys:
        if k not in out:
            raise ParseError(line, 1, f"header is missing {k}=", "header")
    return out


def _header(lines: list, expected: str, keys: tuple) -> tuple[int, dict, list]:
    if not lines:
        raise ParseError(1, 1, f"empty input, expected header {expected!r}", "header")
    no, toks = lines[0]
    words = expected.split()
    got = [t for _, t in toks[: len(words)]]
    if got != words:
        raise ParseError(no, toks[0][0], f"expected header {expected!r}", "header")
    return no, _key_values(toks[len(words):], no, keys), lines[1:]


# ---------------------------------------------------------------- boards


def parse_configuration(text: str) -> Configuration:
    lines = list(_lines(text))
    _, hdr, body = _header(lines, BOARD_HEADER, ("d",))
    d = hdr["d"]
    pieces = []
    seen = {}
    for no, toks in body:
        if len(toks) != 4:
            col = toks[4][0] if len(toks) > 4 else toks[-1][0]
            raise ParseError(no, col, "expected '<kind> <x> <y> <budget>'")
        (kc, k), xt, yt, bt = toks
        try:
            kind = PieceKind.from_letter(k)
        except ValueError:
            raise ParseError(no, kc, f"unknown piece kind {k!r}; expected one of R Q B N P") from None
        if k != k.upper():
            raise ParseError(no, kc, f"piece kinds are upper-case, got {k!r}")
        x = _int(xt, no, 1, "x coordinate")
        y = _int(yt, no, 1, "y coordinate")
        b = _int(bt, no, 0, "budget")
        if b > d:
            raise ParseError(no, bt[0], f"budget {b} exceeds d={d}", "budget-exceeds-d")
        sq = Square(x, y)
        if sq in seen:
            raise ParseError(no, xt[0], f"square {sq} already holds a piece (line {seen[sq]})", "duplicate")
        seen[sq] = no
        pieces.append(PlacedPiece(kind, sq, b))
    return Configuration(tuple(pieces), d)


def emit_configuration(config: Configuration) -> str:
    out = [f"{BOARD_HEADER} d={config.max_budget}"]
    out += [f"{p.kind.letter} {p.square.x} {p.square.y} {p.budget}" for p in config.pieces]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- graphs


def parse_graph(text: str) -> CaptureGraph:
    lines = list(_lines(text))
    _, hdr, body = _header(lines, GRAPH_HEADER, ("directed", "d"))
    if hdr["directed"] not in (0, 1):
        raise ParseError(lines[0][0], 1, "directed must be 0 or 1", "range")
    directed = bool(hdr["directed"])
    d = hdr["d"]
    vertices: list = []
    budgets: list = []
    index: dict = {}
    edges: list = []
    seen_edges: dict = {}
    for no, toks in body:
        col, tag = toks[0]
        if tag == "v":
            if edges:
                raise ParseError(no, col, "vertex lines must precede edge lines")
            if len(toks) != 3:
                raise ParseError(no, col, "expected 'v <id> <budget>'")
            vid = toks[1][1]
            if vid in index:
                raise ParseError(no, toks[1][0], f"vertex {vid!r} declared twice", "duplicate")
            b = _int(toks[2], no, 0, "budget")
            if b > d:
                raise ParseError(no, toks[2][0], f"budget {b} exceeds d={d}", "budget-exceeds-d")
            index[vid] = no
            vertices.append(vid)
            budgets.append(b)
        elif tag == "e":
            if len(toks) != 3:
                raise ParseError(no, col, "expected 'e <id1> <id2>'")
            (ac, a), (bc, b) = toks[1], toks[2]
            for c, v in ((ac, a), (bc, b)):
                if v not in index:
                    raise ParseError(no, c, f"unknown vertex {v!r}", "unknown-vertex")
            if a == b:
                raise ParseError(no, bc, f"self-loop on {a!r}", "self-loop")
            key = (a, b) if directed else frozenset((a, b))
            if key in seen_edges:
                raise ParseError(no, col, f"edge repeats line {seen_edges[key]}", "duplicate")
            seen_edges[key] = no
            edges.append((a, b))
        else:
            raise ParseError(no, col, f"expected 'v' or 'e', got {tag!r}")
    if not vertices:
        raise ParseError(lines[-1][0], 1, "graph has no vertices", "empty")
    return CaptureGraph(tuple(vertices), tuple(edges), tuple(budgets), directed, d)


def emit_graph(g: CaptureGraph) -> str:
    out = [f"{GRAPH_HEADER} directed={int(g.directed)} d={g.d}"]
    out += [f"v {v} {b}" for v, b in zip(g.vertices, g.budgets)]
    out += [f"e {a} {b}" for a, b in g.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- dispatch


def parse_instance(text: str) -> Union[Configuration, CaptureGraph]:
    first = next(_lines(text), None)
    if first is not None and first[1][0][1] == GRAPH_HEADER.split()[0]:
        return parse_graph(text)
    return parse_configuration(text)


def emit_instance(instance: Union[Configuration, CaptureGraph]) -> str:
    if isinstance(instance, CaptureGraph):
        return emit_graph(instance)
    return emit_configuration(instance)


def canonicalize(text: str) -> str:
    return emit_instance(parse_instance(text))


# ---------------------------------------------------------------- witnesses


def _square(tok: str, line: int, col: int) -> Square:
    m = re.fullmatch(r"(\d+),(\d+)", tok)
    if not m or int(m.group(1)) < 1 or int(m.group(2)) < 1:
        raise ParseError(line, col, f"expected a square 'x,y', got {tok!r}")
    return Square(int(m.group(1)), int(m.group(2)))


def parse_witness(text: str, graph: bool = False) -> list[CaptureMove]:
    """One move per line, ``src -> dst``; squares are ``x,y``, vertices bare ids."""
    moves = []
    for no, toks in _lines(text):
        if len(toks) != 3 or toks[1][1] != "->":
            raise ParseError(no, toks[0][0], "expected '<src> -> <dst>'")
        (sc, s), _, (dc, d) = toks
        if graph:
            moves.append(CaptureMove(s, d))
        else:
            moves.append(CaptureMove(_square(s, no, sc), _square(d, no, dc)))
    return moves


def emit_witness(moves: Iterable[CaptureMove]) -> str:
    return "".join(f"{m}\n" for m in moves)


# ---------------------------------------------------------------- DIMACS


def parse_dimacs(text: str) -> CnfFormula:
    n_vars = n_clauses = None
    clauses: list = []
    current: list = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if n_vars is not None:
                raise ParseError(no, 1, "second problem line", "duplicate")
            parts = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", raw)]
            if len(parts) != 4 or parts[1][1] != "cnf":
                raise ParseError(no, 1, "expected 'p cnf <vars> <clauses>'", "header")
            n_vars = _int(parts[2], no, 0, "variable count")
            n_clauses = _int(parts[3], no, 0, "clause count")
            continue
        if n_vars is None:
            raise ParseError(no, 1, "clause before the 'p cnf' line", "header")
        for m in re.finditer(r"\S+", raw):
            lit = _int((m.start() + 1, m.group()), no, None, "literal")
            if lit == 0:
                if not current:
                    raise ParseError(no, m.start() + 1, "empty clause", "empty-clause")
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n_vars:
                raise ParseError(no, m.start() + 1, f"literal {lit} exceeds {n_vars} variables", "range")
            else:
                current.append(lit)
    if n_vars is None:
        raise ParseError(1, 1, "missing 'p cnf' line", "header")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != n_clauses:
        raise ParseError(len(text.splitlines()) or 1, 1, f"declared {n_clauses} clauses, found {len(clauses)}", "count")
    try:
        return CnfFormula(n_vars, tuple(clauses))
    except MalformedInstance as e:
        raise ParseError(1, 1, str(e), "malformed") from None


def emit_dimacs(phi: CnfFormula) -> str:
    out = [f"p cnf {phi.n_vars} {len(phi.clauses)}"]
    out += [" ".join(str(l) for l in c) + " 0" for c in phi.clauses]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- RBDS


def parse_rbds(text: str) -> Union[RBDSInstance, ColorfulRBDSInstance]:
    lines = list(_lines(text))
    hno, hdr, body = _header(lines, RBDS_HEADER, ("n", "m", "k"))
    edges: dict = {}
    classes: dict = {}
    for no, toks in body:
        col, tag = toks[0]
        if tag not in ("edge", "class") or len(toks) != 3:
            raise ParseError(no, col, "expected 'edge <red> <blue>' or 'class <red> <j>'")
        a = _int(toks[1], no, 1, "red vertex")
        b = _int(toks[2], no, 1, "blue vertex" if tag == "edge" else "class")
        if a > hdr["n"]:
            raise ParseError(no, toks[1][0], f"red vertex {a} exceeds n={hdr['n']}", "range")
        if tag == "edge":
            if b > hdr["m"]:
                raise ParseError(no, toks[2][0], f"blue vertex {b} exceeds m={hdr['m']}", "range")
            if (a, b) in edges:
                raise ParseError(no, col, f"edge repeats line {edges[(a, b)]}", "duplicate")
            edges[(a, b)] = no
        else:
            if a in classes:
                raise ParseError(no, col, f"red vertex {a} already has a class", "duplicate")
            classes[a] = (b, no)
    try:
        base = RBDSInstance(hdr["n"], hdr["m"], frozenset(edges), hdr["k"])
        if not classes:
            return base
        if set(classes) != set(range(1, hdr["n"] + 1)):
            raise MalformedInstance("every red vertex needs a class line")
        return ColorfulRBDSInstance(base, tuple(classes[r][0] for r in range(1, hdr["n"] + 1)))
    except MalformedInstance as e:
        raise ParseError(hno, 1, str(e), "malformed") from None


def emit_rbds(inst: Union[RBDSInstance, ColorfulRBDSInstance]) -> str:
    base = inst.base if isinstance(inst, ColorfulRBDSInstance) else inst
    out = [f"{RBDS_HEADER} n={base.n_red} m={base.n_blue} k={base.k}"]
    out += [f"edge {r} {b}" for r, b in sorted(base.edges)]
    if isinstance(inst, ColorfulRBDSInstance):
        out += [f"class {r} {c}" for r, c in enumerate(inst.classes, start=1)]
    return "\n".join(out) + "\n"
