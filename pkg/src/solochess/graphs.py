"""The graph capture game.

Every vertex starts with one token; a token may capture a token on a
neighbouring vertex (along edge direction for directed graphs), moving there
and spending one unit of its budget. The goal is a single remaining token.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

from .board import CaptureMove, Configuration, PieceKind, SoloChessError, VerificationReport, attacks
from .oracle import DEFAULT_STATE_CAP, Arena, SearchBudgetExceeded, SolveResult, encode, search


class NotSolvable(SoloChessError):
    pass


class NotADag(SoloChessError):
    pass


class NonUniformBudgets(SoloChessError):
    pass


@dataclass(frozen=True)
class CaptureGraph:
    vertices: tuple
    edges: tuple
    budgets: tuple
    directed: bool = False
    d: Optional[int] = None
    _adj: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex")
        budgets = tuple(self.budgets)
        if len(budgets) != len(vertices):
            raise ValueError("one budget per vertex required")
        if any(b < 0 for b in budgets):
            raise ValueError("budgets must be non-negative")
        d = self.d if self.d is not None else max(budgets, default=0)
        if any(b > d for b in budgets):
            raise ValueError(f"budget exceeds d={d}")
        index = set(vertices)
        adj = {v: [] for v in vertices}
        seen = set()
        edges = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in index or v not in index:
                raise ValueError(f"edge ({u!r}, {v!r}) references an unknown vertex")
            key = (u, v) if self.directed else frozenset((u, v))
            if key in seen:
                continue
            seen.add(key)
            edges.append((u, v))
            adj[u].append(v)
            if not self.directed:
                adj[v].append(u)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "budgets", budgets)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def uniform(cls, vertices: Iterable, edges: Iterable, budget: int = 2, directed: bool = False) -> "CaptureGraph":
        vertices = tuple(vertices)
        return cls(vertices, tuple(edges), (budget,) * len(vertices), directed, budget)

    def out_neighbors(self, v) -> list:
        return self._adj[v]

    def budget(self, v) -> int:
        return self.budgets[self.vertices.index(v)]

    def has_edge(self, u, v) -> bool:
        return v in self._adj[u]

    def is_connected(self) -> bool:
        """Weak connectivity."""
        if not self.vertices:
            return True
        und = {v: set() for v in self.vertices}
        for u, v in self.edges:
            und[u].add(v)
            und[v].add(u)
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in und[u] - seen:
                seen.add(w)
                queue.append(w)
        return len(seen) == len(self.vertices)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for _, v in self.edges:
            indeg[v] += 1
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        count = 0
        while queue:
            u = queue.popleft()
            count += 1
            for w in self._adj[u]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return count == len(self.vertices)


def knight_graph(config: Configuration) -> CaptureGraph:
    """The capture graph of an all-knight board; vertex ids are ``"x,y"``.

    Knights jump, so the board game and the graph game coincide.
    """
    if any(p.kind is not PieceKind.KNIGHT for p in config.pieces):
        raise ValueError("knight_graph expects an all-knight configuration")
    ps = config.pieces
    edges = [
        (str(a.square), str(b.square))
        for i, a in enumerate(ps)
        for b in ps[i + 1:]
        if attacks(PieceKind.KNIGHT, a.square, b.square)
    ]
    return CaptureGraph(tuple(str(p.square) for p in ps), tuple(edges), tuple(p.budget for p in ps), False, config.max_budget)


def graph_arena(g: CaptureGraph) -> Arena:
    index = {v: i for i, v in enumerate(g.vertices)}
    moves = [[sorted((index[w], 0) for w in g.out_neighbors(v)) for v in g.vertices]]
    return Arena(g.vertices, moves, symmetric=not g.directed)


# Undirected graphs above this size are solved through their spanning trees.
DIRECT_SEARCH_LIMIT = 16


def solve_graph_exact(
    g: CaptureGraph,
    target: Optional[Hashable] = None,
    require_leftover: int = 0,
    *,
    memo: bool = True,
    state_cap: int = DEFAULT_STATE_CAP,
    method: str = "auto",
) -> SolveResult:
    """Exact solver for the graph capture game.

    ``method="search"`` runs the memoized state search. ``"spanning-trees"``
    (undirected only) tries every rooted spanning tree with
    :func:`solve_rooted_tree`; it is exact because the edges used by any
    clearing form a spanning tree, and the game on a tree is a subgame of the
    game on the graph. ``"auto"`` picks the search for directed graphs and for
    graphs of at most :data:`DIRECT_SEARCH_LIMIT` vertices.
    """
    if not g.vertices:
        raise ValueError("graph has no vertices")
    if method not in ("auto", "search", "spanning-trees"):
        raise ValueError(f"unknown method {method!r}")
    if len(g.vertices) > 1 and not g.is_connected():
        return SolveResult(False, None, 0)
    if method == "auto":
        method = "search" if g.directed or len(g.vertices) <= DIRECT_SEARCH_LIMIT else "spanning-trees"
    if method == "search":
        cells = [encode(0, b) for b in g.budgets]
        return search(graph_arena(g), cells, target, require_leftover, memo, state_cap)
    if g.directed:
        raise ValueError("the spanning-tree method needs an undirected graph")
    return _solve_by_spanning_trees(g, target, require_leftover, state_cap)


def solve_rooted_tree(t: "RootedTree", budgets: dict) -> tuple[Optional[int], list[CaptureMove]]:
    """Play the capture game on a tree, ending on its root.

    Only a leaf can capture without disconnecting the tree, and the root never
    moves, so every vertex except the root is emptied by exactly one capture
    towards its parent, after all its children have captured into it. The
    token that leaves a vertex is the one delivered by its last child, so the
    best outcome keeps the child with the most budget for last. Returns the
    budget left on the final token (None if the tree cannot be cleared) and a
    clearing sequence.
    """
    order = {v: i for i, v in enumerate(t.vertices)}
    best: dict = {}
    last: dict = {}
    stack = [(t.root, False)]
    while stack:
        v, done = stack.pop()
        kids = t.children(v)
        if not done:
            stack.append((v, True))
            stack.extend((c, False) for c in kids)
            continue
        if not kids:
            best[v] = budgets[v]
            continue
        if any(best[c] is None or best[c] < 1 for c in kids):
            best[v] = None
            continue
        top = max(kids, key=lambda c: (best[c], -order[c]))
        last[v] = top
        left = best[top] - 1
        best[v] = left if v == t.root or left >= 1 else None
    if best[t.root] is None:
        return None, []
    return best[t.root], _postorder_moves(t, last)


def _postorder_moves(t: "RootedTree", last: dict) -> list[CaptureMove]:
    moves: list[CaptureMove] = []

    def emit(v):
        kids = t.children(v)
        for c in [c for c in kids if c != last.get(v)] + ([last[v]] if v in last else []):
            emit(c)
            moves.append(CaptureMove(c, v))

    emit(t.root)
    return moves


def _solve_by_spanning_trees(g: CaptureGraph, target, require_leftover: int, cap: int) -> SolveResult:
    budgets = dict(zip(g.vertices, g.budgets))
    if len(g.vertices) == 1:
        v = g.vertices[0]
        ok = (target is None or target == v) and budgets[v] >= require_leftover
        return SolveResult(ok, () if ok else None, 1, v if ok else None)
    roots = g.vertices if target is None else [target]
    if target is not None and target not in budgets:
        return SolveResult(False, None, 0)
    examined = 0
    for edges in spanning_trees(g.vertices, g.edges):
        base = RootedTree(g.vertices, edges, roots[0])
        for root in roots:
            examined += 1
            if examined > cap:
                raise SearchBudgetExceeded(cap)
            t = base if root == base.root else base.rerooted(root)
            left, moves = solve_rooted_tree(t, budgets)
            if left is not None and left >= require_leftover:
                return SolveResult(True, tuple(moves), examined, root)
    return SolveResult(False, None, examined)


def solve_dag_exact(g: CaptureGraph, **kwargs) -> SolveResult:
    if not g.directed or not g.is_acyclic():
        raise NotADag("solve_dag_exact needs a directed acyclic graph")
    return solve_graph_exact(g, **kwargs)


def verify_graph_sequence(g: CaptureGraph, moves: Iterable[CaptureMove]) -> VerificationReport:
    budgets = dict(zip(g.vertices, g.budgets))
    applied = 0
    for i, m in enumerate(moves):
        if m.src not in budgets or m.dst not in budgets or m.src == m.dst:
            return VerificationReport(False, applied, len(budgets), i, "empty")
        if budgets[m.src] < 1:
            return VerificationReport(False, applied, len(budgets), i, "zero-budget")
        if not g.has_edge(m.src, m.dst):
            return VerificationReport(False, applied, len(budgets), i, "geometry")
        budgets[m.dst] = budgets.pop(m.src) - 1
        applied += 1
    if len(budgets) != 1:
        return VerificationReport(False, applied, len(budgets), None, "incomplete")
    return VerificationReport(True, applied, 1)


# ---------------------------------------------------------------- rooted trees


@dataclass(frozen=True)
class RootedTree:
    vertices: tuple
    edges: tuple
    root: Hashable
    _children: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if self.root not in vertices:
            raise ValueError("root is not a vertex")
        if len(self.edges) != len(vertices) - 1:
            raise ValueError("a tree on n vertices has n - 1 edges")
        adj = {v: [] for v in vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        order = {v: i for i, v in enumerate(vertices)}
        children = {v: [] for v in vertices}
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u], key=order.__getitem__):
                if w not in seen:
                    seen.add(w)
                    children[u].append(w)
                    queue.append(w)
        if len(seen) != len(vertices):
            raise ValueError("edges do not form a spanning tree")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "_children", children)

    def children(self, v) -> list:
        return self._children[v]

    def is_leaf(self, v) -> bool:
        return not self._children[v]

    def has_leaf_child(self, v) -> bool:
        return any(self.is_leaf(c) for c in self._children[v])

    def rerooted(self, root) -> "RootedTree":
        return RootedTree(self.vertices, self.edges, root)

    def as_graph(self, budget: int = 2) -> CaptureGraph:
        return CaptureGraph.uniform(self.vertices, self.edges, budget)


def _one_solvable(t: RootedTree, w) -> bool:
    kids = t.children(w)
    if not kids:
        return True
    return t.has_leaf_child(w) and all(_one_solvable(t, c) for c in kids)


def tree_solvable_recursive(t: RootedTree, level: int) -> bool:
    """0-solvable: every child subtree is 1-solvable. 1-solvable: a single
    vertex, or the root has a leaf child and every child subtree is 1-solvable.
    """
    if level not in (0, 1):
        raise ValueError("level must be 0 or 1")
    kids = t.children(t.root)
    subtrees_ok = all(_one_solvable(t, c) for c in kids)
    if level == 0:
        return subtrees_ok
    return not kids or (t.has_leaf_child(t.root) and subtrees_ok)


def tree_solvable_structural(t: RootedTree, level: int) -> bool:
    """Every internal vertex other than the root has a leaf neighbour; for
    level 1 the root needs one as well (unless the tree is a single vertex).
    """
    if level not in (0, 1):
        raise ValueError("level must be 0 or 1")
    zero = all(
        t.has_leaf_child(v) for v in t.vertices if v != t.root and not t.is_leaf(v)
    )
    if level == 0:
        return zero
    return len(t.vertices) == 1 or (zero and t.has_leaf_child(t.root))


def tree_solvable(t: RootedTree, level: int) -> bool:
    rec = tree_solvable_recursive(t, level)
    assert rec == tree_solvable_structural(t, level), "tree characterizations disagree"
    return rec


def postorder_captures(root, children: dict, key: Callable = None) -> list[CaptureMove]:
    """Clear a departure tree onto ``root``.

    Each node first absorbs its non-leaf children (each cleared onto itself
    beforehand), then the smallest leaf child captures last, so the token left
    on the node still has a capture to spare.
    """
    moves: list[CaptureMove] = []

    def emit(node):
        kids = sorted(children.get(node, ()), key=key)
        leaves = [c for c in kids if not children.get(c)]
        reserved = leaves[0] if leaves else None
        for c in [c for c in kids if c != reserved] + ([reserved] if leaves else []):
            emit(c)
            moves.append(CaptureMove(c, node))

    emit(root)
    return moves


def witness_tree_capture(t: RootedTree) -> list[CaptureMove]:
    if not tree_solvable(t, 0):
        raise NotSolvable(f"tree rooted at {t.root!r} is not 0-solvable")
    order = {v: i for i, v in enumerate(t.vertices)}
    children = {v: t.children(v) for v in t.vertices}
    return postorder_captures(t.root, children, key=order.__getitem__)


# ---------------------------------------------------------------- spanning trees


def spanning_trees(vertices: Sequence, edges: Sequence) -> Iterator[tuple]:
    """Yield every spanning tree (as an edge tuple) by include/exclude branching."""
    vertices = list(vertices)
    n = len(vertices)
    if n == 0:
        return
    if n == 1:
        yield ()
        return
    edges = list(edges)
    index = {v: i for i, v in enumerate(vertices)}

    def find(parent, a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def connectable(chosen, start):
        parent = list(range(n))
        comps = n
        for u, v in list(chosen) + edges[start:]:
            ru, rv = find(parent, index[u]), find(parent, index[v])
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        return comps == 1

    def rec(i, chosen, parent):
        if len(chosen) == n - 1:
            yield tuple(chosen)
            return
        if i == len(edges) or not connectable(chosen, i):
            return
        u, v = edges[i]
        ru, rv = find(parent, index[u]), find(parent, index[v])
        if ru != rv:
            p2 = parent[:]
            p2[ru] = rv
            yield from rec(i + 1, chosen + [(u, v)], p2)
        yield from rec(i + 1, chosen, parent)

    yield from rec(0, [], list(range(n)))


@dataclass(frozen=True)
class CharacterizationResult:
    solvable: bool
    tree: Optional[RootedTree]
    trees_examined: int

    def __bool__(self) -> bool:
        return self.solvable


def decide_undirected_by_characterization(g: CaptureGraph, tree_cap: int = 10**6) -> CharacterizationResult:
    """Reference decider: look for a rooted spanning tree in which every
    internal non-root vertex has a leaf neighbour. Exponential by design.
    """
    if g.directed:
        raise ValueError("characterization applies to undirected graphs")
    if any(b != 2 for b in g.budgets):
        raise NonUniformBudgets("characterization assumes every budget is 2")
    if len(g.vertices) == 1:
        return CharacterizationResult(True, RootedTree(g.vertices, (), g.vertices[0]), 1)
    if not g.is_connected():
        return CharacterizationResult(False, None, 0)
    examined = 0
    for edges in spanning_trees(g.vertices, g.edges):
        examined += 1
        if examined > tree_cap:
            raise SearchBudgetExceeded(tree_cap)
        base = RootedTree(g.vertices, edges, g.vertices[0])
        for root in g.vertices:
            t = base if root == base.root else base.rerooted(root)
            if tree_solvable_structural(t, 0):
                return CharacterizationResult(True, t, examined)
    return CharacterizationResult(False, None, examined)


def used_edges(moves: Iterable[CaptureMove]) -> set:
    return {frozenset((m.src, m.dst)) for m in moves}


def is_spanning_tree(vertices: Sequence, edges: Iterable) -> bool:
    edges = [tuple(e) for e in edges]
    if len(edges) != len(vertices) - 1:
        return False
    try:
        RootedTree(tuple(vertices), tuple(edges), vertices[0])
    except ValueError:
        return False
    return True
