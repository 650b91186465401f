"""Command-line front end.

Exit codes: 0 solvable / ok, 1 unsolvable / failed check, 2 usage error,
3 parse error, 4 the exact solver ran out of states.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .board import CaptureMove, Configuration, PieceKind, Square, verify_sequence
from .formats import (
    ParseError,
    emit_configuration,
    emit_dimacs,
    emit_graph,
    emit_instance,
    emit_rbds,
    emit_witness,
    parse_configuration,
    parse_dimacs,
    parse_instance,
    parse_rbds,
    parse_witness,
)
from .generate import FAMILIES, UnsupportedFamily, gen_instance
from .graphs import (
    CaptureGraph,
    RootedTree,
    decide_undirected_by_characterization,
    solve_graph_exact,
    tree_solvable,
    verify_graph_sequence,
    witness_tree_capture,
)
from .linear import (
    PawnForest,
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
from .oracle import DEFAULT_STATE_CAP, SearchBudgetExceeded, solve_exact
from .reductions import (
    ColorfulRBDSInstance,
    RBDSInstance,
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
from .sweep import SWEEP_FAMILIES, run_sweep

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_PARSE, EXIT_OVERFLOW = 0, 1, 2, 3, 4

ALGOS = ("rooks1d", "rooks1d-d2", "pawns", "pawns-super", "d1", "tree", "characterization")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def _report(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _verdict(args, solvable: bool, extra: dict, moves=None, detail: str = "") -> int:
    payload = {"solvable": solvable, **extra}
    if moves is not None:
        payload["witness"] = [str(m) for m in moves]
    text = "SOLVABLE" if solvable else "UNSOLVABLE"
    if detail:
        text += f" ({detail})"
    _report(args, payload, text)
    if solvable and moves is not None and getattr(args, "witness", None):
        _write(args.witness, emit_witness(moves))
    return EXIT_OK if solvable else EXIT_NO


def _parse_target(instance, raw: Optional[str]):
    if raw is None:
        return None
    if isinstance(instance, CaptureGraph):
        return raw
    try:
        x, y = (int(v) for v in raw.split(","))
        return Square(x, y)
    except ValueError:
        raise UsageError(f"--target must look like x,y; got {raw!r}") from None


# ---------------------------------------------------------------- solve


def cmd_solve(args) -> int:
    instance = parse_instance(_read(args.instance))
    target = _parse_target(instance, args.target)
    if isinstance(instance, CaptureGraph):
        res = solve_graph_exact(
            instance, target, args.leftover, state_cap=args.state_cap, method=args.method
        )
    else:
        if len(instance) == 0:
            raise UsageError("instance has no pieces")
        res = solve_exact(instance, target, args.leftover, state_cap=args.state_cap)
    final = None if res.target is None else str(res.target)
    return _verdict(args, res.solvable, {"final": final, "states": res.states_explored}, res.witness if res.solvable else None)


# ---------------------------------------------------------------- decide


def _auto_algo(instance) -> str:
    if isinstance(instance, CaptureGraph):
        if instance.directed:
            raise UsageError("no fast decider for directed graphs; use 'solve'")
        if len(instance.edges) == len(instance.vertices) - 1 and instance.is_connected():
            return "tree"
        return "characterization"
    kinds = instance.kinds
    if kinds == {PieceKind.ROOK} and len({p.square.y for p in instance.pieces}) == 1:
        return "rooks1d"
    if kinds == {PieceKind.PAWN} and all(p.budget == 2 for p in instance.pieces):
        return "pawns"
    if all(p.budget <= 1 for p in instance.pieces):
        return "d1"
    raise UsageError("no fast decider applies to this board; use 'solve' for the exact search")


def _decide_board(args, config: Configuration, algo: str) -> int:
    if algo in ("rooks1d", "rooks1d-d2"):
        try:
            s = RookString.from_configuration(config)
        except ValueError as e:
            raise UsageError(str(e)) from None
        row = config.pieces[0].square.y
        dec = decide_rooks_1d(s) if algo == "rooks1d" else decide_rooks_1d_d2(s)
        moves = witness_rooks_1d(s, dec.target, row) if dec.solvable else None
        extra = {"algo": algo, "string": str(s), "final": None if dec.target is None else str(Square(dec.target, row))}
        return _verdict(args, dec.solvable, extra, moves)
    if algo in ("pawns", "pawns-super"):
        forest = PawnForest.from_configuration(config)
        sup = algo == "pawns-super"
        dec = decide_pawns_super_solvable(forest) if sup else decide_pawns(forest)
        moves = pawn_witness(forest, sup) if dec.solvable else None
        extra = {"algo": algo, "reason": dec.reason, "final": None if dec.target is None else str(dec.target)}
        return _verdict(args, dec.solvable, extra, moves, dec.reason or "")
    if algo == "d1":
        dec = decide_d1(config)
        moves = d1_witness(config, dec.target) if dec.solvable else None
        return _verdict(args, dec.solvable, {"algo": algo, "final": None if dec.target is None else str(dec.target)}, moves)
    raise UsageError(f"--algo {algo} applies to capture graphs, not boards")


def _decide_graph(args, g: CaptureGraph, algo: str) -> int:
    if g.directed:
        raise UsageError("tree and characterization deciders need an undirected graph")
    if any(b != 2 for b in g.budgets):
        raise UsageError("tree and characterization deciders need every budget to be 2; use 'solve'")
    if algo == "tree":
        if len(g.edges) != len(g.vertices) - 1 or not g.is_connected():
            raise UsageError("--algo tree needs a tree")
        roots = [args.root] if args.root is not None else list(g.vertices)
        if args.root is not None and args.root not in g.vertices:
            raise UsageError(f"unknown root {args.root!r}")
        for root in roots:
            t = RootedTree(g.vertices, g.edges, root)
            if tree_solvable(t, 0):
                return _verdict(args, True, {"algo": algo, "final": root}, witness_tree_capture(t))
        return _verdict(args, False, {"algo": algo, "final": None})
    if algo == "characterization":
        res = decide_undirected_by_characterization(g)
        moves = witness_tree_capture(res.tree) if res.solvable else None
        final = res.tree.root if res.solvable else None
        return _verdict(args, res.solvable, {"algo": algo, "final": final, "trees": res.trees_examined}, moves)
    raise UsageError(f"--algo {algo} applies to boards, not capture graphs")


def cmd_decide(args) -> int:
    if (args.instance is None) == (args.rooks1d is None):
        raise UsageError("give exactly one of an instance file or --rooks1d STRING")
    if args.rooks1d is not None:
        try:
            s = RookString.parse(args.rooks1d)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if all(c is None for c in s.cells):
            raise UsageError("rook string has no pieces")
        algo = args.algo or "rooks1d"
        return _decide_board(args, s.to_configuration(), algo)
    instance = parse_instance(_read(args.instance))
    if isinstance(instance, Configuration) and len(instance) == 0:
        raise UsageError("instance has no pieces")
    algo = args.algo or _auto_algo(instance)
    if isinstance(instance, CaptureGraph):
        return _decide_graph(args, instance, algo)
    return _decide_board(args, instance, algo)


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    instance = parse_instance(_read(args.instance))
    graph = isinstance(instance, CaptureGraph)
    moves = parse_witness(_read(args.witness_file), graph=graph)
    rep = verify_graph_sequence(instance, moves) if graph else verify_sequence(instance, moves)
    payload = {"ok": rep.ok, "moves": rep.moves_applied, "remaining": rep.remaining,
               "failed_index": rep.failed_index, "reason": rep.reason}
    if rep.ok:
        text = f"OK ({rep.moves_applied} moves)"
    elif rep.failed_index is not None:
        text = f"FAIL at move {rep.failed_index + 1}: {rep.reason}"
    else:
        text = f"FAIL: {rep.remaining} pieces remain"
    _report(args, payload, text)
    return EXIT_OK if rep.ok else EXIT_NO


# ---------------------------------------------------------------- reduce


def cmd_reduce(args) -> int:
    text = _read(args.source)
    moves = None
    if args.kind in ("rbds-rooks", "colorful-graph"):
        inst = parse_rbds(text)
        if args.kind == "rbds-rooks":
            base = inst.base if isinstance(inst, ColorfulRBDSInstance) else inst
            out = rbds_to_rooks(base, args.target_budget).instance
            if args.witness:
                S = rbds_brute_force(base)
                if S is not None and args.target_budget == 0:
                    moves = rbds_witness_to_sequence(base, S)
        else:
            if not isinstance(inst, ColorfulRBDSInstance):
                raise UsageError("colorful-graph needs 'class' lines in the rbds file")
            choice = colorful_brute_force(inst) if args.witness else None
            red = colorful_rbds_to_graph(inst, choice)
            out, moves = red.instance, red.embedded_witness
    elif args.kind == "sat-dag":
        phi = parse_dimacs(text)
        a = cnf_brute_force(phi) if args.witness else None
        red = three_sat_to_dag(phi, a)
        out, moves = red.instance, red.embedded_witness
    else:
        config = parse_configuration(text)
        if args.kind == "rooks-queens":
            if config.kinds - {PieceKind.ROOK}:
                raise UsageError("rooks-queens needs an all-rook board")
            out = rooks_to_queens(config, args.spacing)
        else:
            if config.kinds - {PieceKind.QUEEN}:
                raise UsageError("uniformize needs an all-queen board")
            if any(p.budget not in (1, 2) for p in config.pieces):
                raise UsageError("uniformize needs queen budgets of 1 or 2")
            out = uniformize_queen_budgets(config)
    _write(args.output, emit_instance(out))
    if args.witness:
        if moves is None:
            print("no witness: the source instance has no solution", file=sys.stderr)
            return EXIT_NO
        _write(args.witness, emit_witness(moves))
    return EXIT_OK


# ---------------------------------------------------------------- gen, sweep


def cmd_gen(args) -> int:
    inst = gen_instance(args.family, args.size, args.seed)
    if isinstance(inst, RookString):
        text = f"{inst}\n"
    elif isinstance(inst, (RBDSInstance, ColorfulRBDSInstance)):
        text = emit_rbds(inst)
    elif isinstance(inst, CaptureGraph):
        text = emit_graph(inst)
    elif isinstance(inst, Configuration):
        text = emit_configuration(inst)
    else:
        text = emit_dimacs(inst)
    _write(args.output, text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    kw: dict = {}
    if args.family == "rooks1d":
        kw = {"max_len": args.max_len, "d": args.d, "seed": args.seed}
        if not args.exhaustive:
            kw["samples"] = args.samples
    elif args.family == "pawns":
        kw = {"samples": args.samples, "seed": args.seed}
    elif args.family in ("trees", "graphs"):
        kw = {"max_n": args.max_n or (9 if args.family == "trees" else 6)}
    elif args.family == "d1":
        kw = {"max_pieces": args.max_pieces}
    elif args.family == "reductions":
        kw = {"rbds_seeds": args.seeds, "cnf_seeds": args.seeds, "colorful_seeds": max(1, args.seeds // 2)}
    elif args.family == "queens":
        kw = {"seeds": args.seeds}
    reports = run_sweep(args.family, **kw)
    bad = sum(len(r.mismatches) for r in reports)
    if args.json:
        print(json.dumps([{"family": r.family, "checked": r.checked, "mismatches": r.mismatches} for r in reports], sort_keys=True))
    else:
        for r in reports:
            print(r.summary())
            for m in r.mismatches[:10]:
                print(f"  {m}")
        print(f"{bad} mismatches")
    return EXIT_OK if bad == 0 else EXIT_NO


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solochess", description="Generalized Solo Chess and Graph Capture toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, witness: bool = True):
        sp.add_argument("--json", action="store_true", help="structured output")
        if witness:
            sp.add_argument("--witness", metavar="PATH", help="write the clearing sequence here when solvable")

    s = sub.add_parser("solve", help="exact search on a board or capture graph")
    s.add_argument("instance", help="instance file ('-' for stdin)")
    s.add_argument("--target", help="square x,y or vertex id the last piece must stand on")
    s.add_argument("--leftover", type=int, default=0, help="captures the last piece must keep")
    s.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    s.add_argument("--method", choices=("auto", "search", "spanning-trees"), default="auto",
                   help="graph solver strategy")
    common(s)
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("decide", help="polynomial-time decider, chosen from the instance or --algo")
    d.add_argument("instance", nargs="?", help="instance file")
    d.add_argument("--rooks1d", metavar="STRING", help="1D rook row such as 0212112100")
    d.add_argument("--algo", choices=ALGOS)
    d.add_argument("--root", help="root vertex for --algo tree")
    common(d)
    d.set_defaults(func=cmd_decide)

    v = sub.add_parser("verify", help="replay a witness against an instance")
    v.add_argument("instance")
    v.add_argument("witness_file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="compile a source instance")
    r.add_argument("kind", choices=("rbds-rooks", "rooks-queens", "uniformize", "colorful-graph", "sat-dag"))
    r.add_argument("source")
    r.add_argument("-o", "--output", help="output path (default stdout)")
    r.add_argument("--witness", metavar="PATH", help="solve the source by brute force and write the forward clearing")
    r.add_argument("--spacing", type=int, help="empty columns between rook columns (default: pieces squared)")
    r.add_argument("--target-budget", type=int, choices=(0, 1), default=0, help="budget of the rook on the target cell")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gen", help="seeded random instance")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--size", type=int, default=6)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    w = sub.add_parser("sweep", help="decider-versus-oracle equivalence sweep")
    w.add_argument("family", choices=SWEEP_FAMILIES)
    w.add_argument("--exhaustive", action="store_true", help="rooks1d: every string up to --max-len")
    w.add_argument("--max-len", type=int, default=6)
    w.add_argument("--d", type=int, default=2)
    w.add_argument("--samples", type=int, default=2000)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--max-n", type=int)
    w.add_argument("--max-pieces", type=int, default=5)
    w.add_argument("--seeds", type=int, default=200)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SearchBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (UsageError, UnsupportedFamily) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
