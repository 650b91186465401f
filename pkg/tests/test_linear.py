from itertools import product

import pytest

from solochess.board import Configuration, PieceKind, Square, verify_sequence
from solochess.linear import (
    BudgetNotTwo,
    BudgetTooLarge,
    MaxBudgetMismatch,
    NotSolvableAt,
    PawnForest,
    RookString,
    d1_witness,
    decide_d1,
    decide_pawns,
    decide_pawns_super_solvable,
    decide_rooks_1d,
    decide_rooks_1d_d2,
    is_skewed_binary_tree,
    pawn_witness,
    rooks1d_targets,
    witness_rooks_1d,
)
from solochess.oracle import solve_exact

R, N = PieceKind.ROOK, PieceKind.KNIGHT


def rs(s, d=None):
    return RookString.parse(s, d)


# ---------------------------------------------------------------- d = 1


def test_d1_three_rooks_on_a_file():
    c = Configuration.of(R, [(1, 1, 1), (1, 2, 1), (1, 3, 1)])
    dec = decide_d1(c)
    assert dec.solvable
    # any square works once the middle rook captures first; the smallest is returned
    assert dec.target == Square(1, 1)
    for z in c.squares:
        assert verify_sequence(c, d1_witness(c, z)).ok


def test_d1_blockers_capture_first():
    # (1,1) is blocked from (1,4) at first, but the blockers go first
    c = Configuration.of(R, [(1, 1, 1), (1, 2, 1), (1, 3, 1), (1, 4, 0)])
    dec = decide_d1(c)
    assert dec.solvable and dec.target == Square(1, 4)
    assert verify_sequence(c, d1_witness(c, dec.target)).ok
    assert solve_exact(c).solvable


def test_d1_trivial_and_negative():
    assert decide_d1(Configuration.of(R, [(4, 4, 0)])).solvable
    assert not decide_d1(Configuration.of(N, [(1, 1, 1), (5, 5, 1)])).solvable
    with pytest.raises(BudgetTooLarge):
        decide_d1(Configuration.of(R, [(1, 1, 2)]))


# ---------------------------------------------------------------- rook rows


def test_parse_and_print():
    s = rs("0212112100")
    assert str(s) == "0212112100" and s.d == 2 and len(s) == 10
    assert str(rs("1_2")) == "1.2"
    with pytest.raises(ValueError):
        rs("12x")
    with pytest.raises(ValueError):
        RookString((), 2)
    assert RookString.from_configuration(s.to_configuration(row=4)) == s


@pytest.mark.parametrize(
    "s,ok,cell",
    [("0212112100", True, 1), ("1", True, 1), ("200", True, 3), ("00", False, None), ("02", True, 1), ("20", True, 2)],
)
def test_rooks_1d_examples(s, ok, cell):
    dec = decide_rooks_1d(rs(s))
    assert dec.solvable == ok and dec.target == cell
    assert decide_rooks_1d_d2(rs(s, 2)).solvable == ok


def test_d2_form_needs_d2():
    with pytest.raises(MaxBudgetMismatch):
        decide_rooks_1d_d2(rs("3"))


def test_d2_form_matches_general_exhaustively():
    for n in range(1, 9):
        for cells in product((None, 0, 1, 2), repeat=n):
            if all(c is None for c in cells):
                continue
            s = RookString(cells, 2)
            assert decide_rooks_1d(s).solvable == decide_rooks_1d_d2(s).solvable, s


def test_reversal_and_padding_invariance():
    for n in range(1, 7):
        for cells in product((None, 0, 1, 2, 3), repeat=n):
            if all(c is None for c in cells):
                continue
            v = decide_rooks_1d(RookString(cells, 3)).solvable
            assert decide_rooks_1d(RookString(cells[::-1], 3)).solvable == v
            for i in range(n + 1):
                padded = cells[:i] + (None,) + cells[i:]
                assert decide_rooks_1d(RookString(padded, 3)).solvable == v


@pytest.mark.parametrize("target", [1, 3, 10])
def test_fig2_witness_every_target(target):
    s = rs("0212112100")
    moves = witness_rooks_1d(s, target)
    assert len(moves) == 9
    assert verify_sequence(s.to_configuration(), moves).ok
    assert moves[-1].dst == Square(target, 1)


def test_witness_small_cases():
    assert witness_rooks_1d(rs("1"), 1) == []
    assert [str(m) for m in witness_rooks_1d(rs("20"), 2)] == ["1,1 -> 2,1"]
    with pytest.raises(NotSolvableAt):
        witness_rooks_1d(rs("20"), 1)


def test_targets_sorted_and_exact():
    assert rooks1d_targets(rs("0212112100")) == [1, 3, 10]


# ---------------------------------------------------------------- pawns


def pf(*squares):
    return PawnForest.of(squares)


def test_pawn_single():
    assert decide_pawns(pf((3, 3))).solvable
    assert decide_pawns_super_solvable(pf((3, 3))).solvable


def test_pawn_diamond():
    f = pf((2, 4), (1, 3), (3, 3), (2, 2))
    assert decide_pawns(f).solvable == solve_exact(f.to_configuration()).solvable is True
    assert verify_sequence(f.to_configuration(), pawn_witness(f)).ok


def test_pawn_single_child():
    f = pf((2, 4), (1, 3))
    dec = decide_pawns(f)
    assert dec.solvable and dec.reason == "case 1"
    assert decide_pawns_super_solvable(f).solvable
    assert solve_exact(f.to_configuration(), target=Square(2, 4), require_leftover=1).solvable


def test_skewed_binary_tree_examples():
    assert is_skewed_binary_tree({Square(2, 4), Square(1, 3), Square(3, 3)}, Square(2, 4))
    assert is_skewed_binary_tree({Square(5, 5)}, Square(5, 5))
    assert is_skewed_binary_tree({Square(2, 4), Square(1, 3)}, Square(2, 4))
    five = pf((3, 5), (2, 4), (4, 4), (1, 3), (3, 3))
    assert decide_pawns_super_solvable(five).solvable
    chain = pf((3, 5), (2, 4), (1, 3))
    assert not decide_pawns_super_solvable(chain).solvable
    assert not solve_exact(chain.to_configuration(), target=Square(3, 5), require_leftover=1).solvable


def test_pawn_defects():
    assert decide_pawns(pf((1, 1), (2, 1))).reason == "mixed-colors"
    assert decide_pawns(pf((1, 1), (3, 1))).reason == "no-unique-top"
    with pytest.raises(BudgetNotTwo):
        PawnForest.from_configuration(Configuration.of(PieceKind.PAWN, [(1, 1, 1)]))


def test_split_subtrees_case():
    # both children of the top carry their own pawns and share no child
    f = pf((4, 6), (3, 5), (5, 5), (2, 4), (6, 4))
    dec = decide_pawns(f)
    assert dec.reason == "split subtrees"
    assert dec.solvable == solve_exact(f.to_configuration()).solvable


def test_pawn_witness_refuses():
    with pytest.raises(NotSolvableAt):
        pawn_witness(pf((3, 5), (2, 4), (1, 3)), super_solvable=True)
