from itertools import permutations

import pytest
from sympy.functions.combinatorial.numbers import partition as npartitions
from hypothesis import given, strategies as st

from annskein.errors import BoundExceeded, ParseError
from annskein.shapes import (Composition, Partition, SignSequence, SkewShape, column_reading_tableau,
                             composition_to_epsilon, composition_to_ribbon, compositions, dominates,
                             epsilon_to_composition, hook, partitions, row_reading_tableau, sign_sequences,
                             standard_tableaux)

partition_st = st.lists(st.integers(1, 5), max_size=5).map(lambda xs: Partition(sorted(xs, reverse=True)))
composition_st = st.lists(st.integers(1, 4), min_size=1, max_size=5).map(Composition)


def test_partition_parsing_and_validation():
    assert Partition.parse("3,2,1") == (3, 2, 1)
    assert Partition((2, 1, 0)) == (2, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ParseError):
        Partition.parse("3,a")


@pytest.mark.parametrize("n", range(0, 11))
def test_partition_counts_match_sympy(n):
    assert len(partitions(n)) == npartitions(n)
    assert len(set(partitions(n))) == len(partitions(n))


@given(partition_st)
def test_conjugate_is_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size() == lam.size()


def test_hook_length_formula_against_enumeration():
    for n in range(1, 7):
        for lam in partitions(n):
            assert lam.num_standard_tableaux() == len(standard_tableaux(lam))


def test_standard_tableaux_brute_force():
    # fill (2,2) by all permutations of 1..4 and keep the standard ones
    lam = Partition((2, 2))
    count = 0
    for perm in permutations(range(1, 5)):
        rows = [perm[:2], perm[2:]]
        if rows[0][0] < rows[0][1] and rows[1][0] < rows[1][1] and all(rows[0][j] < rows[1][j] for j in range(2)):
            count += 1
    assert count == len(standard_tableaux(lam)) == 2


def test_tableau_bound():
    with pytest.raises(BoundExceeded):
        standard_tableaux((5, 4), bound=8)


def test_reading_tableaux_and_contents():
    T = row_reading_tableau((3, 1))
    assert T.rows == ((1, 2, 3), (4,))
    assert [T.content(k) for k in range(1, 5)] == [0, 1, 2, -1]
    C = column_reading_tableau((3, 1))
    assert C.rows == ((1, 3, 4), (2,))


def test_tableau_swap():
    T = row_reading_tableau((2, 1))
    assert T.swap(1) is None  # 1 and 2 in the same row
    S = T.swap(2)
    assert S is not None and S.rows == ((1, 3), (2,))


def test_hooks_and_dominance():
    assert hook(4, 2) == (2, 1, 1)
    assert hook(4, 2).is_hook() and not Partition((2, 2)).is_hook()
    assert dominates((3, 1), (2, 2)) and not dominates((2, 2), (3, 1))


def test_composition_examples():
    assert Composition.parse("3.2.1.2") == (3, 2, 1, 2)
    assert len(compositions(5)) == 16
    with pytest.raises(ParseError):
        Composition.parse("3..1")


def test_epsilon_composition_example():
    eps = SignSequence.parse("++-+--+")
    assert epsilon_to_composition(eps) == (3, 2, 1, 2)
    assert str(composition_to_epsilon((3, 2, 1, 2))) == "++-+--+"


@given(composition_st)
def test_epsilon_composition_bijection(a):
    eps = composition_to_epsilon(a)
    assert eps.n == a.size()
    assert epsilon_to_composition(eps) == a


def test_sign_sequences_count():
    for n in range(1, 7):
        assert len(sign_sequences(n)) == 2 ** (n - 1)


def test_coarsenings_count():
    # a composition with s parts has 2^(s-1) coarsenings
    a = Composition((3, 2, 1, 2))
    assert len(list(a.coarsenings())) == 8


@given(composition_st)
def test_composition_to_ribbon_is_ribbon(a):
    sh = composition_to_ribbon(a)
    assert sh.is_ribbon()
    assert sh.size() == a.size()
    # row lengths read bottom to top give the composition
    rows = [o - i for o, i in zip(sh.outer, list(sh.inner) + [0] * len(sh.outer))]
    assert tuple(reversed(rows)) == tuple(a)


def test_skew_shape_text_and_checks():
    sh = SkewShape((5, 4, 4, 3), (3, 3, 2))
    assert str(sh) == "5443/332"
    assert sh.is_ribbon()
    assert composition_to_ribbon((3, 2, 1, 2)) == sh
    assert not SkewShape((3, 2), ()).is_ribbon()
    assert SkewShape((2, 2), (1,)).has_2x2_block() is False
    assert SkewShape((2, 2), ()).has_2x2_block()
