import random

import pytest
from hypothesis import given, settings, strategies as st

from annskein.errors import BoundExceeded, ParseError
from annskein.exactcore import LaurentPoly, quantum_integer
from annskein.hecke import (BraidWord, annular_trace, braid_action, jucys_murphy_word, rep_trace,
                            seminormal_rep, slN_invariant)
from annskein.shapes import Partition, partitions
from annskein.symfunc import SymFunc, h1_power, mn_character

q = LaurentPoly.monomial(1)
qi = LaurentPoly.monomial(-1)


def at_one(f: LaurentPoly):
    return sum(f.coeffs.values())


def permutation_cycle_type(beta: BraidWord):
    """Cycle type of the image of beta in S_n, computed by tracking strands."""
    n = beta.strands
    perm = list(range(n))
    for x in beta.letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, lengths = set(), []
    for start in range(n):
        if start in seen:
            continue
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def test_braid_word_parse_and_str():
    b = BraidWord.parse("n=3: 1 2 -1")
    assert b == BraidWord(3, (1, 2, -1))
    assert str(b) == "n=3: 1 2 -1"
    assert str(BraidWord(2)) == "n=2:"
    assert b.inverse() == BraidWord(3, (1, -2, -1))
    for bad in ["3: 1 2", "n=2: 2", "n=2: 0", "n=x: 1"]:
        with pytest.raises(ParseError):
            BraidWord.parse(bad)


@pytest.mark.parametrize("n", range(1, 6))
def test_seminormal_relations(n):
    # the constructor runs the quadratic, braid, commutation and JM checks
    for lam in partitions(n):
        rep = seminormal_rep(lam)
        assert rep.dim == lam.num_standard_tableaux()
        rep.verify()


def test_two_strand_traces():
    assert annular_trace(BraidWord(2, (1,))) == SymFunc("s", {(2,): q, (1, 1): -qi})
    assert annular_trace(BraidWord(2)) == SymFunc("s", {(2,): 1, (1, 1): 1})
    assert slN_invariant(BraidWord(2, (1, 1)), 2) == LaurentPoly({4: 1, 2: 1, 0: 1, -2: 1})


def test_identity_braid_gives_h1_power():
    for n in range(1, 6):
        assert annular_trace(BraidWord(n)) == h1_power(n)


def test_unknot_and_q_equal_one_slN():
    for N in range(1, 5):
        assert slN_invariant(BraidWord(1), N) == quantum_integer(N)
    # at q = 1 the closure evaluates to N^(number of components)
    rng = random.Random(3)
    for n in range(1, 5):
        for _ in range(3):
            beta = random_word(rng, n, rng.randint(0, 5)) if n > 1 else BraidWord(1)
            for N in range(1, 4):
                assert at_one(slN_invariant(beta, N)) == N ** len(permutation_cycle_type(beta))


def test_jm_elements_act_by_contents():
    rep = seminormal_rep((3, 2))
    for k in range(1, 6):
        L = rep.jm_matrix(k)
        for a, T in enumerate(rep.basis):
            assert L[a, a].to_laurent() == LaurentPoly.monomial(2 * T.content(k))
    assert jucys_murphy_word(4, 3).letters == (2, 1, 1, 2)


def random_word(rng, n, length):
    return BraidWord(n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)))


def test_q_equal_one_gives_symmetric_group_characters():
    rng = random.Random(7)
    for n in range(2, 6):
        for _ in range(4):
            beta = random_word(rng, n, rng.randint(0, 6))
            mu = permutation_cycle_type(beta)
            for lam in partitions(n):
                assert at_one(rep_trace(beta, lam)) == mn_character(tuple(lam), mu)


words = st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=5),
    st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=4)).map(
        lambda pair: (BraidWord(n, tuple(pair[0])), BraidWord(n, tuple(pair[1])))))


@settings(max_examples=40, deadline=None)
@given(words)
def test_trace_is_conjugation_invariant(pair):
    beta, g = pair
    assert annular_trace(g * beta * g.inverse()) == annular_trace(beta)
    assert annular_trace(beta * g) == annular_trace(g * beta)


@settings(max_examples=30, deadline=None)
@given(words)
def test_braid_and_inverse_cancel(pair):
    beta, _ = pair
    assert annular_trace(beta * beta.inverse()) == h1_power(beta.strands)


def test_action_dimension_checks():
    with pytest.raises(ValueError):
        braid_action(BraidWord(3, (1,)), (2,))
    M = braid_action(BraidWord(3, (1, 2)), (2, 1))
    assert M.shape == (2, 2)


def test_bounds(monkeypatch):
    monkeypatch.setenv("SKEIN_MAX_DEGREE", "3")
    with pytest.raises(BoundExceeded):
        annular_trace(BraidWord(4, (1,)))
    with pytest.raises(BoundExceeded):
        seminormal_rep(Partition((2, 2)))
