import random
import warnings

import pytest
import sympy

from annskein.annular import (BigradedLaurent, apply_dictionary, axis_linked_word, coxeter_braid,
                              coxeter_crosscheck, coxeter_invariant_formula, elementary_at, hook_powersum_check,
                              hopf_hecke_oracle, hopf_mirror, hopf_pairing, hopf_symmetric_check,
                              pinned_dictionary, wedge_alphabet, wedge_wrap_closed_form, wedge_wrap_dims)
from annskein.errors import ConsistencyError
from annskein.exactcore import LaurentPoly, quantum_integer
from annskein.hecke import BraidWord, annular_trace, slN_invariant
from annskein.shapes import Partition, SignSequence, partitions, sign_sequences
from annskein.symfunc import SymFunc, e, h, hook_powersum_expansion, multiply, principal_spec, s

q = LaurentPoly.monomial(1)
qi = LaurentPoly.monomial(-1)
Q, T = sympy.symbols("q t")


def to_sympy(f: BigradedLaurent):
    return sum((sympy.Rational(c) * Q ** a * T ** b for (a, b), c in f.terms.items()), sympy.Integer(0))


def test_coxeter_braid_examples():
    assert str(coxeter_braid(SignSequence.parse("++"))) == "n=3: 2 1"
    assert str(coxeter_braid(SignSequence.parse("-"))) == "n=2: -1"
    assert str(coxeter_braid(SignSequence.parse("+-+"))) == "n=4: 3 -2 1"


def test_formula_two_strands():
    assert coxeter_invariant_formula(SignSequence.parse("-")) == SymFunc("s", {(2,): -q, (1, 1): qi})
    assert coxeter_invariant_formula(SignSequence.parse("+")) == SymFunc("s", {(2,): -qi, (1, 1): q})


@pytest.mark.parametrize("n", range(1, 6))
def test_all_plus_formula_against_h_e_expansion(n):
    # h_n[X(q^-1 - q)] = sum_k (-1)^k q^(2k-n) h_{n-k} e_k
    expand = SymFunc("s")
    for k in range(n + 1):
        expand = expand + multiply(h(n - k), e(k)).scale(LaurentPoly({2 * k - n: (-1) ** k}))
    lhs = coxeter_invariant_formula(SignSequence((1,) * (n - 1))).scale(qi - q)
    assert lhs == expand.scale((-1) ** (n - 1))


def test_pinned_dictionary_is_mirror():
    assert pinned_dictionary() == "mirror"


@pytest.mark.parametrize("n", range(2, 5))
def test_formula_matches_traces(n):
    for eps in sign_sequences(n):
        r = coxeter_crosscheck(eps)
        assert r.agree and r.dictionary == "mirror"


def test_crosscheck_fails_loudly_on_wrong_dictionary(monkeypatch):
    import annskein.annular as annular
    monkeypatch.setattr(annular, "pinned_dictionary", lambda: "identity")
    with pytest.raises(ConsistencyError):
        coxeter_crosscheck(SignSequence.parse("+"))


def test_hook_powersum_sum_identity():
    for n in range(1, 6):
        r = hook_powersum_check(n)
        assert r.total == hook_powersum_expansion(n).scale(quantum_integer(n))
    # the alternating-sign variant only matches at n = 1
    assert hook_powersum_check(1).alternating_agree
    assert not hook_powersum_check(2).alternating_agree


def test_skein_relation_on_random_words():
    rng = random.Random(11)
    z = q - qi
    for _ in range(30):
        n = rng.randint(2, 4)

        def word():
            return tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 3)))
        a, b, i = word(), word(), rng.randint(1, n - 1)
        plus = annular_trace(BraidWord(n, a + (i,) + b))
        minus = annular_trace(BraidWord(n, a + (-i,) + b))
        assert plus - minus == annular_trace(BraidWord(n, a + b)).scale(z)


def test_dictionary_application():
    f = SymFunc("s", {(2,): q})
    assert apply_dictionary("mirror", f) == SymFunc("s", {(2,): -qi})
    assert apply_dictionary("bar", f) == SymFunc("s", {(2,): qi})


# -- Hopf pairings ------------------------------------------------------------

def test_hopf_examples():
    assert hopf_pairing((1,), s(1), 2) == (q + qi) * (LaurentPoly.monomial(-3) + q)
    for N in range(1, 5):
        for f in (s(2), s(1, 1), e(3), h(2) * s(1)):
            assert hopf_pairing((), f, N) == principal_spec(f, N)


def test_hopf_orientation_pinned_by_hecke_oracle():
    assert hopf_mirror() is True
    assert hopf_pairing((1,), s(1), 2) == slN_invariant(BraidWord(2, (-1, -1)), 2)
    for N in range(1, 5):
        assert hopf_pairing((1,), s(1), N) == hopf_hecke_oracle(N)


def test_hopf_axis_linked_oracle():
    for beta in (BraidWord(2, (1,)), BraidWord(2, (1, 1, 1)), BraidWord(3, (2, -1))):
        for N in (2, 3):
            assert hopf_pairing((1,), annular_trace(beta), N) == slN_invariant(axis_linked_word(beta), N)


def test_hopf_linearity():
    f, g = s(2, 1), e(2) * s(1)
    for lam in [(1,), (2,), (1, 1)]:
        assert hopf_pairing(lam, f + g.scale(q), 3) == hopf_pairing(lam, f, 3) + q * hopf_pairing(lam, g, 3)


def test_hopf_symmetry_grid():
    assert hopf_symmetric_check((1,), (2,), 3)
    assert hopf_symmetric_check((2, 1), (1, 1), 4)
    parts = [Partition(())] + [lam for k in range(1, 4) for lam in partitions(k)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for N in range(1, 4):
            for lam in parts:
                for mu in parts:
                    assert hopf_symmetric_check(lam, mu, N)


def test_hopf_long_partition_warns():
    with pytest.warns(UserWarning):
        assert hopf_pairing((1, 1, 1), s(1), 2) == 0
    with pytest.raises(ValueError):
        hopf_pairing((1,), s(1), 0)


# -- wedge-wrap dimensions ------------------------------------------------------

def test_wedge_wrap_examples():
    assert wedge_wrap_dims(1, 1, 2) == BigradedLaurent({(1, 0): 1, (-3, -2): 1})
    # i = N: only the t^-2 letters remain
    for N in range(1, 5):
        expect = sum((BigradedLaurent.monomial(N - 3 - 2 * k, -2) for k in range(N)), BigradedLaurent())
        assert wedge_wrap_dims(N, 1, N) == expect
    # a single t^-2 letter, so no t^-4 term
    assert wedge_wrap_dims(1, 2, 3) == BigradedLaurent({(2, 0): 1, (-2, -2): 1, (-4, -2): 1})


def test_wedge_wrap_against_sympy_expansion():
    z = sympy.Symbol("z")
    for N in range(1, 5):
        for i in range(1, N + 1):
            letters = [to_sympy(x) for x in wedge_alphabet(i, N)]
            gen = sympy.expand(sympy.prod([1 + x * z for x in letters]))
            for j in range(1, N + 1):
                got = wedge_wrap_closed_form(i, j, N)
                assert sympy.expand(to_sympy(got) - gen.coeff(z, j)) == 0


def test_wedge_wrap_at_t_minus_one():
    for N in range(1, 4):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                f = wedge_wrap_dims(i, j, N)
                assert f.at_t(-1) == f.at_t(1)  # only even t powers occur
                assert all(c > 0 for c in f.terms.values())


def test_wedge_wrap_errors():
    for args in ((0, 1, 2), (3, 1, 2), (1, 3, 2)):
        with pytest.raises(ValueError):
            wedge_wrap_dims(*args)


def test_bigraded_laurent_arithmetic():
    x = BigradedLaurent.monomial(1, -2, 3)
    assert str(x) == "3*t^-2*q"
    assert x * BigradedLaurent.monomial(-1, 2) == BigradedLaurent(3)
    assert (x + x) - x == x
    assert BigradedLaurent.monomial(2, 1) ** -1 == BigradedLaurent.monomial(-2, -1)
    assert elementary_at(0, []) == 1
    assert x.to_json() == [{"q": 1, "t": -2, "coeff": "3"}]
