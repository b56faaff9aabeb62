from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from annskein.errors import BoundExceeded, ConsistencyError
from annskein.groupalg import (GroupAlgElem, class_representative, compose, cycle_type, frobenius_character,
                               inverse, regular, regular_basis, right_ideal_image, sign, solomon_ideal_basis,
                               solomon_projectors, transposition, young_idempotent)
from annskein.shapes import SignSequence, epsilon_to_composition, partitions, sign_sequences, standard_tableaux
from annskein.symfunc import SymFunc, psi, s

perms = st.integers(1, 5).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


def elem(n, d):
    return GroupAlgElem(n, d)


def test_composition_order_on_s3():
    # (st)(i) = s(t(i)): the right factor acts first
    s1, s2 = transposition(3, 1), transposition(3, 2)
    assert compose(s1, s2) == (1, 2, 0)
    assert compose(s2, s1) == (2, 0, 1)
    table = {(a, b): compose(a, b) for a in permutations(range(3)) for b in permutations(range(3))}
    for (a, b), c in table.items():
        for i in range(3):
            assert c[i] == a[b[i]]


@given(perms, perms)
def test_permutation_group_laws(a, b):
    if len(a) != len(b):
        return
    assert compose(a, inverse(a)) == tuple(range(len(a)))
    assert sign(compose(a, b)) == sign(a) * sign(b)
    assert cycle_type(compose(compose(b, a), inverse(b))) == cycle_type(a)


def test_class_representative_cycle_types():
    for n in range(1, 6):
        for mu in partitions(n):
            assert cycle_type(class_representative(mu, n)) == mu


def test_group_algebra_arithmetic():
    e0 = GroupAlgElem.identity(3)
    x = GroupAlgElem.group_element(transposition(3, 1))
    assert x * x == e0
    half = (e0 + x).scale(Fraction(1, 2))
    assert half.is_idempotent()
    assert (half * (e0 - x)).is_zero()


def test_regular_rep_multiplication_matches_direct():
    reg = regular(3)
    x = elem(3, {transposition(3, 1): 2, (1, 2, 0): Fraction(1, 3)})
    y = elem(3, {transposition(3, 2): -1, (0, 1, 2): 1})
    assert reg.multiply(x, y) == x * y
    assert reg.element(reg.vector(x)) == x


def test_young_idempotent_examples():
    for n in range(1, 5):
        triv = young_idempotent((n,))
        alt = young_idempotent((1,) * n)
        for g in permutations(range(n)):
            assert triv.coeff(g) == Fraction(1, factorial(n))
            assert alt.coeff(g) == Fraction(sign(g), factorial(n))
    e21 = young_idempotent((2, 1))
    assert e21.is_idempotent()
    assert len(right_ideal_image(e21)) == 2


@pytest.mark.parametrize("n", range(1, 6))
def test_young_idempotents_generate_irreducibles(n):
    for lam in partitions(n):
        e = young_idempotent(lam)
        image = right_ideal_image(e)
        assert len(image) == lam.num_standard_tableaux()
        assert frobenius_character(image) == s(lam)


def test_young_idempotent_for_other_tableau():
    for T in standard_tableaux((2, 1)):
        e = young_idempotent((2, 1), T)
        assert e.is_idempotent()
        assert frobenius_character(right_ideal_image(e)) == s(2, 1)


@pytest.mark.parametrize("n", range(2, 5))
def test_young_idempotents_orthogonal_up_to_isomorphism(n):
    # e_lam Q[S_n] e_mu = 0 whenever lam != mu
    group = regular(n).elements
    for lam in partitions(n):
        for mu in partitions(n):
            if lam == mu:
                continue
            el, em = young_idempotent(lam), young_idempotent(mu)
            for g in group:
                assert (el * GroupAlgElem.group_element(g) * em).is_zero()


def test_regular_character():
    for n in range(1, 5):
        expect = SymFunc("s", {lam: lam.num_standard_tableaux() for lam in partitions(n)})
        assert frobenius_character(regular_basis(n)) == expect


def test_solomon_examples():
    sp = solomon_ideal_basis(SignSequence.parse("+"))
    sm = solomon_ideal_basis(SignSequence.parse("-"))
    assert len(sp) == len(sm) == 1
    projs = solomon_projectors(2)
    e0, t = (0, 1), (1, 0)
    assert projs[SignSequence.parse("+")] == elem(2, {e0: Fraction(1, 2), t: Fraction(1, 2)})
    assert projs[SignSequence.parse("-")] == elem(2, {e0: Fraction(1, 2), t: Fraction(-1, 2)})
    dims = [len(solomon_ideal_basis(eps)) for eps in sign_sequences(3)]
    assert sorted(dims) == [1, 1, 2, 2] and sum(dims) == 6


def test_solomon_characters_n3_n4():
    assert frobenius_character(solomon_ideal_basis(SignSequence.parse("+-"))) == s(2, 1)
    four = frobenius_character(solomon_ideal_basis(SignSequence.parse("+-+")))
    assert epsilon_to_composition(SignSequence.parse("+-+")) == (2, 2)
    assert four == SymFunc("s", {(2, 2): 1, (3, 1): 1})


@pytest.mark.parametrize("n", range(1, 6))
def test_solomon_decomposition(n):
    projs = solomon_projectors(n, verify=True)
    total = GroupAlgElem(n)
    for eps in sign_sequences(n):
        p = projs[eps]
        assert p.is_idempotent()
        total = total + p
        basis = solomon_ideal_basis(eps)
        assert frobenius_character(basis) == psi(epsilon_to_composition(eps))
    assert total == GroupAlgElem.identity(n)
    assert sum(len(solomon_ideal_basis(eps)) for eps in sign_sequences(n)) == factorial(n)


def test_trivial_projector_fixes_symmetrizer():
    for n in range(2, 5):
        triv = young_idempotent((n,))
        p = solomon_projectors(n)[SignSequence((1,) * (n - 1))]
        assert triv * p == triv


def test_frobenius_rejects_unstable_span():
    x = GroupAlgElem.group_element((1, 0, 2))
    with pytest.raises(ConsistencyError):
        frobenius_character([x])


def test_group_bound(monkeypatch):
    monkeypatch.setenv("SKEIN_MAX_DEGREE", "3")
    with pytest.raises(BoundExceeded):
        young_idempotent((2, 2))
    with pytest.raises(BoundExceeded):
        solomon_projectors(4)
