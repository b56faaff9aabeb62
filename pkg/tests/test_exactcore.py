from fractions import Fraction

import flint
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from annskein.errors import NotAFieldError, NotIdempotentError, ParseError
from annskein.exactcore import (BiLaurent, LaurentPoly, Matrix, RatFunc, bar_involution, determinant,
                                mirror_substitute, quantum_binomial, quantum_integer, rank_kernel,
                                solve_coordinates, split_idempotent)

Q = sympy.Symbol("q")

laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonzero_laurent = laurent.filter(bool)


def to_sympy(f: LaurentPoly):
    return sum((sympy.Rational(c) * Q ** e for e, c in f.coeffs.items()), sympy.Integer(0))


def test_construction_drops_zeros_and_normalizes():
    f = LaurentPoly({2: 1, 0: 0, -1: Fraction(4, 2)})
    assert f.coeffs == {2: 1, -1: 2}
    assert isinstance(f.coeff(-1), int)
    assert LaurentPoly() == 0
    assert LaurentPoly(3) == 3


def test_quantum_integer_examples():
    assert quantum_integer(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert str(quantum_integer(2)) == "q+q^-1"
    assert quantum_integer(0) == 0


def test_quantum_binomial_pascal_rule():
    # [n choose k] = q^-k [n-1 choose k] + q^(n-k) [n-1 choose k-1] in balanced form
    for n in range(1, 8):
        for k in range(1, n):
            lhs = quantum_binomial(n, k)
            rhs = LaurentPoly.monomial(-k) * quantum_binomial(n - 1, k) + LaurentPoly.monomial(n - k) * quantum_binomial(n - 1, k - 1)
            assert lhs == rhs


def test_str_forms():
    assert str(LaurentPoly({4: 1, 2: 1, 0: 1, -2: 1})) == "q^4+q^2+1+q^-2"
    assert str(LaurentPoly({-1: Fraction(-3, 2)})) == "-3/2*q^-1"
    assert str(LaurentPoly()) == "0"


@pytest.mark.parametrize("text,expected", [
    ("q^4+q^2+1+q^-2", {4: 1, 2: 1, 0: 1, -2: 1}),
    ("-3/2*q^-1", {-1: Fraction(-3, 2)}),
    ("2q - q^-3", {1: 2, -3: -1}),
    ("0", {}),
])
def test_parse(text, expected):
    assert LaurentPoly.parse(text) == LaurentPoly(expected)


@pytest.mark.parametrize("bad", ["q^", "x+1", "q^2^3", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        LaurentPoly.parse(bad)


@given(laurent)
def test_str_parse_roundtrip(f):
    assert LaurentPoly.parse(str(f)) == f


@given(laurent, laurent)
def test_arithmetic_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f + g) - (to_sympy(f) + to_sympy(g))) == 0
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sympy.expand(to_sympy(f - g) - (to_sympy(f) - to_sympy(g))) == 0


@given(laurent, nonzero_laurent)
def test_exact_division_inverts_multiplication(f, g):
    assert (f * g).exact_div(g) == f


def test_exact_division_failure():
    with pytest.raises(ArithmeticError):
        LaurentPoly({0: 1}).exact_div(LaurentPoly({1: 1, 0: 1}))


@given(laurent)
def test_involutions(f):
    assert f.bar().bar() == f
    assert f.mirror().mirror() == f
    assert bar_involution(f) == f.bar()
    assert mirror_substitute(f) == f.mirror()


def test_mirror_is_q_to_minus_q_inverse():
    f = LaurentPoly({1: 1, -2: 3})
    assert f.mirror() == LaurentPoly({-1: -1, 2: 3})


@given(laurent, laurent)
def test_bar_is_ring_morphism(f, g):
    assert (f * g).bar() == f.bar() * g.bar()
    assert (f + g).mirror() == f.mirror() + g.mirror()


def test_monomial_powers():
    assert LaurentPoly.monomial(2) ** -2 == LaurentPoly.monomial(-4)
    assert LaurentPoly({1: 1, 0: 1}) ** 2 == LaurentPoly({2: 1, 1: 2, 0: 1})
    with pytest.raises(ValueError):
        LaurentPoly({1: 1, 0: 1}) ** -1


@given(laurent, nonzero_laurent)
def test_ratfunc_field_axioms(f, g):
    a, b = RatFunc.from_laurent(f), RatFunc.from_laurent(g)
    assert (a / b) * b == a
    assert (a + b) - b == a
    assert b * b.inverse() == RatFunc(1)


def test_ratfunc_to_laurent():
    z = RatFunc.from_laurent(LaurentPoly({1: 1, -1: -1}))
    one_minus = 1 - RatFunc.from_laurent(LaurentPoly.monomial(-2))
    assert (z / one_minus).to_laurent() == LaurentPoly.monomial(1)
    with pytest.raises(ArithmeticError):
        (RatFunc(1) / RatFunc.from_laurent(LaurentPoly({1: 1, 0: 1}))).to_laurent()


def test_bilaurent_specialization():
    # (a - a^-1)/(q - q^-1) at a = q^N is [N]
    num = BiLaurent.from_terms({(1, 0): 1, (-1, 0): -1})
    den = BiLaurent.from_terms({(0, 1): 1, (0, -1): -1})
    f = num / den
    for N in range(1, 5):
        assert f.specialize_a(N).to_laurent() == quantum_integer(N)


def test_matrix_products_and_trace():
    A = Matrix([[1, 2], [3, 4]])
    B = Matrix([[0, 1], [1, 0]])
    assert A @ B == Matrix([[2, 1], [4, 3]])
    assert (A @ B).trace() == 5
    assert A.transpose() == Matrix([[1, 3], [2, 4]])
    L = Matrix([[LaurentPoly.monomial(1), 0], [0, LaurentPoly.monomial(-1)]], "LAURENT")
    assert (L @ L).trace() == LaurentPoly({2: 1, -2: 1})


int_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60)
@given(int_matrices)
def test_rank_kernel_matches_sympy(rows):
    M = Matrix(rows)
    rank, kernel = rank_kernel(M)
    assert rank == sympy.Matrix(rows).rank()
    assert len(kernel) == M.shape[1] - rank
    for v in kernel:
        assert all(x == 0 for x in M.apply(v))


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_matches_flint(rows):
    assert determinant(rows) == int(flint.fmpz_mat(rows).det())


def test_rank_kernel_rejects_laurent():
    M = Matrix([[LaurentPoly.monomial(1)]], "LAURENT")
    with pytest.raises(NotAFieldError):
        rank_kernel(M)


def test_split_idempotent():
    P = Matrix([[1, 1], [0, 0]])
    image, kernel = split_idempotent(P)
    assert len(image) == 1 and len(kernel) == 1
    with pytest.raises(NotIdempotentError):
        split_idempotent(Matrix([[2, 0], [0, 0]]))


def test_solve_coordinates():
    basis = flint.fmpq_mat([[1, 0], [1, 1], [0, 1]])
    vecs = flint.fmpq_mat([[2], [5], [3]])
    X = solve_coordinates(basis, vecs)
    assert (X[0, 0], X[1, 0]) == (2, 3)
    with pytest.raises(ArithmeticError):
        solve_coordinates(basis, flint.fmpq_mat([[1], [0], [0]]))
