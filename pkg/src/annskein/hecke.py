"""Hecke algebra H_n through seminormal representations, and the annular trace.

Normalization: T_i has eigenvalues q and -q^-1, the trivial representation
sends T_i to q, and the Jucys-Murphy element L_k acts on the tableau vector
v_T by q^(2 c_k(T)).

For a pair T, T' = s_i T with i in a higher row than i+1 in T, put
z = q - q^-1, d = c_{i+1}(T) - c_i(T) and a_T = z / (1 - q^(-2d)). Then

    T_i v_T  = a_T v_T + v_T'
    T_i v_T' = (1 + a_T a_T') v_T + a_T' v_T'

and T_i acts by q (same row) or -q^-1 (same column) otherwise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import BoundExceeded, ConsistencyError, ParseError
from .exactcore import LaurentPoly, Matrix, RatFunc
from .shapes import Partition, StandardTableau, configured_bound, partitions, standard_tableaux
from .symfunc import SymFunc, principal_spec

Z = RatFunc.from_laurent(LaurentPoly({1: 1, -1: -1}))
Q = RatFunc.from_laurent(LaurentPoly.monomial(1))
QINV = RatFunc.from_laurent(LaurentPoly.monomial(-1))
ONE = RatFunc(1)
ZERO = RatFunc(0)


def rep_bound() -> int:
    return configured_bound(7)


@dataclass(frozen=True)
class BraidWord:
    """Signed generator word on ``strands`` strands; letter i means sigma_|i|^sign(i)."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        """Parse ``"n=3: 1 2 -1"``."""
        m = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*:\s*([-\d\s]*)", text)
        if not m:
            raise ParseError(f"bad braid word {text!r}; expected e.g. 'n=3: 1 2 -1'")
        try:
            return cls(int(m.group(1)), tuple(int(x) for x in m.group(2).split()))
        except ValueError as exc:
            raise ParseError(f"bad braid word {text!r}: {exc}") from None

    def __str__(self) -> str:
        return f"n={self.strands}: " + " ".join(map(str, self.letters)) if self.letters else f"n={self.strands}:"

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def with_strands(self, n: int) -> "BraidWord":
        return BraidWord(n, self.letters)


def jucys_murphy_word(n: int, k: int) -> BraidWord:
    """sigma_{k-1} ... sigma_1 sigma_1 ... sigma_{k-1} (empty for k = 1)."""
    down = tuple(range(k - 1, 0, -1))
    return BraidWord(n, down + tuple(reversed(down)))


class SeminormalRep:
    """Irreducible H_n-module V_lambda with basis the standard tableaux of lambda."""

    def __init__(self, shape: Sequence[int], verify: bool = True):
        self.shape = Partition(shape)
        n = self.shape.size()
        limit = rep_bound()
        if n > limit:
            raise BoundExceeded(f"|lambda|={n} exceeds seminormal bound {limit}")
        self.n = n
        self.basis: list[StandardTableau] = standard_tableaux(self.shape, bound=max(limit, 8))
        self.index = {T: k for k, T in enumerate(self.basis)}
        # gens[i-1][col] = list of (row, coefficient): image of basis vector col under T_i
        self.gens: list[list[list[tuple[int, RatFunc]]]] = [self._generator(i) for i in range(1, n)]
        self.inv_gens = [self._inverse_columns(cols) for cols in self.gens]
        if verify:
            self.verify()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _generator(self, i: int):
        cols = []
        for T in self.basis:
            (r1, c1), (r2, c2) = T.position(i), T.position(i + 1)
            if r1 == r2:
                cols.append([(self.index[T], Q)])
            elif c1 == c2:
                cols.append([(self.index[T], -QINV)])
            else:
                d = T.content(i + 1) - T.content(i)
                a = Z / (1 - RatFunc.from_laurent(LaurentPoly.monomial(-2 * d)))
                Tp = T.swap(i)
                j, k = self.index[T], self.index[Tp]
                if r1 < r2:
                    cols.append([(j, a), (k, ONE)])
                else:
                    ap = Z / (1 - RatFunc.from_laurent(LaurentPoly.monomial(2 * d)))
                    cols.append([(k, 1 + a * ap), (j, a)])
        return cols

    @staticmethod
    def _inverse_columns(cols):
        out = []
        for col_index, col in enumerate(cols):
            new = []
            for row, v in col:
                if row == col_index:
                    v = v - Z
                if v:
                    new.append((row, v))
            out.append(new)
        return out

    def apply_letter(self, letter: int, vec: dict[int, RatFunc]) -> dict[int, RatFunc]:
        cols = self.gens[abs(letter) - 1] if letter > 0 else self.inv_gens[-letter - 1]
        out: dict[int, RatFunc] = {}
        for j, x in vec.items():
            for row, v in cols[j]:
                y = out.get(row)
                out[row] = x * v if y is None else y + x * v
        return {k: v for k, v in out.items() if v}

    def generator_matrix(self, i: int, inverse: bool = False) -> Matrix:
        cols = (self.inv_gens if inverse else self.gens)[i - 1]
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        for j, col in enumerate(cols):
            for r, v in col:
                rows[r][j] = v
        return Matrix(rows, "RATFUNC")

    def word_matrix(self, word: Sequence[int]) -> Matrix:
        """Matrix of the product of letters (leftmost letter applied last)."""
        cols = []
        for j in range(self.dim):
            vec = {j: ONE}
            for letter in reversed(word):
                vec = self.apply_letter(letter, vec)
            cols.append(vec)
        rows = [[cols[j].get(r, ZERO) for j in range(self.dim)] for r in range(self.dim)]
        return Matrix(rows, "RATFUNC")

    def trace(self, word: Sequence[int]) -> RatFunc:
        total = ZERO
        for j in range(self.dim):
            vec = {j: ONE}
            for letter in reversed(word):
                vec = self.apply_letter(letter, vec)
                if not vec:
                    break
            v = vec.get(j)
            if v is not None:
                total = total + v
        return total

    def jm_matrix(self, k: int) -> Matrix:
        return self.word_matrix(jucys_murphy_word(self.n, k).letters)

    # -- verification ------------------------------------------------------
    def verify(self) -> None:
        """Check the quadratic, braid and Jucys-Murphy relations exactly."""
        n, dim = self.n, self.dim
        ident = Matrix.identity(dim, "RATFUNC")
        mats = [self.generator_matrix(i) for i in range(1, n)]
        for i, M in enumerate(mats, start=1):
            if M @ M != M.scale(Z) + ident:
                raise ConsistencyError(f"quadratic relation fails for T_{i} on {self.shape}")
            if M @ self.generator_matrix(i, inverse=True) != ident:
                raise ConsistencyError(f"inverse of T_{i} wrong on {self.shape}")
        for i in range(len(mats) - 1):
            A, B = mats[i], mats[i + 1]
            if A @ B @ A != B @ A @ B:
                raise ConsistencyError(f"braid relation fails for T_{i + 1}, T_{i + 2} on {self.shape}")
        for i in range(len(mats)):
            for j in range(i + 2, len(mats)):
                if mats[i] @ mats[j] != mats[j] @ mats[i]:
                    raise ConsistencyError(f"far commutation fails for T_{i + 1}, T_{j + 1}")
        for k in range(1, n + 1):
            L = self.jm_matrix(k)
            for a in range(dim):
                for b in range(dim):
                    expect = RatFunc.from_laurent(LaurentPoly.monomial(2 * self.basis[b].content(k))) if a == b else ZERO
                    if L[a, b] != expect:
                        raise ConsistencyError(f"L_{k} not diagonal with q^(2c) on {self.shape}")


@lru_cache(maxsize=None)
def _rep(shape: tuple[int, ...]) -> SeminormalRep:
    return SeminormalRep(shape)


def seminormal_rep(lam: Sequence[int]) -> SeminormalRep:
    lam = Partition(lam)
    if lam.size() > rep_bound():
        raise BoundExceeded(f"|lambda|={lam.size()} exceeds seminormal bound {rep_bound()}")
    return _rep(tuple(lam))


def braid_action(beta: BraidWord, lam: Sequence[int]) -> Matrix:
    lam = Partition(lam)
    if beta.strands != lam.size():
        raise ValueError(f"braid on {beta.strands} strands cannot act on V_{lam}")
    return seminormal_rep(lam).word_matrix(beta.letters)


def rep_trace(beta: BraidWord, lam: Sequence[int]) -> LaurentPoly:
    lam = Partition(lam)
    if beta.strands != lam.size():
        raise ValueError(f"braid on {beta.strands} strands cannot act on V_{lam}")
    t = seminormal_rep(lam).trace(beta.letters)
    try:
        return t.to_laurent()
    except ArithmeticError as exc:
        raise ConsistencyError(f"trace of {beta} on V_{lam} is not a Laurent polynomial: {t}") from exc


def annular_trace(beta: BraidWord) -> SymFunc:
    """Sum over lambda of Tr(beta, V_lambda) s_lambda."""
    n = beta.strands
    if n > rep_bound():
        raise BoundExceeded(f"{n} strands exceeds seminormal bound {rep_bound()}")
    terms = {}
    for lam in partitions(n):
        t = rep_trace(beta, lam)
        if t:
            terms[lam] = t
    return SymFunc("s", terms)


def slN_invariant(beta: BraidWord, N: int) -> LaurentPoly:
    return principal_spec(annular_trace(beta), N)
