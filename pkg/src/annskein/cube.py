"""Evaluated Koszul cubes, their idempotent projections, and Hom complexes.

Cube_n evaluated at a finite-dimensional space E with an endomorphism X has
chain groups C_i = q^(2i+1-n) Lambda^i(U_n) (x) E^{(x)n}, i = 0..n-1, where
U_n has basis u_j = x_j - x_{j+1}. The differential contracts:

    d(u_S (x) w) = sum_r (-1)^r u_{S - s_r} (x) (x_{s_r} - x_{s_r + 1}) w

with x_j acting by X on the j-th tensor slot. S_n permutes tensor slots and
acts on U_n through x_j -> x_{g(j)}.

For nilpotent E the Jordan basis vector X^k v of a size-N block sits in
q-degree 1 - N + 2k, so X raises degree by 2 and d has degree 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Mapping, Sequence

import flint

from .errors import BoundExceeded, ConsistencyError, NotIdempotentError, ParseError
from .exactcore import LaurentPoly, _fmpq, normalize_number, qq_rank, rref_qq, solve_coordinates
from .groupalg import (GroupAlgElem, Perm, compose, regular, solomon_projectors, transposition,
                       young_idempotent)
from .shapes import Partition, SignSequence, partitions
from .symfunc import mn_character, principal_spec, s, spec_at_points, z_mu

CUBE_BUDGET = 10 ** 4


# ---------------------------------------------------------------------------
# evaluation objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvalObject:
    """Direct sum of Jordan blocks (eigenvalue, size)."""

    blocks: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        blocks = tuple((normalize_number(ev), int(size)) for ev, size in self.blocks)
        if not blocks or any(size < 1 for _, size in blocks):
            raise ValueError("an evaluation object needs blocks of positive size")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def nilpotent(cls, *sizes: int) -> "EvalObject":
        return cls(tuple((0, k) for k in sizes))

    @classmethod
    def parse(cls, text: str) -> "EvalObject":
        """``"3"`` is one nilpotent block of size 3; ``"0:2,1:1"`` lists eigenvalue:size pairs."""
        t = text.strip()
        try:
            if re.fullmatch(r"\d+", t):
                return cls.nilpotent(int(t))
            blocks = []
            for item in t.split(","):
                ev, size = item.split(":")
                blocks.append((Fraction(ev), int(size)))
            return cls(tuple(blocks))
        except ValueError as exc:
            raise ParseError(f"bad evaluation object {text!r}: {exc}") from None

    @property
    def graded(self) -> bool:
        return all(ev == 0 for ev, _ in self.blocks)

    @property
    def dim(self) -> int:
        return sum(size for _, size in self.blocks)

    def degrees(self) -> list[int]:
        """q-degree of each basis vector (all zero when ungraded)."""
        out = []
        for _, size in self.blocks:
            for k in range(size):
                out.append(1 - size + 2 * k if self.graded else 0)
        return out

    def x_action(self) -> list[list[tuple[int, object]]]:
        """X applied to basis vector b, as a list of (index, coefficient)."""
        out, start = [], 0
        for ev, size in self.blocks:
            for k in range(size):
                col = []
                if ev:
                    col.append((start + k, ev))
                if k + 1 < size:
                    col.append((start + k + 1, 1))
                out.append(col)
            start += size
        return out

    def graded_dim(self) -> LaurentPoly:
        if not self.graded:
            return LaurentPoly(self.dim)
        acc: dict[int, int] = {}
        for d in self.degrees():
            acc[d] = acc.get(d, 0) + 1
        return LaurentPoly(acc)

    def __str__(self) -> str:
        if self.graded and len(self.blocks) == 1:
            return str(self.blocks[0][1])
        return ",".join(f"{ev}:{size}" for ev, size in self.blocks)


# ---------------------------------------------------------------------------
# the reflection representation and its exterior powers
# ---------------------------------------------------------------------------

def wedge_basis(m: int, i: int) -> list[tuple[int, ...]]:
    return list(combinations(range(m), i))


def reflection_matrix(g: Perm) -> list[list[int]]:
    """Matrix of g on U_n in the basis u_j = x_j - x_{j+1}; column j is g(u_j)."""
    n = len(g)
    m = n - 1
    M = [[0] * m for _ in range(m)]
    for j in range(m):
        a, b = g[j], g[j + 1]
        # x_a - x_b = sum_{k=a}^{b-1} u_k  (or minus the reverse)
        lo, hi, sgn = (a, b, 1) if a < b else (b, a, -1)
        for k in range(lo, hi):
            M[k][j] += sgn
    return M


def _det_int(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * _det_int(minor)
    return total


@lru_cache(maxsize=None)
def wedge_matrix(g: Perm, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of Lambda^i(g) on Lambda^i U_n in the lexicographic basis."""
    M = reflection_matrix(g)
    basis = wedge_basis(len(g) - 1, i)
    out = []
    for R in basis:
        row = []
        for C in basis:
            row.append(_det_int([[M[r][c] for c in C] for r in R]))
        out.append(tuple(row))
    return tuple(out)


def _is_zero(M: flint.fmpq_mat) -> bool:
    return all(M[r, c] == 0 for r in range(M.nrows()) for c in range(M.ncols()))


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

@dataclass
class BigradedDims:
    """(q-exponent, homological degree) -> dimension. Ungraded data uses q-exponent 0."""

    dims: dict[tuple[int, int], int] = field(default_factory=dict)
    graded: bool = True

    def add(self, qexp: int, hdeg: int, value: int) -> None:
        if value:
            self.dims[(qexp, hdeg)] = self.dims.get((qexp, hdeg), 0) + value

    def total(self) -> int:
        return sum(self.dims.values())

    def by_degree(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (_, h), v in self.dims.items():
            out[h] = out.get(h, 0) + v
        return dict(sorted(out.items()))

    def euler(self) -> LaurentPoly:
        acc: dict[int, int] = {}
        for (qe, h), v in self.dims.items():
            acc[qe] = acc.get(qe, 0) + (-1) ** (h % 2) * v
        return LaurentPoly(acc)

    def poincare(self) -> dict[int, LaurentPoly]:
        """homological degree -> graded dimension in q."""
        out: dict[int, dict[int, int]] = {}
        for (qe, h), v in self.dims.items():
            out.setdefault(h, {})[qe] = v
        return {h: LaurentPoly(d) for h, d in sorted(out.items())}

    def __eq__(self, other):
        return isinstance(other, BigradedDims) and self.dims == other.dims

    def to_json(self) -> list[dict]:
        return [{"q": qe, "h": h, "dim": v} for (qe, h), v in sorted(self.dims.items(), key=lambda kv: (kv[0][1], kv[0][0]))]


class ChainComplex:
    """Blocks of a finite complex of Q-vector spaces, split by q-degree.

    ``dims[(i, Q)]`` is the dimension of C_i in q-degree Q and ``diff[(i, Q)]``
    the matrix of d: C_i -> C_{i-1} in that q-degree.
    """

    def __init__(self, n: int, graded: bool, dims: dict, diff: dict):
        self.n = n
        self.graded = graded
        self.dims = {k: v for k, v in dims.items() if v}
        self.diff = diff

    def chain_dims(self) -> BigradedDims:
        out = BigradedDims(graded=self.graded)
        for (i, Q), v in self.dims.items():
            out.add(Q, i, v)
        return out

    def degrees(self) -> list[int]:
        return sorted({i for i, _ in self.dims})

    def rank_d(self, i: int, Q: int) -> int:
        M = self.diff.get((i, Q))
        if M is None or M.nrows() == 0 or M.ncols() == 0:
            return 0
        return qq_rank(M)

    def homology(self) -> BigradedDims:
        out = BigradedDims(graded=self.graded)
        for (i, Q), v in self.dims.items():
            h = v - self.rank_d(i, Q) - self.rank_d(i + 1, Q)
            if h < 0:
                raise ConsistencyError("negative homology dimension")
            out.add(Q, i, h)
        return out

    def check_d_squared(self) -> None:
        for (i, Q), M in self.diff.items():
            N = self.diff.get((i - 1, Q))
            if N is None or M.ncols() == 0 or N.nrows() == 0:
                continue
            if not _is_zero(N * M):
                raise ConsistencyError(f"d^2 != 0 at degree {i}, q^{Q}")


class CubeComplex(ChainComplex):
    """Cube_n evaluated at E, with explicit bases and the S_n action."""

    def __init__(self, n: int, E: EvalObject, verify: bool = True):
        if n < 1:
            raise ValueError("n must be positive")
        size = E.dim ** n
        if size > CUBE_BUDGET:
            raise BoundExceeded(f"dim E^(x)n = {E.dim}^{n} = {size} exceeds budget {CUBE_BUDGET}")
        self.E = E
        degE = E.degrees()
        self.xact = E.x_action()
        words = list(product(range(E.dim), repeat=n))
        m = n - 1
        # basis per (i, Q): list of (S, w); index lookup
        self.basis: dict[tuple[int, int], list[tuple[tuple[int, ...], tuple[int, ...]]]] = {}
        for i in range(n):
            shift = 2 * i + 1 - n if E.graded else 0
            for S in wedge_basis(m, i):
                for w in words:
                    Q = shift + sum(degE[x] for x in w)
                    self.basis.setdefault((i, Q), []).append((S, w))
        self.index = {key: {b: k for k, b in enumerate(lst)} for key, lst in self.basis.items()}
        dims = {key: len(lst) for key, lst in self.basis.items()}
        diff = {}
        for (i, Q), lst in self.basis.items():
            if i == 0:
                continue
            target = self.index.get((i - 1, Q), {})
            M = flint.fmpq_mat(len(target), len(lst))
            for col, (S, w) in enumerate(lst):
                for (S2, w2), c in self._d_vector(S, w).items():
                    M[target[(S2, w2)], col] += _fmpq(c)
            diff[(i, Q)] = M
        super().__init__(n, E.graded, dims, diff)
        if verify:
            self.check_d_squared()
            self.check_equivariance()

    def _x_on_slot(self, w: tuple[int, ...], slot: int) -> list[tuple[tuple[int, ...], object]]:
        out = []
        for b, c in self.xact[w[slot]]:
            out.append((w[:slot] + (b,) + w[slot + 1:], c))
        return out

    def _d_vector(self, S, w) -> dict:
        out: dict = {}
        for r, sidx in enumerate(S):
            sgn = -1 if r % 2 else 1
            S2 = S[:r] + S[r + 1:]
            for w2, c in self._x_on_slot(w, sidx):
                key = (S2, w2)
                out[key] = out.get(key, 0) + sgn * c
            for w2, c in self._x_on_slot(w, sidx + 1):
                key = (S2, w2)
                out[key] = out.get(key, 0) - sgn * c
        return {k: v for k, v in out.items() if v}

    def act(self, g: Perm, i: int, Q: int) -> dict[int, dict[int, int]]:
        """Sparse matrix (col -> {row: coeff}) of g on C_i in q-degree Q."""
        W = wedge_matrix(tuple(g), i)
        wb = wedge_basis(self.n - 1, i)
        widx = {S: k for k, S in enumerate(wb)}
        index = self.index[(i, Q)]
        cols: dict[int, dict[int, int]] = {}
        for col, (S, w) in enumerate(self.basis[(i, Q)]):
            w2 = [0] * self.n
            for j, x in enumerate(w):
                w2[g[j]] = x
            w2 = tuple(w2)
            c_idx = widx[S]
            entry = {}
            for r_idx, S2 in enumerate(wb):
                v = W[r_idx][c_idx]
                if v:
                    entry[index[(S2, w2)]] = v
            cols[col] = entry
        return cols

    def group_matrix(self, x: GroupAlgElem, i: int, Q: int) -> flint.fmpq_mat:
        dim = len(self.basis[(i, Q)])
        M = flint.fmpq_mat(dim, dim)
        for g, c in x.terms.items():
            fc = _fmpq(c)
            for col, entry in self.act(g, i, Q).items():
                for row, v in entry.items():
                    M[row, col] += fc * v
        return M

    def check_equivariance(self) -> None:
        for k in range(1, self.n):
            t = GroupAlgElem.group_element(transposition(self.n, k))
            for (i, Q), M in self.diff.items():
                if (i - 1, Q) not in self.basis:
                    continue
                A = self.group_matrix(t, i, Q)
                B = self.group_matrix(t, i - 1, Q)
                if M * A != B * M:
                    raise ConsistencyError(f"d is not S_n-equivariant at degree {i}, q^{Q}")


def build_cube(n: int, E: EvalObject, verify: bool = True) -> CubeComplex:
    return CubeComplex(n, E, verify=verify)


def project(C: CubeComplex, p: GroupAlgElem) -> ChainComplex:
    """Restrict C to the image of the idempotent p, blockwise by q-degree."""
    if p.n != C.n:
        raise ValueError("idempotent lives in the wrong group algebra")
    if not p.is_idempotent():
        raise NotIdempotentError("projection needs an idempotent")
    images: dict[tuple[int, int], flint.fmpq_mat] = {}
    for key in C.basis:
        P = C.group_matrix(p, *key)
        if P * P != P:
            raise NotIdempotentError(f"p does not act idempotently on C_{key[0]}, q^{key[1]}")
        _, pivots = rref_qq(P)
        B = flint.fmpq_mat(P.nrows(), len(pivots))
        for a, j in enumerate(pivots):
            for r in range(P.nrows()):
                B[r, a] = P[r, j]
        images[key] = B
    dims = {key: B.ncols() for key, B in images.items()}
    diff = {}
    for (i, Q), M in C.diff.items():
        src = images[(i, Q)]
        tgt = images.get((i - 1, Q))
        if tgt is None or src.ncols() == 0:
            diff[(i, Q)] = flint.fmpq_mat(tgt.ncols() if tgt is not None else 0, src.ncols())
            continue
        try:
            diff[(i, Q)] = solve_coordinates(tgt, M * src)
        except ArithmeticError:
            raise ConsistencyError("d does not preserve the image of p") from None
    out = ChainComplex(C.n, C.graded, dims, diff)
    out.check_d_squared()
    return out


def homology(C: ChainComplex) -> BigradedDims:
    H = C.homology()
    if H.euler() != C.chain_dims().euler():
        raise ConsistencyError("Euler characteristic not preserved by homology")
    return H


# ---------------------------------------------------------------------------
# Coxeter projections, Schur projections, Jordan example
# ---------------------------------------------------------------------------

def coxeter_cube_homology(eps: Sequence[int], E: EvalObject) -> BigradedDims:
    eps = SignSequence(eps)
    n = eps.n
    p = solomon_projectors(n, verify=False)[eps]
    return homology(project(build_cube(n, E), p))


def coxeter_cube_target(eps: Sequence[int], N: int) -> LaurentPoly:
    """(-1)^{#plus} times the slN specialization of the Coxeter formula.

    The sign accounts for the homological shift by the number of plus signs
    between C_eps and its summand of Cube_n.
    """
    from .annular import coxeter_invariant_formula

    eps = SignSequence(eps)
    val = principal_spec(coxeter_invariant_formula(eps), N)
    return -val if eps.num_plus() % 2 else val


def monomial_ratio(a: LaurentPoly, b: LaurentPoly) -> int | None:
    """k with a = q^k b, or None."""
    if not a and not b:
        return 0
    if not a or not b:
        return None
    k = a.max_degree() - b.max_degree()
    return k if a == b * LaurentPoly.monomial(k) else None


def wedge_character(g: Perm, i: int) -> int:
    W = wedge_matrix(tuple(g), i)
    return sum(W[k][k] for k in range(len(W)))


def predicted_schur_chain_dims(lam: Sequence[int], n: int, E: EvalObject) -> dict[int, int]:
    """Multiplicity of V_lam in Lambda^i U (x) E^(x)n, by character pairing (ungraded)."""
    from .groupalg import class_representative

    lam = Partition(lam)
    out = {}
    for i in range(n):
        total = Fraction(0)
        for mu in partitions(n):
            g = class_representative(mu, n)
            chi_v = wedge_character(g, i) * E.dim ** len(mu)
            total += Fraction(chi_v * mn_character(tuple(lam), tuple(mu)), z_mu(mu))
        if total.denominator != 1:
            raise ConsistencyError("non-integral character pairing")
        out[i] = int(total)
    return out


def hook_schur_dim(n: int, i: int, dimE: int, sign_side: bool = False) -> int:
    """dim of S^{(n-i,1^i)} E, or of S^{(i+1,1^(n-i-1))} E when sign_side."""
    lam = (i + 1,) + (1,) * (n - i - 1) if sign_side else (n - i,) + (1,) * i
    return int(spec_at_points(s(lam), [1] * dimE).constant())


@dataclass
class SchurCubeReport:
    lam: Partition
    chain_dims: dict[int, int]
    predicted: dict[int, int]
    homology: BigradedDims


def schur_cube_dims(lam: Sequence[int], E: EvalObject, tableau=None) -> SchurCubeReport:
    lam = Partition(lam)
    n = lam.size()
    P = project(build_cube(n, E), young_idempotent(lam, tableau))
    chain = P.chain_dims().by_degree()
    chain = {i: chain.get(i, 0) for i in range(n)}
    pred = predicted_schur_chain_dims(lam, n, E)
    if chain != pred:
        raise ConsistencyError(f"chain dims {chain} differ from character prediction {pred}")
    return SchurCubeReport(lam, chain, pred, homology(P))


def symmetrizer_full(n: int) -> GroupAlgElem:
    return young_idempotent((n,))


@dataclass
class JordanReport:
    k1: int
    k2: int
    n: int
    observed: tuple[int, int]
    expected: tuple[int, int]
    agree: bool


def jordan_pushforward_check(k1: int, k2: int, n: int) -> JordanReport:
    """Symmetric part of Cube_n at two nilpotent Jordan blocks, ungraded dims of H_0, H_1."""
    if n * (k1 + k2) > 12:
        raise BoundExceeded(f"n(k1+k2) = {n * (k1 + k2)} exceeds the budget of 12")
    E = EvalObject.nilpotent(k1, k2)
    H = homology(project(build_cube(n, E), symmetrizer_full(n))).by_degree()
    lo = min(k1, k2)
    expected = (k1 + k2 + (n - 1) * lo, (n - 1) * lo)
    observed = (H.get(0, 0), H.get(1, 0))
    extra = {i: v for i, v in H.items() if i > 1 and v}
    agree = observed == expected and not extra
    return JordanReport(k1, k2, n, observed, expected, agree)


# ---------------------------------------------------------------------------
# Hom complexes over the polynomial base
# ---------------------------------------------------------------------------

def monomials(n: int, k: int) -> list[tuple[int, ...]]:
    if k < 0:
        return []
    if n == 0:
        return [()] if k == 0 else []
    out = []
    for first in range(k, -1, -1):
        for rest in monomials(n - 1, k - first):
            out.append((first,) + rest)
    return out


def _perm_monomial(g: Perm, alpha: tuple[int, ...]) -> tuple[int, ...]:
    """g(x^alpha) where g(x_j) = x_{g(j)}."""
    out = [0] * len(alpha)
    for j, a in enumerate(alpha):
        out[g[j]] = a
    return tuple(out)


def _add_monomials(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


class HomComplex:
    """Hom complex of Cube_n over Q[x_1..x_n] with S_n, optionally cut down by idempotents.

    A degree-h element is a family f_i : C_i -> C_{i+h} of matrices with
    entries in Q[x] x| Q[S_n]. An entry x^alpha g in hom-degree h has
    q-degree 2|alpha| + 2h, so each (Q, h) piece is finite-dimensional and
    computed exactly. With idempotents e_src, e_tgt the complex is
    f -> e_tgt f e_src, i.e. Hom(e_src Cube, e_tgt Cube).
    """

    def __init__(self, n: int, e_src: GroupAlgElem | None = None, e_tgt: GroupAlgElem | None = None):
        if n > 3:
            raise BoundExceeded(f"Hom complexes are limited to n <= 3 (got {n})")
        self.n = n
        self.m = n - 1
        self.perms = regular(n).elements
        self.e_src = e_src
        self.e_tgt = e_tgt
        self._basis_cache: dict = {}

    # basis -----------------------------------------------------------------
    def basis(self, Q: int, h: int) -> list[tuple]:
        key = (Q, h)
        if key in self._basis_cache:
            return self._basis_cache[key]
        out = []
        if Q % 2 == 0 and Q // 2 - h >= 0:
            k = Q // 2 - h
            mons = monomials(self.n, k)
            for i in range(self.n):
                j = i + h
                if not 0 <= j <= self.m:
                    continue
                for r in range(comb(self.m, j)):
                    for c in range(comb(self.m, i)):
                        for alpha in mons:
                            for g in self.perms:
                                out.append((i, r, c, alpha, g))
        self._basis_cache[key] = out
        return out

    # structure maps -----------------------------------------------------------
    def _d_entries(self, j: int) -> dict[tuple[int, int], dict[tuple[int, ...], int]]:
        """Koszul differential C_j -> C_{j-1} as {(row, col): polynomial}."""
        src = wedge_basis(self.m, j)
        tgt = {S: k for k, S in enumerate(wedge_basis(self.m, j - 1))}
        out = {}
        for col, S in enumerate(src):
            for r, s_ in enumerate(S):
                sgn = -1 if r % 2 else 1
                S2 = S[:r] + S[r + 1:]
                e1 = tuple(1 if t == s_ else 0 for t in range(self.n))
                e2 = tuple(1 if t == s_ + 1 else 0 for t in range(self.n))
                out[(tgt[S2], col)] = {e1: sgn, e2: -sgn}
        return out

    def apply_D(self, f: Mapping[tuple, object], h: int) -> dict[tuple, object]:
        """D f = d f - (-1)^h f d on an element of hom-degree h."""
        out: dict[tuple, object] = {}
        sgn_h = -1 if h % 2 else 1
        for (i, r, c, alpha, g), v in f.items():
            j = i + h
            # d o f : uses d on C_j
            if j >= 1:
                for (rr, cc), poly in self._d_entries(j).items():
                    if cc != r:
                        continue
                    for beta, pc in poly.items():
                        key = (i, rr, c, _add_monomials(beta, alpha), g)
                        out[key] = out.get(key, 0) + pc * v
            # f o d : uses d on C_{i+1} -> C_i, so the new source is i+1
            if i + 1 <= self.m:
                for (rr, cc), poly in self._d_entries(i + 1).items():
                    if rr != c:
                        continue
                    for beta, pc in poly.items():
                        key = (i + 1, r, cc, _add_monomials(alpha, _perm_monomial(g, beta)), g)
                        out[key] = out.get(key, 0) - sgn_h * pc * v
        return {k: v for k, v in out.items() if v}

    def _idem_entries(self, e: GroupAlgElem, i: int):
        """e on C_i as {(row, col): [(coeff, g)]}."""
        out: dict[tuple[int, int], list] = {}
        for g, c in e.terms.items():
            W = wedge_matrix(g, i)
            for r in range(len(W)):
                for cc in range(len(W)):
                    if W[r][cc]:
                        out.setdefault((r, cc), []).append((c * W[r][cc], g))
        return out

    def apply_projection(self, f: Mapping[tuple, object], h: int) -> dict[tuple, object]:
        cur = dict(f)
        if self.e_tgt is not None:
            nxt: dict[tuple, object] = {}
            for (i, r, c, alpha, g), v in cur.items():
                for (rr, cc), lst in self._idem_entries(self.e_tgt, i + h).items():
                    if cc != r:
                        continue
                    for coeff, k in lst:
                        key = (i, rr, c, _perm_monomial(k, alpha), compose(k, g))
                        nxt[key] = nxt.get(key, 0) + coeff * v
            cur = {k: v for k, v in nxt.items() if v}
        if self.e_src is not None:
            nxt = {}
            for (i, r, c, alpha, g), v in cur.items():
                for (rr, cc), lst in self._idem_entries(self.e_src, i).items():
                    if rr != c:
                        continue
                    for coeff, k in lst:
                        key = (i, r, cc, alpha, compose(g, k))
                        nxt[key] = nxt.get(key, 0) + coeff * v
            cur = {k: v for k, v in nxt.items() if v}
        return cur

    def _matrix(self, Q: int, h: int, fn, h_out: int) -> flint.fmpq_mat:
        src = self.basis(Q, h)
        tgt = self.basis(Q, h_out)
        tidx = {b: k for k, b in enumerate(tgt)}
        M = flint.fmpq_mat(len(tgt), len(src))
        for col, b in enumerate(src):
            for key, v in fn({b: 1}, h).items():
                M[tidx[key], col] += _fmpq(v)
        return M

    def D_matrix(self, Q: int, h: int) -> flint.fmpq_mat:
        return self._matrix(Q, h, self.apply_D, h - 1)

    def projection_matrix(self, Q: int, h: int) -> flint.fmpq_mat:
        return self._matrix(Q, h, self.apply_projection, h)

    def homology_dim(self, Q: int, h: int) -> int:
        """dim H at (Q, h) of the projected Hom complex (exact for each degree)."""
        def piece(hh):
            dim = len(self.basis(Q, hh))
            if dim == 0:
                return None, 0
            if self.e_src is None and self.e_tgt is None:
                P = None
                rank = dim
            else:
                P = self.projection_matrix(Q, hh)
                rank = qq_rank(P)
            return P, rank

        P_h, dim_h = piece(h)
        if dim_h == 0:
            return 0
        P_up, dim_up = piece(h + 1)

        def rank_D(hh, P, dim):
            if dim == 0 or not self.basis(Q, hh - 1):
                return 0
            D = self.D_matrix(Q, hh)
            return qq_rank(D if P is None else D * P)

        out = dim_h - rank_D(h, P_h, dim_h) - rank_D(h + 1, P_up, dim_up)
        if out < 0:
            raise ConsistencyError("negative homology dimension in Hom complex")
        return out

    def check_D_squared(self, Q: int, h: int) -> None:
        if not self.basis(Q, h) or not self.basis(Q, h - 2):
            return
        if not _is_zero(self.D_matrix(Q, h - 1) * self.D_matrix(Q, h)):
            raise ConsistencyError(f"D^2 != 0 at (q^{Q}, {h})")

    def check_projection_commutes(self, Q: int, h: int) -> None:
        if self.e_src is None and self.e_tgt is None:
            return
        if not self.basis(Q, h) or not self.basis(Q, h - 1):
            return
        D = self.D_matrix(Q, h)
        if D * self.projection_matrix(Q, h) != self.projection_matrix(Q, h - 1) * D:
            raise ConsistencyError(f"projection does not commute with D at (q^{Q}, {h})")


def hom_degrees(n: int) -> range:
    return range(-(n - 1), n)


def trusted_qmax(qcutoff: int) -> int:
    """Largest q-degree regarded as conclusive inside a window ending at qcutoff."""
    return qcutoff - 2


def end_complex_dims(n: int, mode: str = "full", qcutoff: int = 8) -> BigradedDims:
    """Graded homology dims of End(Cube_n) (mode full) or End of its symmetric part."""
    if n > 3:
        raise BoundExceeded(f"end_complex_dims supports n <= 3 (got {n})")
    if qcutoff > 8:
        raise BoundExceeded(f"qcutoff {qcutoff} exceeds 8")
    if trusted_qmax(qcutoff) < 0:
        raise ValueError(f"window up to q^{qcutoff} is too small to be conclusive")
    if mode == "full":
        H = HomComplex(n)
    elif mode == "symmetric":
        e = young_idempotent((n,))
        H = HomComplex(n, e, e)
    else:
        raise ValueError("mode must be 'full' or 'symmetric'")
    out = BigradedDims()
    for Q in range(-2 * (n - 1), trusted_qmax(qcutoff) + 1):
        for h in hom_degrees(n):
            out.add(Q, h, H.homology_dim(Q, h))
    return out


def expected_end_dims(n: int, mode: str, qmax: int) -> BigradedDims:
    """Hilbert series of Lambda(U_n) (x) Q[x] x| Q[S_n], or of Lambda(xi_1..xi_{n-1}) (x) Q[x].

    Generators of U_n sit at (q^-2, h=-1); xi_i at (q^(2i-2), h=-1); x at q^2.
    """
    out = BigradedDims()
    if mode == "full":
        for k in range(n):
            for Q in range(-2 * k, qmax + 1, 2):
                out.add(Q, -k, comb(n - 1, k) * factorial(n))
    else:
        for subset in _subsets(range(1, n)):
            base = sum(2 * i - 2 for i in subset)
            for Q in range(base, qmax + 1, 2):
                out.add(Q, -len(subset), 1)
    return BigradedDims({k: v for k, v in out.dims.items() if k[0] >= -2 * (n - 1)})


def _subsets(items) -> list[tuple[int, ...]]:
    items = list(items)
    out = []
    for r in range(len(items) + 1):
        out.extend(combinations(items, r))
    return out


@dataclass
class PositivityReport:
    lam: Partition
    mu: Partition
    dims: dict[int, int]
    holds: bool


def hom_schur_positivity(lam: Sequence[int], mu: Sequence[int], n: int | None = None, qcutoff: int = 8) -> PositivityReport:
    """Graded dims of hom-degree-0 homology of Hom(Cube^lam, Cube^mu) lie in delta + q^2 N[q^2]."""
    lam, mu = Partition(lam), Partition(mu)
    n = n or lam.size()
    if lam.size() != n or mu.size() != n:
        raise ValueError("partitions must have size n")
    if trusted_qmax(qcutoff) < 2:
        raise ValueError(f"window up to q^{qcutoff} is too small to be conclusive")
    H = HomComplex(n, young_idempotent(lam), young_idempotent(mu))
    dims = {}
    for Q in range(-2 * (n - 1), trusted_qmax(qcutoff) + 1):
        v = H.homology_dim(Q, 0)
        if v:
            dims[Q] = v
    delta = 1 if lam == mu else 0
    holds = dims.get(0, 0) == delta and all(Q >= 0 and Q % 2 == 0 for Q in dims)
    return PositivityReport(lam, mu, dims, holds)
