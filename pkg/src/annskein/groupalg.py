"""The group algebra Q[S_n]: Young symmetrizers, Solomon ideals and projectors.

Permutations are 0-indexed one-line tuples; the product is composition with
the right factor acting first, (st)(i) = s(t(i)). Large linear algebra is
done in the regular representation with FLINT matrices.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Mapping, Sequence

import flint
import numpy as np

from .errors import BoundExceeded, ConsistencyError, NotIdempotentError
from .exactcore import _fmpq, normalize_number, rref_qq, solve_coordinates
from .shapes import (Partition, SignSequence, StandardTableau, configured_bound,
                     row_reading_tableau, sign_sequences)
from .symfunc import SymFunc, convert, z_mu

Perm = tuple


def group_bound() -> int:
    return configured_bound(6)


def _check_n(n: int) -> None:
    if n > group_bound():
        raise BoundExceeded(f"n={n} exceeds group algebra bound {group_bound()}")


def compose(s: Perm, t: Perm) -> Perm:
    return tuple(s[i] for i in t)


def inverse(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, x in enumerate(s):
        out[x] = i
    return tuple(out)


def sign(s: Perm) -> int:
    seen, sgn = set(), 1
    for i in range(len(s)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = s[j]
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def cycle_type(s: Perm) -> Partition:
    seen, lengths = set(), []
    for i in range(len(s)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = s[j]
            length += 1
        lengths.append(length)
    return Partition(sorted(lengths, reverse=True))


def transposition(n: int, i: int) -> Perm:
    """The simple transposition s_i exchanging i and i+1 (1-indexed i)."""
    t = list(range(n))
    t[i - 1], t[i] = t[i], t[i - 1]
    return tuple(t)


def block_subgroup(blocks: Iterable[Sequence[int]], n: int) -> list[Perm]:
    """All permutations preserving each block (0-indexed positions) and fixing the rest."""
    blocks = [list(b) for b in blocks if len(b) > 1]
    out = []
    for choice in product(*(permutations(b) for b in blocks)):
        perm = list(range(n))
        for b, img in zip(blocks, choice):
            for x, y in zip(b, img):
                perm[x] = y
        out.append(tuple(perm))
    return out


class GroupAlgElem:
    """Element of Q[S_n] as a mapping permutation -> rational coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Perm, object] | None = None):
        self.n = n
        clean = {}
        for g, c in (terms or {}).items():
            if c:
                g = tuple(g)
                if sorted(g) != list(range(n)):
                    raise ValueError(f"{g} is not a permutation of 0..{n - 1}")
                clean[g] = normalize_number(c)
        self.terms = clean

    @classmethod
    def identity(cls, n: int) -> "GroupAlgElem":
        return cls(n, {tuple(range(n)): 1})

    @classmethod
    def group_element(cls, g: Perm, coeff=1) -> "GroupAlgElem":
        return cls(len(g), {tuple(g): coeff})

    def __add__(self, other: "GroupAlgElem") -> "GroupAlgElem":
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgElem(self.n, out)

    def __sub__(self, other: "GroupAlgElem") -> "GroupAlgElem":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "GroupAlgElem":
        return GroupAlgElem(self.n, {g: v * c for g, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgElem):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("degree mismatch")
        if len(self.terms) * len(other.terms) > 20000 and self.n >= 5:
            return regular(self.n).multiply(self, other)
        out: dict[Perm, object] = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                k = compose(g, h)
                out[k] = out.get(k, 0) + a * b
        return GroupAlgElem(self.n, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, GroupAlgElem) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, g: Perm):
        return self.terms.get(tuple(g), 0)

    def is_idempotent(self) -> bool:
        return self * self == self

    def __repr__(self) -> str:
        items = sorted(self.terms.items())
        body = " + ".join(f"{c}*[{''.join(str(x + 1) for x in g)}]" for g, c in items[:8])
        more = f" + ... ({len(items)} terms)" if len(items) > 8 else ""
        return f"GroupAlgElem(n={self.n}: {body or '0'}{more})"


# ---------------------------------------------------------------------------
# regular representation
# ---------------------------------------------------------------------------

class RegularRep:
    """Index tables for S_n and conversions to coordinate vectors."""

    def __init__(self, n: int):
        self.n = n
        self.elements: list[Perm] = sorted(permutations(range(n)))
        self.index = {g: k for k, g in enumerate(self.elements)}
        self.order = len(self.elements)
        arr = np.array(self.elements, dtype=np.int64).reshape(self.order, n)
        weights = n ** np.arange(n, dtype=np.int64)
        lookup = np.full(max(n, 1) ** n + 1, -1, dtype=np.int64)
        lookup[arr @ weights] = np.arange(self.order)
        # mul[a, b] = index of elements[a] o elements[b]
        self.mul = lookup[np.take_along_axis(np.repeat(arr[:, None, :], self.order, axis=1),
                                             np.repeat(arr[None, :, :], self.order, axis=0), axis=2) @ weights]
        self.inv = np.array([self.index[inverse(g)] for g in self.elements], dtype=np.int64)

    def vector(self, x: GroupAlgElem) -> list:
        v = [0] * self.order
        for g, c in x.terms.items():
            v[self.index[g]] = c
        return v

    def element(self, vec: Sequence[object]) -> GroupAlgElem:
        return GroupAlgElem(self.n, {self.elements[k]: c for k, c in enumerate(vec) if c})

    def _scaled(self, x: GroupAlgElem) -> tuple[np.ndarray, int]:
        """Integer coordinate vector (object dtype) and common denominator."""
        den = 1
        for c in x.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // _gcd(den, c.denominator)
        v = np.zeros(self.order, dtype=object)
        for g, c in x.terms.items():
            v[self.index[g]] = int(c * den)
        return v, den

    def right_matrix(self, x: GroupAlgElem) -> flint.fmpq_mat:
        """Matrix R with R @ vec(a) = vec(a x); R[k, j] = x(g_j^-1 g_k)."""
        v, den = self._scaled(x)
        idx = self.mul[self.inv[None, :], np.arange(self.order)[:, None]]
        return _fmpz_to_fmpq(v[idx], den)

    def left_matrix(self, x: GroupAlgElem) -> flint.fmpq_mat:
        """Matrix L with L @ vec(a) = vec(x a); L[k, j] = x(g_k g_j^-1)."""
        v, den = self._scaled(x)
        idx = self.mul[np.arange(self.order)[:, None], self.inv[None, :]]
        return _fmpz_to_fmpq(v[idx], den)

    def multiply(self, x: GroupAlgElem, y: GroupAlgElem) -> GroupAlgElem:
        R = self.right_matrix(y)
        col = flint.fmpq_mat(self.order, 1, [_fmpq(c) for c in self.vector(x)])
        prod = R * col
        return self.element([normalize_number(prod[k, 0]) for k in range(self.order)])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _fmpz_to_fmpq(arr: np.ndarray, den: int) -> flint.fmpq_mat:
    m = flint.fmpz_mat([[int(x) for x in row] for row in arr])
    out = flint.fmpq_mat(m)
    if den != 1:
        out = out / den
    return out


@lru_cache(maxsize=None)
def regular(n: int) -> RegularRep:
    _check_n(n)
    return RegularRep(n)


# ---------------------------------------------------------------------------
# symmetrizers
# ---------------------------------------------------------------------------

def symmetrizer(elements: Sequence[Perm], n: int, signed: bool = False, normalized: bool = True) -> GroupAlgElem:
    c = Fraction(1, len(elements)) if normalized else 1
    return GroupAlgElem(n, {g: (sign(g) * c if signed else c) for g in elements})


def young_idempotent(lam: Sequence[int], tableau: StandardTableau | None = None) -> GroupAlgElem:
    """(f^lam / n!) * (row symmetrizer) * (column antisymmetrizer) for the given tableau.

    Defaults to the row-reading superstandard tableau.
    """
    lam = Partition(lam)
    n = lam.size()
    _check_n(n)
    T = tableau or row_reading_tableau(lam)
    if T.shape != lam:
        raise ValueError("tableau shape does not match")
    rows = [[x - 1 for x in r] for r in T.rows]
    cols = [[T.rows[r][c] - 1 for r in range(len(T.rows)) if c < len(T.rows[r])] for c in range(lam.part(0))]
    R = symmetrizer(block_subgroup(rows, n), n, normalized=False)
    C = symmetrizer(block_subgroup(cols, n), n, signed=True, normalized=False)
    out = (R * C).scale(Fraction(lam.num_standard_tableaux(), factorial(n)))
    if not out.is_idempotent():
        raise NotIdempotentError(f"Young symmetrizer for {lam} is not idempotent")
    return out


def parabolic_blocks(eps: Sequence[int], want: int) -> list[list[int]]:
    """Maximal runs of consecutive positions joined by generators with eps_j == want."""
    eps = SignSequence(eps)
    n = len(eps) + 1
    blocks, cur = [], [0]
    for j in range(1, n):
        if eps[j - 1] == want:
            cur.append(j)
        else:
            blocks.append(cur)
            cur = [j]
    blocks.append(cur)
    return blocks


def solomon_generator(eps: Sequence[int]) -> GroupAlgElem:
    """s_eps * sbar_eps: normalized symmetrizer over the '+' generators times
    the normalized antisymmetrizer over the '-' generators."""
    eps = SignSequence(eps)
    n = len(eps) + 1
    sym = symmetrizer(block_subgroup(parabolic_blocks(eps, 1), n), n)
    alt = symmetrizer(block_subgroup(parabolic_blocks(eps, -1), n), n, signed=True)
    return sym * alt


@lru_cache(maxsize=None)
def _ideal_basis(eps: tuple[int, ...]) -> tuple[GroupAlgElem, ...]:
    n = len(eps) + 1
    reg = regular(n)
    x = solomon_generator(eps)
    # columns g x for all g: the left ideal generated by x
    M = reg.right_matrix(x)
    _, pivots = rref_qq(M)
    out = []
    for j in pivots:
        out.append(reg.element([normalize_number(M[k, j]) for k in range(reg.order)]))
    return tuple(out)


def solomon_ideal_basis(eps: Sequence[int]) -> list[GroupAlgElem]:
    """Basis of the left ideal Q[S_n] s_eps sbar_eps."""
    eps = SignSequence(eps)
    _check_n(len(eps) + 1)
    return list(_ideal_basis(tuple(eps)))


def basis_matrix(basis: Sequence[GroupAlgElem], n: int) -> flint.fmpq_mat:
    reg = regular(n)
    M = flint.fmpq_mat(reg.order, len(basis))
    for j, b in enumerate(basis):
        for g, c in b.terms.items():
            M[reg.index[g], j] = _fmpq(c)
    return M


@lru_cache(maxsize=None)
def _projectors(n: int) -> tuple[tuple[SignSequence, GroupAlgElem], ...]:
    reg = regular(n)
    seqs = sign_sequences(n)
    bases = [solomon_ideal_basis(eps) for eps in seqs]
    total = sum(len(b) for b in bases)
    if total != reg.order:
        raise ConsistencyError(f"Solomon ideals have total dimension {total}, expected {reg.order}")
    all_cols = [b for basis in bases for b in basis]
    B = basis_matrix(all_cols, n)
    if B.rank() != reg.order:
        raise ConsistencyError("sum of Solomon ideals is not direct")
    one = flint.fmpq_mat(reg.order, 1)
    one[reg.index[tuple(range(n))], 0] = 1
    c = B.solve(one)
    out, offset = [], 0
    for eps, basis in zip(seqs, bases):
        acc: dict[Perm, object] = {}
        for k, b in enumerate(basis):
            coeff = normalize_number(c[offset + k, 0])
            if coeff:
                for g, v in b.terms.items():
                    acc[g] = acc.get(g, 0) + coeff * v
        offset += len(basis)
        out.append((eps, GroupAlgElem(n, acc)))
    return tuple(out)


def solomon_projectors(n: int, verify: bool = True) -> dict[SignSequence, GroupAlgElem]:
    """Orthogonal idempotents p_eps with p_eps in the ideal of eps and sum 1."""
    _check_n(n)
    projs = dict(_projectors(n))
    if verify:
        verify_projectors(n, projs)
    return projs


def verify_projectors(n: int, projs: Mapping[SignSequence, GroupAlgElem]) -> None:
    """Check completeness, orthogonality and idempotency exactly, and images."""
    reg = regular(n)
    total = GroupAlgElem(n)
    for p in projs.values():
        total = total + p
    if total != GroupAlgElem.identity(n):
        raise ConsistencyError("projectors do not sum to 1")
    keys = list(projs)
    P = basis_matrix([projs[k] for k in keys], n)
    for j, delta in enumerate(keys):
        R = reg.right_matrix(projs[delta])
        prod = R * P  # column i is p_i p_delta
        for i in range(len(keys)):
            col_ok = all(prod[r, i] == (P[r, j] if i == j else 0) for r in range(reg.order))
            if not col_ok:
                raise ConsistencyError(f"p_{keys[i]} p_{delta} != delta * p")
        # image of right multiplication by p_delta is the ideal
        rank = R.rank()
        if rank != len(solomon_ideal_basis(delta)):
            raise ConsistencyError(f"image of p_{delta} has rank {rank}")
        ideal = basis_matrix(solomon_ideal_basis(delta), n)
        try:
            solve_coordinates(ideal, basis_matrix([projs[delta]], n))
        except ArithmeticError:
            raise ConsistencyError(f"p_{delta} is not in its ideal") from None


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def class_representative(mu: Sequence[int], n: int) -> Perm:
    perm = list(range(n))
    start = 0
    for part in mu:
        for k in range(part):
            perm[start + k] = start + (k + 1) % part
        start += part
    return tuple(perm)


def left_action_trace(basis: Sequence[GroupAlgElem], g: Perm, check: bool = True):
    """Trace of left multiplication by g on span(basis); raises if the span is not stable."""
    n = len(g)
    reg = regular(n)
    B = basis_matrix(basis, n)
    gB = flint.fmpq_mat(reg.order, len(basis))
    for j, b in enumerate(basis):
        for h, c in b.terms.items():
            gB[reg.index[compose(g, h)], j] = _fmpq(c)
    try:
        X = solve_coordinates(B, gB)
    except ArithmeticError:
        raise ConsistencyError("subspace is not stable under left multiplication") from None
    return normalize_number(sum((X[i, i] for i in range(len(basis))), flint.fmpq(0)))


def frobenius_character(basis: Sequence[GroupAlgElem]) -> SymFunc:
    """Frobenius characteristic of the left S_n-action on span(basis), in the s-basis."""
    if not basis:
        return SymFunc("s")
    n = basis[0].n
    from .shapes import partitions

    for i in range(1, n):
        left_action_trace(basis, transposition(n, i))  # stability under generators
    acc = {}
    for mu in partitions(n):
        chi = left_action_trace(basis, class_representative(mu, n))
        if chi:
            acc[mu] = Fraction(chi) / z_mu(mu)
    out = convert(SymFunc("p", acc), "s")
    for lam, c in out.terms.items():
        if not isinstance(c, int) or c < 0:
            raise ConsistencyError(f"non-integral multiplicity {c} for {lam}")
    return out


def regular_basis(n: int) -> list[GroupAlgElem]:
    return [GroupAlgElem.group_element(g) for g in regular(n).elements]


def right_ideal_image(x: GroupAlgElem) -> list[GroupAlgElem]:
    """Basis of Q[S_n] x (image of right multiplication by x)."""
    reg = regular(x.n)
    M = reg.right_matrix(x)
    _, pivots = rref_qq(M)
    return [reg.element([normalize_number(M[k, j]) for k in range(reg.order)]) for j in pivots]
