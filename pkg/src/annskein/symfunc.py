"""Symmetric functions with exact (rational or Laurent) coefficients.

The Schur basis is canonical: every conversion goes through it. Transition
tables are built per degree and memoized:

* h -> s and e -> s by iterated Pieri rules (Kostka numbers);
* p -> s by Murnaghan-Nakayama on beta-numbers;
* s -> h, s -> e by Jacobi-Trudi determinants;
* s -> p by character orthogonality, s -> m by Kostka, m -> s by inverting it.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping, Sequence

import flint

from .errors import BoundExceeded, ConsistencyError, ParseError
from .exactcore import BiLaurent, LaurentPoly, normalize_number
from .shapes import (Composition, Partition, SkewShape, composition_to_ribbon,
                     configured_bound, partitions)

BASES = ("s", "h", "e", "p", "m")


def degree_bound() -> int:
    return configured_bound(12)


def _check_degree(n: int) -> None:
    limit = degree_bound()
    if n > limit:
        raise BoundExceeded(f"symmetric function degree {n} exceeds bound {limit}")


def _clean(c):
    if isinstance(c, LaurentPoly):
        k = c.constant()
        return c if k is None else k
    if isinstance(c, (Fraction, flint.fmpq)):
        return normalize_number(c)
    return c


def _accumulate(acc: dict, key, value) -> None:
    if not value:
        return
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class SymFunc:
    """Finite linear combination of basis elements indexed by partitions.

    ``terms`` maps Partition -> coefficient (int, Fraction or LaurentPoly).
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Mapping[Sequence[int], object] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        clean = {}
        for lam, c in (terms or {}).items():
            if c:
                c = _clean(c)
                if c:
                    key = Partition(lam)
                    _accumulate(clean, key, c)
        self.terms = {k: _clean(v) for k, v in clean.items()}

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, basis: str = "s") -> "SymFunc":
        return cls(basis)

    @classmethod
    def one(cls, basis: str = "s") -> "SymFunc":
        return cls(basis, {(): 1})

    @classmethod
    def constant(cls, c, basis: str = "s") -> "SymFunc":
        return cls(basis, {(): c})

    @classmethod
    def basis_element(cls, basis: str, lam: Sequence[int], coeff=1) -> "SymFunc":
        if basis in ("h", "e", "p"):
            lam = sorted(lam, reverse=True)
        return cls(basis, {Partition(lam): coeff})

    # -- inspection -------------------------------------------------------
    def degree(self) -> int:
        return max((lam.size() for lam in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({lam.size() for lam in self.terms}) <= 1

    def coeff(self, lam: Sequence[int]):
        return self.terms.get(Partition(lam), 0)

    def support(self) -> list[Partition]:
        return sorted(self.terms, key=_sort_key)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def map_coefficients(self, fn: Callable[[object], object]) -> "SymFunc":
        return SymFunc(self.basis, {lam: fn(c) for lam, c in self.terms.items()})

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "SymFunc":
        if isinstance(other, SymFunc):
            return other if other.basis == self.basis else convert(other, self.basis)
        return SymFunc.constant(other, self.basis)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for lam, c in other.terms.items():
            _accumulate(acc, lam, c)
        return SymFunc(self.basis, acc)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc(self.basis, {lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "SymFunc":
        if not c:
            return SymFunc(self.basis)
        return SymFunc(self.basis, {lam: v * c for lam, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = SymFunc.one(self.basis)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SymFunc):
            a = self if self.basis == "s" else convert(self, "s")
            b = other if other.basis == "s" else convert(other, "s")
            return a.terms == b.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        s = self if self.basis == "s" else convert(self, "s")
        return hash(frozenset(s.terms.items()))

    # -- text / json ------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam in self.support():
            c = self.terms[lam]
            mono = f"{self.basis}[{','.join(map(str, lam))}]"
            cs = str(c)
            if cs == "1":
                body, sign = mono, "+"
            elif cs == "-1":
                body, sign = mono, "-"
            elif isinstance(c, LaurentPoly) and not c.is_monomial():
                body, sign = f"({cs})*{mono}", "+"
            elif cs.startswith("-"):
                body, sign = f"{cs[1:]}*{mono}", "-"
            else:
                body, sign = f"{cs}*{mono}", "+"
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"SymFunc({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [{"partition": list(lam), "coeff": str(self.terms[lam])} for lam in self.support()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "SymFunc":
        terms = {}
        for t in obj["terms"]:
            c = LaurentPoly.parse(str(t["coeff"]))
            _accumulate(terms, Partition(t["partition"]), c)
        return cls(obj["basis"], terms)

    @classmethod
    def parse(cls, text: str) -> "SymFunc":
        """Parse the canonical text form, e.g. ``"s[3,1] + 2*q^2*s[2,2]"``."""
        import re

        s = text.replace(" ", "")
        if s == "0":
            return cls("s")
        if s[0] not in "+-":
            s = "+" + s
        pattern = re.compile(r"([+-])(?:\(([^()]*)\)\*|([^()\[\]]*?)\*)?([sehpm])\[([\d,]*)\]")
        pos, terms, basis = 0, {}, None
        for m in pattern.finditer(s):
            if m.start() != pos:
                raise ParseError(f"cannot parse symmetric function {text!r}")
            pos = m.end()
            ctext = m.group(2) if m.group(2) is not None else m.group(3)
            c = LaurentPoly.parse(ctext) if ctext else LaurentPoly(1)
            if m.group(1) == "-":
                c = -c
            if basis not in (None, m.group(4)):
                raise ParseError("mixed bases in one expression")
            basis = m.group(4)
            lam = Partition(int(x) for x in m.group(5).split(",") if x)
            _accumulate(terms, lam, c)
        if pos != len(s):
            raise ParseError(f"cannot parse symmetric function {text!r}")
        return cls(basis or "s", terms)


def _sort_key(lam: Partition):
    # degree first, then reverse lexicographic (dominance-compatible)
    return (lam.size(), tuple(-p for p in lam))


# convenient constructors

def s(*lam) -> SymFunc:
    lam = lam[0] if len(lam) == 1 and isinstance(lam[0], (tuple, list)) else lam
    return SymFunc.basis_element("s", lam)


def h(*lam) -> SymFunc:
    lam = lam[0] if len(lam) == 1 and isinstance(lam[0], (tuple, list)) else lam
    return SymFunc.basis_element("h", [x for x in lam if x])


def e(*lam) -> SymFunc:
    lam = lam[0] if len(lam) == 1 and isinstance(lam[0], (tuple, list)) else lam
    return SymFunc.basis_element("e", [x for x in lam if x])


def p(*lam) -> SymFunc:
    lam = lam[0] if len(lam) == 1 and isinstance(lam[0], (tuple, list)) else lam
    return SymFunc.basis_element("p", lam)


def m(*lam) -> SymFunc:
    lam = lam[0] if len(lam) == 1 and isinstance(lam[0], (tuple, list)) else lam
    return SymFunc.basis_element("m", lam)


# ---------------------------------------------------------------------------
# Pieri rules and Kostka numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def horizontal_strips(lam: tuple[int, ...], k: int) -> tuple[Partition, ...]:
    """Partitions nu with nu/lam a horizontal strip of size k."""
    lam = tuple(lam)
    ell = len(lam)
    out = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == ell + 1:
            if remaining == 0:
                out.append(Partition(acc))
            return
        cur = lam[i] if i < ell else 0
        cap = remaining if i == 0 else min(remaining, (lam[i - 1] if i - 1 < ell else 0) - cur)
        for add in range(cap, -1, -1):
            rec(i + 1, remaining - add, acc + [cur + add])

    rec(0, k, [])
    return tuple(out)


@lru_cache(maxsize=None)
def vertical_strips(lam: tuple[int, ...], k: int) -> tuple[Partition, ...]:
    conj = Partition(lam).conjugate()
    return tuple(nu.conjugate() for nu in horizontal_strips(tuple(conj), k))


@lru_cache(maxsize=None)
def h_to_s_row(mu: tuple[int, ...]) -> dict[Partition, int]:
    """h_mu = sum_lam K_{lam,mu} s_lam (mu in any order)."""
    cur = {Partition(()): 1}
    for k in mu:
        nxt: dict[Partition, int] = {}
        for lam, c in cur.items():
            for nu in horizontal_strips(tuple(lam), k):
                nxt[nu] = nxt.get(nu, 0) + c
        cur = nxt
    return cur


@lru_cache(maxsize=None)
def e_to_s_row(mu: tuple[int, ...]) -> dict[Partition, int]:
    cur = {Partition(()): 1}
    for k in mu:
        nxt: dict[Partition, int] = {}
        for lam, c in cur.items():
            for nu in vertical_strips(tuple(lam), k):
                nxt[nu] = nxt.get(nu, 0) + c
        cur = nxt
    return cur


def kostka(lam: Sequence[int], mu: Sequence[int]) -> int:
    return h_to_s_row(tuple(mu)).get(Partition(lam), 0)


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def mn_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """chi^lam evaluated on cycle type mu, by removing border strips of sizes mu."""
    lam = tuple(lam)
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    ell = len(lam)
    beta = [lam[i] + ell - 1 - i for i in range(ell)]  # strictly decreasing
    bset = set(beta)
    total = 0
    for i, b in enumerate(beta):
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        sign = -1 if sum(1 for x in beta if nb < x < b) % 2 else 1
        newbeta = sorted([x for x in beta if x != b] + [nb], reverse=True)
        L = len(newbeta)
        newlam = tuple(x - (L - 1 - j) for j, x in enumerate(newbeta))
        total += sign * mn_character(tuple(Partition(newlam)), rest)
    return total


def z_mu(mu: Sequence[int]) -> int:
    out = 1
    counts: dict[int, int] = {}
    for part in mu:
        counts[part] = counts.get(part, 0) + 1
    for part, c in counts.items():
        out *= part ** c * factorial(c)
    return out


# ---------------------------------------------------------------------------
# Jacobi-Trudi expansions into multiplicative bases
# ---------------------------------------------------------------------------

def _jt_expand(matrix: list[list[int | None]]) -> dict[Partition, int]:
    """Determinant of a matrix whose entries are single generators g_k (k>=0) or zero.

    ``None`` is zero; ``0`` is g_0 = 1. Returns the expansion in monomials of g.
    """
    n = len(matrix)
    memo: dict[int, dict[tuple, int]] = {}

    def minor(row: int, mask: int) -> dict[tuple, int]:
        if row == n:
            return {(): 1}
        if mask in memo:
            return memo[mask]
        acc: dict[tuple, int] = {}
        sign = 1
        for j in range(n):
            if mask >> j & 1:
                continue
            k = matrix[row][j]
            if k is not None:
                sub = minor(row + 1, mask | (1 << j))
                for key, c in sub.items():
                    nk = tuple(sorted(key + ((k,) if k else ()), reverse=True))
                    acc[nk] = acc.get(nk, 0) + sign * c
            sign = -sign
        acc = {k: v for k, v in acc.items() if v}
        memo[mask] = acc
        return acc

    return {Partition(k): v for k, v in minor(0, 0).items()}


def jacobi_trudi_matrix(outer: Sequence[int], inner: Sequence[int] = ()) -> list[list[int | None]]:
    outer = Partition(outer)
    inner = Partition(inner)
    ell = len(outer)
    mat = []
    for i in range(ell):
        row = []
        for j in range(ell):
            k = outer.part(i) - inner.part(j) - i + j
            row.append(k if k >= 0 else None)
        mat.append(row)
    return mat


@lru_cache(maxsize=None)
def s_to_h_row(lam: tuple[int, ...]) -> dict[Partition, int]:
    return _jt_expand(jacobi_trudi_matrix(lam))


@lru_cache(maxsize=None)
def s_to_e_row(lam: tuple[int, ...]) -> dict[Partition, int]:
    return _jt_expand(jacobi_trudi_matrix(Partition(lam).conjugate()))


# ---------------------------------------------------------------------------
# transition tables per degree
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _kostka_inverse(n: int) -> dict[Partition, dict[Partition, object]]:
    """m_mu = sum_lam Kinv[mu][lam] s_lam."""
    parts = partitions(n)
    idx = {lam: i for i, lam in enumerate(parts)}
    K = flint.fmpq_mat(len(parts), len(parts))
    for j, mu in enumerate(parts):
        for lam, c in h_to_s_row(tuple(mu)).items():
            K[idx[lam], j] = c
    # K[lam, mu] = K_{lam mu}; s_lam = sum_mu K[lam,mu] m_mu so m = K^{-1} s
    Kinv = K.inv()
    out = {}
    for i, mu in enumerate(parts):
        row = {}
        for j, lam in enumerate(parts):
            v = Kinv[i, j]
            if v != 0:
                row[lam] = normalize_number(v)
        out[mu] = row
    return out


def _to_s_row(basis: str, lam: Partition) -> Mapping[Partition, object]:
    if basis == "s":
        return {lam: 1}
    if basis == "h":
        return h_to_s_row(tuple(lam))
    if basis == "e":
        return e_to_s_row(tuple(lam))
    if basis == "p":
        return _p_to_s_row(tuple(lam))
    return _kostka_inverse(lam.size())[lam]


@lru_cache(maxsize=None)
def _p_to_s_row(mu: tuple[int, ...]) -> dict[Partition, int]:
    n = sum(mu)
    out = {}
    for lam in partitions(n):
        c = mn_character(tuple(lam), mu)
        if c:
            out[lam] = c
    return out


@lru_cache(maxsize=None)
def _s_to_p_row(lam: tuple[int, ...]) -> dict[Partition, Fraction]:
    n = sum(lam)
    out = {}
    for mu in partitions(n):
        c = mn_character(lam, tuple(mu))
        if c:
            out[mu] = normalize_number(Fraction(c, z_mu(mu)))
    return out


@lru_cache(maxsize=None)
def _s_to_m_row(lam: tuple[int, ...]) -> dict[Partition, int]:
    n = sum(lam)
    out = {}
    for mu in partitions(n):
        c = kostka(lam, mu)
        if c:
            out[mu] = c
    return out


def _from_s_row(basis: str, lam: Partition) -> Mapping[Partition, object]:
    if basis == "s":
        return {lam: 1}
    if basis == "h":
        return s_to_h_row(tuple(lam))
    if basis == "e":
        return s_to_e_row(tuple(lam))
    if basis == "p":
        return _s_to_p_row(tuple(lam))
    return _s_to_m_row(tuple(lam))


def _change(f: SymFunc, target: str, table: Callable[[str, Partition], Mapping]) -> SymFunc:
    acc: dict[Partition, object] = {}
    for lam, c in f.terms.items():
        _check_degree(lam.size())
        for nu, k in table(lam).items():
            _accumulate(acc, nu, c * k)
    return SymFunc(target, acc)


def convert(f: SymFunc, target: str) -> SymFunc:
    """Express ``f`` in the basis ``target`` (one of s, h, e, p, m)."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        for lam in f.terms:
            _check_degree(lam.size())
        return f
    s_form = f if f.basis == "s" else _change(f, "s", lambda lam: _to_s_row(f.basis, lam))
    if target == "s":
        return s_form
    return _change(s_form, target, lambda lam: _from_s_row(target, lam))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def lr_product(lam: tuple[int, ...], mu: tuple[int, ...]) -> dict[Partition, int]:
    """s_lam * s_mu in the Schur basis: iterated Pieri on the h-expansion of s_mu."""
    if len(Partition(lam)) < len(Partition(mu)) and sum(lam) <= sum(mu):
        lam, mu = mu, lam
    out: dict[Partition, int] = {}
    for hmu, c in s_to_h_row(mu).items():
        cur = {Partition(lam): 1}
        for k in hmu:
            nxt: dict[Partition, int] = {}
            for nu, v in cur.items():
                for rho in horizontal_strips(tuple(nu), k):
                    nxt[rho] = nxt.get(rho, 0) + v
            cur = nxt
        for nu, v in cur.items():
            out[nu] = out.get(nu, 0) + c * v
    return {k: v for k, v in out.items() if v}


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """c^lam_{mu,nu}: coefficient of s_lam in s_mu s_nu."""
    return lr_product(tuple(Partition(mu)), tuple(Partition(nu))).get(Partition(lam), 0)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    _check_degree(f.degree() + g.degree())
    if f.basis == g.basis and f.basis in ("h", "e", "p"):
        acc: dict[Partition, object] = {}
        for a, c in f.terms.items():
            for b, d in g.terms.items():
                _accumulate(acc, Partition(sorted(a + b, reverse=True)), c * d)
        return SymFunc(f.basis, acc)
    fs, gs = convert(f, "s"), convert(g, "s")
    acc = {}
    for a, c in fs.terms.items():
        for b, d in gs.terms.items():
            cd = c * d
            for nu, k in lr_product(tuple(a), tuple(b)).items():
                _accumulate(acc, nu, cd * k)
    out = SymFunc("s", acc)
    return out if f.basis == "s" else convert(out, f.basis)


def multiply_via_powersums(f: SymFunc, g: SymFunc) -> SymFunc:
    """Independent product route: multiply in the p-basis, return in s."""
    return convert(multiply(convert(f, "p"), convert(g, "p")), "s")


# ---------------------------------------------------------------------------
# skew Schur functions and ribbons
# ---------------------------------------------------------------------------

def skew_schur(sh: SkewShape | tuple) -> SymFunc:
    """s_{outer/inner} via the Jacobi-Trudi determinant, in the s-basis."""
    if not isinstance(sh, SkewShape):
        sh = SkewShape(*sh)
    _check_degree(sh.size())
    hexp = _jt_expand(jacobi_trudi_matrix(sh.outer, sh.inner))
    return convert(SymFunc("h", hexp), "s")


def skew_schur_lr(sh: SkewShape | tuple) -> SymFunc:
    """s_{outer/inner} via the adjoint LR rule: coefficient of s_nu is c^outer_{inner,nu}."""
    if not isinstance(sh, SkewShape):
        sh = SkewShape(*sh)
    out = {}
    for nu in partitions(sh.size()):
        c = lr_coefficient(sh.outer, sh.inner, nu)
        if c:
            out[nu] = c
    return SymFunc("s", out)


def psi_inclusion_exclusion(a: Sequence[int]) -> SymFunc:
    """Alternating sum of h_b over coarsenings b of a."""
    a = Composition(a)
    acc: dict[Partition, int] = {}
    for b, merges in a.coarsenings():
        _accumulate(acc, Partition(sorted(b, reverse=True)), -1 if merges % 2 else 1)
    return SymFunc("h", acc)


def psi_determinant(a: Sequence[int]) -> SymFunc:
    """det M(a): h of partial sums on and above the diagonal, ones just below."""
    a = Composition(a)
    s_len = len(a)
    prefix = [0]
    for part in a:
        prefix.append(prefix[-1] + part)
    mat: list[list[int | None]] = []
    for i in range(s_len):
        row = []
        for j in range(s_len):
            if i <= j:
                row.append(prefix[j + 1] - prefix[i])
            elif i == j + 1:
                row.append(0)
            else:
                row.append(None)
        mat.append(row)
    return SymFunc("h", _jt_expand(mat))


def psi_recursive(a: Sequence[int]) -> SymFunc:
    """Recursion removing the last part: Psi(a', a_s) = Psi(a') h_{a_s} - Psi(a'', a_{s-1}+a_s)."""
    a = tuple(Composition(a))
    return SymFunc("h", _psi_rec(a))


@lru_cache(maxsize=None)
def _psi_rec(a: tuple[int, ...]) -> dict[Partition, int]:
    if len(a) == 1:
        return {Partition(a): 1}
    head = _psi_rec(a[:-1])
    acc: dict[Partition, int] = {}
    for lam, c in head.items():
        _accumulate(acc, Partition(sorted(lam + (a[-1],), reverse=True)), c)
    for lam, c in _psi_rec(a[:-2] + (a[-2] + a[-1],)).items():
        _accumulate(acc, lam, -c)
    return acc


def psi(a: Sequence[int]) -> SymFunc:
    """Ribbon Schur function Psi(a) in the s-basis, computed three ways and cross-checked."""
    a = Composition(a)
    _check_degree(a.size())
    routes = {
        "inclusion-exclusion": convert(psi_inclusion_exclusion(a), "s"),
        "determinant": convert(psi_determinant(a), "s"),
        "ribbon": skew_schur(composition_to_ribbon(a)),
    }
    ref = routes["ribbon"]
    for name, val in routes.items():
        if val.terms != ref.terms:
            raise ConsistencyError(f"Psi{tuple(a)}: route {name} gives {val}, ribbon gives {ref}")
    return ref


# ---------------------------------------------------------------------------
# plethystic transform and specializations
# ---------------------------------------------------------------------------

def _minus_factor(k: int) -> LaurentPoly:
    return LaurentPoly({-k: 1, k: -1})


def pleth_transform(f: SymFunc, direction: str = "minus") -> SymFunc:
    """f[X(q^-1 - q)] (direction minus) or f[X(q - q^-1)] (plus), returned in the s-basis."""
    if direction not in ("minus", "plus"):
        raise ValueError("direction must be 'minus' or 'plus'")
    sign = 1 if direction == "minus" else -1
    fp = convert(f, "p")
    acc: dict[Partition, object] = {}
    for mu, c in fp.terms.items():
        factor = LaurentPoly(1)
        for k in mu:
            factor = factor * (_minus_factor(k) * sign)
        _accumulate(acc, mu, factor * c)
    return convert(SymFunc("p", acc), "s")


def divide_coefficients(f: SymFunc, d: LaurentPoly) -> SymFunc:
    """Divide each coefficient by ``d``; raises ArithmeticError if some division is inexact."""
    out = {}
    for lam, c in f.terms.items():
        out[lam] = LaurentPoly(c).exact_div(d) if not isinstance(c, LaurentPoly) else c.exact_div(d)
    return SymFunc(f.basis, out)


def spec_at_points(f: SymFunc, points: Sequence[object]):
    """Evaluate ``f`` at the given variables (all others zero).

    Points may be numbers, LaurentPoly monomials, or any commutative ring
    elements supporting ``+``, ``*`` and ``**``.
    """
    fp = convert(f, "p")
    power_cache: dict[int, object] = {}

    def pk(k: int):
        if k not in power_cache:
            acc = 0
            for x in points:
                acc = acc + x ** k
            power_cache[k] = acc
        return power_cache[k]

    total = 0
    for mu, c in fp.terms.items():
        term = c
        for k in mu:
            term = term * pk(k)
        total = total + term
    return LaurentPoly(total) if _is_rational(total) else total


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def principal_points(N: int) -> list[LaurentPoly]:
    return [LaurentPoly.monomial(N - 1 - 2 * j) for j in range(N)]


def principal_spec(f: SymFunc, N: int) -> LaurentPoly:
    """f(q^(N-1), q^(N-3), ..., q^(1-N))."""
    if N < 1:
        raise ValueError("N must be positive")
    fp = convert(f, "p")
    cache: dict[int, LaurentPoly] = {}
    total = LaurentPoly()
    for mu, c in fp.terms.items():
        term = LaurentPoly(1)
        for k in mu:
            if k not in cache:
                cache[k] = LaurentPoly({k * (N - 1 - 2 * j): 1 for j in range(N)})
            term = term * cache[k]
        total = total + term * c
    return total


def spec_by_tableaux(lam: Sequence[int], points: Sequence[LaurentPoly]) -> LaurentPoly:
    """s_lam at ``points`` by summing over semistandard tableaux (slow oracle)."""
    lam = Partition(lam)
    cells = lam.cells()
    nvars = len(points)
    total = LaurentPoly()

    def rec(idx: int, filling: dict, weight: LaurentPoly):
        nonlocal total
        if idx == len(cells):
            total = total + weight
            return
        r, c = cells[idx]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, nvars):
            filling[(r, c)] = v
            rec(idx + 1, filling, weight * points[v])
        filling.pop((r, c), None)

    rec(0, {}, LaurentPoly(1))
    return total


def homfly_power_sum(k: int) -> BiLaurent:
    """(a^k - a^-k)/(q^k - q^-k)."""
    return BiLaurent.from_terms({(k, 0): 1, (-k, 0): -1}) / BiLaurent.from_terms({(0, k): 1, (0, -k): -1})


def homfly_eval(f: SymFunc) -> BiLaurent:
    """Ring homomorphism sending p_k to (a^k - a^-k)/(q^k - q^-k)."""
    fp = convert(f, "p")
    cache: dict[int, BiLaurent] = {}
    total = BiLaurent(0)
    for mu, c in fp.terms.items():
        if isinstance(c, LaurentPoly):
            k0 = c.constant()
            if k0 is None:
                raise TypeError("homfly_eval needs q-free coefficients")
            c = k0
        term = BiLaurent(c)
        for k in mu:
            if k not in cache:
                cache[k] = homfly_power_sum(k)
            term = term * cache[k]
        total = total + term
    return total


def hook_powersum_expansion(n: int) -> SymFunc:
    """p_n as the alternating sum of hooks: sum_k (-1)^(n-1-k) s_{k+1,1^(n-1-k)}."""
    return SymFunc("s", {Partition((k + 1,) + (1,) * (n - 1 - k)): (-1) ** (n - 1 - k) for k in range(n)})


def h1_power(n: int) -> SymFunc:
    return SymFunc("s", dict(h_to_s_row((1,) * n)))


def sym_to_json(f: SymFunc) -> str:
    return json.dumps(f.to_json(), sort_keys=True)
