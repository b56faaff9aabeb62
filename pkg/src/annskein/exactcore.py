"""Exact coefficient rings and dense exact linear algebra.

Coefficients are ``fractions.Fraction`` (normalized to ``int`` when integral).
``LaurentPoly`` is pure Python; ``RatFunc`` and ``BiLaurent`` keep their
numerator/denominator as FLINT polynomials so gcd normalization is cheap.
Dense rational matrices of any real size are delegated to ``flint.fmpq_mat``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Mapping, Sequence

import flint

from .errors import NotAFieldError, NotIdempotentError, ParseError

Rational = Fraction


def normalize_number(c):
    """Return ``c`` as an ``int`` if it is integral, else as a ``Fraction``."""
    if isinstance(c, int):
        return c
    if isinstance(c, flint.fmpq):
        c = Fraction(int(c.p), int(c.q))
    elif not isinstance(c, Fraction):
        c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _fmpq(c) -> flint.fmpq:
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _is_number(x) -> bool:
    return isinstance(x, (int, Fraction, _RationalABC)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# Laurent polynomials in q
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Finite sum of ``c * q**e`` with rational ``c`` and integer ``e``.

    Instances are immutable and hashable; zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | int | Fraction | None = None):
        c: dict[int, object] = {}
        if coeffs is None:
            pass
        elif isinstance(coeffs, LaurentPoly):
            c = dict(coeffs._c)
        elif _is_number(coeffs):
            if coeffs:
                c[0] = normalize_number(coeffs)
        else:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = normalize_number(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, object]:
        return dict(self._c)

    def items(self):
        """(exponent, coefficient) pairs in decreasing exponent order."""
        return sorted(self._c.items(), reverse=True)

    def coeff(self, e: int):
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_degree(self) -> int:
        return min(self._c)

    def max_degree(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._c.values())

    def constant(self):
        """The value as a plain number if this is a constant, else ``None``."""
        if not self._c:
            return 0
        if list(self._c) == [0]:
            return self._c[0]
        return None

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if _is_number(other):
            return LaurentPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = normalize_number(w) if isinstance(w, Fraction) else w
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_number(other):
            if not other:
                return LaurentPoly._raw({})
            other = normalize_number(other)
            return LaurentPoly._raw({e: normalize_number(v * other) for e, v in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, object] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: normalize_number(v) for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be raised to negative powers")
            (e, v), = self._c.items()
            return LaurentPoly({e * k: Fraction(v) ** k})
        result = LaurentPoly(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if _is_number(other):
            return self * (Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.exact_div(other)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other``; raises ``ArithmeticError`` if inexact."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return LaurentPoly()
        a, sa = self._to_poly()
        b, sb = other._to_poly()
        quo, rem = divmod(a, b)
        if not rem.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return LaurentPoly._from_poly(quo, sa - sb)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if _is_number(other):
            return self._c == ({0: normalize_number(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not self._c:
                self._hash = hash(0)
            elif list(self._c) == [0]:
                self._hash = hash(self._c[0])
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- substitutions ----------------------------------------------------
    def bar(self) -> "LaurentPoly":
        """q -> q^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def mirror(self) -> "LaurentPoly":
        """q -> -q^-1."""
        return LaurentPoly._raw({-e: (-v if e % 2 else v) for e, v in self._c.items()})

    def substitute_power(self, k: int, sign: int = 1) -> "LaurentPoly":
        """q -> sign * q^k."""
        return LaurentPoly({e * k: (v if sign == 1 or e % 2 == 0 else -v) for e, v in self._c.items()})

    def compose(self, x) -> object:
        """Evaluate at ``x`` (a number, LaurentPoly, or anything with ring ops)."""
        result = 0
        for e, v in self._c.items():
            if e >= 0:
                result = result + v * (x ** e)
            else:
                result = result + v * (1 / (x ** (-e)) if not isinstance(x, LaurentPoly) else x ** e)
        return result

    def __call__(self, x):
        return self.compose(x)

    # -- conversions ------------------------------------------------------
    def _to_poly(self) -> tuple[flint.fmpq_poly, int]:
        lo = min(self._c)
        coeffs = [0] * (max(self._c) - lo + 1)
        for e, v in self._c.items():
            coeffs[e - lo] = _fmpq(v)
        return flint.fmpq_poly(coeffs), lo

    @classmethod
    def _from_poly(cls, p: flint.fmpq_poly, shift: int = 0) -> "LaurentPoly":
        return cls._raw({i + shift: normalize_number(c) for i, c in enumerate(p.coeffs()) if c != 0})

    def to_ratfunc(self) -> "RatFunc":
        return RatFunc.from_laurent(self)

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            neg = v < 0
            a = -v if neg else v
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("-" if neg else "+") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``; accepts e.g. ``"q^4+q^2+1+q^-2"`` or ``"-3/2*q^-1"``."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty Laurent polynomial")
        if s == "0":
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        out = cls()
        pos = 0
        for m in _TERM_RE.finditer(s):
            if m.start() != pos or not (m.group(2) or m.group(3)):
                raise ParseError(f"cannot parse {text!r}")
            pos = m.end()
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3) is None:
                e = 0
            else:
                e = int(m.group(4)) if m.group(4) is not None else 1
            out = out + cls({e: coeff if m.group(1) == "+" else -coeff})
        if pos != len(s):
            raise ParseError(f"cannot parse {text!r}")
        return out


_TERM_RE = re.compile(r"([+-])(?:(\d+(?:/\d+)?)(?:\*(?=q))?)?(q(?:\^(-?\d+))?)?")

q = LaurentPoly.monomial(1)


def bar_involution(f: LaurentPoly) -> LaurentPoly:
    """Exponent e coefficient moved to -e."""
    return LaurentPoly(f).bar()


def mirror_substitute(f: LaurentPoly) -> LaurentPoly:
    """Each monomial c*q^e becomes c*(-1)^e*q^-e."""
    return LaurentPoly(f).mirror()


def quantum_integer(n: int) -> LaurentPoly:
    """Balanced [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly({n - 1 - 2 * j: 1 for j in range(n)})


def quantum_binomial(n: int, k: int) -> LaurentPoly:
    """Balanced Gaussian binomial, symmetric under q -> q^-1."""
    if k < 0 or k > n or n < 0:
        return LaurentPoly()
    num = LaurentPoly(1)
    den = LaurentPoly(1)
    for j in range(k):
        num = num * quantum_integer(n - j)
        den = den * quantum_integer(j + 1)
    return num.exact_div(den)


# ---------------------------------------------------------------------------
# Rational functions in q
# ---------------------------------------------------------------------------

class RatFunc:
    """Reduced fraction num/den of polynomials in q over Q, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = self._as_poly(num)
        den = self._as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = flint.fmpq_poly([1])
            return
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        lc = den.coeffs()[-1]
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num = num
        self.den = den

    @staticmethod
    def _as_poly(x) -> flint.fmpq_poly:
        if isinstance(x, flint.fmpq_poly):
            return x
        if isinstance(x, LaurentPoly):
            if x.min_degree() < 0 if x else False:
                raise ValueError("use RatFunc.from_laurent for negative exponents")
            p, lo = x._to_poly() if x else (flint.fmpq_poly([]), 0)
            return p * flint.fmpq_poly([0] * lo + [1]) if lo else p
        if _is_number(x):
            return flint.fmpq_poly([_fmpq(x)])
        raise TypeError(f"cannot build polynomial from {type(x).__name__}")

    @classmethod
    def _raw(cls, num, den) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_laurent(cls, f: LaurentPoly) -> "RatFunc":
        if not f:
            return cls(0)
        p, lo = f._to_poly()
        if lo >= 0:
            return cls(p * flint.fmpq_poly([0] * lo + [1]))
        return cls(p, flint.fmpq_poly([0] * (-lo) + [1]))

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc.from_laurent(other)
        if _is_number(other):
            return RatFunc(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc(0)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(str(c) for c in self.num.coeffs()), tuple(str(c) for c in self.den.coeffs())))

    def is_laurent(self) -> bool:
        d = self.den.coeffs()
        return all(c == 0 for c in d[:-1])

    def to_laurent(self) -> LaurentPoly:
        """Exact conversion; raises ``ArithmeticError`` if the denominator is not a power of q."""
        if not self.is_laurent():
            raise ArithmeticError(f"denominator {self.den} of {self} does not clear")
        return LaurentPoly._from_poly(self.num, -self.den.degree())

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.to_laurent())
        return f"({self.num.str(var='q') if hasattr(self.num, 'str') else self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# Two-variable rational functions in a, q
# ---------------------------------------------------------------------------

_AQ = flint.fmpq_mpoly_ctx.get(("a", "q"), "lex")


class BiLaurent:
    """Reduced fraction of polynomials in (a, q) over Q.

    Laurent monomials are absorbed into numerator/denominator on construction.
    The denominator is normalized to leading coefficient 1 (lex order, a > q).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = self._as_mpoly(num)
        den = _AQ.from_dict({(0, 0): 1}) if den is None else self._as_mpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, _AQ.from_dict({(0, 0): 1})
            return
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den

    @staticmethod
    def _as_mpoly(x):
        if isinstance(x, flint.fmpq_mpoly):
            return x
        if _is_number(x):
            return _AQ.from_dict({(0, 0): _fmpq(x)})
        raise TypeError(f"cannot build (a,q)-polynomial from {type(x).__name__}")

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], object]) -> "BiLaurent":
        """Build from a Laurent mapping (a-exponent, q-exponent) -> coefficient."""
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return cls(0)
        amin = min(0, min(k[0] for k in terms))
        qmin = min(0, min(k[1] for k in terms))
        num = _AQ.from_dict({(i - amin, j - qmin): _fmpq(v) for (i, j), v in terms.items()})
        den = _AQ.from_dict({(-amin, -qmin): 1})
        return cls(num, den)

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiLaurent):
            return other
        if _is_number(other):
            return BiLaurent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BiLaurent(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return BiLaurent(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BiLaurent(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BiLaurent(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int):
        if k < 0:
            return BiLaurent(self.den ** (-k), self.num ** (-k))
        return BiLaurent(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def specialize_a(self, N: int) -> RatFunc:
        """Substitute a = q^N and return the resulting rational function of q."""

        def collapse(p):
            coeffs: dict[int, Fraction] = {}
            for (i, j), c in p.to_dict().items():
                e = i * N + j
                coeffs[e] = coeffs.get(e, 0) + Fraction(int(c.p), int(c.q))
            return RatFunc.from_laurent(LaurentPoly(coeffs))

        den = collapse(self.den)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at a=q^{N}")
        return collapse(self.num) / den

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

RINGS = ("QQ", "LAURENT", "RATFUNC")
FIELDS = ("QQ", "RATFUNC")


def _ring_zero(ring: str):
    return {"QQ": 0, "LAURENT": LaurentPoly(), "RATFUNC": RatFunc(0)}[ring]


def _ring_one(ring: str):
    return {"QQ": 1, "LAURENT": LaurentPoly(1), "RATFUNC": RatFunc(1)}[ring]


def _to_ring(x, ring: str):
    if ring == "QQ":
        return normalize_number(x)
    if ring == "LAURENT":
        return x if isinstance(x, LaurentPoly) else LaurentPoly(x)
    return x if isinstance(x, RatFunc) else RatFunc._coerce(x)


class Matrix:
    """Dense rectangular matrix over one of ``RINGS``."""

    __slots__ = ("rows", "nrows", "ncols", "ring")

    def __init__(self, rows: Sequence[Sequence[object]], ring: str = "QQ", ncols: int | None = None):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        self.ring = ring
        self.rows = tuple(tuple(_to_ring(x, ring) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int, ring: str = "QQ") -> "Matrix":
        one, zero = _ring_one(ring), _ring_zero(ring)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], ring)

    @classmethod
    def zeros(cls, m: int, n: int, ring: str = "QQ") -> "Matrix":
        zero = _ring_zero(ring)
        return cls([[zero] * n for _ in range(m)], ring, ncols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)] if self.rows else [], self.ring, ncols=self.nrows)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ring, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ring, self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.ring, self.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self.rows], self.ring, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.ring == other.ring == "QQ" and self.nrows * self.ncols * other.ncols > 4096:
            return Matrix.from_flint(self.to_flint() * other.to_flint())
        ring = self.ring if self.ring == other.ring else "RATFUNC"
        zero = _ring_zero(ring)
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, ring, ncols=other.ncols)

    __mul__ = __matmul__

    def apply(self, v: Sequence[object]) -> list:
        zero = _ring_zero(self.ring)
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash((self.shape, self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def trace(self):
        acc = _ring_zero(self.ring)
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def to_flint(self) -> flint.fmpq_mat:
        if self.ring != "QQ":
            raise TypeError("only rational matrices convert to fmpq_mat")
        return flint.fmpq_mat(self.nrows, self.ncols, [_fmpq(x) for r in self.rows for x in r])

    @classmethod
    def from_flint(cls, m: flint.fmpq_mat) -> "Matrix":
        nr, nc = m.nrows(), m.ncols()
        return cls([[m[i, j] for j in range(nc)] for i in range(nr)], "QQ", ncols=nc)

    def __repr__(self) -> str:
        return f"Matrix({self.ring}, {[list(map(str, r)) for r in self.rows]})"


def flint_from_columns(columns: Sequence[Sequence[object]], nrows: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(nrows, len(columns))
    for j, col in enumerate(columns):
        for i, x in enumerate(col):
            if x:
                m[i, j] = _fmpq(x)
    return m


def flint_from_sparse_columns(columns: Sequence[Mapping[int, object]], nrows: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(nrows, len(columns))
    for j, col in enumerate(columns):
        for i, x in col.items():
            if x:
                m[i, j] = _fmpq(x)
    return m


def rref_qq(m: flint.fmpq_mat) -> tuple[flint.fmpq_mat, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    R, rank = m.rref()
    pivots = []
    row = 0
    nc = m.ncols()
    for j in range(nc):
        if row < rank and R[row, j] != 0:
            pivots.append(j)
            row += 1
    return R, pivots


def qq_rank(m: flint.fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def _kernel_from_rref(R, pivots: list[int], ncols: int, get, zero, one) -> list[list]:
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -get(R, r, f)
        basis.append(v)
    return basis


def _gauss_jordan(rows: list[list], zero, one) -> tuple[list[list], list[int]]:
    """Gauss-Jordan elimination over a field with exact elements."""
    rows = [list(r) for r in rows]
    pivots = []
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv if x else zero for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank_kernel(M: Matrix) -> tuple[int, list[list]]:
    """Rank of ``M`` and a basis of its right kernel ``{v : M v = 0}``."""
    if M.ring not in FIELDS:
        raise NotAFieldError(f"rank_kernel needs a field, got {M.ring}")
    if M.nrows == 0:
        one = _ring_one(M.ring)
        zero = _ring_zero(M.ring)
        return 0, [[one if i == j else zero for i in range(M.ncols)] for j in range(M.ncols)]
    if M.ring == "QQ":
        R, pivots = rref_qq(M.to_flint())
        basis = _kernel_from_rref(R, pivots, M.ncols, lambda R, i, j: normalize_number(R[i, j]), 0, 1)
        return len(pivots), basis
    zero, one = RatFunc(0), RatFunc(1)
    R, pivots = _gauss_jordan([list(r) for r in M.rows], zero, one)
    basis = _kernel_from_rref(R, pivots, M.ncols, lambda R, i, j: R[i][j], zero, one)
    return len(pivots), basis


def column_space_basis(M: Matrix) -> list[list]:
    """Columns of ``M`` at pivot positions (a basis of its column space)."""
    if M.ring == "QQ":
        _, pivots = rref_qq(M.to_flint())
    else:
        _, pivots = _gauss_jordan([list(r) for r in M.rows], RatFunc(0), RatFunc(1))
    return [M.column(j) for j in pivots]


def split_idempotent(P: Matrix) -> tuple[list[list], list[list]]:
    """Split an exact idempotent into bases of its image and its kernel.

    Image vectors are pivot columns of ``P`` (so ``P`` fixes them); the
    complement is the kernel of ``P``.
    """
    if P.nrows != P.ncols:
        raise NotIdempotentError("idempotent must be square")
    PP = P @ P
    if PP != P:
        residual = PP - P
        nonzero = sum(1 for r in residual.rows for x in r if x)
        raise NotIdempotentError(f"P*P != P ({nonzero} nonzero residual entries)")
    image = column_space_basis(P)
    _, complement = rank_kernel(P)
    return image, complement


def solve_coordinates(basis: flint.fmpq_mat, vectors: flint.fmpq_mat) -> flint.fmpq_mat:
    """Coordinates ``X`` with ``basis @ X == vectors``; ``basis`` must have full column rank.

    Raises ``ArithmeticError`` when some vector is outside the span.
    """
    k = basis.ncols()
    if k == 0:
        if any(vectors[i, j] != 0 for i in range(vectors.nrows()) for j in range(vectors.ncols())):
            raise ArithmeticError("vector outside the (zero) span")
        return flint.fmpq_mat(0, vectors.ncols())
    _, rows = rref_qq(basis.transpose())
    if len(rows) != k:
        raise ArithmeticError("basis does not have full column rank")
    sub_b = flint.fmpq_mat(k, k)
    sub_v = flint.fmpq_mat(k, vectors.ncols())
    for a, r in enumerate(rows):
        for j in range(k):
            sub_b[a, j] = basis[r, j]
        for j in range(vectors.ncols()):
            sub_v[a, j] = vectors[r, j]
    X = sub_b.solve(sub_v)
    if basis * X != vectors:
        raise ArithmeticError("vector outside the span")
    return X


def determinant(M: Sequence[Sequence[object]], zero=0, one=1):
    """Determinant over any commutative ring by cofactor expansion with memoized minors.

    Exponential in the size; intended for small symbolic matrices (and as
    an oracle for ``rank_kernel``).
    """
    n = len(M)
    if n == 0:
        return one
    memo: dict[int, object] = {}

    def minor(row: int, mask: int):
        if row == n:
            return one
        if mask in memo:
            return memo[mask]
        acc = zero
        sign = 1
        for j in range(n):
            if mask >> j & 1:
                continue
            entry = M[row][j]
            if entry:
                sub = minor(row + 1, mask | (1 << j))
                if sub:
                    term = entry * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[mask] = acc
        return acc

    return minor(0, 0)
