"""Partitions, compositions, sign sequences, skew shapes and standard tableaux."""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterator, Sequence

from .errors import BoundExceeded, ParseError


def configured_bound(default: int) -> int:
    """Size bound, overridable via the SKEIN_MAX_DEGREE environment variable."""
    env = os.environ.get("SKEIN_MAX_DEGREE")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"SKEIN_MAX_DEGREE must be an integer, got {env!r}") from None
    return default


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (no trailing zeros)."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,2,1"``; the empty string or ``"0"`` gives the empty partition."""
        s = text.strip().strip("()[]")
        if s in ("", "0"):
            return cls(())
        try:
            return cls(int(x) for x in s.split(","))
        except ValueError as exc:
            raise ParseError(f"bad partition {text!r}: {exc}") from None

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> list[tuple[int, int]]:
        """(row, col) pairs, 0-indexed, row-major."""
        return [(r, c) for r, p in enumerate(self) for c in range(p)]

    def contains(self, other: Sequence[int]) -> bool:
        return len(other) <= len(self) and all(a <= b for a, b in zip(other, self))

    def hook_lengths(self) -> list[int]:
        conj = self.conjugate()
        return [self[r] - c + conj[c] - r - 1 for r, c in self.cells()]

    def num_standard_tableaux(self) -> int:
        """f^lambda by the hook-length formula."""
        prod = 1
        for h in self.hook_lengths():
            prod *= h
        return factorial(self.size()) // prod

    def is_hook(self) -> bool:
        return len(self) <= 1 or self[1] <= 1

    def part(self, i: int) -> int:
        return self[i] if i < len(self) else 0

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "0"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


def hook(n: int, i: int) -> Partition:
    """The hook (n-i, 1^i)."""
    if not 0 <= i < n:
        raise ValueError(f"hook leg {i} out of range for n={n}")
    return Partition((n - i,) + (1,) * i)


@lru_cache(maxsize=None)
def _partitions(n: int, maxpart: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        return []
    return [Partition(p) for p in _partitions(n, n)]


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


class Composition(tuple):
    """Sequence of positive integers."""

    def __new__(cls, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Parse ``"3.2.1.2"`` (a single integer like ``"4"`` is allowed)."""
        s = text.strip()
        try:
            return cls(int(x) for x in s.split("."))
        except ValueError as exc:
            raise ParseError(f"bad composition {text!r}: {exc}") from None

    def size(self) -> int:
        return sum(self)

    def coarsenings(self) -> Iterator["Composition"]:
        """All compositions obtained by merging adjacent parts (including self)."""
        s = len(self)
        for mask in range(1 << max(s - 1, 0)):
            out, acc = [], self[0]
            for j in range(1, s):
                if mask >> (j - 1) & 1:
                    acc += self[j]
                else:
                    out.append(acc)
                    acc = self[j]
            out.append(acc)
            yield Composition(out), bin(mask).count("1")

    def __str__(self) -> str:
        return ".".join(map(str, self))

    def __repr__(self) -> str:
        return f"Composition({tuple(self)})"


def compositions(n: int) -> list[Composition]:
    """All 2^(n-1) compositions of n (n >= 1)."""
    if n <= 0:
        return []
    return [epsilon_to_composition(e) for e in sign_sequences(n)]


class SignSequence(tuple):
    """Entries in {+1, -1}; length n-1 for a braid on n strands."""

    def __new__(cls, entries: Sequence[int]):
        entries = tuple(int(e) for e in entries)
        if any(e not in (1, -1) for e in entries):
            raise ValueError(f"sign entries must be +1 or -1: {entries}")
        return super().__new__(cls, entries)

    @classmethod
    def parse(cls, text: str) -> "SignSequence":
        s = text.strip()
        if any(ch not in "+-" for ch in s):
            raise ParseError(f"bad sign sequence {text!r}; use only '+' and '-'")
        return cls(1 if ch == "+" else -1 for ch in s)

    @property
    def n(self) -> int:
        return len(self) + 1

    def num_plus(self) -> int:
        return sum(1 for e in self if e > 0)

    def __str__(self) -> str:
        return "".join("+" if e > 0 else "-" for e in self)

    def __repr__(self) -> str:
        return f"SignSequence({str(self)!r})"


def sign_sequences(n: int) -> list[SignSequence]:
    """All sign sequences of length n-1, with '+' before '-' lexicographically."""
    return [SignSequence(e) for e in product((1, -1), repeat=max(n - 1, 0))]


def epsilon_to_composition(eps: Sequence[int]) -> Composition:
    """Cut 1..n after every position j with eps_j = -1."""
    eps = SignSequence(eps)
    parts, run = [], 1
    for e in eps:
        if e < 0:
            parts.append(run)
            run = 1
        else:
            run += 1
    parts.append(run)
    return Composition(parts)


def composition_to_epsilon(a: Sequence[int]) -> SignSequence:
    a = Composition(a)
    out = []
    for k, part in enumerate(a):
        out.extend([1] * (part - 1))
        if k < len(a) - 1:
            out.append(-1)
    return SignSequence(out)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition

    def __post_init__(self):
        object.__setattr__(self, "outer", Partition(self.outer))
        object.__setattr__(self, "inner", Partition(self.inner))
        if not self.outer.contains(self.inner):
            raise ValueError(f"{self.inner} is not contained in {self.outer}")

    def cells(self) -> list[tuple[int, int]]:
        return [(r, c) for r, p in enumerate(self.outer) for c in range(self.inner.part(r), p)]

    def size(self) -> int:
        return self.outer.size() - self.inner.size()

    def has_2x2_block(self) -> bool:
        cells = set(self.cells())
        return any((r + 1, c) in cells and (r, c + 1) in cells and (r + 1, c + 1) in cells for r, c in cells)

    def is_connected(self) -> bool:
        cells = set(self.cells())
        if not cells:
            return True
        seen = set()
        stack = [next(iter(cells))]
        while stack:
            r, c = stack.pop()
            if (r, c) in seen:
                continue
            seen.add((r, c))
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in cells and nb not in seen:
                    stack.append(nb)
        return len(seen) == len(cells)

    def is_ribbon(self) -> bool:
        return self.is_connected() and not self.has_2x2_block()

    def __str__(self) -> str:
        o = "".join(map(str, self.outer)) if max(self.outer, default=0) < 10 else str(self.outer)
        i = "".join(map(str, self.inner)) if max(self.inner, default=0) < 10 else str(self.inner)
        return f"{o}/{i or '0'}"


def composition_to_ribbon(a: Sequence[int]) -> SkewShape:
    """Connected ribbon whose rows, read bottom to top, have lengths a_1, ..., a_s."""
    a = Composition(a)
    if not a:
        raise ValueError("composition must be nonempty")
    s = len(a)
    prefix = [0]
    for part in a:
        prefix.append(prefix[-1] + part)
    outer = [prefix[s - j] - (s - 1 - j) for j in range(s)]
    inner = [prefix[s - 1 - j] - (s - 1 - j) for j in range(s - 1)]
    return SkewShape(Partition(outer), Partition(inner))


class StandardTableau:
    """Standard filling of a partition shape by 1..n, stored as a tuple of rows."""

    __slots__ = ("shape", "rows", "_pos")

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows = tuple(tuple(r) for r in rows if len(r))
        self.shape = Partition(len(r) for r in self.rows)
        n = self.shape.size()
        entries = sorted(x for r in self.rows for x in r)
        if entries != list(range(1, n + 1)):
            raise ValueError("tableau must contain 1..n exactly once")
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                if c + 1 < len(row) and row[c + 1] <= x:
                    raise ValueError("rows must increase")
                if r + 1 < len(self.rows) and c < len(self.rows[r + 1]) and self.rows[r + 1][c] <= x:
                    raise ValueError("columns must increase")
        self._pos = {x: (r, c) for r, row in enumerate(self.rows) for c, x in enumerate(row)}

    def position(self, k: int) -> tuple[int, int]:
        return self._pos[k]

    def content(self, k: int) -> int:
        r, c = self._pos[k]
        return c - r

    def size(self) -> int:
        return len(self._pos)

    def swap(self, i: int) -> "StandardTableau | None":
        """Exchange entries i and i+1; None if the result is not standard."""
        (r1, c1), (r2, c2) = self._pos[i], self._pos[i + 1]
        if r1 == r2 or c1 == c2:
            return None
        rows = [list(r) for r in self.rows]
        rows[r1][c1], rows[r2][c2] = i + 1, i
        return StandardTableau(rows)

    def __eq__(self, other):
        return isinstance(other, StandardTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"StandardTableau({[list(r) for r in self.rows]})"


def tableau_contents(T: StandardTableau) -> tuple[int, ...]:
    """Contents c_1..c_n, where c_k = column - row of the box holding k."""
    return tuple(T.content(k) for k in range(1, T.size() + 1))


def row_reading_tableau(lam: Sequence[int]) -> StandardTableau:
    """Superstandard tableau filled 1..n along rows."""
    lam = Partition(lam)
    rows, k = [], 1
    for p in lam:
        rows.append(list(range(k, k + p)))
        k += p
    return StandardTableau(rows)


def column_reading_tableau(lam: Sequence[int]) -> StandardTableau:
    lam = Partition(lam)
    cols = row_reading_tableau(lam.conjugate()).rows
    return StandardTableau([[col[r] for col in cols if r < len(col)] for r in range(len(lam))])


@lru_cache(maxsize=None)
def _standard_tableaux(lam: tuple[int, ...]) -> tuple[StandardTableau, ...]:
    n = sum(lam)
    if n == 0:
        return (StandardTableau([]),)
    out = []
    # n sits in some removable corner
    for r in range(len(lam)):
        if lam[r] > (lam[r + 1] if r + 1 < len(lam) else 0):
            smaller = list(lam)
            smaller[r] -= 1
            for T in _standard_tableaux(tuple(Partition(smaller))):
                rows = [list(row) for row in T.rows]
                if r == len(rows):
                    rows.append([])
                rows[r].append(n)
                out.append(StandardTableau(rows))
    out.sort(key=lambda T: T.rows)
    return tuple(out)


def standard_tableaux(lam: Sequence[int], bound: int | None = None) -> list[StandardTableau]:
    """All standard tableaux of shape lam, sorted by their rows."""
    lam = Partition(lam)
    limit = configured_bound(8) if bound is None else bound
    if lam.size() > limit:
        raise BoundExceeded(f"|lambda|={lam.size()} exceeds tableau bound {limit}")
    return list(_standard_tableaux(tuple(lam)))
