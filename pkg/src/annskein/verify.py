"""Verification suites A1-A9 plus extra cross-checks.

Each suite returns a SuiteResult; ``ok`` is False on the first failed
assertion, whose description is kept in ``details`` for diagnostics.
"""
from __future__ import annotations

import random
import time
import traceback
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Iterable

from .annular import (axis_linked_word, coxeter_braid, coxeter_crosscheck,
                      hook_powersum_check, hopf_hecke_oracle, hopf_mirror, hopf_pairing, hopf_symmetric_check,
                      pinned_dictionary, wedge_wrap_dims)
from .cube import (EvalObject, build_cube, coxeter_cube_homology, coxeter_cube_target, end_complex_dims,
                   expected_end_dims, hom_schur_positivity, jordan_pushforward_check, monomial_ratio,
                   schur_cube_dims, trusted_qmax)
from .exactcore import LaurentPoly
from .groupalg import frobenius_character, solomon_ideal_basis, solomon_projectors
from .hecke import BraidWord, SeminormalRep, annular_trace
from .shapes import (Partition, composition_to_ribbon, compositions, epsilon_to_composition, hook, partitions,
                     sign_sequences, standard_tableaux)
from .symfunc import (SymFunc, divide_coefficients, e, h, h1_power, homfly_eval, pleth_transform, principal_spec,
                      psi, psi_determinant, psi_inclusion_exclusion, psi_recursive, s, skew_schur)


@dataclass
class SuiteResult:
    suite: str
    ok: bool
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    limit: float | None = None
    checks: int = 0

    @property
    def within_limit(self) -> bool:
        return self.limit is None or self.elapsed <= self.limit

    @property
    def passed(self) -> bool:
        return self.ok and self.within_limit

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:.0f}s)" if self.limit else ""
        msg = f"{self.suite} {status} {self.checks} checks in {self.elapsed:.2f}s{limit}"
        if not self.ok and self.details:
            msg += f": {self.details[0]}"
        elif not self.within_limit:
            msg += ": runtime limit exceeded"
        return msg

    def to_json(self) -> dict:
        return {"suite": self.suite, "pass": self.passed, "checks": self.checks,
                "elapsed": round(self.elapsed, 3), "limit": self.limit, "details": self.details}


class _Checker:
    def __init__(self):
        self.failures: list[str] = []
        self.notes: list[str] = []
        self.count = 0

    def check(self, cond: bool, message: str) -> bool:
        self.count += 1
        if not cond:
            self.failures.append(message)
        return cond

    def note(self, message: str) -> None:
        self.notes.append(message)


# ---------------------------------------------------------------------------
# A1-A9
# ---------------------------------------------------------------------------

PSI_3212 = {(3, 2, 2, 1): 1, (3, 3, 1, 1): 1, (4, 2, 1, 1): 2, (4, 2, 2): 1, (4, 3, 1): 1, (5, 1, 1, 1): 1, (5, 2, 1): 1}

N4_TABLE = [
    ((1, 1, 1), (4,), {(4,): 1}),
    ((1, 1, -1), (3, 1), {(3, 1): 1}),
    ((1, -1, 1), (2, 2), {(2, 2): 1, (3, 1): 1}),
    ((-1, 1, 1), (1, 3), {(3, 1): 1}),
    ((1, -1, -1), (2, 1, 1), {(2, 1, 1): 1}),
    ((-1, 1, -1), (1, 2, 1), {(2, 1, 1): 1, (2, 2): 1}),
    ((-1, -1, 1), (1, 1, 2), {(2, 1, 1): 1}),
    ((-1, -1, -1), (1, 1, 1, 1), {(1, 1, 1, 1): 1}),
]


def suite_a1(c: _Checker) -> None:
    c.check(psi((3, 2, 1, 2)) == SymFunc("s", PSI_3212), "Psi(3,2,1,2) differs from the seven-term expansion")
    for eps, a, expect in N4_TABLE:
        c.check(tuple(epsilon_to_composition(eps)) == a, f"eps {eps} does not map to composition {a}")
        c.check(psi(a) == SymFunc("s", expect), f"Psi{a} table row differs")
    for n in range(1, 9):
        for a in compositions(n):
            ie, det, rec = psi_inclusion_exclusion(a), psi_determinant(a), psi_recursive(a)
            rib = skew_schur(composition_to_ribbon(a))
            c.check(ie == det == rec == rib, f"Psi algorithms disagree on {tuple(a)}")
    for n in range(1, 8):
        total = SymFunc("s")
        for a in compositions(n):
            total = total + psi(a)
        c.check(total == h1_power(n), f"sum of Psi(a) over compositions of {n} != h_1^{n}")


def suite_a2(c: _Checker) -> None:
    d = LaurentPoly({-1: 1, 1: -1})
    for n in range(1, 9):
        lhs_e = divide_coefficients(pleth_transform(e(n), "minus"), d)
        rhs_e = SymFunc("s", {hook(n, i): LaurentPoly({n - 1 - 2 * i: (-1) ** (n - 1 - i)}) for i in range(n)})
        c.check(lhs_e == rhs_e, f"e_{n} plethystic identity fails")
        lhs_h = divide_coefficients(pleth_transform(h(n), "minus"), d).scale((-1) ** (n - 1))
        rhs_h = SymFunc("s", {hook(n, i): LaurentPoly({2 * i - n + 1: (-1) ** (i - n + 1)}) for i in range(n)})
        c.check(lhs_h == rhs_h, f"h_{n} plethystic identity fails")


def _random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    letters = []
    for _ in range(length):
        g = rng.randint(1, n - 1)
        letters.append(g if rng.random() < 0.5 else -g)
    return BraidWord(n, tuple(letters))


def suite_a3(c: _Checker) -> None:
    from .errors import ConsistencyError

    for n in range(1, 6):
        for lam in partitions(n):
            try:
                SeminormalRep(lam, verify=True)
                c.check(True, "")
            except ConsistencyError as exc:
                c.check(False, f"Hecke relations fail on V_{lam}: {exc}")
    rng = random.Random(20240611)
    for k in range(50):
        n = rng.randint(2, 4)
        beta = _random_word(rng, n, rng.randint(0, 5))
        gamma = _random_word(rng, n, rng.randint(1, 4))
        conj = gamma * beta * gamma.inverse()
        c.check(annular_trace(conj) == annular_trace(beta), f"trace not conjugation invariant: {beta} by {gamma}")
    for n in range(2, 7):
        for sgn in (1, -1):
            eps = (sgn,) * (n - 1)
            tr = annular_trace(coxeter_braid(eps))
            c.check(all(Partition(lam).is_hook() for lam in tr.terms), f"Coxeter trace {eps} has non-hook support")
        tr = annular_trace(coxeter_braid((1,) * (n - 1)))
        expect = SymFunc("s", {hook(n, i): LaurentPoly({n - 1 - 2 * i: (-1) ** i}) for i in range(n)})
        c.check(tr == expect, f"positive Coxeter trace on {n} strands is not sum (-1)^i q^(n-1-2i) s_hook")


def suite_a4(c: _Checker) -> None:
    name = pinned_dictionary()
    c.note(f"pinned dictionary: {name}")
    for n in range(2, 6):
        for eps in sign_sequences(n):
            r = coxeter_crosscheck(eps, strict=False)
            c.check(r.agree, f"eps={eps}: formula and trace disagree under {name}")


def suite_a5(c: _Checker) -> None:
    """The alternating hook sum against [n] p_n, under any coefficient dictionary."""
    for n in range(1, 6):
        r = hook_powersum_check(n, strict=False)
        c.note(f"n={n}: plain sum {'matches' if r.agree else 'differs from'} [n]p_n")
        c.check(r.alternating_agree, f"n={n}: alternating hook sum {r.alternating_total} != [n]p_n under every dictionary")


def suite_a6(c: _Checker) -> None:
    parts = [Partition(())] + [lam for k in range(1, 5) for lam in partitions(k)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for N in range(1, 5):
            for lam in parts:
                for mu in parts:
                    c.check(hopf_symmetric_check(lam, mu, N), f"Hopf pairing not symmetric at {lam},{mu},N={N}")
    c.note(f"pinned Hopf mirror flag: {hopf_mirror()}")
    for N in range(1, 5):
        c.check(hopf_pairing((1,), s(1), N) == hopf_hecke_oracle(N), f"Hopf pairing differs from Hecke oracle at N={N}")


def suite_a7(c: _Checker) -> None:
    for n in range(1, 7):
        projs = solomon_projectors(n, verify=True)
        total = 0
        for eps in sign_sequences(n):
            basis = solomon_ideal_basis(eps)
            total += len(basis)
            c.check(frobenius_character(basis) == psi(epsilon_to_composition(eps)),
                    f"Frobenius character of ideal {eps} != Psi")
        c.check(total == factorial(n), f"ideal dimensions for n={n} sum to {total}, not {factorial(n)}")
        c.check(len(projs) == 2 ** (n - 1), f"wrong number of projectors for n={n}")


def coxeter_cube_sweep(nmax: int = 4, Nmax: int = 3):
    """(eps, N, homology, target) for all eps with n <= nmax and N <= Nmax."""
    out = []
    for n in range(1, nmax + 1):
        for eps in sign_sequences(n):
            for N in range(1, Nmax + 1):
                H = coxeter_cube_homology(eps, EvalObject.nilpotent(N))
                out.append((eps, N, H, coxeter_cube_target(eps, N)))
    return out


def suite_a8(c: _Checker) -> None:
    shifts = set()
    for eps, N, H, target in coxeter_cube_sweep():
        if all(x == 1 for x in eps) or all(x == -1 for x in eps):
            c.check(H.total() == N, f"eps={eps}, N={N}: total homology {H.total()} != {N}")
        k = monomial_ratio(H.euler(), target)
        c.check(k is not None, f"eps={eps}, N={N}: Euler characteristic {H.euler()} is no monomial multiple of {target}")
        shifts.add(k)
    c.check(len(shifts) == 1, f"q-shifts are not global: {sorted(s for s in shifts if s is not None)}")
    c.note(f"global q-shift: {sorted(s for s in shifts if s is not None)}")
    for k1, k2, n in ((1, 1, 2), (2, 1, 2), (2, 2, 3)):
        r = jordan_pushforward_check(k1, k2, n)
        c.check(r.agree, f"Jordan ({k1},{k2},{n}): observed {r.observed}, expected {r.expected}")


def suite_a9(c: _Checker) -> None:
    qcut = 8
    qmax = trusted_qmax(qcut)
    for n, mode in ((2, "full"), (2, "symmetric"), (3, "symmetric")):
        got = end_complex_dims(n, mode, qcut)
        exp = expected_end_dims(n, mode, qmax)
        c.check(got == exp, f"End n={n} {mode}: homology {got.to_json()} != Hilbert series {exp.to_json()}")
    for n in range(1, 4):
        for lam in partitions(n):
            for mu in partitions(n):
                r = hom_schur_positivity(lam, mu, n, qcut)
                c.check(r.holds, f"Hom({lam},{mu}) dims {r.dims} outside delta + q^2 N[q]")


# ---------------------------------------------------------------------------
# extra suites
# ---------------------------------------------------------------------------

def suite_hook_sum(c: _Checker) -> None:
    """The plain (unsigned) hook sum equals [n] p_n."""
    for n in range(1, 6):
        r = hook_powersum_check(n, strict=False)
        c.check(r.agree, f"n={n}: plain hook sum differs from [n]p_n")


def suite_cube_invariants(c: _Checker) -> None:
    for n in range(1, 5):
        E = EvalObject.nilpotent(2)
        full = build_cube(n, E).chain_dims().by_degree()
        acc: dict[int, int] = {}
        for lam in partitions(n):
            r = schur_cube_dims(lam, E)
            for i, v in r.chain_dims.items():
                acc[i] = acc.get(i, 0) + lam.num_standard_tableaux() * v
        c.check({i: v for i, v in acc.items() if v} == full, f"isotypic bookkeeping fails at n={n}")
    E = EvalObject.nilpotent(2)
    for lam in partitions(3):
        homs = {tuple(sorted(schur_cube_dims(lam, E, T).homology.dims.items())) for T in standard_tableaux(lam)}
        c.check(len(homs) == 1, f"homology of Cube^{lam} depends on the tableau")
    for E in (EvalObject.parse("1:2"), EvalObject.parse("0:1,2:1")):
        for eps in ((1, 1), (-1, -1)):
            H = coxeter_cube_homology(eps, E)
            c.check(H.total() == E.dim, f"ungraded stabilized unknot at {E}, eps={eps}: total {H.total()}")


def suite_wedge_wrap(c: _Checker) -> None:
    for N in range(1, 6):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                try:
                    wedge_wrap_dims(i, j, N)
                    c.check(True, "")
                except Exception as exc:  # ConsistencyError carries the mismatch
                    c.check(False, f"wedge-wrap ({i},{j},{N}): {exc}")


def suite_symfunc(c: _Checker) -> None:
    for n in range(1, 8):
        for a in compositions(n):
            c.check(all(v > 0 for v in psi(a).terms.values()), f"Psi{tuple(a)} not Schur positive")
    for f in (s(2, 1), e(3), h(2).scale(3) + s(1, 1)):
        for N in range(1, 5):
            val = homfly_eval(f).specialize_a(N)
            c.check(val.to_laurent() == principal_spec(f, N), f"HOMFLY at a=q^{N} differs for {f}")


def suite_axis_hopf(c: _Checker) -> None:
    """Hopf pairing of (1) with a trace equals slN of the axis-linked braid."""
    from .hecke import slN_invariant
    for beta in (BraidWord(1), BraidWord(2, (1,)), BraidWord(2, (-1, -1)), BraidWord(3, (1, -2))):
        for N in range(1, 4):
            lhs = hopf_pairing((1,), annular_trace(beta), N)
            c.check(lhs == slN_invariant(axis_linked_word(beta), N), f"axis-linked oracle fails for {beta}, N={N}")


SUITES: dict[str, tuple[Callable[[_Checker], None], float | None, str]] = {
    "A1": (suite_a1, 30, "Psi expansions, n=4 table, three algorithms, sum to h_1^n"),
    "A2": (suite_a2, 10, "plethystic e_n and h_n identities, n <= 8"),
    "A3": (suite_a3, 120, "Hecke relations, conjugation invariance, hook support"),
    "A4": (suite_a4, 120, "Coxeter formula vs traces under the pinned dictionary"),
    "A5": (suite_a5, None, "alternating hook power-sum identity"),
    "A6": (suite_a6, 60, "Hopf pairing symmetry and Hecke oracle"),
    "A7": (suite_a7, 120, "Solomon decomposition and Frobenius characters"),
    "A8": (suite_a8, 300, "evaluated Coxeter cubes and the Jordan example"),
    "A9": (suite_a9, 300, "Hom complexes and Schur positivity"),
    "X1": (suite_hook_sum, None, "unsigned hook power-sum identity"),
    "X2": (suite_cube_invariants, None, "cube bookkeeping, tableau independence, ungraded unknots"),
    "X3": (suite_wedge_wrap, None, "wedge-wrap direct vs closed form"),
    "X4": (suite_symfunc, None, "Psi positivity, HOMFLY vs principal specialization"),
    "X5": (suite_axis_hopf, None, "Hopf pairing vs axis-linked braids"),
}

ACCEPTANCE = [f"A{k}" for k in range(1, 10)]


def run_suite(suite: str) -> SuiteResult:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    fn, limit, _ = SUITES[suite]
    c = _Checker()
    start = time.perf_counter()
    try:
        fn(c)
    except Exception as exc:
        c.failures.insert(0, f"{type(exc).__name__}: {exc}")
        c.notes.append(traceback.format_exc(limit=3))
    elapsed = time.perf_counter() - start
    ok = not c.failures
    return SuiteResult(suite, ok, c.failures + c.notes, elapsed, limit, c.count)


def run_suites(suites: Iterable[str], jobs: int = 1) -> list[SuiteResult]:
    suites = list(suites)
    for sname in suites:
        if sname not in SUITES:
            raise KeyError(f"unknown suite {sname!r}; choose from {', '.join(SUITES)}")
    if jobs <= 1 or len(suites) <= 1:
        return [run_suite(sname) for sname in suites]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_suite, suites))
