"""Command-line interface: ``annskein <subcommand> ...``.

Exit codes: 0 success, 2 usage or parse error, 3 resource bound exceeded,
4 verification failure. JSON output carries ``"schema": "1"`` and is
printed with sorted keys so identical inputs give identical bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Sequence

from .errors import BoundExceeded, ParseError

SCHEMA = "1"
EXIT_OK, EXIT_USAGE, EXIT_BOUND, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _sym_json(f, basis: str = "s") -> list[dict]:
    from .symfunc import convert
    return convert(f, basis).to_json()["terms"]


def _is_sign_text(text: str) -> bool:
    return all(ch in "+-" for ch in text.strip())


def _parse_partition(text: str):
    from .shapes import Partition
    return Partition.parse(text) if text.strip() not in ("", "0", "()") else Partition(())


def _parse_composition_or_signs(text: str):
    from .shapes import Composition, SignSequence, epsilon_to_composition
    t = text.strip()
    if _is_sign_text(t):
        return epsilon_to_composition(SignSequence.parse(t))
    return Composition.parse(t)


# ---------------------------------------------------------------------------
# subcommands; each returns (payload dict, text lines)
# ---------------------------------------------------------------------------

def cmd_trace(args):
    from .hecke import BraidWord, annular_trace, slN_invariant
    beta = BraidWord.parse(args.braid)
    tr = annular_trace(beta)
    out = {"braid": str(beta), args.basis: _sym_json(tr, args.basis)}
    lines = [f"Tr({beta}) = {tr}"]
    if args.N is not None:
        val = slN_invariant(beta, args.N)
        out["N"] = args.N
        out["slN"] = str(val)
        lines.append(f"sl_{args.N}: {val}")
    return out, lines


def cmd_psi(args):
    from .annular import coxeter_invariant_formula
    from .shapes import composition_to_epsilon
    from .symfunc import pleth_transform, psi
    a = _parse_composition_or_signs(args.composition)
    eps = composition_to_epsilon(a)
    f = psi(a)
    pl = pleth_transform(f, "minus")
    inv = coxeter_invariant_formula(eps)
    out = {
        "composition": list(a),
        "epsilon": str(eps),
        "psi": _sym_json(f, args.basis),
        "plethysm": _sym_json(pl, args.basis),
        "coxeter_invariant": _sym_json(inv, args.basis),
        "basis": args.basis,
    }
    lines = [f"a = {'.'.join(map(str, a))}, eps = {eps or '(empty)'}",
             f"Psi(a) = {f}", f"Psi(a)[X(q^-1-q)] = {pl}", f"Coxeter invariant = {inv}"]
    return out, lines


def cmd_hopf(args):
    from .annular import hopf_pairing
    from .symfunc import SymFunc, s
    lam = _parse_partition(args.lam)
    f = SymFunc.parse(args.f) if "[" in args.f else s(_parse_partition(args.f))
    if args.N is None:
        raise UsageError("hopf needs --N")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        val = hopf_pairing(lam, f, args.N)
    out = {"lambda": list(lam), "f": str(f), "N": args.N, "value": str(val)}
    if caught:
        out["warning"] = str(caught[0].message)
    return out, [f"H({lam}, {f}) at N={args.N}: {val}"]


def cmd_wedge_wrap(args):
    from .annular import wedge_wrap_dims
    if args.N is None:
        raise UsageError("wedge-wrap needs --N")
    val = wedge_wrap_dims(args.i, args.j, args.N)
    return ({"i": args.i, "j": args.j, "N": args.N, "dims": val.to_json(), "text": str(val)},
            [f"wedge-wrap (i={args.i}, j={args.j}, N={args.N}): {val}"])


def cmd_solomon(args):
    from .groupalg import frobenius_character, solomon_ideal_basis, solomon_projectors
    from .shapes import SignSequence, epsilon_to_composition, sign_sequences
    n = args.n
    projs = solomon_projectors(n, verify=True)
    chosen = [SignSequence.parse(args.eps)] if args.eps is not None else sign_sequences(n)
    rows, lines = [], []
    for eps in chosen:
        if eps.n != n:
            raise UsageError(f"sign sequence {eps} is not for n={n}")
        basis = solomon_ideal_basis(eps)
        ch = frobenius_character(basis)
        rows.append({"epsilon": str(eps), "composition": list(epsilon_to_composition(eps)),
                     "dim": len(basis), "frobenius": _sym_json(ch, args.basis),
                     "projector_support": len(projs[eps].terms)})
        lines.append(f"{str(eps) or '(empty)':>8}  dim {len(basis):4d}  {ch}")
    return {"n": n, "ideals": rows}, lines


def cmd_cube(args):
    from .cube import (EvalObject, coxeter_cube_homology, coxeter_cube_target, monomial_ratio,
                       schur_cube_dims)
    from .shapes import SignSequence
    if args.eval is not None:
        E = EvalObject.parse(args.eval)
    elif args.N is not None:
        E = EvalObject.nilpotent(args.N)
    else:
        raise UsageError("cube needs --N or --eval")
    target = args.target.strip()
    out = {"eval": str(E), "graded": E.graded}
    if _is_sign_text(target):
        eps = SignSequence.parse(target)
        H = coxeter_cube_homology(eps, E)
        out.update({"epsilon": str(eps), "homology": H.to_json(), "total": H.total(), "euler": str(H.euler())})
        lines = [f"p_eps Cube_{eps.n} at E={E}: total dim {H.total()}"]
        if E.graded:
            tgt = coxeter_cube_target(eps, E.dim) if len(E.blocks) == 1 else None
            if tgt is not None:
                out["formula"] = str(tgt)
                out["q_shift"] = monomial_ratio(H.euler(), tgt)
    else:
        lam = _parse_partition(target)
        r = schur_cube_dims(lam, E)
        H = r.homology
        out.update({"lambda": list(lam), "chain_dims": {str(k): v for k, v in r.chain_dims.items()},
                    "homology": H.to_json(), "total": H.total(), "euler": str(H.euler())})
        lines = [f"Cube^{lam} at E={E}: chain dims {r.chain_dims}, total homology {H.total()}"]
    for h, poly in H.poincare().items():
        lines.append(f"  H_{h}: {poly}")
    return out, lines


def cmd_end(args):
    from .cube import end_complex_dims, expected_end_dims, trusted_qmax
    got = end_complex_dims(args.n, args.mode, args.qcutoff)
    exp = expected_end_dims(args.n, args.mode, trusted_qmax(args.qcutoff))
    out = {"n": args.n, "mode": args.mode, "qcutoff": args.qcutoff, "trusted_qmax": trusted_qmax(args.qcutoff),
           "homology": got.to_json(), "expected": exp.to_json(), "match": got == exp}
    lines = [f"End n={args.n} ({args.mode}), q <= {trusted_qmax(args.qcutoff)}: "
             f"{'matches' if got == exp else 'differs from'} the expected Hilbert series"]
    for h, poly in got.poincare().items():
        lines.append(f"  h={h}: {poly}")
    return out, lines


def cmd_verify(args):
    from .verify import ACCEPTANCE, SUITES, run_suites
    suites = args.suites or ACCEPTANCE
    if suites == ["all"]:
        suites = list(SUITES)
    for sname in suites:
        if sname not in SUITES:
            raise UsageError(f"unknown suite {sname!r}; choose from {', '.join(SUITES)} or 'all'")
    results = run_suites(suites, jobs=args.jobs)
    ok = all(r.passed for r in results)
    out = {"suites": [r.to_json() for r in results], "pass": ok}
    if not ok:
        first = next(r for r in results if not r.passed)
        out["first_failure"] = {"suite": first.suite, "detail": first.details[0] if first.details else "runtime"}
    return out, [r.line() for r in results], (EXIT_OK if ok else EXIT_VERIFY)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--basis", choices=("s", "h", "e", "p", "m"), default="s")
    common.add_argument("--N", type=int, default=None, help="rank N for sl_N evaluations")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for independent instances")

    parser = argparse.ArgumentParser(prog="annskein", description="Annular skein and Koszul cube computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", parents=[common], help="annular trace of a braid closure")
    p.add_argument("braid", help="braid word, e.g. 'n=3: 1 2 -1'")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("psi", parents=[common], help="ribbon function Psi(a) and the Coxeter invariant")
    p.add_argument("composition", help="composition '3.2.1.2' or sign sequence '++-'")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("hopf", parents=[common], help="Hopf pairing of s_lambda with s_mu or f")
    p.add_argument("lam", help="partition, e.g. '2,1'")
    p.add_argument("f", help="partition or symmetric function text like 's[2]+q*s[1,1]'")
    p.set_defaults(func=cmd_hopf)

    p = sub.add_parser("wedge-wrap", parents=[common], help="bigraded dims of a wrapped wedge object")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(func=cmd_wedge_wrap)

    p = sub.add_parser("solomon", parents=[common], help="Solomon ideals and their Frobenius characters")
    p.add_argument("n", type=int)
    p.add_argument("--eps", default=None, help="restrict to one sign sequence")
    p.set_defaults(func=cmd_solomon)

    p = sub.add_parser("cube", parents=[common], help="homology of a projected evaluated cube")
    p.add_argument("target", help="sign sequence (Coxeter projector) or partition (Young idempotent)")
    p.add_argument("--eval", default=None, help="evaluation object: block size '3' or 'ev:size,...'")
    p.set_defaults(func=cmd_cube)

    p = sub.add_parser("end", parents=[common], help="truncated homology of the Hom complex of Cube_n")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=("full", "symmetric"), default="full")
    p.add_argument("--qcutoff", type=int, default=8)
    p.set_defaults(func=cmd_end)

    p = sub.add_parser("verify", parents=[common], help="run verification suites (default A1-A9)")
    p.add_argument("suites", nargs="*", help="suite ids such as A1 X2, or 'all'")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(payload: dict, lines: Sequence[str], fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True) + "\n")
    else:
        stream.write("\n".join(lines) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        result = args.func(args)
    except (ParseError, UsageError, ValueError, KeyError) as exc:
        _emit({"error": "usage", "message": str(exc)}, [f"error: {exc}"], args.format, sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        _emit({"error": "bound", "message": str(exc)}, [f"bound exceeded: {exc}"], args.format, sys.stderr)
        return EXIT_BOUND
    code = EXIT_OK
    if len(result) == 3:
        payload, lines, code = result
    else:
        payload, lines = result
    _emit(payload, lines, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
