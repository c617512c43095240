"""Command-line interface.

Reports go to stdout as JSON (sorted keys, deterministic for a fixed input and
seed); a short human-readable summary goes to stderr.

Exit codes: 0 success, 1 a check or property failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import verify as verify_mod
from ._backend import BACKEND
from .errors import InputError, UnsupportedFormatError
from .factory import orbit_sample, pair_from_symplectic, planted_degenerate, special_symplectic
from .invariants import (
    certify_nondegenerate,
    delta_matrix,
    matrix_dimension,
    r_matrix,
    s_matrix,
    weights,
)
from .linalg import check_modulus, det, det_mod_p, residue
from .tensor import (
    PairTensor,
    Tensor3,
    check_witness,
    is_complex_pair,
    is_complex_symplectic,
    is_degenerate_exact_dimv2,
    parse_document,
    to_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CHECKS = ("complex", "pair", "witness", "degenerate-exact", "certify")


class _Usage(Exception):
    """Input problem that maps to exit code 2."""


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _read(path: str) -> tuple[bytes, Any]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    try:
        return raw, parse_document(raw)
    except InputError as exc:
        raise _Usage(f"{path}: {exc}") from None


def _emit(report: dict, summary: list[str], timing: float | None) -> None:
    if timing is not None:
        report["timing_seconds"] = round(timing, 6)
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    for line in summary:
        print(line, file=sys.stderr)


def _formats(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            n, k = (int(x) for x in item.split(":"))
        except ValueError:
            raise _Usage(f"bad format {item!r}; expected n:k") from None
        if n < 0 or k < 1:
            raise _Usage(f"bad format {item!r}; need n >= 0 and k >= 1")
        out.append((n, k))
    return out


def _modulus(p: int | None) -> int | None:
    if p is None:
        return None
    try:
        check_modulus(p)
    except InputError as exc:
        raise _Usage(str(exc)) from None
    return p


def cmd_invariant(args: argparse.Namespace) -> tuple[int, dict | None, list[str]]:
    raw, doc = _read(args.file)
    obj = doc.obj
    p = _modulus(args.mod_p)
    results: dict[str, Any] = {"n": obj.n, "k": obj.k}
    alpha, beta = weights(obj.n, obj.k)
    dim = matrix_dimension(obj.n, obj.k)
    results.update(matrix_dimension=dim, alpha=alpha, beta=beta, degree=dim)
    checks: dict[str, bool] = {}
    if args.which == "d":
        if not isinstance(obj, Tensor3):
            raise _Usage("--which d needs a tensor3 document")
        M = delta_matrix(obj)
        value = det(M)
        results["value"] = _q(value)
        if p is not None:
            results["value_mod_p"] = det_mod_p(M, p)
            checks["mod_p_consistent"] = results["value_mod_p"] == residue(value, p)
    else:
        if not isinstance(obj, PairTensor):
            raise _Usage("--which dtilde needs a pair document")
        dS, dR = det(s_matrix(obj)), det(r_matrix(obj))
        value = dS * dR
        results.update(det_S=_q(dS), det_R=_q(dR), value=_q(value))
        if p is not None:
            results["value_mod_p"] = det_mod_p(s_matrix(obj), p) * det_mod_p(r_matrix(obj), p) % p
            checks["mod_p_consistent"] = results["value_mod_p"] == residue(value, p)
    report = {
        "command": {"subcommand": "invariant", "file": args.file, "which": args.which, "mod_p": p},
        "input_digest": _digest(raw),
        "results": results,
        "checks": checks,
    }
    summary = [f"{'D' if args.which == 'd' else 'Dtilde'} = {results['value']} "
               f"(format n={obj.n}, k={obj.k}; {dim}x{dim} matrix; backend {BACKEND})"]
    return (EXIT_OK if all(checks.values()) else EXIT_FAIL), report, summary


def cmd_check(args: argparse.Namespace) -> tuple[int, dict | None, list[str]]:
    raw, doc = _read(args.file)
    obj = doc.obj
    requested = [w.strip() for w in args.which.split(",") if w.strip()]
    for w in requested:
        if w not in CHECKS:
            raise _Usage(f"unknown check {w!r}; choose from {', '.join(CHECKS)}")
    checks: dict[str, bool] = {}
    results: dict[str, Any] = {}
    for w in requested:
        if w == "pair":
            if not isinstance(obj, PairTensor):
                raise _Usage("check 'pair' needs a pair document")
            checks[w] = is_complex_pair(obj)
            continue
        if not isinstance(obj, Tensor3):
            raise _Usage(f"check {w!r} needs a tensor3 document")
        if w == "complex":
            checks[w] = is_complex_symplectic(obj, doc.J)
        elif w == "witness":
            if doc.witness is None:
                raise _Usage("check 'witness' needs a 'witness' block in the document")
            try:
                checks[w] = check_witness(obj, doc.witness)
            except InputError as exc:
                raise _Usage(str(exc)) from None
        elif w == "degenerate-exact":
            try:
                degenerate = is_degenerate_exact_dimv2(obj)
            except UnsupportedFormatError as exc:
                raise _Usage(f"unsupported format: {exc}") from None
            results[w] = "degenerate" if degenerate else "nondegenerate"
            checks[w] = degenerate
        elif w == "certify":
            cert = certify_nondegenerate(obj)
            results[w] = "certified" if cert else "inconclusive"
            results["D"] = _q(cert.value) if cert else "0"
            checks[w] = cert is not None
    report = {
        "command": {"subcommand": "check", "file": args.file, "which": requested},
        "input_digest": _digest(raw),
        "results": results,
        "checks": checks,
    }
    summary = [f"{name}: {'pass' if ok else 'FAIL'}" + (f" ({results[name]})" if name in results else "")
               for name, ok in checks.items()]
    return (EXIT_OK if all(checks.values()) else EXIT_FAIL), report, summary


def cmd_gen(args: argparse.Namespace) -> tuple[int, dict | None, list[str]]:
    kind = args.kind
    J = None
    witness = None
    source = None
    if kind == "orbit" and not args.input:
        raise _Usage("gen orbit needs an input file")
    if args.input:
        if kind not in ("orbit", "pair"):
            raise _Usage(f"gen {kind} takes no input file")
        raw, doc = _read(args.input)
        if not isinstance(doc.obj, Tensor3):
            raise _Usage("input must be a tensor3 document")
        if doc.J is not None and not doc.J.is_standard():
            raise _Usage("orbit sampling supports only the standard symplectic form")
        base, source = doc.obj, _digest(raw)
    else:
        if args.n is None or args.k is None:
            raise _Usage(f"gen {kind} needs --n and --k")
        if args.n < 0 or args.k < 1:
            raise _Usage("need n >= 0 and k >= 1")
        base = None
    if kind == "special":
        obj: Tensor3 | PairTensor = special_symplectic(args.n, args.k)
    elif kind == "degenerate":
        obj, witness = planted_degenerate(args.n, args.k, args.seed)
    elif kind == "orbit":
        obj = orbit_sample(base, args.seed, args.steps)
    else:
        A = base if base is not None else special_symplectic(args.n, args.k)
        obj = pair_from_symplectic(orbit_sample(A, args.seed, args.steps))
    text = to_json(obj, J, witness) + "\n"
    digest = _digest(text.encode())
    command = {"subcommand": "gen", "kind": kind, "n": obj.n, "k": obj.k,
               "seed": args.seed, "steps": args.steps, "input": args.input}
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        report = {"command": command, "input_digest": source, "output": args.out, "output_digest": digest}
    else:
        sys.stdout.write(text)
        report = None
    return EXIT_OK, report, [f"wrote {kind} n={obj.n} k={obj.k} {digest}"]


def cmd_verify(args: argparse.Namespace) -> tuple[int, dict | None, list[str]]:
    formats = _formats(args.formats) if args.formats else list(verify_mod.DEFAULT_FORMATS)
    if args.seeds < 1:
        raise _Usage("--seeds must be positive")
    primes = (_modulus(args.mod_p),) if args.mod_p is not None else verify_mod.DEFAULT_PRIMES
    seeds = range(args.seed, args.seed + args.seeds)
    results = verify_mod.run(args.suite, formats, seeds, corrupt=args.self_test, primes=primes)
    groups: dict[tuple, list] = {}
    for r in results:
        groups.setdefault((r.suite, r.n, r.k), []).append(r)
    aggregate = [
        {"suite": s, "n": n, "k": k, "cases": len(rs), "failed": sum(not r.passed for r in rs)}
        for (s, n, k), rs in groups.items()
    ]
    failures = [
        {"suite": r.suite, "n": r.n, "k": r.k, "seed": r.seed, "check": r.check, "detail": r.detail}
        for r in results if not r.passed
    ]
    signs = {f"{r.suite}:{r.n}:{r.k}:{r.check}": r.detail for r in results if r.check.endswith("-sign") and r.passed}
    ok = not failures
    report = {
        "command": {"subcommand": "verify", "suite": args.suite, "formats": [list(f) for f in formats],
                    "seed": args.seed, "seeds": args.seeds, "self_test": args.self_test, "primes": list(primes)},
        "input_digest": None,
        "results": {"aggregate": aggregate, "failures": failures, "measured_signs": signs},
        "checks": {"all_passed": ok},
    }
    summary = [f"{a['suite']} n={a['n']} k={a['k']}: {a['cases'] - a['failed']}/{a['cases']} passed"
               for a in aggregate]
    summary += [f"FAIL {f['suite']} n={f['n']} k={f['k']} seed={f['seed']} {f['check']} {f['detail']}"
                for f in failures[:20]]
    return (EXIT_OK if ok else EXIT_FAIL), report, summary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperdet", description=__doc__.splitlines()[0])
    parser.add_argument("--timing", action="store_true", help="add wall-clock seconds to the JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", help="compute D or Dtilde of a JSON document")
    p.add_argument("file")
    p.add_argument("--which", choices=("d", "dtilde"), default="d")
    p.add_argument("--mod-p", type=int, dest="mod_p")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("check", help="run predicate checks on a JSON document")
    p.add_argument("file")
    p.add_argument("--which", required=True, help=f"comma-separated subset of: {', '.join(CHECKS)}")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a fixture document")
    p.add_argument("kind", choices=("special", "degenerate", "orbit", "pair"))
    p.add_argument("input", nargs="?", help="tensor3 document (required for orbit, optional for pair)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=("all", *verify_mod.SUITES), default="all")
    p.add_argument("--formats", help="comma-separated n:k list (default 0..2 x 1..3)")
    p.add_argument("--seeds", type=int, default=5, help="number of seeds per format")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--mod-p", type=int, dest="mod_p")
    p.add_argument("--self-test", action="store_true",
                   help="corrupt the weight and degree constants; the run must fail")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code, report, summary = args.func(args)
    except (_Usage, InputError) as exc:
        print(f"hyperdet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    summary.append(f"[{elapsed:.3f}s, backend {BACKEND}]")
    if report is not None:
        _emit(report, summary, elapsed if args.timing else None)
    else:
        for line in summary:
            print(line, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
