"""Command-line front end: ``ejspec <command> [flags]``.

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass

from . import oracle, pseudospectra, spectral, verify
from .errors import ConvergenceError, DimensionError, DomainError, EjspecError
from .operator import MODES, OperatorSpec

__all__ = ["Plan", "UsageError", "parse", "execute", "main"]

COMMANDS = ("constants", "eigs", "eigvec", "mfunc", "poly", "pseudo", "verify")
TABLE_COMMANDS = ("eigs", "eigvec", "pseudo")
VALUE_FLAGS = ("--alpha", "--re", "--im", "--z", "--x", "--index", "--n")


class UsageError(EjspecError, ValueError):
    """Bad command line; ``flag`` names the offending option."""

    def __init__(self, message: str, flag: str | None = None):
        super().__init__(f"{flag}: {message}" if flag else message)
        self.flag = flag


@dataclass
class Plan:
    """A validated command ready for :func:`execute`."""

    command: str
    spec: OperatorSpec
    dim: int | None = None
    tol: float | None = None
    seed: int = 0
    out: str | None = None
    format: str = "json"
    index: int = 0
    entries: int | None = None
    re_range: tuple = pseudospectra.DEFAULT_RE
    im_range: tuple = pseudospectra.DEFAULT_IM
    suite: str = "all"
    z: complex | None = None
    x: complex | None = None
    n: int | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        found = re.search(r"--[a-z]+", message)
        raise UsageError(message, found.group(0) if found else None)


def _complex_arg(text: str, flag: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected RE[,IM], got {text!r}", flag)


def _range_arg(text: str, flag: str) -> tuple:
    parts = text.split(":")
    try:
        if len(parts) == 3:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 2:
                raise UsageError("count must be at least 2", flag)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
                raise UsageError("need finite lo < hi", flag)
            return lo, hi, count
    except ValueError:
        pass
    raise UsageError(f"expected lo:hi:count, got {text!r}", flag)


def _attach_values(args: list[str]) -> list[str]:
    # "--re -8:8:201" would otherwise read the value as an option
    out = []
    i = 0
    while i < len(args):
        if args[i] in VALUE_FLAGS and i + 1 < len(args) and args[i + 1].startswith("-") and not args[i + 1].startswith("--"):
            out.append(f"{args[i]}={args[i + 1]}")
            i += 2
        else:
            out.append(args[i])
            i += 1
    return out


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--alpha", default="0.5", help="parameter RE[,IM] (alpha, or beta in tilde mode)")
    common.add_argument("--mode", default="standard", help="standard|tilde")
    common.add_argument("--dim", type=int, default=None, help="truncation size")
    common.add_argument("--tol", type=float, default=None, help="tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", default="json", help="json|csv")

    parser = _Parser(prog="ejspec", description="Spectral data of the elliptic Jacobi matrices J(alpha).")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("constants", parents=[common], help="K, K', nome and related constants")
    for name in ("eigs", "eigvec"):
        p = sub.add_parser(name, parents=[common], help="eigenvalues" if name == "eigs" else "eigenvector entries")
        p.add_argument("--index", type=int, default=0)
        p.add_argument("--entries", type=int, default=None)
    p = sub.add_parser("mfunc", parents=[common], help="Weyl m-function")
    p.add_argument("--z", default="0,1", help="point RE[,IM]")
    p = sub.add_parser("poly", parents=[common], help="orthogonal polynomials")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--x", default="0", help="point RE[,IM]")
    p = sub.add_parser("pseudo", parents=[common], help="resolvent-norm field")
    p.add_argument("--re", default=None, help="lo:hi:count")
    p.add_argument("--im", default=None, help="lo:hi:count")
    p = sub.add_parser("verify", parents=[common], help="run self-check suites")
    p.add_argument("--suite", default="all")
    return parser


def _spec_from(alpha: complex, mode: str) -> OperatorSpec:
    if mode not in MODES:
        raise UsageError(f"expected one of {'|'.join(MODES)}, got {mode!r}", "--mode")
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise UsageError("parameter must be finite", "--alpha")
    if mode == "standard" and abs(alpha) > 1:
        beta = 1 / alpha
        raise UsageError(
            f"|alpha| > 1 is handled by the rescaled operator: use --mode tilde --alpha {beta.real:.17g},{beta.imag:.17g} (beta = 1/alpha)",
            "--alpha",
        )
    if mode == "tilde" and abs(alpha) > 1:
        raise UsageError("tilde mode needs |beta| <= 1", "--alpha")
    return OperatorSpec(mode, alpha)


def parse(args: list[str]) -> Plan:
    """Validate a command line into a :class:`Plan`.

    Raises
    ------
    UsageError
        Naming the offending flag.
    """
    ns = _build_parser().parse_args(_attach_values(list(args)))
    if ns.command is None:
        raise UsageError(f"missing command, expected one of {', '.join(COMMANDS)}")
    spec = _spec_from(_complex_arg(ns.alpha, "--alpha"), ns.mode)
    if ns.format not in ("json", "csv"):
        raise UsageError(f"expected json|csv, got {ns.format!r}", "--format")
    if ns.format == "csv" and ns.command not in TABLE_COMMANDS:
        raise UsageError(f"csv output is available for {', '.join(TABLE_COMMANDS)} only", "--format")
    if ns.dim is not None and ns.dim < 1:
        raise UsageError("must be positive", "--dim")
    if ns.tol is not None and not (ns.tol > 0 and math.isfinite(ns.tol)):
        raise UsageError("must be a positive number", "--tol")
    plan = Plan(ns.command, spec, ns.dim, ns.tol, ns.seed, ns.out, ns.format)
    if ns.command in ("eigs", "eigvec"):
        plan.index = ns.index
        if ns.entries is not None and ns.entries < 1:
            raise UsageError("must be positive", "--entries")
        plan.entries = ns.entries
    elif ns.command == "mfunc":
        plan.z = _complex_arg(ns.z, "--z")
    elif ns.command == "poly":
        if ns.n < 1:
            raise UsageError("polynomials are indexed from 1", "--n")
        plan.n = ns.n
        plan.x = _complex_arg(ns.x, "--x")
    elif ns.command == "pseudo":
        if ns.re is not None:
            plan.re_range = _range_arg(ns.re, "--re")
        if ns.im is not None:
            plan.im_range = _range_arg(ns.im, "--im")
    elif ns.command == "verify":
        if ns.suite not in (*verify.SUITES, "all"):
            raise UsageError(f"expected one of {'|'.join((*verify.SUITES, 'all'))}, got {ns.suite!r}", "--suite")
        plan.suite = ns.suite
    return plan


def _write(plan: Plan, text: str, stdout) -> None:
    if plan.out is None:
        stdout.write(text)
    else:
        with open(plan.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv(header: list[str], rows) -> str:
    def cell(v):
        if isinstance(v, complex):
            return f"{pseudospectra._num(v.real)},{pseudospectra._num(v.imag)}"
        if isinstance(v, float):
            return pseudospectra._num(v)
        return str(v)

    return "\n".join([",".join(header)] + [",".join(cell(v) for v in r) for r in rows]) + "\n"


def _spec_json(spec: OperatorSpec) -> dict:
    return {"mode": spec.mode, "param": spec.param}


def _run_constants(plan):
    mod = spectral.modulus_for(plan.spec)
    out = _spec_json(plan.spec)
    out.update(
        {
            "modulus": mod.alpha,
            "complementary_modulus": mod.alpha_prime,
            "K": mod.big_k,
            "K_prime": mod.big_k_prime,
            "nome": mod.nome,
            "eigenvalue_spacing": math.pi / mod.big_k,
        }
    )
    return out


def _indices(plan):
    count = plan.entries or 1
    return list(range(plan.index, plan.index + count))


def _run_eigs(plan):
    rows = []
    for N in _indices(plan):
        lam = spectral.eigenvalue(plan.spec, N)
        row = {"index": N, "eigenvalue": lam}
        if plan.dim is not None:
            row["truncation_root"] = oracle.eig_root(plan.spec, plan.dim, lam, tol=plan.tol or 1e-12)
        rows.append(row)
    return rows


def _run_eigvec(plan):
    m = plan.entries or 8
    v = spectral.eigenvector(plan.spec, plan.index, m, tol=plan.tol or 1e-12)
    return {
        **_spec_json(plan.spec),
        "index": plan.index,
        "eigenvalue": spectral.eigenvalue(plan.spec, plan.index),
        "entries": [complex(x) for x in v],
    }


def _run_mfunc(plan):
    out = {**_spec_json(plan.spec), "z": plan.z, "m": spectral.weyl_m(plan.spec, plan.z, tol=plan.tol or 1e-14)}
    if plan.dim is not None:
        out["truncation"] = oracle.m_oracle(plan.spec, plan.z, plan.dim)
    return out


def _run_poly(plan):
    P, p = spectral.orthopoly(plan.spec, plan.n, plan.x)
    return {**_spec_json(plan.spec), "n": plan.n, "x": plan.x, "monic": P, "normalized": p}


def _run_pseudo(plan):
    return pseudospectra.field(
        plan.spec,
        dim=plan.dim or pseudospectra.DEFAULT_DIM,
        re_range=plan.re_range,
        im_range=plan.im_range,
        tol=plan.tol or pseudospectra.DEFAULT_TOL,
        seed=plan.seed,
    )


def execute(plan: Plan, stdout=None, stderr=None) -> int:
    """Run ``plan``; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if plan.command == "verify":
            results = verify.run_suite(plan.suite)
            text = "".join(r.line() + "\n" for r in results)
            _write(plan, text, stdout)
            return 0 if all(r.passed for r in results) else 1
        if plan.command == "pseudo":
            fieldv = _run_pseudo(plan)
            text = pseudospectra.emit(fieldv, plan.format)
        elif plan.command == "eigs":
            rows = _run_eigs(plan)
            if plan.format == "csv":
                has_root = plan.dim is not None
                header = ["index", "re", "im"] + (["root_re", "root_im"] if has_root else [])
                text = _csv(header, [[r["index"], r["eigenvalue"]] + ([r["truncation_root"]] if has_root else []) for r in rows])
            else:
                text = pseudospectra.dumps({**_spec_json(plan.spec), "eigenvalues": rows}) + "\n"
        elif plan.command == "eigvec":
            out = _run_eigvec(plan)
            if plan.format == "csv":
                text = _csv(["k", "re", "im"], [[k + 1, v] for k, v in enumerate(out["entries"])])
            else:
                text = pseudospectra.dumps(out) + "\n"
        else:
            runner = {"constants": _run_constants, "mfunc": _run_mfunc, "poly": _run_poly}[plan.command]
            text = pseudospectra.dumps(runner(plan)) + "\n"
        _write(plan, text, stdout)
        return 0
    except (DomainError, DimensionError, UsageError) as exc:
        stderr.write(f"ejspec: error: {exc}\n")
        return 2
    except (ConvergenceError, ArithmeticError, FloatingPointError) as exc:
        stderr.write(f"ejspec: numerical failure: {type(exc).__name__}: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"ejspec: error: {exc}\n")
        return 2


def main(argv: list[str] | None = None) -> int:
    try:
        plan = parse(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        sys.stderr.write(f"ejspec: error: {exc}\n")
        return 2
    return execute(plan)


if __name__ == "__main__":
    sys.exit(main())
