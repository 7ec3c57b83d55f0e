"""Command line front end: ``piexp COMMAND PROBLEM [options]``.

Every command prints a short human-readable summary followed by a JSON report
(``--json`` prints the report alone).  Exit codes: 0 success, 2 invalid input,
3 budget exceeded, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .algebra import nilradical, radical
from .codimension import ORDINARY, GRADED, GROUP, OPERATOR, codim, codim_series, is_identity
from .cocharacter import DEFAULT_MAX_N, cocharacter, cocharacter_vanishing_check
from .decomposition import (complement_components, invariant_levi, invariant_simple_decomposition,
                            invariant_wedderburn_malcev, verify_splitting)
from .errors import (BudgetExceededError, InconsistencyError, NoInvariantComplementError, PiexpError,
                     ValidationError)
from .exponent import (DISTINCT_INDEX_FLAG, ONE_COMPLEMENT_FLAG, associative_exponent, is_invariant_simple,
                       lie_exponent_from_chains, simplicity_criterion_report)
from .problem import load_problem

REPORT_SCHEMA = "piexp-report/1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_INCONSISTENT = 4


def _basis_json(A, U):
    return [[A.field.format(x) for x in v] for v in U.basis]


# --------------------------------------------------------------------------
# commands; each returns (human-readable lines, results dict, flags)


def cmd_validate(pf, args):
    A = pf.algebra
    lines = [f"{pf.name}: valid {A.kind} algebra of dimension {A.dim} over Q(zeta_{pf.field.conductor})"]
    structs = {}
    for name, s in pf.structures.items():
        lines.append(f"  structure {name}: valid {s.type}")
        structs[name] = s.type
    for name, (f, sname) in pf.polynomials.items():
        lines.append(f"  polynomial {name}: degree {f.n}, {len(f.terms)} terms, structure {sname or 'trivial'}")
    return lines, {"valid": True, "kind": A.kind, "dim": A.dim, "structures": structs,
                   "polynomials": sorted(pf.polynomials)}, []


def cmd_radical(pf, args):
    A = pf.algebra
    rep = radical(A)
    res = rep.to_json(A)
    lines = [f"radical: dim {rep.radical.dim}, semisimple quotient dim {A.dim - rep.radical.dim}"]
    if rep.nilpotency_index is not None:
        lines.append(f"nilpotency index: {rep.nilpotency_index}")
    if A.is_lie:
        N = nilradical(A)
        res["nilradical_dim"] = N.dim
        res["nilradical_basis"] = _basis_json(A, N)
        lines.append(f"nilradical: dim {N.dim}")
    return lines, res, []


def _splitting(pf, s):
    A = pf.algebra
    return invariant_levi(A, s) if A.is_lie else invariant_wedderburn_malcev(A, s)


def cmd_decompose(pf, args):
    A = pf.algebra
    s = pf.structure(args.structure)
    rad = radical(A).radical
    if rad.dim == 0:
        dec = invariant_simple_decomposition(A, s, args.seed)
        comps = dec.components
        note = "semisimple"
    else:
        rep = _splitting(pf, s)
        comps, dec = complement_components(A, s, rep, args.seed)
        note = f"components of a structure-invariant complement of the radical (dim {rad.dim})"
    res = dec.to_json()
    res["radical_dim"] = rad.dim
    res["components"] = [_basis_json(A, C) for C in comps]
    lines = [f"{note}: component dims {dec.dims()}"]
    return lines, res, []


def _cmd_split(pf, args, lie: bool):
    A = pf.algebra
    if A.is_lie != lie:
        raise ValidationError(f"{'levi' if lie else 'wedderburn-malcev'} does not apply to {A.kind} algebras")
    s = pf.structure(args.structure)
    rep = _splitting(pf, s)
    chk = verify_splitting(A, s, rep)
    res = rep.to_json(A)
    res["checks"] = dict(vars(chk))
    if not chk.ok:
        raise InconsistencyError(f"splitting failed its checks: {vars(chk)}")
    lines = [f"complement dim {rep.complement.dim}, radical dim {rep.radical.dim}, {rep.stages} stage(s)",
             "checks: subalgebra, trivial intersection, dimensions, invariance, isomorphism to quotient: ok"]
    return lines, res, []


def cmd_wm(pf, args):
    return _cmd_split(pf, args, False)


def cmd_levi(pf, args):
    return _cmd_split(pf, args, True)


def _exponent_lines(rep):
    lines = [f"exponent d = {rep.d}"]
    if "chains" in rep.details:
        for i, ch in enumerate(rep.details["chains"]):
            lines.append(f"chain {i}: pairs (dim I, dim J) {[tuple(p) for p in ch['pairs']]}, {ch['status']}, "
                         f"value {ch['value']}")
        lines.append(f"witness chain: {list(rep.witness)}")
    else:
        lines.append(f"witness components: {list(rep.witness)} (dims {[c.dim for c in rep.components_used]})")
    return lines


def cmd_exponent(pf, args):
    A = pf.algebra
    s = pf.structure(args.structure)
    rep = lie_exponent_from_chains(A, s, list(pf.chains.values()), args.q_max) if A.is_lie \
        else associative_exponent(A, s)
    return _exponent_lines(rep), rep.to_json(), list(rep.flags)


def cmd_lie_exponent(pf, args):
    A = pf.algebra
    s = pf.structure(args.structure)
    if not A.is_lie:
        raise ValidationError("lie-exponent needs a Lie algebra")
    names = args.chains if args.chains else sorted(pf.chains)
    chains = []
    for n in names:
        if n not in pf.chains:
            raise ValidationError(f"unknown chain {n!r} (known: {', '.join(sorted(pf.chains)) or 'none'})")
        chains.append(pf.chains[n])
    rep = lie_exponent_from_chains(A, s, chains, args.q_max)
    res = rep.to_json()
    res["chain_names"] = ["default (L, R)"] + list(names)
    return _exponent_lines(rep), res, list(rep.flags)


def cmd_codim(pf, args):
    A = pf.algebra
    s = pf.structure(args.structure)
    rep = codim(A, s, args.n, regime=args.regime, modular=args.modular)
    lines = [f"c_{args.n} = {rep.value} ({rep.regime}; matrix {rep.rows} x {rep.cols})"]
    if rep.breakdown:
        parts = " + ".join(str(v) for v in rep.breakdown.values())
        lines.append(f"per label vector: {parts}")
    return lines, rep.to_json(), []


def cmd_codim_series(pf, args):
    A = pf.algebra
    s = pf.structure(args.structure)
    ser = codim_series(A, s, args.n_max, regime=args.regime)
    lines = [f"c_n for n = 1..{args.n_max}: {ser.values}",
             "c_n^(1/n): " + ", ".join(f"{x:.4f}" for x in ser.root_trend),
             f"exponent formula: {ser.predicted_exponent}"]
    return lines, ser.to_json(), [DISTINCT_INDEX_FLAG] if ser.predicted_exponent is not None else []


def cmd_check_identity(pf, args):
    A = pf.algebra
    f, sname = pf.polynomial(args.poly)
    s = pf.structure(args.structure or sname)
    res = is_identity(A, s, f)
    out = {"polynomial": args.poly, "identity": res.identity}
    lines = [f"identity: {'true' if res.identity else 'false'}"]
    if not res.identity:
        out["witness"] = list(res.witness)
        out["value"] = [A.field.format(x) for x in res.value]
        lines.append(f"witness: {', '.join(res.witness)}")
    return lines, out, []


def cmd_cocharacter(pf, args):
    A = pf.algebra
    s = pf.structure(args.structure)
    rep = cocharacter(A, s, args.n, max_n=args.max_n)
    res = rep.to_json()
    lines = [f"c_{args.n} = {rep.codim}",
             "multiplicities: " + ", ".join(f"{lam}: {m}" for lam, m in rep.multiplicities.items() if m)]
    if args.vanishing:
        I = pf.algebra.zero() if args.vanishing == "zero" else radical(A).radical
        van = cocharacter_vanishing_check(A, s, I, args.n, max_n=args.max_n)
        res["vanishing"] = van.to_json()
        lines.append(f"vanishing check (I dim {I.dim}, p = {van.nilpotency_index}): "
                     f"{len(van.triggered)} triggered partitions, all zero")
    return lines, res, []


def cmd_check_simple(pf, args):
    A = pf.algebra
    s = pf.structure(args.structure)
    if A.is_lie:
        simp = is_invariant_simple(A, s)
        return [f"invariant simple: {simp.simple}"], simp.to_json(A), []
    rep = simplicity_criterion_report(A, s)
    lines = [f"exponent {rep.exponent}, dim {rep.dim}, invariant simple: {rep.simple}",
             f"criterion (exponent = dim iff simple): {'consistent' if rep.consistent else 'INCONSISTENT'}"]
    lines += [f"note: {n}" for n in rep.notes]
    return lines, rep.to_json(), [DISTINCT_INDEX_FLAG, ONE_COMPLEMENT_FLAG]


COMMANDS = {
    "validate": cmd_validate,
    "radical": cmd_radical,
    "decompose": cmd_decompose,
    "wedderburn-malcev": cmd_wm,
    "levi": cmd_levi,
    "exponent": cmd_exponent,
    "lie-exponent": cmd_lie_exponent,
    "codim": cmd_codim,
    "codim-series": cmd_codim_series,
    "check-identity": cmd_check_identity,
    "cocharacter": cmd_cocharacter,
    "check-simple": cmd_check_simple,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="piexp", description="PI-exponents, codimensions and decompositions "
                                                          "of finite-dimensional algebras with extra structure.")
    p.add_argument("--version", action="version", version=f"piexp {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file (JSON), or the name of a bundled example")
    common.add_argument("--structure", default=None, help="name of a structure in the problem file")
    common.add_argument("--json", action="store_true", help="print only the JSON report")
    common.add_argument("--threads", type=int, default=1, help="worker count (computations currently run serially)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized splitting searches")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("validate", "radical", "decompose", "wedderburn-malcev", "levi", "check-simple"):
        sub.add_parser(name, parents=[common])
    for name in ("exponent", "lie-exponent"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--q-max", type=int, default=None)
        if name == "lie-exponent":
            sp.add_argument("--chains", nargs="*", default=None, help="chain names (default: all in the file)")
    regimes = [ORDINARY, GRADED, GROUP, OPERATOR]
    sp = sub.add_parser("codim", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--regime", choices=regimes, default=None)
    sp.add_argument("--modular", action="store_true", help="seed the rank with modular pivots")
    sp = sub.add_parser("codim-series", parents=[common])
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--regime", choices=regimes, default=None)
    sp = sub.add_parser("check-identity", parents=[common])
    sp.add_argument("--poly", required=True)
    sp = sub.add_parser("cocharacter", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    sp.add_argument("--vanishing", choices=["radical", "zero"], default=None,
                    help="also check the vanishing of multiplicities for this nilpotent ideal")
    return p


def _options(args) -> dict:
    skip = {"problem", "json", "threads", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _digest(pf, args) -> str:
    payload = json.dumps({"problem": pf.to_json(), "command": args.command, "options": _options(args)},
                         sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def run_command(pf, args) -> tuple[dict, list[str], int]:
    """Dispatch a parsed command; returns (report, human-readable lines, exit code)."""
    t0 = time.perf_counter()
    report = {"schema": REPORT_SCHEMA, "engine_version": __version__, "command": args.command,
              "problem": pf.name, "inputs_digest": _digest(pf, args), "options": _options(args),
              "threads": args.threads}
    try:
        lines, results, flags = COMMANDS[args.command](pf, args)
        code = EXIT_OK
        report.update(status="ok", results=results, flags=flags)
    except BudgetExceededError as e:
        lines, code = [f"budget exceeded: {e}"], EXIT_BUDGET
        report.update(status="budget_exceeded", error=str(e), rows=e.rows, cols=e.cols, budget=e.budget)
    except ValidationError as e:
        lines, code = [f"invalid input: {e}"], EXIT_VALIDATION
        report.update(status="invalid", error=str(e))
    except (InconsistencyError, NoInvariantComplementError) as e:
        lines, code = [f"internal inconsistency: {e}"], EXIT_INCONSISTENT
        report.update(status="inconsistent", error=str(e))
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 4)}
    report["exit_code"] = code
    return report, lines, code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        pf = load_problem(args.problem)
    except ValidationError as e:
        report = {"schema": REPORT_SCHEMA, "engine_version": __version__, "command": args.command,
                  "status": "invalid", "error": str(e), "location": e.location, "exit_code": EXIT_VALIDATION}
        if e.witness is not None:
            report["witness"] = list(e.witness)
        if not args.json:
            print(f"invalid input: {e}")
        print(json.dumps(report, indent=1))
        return EXIT_VALIDATION
    except PiexpError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    report, lines, code = run_command(pf, args)
    if not args.json:
        print(f"piexp {__version__} | {args.command} | {pf.name}")
        for line in lines:
            print(line)
        print("--- report ---")
    print(json.dumps(report, indent=1, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
