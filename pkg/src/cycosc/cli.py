"""Command-line front end.

Subcommands:
    spectrum     level-by-level comparison of H0 eigenvalues with the closed form
    nf           print the canonical normal form of an expression
    commutator   shorthand for nf "[X, Y]"
    verify       run identity suites and write the JSON report
    wconst       evaluate higher-spin structure constants and central charges

Exit codes: 0 success (discrepancies included unless --strict-paper),
1 identity failure under the active policy, 2 usage or parse errors,
3 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import CycoscError, ParseError
from .expr import parse
from .fock import build_rep, dump_matrices, spectrum, spectrum_closed_form
from .identities import SUITES, run_suite
from .normal_order import NormalForm, normal_form
from .params import (
    AlgebraParams,
    params_from_json,
    params_from_kappa,
    validate_alpha,
)
from .winf import N_READINGS, PHI_READINGS, winf_structure

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _parse_alpha(text: str):
    return [float(part) for part in text.split(",") if part != ""]


def _parse_kappa(text: str):
    out = []
    for part in text.split(","):
        if part == "":
            continue
        if ":" in part:
            re_s, im_s = part.split(":", 1)
            out.append(complex(float(re_s), float(im_s)))
        else:
            out.append(complex(float(part), 0.0))
    return out


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise _IOFailure(f"cannot read config {path}: {err}") from err


class _IOFailure(Exception):
    pass


def _resolve_params(args) -> AlgebraParams:
    """Merge --config with inline flags; flags win."""
    cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}
    lam = int(args.lam if args.lam is not None else cfg.get("lambda", 2))
    if args.alpha and args.kappa:
        raise CycoscError("give at most one of --alpha / --kappa")
    if args.alpha:
        return validate_alpha(lam, _parse_alpha(args.alpha))
    if args.kappa:
        return params_from_kappa(lam, _parse_kappa(args.kappa))
    if "alpha" in cfg or "kappa" in cfg:
        obj = {"lambda": lam}
        if "alpha" in cfg:
            obj["alpha"] = cfg["alpha"]
        if "kappa" in cfg:
            obj["kappa"] = cfg["kappa"]
        return params_from_json(obj)  # enforces the exactly-one rule
    return validate_alpha(lam, [0.0] * lam)


def _resolve_dim(args, params: AlgebraParams) -> int:
    cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}
    dim = args.dim if args.dim is not None else cfg.get("dim", 64)
    return int(dim)


def _emit(text: str, out_path: str | None):
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as err:
            raise _IOFailure(f"cannot write {out_path}: {err}") from err
    else:
        sys.stdout.write(text)


def _write_matrix_dump(rep, path: str):
    payload = json.dumps(dump_matrices(rep), sort_keys=True, indent=2) + "\n"
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    except OSError as err:
        raise _IOFailure(f"cannot write {path}: {err}") from err


# ---------------------------------------------------------------------------
# subcommands


def cmd_spectrum(args) -> int:
    params = _resolve_params(args)
    dim = _resolve_dim(args, params)
    rep = build_rep(params, dim)
    if args.dump_matrices:
        _write_matrix_dump(rep, args.dump_matrices)
    computed = spectrum(rep)
    closed = spectrum_closed_form(params, dim - 1)
    rows = [
        {
            "n": n,
            "energy": float(computed[n]),
            "closed_form": float(closed[n]),
            "abs_diff": float(abs(computed[n] - closed[n])),
        }
        for n in range(dim - 1)
    ]
    if args.format == "json":
        _emit(json.dumps(rows, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [f"{'n':>4}  {'energy':>18}  {'closed form':>18}  {'|diff|':>10}"]
        for row in rows:
            lines.append(
                f"{row['n']:>4}  {row['energy']:>18.12f}  "
                f"{row['closed_form']:>18.12f}  {row['abs_diff']:>10.2e}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def format_nf_text(nf: NormalForm) -> str:
    """Human layout: one line per monomial, sorted by (p, q, r)."""
    lines = []
    for (p, q, r), c in nf.sorted_terms():
        if abs(c.imag) < 1e-14:
            coeff = f"{c.real:.12g}"
        else:
            coeff = f"({c.real:.12g},{c.imag:.12g})"
        parts = []
        if p:
            parts.append("ad" if p == 1 else f"ad^{p}")
        if q:
            parts.append("a" if q == 1 else f"a^{q}")
        if r:
            parts.append("K" if r == 1 else f"K^{r}")
        mono = " ".join(parts) if parts else "I"
        lines.append(f"{coeff} {mono}")
    if not lines:
        lines = ["0"]
    return "\n".join(lines) + "\n"


def format_nf_json(nf: NormalForm) -> str:
    terms = [
        {"p": p, "q": q, "r": r, "re": c.real, "im": c.imag}
        for (p, q, r), c in nf.sorted_terms()
    ]
    return json.dumps({"lambda": nf.lam, "terms": terms}, sort_keys=True, indent=2) + "\n"


def cmd_nf(args) -> int:
    params = _resolve_params(args)
    tree = parse(args.expr)
    nf = normal_form(tree, params)
    as_json = args.format == "json" or getattr(args, "as_json", False)
    text = format_nf_json(nf) if as_json else format_nf_text(nf)
    _emit(text, args.out)
    return EXIT_OK


def cmd_commutator(args) -> int:
    args.expr = f"[{args.left}, {args.right}]"
    return cmd_nf(args)


def cmd_verify(args) -> int:
    params = _resolve_params(args)
    dim = _resolve_dim(args, params)
    suites = tuple(args.suite.split(",")) if args.suite else ("all",)
    report = run_suite(
        params,
        dim,
        suites,
        phi_reading=args.phi_reading,
        n_reading=args.N_reading,
    )
    report["config"]["strict_paper"] = bool(args.strict_paper)
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        _emit(payload, args.out)
    if args.dump_matrices:
        _write_matrix_dump(build_rep(params, dim), args.dump_matrices)
    summary = report["summary"]
    if args.format == "json":
        if not args.out:
            sys.stdout.write(payload)
    else:
        sys.stdout.write(
            "pass: {pass}  discrepancy: {discrepancy}  fail: {fail}  "
            "not-applicable: {not_applicable}\n".format(**summary)
        )
        if args.out:
            sys.stdout.write(f"report written to {args.out}\n")
    if summary["fail"] > 0:
        return EXIT_IDENTITY
    if args.strict_paper and summary["discrepancy"] > 0:
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_wconst(args) -> int:
    rows = []
    const = winf_structure(
        args.i, args.j, args.l, args.m, args.n,
        n_reading=args.N_reading, phi_reading=args.phi_reading,
    )
    both = {}
    for nr in N_READINGS:
        both[f"N_{nr}"] = winf_structure(
            args.i, args.j, args.l, args.m, args.n, n_reading=nr,
            phi_reading=args.phi_reading,
        ).value_N
    for pr in PHI_READINGS:
        both[f"phi_{pr}"] = winf_structure(
            args.i, args.j, args.l, args.m, args.n, n_reading=args.N_reading,
            phi_reading=pr,
        ).value_phi
    payload = {
        "i": args.i,
        "j": args.j,
        "l": args.l,
        "m": args.m,
        "n": args.n,
        "c_i": f"{const.c_i.numerator}/{const.c_i.denominator}",
        "c_i_m": float(const.c_i_m),
        "value_N": const.value_N,
        "value_phi": const.value_phi,
        "value_g": const.value_g,
        "N_reading": const.n_reading,
        "phi_reading": const.phi_reading,
        "dual_readings": both,
    }
    if args.format == "json":
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = [
        f"c_{args.i} = {payload['c_i']}",
        f"c_{args.i}({args.m}) = {payload['c_i_m']:.12g}",
        f"N[{args.N_reading}] = {const.value_N:.12g}",
        f"phi[{args.phi_reading}] = {const.value_phi:.12g}",
        f"g = {const.value_g:.12g}",
    ]
    for key in sorted(both):
        lines.append(f"{key} = {both[key]:.12g}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring


def _add_param_flags(sub):
    sub.add_argument("--lambda", dest="lam", type=int, default=None,
                     help="cyclic order (default 2)")
    sub.add_argument("--alpha", default=None,
                     help="comma-separated alpha vector, e.g. 0.5,-0.5")
    sub.add_argument("--kappa", default=None,
                     help="comma-separated kappa values, re or re:im, e.g. 0.3:0.1,0.3:-0.1")
    sub.add_argument("--dim", type=int, default=None, help="truncation dimension (default 64)")
    sub.add_argument("--config", default=None, help="JSON parameter/config file")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--dump-matrices", dest="dump_matrices", default=None,
                     help="write generator matrices as JSON to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycosc",
        description="verification toolkit for cyclic-group extended oscillator algebras",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="Hamiltonian levels vs the closed form")
    _add_param_flags(sp)
    sp.set_defaults(func=cmd_spectrum)

    nf = subs.add_parser("nf", help="normal form of an operator expression")
    nf.add_argument("expr", help="expression, e.g. '[a, ad^3]'")
    _add_param_flags(nf)
    nf.add_argument("--json", dest="as_json", action="store_true",
                    help="shorthand for --format json")
    nf.set_defaults(func=cmd_nf)

    cm = subs.add_parser("commutator", help="normal form of [X, Y]")
    cm.add_argument("left")
    cm.add_argument("right")
    _add_param_flags(cm)
    cm.add_argument("--json", dest="as_json", action="store_true",
                    help="shorthand for --format json")
    cm.set_defaults(func=cmd_commutator)

    vf = subs.add_parser("verify", help="run identity suites and emit the report")
    _add_param_flags(vf)
    vf.add_argument("--suite", default=None,
                    help=f"comma list from {{{','.join(SUITES)}}} or 'all' (default)")
    vf.add_argument("--strict-paper", dest="strict_paper", action="store_true",
                    help="exit nonzero when any published constant is contradicted")
    vf.add_argument("--phi-reading", dest="phi_reading", choices=PHI_READINGS,
                    default="literal")
    vf.add_argument("--N-reading", dest="N_reading", choices=N_READINGS,
                    default="literal")
    vf.set_defaults(func=cmd_verify)

    wc = subs.add_parser("wconst", help="higher-spin structure constants")
    wc.add_argument("--i", type=int, default=0)
    wc.add_argument("--j", type=int, default=0)
    wc.add_argument("--l", type=int, default=0)
    wc.add_argument("--m", type=int, default=0)
    wc.add_argument("--n", type=int, default=0)
    wc.add_argument("--phi-reading", dest="phi_reading", choices=PHI_READINGS,
                    default="literal")
    wc.add_argument("--N-reading", dest="N_reading", choices=N_READINGS,
                    default="literal")
    wc.add_argument("--out", default=None)
    wc.add_argument("--format", choices=("text", "json"), default="text")
    wc.set_defaults(func=cmd_wconst)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParseError,) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except _IOFailure as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except CycoscError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
