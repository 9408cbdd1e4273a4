"""Command-line front end.

    python3 -m gspbessel classify --type I --rho "nu^-1/2 * sigma"
    python3 -m gspbessel bessel --type VIb --rho sigma
    python3 -m gspbessel lfactor --type IVa --sigma s
    python3 -m gspbessel tables --json
    python3 -m gspbessel verify --suite combinatorics --model 5,4
    python3 -m gspbessel zeta --coeffs f.json --chi 1 --q 3 --order 2

Generators are declared with ``--gen "name order=<n|inf> ramified=<bool>"``;
names used in parameters but not declared are added as unramified
generators of infinite order (``xi`` of order 2 with xi != 1) and echoed
under ``implicit_generators``.
Usage errors exit with 2, domain errors print a JSON error object and exit with 1.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from typing import Sequence

import sympy as sp

from . import gsp4, verify, zeta
from .chargroup import CharacterContext, CharacterError
from .lfactor import render
from .tsmod import degree, is_perfect, kappa, pi0

SCHEMA_VERSION = 1

DOMAIN_ERRORS = (
    CharacterError,
    gsp4.InvalidSpec,
    gsp4.NoBesselModel,
    gsp4.NoSiegelData,
    gsp4.NotGeneric,
    gsp4.DivisibilityFailure,
    zeta.NotRegularizable,
    ValueError,
)

_PARAM_FLAGS = ("chi1", "chi2", "sigma", "xi", "omega_pi", "omega")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# context and spec ----------------------------------------------------------------

def build_context(args) -> tuple[CharacterContext, list[str]]:
    ctx = CharacterContext()
    for line in args.gen or ():
        ctx.declare(line)
    implicit = []
    texts = [getattr(args, p, None) for p in _PARAM_FLAGS] + [getattr(args, "rho", None), getattr(args, "mu", None)]
    texts += [a.split("!=")[0] for a in args.assert_ or ()]
    for text in filter(None, texts):
        for name in _NAME.findall(text):
            if name != "nu" and name not in ctx.generators:
                if name == "xi":
                    # the quadratic parameter of the V types
                    ctx.assert_nontrivial(ctx.add_generator("xi", 2))
                else:
                    ctx.add_generator(name)
                implicit.append(name)
    for a in args.assert_ or ():
        lhs, sep, rhs = a.partition("!=")
        if sep and rhs.strip() != "1":
            raise CharacterError(f"expected '<monomial> != 1', got {a!r}")
        ctx.assert_nontrivial(ctx.parse(lhs))
    return ctx, implicit


def build_spec(args) -> tuple[gsp4.ReprSpec, list[str]]:
    ctx, implicit = build_context(args)
    params = {}
    for name in _PARAM_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            params[name] = ctx.parse(value)
    if "sigma" not in params:
        if "sigma" not in ctx.generators:
            ctx.add_generator("sigma")
            implicit.append("sigma")
        params["sigma"] = ctx.gen("sigma")
    before = set(ctx.generators)
    spec = gsp4.make_spec(args.type, ctx, **params)
    implicit += sorted(set(ctx.generators) - before)
    return spec, implicit


def pick_rho(spec: gsp4.ReprSpec, text: str | None):
    if text is not None:
        return spec.ctx.parse(text)
    if spec.generic or gsp4.has_split_bessel(spec, spec.tau)[0]:
        return spec.tau
    plus = gsp4.delta_sets(spec).delta_plus
    return plus[0] if plus else spec.tau


def _chars(xs):
    return None if xs is None else [c.pretty() for c in xs]


def _module(M) -> dict:
    return {
        "render": M.render(),
        "degree": degree(M),
        "pi0": pi0(M).render(),
        "kappa": kappa(M).render(),
        "perfect": is_perfect(M),
        "structure": M.to_json(),
    }


def _lfac(p) -> dict:
    text, rational = render(p)
    return {"text": text, "rational_in_X": rational, "factors": p.to_json()}


# subcommands ----------------------------------------------------------------------

def cmd_classify(args) -> dict:
    spec, implicit = build_spec(args)
    rho = pick_rho(spec, args.rho)
    exists, deg = gsp4.has_split_bessel(spec, rho)
    out = {
        "type": spec.ty,
        "violations": gsp4.validate(spec),
        "central_character": gsp4.central_character(spec).pretty(),
        "rho": rho.pretty(),
        "exists": exists,
        "degree": deg,
        "delta_sets": {k: _chars(v) for k, v in vars(gsp4.delta_sets(spec)).items()},
        "exceptional_case": None,
        "siegel_pairs": [],
    }
    if spec.generic:
        case, rep = gsp4.exceptional_case(spec, rho)
        out["exceptional_case"] = {"case": case, "representative": rep.pretty()}
    if spec.ty in gsp4.SIEGEL_TYPES:
        rho_n = rho / spec.tau
        for datum in gsp4.siegel_data(spec):
            out["siegel_pairs"].append({**datum.to_json(), "pair": gsp4.classify_pair(datum, rho_n, spec.eq)})
    return _finish(out, spec.ctx, implicit)


def cmd_bessel(args) -> dict:
    spec, implicit = build_spec(args)
    rho = pick_rho(spec, args.rho)
    exists, deg = gsp4.has_split_bessel(spec, rho)
    out = {
        "type": spec.ty,
        "rho": rho.pretty(),
        "exists": exists,
        "degree": deg,
        "bessel_module": _module(gsp4.bessel_module(spec, rho)),
        "beta_upper": _module(gsp4.beta_upper(spec, rho)),
    }
    return _finish(out, spec.ctx, implicit)


def cmd_lfactor(args) -> dict:
    spec, implicit = build_spec(args)
    rho = pick_rho(spec, args.rho)
    mu = spec.ctx.parse(args.mu) if args.mu else None
    out = {
        "type": spec.ty,
        "rho": rho.pretty(),
        "mu": mu.pretty() if mu else "1",
        "L_reg": _lfac(gsp4.regular_lfactor(spec, rho, mu)),
        "L_Kl": _lfac(gsp4.kl_lfactor(spec, rho)),
        "L_sreg_quotient": _lfac(gsp4.subregular_quotient(spec, rho)),
    }
    return _finish(out, spec.ctx, implicit)


def table_row(ty: str) -> dict:
    """Everything the engine derives for one type with symbolic parameters."""
    ctx = CharacterContext()
    ctx.add_generator("sigma")
    spec = gsp4.make_spec(ty, ctx, sigma=ctx.gen("sigma"))
    ds = gsp4.delta_sets(spec)
    row = {
        "type": ty,
        "generic": spec.generic,
        "conditions_violated": gsp4.validate(spec),
        "central_character": gsp4.central_character(spec).pretty(),
        "split_rho": "all" if spec.generic else _chars(sorted(set(ds.delta_plus))),
        "delta_sets": {k: _chars(v) for k, v in vars(ds).items()},
        "bessel_modules": {},
        "L_reg": None,
        "siegel": [],
    }
    for rho in gsp4.rho_panel(spec):
        M = gsp4.bessel_module(spec, rho)
        row["bessel_modules"][rho.pretty()] = {"module": M.render(), "degree": degree(M), "perfect": is_perfect(M)}
    if spec.generic or ds.delta_plus:
        rho = spec.tau if spec.generic else ds.delta_plus[0]
        row["L_reg"] = gsp4.regular_lfactor(spec, rho).render()
    if ty in gsp4.SIEGEL_TYPES:
        generic_rho = ctx.gen("rho")
        for datum in gsp4.siegel_data(spec):
            f = gsp4.bessel_filtration(datum, generic_rho / spec.tau, spec.nu, spec.eq)
            row["siegel"].append({**datum.to_json(), "filtration_generic_rho": f.to_json()})
    row["assumptions"] = ctx.assumptions()
    return row


def cmd_tables(args) -> dict:
    types = args.types.split(",") if args.types else gsp4.TYPES
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rows = [table_row(ty) for ty in types]
    return {"schema": SCHEMA_VERSION, "rows": rows, "warnings": sorted({str(w.message) for w in caught})}


def _parse_model(text: str) -> verify.FiniteModel:
    try:
        n, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,B, got {text!r}") from None
    return verify.FiniteModel(n, b)


def cmd_verify(args) -> dict:
    if args.suite == "combinatorics":
        models = args.model or [verify.FiniteModel(5, 4), verify.FiniteModel(6, 5)]
        reports = [verify.check_combinatorics(m) for m in models]
        report = reports[0]
        for r in reports[1:]:
            report = report.merge(r)
        report.suite = "combinatorics[" + "; ".join(f"N={m.N},B={m.B}" for m in models) + "]"
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", gsp4.CoincidenceWarning)
            report = verify.check_tables()
    return {"schema": SCHEMA_VERSION, **report.to_json()}


def _parse_profile(text: str | None, f: zeta.CoeffFunction) -> dict:
    if not text:
        return f.degree_profile()
    out = {}
    for item in text.split(","):
        mu, sep, a = item.partition(":")
        if not sep:
            raise ValueError(f"profile entries look like mu:a, got {item!r}")
        out[sp.sympify(mu)] = int(a)
    return out


def cmd_zeta(args) -> dict:
    f = zeta.CoeffFunction.load(args.coeffs)
    chi, q = sp.sympify(args.chi), sp.sympify(args.q)
    profile = _parse_profile(args.profile, f)
    Z = zeta.zeta_integral(f, chi, q)
    reg = zeta.regularized(f, chi, profile, q)
    values = {
        str(n): str(zeta.regularized_functional(f, chi, profile, q, n)) for n in range(1, args.order + 1)
    }
    return {
        "schema": SCHEMA_VERSION,
        "coeffs": f.to_json(),
        "chi": str(chi),
        "q": str(q),
        "profile": {str(k): v for k, v in profile.items()},
        "Z": str(Z),
        "Z_over_L": str(reg),
        "I": values,
    }


def _finish(out: dict, ctx: CharacterContext, implicit: list[str]) -> dict:
    out["context"] = ctx.declaration().splitlines()
    out["implicit_generators"] = implicit
    out["assumptions"] = ctx.assumptions()
    return {"schema": SCHEMA_VERSION, **out}


# argument parsing -----------------------------------------------------------------

def _spec_args(p: argparse.ArgumentParser, with_mu: bool = False) -> None:
    p.add_argument("--type", required=True, choices=gsp4.TYPES)
    p.add_argument("--gen", action="append", metavar="DECL", help='"name order=<n|inf> ramified=<bool>"')
    p.add_argument("--assert", dest="assert_", action="append", metavar="MONOMIAL", help='"xi != 1"')
    for name in _PARAM_FLAGS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, metavar="CHAR")
    p.add_argument("--rho", metavar="CHAR", help="Bessel character (default: a splitting one)")
    if with_mu:
        p.add_argument("--mu", metavar="CHAR", help="twist of the zeta integral")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gspbessel", description=__doc__.split("\n\n")[0])
    parser.add_argument("--json", action="store_true", help="JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("classify", "validity, Delta multisets, exceptional case"), ("bessel", "Bessel module and beta^rho")):
        _spec_args(sub.add_parser(name, help=helptext))
    _spec_args(sub.add_parser("lfactor", help="regular, Kirillov and subregular L-factors"), with_mu=True)

    p = sub.add_parser("tables", help="dump the derived tables")
    p.add_argument("--types", help="comma-separated subset of types")

    p = sub.add_parser("verify", help="brute-force verification suites")
    p.add_argument("--suite", choices=("combinatorics", "tables"), required=True)
    p.add_argument("--model", type=_parse_model, action="append", metavar="N,B")

    p = sub.add_parser("zeta", help="zeta integral and regularized functionals")
    p.add_argument("--coeffs", required=True, help="JSON file with n0, m0, explicit, tails")
    p.add_argument("--chi", default="1", help="chi(pi)")
    p.add_argument("--q", default="3")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--profile", help="mu:a_mu,... (default: read off the tails)")

    for p in sub.choices.values():
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "bessel": cmd_bessel,
    "lfactor": cmd_lfactor,
    "tables": cmd_tables,
    "verify": cmd_verify,
    "zeta": cmd_zeta,
}


def _text(report: dict, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in report.items():
        if k == "schema":
            continue
        if isinstance(v, dict):
            if "text" in v and "rational_in_X" in v:
                lines.append(f"{pad}{k}: {v['text']}    [{v['rational_in_X']}]")
            elif "render" in v:
                flag = " (perfect)" if v["perfect"] else ""
                lines.append(f"{pad}{k}: {v['render']}  deg={v['degree']}{flag}")
            else:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines += _text(item, indent + 1)
                lines.append("")
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: {', '.join(map(str, v)) if v else '-'}")
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except DOMAIN_ERRORS as exc:
        print(json.dumps({"schema": SCHEMA_VERSION, "error": type(exc).__name__, "message": str(exc)}, ensure_ascii=False))
        return 1
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print("\n".join(_text(report)))
    if args.command == "verify" and not report["ok"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())
