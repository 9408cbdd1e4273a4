"""Brute-force oracles.

``check_combinatorics`` instantiates the normalized table formulas over a
finite model group (Z/N times half-integral nu-exponents) and re-derives the
Delta intersection identities, the exceptional-case classification and the kernel
identity for Siegel induced representations.

``check_tables`` sweeps symbolic specs of every type over a panel of Bessel
characters and checks the bookkeeping identities between Bessel modules,
beta^rho, Delta multisets, the Bessel filtration and L-factors.
"""
from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import gsp4
from .chargroup import CharacterContext
from .gsp4 import HALF, member, mset_difference, mset_equal, mset_intersection, set_equal
from .lfactor import LFactorProduct, divide, lfactor_of
from .tmod import semisimplify
from .tsmod import degree, kappa, kirillov_quotient, pi0


@dataclass(frozen=True)
class ModelChar:
    """a in Z/N times nu^(nu_num/2)."""

    a: int
    nu_num: int
    N: int

    def __mul__(self, other: "ModelChar") -> "ModelChar":
        return ModelChar((self.a + other.a) % self.N, self.nu_num + other.nu_num, self.N)

    def __truediv__(self, other: "ModelChar") -> "ModelChar":
        return ModelChar((self.a - other.a) % self.N, self.nu_num - other.nu_num, self.N)

    def __pow__(self, e: int) -> "ModelChar":
        return ModelChar((self.a * e) % self.N, self.nu_num * e, self.N)

    def __str__(self) -> str:
        nu = f"nu^{Fraction(self.nu_num, 2)}" if self.nu_num else ""
        z = f"z^{self.a}" if self.a else ""
        return "*".join(x for x in (nu, z) if x) or "1"


@functools.lru_cache(maxsize=None)
def _model_nu(x, N: int) -> ModelChar:
    doubled = Fraction(x) * 2
    if doubled.denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    return ModelChar(0, int(doubled), N)


@dataclass(frozen=True)
class FiniteModel:
    N: int
    B: int

    def __post_init__(self):
        if self.N < 2 or self.B < 4:
            raise ValueError("finite models need N >= 2 and B >= 4")

    def nu(self, x) -> ModelChar:
        return _model_nu(x, self.N)

    def elements(self):
        for a in range(self.N):
            for n in range(-2 * self.B, 2 * self.B + 1):
                yield ModelChar(a, n, self.N)

    def order_two(self):
        return [ModelChar(a, 0, self.N) for a in range(1, self.N) if (2 * a) % self.N == 0]

    def instantiations(self, ty: str):
        els = list(self.elements())
        if ty == "I":
            for c1, c2 in itertools.product(els, els):
                yield {"chi1": c1, "chi2": c2}
        elif ty in ("IIa", "IIb", "IIIa", "IIIb"):
            for c1 in els:
                yield {"chi1": c1}
        elif ty in ("Va", "Vb", "Vc", "Vd"):
            for c0 in self.order_two():
                yield {"chi0": c0}
        elif ty == "X":
            for w in els:
                yield {"omega_pi": w}
        else:
            yield {}


@dataclass
class Report:
    suite: str
    checked: Counter = field(default_factory=Counter)
    witnesses: Counter = field(default_factory=Counter)
    expected_witnesses: set = field(default_factory=set)
    failures: list = field(default_factory=list)

    def fail(self, check: str, **payload) -> None:
        self.failures.append({"check": check, **{k: str(v) for k, v in payload.items()}})

    @property
    def missing_witnesses(self) -> list[str]:
        return sorted(w for w in self.expected_witnesses if not self.witnesses[w])

    @property
    def ok(self) -> bool:
        return not self.failures and not self.missing_witnesses

    def merge(self, other: "Report") -> "Report":
        out = Report(self.suite)
        out.checked = self.checked + other.checked
        out.witnesses = self.witnesses + other.witnesses
        out.expected_witnesses = self.expected_witnesses | other.expected_witnesses
        out.failures = self.failures + other.failures
        return out

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "witnesses": dict(sorted(self.witnesses.items())),
            "missing_witnesses": self.missing_witnesses,
            "failures": self.failures[:50],
            "n_failures": len(self.failures),
        }


# combinatorics -------------------------------------------------------------------

def _expected_plus_minus(ty, p, nu):
    if ty == "IIIa":
        if p["chi1"] == nu(1):
            return [nu(1)], "intersection_+-:IIIa:chi1=nu"
        if p["chi1"] == nu(-1):
            return [nu(0)], "intersection_+-:IIIa:chi1=nu^-1"
    if ty == "IIIb":
        if p["chi1"] == nu(1):
            return [nu(0)], "intersection_+-:IIIb:chi1=nu"
        if p["chi1"] == nu(-1):
            return [nu(-1)], "intersection_+-:IIIb:chi1=nu^-1"
    return [], None


def _expected_minus_minus(ty, p, nu):
    one = nu(0)
    table = {
        "IIa": lambda: [one],
        "IIIa": lambda: [one, p["chi1"]],
        "IVc": lambda: [one],
        "Va": lambda: [one, p["chi0"]],
        "VIa": lambda: [one, one],
        "XIa": lambda: [one],
    }
    if ty in table:
        return table[ty](), f"exceptional++*:{ty}"
    return [], None


EXPECTED_COMBINATORIC_WITNESSES = {
    "intersection_+-:IIIa:chi1=nu", "intersection_+-:IIIa:chi1=nu^-1",
    "intersection_+-:IIIb:chi1=nu", "intersection_+-:IIIb:chi1=nu^-1",
    *(f"exceptional++*:{t}" for t in ("IIa", "IIIa", "IVc", "Va", "VIa", "XIa")),
    *(f"exceptional+-*:{t}" for t in ("I", "IIa", "X")),
    "exceptional+-*:IIIa:(nu,nu)", "exceptional+-*:IIIa:(nu^-1,1)",
    *(f"cases:{gsp4.FULLY_INDUCED}:{t}" for t in ("I", "IIa", "X")),
    *(f"cases:{gsp4.EXTRAORDINARY}:{t}" for t in ("IIa", "Va", "VIa", "XIa")),
    f"cases:{gsp4.IIIA_SPECIAL}:IIIa",
    *(f"combinatoric:{t}" for t in ("IIa", "IIIa", "IVa", "Va", "VIa", "XIa")),
}


def _to_context(model: FiniteModel, p: dict):
    """Realize a model instantiation as symbolic characters with a generator z of order N."""
    ctx = CharacterContext()
    z = ctx.add_generator("z", model.N)

    def lift(m: ModelChar):
        return ctx.nu(Fraction(m.nu_num, 2)) * z ** m.a

    return ctx, lift


_ST_NAME = {"chi1": "chi1", "chi2": "chi2", "chi0": "xi", "omega_pi": "omega_pi"}


def _symbolic_case(model, ty, p, rho):
    ctx, lift = _to_context(model, p)
    params = {_ST_NAME[k]: lift(v) for k, v in p.items()}
    if ty in ("IIa", "IIb"):
        # sigma = chi1^-1 makes the normalizing twist trivial
        params["sigma"] = params["chi1"] ** -1
    spec = gsp4.ReprSpec(ty, params, ctx)
    case, rep = gsp4.exceptional_case(spec, lift(rho))
    return case, rep


SYMBOLIC_SAMPLE = 25


def _fully_induced_literal(ty, p, nu) -> set:
    """nu^(1/2) rho values of the fully induced non-ordinary alternative."""
    one = nu(0)
    if ty == "I":
        return {one, p["chi1"], p["chi2"], p["chi1"] * p["chi2"]}
    if ty == "IIa":
        return {p["chi1"], p["chi1"] ** -1}
    if ty == "X":
        return {one, p["omega_pi"]}
    return set()


def _pair_kind(rho, rp, rm) -> str:
    hits = (rho == rp) + (rho == rm)
    return (gsp4.ORDINARY, gsp4.NON_ORDINARY, gsp4.EXTRAORDINARY)[hits]


def _check_instance(model: FiniteModel, ty: str, p: dict, report: Report, symbolic: bool) -> None:
    nu = model.nu
    one = nu(0)
    om = gsp4.omega_formula(ty, p, nu)
    dplus, dminus = gsp4.plus_minus(ty, p, nu)
    star = lambda xs: [om / x for x in xs]  # noqa: E731
    dplus_s, dminus_s = star(dplus), star(dminus)
    where = {"type": ty, **p}

    # Delta_+ against its dual
    report.checked["intersection--*"] += 1
    if ty in gsp4.GENERIC:
        if mset_intersection(dplus, dplus_s):
            report.fail("intersection--*", **where)
    else:
        transitive = all(set_equal(dplus, [x, om / x]) for x in dplus)
        if not mset_equal(dplus, dplus_s) or not transitive:
            report.fail("intersection--*", **where)

    report.checked["intersection_+-"] += 1
    expected, tag = _expected_plus_minus(ty, p, nu)
    got = mset_intersection(dminus, dplus)
    if not mset_equal(got, expected):
        report.fail("intersection_+-", got=[str(x) for x in got], **where)
    elif tag:
        report.witnesses[tag] += 1

    report.checked["exceptional++*"] += 1
    expected, tag = _expected_minus_minus(ty, p, nu)
    got = mset_intersection(dminus, dminus_s)
    if not mset_equal(got, expected):
        report.fail("exceptional++*", got=[str(x) for x in got], **where)
    elif tag:
        report.witnesses[tag] += 1

    for r in set(dminus):
        report.checked["exceptional+-*"] += 1
        if member(r, dplus_s) and not member(r, dminus_s) and not member(r, dplus):
            if nu(HALF) * r in _fully_induced_literal(ty, p, nu):
                report.witnesses[f"exceptional+-*:{ty}"] += 1
            else:
                report.fail("exceptional+-*", rho=r, **where)
        if member(r, dminus_s) and member(r, dplus):
            if ty == "IIIa" and (p["chi1"], r) == (nu(1), nu(1)):
                report.witnesses["exceptional+-*:IIIa:(nu,nu)"] += 1
            elif ty == "IIIa" and (p["chi1"], r) == (nu(-1), one):
                report.witnesses["exceptional+-*:IIIa:(nu^-1,1)"] += 1
            else:
                report.fail("exceptional+-*:triple", rho=r, **where)

    if ty in gsp4.GENERIC:
        # every rho outside these sets and their duals is non-exceptional on both sides
        plus, minus, minus_s = set(dplus), set(dminus), set(dminus_s)
        literal = _fully_induced_literal(ty, p, nu)
        candidates = plus | minus | set(dplus_s) | minus_s
        candidates.add(ModelChar(0, 8 * model.B + 1, model.N))
        for rho in candidates:
            report.checked["cases"] += 1
            qualifying = []
            for r in (rho, om / rho):
                if r in plus:
                    continue
                holds = []
                if r not in minus:
                    holds.append(gsp4.NON_EXCEPTIONAL)
                if nu(HALF) * r in literal:
                    holds.append(gsp4.FULLY_INDUCED)
                if ty in ("IIa", "Va", "VIa", "XIa") and r in minus and r == om / r:
                    holds.append(gsp4.EXTRAORDINARY)
                if ty == "IIIa" and r in minus and r in minus_s:
                    holds.append(gsp4.IIIA_SPECIAL)
                if len(holds) == 1:
                    qualifying.append((holds[0], r))
            if not qualifying or len({c for c, _ in qualifying}) != 1:
                report.fail("cases", rho=rho, qualifying=qualifying, **where)
                continue
            case, rep = gsp4.exceptional_core(ty, p, rho, nu)
            if (case, rep) != qualifying[0]:
                report.fail("cases:core", rho=rho, **where)
            if case == gsp4.NON_EXCEPTIONAL:
                continue
            tag = f"cases:{case}:{ty}"
            report.witnesses[tag] += 1
            # the symbolic engine is slow, so it is cross-checked on the first few hits per tag
            if symbolic and report.witnesses[tag] <= SYMBOLIC_SAMPLE:
                report.checked["cases:symbolic"] += 1
                sym_case, _ = _symbolic_case(model, ty, p, rho)
                if sym_case != case:
                    report.fail("cases:symbolic", rho=rho, got=sym_case, want=case, **where)

    if ty in gsp4.SIEGEL_TYPES:
        rows = gsp4.siegel_rows(ty, p, nu)
        if ty == "IIIa":
            # both row choices must classify every rho the same way
            for rho in set(dplus) | set(dminus) | {one, p["chi1"]}:
                report.checked["iiia_rows"] += 1
                verdicts = {_pair_kind(rho, gsp4.rho_plus(row, nu), gsp4.rho_minus(row, om, nu)) for row in rows}
                if len(verdicts) != 1:
                    report.fail("iiia_rows", rho=rho, **where)
        if ty in gsp4.GENERIC:
            for row in rows:
                if len(row.kernel) != 1 or row.chi_pi ** 2 == om:
                    continue
                xi_ty = row.kernel[0]
                if gsp4.conditions(xi_ty, p, nu, relabel_iii=True):
                    continue
                report.checked["combinatoric"] += 1
                rp, rm = gsp4.rho_plus(row, nu), gsp4.rho_minus(row, om, nu)
                xi_plus, _ = gsp4.plus_minus(xi_ty, p, nu)
                dual = [rm / nu(1), rp * nu(1)]
                if not set_equal(xi_plus, [rp, rm]) or any(member(d, [rp, rm]) for d in dual):
                    report.fail("combinatoric", row=row.kernel, **where)
                else:
                    report.witnesses[f"combinatoric:{ty}"] += 1


def check_combinatorics(model: FiniteModel, types=None, symbolic: bool = True) -> Report:
    report = Report(f"combinatorics[N={model.N},B={model.B}]")
    report.expected_witnesses = set(EXPECTED_COMBINATORIC_WITNESSES)
    for ty in types or gsp4.SIEGEL_TYPES:
        for p in model.instantiations(ty):
            # the IIIa/IIIb normalization is relabeled chi1 <-> chi1^-1, so chi1 = nu^-1 is kept
            if gsp4.conditions(ty, p, model.nu, relabel_iii=True):
                continue
            report.checked["instantiations"] += 1
            _check_instance(model, ty, p, report, symbolic)
    return report


# tables ----------------------------------------------------------------------------

def _ss(M):
    return list(semisimplify(pi0(M)))


_INDUCED_DEGREE = {gsp4.ORDINARY: {1}, gsp4.NON_ORDINARY: {1, 2}, gsp4.EXTRAORDINARY: {2}}


def _kernel_params(spec: gsp4.ReprSpec, ty: str) -> dict:
    allowed = set(gsp4.PARAMS.get(ty, ())) | set(gsp4.OPTIONAL.get(ty, ())) | {"sigma"}
    return {k: v for k, v in spec.params.items() if k in allowed}


def _check_spec(spec: gsp4.ReprSpec, report: Report) -> None:
    ty, eq, nu = spec.ty, spec.eq, spec.nu
    ds = gsp4.delta_sets(spec)
    where = {"type": ty}

    report.checked["delta_inclusions"] += 1
    if ds.delta_tilde_split is not None:
        d1 = mset_difference(ds.delta_tilde_split, ds.delta0, eq)
        ok = (
            d1 is not None
            and mset_difference(ds.delta, ds.delta_tilde_split, eq) is not None
            and mset_equal(d1, ds.delta1_split, eq)
        )
    else:
        ok = mset_difference(ds.delta, ds.delta0, eq) is not None
    if not ok:
        report.fail("delta_inclusions", **where)

    reg_seen = []
    om = gsp4.central_character(spec)
    for rho in gsp4.rho_panel(spec):
        w = {**where, "rho": rho.pretty()}
        exists, deg = gsp4.has_split_bessel(spec, rho)
        M = gsp4.bessel_module(spec, rho)
        U = gsp4.beta_upper(spec, rho)

        report.checked["duality"] += 1
        partner = om / rho
        if gsp4.bessel_module(spec, partner) != M or gsp4.has_split_bessel(spec, partner) != (exists, deg):
            report.fail("duality", **w)

        report.checked["degree"] += 1
        if degree(M) != deg:
            report.fail("degree", **w)

        report.checked["beta1"] += 1
        diff = mset_difference(_ss(M), _ss(U), eq)
        if degree(M) - degree(U) != gsp4.whittaker_multiplicity(spec) or diff is None or not mset_equal(diff, ds.delta0, eq):
            report.fail("beta1", module=M, upper=U, **w)

        report.checked["prop53_lfactor"] += 1
        if divide(lfactor_of(M), lfactor_of(U)) != LFactorProduct.of(ds.delta0):
            report.fail("prop53_lfactor", **w)

        report.checked["monodromy"] += 1
        counts = Counter(c for c, _ in pi0(M).blocks)
        over = {c: n for c, n in counts.items() if n > 1}
        allowed = ty == "VIa" and eq(rho / spec.tau, spec.ctx.one)
        if allowed:
            if over != {nu(HALF) * spec.tau: 2}:
                report.fail("monodromy:VIa", **w)
        elif over:
            report.fail("monodromy", **w)

        report.checked["cal_L"] += 1
        if not mset_equal(_ss(M), list(semisimplify(kappa(M))) + _ss(kirillov_quotient(M)), eq):
            report.fail("cal_L", **w)

        if exists:
            report.checked["divisibility"] += 1
            try:
                gsp4.subregular_quotient(spec, rho)
            except gsp4.DivisibilityFailure as exc:
                report.fail("divisibility", error=exc, **w)
            reg_seen.append(gsp4.regular_lfactor(spec, rho))

        if ty in gsp4.SIEGEL_TYPES:
            rho_n = rho / spec.tau
            M_n = gsp4.bessel_module(spec, rho, normalized=True)
            for datum in gsp4.siegel_data(spec):
                report.checked["filtration"] += 1
                f = gsp4.bessel_filtration(datum, rho_n, nu, eq)
                bound = [c for piece in f.pieces() for c in _ss(piece)]
                if mset_difference(bound, _ss(M_n), eq) is None:
                    report.fail("filtration", row=datum.describe(), **w)
                if spec.generic:
                    # 0 -> Xi -> I -> Pi -> 0 is additive in degree; the pair type pins deg of the induced module
                    report.checked["degree_addition"] += 1
                    total = degree(M) + sum(
                        degree(gsp4.bessel_module(gsp4.ReprSpec(k, _kernel_params(spec, k), spec.ctx), rho))
                        for k in datum.row.kernel
                    )
                    kind = gsp4.classify_pair(datum, rho_n, eq)
                    if total not in _INDUCED_DEGREE[kind]:
                        report.fail("degree_addition", row=datum.describe(), kind=kind, total=total, **w)
            if ty == "IIIa":
                report.checked["iiia_rows"] += 1
                kinds = {gsp4.classify_pair(d, rho_n, eq) for d in gsp4.siegel_data(spec)}
                if len(kinds) != 1:
                    report.fail("iiia_rows", kinds=sorted(kinds), **w)

    report.checked["rho_independence"] += 1
    if any(r != reg_seen[0] for r in reg_seen[1:]):
        report.fail("rho_independence", **where)


def check_tables(specs=None) -> Report:
    report = Report("tables")
    if specs is None:
        specs = []
        for ty in gsp4.TYPES:
            ctx = CharacterContext()
            ctx.add_generator("sigma")
            specs.append(gsp4.make_spec(ty, ctx, sigma=ctx.gen("sigma")))
    for spec in specs:
        report.checked["specs"] += 1
        _check_spec(spec, report)
    return report
