"""Representation types of GSp(4) with nonzero Siegel-Jacquet module and
their split Bessel data.

Parameters are given in Sally-Tadic form (``chi1``, ``chi2``, ``xi``,
``omega_pi``, ``sigma``; ``omega`` for the Klingen-type and cuspidal tags).
Internally every representation is written as tau-twist of a normalized one,
where tau = sigma except for IIa/IIb where tau = chi1*sigma.  All tables are
evaluated in the normalized coordinates and twisted back by tau.

The combinatorial formulas (``delta_formulas``, ``siegel_rows``,
``exceptional_core``) only use ``*``, ``/``, ``**``, a ``nu(x)`` constructor
and an equality predicate, so the brute-force oracle in :mod:`verify` can run
them over a finite model group.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from .chargroup import Character, CharacterContext
from .lfactor import LFactorProduct, divide, divides, lfactor_of
from .tmod import TModule, semisimplify
from .tsmod import (
    DegOneAtom,
    TSModule,
    ZERO,
    S,
    i_star,
    kirillov_quotient,
    pi0,
    twist_ts,
    universal_extension,
)

HALF = Fraction(1, 2)

TYPES = (
    "I", "IIa", "IIb", "IIIa", "IIIb", "IVa", "IVb", "IVc", "IVd",
    "Va", "Vb", "Vc", "Vd", "VIa", "VIb", "VIc", "VId", "VII",
    "VIIIa", "VIIIb", "IXa", "IXb", "X", "XIa", "XIb", "CuspGeneric", "CuspNonGeneric",
)
GENERIC = frozenset({"I", "IIa", "IIIa", "IVa", "Va", "VIa", "VII", "VIIIa", "IXa", "X", "XIa", "CuspGeneric"})
JP_ZERO = frozenset({"VII", "VIIIa", "VIIIb", "IXa", "IXb", "CuspGeneric", "CuspNonGeneric"})
SIEGEL_TYPES = tuple(t for t in TYPES if t not in JP_ZERO)

PARAMS = {
    "I": ("chi1", "chi2"),
    "IIa": ("chi1",), "IIb": ("chi1",),
    "IIIa": ("chi1",), "IIIb": ("chi1",),
    "Va": ("xi",), "Vb": ("xi",), "Vc": ("xi",), "Vd": ("xi",),
    "X": ("omega_pi",),
}
OPTIONAL = {"XIa": ("omega_pi",), "XIb": ("omega_pi",)}
OPTIONAL.update({t: ("omega",) for t in JP_ZERO})
# normalized parameter names used by the formulas
_NORMAL_NAME = {"chi1": "chi1", "chi2": "chi2", "xi": "chi0", "omega_pi": "omega_pi", "omega": "omega"}


class InvalidSpec(ValueError):
    pass


class NoBesselModel(ValueError):
    pass


class NoSiegelData(ValueError):
    pass


class NotGeneric(ValueError):
    pass


class DivisibilityFailure(ArithmeticError):
    pass


class CoincidenceWarning(UserWarning):
    """Parameters coincide, so a table multiset has repeated characters."""


# multiset helpers over an arbitrary equality -----------------------------------

Eq = Callable[[object, object], bool]


def _eq_default(a, b) -> bool:
    return a == b


def member(x, seq: Sequence, eq: Eq = _eq_default) -> bool:
    return any(eq(x, y) for y in seq)


def mset_remove(seq: Sequence, x, eq: Eq = _eq_default) -> list | None:
    out = list(seq)
    for i, y in enumerate(out):
        if eq(x, y):
            del out[i]
            return out
    return None


def mset_intersection(a: Sequence, b: Sequence, eq: Eq = _eq_default) -> list:
    pool, out = list(b), []
    for x in a:
        rest = mset_remove(pool, x, eq)
        if rest is not None:
            pool = rest
            out.append(x)
    return out


def mset_difference(a: Sequence, b: Sequence, eq: Eq = _eq_default) -> list | None:
    """a minus b, or None when b is not a sub-multiset of a."""
    out = list(a)
    for x in b:
        out = mset_remove(out, x, eq)
        if out is None:
            return None
    return out


def mset_equal(a: Sequence, b: Sequence, eq: Eq = _eq_default) -> bool:
    return len(a) == len(b) and mset_difference(a, b, eq) == []


def set_equal(a: Sequence, b: Sequence, eq: Eq = _eq_default) -> bool:
    return all(member(x, b, eq) for x in a) and all(member(y, a, eq) for y in b)


# table data in the normalized coordinates --------------------------------------

@dataclass(frozen=True)
class DeltaRow:
    delta: tuple
    tilde: tuple | None  # None where the table has no split model
    d0: tuple
    d1: tuple | None
    dq: tuple


def omega_formula(ty: str, p: dict, nu) -> object:
    if ty == "I":
        return p["chi1"] * p["chi2"]
    if ty in ("IIIa", "IIIb"):
        return p["chi1"]
    if ty == "X":
        return p["omega_pi"]
    if ty in JP_ZERO:
        return p.get("omega", nu(0))
    return nu(0)


def delta_formulas(ty: str, p: dict, nu) -> DeltaRow:
    """Delta, Delta-tilde, Delta_0, Delta_1 and Delta_Q of the normalized type."""
    one, h = nu(0), nu(HALF)
    c1, c2, c0, w = p.get("chi1"), p.get("chi2"), p.get("chi0"), p.get("omega_pi")

    def same(*xs):
        return DeltaRow(tuple(xs), tuple(xs), tuple(xs), (), ())

    if ty == "I":
        d = (one, c1, c2, c1 * c2)
        return DeltaRow(d, d, d, (), (c1, c1 ** -1, c2, c2 ** -1))
    if ty == "IIa":
        d = (c1, h, c1 ** -1)
        return DeltaRow(d, d, d, (), (c1 * h, c1 ** -1 * h))
    if ty == "IIb":
        d = (c1, h ** -1, c1 ** -1)
        return DeltaRow(d, d, (h ** -1,), (c1, c1 ** -1), (c1 / h, c1 ** -1 / h))
    if ty == "IIIa":
        return replace(same(h, c1 * h), dq=(c1, c1 ** -1, nu(1)))
    if ty == "IIIb":
        return replace(same(h ** -1, c1 / h), dq=(c1, c1 ** -1, nu(-1)))
    if ty == "IVa":
        return replace(same(nu(3 * HALF)), dq=(nu(2),))
    if ty == "IVb":
        d = (nu(3 * HALF), nu(-HALF))
        return DeltaRow(d, d, (nu(-HALF),), (nu(3 * HALF),), (nu(-2), nu(1)))
    if ty == "IVc":
        return replace(same(nu(-3 * HALF), h), dq=(nu(2), nu(-1)))
    if ty == "IVd":
        return DeltaRow((nu(-3 * HALF),), None, (), None, (nu(-2),))
    if ty == "Va":
        return replace(same(h, c0 * h), dq=(nu(1) * c0,))
    if ty == "Vb":
        d = (nu(-HALF), c0 * h)
        return DeltaRow(d, d, (nu(-HALF),), (c0 * h,), (c0,))
    if ty == "Vc":
        # chi0-twist of Vb; Delta_Q is unchanged by the twist
        vb = delta_formulas("Vb", p, nu)
        tw = lambda xs: tuple(c0 * x for x in xs)  # noqa: E731
        return DeltaRow(tw(vb.delta), tw(vb.tilde), tw(vb.d0), tw(vb.d1), vb.dq)
    if ty == "Vd":
        return DeltaRow((nu(-HALF), c0 / h), None, (), None, (c0 / h,))
    if ty == "VIa":
        return DeltaRow((h, h, h), (h, h), (h, h), (), (nu(1), one))
    if ty == "VIb":
        return DeltaRow((h,), None, (), None, (one,))
    if ty == "VIc":
        return replace(same(nu(-HALF)), dq=(one,))
    if ty == "VId":
        m = nu(-HALF)
        return DeltaRow((m, m, m), (m, m), (m,), (m,), (one, nu(-1)))
    if ty == "X":
        return same(one, w)
    if ty == "XIa":
        return same(h)
    if ty == "XIb":
        return same(nu(-HALF))
    if ty in JP_ZERO:
        return DeltaRow((), None, (), None, ())
    raise InvalidSpec(f"unknown type {ty!r}")


def conditions(ty: str, p: dict, nu, eq: Eq = _eq_default, relabel_iii: bool = False) -> list[str]:
    """Violated validity conditions of the normalized type."""
    one = nu(0)
    bad = []

    def avoid(x, targets, label):
        if any(eq(x, t) for t in targets):
            bad.append(label)

    pm1 = (nu(1), nu(-1))
    if ty == "I":
        c1, c2 = p["chi1"], p["chi2"]
        for x, label in ((c1, "χ₁"), (c2, "χ₂"), (c1 * c2, "χ₁χ₂"), (c1 / c2, "χ₁χ₂^{-1}")):
            avoid(x, pm1, f"{label} ≠ ν^{{±1}}")
    elif ty in ("IIa", "IIb"):
        c1 = p["chi1"]
        avoid(c1 ** 2, pm1, "χ₁^2 ≠ ν^{±1}")
        avoid(c1, (nu(3 * HALF), nu(-3 * HALF)), "χ₁ ≠ ν^{±3/2}")
    elif ty in ("IIIa", "IIIb"):
        targets = (one, nu(2), nu(-2)) if relabel_iii else (one, nu(2), nu(-2), nu(-1))
        avoid(p["chi1"], targets, "χ₁ ≠ 1, ν^{±2}, ν^{-1}")
    elif ty in ("Va", "Vb", "Vc", "Vd"):
        c0 = p["chi0"]
        if not eq(c0 ** 2, one) or eq(c0, one):
            bad.append("χ₀^2 = 1 ≠ χ₀")
    elif ty == "X":
        avoid(p["omega_pi"], pm1, "ω_π ≠ ν^{±1}")
    elif ty in ("XIa", "XIb"):
        if "omega_pi" in p and not eq(p["omega_pi"], one):
            bad.append("ω_π = 1")
    return bad


@dataclass(frozen=True)
class SiegelRow:
    """sigma_Pi = pi ⊠ chi_Pi with pi of kind ps/sp/det/cusp."""

    kind: str
    pi_params: tuple
    chi_pi: object
    kernel: tuple[str, ...]
    rho_minus_table: object

    def jacquet(self, nu) -> tuple:
        """Normalized constituents chi_Pi * (Jacquet data of pi)."""
        if self.kind == "ps":
            return tuple(self.chi_pi * a for a in self.pi_params)
        if self.kind == "sp":
            return (self.chi_pi * nu(HALF) * self.pi_params[0],)
        if self.kind == "det":
            return (self.chi_pi * nu(-HALF) * self.pi_params[0],)
        return ()


def siegel_rows(ty: str, p: dict, nu) -> list[SiegelRow]:
    one, h = nu(0), nu(HALF)
    c1, c2, c0, w = p.get("chi1"), p.get("chi2"), p.get("chi0"), p.get("omega_pi")
    R = SiegelRow
    rows = {
        "I": lambda: [
            R("ps", (c1, c2), one, (), h * c1 * c2),
            R("ps", (c1 ** -1, c2), c1, (), h * c2),
            R("ps", (c1, c2 ** -1), c2, (), h * c1),
            R("ps", (c1 ** -1, c2 ** -1), c1 * c2, (), h),
        ],
        "IIa": lambda: [
            R("sp", (c1,), c1 ** -1, (), h * c1),
            R("sp", (c1 ** -1,), c1, (), h / c1),
            R("ps", (c1 / h, c1 ** -1 / h), h, ("IIb",), one),
        ],
        "IIb": lambda: [
            R("det", (c1,), c1 ** -1, (), h * c1),
            R("det", (c1 ** -1,), c1, (), h / c1),
            R("ps", (h * c1, h / c1), h ** -1, ("IIa",), nu(1)),
        ],
        "IIIa": lambda: [
            R("ps", (c1 ** -1, nu(-1)), h * c1, ("IIIb",), one),
            R("ps", (c1, nu(-1)), h, ("IIIb",), c1),
        ],
        "IIIb": lambda: [
            R("ps", (c1 ** -1, nu(1)), c1 / h, ("IIIa",), nu(1)),
            R("ps", (c1, nu(1)), h ** -1, ("IIIa",), nu(1) * c1),
        ],
        "IVa": lambda: [R("sp", (nu(-3 * HALF),), nu(3 * HALF), ("IVc",), nu(-1))],
        "IVb": lambda: [
            R("det", (nu(-3 * HALF),), nu(3 * HALF), ("IVd",), nu(-1)),
            R("ps", (nu(2), nu(-1)), nu(-HALF), ("IVa", "IVc", "IVd"), nu(1)),
        ],
        "IVc": lambda: [
            R("sp", (nu(3 * HALF),), nu(-3 * HALF), ("IVa",), nu(2)),
            R("ps", (nu(-2), nu(1)), h, ("IVa", "IVb", "IVd"), one),
        ],
        "IVd": lambda: [R("det", (nu(3 * HALF),), nu(-3 * HALF), ("IVb",), nu(2))],
        "Va": lambda: [
            R("sp", (c0 / h,), h, ("Vb",), one),
            R("sp", (c0 / h,), c0 * h, ("Vc",), c0),
        ],
        "Vb": lambda: [
            R("sp", (h * c0,), nu(-HALF), ("Va",), nu(1)),
            R("det", (c0 / h,), h * c0, ("Vd",), c0),
        ],
        "Vc": lambda: [
            R("sp", (h * c0,), c0 / h, ("Va",), nu(1) * c0),
            R("det", (c0 / h,), h, ("Vd",), one),
        ],
        "Vd": lambda: [
            R("det", (h * c0,), c0 / h, ("Vb",), nu(1) * c0),
            R("det", (h * c0,), nu(-HALF), ("Vc",), nu(1)),
        ],
        "VIa": lambda: [R("sp", (nu(-HALF),), h, ("VIc",), one)],
        "VIb": lambda: [R("det", (nu(-HALF),), h, ("VId",), one)],
        "VIc": lambda: [R("sp", (h,), nu(-HALF), ("VIa",), nu(1))],
        "VId": lambda: [R("det", (h,), nu(-HALF), ("VIb",), nu(1))],
        "X": lambda: [
            R("cusp", (w,), one, (), h * w),
            R("cusp", (w ** -1,), w, (), h),
        ],
        "XIa": lambda: [R("cusp", (one,), h, ("XIb",), one)],
        "XIb": lambda: [R("cusp", (one,), nu(-HALF), ("XIa",), nu(1))],
    }
    if ty not in rows:
        raise NoSiegelData(f"type {ty} has J_P = 0")
    return rows[ty]()


def rho_plus(row: SiegelRow, nu):
    return nu(-HALF) * row.chi_pi


def rho_minus(row: SiegelRow, omega, nu):
    return omega / rho_plus(row, nu)


# exceptional cases -------------------------------------------------------------

NON_EXCEPTIONAL = "NonExceptional"
FULLY_INDUCED = "FullyInducedNonOrdinary"
EXTRAORDINARY = "Extraordinary"
IIIA_SPECIAL = "IIIaSpecial"
EXTRAORDINARY_TYPES = frozenset({"IIa", "Va", "VIa", "XIa"})


def fully_induced_set(ty: str, p: dict, nu) -> tuple:
    m = nu(-HALF)
    if ty == "I":
        return tuple(m * x for x in (nu(0), p["chi1"], p["chi2"], p["chi1"] * p["chi2"]))
    if ty == "IIa":
        return (m * p["chi1"], m / p["chi1"])
    if ty == "X":
        return (m, m * p["omega_pi"])
    return ()


def plus_minus(ty: str, p: dict, nu) -> tuple[tuple, tuple]:
    d0 = delta_formulas(ty, p, nu).d0
    return tuple(nu(HALF) * x for x in d0), tuple(nu(-HALF) * x for x in d0)


def case_assertions(ty: str, p: dict, r, nu, eq: Eq = _eq_default) -> tuple[list[str], bool]:
    """The exceptional-case alternatives that hold for r, and whether r is in Delta_+."""
    om = omega_formula(ty, p, nu)
    dplus, dminus = plus_minus(ty, p, nu)
    in_plus, in_minus = member(r, dplus, eq), member(r, dminus, eq)
    holds = []
    if not in_plus and not in_minus:
        holds.append(NON_EXCEPTIONAL)
    if member(r, fully_induced_set(ty, p, nu), eq):
        holds.append(FULLY_INDUCED)
    if ty in EXTRAORDINARY_TYPES and in_minus and eq(r, om / r):
        holds.append(EXTRAORDINARY)
    if ty == "IIIa" and in_minus and member(r, [om / x for x in dminus], eq):
        holds.append(IIIA_SPECIAL)
    return holds, in_plus


def exceptional_core(ty: str, p: dict, rho, nu, eq: Eq = _eq_default):
    """(case, representative) for a generic normalized type, or (None, None)."""
    om = omega_formula(ty, p, nu)
    for r in (rho, om / rho):
        holds, in_plus = case_assertions(ty, p, r, nu, eq)
        if not in_plus and len(holds) == 1:
            return holds[0], r
    return None, None


# specs -------------------------------------------------------------------------

@dataclass
class ReprSpec:
    ty: str
    params: dict[str, Character]
    ctx: CharacterContext = field(repr=False)

    def __post_init__(self):
        if self.ty not in TYPES:
            raise InvalidSpec(f"unknown type {self.ty!r}; expected one of {', '.join(TYPES)}")
        allowed = set(PARAMS.get(self.ty, ())) | set(OPTIONAL.get(self.ty, ())) | {"sigma"}
        extra = set(self.params) - allowed
        if extra:
            raise InvalidSpec(f"type {self.ty} takes no parameters {sorted(extra)}")
        missing = set(PARAMS.get(self.ty, ())) - set(self.params)
        if missing:
            raise InvalidSpec(f"type {self.ty} needs parameters {sorted(missing)}")
        self.params = {k: self.ctx.adopt(v) for k, v in self.params.items()}

    @property
    def sigma(self) -> Character:
        return self.params.get("sigma", self.ctx.one)

    @property
    def tau(self) -> Character:
        if self.ty in ("IIa", "IIb"):
            return self.params["chi1"] * self.sigma
        return self.sigma

    @property
    def normalized(self) -> dict:
        return {_NORMAL_NAME[k]: v for k, v in self.params.items() if k != "sigma"}

    @property
    def generic(self) -> bool:
        return self.ty in GENERIC

    def nu(self, x) -> Character:
        return self.ctx.nu(x)

    def eq(self, a, b) -> bool:
        return self.ctx.same(a, b)

    def twisted(self, mu: Character) -> "ReprSpec":
        """mu ⊗ Pi: only sigma moves."""
        params = dict(self.params)
        params["sigma"] = mu * self.sigma
        return ReprSpec(self.ty, params, self.ctx)


def make_spec(ty: str, ctx: CharacterContext | None = None, **params) -> ReprSpec:
    """Build a spec, declaring missing generators as fresh unramified ones."""
    ctx = ctx or CharacterContext()
    out = {}
    for name in PARAMS.get(ty, ()):
        if name not in params:
            if name not in ctx.generators:
                if name == "xi":
                    ctx.add_generator("xi", 2)
                    ctx.assert_nontrivial(ctx.gen("xi"))
                else:
                    ctx.add_generator(name)
            params[name] = ctx.gen(name)
    for name, value in params.items():
        out[name] = ctx.parse(value) if isinstance(value, str) else value
    return ReprSpec(ty, out, ctx)


def validate(spec: ReprSpec) -> list[str]:
    return conditions(spec.ty, spec.normalized, spec.nu, spec.eq)


def _require_valid(spec: ReprSpec) -> None:
    bad = validate(spec)
    if bad:
        raise InvalidSpec(f"type {spec.ty} violates: {'; '.join(bad)}")


def central_character(spec: ReprSpec) -> Character:
    return omega_formula(spec.ty, spec.normalized, spec.nu) * spec.tau ** 2


@dataclass(frozen=True)
class DeltaSets:
    delta: tuple
    delta_tilde_split: tuple | None
    delta0: tuple
    delta1_split: tuple | None
    delta_plus: tuple
    delta_minus: tuple
    delta_Q: tuple

    def to_json(self) -> dict:
        out = {}
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            out[name] = None if value is None else [str(c) for c in value]
        return out


def delta_sets(spec: ReprSpec, twisted: bool = True) -> DeltaSets:
    row = delta_formulas(spec.ty, spec.normalized, spec.nu)
    t = spec.tau if twisted else spec.ctx.one

    def tw(xs):
        return None if xs is None else tuple(sorted((x * t for x in xs), key=lambda c: c.key))

    h = spec.nu(HALF)
    return DeltaSets(
        delta=tw(row.delta),
        delta_tilde_split=tw(row.tilde),
        delta0=tw(row.d0),
        delta1_split=tw(row.d1),
        delta_plus=tw(tuple(h * x for x in row.d0)),
        delta_minus=tw(tuple(x / h for x in row.d0)),
        # twisting by a character of the similitude leaves Delta_Q alone
        delta_Q=tuple(sorted(row.dq, key=lambda c: c.key)),
    )


def _rho_n(spec: ReprSpec, rho: Character) -> Character:
    return spec.ctx.adopt(rho) / spec.tau


def has_split_bessel(spec: ReprSpec, rho: Character) -> tuple[bool, int]:
    if spec.generic:
        return True, 1
    dplus = delta_sets(spec, twisted=False).delta_plus
    if member(_rho_n(spec, rho), dplus, spec.eq):
        return True, 1
    return False, 0


@dataclass(frozen=True)
class BesselDatum:
    rho: Character
    omega: Character

    @property
    def lambda_star(self) -> Character:
        return self.omega / self.rho


def exceptional_case(spec: ReprSpec, rho: Character) -> tuple[str, Character]:
    """Case tag and the chosen representative of {rho, rho*} (un-normalized)."""
    if not spec.generic:
        raise NotGeneric(f"type {spec.ty} is not generic")
    if spec.ty in JP_ZERO:
        return NON_EXCEPTIONAL, spec.ctx.adopt(rho)
    case, rep = exceptional_core(spec.ty, spec.normalized, _rho_n(spec, rho), spec.nu, spec.eq)
    if case is None:
        raise AssertionError(f"no case alternative applies to {spec.ty} at {rho}")
    return case, rep * spec.tau


# Bessel modules ----------------------------------------------------------------

def _cyclic(spec: ReprSpec, chars) -> TModule:
    chars = list(chars)
    if spec.ty not in ("VIa", "VId") and len(set(chars)) < len(chars):
        warnings.warn(
            f"type {spec.ty}: coincident characters {[c.pretty() for c in chars]} merged into a Jordan block",
            CoincidenceWarning,
            stacklevel=3,
        )
    return TModule.cyclic(chars)


def _nonsplit_extra(spec: ReprSpec, rho_n: Character) -> list[Character]:
    """Extra characters of the degree-zero module (and of beta^rho)."""
    nu, one = spec.nu, spec.ctx.one
    if spec.ty == "IVd" and spec.eq(rho_n, one):
        return [nu(-3 * HALF)]
    if spec.ty == "Vd":
        c0 = spec.normalized["chi0"]
        if spec.eq(rho_n, one):
            return [c0 / nu(HALF)]
        if spec.eq(rho_n, c0):
            return [nu(-HALF)]
    if spec.ty == "VIb" and spec.eq(rho_n, one):
        return [nu(HALF)]
    return []


def _bessel_normalized(spec: ReprSpec, rho_n: Character) -> TSModule:
    row = delta_formulas(spec.ty, spec.normalized, spec.nu)
    if spec.ty in JP_ZERO:
        return S() if spec.generic else ZERO
    if not spec.generic:
        if member(rho_n, [spec.nu(HALF) * x for x in row.d0], spec.eq):
            return universal_extension(_cyclic(spec, row.tilde))
        return i_star(TModule.of(*row.d0, *_nonsplit_extra(spec, rho_n)))
    case, rep = exceptional_core(spec.ty, spec.normalized, rho_n, spec.nu, spec.eq)
    if case in (FULLY_INDUCED, EXTRAORDINARY):
        crit = spec.nu(HALF) * rep
        rest = mset_remove(row.tilde, crit, spec.eq)
        if rest is None:
            raise AssertionError(f"critical character {crit} missing from the Bessel multiset")
        return universal_extension(_cyclic(spec, rest)) + i_star(crit)
    if case is None:
        raise AssertionError(f"no case alternative applies to {spec.ty} at {rho_n}")
    return universal_extension(_cyclic(spec, row.tilde))


def bessel_module(spec: ReprSpec, rho: Character, normalized: bool = False) -> TSModule:
    """delta_P^{-1/2}-normalized Bessel module beta_rho(Pi)."""
    _require_valid(spec)
    M = _bessel_normalized(spec, _rho_n(spec, rho))
    return M if normalized else twist_ts(M, spec.tau)


def beta_upper(spec: ReprSpec, rho: Character, normalized: bool = False) -> TSModule:
    _require_valid(spec)
    rho_n = _rho_n(spec, rho)
    if spec.generic or spec.ty in JP_ZERO:
        M = ZERO
    else:
        row = delta_formulas(spec.ty, spec.normalized, spec.nu)
        if member(rho_n, [spec.nu(HALF) * x for x in row.d0], spec.eq):
            M = universal_extension(_cyclic(spec, row.d1))
        else:
            M = i_star(TModule.of(*_nonsplit_extra(spec, rho_n)))
    return M if normalized else twist_ts(M, spec.tau)


def whittaker_multiplicity(spec: ReprSpec) -> int:
    return 1 if spec.generic else 0


# Siegel data and the Bessel filtration ----------------------------------------

ORDINARY = "Ordinary"
NON_ORDINARY = "NonOrdinary"


@dataclass(frozen=True)
class SiegelDatum:
    row: SiegelRow
    omega: Character
    rho_plus: Character
    rho_minus: Character

    def describe(self) -> str:
        pi = {
            "ps": lambda: f"({' × '.join(c.pretty() for c in self.row.pi_params)})",
            "sp": lambda: f"Sp({self.row.pi_params[0].pretty()})",
            "det": lambda: f"({self.row.pi_params[0].pretty()}∘det)",
            "cusp": lambda: f"π_c[ω={self.row.pi_params[0].pretty()}]",
        }[self.row.kind]()
        return f"{pi} ⊠ {self.row.chi_pi.pretty()}"

    def to_json(self) -> dict:
        return {
            "sigma_Pi": self.describe(),
            "kind": self.row.kind,
            "chi_Pi": str(self.row.chi_pi),
            "rho_plus": str(self.rho_plus),
            "rho_minus": str(self.rho_minus),
            "kernel": list(self.row.kernel),
        }


def siegel_data(spec: ReprSpec) -> list[SiegelDatum]:
    """Rows in normalized coordinates."""
    om = omega_formula(spec.ty, spec.normalized, spec.nu)
    out = []
    for row in siegel_rows(spec.ty, spec.normalized, spec.nu):
        rp, rm = rho_plus(row, spec.nu), rho_minus(row, om, spec.nu)
        if rm != row.rho_minus_table:
            raise AssertionError(f"{spec.ty}: rho_- {rm} disagrees with the stored {row.rho_minus_table}")
        out.append(SiegelDatum(row, om, rp, rm))
    return out


def classify_pair(datum: SiegelDatum, rho_n: Character, eq: Eq | None = None) -> str:
    eq = eq or (lambda a, b: a == b)
    if datum.row.kind == "det":
        return ORDINARY
    hit_p, hit_m = eq(rho_n, datum.rho_plus), eq(rho_n, datum.rho_minus)
    if not (hit_p or hit_m):
        return ORDINARY
    if hit_p and hit_m:
        return EXTRAORDINARY
    return NON_ORDINARY


@dataclass(frozen=True)
class FiltrationReport:
    i3: TSModule
    i2_ss: tuple
    i1: TSModule
    i0: TSModule
    beta_upper_i: tuple[TSModule, TSModule, TSModule, TSModule]
    m_index: int
    warnings: tuple[str, ...] = ()

    def pieces(self) -> list[TSModule]:
        return [self.i3, i_star(TModule.of(*self.i2_ss)), self.i1, self.i0]

    def to_json(self) -> dict:
        return {
            "I3": self.i3.render(),
            "I2_ss": [c.pretty() for c in self.i2_ss],
            "I1": self.i1.render(),
            "I0": self.i0.render(),
            "beta_upper": [m.render() for m in self.beta_upper_i],
            "m": self.m_index,
            "warnings": list(self.warnings),
        }


def bessel_filtration(datum: SiegelDatum, rho_n: Character, nu, eq: Eq | None = None) -> FiltrationReport:
    """Normalized T-modules in the Bessel filtration of Ind(sigma_Pi)."""
    eq = eq or (lambda a, b: a == b)
    row = datum.row
    m = int(eq(rho_n, datum.rho_plus)) + int(eq(rho_n, datum.rho_minus))
    chi_star = datum.omega / row.chi_pi
    jac = row.jacquet(nu)
    notes = []
    if row.kind == "det":
        hits = eq(rho_n, row.pi_params[0] * row.chi_pi)
        i3 = universal_extension(TModule.of(row.chi_pi)) if hits else ZERO
        i0 = i_star(chi_star) if hits else ZERO
        one_copy = i_star(TModule.of(*jac))
    else:
        hits = False
        i3 = universal_extension(TModule.of(row.chi_pi))
        i0 = i_star(chi_star)
        if row.kind == "cusp":
            one_copy = S()
        else:
            if len(jac) == 2 and jac[0] == jac[1]:
                notes.append(f"coincident Jacquet characters {jac[0].pretty()}: monodromy may degenerate")
            one_copy = universal_extension(TModule.cyclic(jac))
    i1 = one_copy * m
    upper = (
        i3 if hits else ZERO,
        ZERO,
        i1,
        i0 if hits else ZERO,
    )
    return FiltrationReport(i3, tuple(jac), i1, i0, upper, m, tuple(notes))


# L-factors -----------------------------------------------------------------------

def _regular_table(ty: str, p: dict, nu) -> list | None:
    """Regular spinor factor characters in Sally-Tadic parameters; None = no split model."""
    s, h = p.get("sigma"), nu(HALF)
    c1, c2, xi, w = p.get("chi1"), p.get("chi2"), p.get("xi"), p.get("omega_pi")
    table = {
        "I": lambda: [s, c1 * s, c2 * s, c1 * c2 * s],
        "IIa": lambda: [s, c1 ** 2 * s, h * c1 * s],
        "IIb": lambda: [s, c1 ** 2 * s, c1 * s / h],
        "IIIa": lambda: [h * c1 * s, h * s],
        "IIIb": lambda: [c1 * s / h, s / h, h * c1 * s, h * s],
        "IVa": lambda: [nu(3 * HALF) * s],
        "IVb": lambda: [nu(3 * HALF) * s, s / h],
        "IVc": lambda: [h * s, nu(-3 * HALF) * s, nu(3 * HALF) * s],
        "Va": lambda: [h * s, h * xi * s],
        "Vb": lambda: [s / h, h * xi * s],
        "Vc": lambda: [h * s, xi * s / h],
        "VIa": lambda: [h * s, h * s],
        "VIc": lambda: [s / h],
        "VId": lambda: [s / h, s / h],
        "VII": lambda: [], "VIIIa": lambda: [], "IXa": lambda: [], "CuspGeneric": lambda: [],
        "X": lambda: [s, w * s],
        "XIa": lambda: [h * s],
        "XIb": lambda: [s / h],
    }
    return table[ty]() if ty in table else None


def regular_lfactor(spec: ReprSpec, rho: Character, mu: Character | None = None) -> LFactorProduct:
    _require_valid(spec)
    if not has_split_bessel(spec, rho)[0]:
        raise NoBesselModel(f"type {spec.ty} has no split Bessel model at ρ = {rho.pretty()}")
    target = spec.twisted(mu) if mu is not None else spec
    p = dict(target.params)
    p.setdefault("sigma", spec.ctx.one)
    return LFactorProduct.of(_regular_table(spec.ty, p, spec.nu))


def kl_lfactor(spec: ReprSpec, rho: Character) -> LFactorProduct:
    if not has_split_bessel(spec, rho)[0]:
        raise NoBesselModel(f"type {spec.ty} has no split Bessel model at ρ = {rho.pretty()}")
    return lfactor_of(kirillov_quotient(bessel_module(spec, rho)), 0)


def subregular_quotient(spec: ReprSpec, rho: Character) -> LFactorProduct:
    reg, kl = regular_lfactor(spec, rho), kl_lfactor(spec, rho)
    if not divides(kl, reg):
        raise DivisibilityFailure(f"{spec.ty}: L(K) = {kl} does not divide L_reg = {reg}")
    return divide(reg, kl)


def rho_panel(spec: ReprSpec, extra: Sequence[Character] = ()) -> list[Character]:
    """Bessel characters worth probing: Delta-based ones, their partners and a generic one."""
    ctx = spec.ctx
    if "rho" not in ctx.generators:
        ctx.add_generator("rho")
    nu, tau = spec.nu, spec.tau
    om = central_character(spec)
    row = delta_formulas(spec.ty, spec.normalized, nu)
    base = [tau, ctx.gen("rho")]
    if "xi" in spec.params:
        base.append(spec.params["xi"] * tau)
    for x in row.delta:
        base += [nu(HALF) * x * tau, x * tau / nu(HALF)]
    base += list(extra)
    out: list[Character] = []
    for r in base:
        for c in (r, om / r):
            if c not in out:
                out.append(c)
    return out


def semisimple(M: TSModule) -> tuple:
    return semisimplify(pi0(M))
