"""Zeta integrals of T(o)-invariant functions on k^x and their regularization.

A function f = sum_n a_n 1_{pi^n o^x} is stored by its coefficient sequence.
With t = q^(-s) the zeta integral Z(f, chi, s) is the power series
sum_n a_n chi(pi)^n t^n, summed here in closed form with exact sympy
arithmetic.  The s-derivative acts as -log(q) * t d/dt, and log(q) is kept
as the exact symbol ``log(q)``.
"""
from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import sympy as sp

t = sp.Symbol("t")
_n = sp.Symbol("n", integer=True)


class NotRegularizable(ValueError):
    """The declared profile does not clear every pole of Z(f, chi, s)."""


def _num(x) -> sp.Expr:
    return sp.nsimplify(x) if isinstance(x, float) else sp.sympify(x)


@dataclass(frozen=True)
class CoeffFunction:
    """a_n = 0 for n < n0; explicit values on [n0, m0); tails from m0 on.

    ``tails`` pairs a value mu(pi) with the coefficients (c_0, c_1, ...) of
    P_mu(n) = sum c_i n^i, so that a_n = sum_mu mu(pi)^n P_mu(n) for n >= m0.
    """

    n0: int
    m0: int
    explicit: tuple = ()
    tails: tuple[tuple[object, tuple], ...] = ()

    def __post_init__(self):
        if self.m0 < self.n0:
            raise ValueError("m0 must be at least n0")
        if len(self.explicit) != self.m0 - self.n0:
            raise ValueError(f"need {self.m0 - self.n0} explicit values, got {len(self.explicit)}")
        object.__setattr__(self, "explicit", tuple(_num(a) for a in self.explicit))
        tails = tuple((_num(mu), tuple(_num(c) for c in cs)) for mu, cs in self.tails)
        mus = [mu for mu, _ in tails]
        if len(set(mus)) != len(mus):
            raise ValueError("tail values mu(pi) must be distinct")
        object.__setattr__(self, "tails", tails)

    def poly(self, mu) -> sp.Expr:
        for m, cs in self.tails:
            if m == _num(mu):
                return sum((c * _n**i for i, c in enumerate(cs)), sp.Integer(0))
        return sp.Integer(0)

    def coefficient(self, n: int) -> sp.Expr:
        if n < self.n0:
            return sp.Integer(0)
        if n < self.m0:
            return self.explicit[n - self.n0]
        return sum((mu**n * self.poly(mu).subs(_n, n) for mu, _ in self.tails), sp.Integer(0))

    def degree_profile(self) -> dict:
        """Smallest profile a_mu = deg P_mu + 1 that the tails require."""
        out = {}
        for mu, cs in self.tails:
            nonzero = [i for i, c in enumerate(cs) if c != 0]
            if nonzero:
                out[mu] = max(nonzero) + 1
        return out

    def shifted(self, k: int) -> "CoeffFunction":
        """x_lambda f for lambda = pi^k, i.e. a'_n = a_{n+k}."""
        tails = []
        for mu, _ in self.tails:
            moved = sp.Poly(sp.expand(mu**k * self.poly(mu).subs(_n, _n + k)), _n)
            tails.append((mu, tuple(reversed(moved.all_coeffs())) if not moved.is_zero else ()))
        return CoeffFunction(self.n0 - k, self.m0 - k, self.explicit, tuple(tails))

    def to_json(self) -> dict:
        return {
            "n0": self.n0,
            "m0": self.m0,
            "explicit": [str(a) for a in self.explicit],
            "tails": [{"mu": str(mu), "poly": [str(c) for c in cs]} for mu, cs in self.tails],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoeffFunction":
        tails = tuple((sp.sympify(str(tl["mu"])), tuple(sp.sympify(str(c)) for c in tl["poly"])) for tl in data.get("tails", ()))
        explicit = tuple(sp.sympify(str(a)) for a in data.get("explicit", ()))
        return cls(int(data["n0"]), int(data["m0"]), explicit, tails)

    @classmethod
    def load(cls, path) -> "CoeffFunction":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def indicator_units() -> CoeffFunction:
    """1_{o^x}."""
    return CoeffFunction(0, 1, (1,))


def monomial_tail(d: int, mu=1, sign: int = 1) -> CoeffFunction:
    """a_n = (sign * n)^d * mu^n for n >= 0.

    ``sign = -1`` measures the tail in the valuation of x^(-1), the exponent
    of the Laurent variable t^(-1).
    """
    coeffs = [0] * d + [sign**d]
    return CoeffFunction(0, 0, (), ((mu, tuple(coeffs)),))


@dataclass(frozen=True)
class RationalInT:
    num: sp.Expr
    den: sp.Expr
    q: sp.Expr

    @property
    def expr(self) -> sp.Expr:
        return self.num / self.den

    def at_s(self, s) -> sp.Expr:
        """Evaluate at t = q^(-s)."""
        return sp.simplify(self.expr.subs(t, self.q ** (-_num(s))))

    def is_laurent_polynomial(self) -> bool:
        return _is_power_of_t(self.den)

    def __str__(self) -> str:
        return str(sp.factor(self.expr))


def _is_power_of_t(den: sp.Expr) -> bool:
    poly = sp.Poly(den, t)
    return len(poly.terms()) == 1


_x = sp.Symbol("x")


@functools.lru_cache(maxsize=None)
def _power_series(i: int) -> sp.Poly:
    """A with sum_{k >= 0} k^i x^k = A(x) / (1 - x)^(i+1)."""
    f = 1 / (1 - _x)
    for _ in range(i):
        f = sp.together(_x * sp.diff(f, _x))
    return sp.Poly(sp.cancel(f * (1 - _x) ** (i + 1)), _x)


def _geometric_tail(c: sp.Expr, coeffs: Sequence, m0: int, low: int) -> tuple[sp.Poly, sp.Poly]:
    """t^(-low) * sum_{n >= m0} P(n) (c t)^n as (numerator, denominator) in t.

    Substituting n = k + m0 reduces to sums of k^i u^k with u = c t.
    """
    shifted = sp.Poly(sp.expand(sum((co * (_n + m0) ** i for i, co in enumerate(coeffs)), sp.Integer(0))), _n)
    if shifted.is_zero:
        return sp.Poly(0, t), sp.Poly(1, t)
    d = shifted.degree()
    one_minus = sp.Poly(1 - c * t, t)
    num = sp.Poly(0, t)
    for (i,), co in shifted.terms():
        A = sp.Poly(_power_series(i).as_expr().subs(_x, c * t), t)
        num += A * one_minus ** (d - i) * co
    return num * sp.Poly(c**m0 * t ** (m0 - low), t), one_minus ** (d + 1)


def _rational(num: sp.Poly, den: sp.Poly, q) -> "RationalInT":
    p, r = num.cancel(den, include=True)
    return RationalInT(p.as_expr(), r.as_expr(), _num(q))


def zeta_integral(f: CoeffFunction, chi_value=1, q=3) -> RationalInT:
    """Z(f, chi, s) as a rational function of t = q^(-s)."""
    chi = _num(chi_value)
    # clear negative powers of t with a common factor t^(-low)
    low = min(f.n0, f.m0, 0)
    num = sp.Poly(sum((a * chi**n * t ** (n - low) for n, a in enumerate(f.explicit, start=f.n0)), sp.Integer(0)), t)
    den = sp.Poly(1, t)
    for mu, cs in f.tails:
        N, D = _geometric_tail(mu * chi, cs, f.m0, low)
        num, den = num * D + N * den, den * D
    return _rational(num, den * sp.Poly(t ** (-low), t), q)


def _regularizer(profile: Mapping, chi) -> sp.Poly:
    out = sp.Poly(1, t)
    for mu, a in profile.items():
        out *= sp.Poly(1 - _num(mu) * chi * t, t) ** int(a)
    return out


def regularized(f: CoeffFunction, chi_value, profile: Mapping, q=3) -> RationalInT:
    """Z(f, chi, s) / L(chi ⊗ M, s) with L given by the profile a_mu(M)."""
    chi = _num(chi_value)
    Z = zeta_integral(f, chi, q)
    out = _rational(sp.Poly(Z.num, t) * _regularizer(profile, chi), sp.Poly(Z.den, t), q)
    if not out.is_laurent_polynomial():
        raise NotRegularizable(f"poles of Z remain after regularization: denominator {sp.factor(out.den)}")
    return out


def regularized_coefficient(f: CoeffFunction, chi_value, profile: Mapping, order: int = 1, q=3) -> sp.Expr:
    """[(t d/dt)^(order-1) (Z/L)] at t = 1; the s-derivative is this times (-log q)^(order-1)."""
    if order < 1:
        raise ValueError("order starts at 1")
    F = regularized(f, chi_value, profile, q)
    # F = sum_k b_k t^k, and (t d/dt)^m t^k = k^m t^k
    (shift, lead), = sp.Poly(F.den, t).terms()
    total = sum((c * (k - shift[0]) ** (order - 1) for (k,), c in sp.Poly(F.num, t).terms()), sp.Integer(0))
    return sp.nsimplify(total / lead)


def regularized_functional(f: CoeffFunction, chi_value, profile: Mapping, q=3, order: int = 1) -> sp.Expr:
    """I_chi^(order)(f): the (order-1)-st s-derivative of Z/L at s = 0."""
    coeff = regularized_coefficient(f, chi_value, profile, order, q)
    return coeff * (-sp.log(_num(q))) ** (order - 1)


def functional_matrix(n: int, chi_value=1, mu=1, q=3) -> sp.Matrix:
    """Rows I^(1..n), columns the tails mu^k k^j (j < n) under the profile a_mu = n."""
    profile = {mu: n}
    cols = []
    for j in range(n):
        f = CoeffFunction(0, 0, (), ((mu, tuple([0] * j + [1])),))
        cols.append([regularized_coefficient(f, chi_value, profile, k, q) for k in range(1, n + 1)])
    return sp.Matrix(cols).T
