"""Property predicates shared by the unit tests and the acceptance suite."""
from __future__ import annotations

from collections import Counter

from gspbessel.tsmod import degree, dims_T, grothendieck_class, mellin_lower, mellin_upper, pi0


def rr_holds(M, chis) -> bool:
    """coinv - inv = deg for every probe character."""
    return all(coinv - inv == degree(M) for inv, coinv in (dims_T(M, chi) for chi in chis))


def probe_characters(M, extra=()):
    return [c for c, _ in pi0(M).blocks] + list(extra)


def _signed(a, b) -> dict:
    out = Counter(a)
    out.subtract(Counter(b))
    return {k: v for k, v in out.items() if v}


def mellin_bookkeeping_holds(rho, M) -> bool:
    """[M_rho(M)] - [M^rho(M)] = [M] in the Grothendieck group."""
    lo_deg, lo_ss = grothendieck_class(mellin_lower(rho, M))
    up_deg, up_ss = grothendieck_class(mellin_upper(rho, M))
    deg, ss = grothendieck_class(M)
    return lo_deg - up_deg == deg and _signed(lo_ss, up_ss) == _signed(ss, ())


def mellin_case_table(rho, others=()):
    """Rows (label, M_rho got, M_rho expected, M^rho got, M^rho expected) of the Mellin case tables.

    ``others`` are characters away from nu rho and nu^2 rho used for the generic branches.
    """
    from gspbessel.tmod import TModule
    from gspbessel.tsmod import S, ZERO, fiber_ext, i_star, universal_extension

    ctx = rho.ctx
    nu1, nu2 = ctx.nu(1) * rho, ctx.nu(2) * rho
    rows = []

    def add(label, M, lower, upper):
        rows.append((label, mellin_lower(rho, M), lower, mellin_upper(rho, M), upper))

    # universal extension of a character
    add("E[mu], mu = nu^2 rho", universal_extension(TModule.of(nu2)), S() + i_star(nu2), ZERO)
    for mu in (nu1, rho, *others):
        E = universal_extension(TModule.of(mu))
        add(f"E[mu], mu = {mu}", E, E, ZERO)
    # finite Jordan blocks
    for m in (1, 2, 3):
        X = TModule.block(nu1, m)
        add(f"i_*(mu^({m})), mu = nu rho", i_star(X), fiber_ext(X, {0: 1}), S())
        for mu in (nu2, rho, *others):
            Y = TModule.block(mu, m)
            add(f"i_*(mu^({m})), mu = {mu}", i_star(Y), i_star(Y), ZERO)
    # length-two Jordan block inside a universal extension
    for mu in (nu1, nu2):
        X = TModule.block(mu, 2)
        add(f"E[mu^(2)], mu = {mu}", universal_extension(X), fiber_ext(X, {0: 1}), ZERO)
    for mu in (rho, *others):
        E = universal_extension(TModule.block(mu, 2))
        add(f"E[mu^(2)], mu = {mu}", E, E, ZERO)
    add("S", S(), S(), ZERO)
    return rows
