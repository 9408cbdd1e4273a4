"""Hypothesis strategies for characters, T-modules and TS-modules."""
from __future__ import annotations

import hypothesis.strategies as st

from gspbessel.chargroup import CharacterContext
from gspbessel.tmod import TModule
from gspbessel.tsmod import DegOneAtom, S, TSModule, i_star, universal_extension


def make_context() -> CharacterContext:
    ctx = CharacterContext()
    ctx.add_generator("a")
    ctx.add_generator("b")
    ctx.add_generator("z", 4)
    ctx.add_generator("r", None, unramified=False)
    return ctx


CTX = make_context()


@st.composite
def characters(draw, ctx=CTX, nu_range=6, ramified=True):
    exps = {
        "a": draw(st.integers(-3, 3)),
        "b": draw(st.integers(-3, 3)),
        "z": draw(st.integers(0, 3)),
    }
    if ramified:
        exps["r"] = draw(st.sampled_from([0, 0, 0, 1]))
    return ctx.char(draw(st.integers(-nu_range, nu_range)), **exps)


def small_characters(ctx=CTX):
    """Few distinct values, so coincidences and Jordan blocks show up often."""
    return st.builds(lambda n, a: ctx.char(n, a=a), st.integers(-3, 3), st.integers(0, 1))


@st.composite
def tmodules(draw, chars=None, max_blocks=5):
    chars = chars if chars is not None else small_characters()
    blocks = draw(st.lists(st.tuples(chars, st.integers(1, 3)), max_size=max_blocks))
    return TModule(tuple(blocks))


@st.composite
def cyclic_tmodules(draw, chars=None, max_blocks=4):
    chars = chars if chars is not None else small_characters()
    picked = draw(st.lists(chars, max_size=max_blocks, unique=True))
    return TModule(tuple((c, draw(st.integers(1, 3))) for c in picked))


@st.composite
def atoms(draw, chars=None):
    X = draw(cyclic_tmodules(chars))
    quot = tuple(draw(st.integers(1, m)) for _, m in X.blocks)
    return DegOneAtom(X, quot)


@st.composite
def tsmodules(draw, chars=None, max_atoms=3):
    fin = draw(tmodules(chars, max_blocks=3))
    return TSModule(fin, tuple(draw(st.lists(atoms(chars), max_size=max_atoms))))


@st.composite
def computable_modules(draw, rho, max_summands=4):
    """Sums of i_*(mu^(m)), S, E[mu] and E[mu^(2)] with mu often nu^k rho."""
    near = st.builds(lambda k: rho.ctx.nu(k) * rho if rho.ctx else rho, st.integers(-1, 3))
    mus = st.one_of(near, small_characters(rho.ctx or CTX))
    out = TSModule()
    for _ in range(draw(st.integers(0, max_summands))):
        kind = draw(st.sampled_from(["i", "S", "E1", "E2"]))
        mu = draw(mus)
        if kind == "i":
            out = out + i_star(TModule.block(mu, draw(st.integers(1, 3))))
        elif kind == "S":
            out = out + S()
        else:
            out = out + universal_extension(TModule.block(mu, 1 if kind == "E1" else 2))
    return out
