"""Finite-length smooth TS-modules.

A module is a finite part ``fin`` (on which S acts trivially, i.e. i_*(fin))
plus a multiset of degree-one atoms.  An atom is the fiber product E[f] of the
universal extension along a surjection f: pi0 -> Y.  In canonical form every
atom has at most one Jordan block per character and quotient lengths
1 <= l <= m per block; any part of the kernel that is a direct summand has
been moved into ``fin``.  With that normalisation, structural equality is
isomorphism.

Extension data between different atoms is not modelled; operations that would
need it raise :class:`OutsideComputableClass`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .chargroup import Character
from .tmod import TModule, direct_sum, is_cyclic, semisimplify, twist


class NotCyclic(ValueError):
    pass


class MonodromyViolation(ValueError):
    pass


class OutsideComputableClass(ValueError):
    def __init__(self, message: str, atom: "DegOneAtom | None" = None):
        super().__init__(message)
        self.atom = atom


@dataclass(frozen=True)
class DegOneAtom:
    """E[f] for f: pi0 -> Y; ``quot[i]`` is the image length of block i."""

    pi0: TModule
    quot: tuple[int, ...]

    def __post_init__(self):
        if len(self.quot) != len(self.pi0.blocks):
            raise ValueError("one quotient length per block")
        if not is_cyclic(self.pi0):
            raise MonodromyViolation("canonical atoms carry one block per character")
        for (_, m), ell in zip(self.pi0.blocks, self.quot):
            if not 1 <= ell <= m:
                raise ValueError("quotient lengths must satisfy 1 <= l <= m")

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[Character, int, int]]) -> "DegOneAtom":
        triples = sorted(triples, key=lambda t: (t[0].key, t[1]))
        return cls(TModule(tuple((c, m) for c, m, _ in triples)), tuple(ell for _, _, ell in triples))

    @property
    def image(self) -> TModule:
        return TModule(tuple((c, ell) for (c, _), ell in zip(self.pi0.blocks, self.quot)))

    @property
    def kappa(self) -> TModule:
        return TModule(tuple((c, m - ell) for (c, m), ell in zip(self.pi0.blocks, self.quot) if m > ell))

    def is_perfect(self) -> bool:
        return not self.kappa

    def twist(self, mu: Character) -> "DegOneAtom":
        return DegOneAtom.from_triples((c * mu, m, ell) for (c, m), ell in zip(self.pi0.blocks, self.quot))

    def render(self, pretty: bool = True) -> str:
        if not self.pi0:
            return "S"
        src = self.pi0.render(pretty)
        if self.is_perfect():
            return f"E[{src}]"
        return f"E[{src} -> {self.image.render(pretty)}]"

    def to_json(self) -> dict:
        return {"pi0": self.pi0.to_json(), "quot": list(self.quot)}


def _atom_key(atom: DegOneAtom):
    return tuple((c.key, m, ell) for (c, m), ell in zip(atom.pi0.blocks, atom.quot))


@dataclass(frozen=True)
class TSModule:
    fin: TModule = TModule()
    atoms: tuple[DegOneAtom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms, key=_atom_key)))

    def __add__(self, other: "TSModule") -> "TSModule":
        return TSModule(direct_sum(self.fin, other.fin), self.atoms + other.atoms)

    def __mul__(self, n: int) -> "TSModule":
        out = ZERO
        for _ in range(n):
            out = out + self
        return out

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.fin) or bool(self.atoms)

    def render(self, pretty: bool = True) -> str:
        parts = [a.render(pretty) for a in self.atoms]
        for c, m in self.fin.blocks:
            name = c.pretty() if pretty else str(c)
            parts.append(f"i_*({name})" if m == 1 else f"i_*(({name})^({m}))")
        return " ⊕ ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {"fin": self.fin.to_json(), "atoms": [a.to_json() for a in self.atoms]}


ZERO = TSModule()


def S() -> TSModule:
    return TSModule(atoms=(DegOneAtom(TModule(), ()),))


def i_star(X: TModule | Character) -> TSModule:
    if isinstance(X, Character):
        X = TModule.of(X)
    return TSModule(fin=X)


def degree(M: TSModule) -> int:
    return len(M.atoms)


def pi0(M: TSModule) -> TModule:
    out = M.fin
    for a in M.atoms:
        out = direct_sum(out, a.pi0)
    return out


def kappa(M: TSModule) -> TModule:
    out = M.fin
    for a in M.atoms:
        out = direct_sum(out, a.kappa)
    return out


def is_perfect(M: TSModule) -> bool:
    # atoms are cyclic by construction, so kappa = 0 is the whole criterion
    return not kappa(M)


def universal_extension(X: TModule) -> TSModule:
    if not is_cyclic(X):
        raise NotCyclic(f"E[X] needs a cyclic X, got {X}")
    return TSModule(atoms=(DegOneAtom(X, tuple(m for _, m in X.blocks)),))


def fiber_ext(X: TModule, quot_spec: Mapping[int, int]) -> TSModule:
    """E[f] for the surjection keeping ``quot_spec[i]`` of block i of X.

    Unlisted blocks map to zero.  The image must satisfy the monodromy bound
    (at most one block per character).
    """
    chosen, fin = [], []
    seen = set()
    for i, (c, m) in enumerate(X.blocks):
        ell = quot_spec.get(i, 0)
        if not 0 <= ell <= m:
            raise ValueError(f"block {i} has length {m}, cannot keep {ell}")
        if ell == 0:
            fin.append((c, m))
            continue
        if c in seen:
            raise MonodromyViolation(f"image has two blocks with character {c}")
        seen.add(c)
        chosen.append((c, m, ell))
    extra = set(quot_spec) - set(range(len(X.blocks)))
    if extra:
        raise ValueError(f"no blocks with indices {sorted(extra)}")
    return TSModule(TModule(tuple(fin)), (DegOneAtom.from_triples(chosen),))


def twist_ts(M: TSModule, mu: Character) -> TSModule:
    return TSModule(twist(M.fin, mu), tuple(a.twist(mu) for a in M.atoms))


def dims_T(M: TSModule, chi: Character) -> tuple[int, int]:
    inv = sum(1 for c, _ in kappa(M).blocks if c == chi)
    return inv, inv + degree(M)


def kirillov_quotient(M: TSModule) -> TSModule:
    """M / kappa(M): every atom replaced by E[Y] on its image."""
    return TSModule(atoms=tuple(DegOneAtom(a.image, tuple(m for _, m in a.image.blocks)) for a in M.atoms))


def grothendieck_class(M: TSModule) -> tuple[int, tuple[Character, ...]]:
    return degree(M), semisimplify(pi0(M))


# Mellin functors ---------------------------------------------------------------

def _eq(a: Character, b: Character) -> bool:
    if a.ctx is not None:
        return a.ctx.same(a, b)
    return a == b


def _nu(rho: Character, k: int) -> Character:
    return Character(rho.nu_num + 2 * k, rho.exps, rho.ctx)


def _classify_atom(atom: DegOneAtom) -> tuple[str, Character | None, int]:
    blocks = atom.pi0.blocks
    if not blocks:
        return "S", None, 0
    if len(blocks) == 1 and atom.is_perfect():
        (c, m), = blocks
        if m <= 2:
            return "E", c, m
    raise OutsideComputableClass(f"M_rho is not determined on {atom.render()}", atom)


def mellin_lower(rho: Character, M: TSModule) -> TSModule:
    """M_rho on the computable class."""
    nu_rho, nu2_rho = _nu(rho, 1), _nu(rho, 2)
    out = ZERO
    for c, m in M.fin.blocks:
        if _eq(c, nu_rho):
            out = out + fiber_ext(TModule.block(c, m), {0: 1})
        else:
            out = out + i_star(TModule.block(c, m))
    for atom in M.atoms:
        kind, c, m = _classify_atom(atom)
        if kind == "S":
            out = out + S()
        elif m == 1:
            out = out + (S() + i_star(c) if _eq(c, nu2_rho) else TSModule(atoms=(atom,)))
        elif _eq(c, nu_rho) or _eq(c, nu2_rho):
            out = out + fiber_ext(TModule.block(c, 2), {0: 1})
        else:
            out = out + TSModule(atoms=(atom,))
    return out


def mellin_upper(rho: Character, M: TSModule) -> TSModule:
    """M^rho on the computable class."""
    nu_rho = _nu(rho, 1)
    out = ZERO
    for c, _ in M.fin.blocks:
        if _eq(c, nu_rho):
            out = out + S()
    for atom in M.atoms:
        _classify_atom(atom)
    return out
