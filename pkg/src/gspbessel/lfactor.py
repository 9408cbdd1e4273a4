"""Products and quotients of Tate Euler factors in X = q^(-s).

A factor (1 - c X)^(-1) is stored through the character chi' with
L(chi, s + shift) = L(chi', s), i.e. chi' = chi * nu^shift.  Its coefficient
is c = chi'(pi) = q^(-a) * monomial(pi) where a is the nu-exponent of chi'.
Ramified characters give the trivial factor, which is simply dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chargroup import Character, _PRETTY, _half
from .tmod import semisimplify
from .tsmod import TSModule, pi0


@dataclass(frozen=True)
class EulerFactor:
    """(1 - c X)^(-1) with c = q^(q_num/2) * word(pi)."""

    q_num: int
    word: tuple[tuple[str, int], ...]
    ctx: object = None

    def __eq__(self, other):
        return isinstance(other, EulerFactor) and (self.q_num, self.word) == (other.q_num, other.word)

    def __hash__(self):
        return hash((self.q_num, self.word))

    @property
    def q_exp(self) -> Fraction:
        return Fraction(self.q_num, 2)

    @property
    def character(self) -> Character:
        return Character(-self.q_num, self.word, self.ctx)

    @property
    def key(self):
        return (-self.q_num, self.word)

    def coefficient(self) -> str:
        parts = []
        for name, e in self.word:
            sym = _PRETTY.get(name, name)
            parts.append(f"{sym}(π)" if e == 1 else f"{sym}(π)^{e}")
        if self.q_num:
            parts.append(f"q^{_half(self.q_num, True)}")
        return "·".join(parts) if parts else "1"


def tate(chi: Character, shift=0) -> EulerFactor | None:
    """The factor of L(chi, s + shift); None for ramified chi."""
    if chi.ctx is not None and not chi.ctx.is_unramified(chi):
        return None
    doubled = Fraction(shift) * 2
    if doubled.denominator != 1:
        raise ValueError("shift must be a half-integer")
    return EulerFactor(-(chi.nu_num + int(doubled)), chi.exps, chi.ctx)


def _same(a: EulerFactor, b: EulerFactor) -> bool:
    ctx = a.ctx or b.ctx
    if ctx is not None:
        return ctx.same(a.character, b.character)
    return a == b


def _remove(pool: list[EulerFactor], f: EulerFactor) -> bool:
    for i, g in enumerate(pool):
        if _same(g, f):
            del pool[i]
            return True
    return False


def _sort(factors) -> tuple[EulerFactor, ...]:
    return tuple(sorted(factors, key=lambda f: f.key))


@dataclass(frozen=True)
class LFactorProduct:
    """prod(denominators) / prod(numerators) of Tate factors, canceled."""

    den: tuple[EulerFactor, ...] = ()
    num: tuple[EulerFactor, ...] = ()

    def __post_init__(self):
        den, num = list(self.den), []
        for f in self.num:
            if not _remove(den, f):
                num.append(f)
        object.__setattr__(self, "den", _sort(den))
        object.__setattr__(self, "num", _sort(num))

    @classmethod
    def of(cls, chars, shift=0) -> "LFactorProduct":
        return cls(tuple(f for f in (tate(c, shift) for c in chars) if f is not None))

    def __mul__(self, other: "LFactorProduct") -> "LFactorProduct":
        return multiply(self, other)

    def __truediv__(self, other: "LFactorProduct") -> "LFactorProduct":
        return divide(self, other)

    def is_one(self) -> bool:
        return not self.den and not self.num

    def n_factors(self) -> int:
        return len(self.den) + len(self.num)

    def powers(self) -> list[tuple[EulerFactor, int]]:
        counts: dict[EulerFactor, int] = {}
        for f in self.den:
            counts[f] = counts.get(f, 0) + 1
        for f in self.num:
            counts[f] = counts.get(f, 0) - 1
        return sorted(counts.items(), key=lambda kv: kv[0].key)

    def render(self) -> str:
        return render(self)[0]

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> list[dict]:
        return [{"character": str(f.character), "shift": 0, "exponent": n} for f, n in self.powers()]


ONE = LFactorProduct()


def lfactor_of(M: TSModule, shift=0) -> LFactorProduct:
    return LFactorProduct.of(semisimplify(pi0(M)), shift)


def multiply(a: LFactorProduct, b: LFactorProduct) -> LFactorProduct:
    return LFactorProduct(a.den + b.den, a.num + b.num)


def divide(a: LFactorProduct, b: LFactorProduct) -> LFactorProduct:
    return LFactorProduct(a.den + b.num, a.num + b.den)


def divides(b: LFactorProduct, a: LFactorProduct) -> bool:
    """True iff a / b has no numerator (b divides a)."""
    return not divide(a, b).num


def render(p: LFactorProduct) -> tuple[str, str]:
    """(display text, rational function in X)."""
    powers = p.powers()
    if not powers:
        return "1", "1"
    text = []
    for f, n in powers:
        base = f"L(s, {f.character.pretty()})"
        text.append(base if n == 1 else f"{base}^{n}")
    top, bottom = [], []
    for f, n in powers:
        poly = f"(1 - {f.coefficient()}·X)"
        k = abs(n)
        term = poly if k == 1 else f"{poly}^{k}"
        (bottom if n > 0 else top).append(term)
    rational = f"{''.join(top) or '1'}/({''.join(bottom)})" if bottom else "".join(top)
    return "·".join(text), rational
