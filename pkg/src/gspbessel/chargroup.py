"""Smooth characters of k^x as exact symbolic words.

A character is nu^(a) times a monomial in named generators.  The nu-exponent
is kept doubled (``nu_num``) so that half-integers stay integral.  Generators
have a finite or infinite order and a ramification flag; finite orders are
reduced eagerly, so structural equality is a word comparison.

Equality queries go through :meth:`CharacterContext.equals`.  Whenever the
answer is not forced by the presentation or by a declared inequation, the
context answers "not equal" and records the difference monomial in its
``assumption_log`` (generic position).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

_PRETTY = {
    "nu": "ν",
    "sigma": "σ",
    "xi": "ξ",
    "chi0": "χ₀",
    "chi1": "χ₁",
    "chi2": "χ₂",
    "omega_pi": "ω_π",
    "omega": "ω",
    "mu": "μ",
    "rho": "ρ",
}
_UNPRETTY = {v: k for k, v in _PRETTY.items()}


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    order: int | None = None  # None means infinite order
    unramified: bool = True

    def declaration(self) -> str:
        order = "inf" if self.order is None else str(self.order)
        ramified = "false" if self.unramified else "true"
        return f"{self.name} order={order} ramified={ramified}"


def _half(num: int, braces: bool) -> str:
    """Render num/2 as an exponent string."""
    frac = Fraction(num, 2)
    text = str(frac)
    if braces and (frac.denominator != 1 or frac < 0):
        return "{" + text + "}"
    return text


@dataclass(frozen=True, order=False)
class Character:
    nu_num: int
    exps: tuple[tuple[str, int], ...]
    ctx: "CharacterContext | None" = field(default=None, compare=False, hash=False, repr=False)

    # group law -----------------------------------------------------------
    def __mul__(self, other: "Character") -> "Character":
        return combine(self, other, 1)

    def __truediv__(self, other: "Character") -> "Character":
        return combine(self, other, -1)

    def __pow__(self, e: int) -> "Character":
        return combine(self._one(), self, e)

    def __rtruediv__(self, other):
        if other == 1:
            return self ** -1
        return NotImplemented

    def inverse(self) -> "Character":
        return self ** -1

    def _one(self) -> "Character":
        return Character(0, (), self.ctx)

    # inspection ------------------------------------------------------------
    @property
    def nu_exponent(self) -> Fraction:
        return Fraction(self.nu_num, 2)

    @property
    def monomial(self) -> tuple[tuple[str, int], ...]:
        return self.exps

    def is_trivial(self) -> bool:
        return self.nu_num == 0 and not self.exps

    @property
    def key(self):
        return (self.nu_num, self.exps)

    def __lt__(self, other: "Character") -> bool:
        return self.key < other.key

    # rendering ---------------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        if self.nu_num:
            parts.append("nu" if self.nu_num == 2 else f"nu^{_half(self.nu_num, False)}")
        for name, e in self.exps:
            parts.append(name if e == 1 else f"{name}^{e}")
        return " * ".join(parts) if parts else "1"

    def pretty(self) -> str:
        parts = []
        if self.nu_num:
            parts.append("ν" if self.nu_num == 2 else f"ν^{_half(self.nu_num, True)}")
        for name, e in self.exps:
            sym = _PRETTY.get(name, name)
            parts.append(sym if e == 1 else f"{sym}^{{{e}}}" if e < 0 else f"{sym}^{e}")
        return "".join(parts) if parts else "1"


def _reduce(ctx, exps: dict[str, int]) -> tuple[tuple[str, int], ...]:
    out = []
    for name in sorted(exps):
        e = exps[name]
        order = ctx.generators[name].order if ctx is not None and name in ctx.generators else None
        if order is not None:
            e %= order
        if e:
            out.append((name, e))
    return tuple(out)


def combine(a: Character, b: Character, e: int) -> Character:
    """Return a * b**e."""
    ctx = a.ctx if a.ctx is not None else b.ctx
    if a.ctx is not None and b.ctx is not None and a.ctx is not b.ctx:
        raise CharacterError("characters live in different contexts")
    exps = dict(a.exps)
    for name, x in b.exps:
        exps[name] = exps.get(name, 0) + e * x
    return Character(a.nu_num + e * b.nu_num, _reduce(ctx, exps), ctx)


def involution(omega: Character, rho: Character) -> Character:
    """The Bessel involution rho -> omega / rho."""
    return omega / rho


@dataclass(frozen=True)
class Equal:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotEqual:
    reason: str

    def __bool__(self) -> bool:
        return False


_TOKEN = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*[({]?\s*(-?\d+(?:/\d+)?)\s*[)}]?)?\s*$")


class CharacterContext:
    """Generators, inequations and the generic-position assumption log."""

    def __init__(self, generators: Iterable[Generator] = (), inequations: Iterable[Character] = ()):
        self.generators: dict[str, Generator] = {}
        self.inequations: list[Character] = []
        self.assumption_log: list[Character] = []
        for g in generators:
            self.add_generator(g.name, g.order, g.unramified)
        for m in inequations:
            self.assert_nontrivial(m)

    # construction ----------------------------------------------------------
    def add_generator(self, name: str, order: int | None = None, unramified: bool = True) -> Character:
        if name == "nu" or name in self.generators:
            raise CharacterError(f"generator name {name!r} already in use")
        if order is not None and order < 1:
            raise CharacterError("generator order must be positive")
        self.generators[name] = Generator(name, order, unramified)
        return self.gen(name)

    def gen(self, name: str) -> Character:
        if name not in self.generators:
            raise CharacterError(f"unknown generator {name!r}")
        return Character(0, _reduce(self, {name: 1}), self)

    @property
    def one(self) -> Character:
        return Character(0, (), self)

    def nu(self, exponent=1) -> Character:
        """nu**exponent for an integer or half-integer exponent."""
        doubled = Fraction(exponent) * 2
        if doubled.denominator != 1:
            raise CharacterError(f"nu-exponent {exponent} is not a half-integer")
        return Character(int(doubled), (), self)

    def char(self, nu_num: int = 0, **exps: int) -> Character:
        for name in exps:
            if name not in self.generators:
                raise CharacterError(f"unknown generator {name!r}")
        return Character(nu_num, _reduce(self, exps), self)

    def assert_nontrivial(self, m: Character) -> None:
        m = self.adopt(m)
        if m.is_trivial():
            raise CharacterError("an inequation must not be the identity word")
        self.inequations.append(m)

    def adopt(self, ch: Character) -> Character:
        """Re-home a character in this context (reducing exponents)."""
        for name, _ in ch.exps:
            if name not in self.generators:
                raise CharacterError(f"unknown generator {name!r}")
        return Character(ch.nu_num, _reduce(self, dict(ch.exps)), self)

    # text formats ------------------------------------------------------------
    def parse(self, text: str) -> Character:
        text = text.strip()
        for uni, ascii_name in _UNPRETTY.items():
            text = text.replace(uni, ascii_name)
        if text in ("", "1"):
            return self.one
        nu_num = 0
        exps: dict[str, int] = {}
        for token in text.split("*"):
            if token.strip() == "1":
                continue
            m = _TOKEN.match(token)
            if not m:
                raise CharacterError(f"cannot parse character factor {token.strip()!r}")
            name, raw = m.group(1), m.group(2)
            e = Fraction(raw) if raw is not None else Fraction(1)
            if name == "nu":
                doubled = e * 2
                if doubled.denominator != 1:
                    raise CharacterError(f"nu-exponent {e} is not a half-integer")
                nu_num += int(doubled)
                continue
            if e.denominator != 1:
                raise CharacterError(f"generator exponent {e} must be an integer")
            if name not in self.generators:
                raise CharacterError(f"unknown generator {name!r}")
            exps[name] = exps.get(name, 0) + int(e)
        return Character(nu_num, _reduce(self, exps), self)

    @classmethod
    def from_declaration(cls, text: str) -> "CharacterContext":
        """Parse ``name order=<n|inf> ramified=<bool>`` and ``assert <m> != 1`` lines."""
        ctx = cls()
        pending = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("assert"):
                body = line[len("assert"):].strip()
                lhs, sep, rhs = body.partition("!=")
                if not sep or rhs.strip() != "1":
                    raise CharacterError(f"line {lineno}: expected 'assert <monomial> != 1'")
                pending.append(lhs)
                continue
            ctx.declare(line)
        for lhs in pending:
            ctx.assert_nontrivial(ctx.parse(lhs))
        return ctx

    def declare(self, line: str) -> Character:
        """Add one generator from a ``name order=.. ramified=..`` line."""
        fields = line.split()
        name, opts = fields[0], {}
        for item in fields[1:]:
            k, sep, v = item.partition("=")
            if not sep:
                raise CharacterError(f"malformed option {item!r}")
            opts[k.strip()] = v.strip().lower()
        unknown = set(opts) - {"order", "ramified"}
        if unknown:
            raise CharacterError(f"unknown options {sorted(unknown)}")
        order_text = opts.get("order", "inf")
        order = None if order_text in ("inf", "infinite", "oo") else int(order_text)
        if opts.get("ramified", "false") not in ("true", "false"):
            raise CharacterError("ramified must be true or false")
        return self.add_generator(name, order, opts.get("ramified", "false") == "false")

    def declaration(self) -> str:
        lines = [g.declaration() for g in self.generators.values()]
        lines += [f"assert {m} != 1" for m in self.inequations]
        return "\n".join(lines)

    # queries -----------------------------------------------------------------
    def _forced_nontrivial(self, d: Character) -> bool:
        if d.nu_num == 0:
            return False
        if not d.exps:
            return True
        # finite-order characters are unitary, so a nonzero nu-part survives
        return all(self.generators[name].order is not None for name, _ in d.exps)

    def _declared(self, d: Character) -> bool:
        inv = d ** -1
        return any(m == d or m == inv for m in self.inequations)

    def equals(self, a: Character, b: Character) -> Equal | NotEqual:
        d = self.adopt(a) / self.adopt(b)
        if d.is_trivial():
            return Equal()
        if self._forced_nontrivial(d):
            return NotEqual("forced by the presentation")
        if self._declared(d):
            return NotEqual("declared inequation")
        canon = min(d, d ** -1)
        if canon not in self.assumption_log:
            self.assumption_log.append(canon)
        return NotEqual(f"generic position: {canon} != 1")

    def same(self, a: Character, b: Character) -> bool:
        return bool(self.equals(a, b))

    def is_unramified(self, chi: Character) -> bool:
        return all(self.generators[name].unramified for name, _ in chi.exps)

    def assumptions(self) -> list[str]:
        return [f"{m} != 1" for m in self.assumption_log]


def default_context(names: Iterable[str] = ("chi1", "chi2", "sigma")) -> CharacterContext:
    """A context with unramified infinite-order generators."""
    ctx = CharacterContext()
    for name in names:
        ctx.add_generator(name)
    return ctx
