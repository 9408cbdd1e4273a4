"""Finite-dimensional smooth T-modules as multisets of Jordan blocks."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .chargroup import Character


def _sorted_blocks(blocks: Iterable[tuple[Character, int]]) -> tuple[tuple[Character, int], ...]:
    blocks = tuple(blocks)
    for _, m in blocks:
        if m < 1:
            raise ValueError("Jordan blocks have length >= 1")
    return tuple(sorted(blocks, key=lambda b: (b[0].key, b[1])))


@dataclass(frozen=True)
class TModule:
    blocks: tuple[tuple[Character, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", _sorted_blocks(self.blocks))

    @classmethod
    def of(cls, *chars: Character) -> "TModule":
        """Semisimple module with one 1-block per listed character."""
        return cls(tuple((c, 1) for c in chars))

    @classmethod
    def block(cls, chi: Character, length: int = 1) -> "TModule":
        return cls(((chi, length),))

    @classmethod
    def cyclic(cls, chars: Iterable[Character]) -> "TModule":
        """The cyclic module whose semisimplification is ``chars``."""
        counts = Counter(chars)
        return cls(tuple(counts.items()))

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.blocks)

    def __bool__(self) -> bool:
        return bool(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __add__(self, other: "TModule") -> "TModule":
        return direct_sum(self, other)

    def characters(self) -> list[Character]:
        return [c for c, _ in self.blocks]

    def render(self, pretty: bool = True) -> str:
        if not self.blocks:
            return "0"
        parts = []
        for c, m in self.blocks:
            name = c.pretty() if pretty else str(c)
            parts.append(name if m == 1 else f"({name})^({m})")
        return " ⊕ ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"character": str(c), "length": m} for c, m in self.blocks]

    def __str__(self) -> str:
        return self.render()


def inv_coinv_dims(X: TModule, chi: Character) -> tuple[int, int, int]:
    lengths = [m for c, m in X.blocks if c == chi]
    return len(lengths), len(lengths), sum(lengths)


def is_cyclic(X: TModule) -> bool:
    chars = X.characters()
    return len(chars) == len(set(chars))


def twist(X: TModule, mu: Character) -> TModule:
    return TModule(tuple((c * mu, m) for c, m in X.blocks))


def direct_sum(X: TModule, Y: TModule) -> TModule:
    return TModule(X.blocks + Y.blocks)


def semisimplify(X: TModule) -> tuple[Character, ...]:
    return tuple(sorted((c for c, m in X.blocks for _ in range(m)), key=lambda c: c.key))
