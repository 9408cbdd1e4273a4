"""Split Bessel models, Bessel modules and regular spinor L-factors for GSp(4)."""
from .chargroup import Character, CharacterContext, Equal, NotEqual, combine, involution
from .gsp4 import ReprSpec, make_spec
from .tsmod import TSModule
from .tmod import TModule

__all__ = [
    "Character",
    "CharacterContext",
    "Equal",
    "NotEqual",
    "ReprSpec",
    "TModule",
    "TSModule",
    "combine",
    "involution",
    "make_spec",
]
