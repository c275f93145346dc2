"""Symbolic Hecke characters and square classes.

Characters are elements of a finitely generated abelian group presented by
declared generators, each either of infinite order or of order two.  Every
handle is stored as an exponent vector over the generators, so products,
inverses, order-two tests and exact square detection are all decidable, and
the multiplication table is closed and associative by construction.

Square classes are opaque tokens alpha with alpha * alpha = 1; a nontrivial
class may carry the order-two character cutting out its quadratic extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class AlphaClass:
    """Square-class token; '1' is the distinguished trivial class."""

    token: str

    @property
    def is_trivial(self) -> bool:
        return self.token == "1"

    def __mul__(self, other: "AlphaClass") -> "AlphaClass":
        if self.is_trivial:
            return other
        if other.is_trivial:
            return self
        if self.token == other.token:
            return AlphaClass("1")
        raise ValueError(
            f"product of distinct nontrivial classes {self.token}*{other.token} is undeclared"
        )


TRIVIAL_CLASS = AlphaClass("1")


@dataclass(frozen=True)
class HeckeCharacterHandle:
    """A named character with its exponent vector over the group's generators.

    free:    mapping generator -> integer exponent (infinite-order part)
    torsion: frozenset of order-two generators appearing with odd exponent
    """

    id: str
    free: tuple[tuple[str, int], ...]
    torsion: frozenset[str]

    @property
    def is_trivial(self) -> bool:
        return not self.free and not self.torsion

    @property
    def order_two(self) -> bool:
        return not self.free and bool(self.torsion)

    @property
    def square_root_exists(self) -> bool:
        return not self.torsion and all(e % 2 == 0 for _, e in self.free)


class CharacterGroup:
    """Declared character generators plus derived handles."""

    def __init__(self):
        self._free_gens: list[str] = []
        self._torsion_gens: list[str] = []
        self._classes: dict[str, AlphaClass] = {"1": TRIVIAL_CLASS}
        self._class_characters: dict[str, HeckeCharacterHandle] = {}

    # declarations -------------------------------------------------------

    def declare_generator(self, name: str, order_two: bool = False) -> HeckeCharacterHandle:
        if name in self._free_gens or name in self._torsion_gens:
            raise ValueError(f"generator {name!r} already declared")
        if order_two:
            self._torsion_gens.append(name)
            return self.element({}, {name})
        self._free_gens.append(name)
        return self.element({name: 1})

    def declare_class(self, token: str, character: HeckeCharacterHandle | None = None) -> AlphaClass:
        """Declare a square class; a nontrivial one may carry its order-two
        character."""
        cls = AlphaClass(token)
        if token in self._classes:
            return self._classes[token]
        if not cls.is_trivial:
            if character is None or not character.order_two:
                raise ValueError("nontrivial class needs an order-two character")
            self._class_characters[token] = character
        self._classes[token] = cls
        return cls

    def class_character(self, cls: AlphaClass) -> HeckeCharacterHandle:
        if cls.is_trivial:
            return self.trivial()
        return self._class_characters[cls.token]

    def class_of_character(self, chi: HeckeCharacterHandle) -> AlphaClass | None:
        """The declared class whose character equals chi, if any."""
        if chi.is_trivial:
            return TRIVIAL_CLASS
        for token, ch in self._class_characters.items():
            if ch.free == chi.free and ch.torsion == chi.torsion:
                return self._classes[token]
        return None

    def classes(self) -> list[AlphaClass]:
        return list(self._classes.values())

    # elements -------------------------------------------------------------

    def element(self, free: Mapping[str, int] | None = None, torsion: Iterable[str] = ()) -> HeckeCharacterHandle:
        free = dict(free or {})
        for g in free:
            if g not in self._free_gens:
                raise ValueError(f"unknown free generator {g!r}")
        tors = set(torsion)
        for g in tors:
            if g not in self._torsion_gens:
                raise ValueError(f"unknown order-two generator {g!r}")
        norm_free = tuple(sorted((g, e) for g, e in free.items() if e != 0))
        return HeckeCharacterHandle(self._name(norm_free, frozenset(tors)), norm_free, frozenset(tors))

    def trivial(self) -> HeckeCharacterHandle:
        return self.element({})

    @staticmethod
    def _name(free: tuple[tuple[str, int], ...], torsion: frozenset[str]) -> str:
        parts = [f"{g}^{e}" if e != 1 else g for g, e in free]
        parts += sorted(torsion)
        return "*".join(parts) if parts else "1"

    # arithmetic -----------------------------------------------------------

    def mul(self, a: HeckeCharacterHandle, b: HeckeCharacterHandle) -> HeckeCharacterHandle:
        free = dict(a.free)
        for g, e in b.free:
            free[g] = free.get(g, 0) + e
        torsion = set(a.torsion) ^ set(b.torsion)
        return self.element(free, torsion)

    def inv(self, a: HeckeCharacterHandle) -> HeckeCharacterHandle:
        return self.element({g: -e for g, e in a.free}, a.torsion)

    def pow(self, a: HeckeCharacterHandle, k: int) -> HeckeCharacterHandle:
        free = {g: k * e for g, e in a.free}
        torsion = set(a.torsion) if k % 2 else set()
        return self.element(free, torsion)

    def ratio(self, a: HeckeCharacterHandle, b: HeckeCharacterHandle) -> HeckeCharacterHandle:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: HeckeCharacterHandle) -> HeckeCharacterHandle:
        if not a.square_root_exists:
            raise ValueError(f"{a.id} is not a square")
        return self.element({g: e // 2 for g, e in a.free})

    def equal(self, a: HeckeCharacterHandle, b: HeckeCharacterHandle) -> bool:
        return a.free == b.free and a.torsion == b.torsion
