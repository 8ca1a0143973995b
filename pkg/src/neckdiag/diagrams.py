"""Necklace diagrams as cyclic words over the four stone types.

A diagram is a non-empty cyclic word in the alphabet {S, C, R, L}
(square, circle, right arrow, left arrow).  The module provides the stone
monodromies, validity (identity monodromy), canonical forms under rotation
and under rotation-plus-mirror, duality, the Betti-number bookkeeping of
the real part, and the text encoding used everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .psl2 import (
    Decoration,
    ProjMat,
    PROJ_ARROW_L,
    PROJ_ARROW_R,
    PROJ_CIRCLE,
    PROJ_SQUARE,
)


class ParseError(ValueError):
    """Bad diagram text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at index {position})")
        self.position = position


class LengthMismatchError(ValueError):
    """Diagram length is not the 6n expected by the operation."""


class Stone(Enum):
    SQUARE = "S"
    CIRCLE = "C"
    ARROW_R = "R"
    ARROW_L = "L"

    @property
    def letter(self) -> str:
        return self.value


_STONE_BY_LETTER = {s.value: s for s in Stone}

_MONODROMY = {
    Stone.SQUARE: PROJ_SQUARE,
    Stone.CIRCLE: PROJ_CIRCLE,
    Stone.ARROW_R: PROJ_ARROW_R,
    Stone.ARROW_L: PROJ_ARROW_L,
}

# each stone is the ordered pair of its two critical-value decorations;
# the stone monodromy is the conjugate of the product of the two halves
STONE_DECORATIONS = {
    Stone.SQUARE: (Decoration.X_LEFT, Decoration.X_RIGHT),
    Stone.CIRCLE: (Decoration.O_LEFT, Decoration.O_RIGHT),
    Stone.ARROW_R: (Decoration.X_LEFT, Decoration.O_RIGHT),
    Stone.ARROW_L: (Decoration.O_LEFT, Decoration.X_RIGHT),
}

_DUAL = {Stone.SQUARE: Stone.CIRCLE, Stone.CIRCLE: Stone.SQUARE,
         Stone.ARROW_R: Stone.ARROW_L, Stone.ARROW_L: Stone.ARROW_R}

# collation for canonical forms: C < L < R < S (alphabetical, fixed)
COLLATION = "CLRS"
_COLLATE = str.maketrans(COLLATION, "0123")
_UNCOLLATE = str.maketrans("0123", COLLATION)
_MIRROR_TRANS = str.maketrans("RL", "LR")
_DUAL_TRANS = str.maketrans("SCRL", "CSLR")


def stone_monodromy(stone: Stone) -> ProjMat:
    """Monodromy matrix of a single stone."""
    return _MONODROMY[stone]


def word_monodromy(stones: Iterable[Stone]) -> ProjMat:
    """Left-to-right product of stone monodromies; empty input gives the identity."""
    m = ProjMat.identity()
    for s in stones:
        m = m * _MONODROMY[s]
    return m


class CanonicalMode(Enum):
    ORIENTED = "oriented"   # least rotation
    SYMMETRY = "symmetry"   # least over rotations of the word and its mirror


def mirror_word(word: str) -> str:
    """Reverse the cyclic order and swap the two arrow types."""
    return word[::-1].translate(_MIRROR_TRANS)


def dual_word(word: str) -> str:
    """Swap square with circle and right arrow with left arrow, stone-wise."""
    return word.translate(_DUAL_TRANS)


def _least_rotation(word: str) -> str:
    doubled = word + word
    n = len(word)
    return min(doubled[i:i + n] for i in range(n))


def canonical_word(word: str, mode: CanonicalMode = CanonicalMode.SYMMETRY) -> str:
    """Canonical representative of a cyclic word under the given mode.

    Words are compared rotation by rotation in the C < L < R < S collation;
    in SYMMETRY mode the rotations of the mirrored word compete as well.
    """
    t = word.translate(_COLLATE)
    best = _least_rotation(t)
    if mode is CanonicalMode.SYMMETRY:
        tm = _least_rotation(mirror_word(word).translate(_COLLATE))
        if tm < best:
            best = tm
    return best.translate(_UNCOLLATE)


@dataclass(frozen=True)
class StoneCounts:
    circles: int
    squares: int
    arrows_r: int
    arrows_l: int

    @property
    def arrows(self) -> int:
        return self.arrows_r + self.arrows_l

    @property
    def profile(self) -> tuple[int, int]:
        return (self.circles, self.squares)

    @property
    def total(self) -> int:
        return self.circles + self.squares + self.arrows_r + self.arrows_l


@dataclass(frozen=True)
class TopInvariants:
    """Betti numbers of the real part read off a diagram.

    b0 = b2 = circles + 1, b1 = 2 (squares + 1); euler and total_betti
    follow.  The formulas are stated for valid diagrams of fibrations with
    a real section; the arithmetic is defined for any diagram.
    """

    b0: int
    b1: int
    b2: int
    euler: int
    total_betti: int

    @staticmethod
    def from_counts(counts: StoneCounts) -> "TopInvariants":
        b0 = counts.circles + 1
        b1 = 2 * (counts.squares + 1)
        return TopInvariants(
            b0=b0,
            b1=b1,
            b2=b0,
            euler=2 * (counts.circles - counts.squares),
            total_betti=2 * (counts.circles + counts.squares) + 4,
        )


@dataclass(frozen=True)
class NecklaceDiagram:
    """Non-empty cyclic word of stones.

    ``oriented`` records whether the diagram is meant with oriented
    semantics; it only selects the default canonicalization mode and does
    not take part in equality.
    """

    stones: tuple[Stone, ...]
    oriented: bool = True

    def __post_init__(self) -> None:
        if not self.stones:
            raise ValueError("a necklace diagram has at least one stone")
        object.__setattr__(self, "stones", tuple(self.stones))

    @staticmethod
    def from_word(word: str, oriented: bool = True) -> "NecklaceDiagram":
        return NecklaceDiagram(decode(word), oriented)

    def __len__(self) -> int:
        return len(self.stones)

    def __iter__(self) -> Iterator[Stone]:
        return iter(self.stones)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NecklaceDiagram):
            return NotImplemented
        return self.stones == other.stones

    def __hash__(self) -> int:
        return hash(self.stones)

    @property
    def word(self) -> str:
        return encode(self.stones)

    def rotated(self, offset: int) -> "NecklaceDiagram":
        k = offset % len(self.stones)
        return NecklaceDiagram(self.stones[k:] + self.stones[:k], self.oriented)

    def monodromy(self) -> ProjMat:
        return word_monodromy(self.stones)

    def is_valid(self) -> bool:
        """True iff the monodromy is the identity in PSL(2,Z)."""
        return self.monodromy().is_identity()

    def counts(self) -> StoneCounts:
        w = self.word
        return StoneCounts(
            circles=w.count("C"),
            squares=w.count("S"),
            arrows_r=w.count("R"),
            arrows_l=w.count("L"),
        )

    def invariants(self) -> TopInvariants:
        return TopInvariants.from_counts(self.counts())

    def is_maximal(self, n: int) -> bool:
        """True iff circles + squares == 6n - 2; the length must be 6n."""
        if len(self.stones) != 6 * n:
            raise LengthMismatchError(
                f"diagram has {len(self.stones)} stones, expected {6 * n}"
            )
        c = self.counts()
        return c.circles + c.squares == 6 * n - 2

    def dual(self) -> "NecklaceDiagram":
        return NecklaceDiagram(tuple(_DUAL[s] for s in self.stones), self.oriented)

    def mirror(self) -> "NecklaceDiagram":
        return NecklaceDiagram.from_word(mirror_word(self.word), self.oriented)

    def canonical(self, mode: CanonicalMode | None = None) -> str:
        if mode is None:
            mode = CanonicalMode.ORIENTED if self.oriented else CanonicalMode.SYMMETRY
        return canonical_word(self.word, mode)

    def __str__(self) -> str:
        return self.word


def encode(stones: Iterable[Stone]) -> str:
    """Letter encoding of a stone sequence (S, C, R, L)."""
    return "".join(s.letter for s in stones)


def decode(word: str) -> tuple[Stone, ...]:
    """Parse a letter word, case-insensitively.  Raises ParseError."""
    if not word:
        raise ParseError("empty diagram word", 0)
    out = []
    for i, ch in enumerate(word):
        stone = _STONE_BY_LETTER.get(ch.upper())
        if stone is None:
            raise ParseError(f"invalid stone letter {ch!r}", i)
        out.append(stone)
    return tuple(out)
