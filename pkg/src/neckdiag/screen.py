"""Algebraicity screening of necklace diagrams.

The obstruction is a pair of necessary conditions: a diagram of length 6n
coming from an algebraic fibration has at most 2n essential chain segments,
and essential segments plus arrow stones cannot exceed 6n.  Which segments
count as essential is decided by a 16-entry classifier table over ordered
stone pairs; the published table is only available as a picture, so the
shipped default is a conjectured reconstruction (segments flanked by two
oppositely directed arrows) chosen to be mirror and dual invariant and
consistent with the known outcomes: the all-arrow diagram fails, all
maximal diagrams pass.  Any other table can be loaded from a text file.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .diagrams import LengthMismatchError, NecklaceDiagram, Stone, decode

_ALL_PAIRS = [(s1, s2) for s1 in Stone for s2 in Stone]


class ScreenVerdict(Enum):
    PASS = "PASS"
    FAIL_ESSENTIAL = "FAIL_ESSENTIAL"  # more than 2n essential segments
    FAIL_SUM = "FAIL_SUM"              # essential + arrows exceed 6n


@dataclass(frozen=True)
class SegmentClassifier:
    """Total map from ordered stone pairs to essential / non-essential."""

    table: Mapping[tuple[Stone, Stone], bool]

    def __post_init__(self) -> None:
        table = dict(self.table)
        missing = [p for p in _ALL_PAIRS if p not in table]
        if missing:
            pairs = ", ".join(a.letter + b.letter for a, b in missing)
            raise ValueError(f"classifier table is missing pairs: {pairs}")
        object.__setattr__(self, "table", table)

    @staticmethod
    def from_essential_pairs(pairs: set[str]) -> "SegmentClassifier":
        """Build from a set of two-letter pair strings marked essential."""
        decoded = {tuple(decode(p)) for p in pairs}
        return SegmentClassifier({p: p in decoded for p in _ALL_PAIRS})

    @staticmethod
    def none_essential() -> "SegmentClassifier":
        return SegmentClassifier({p: False for p in _ALL_PAIRS})

    @staticmethod
    def all_essential() -> "SegmentClassifier":
        return SegmentClassifier({p: True for p in _ALL_PAIRS})

    def is_essential(self, left: Stone, right: Stone) -> bool:
        return self.table[(left, right)]

    @property
    def essential_pairs(self) -> list[str]:
        return sorted(a.letter + b.letter for (a, b), e in self.table.items() if e)

    def is_mirror_invariant(self) -> bool:
        mirror = {Stone.ARROW_R: Stone.ARROW_L, Stone.ARROW_L: Stone.ARROW_R,
                  Stone.SQUARE: Stone.SQUARE, Stone.CIRCLE: Stone.CIRCLE}
        return all(
            self.table[(a, b)] == self.table[(mirror[b], mirror[a])]
            for a, b in _ALL_PAIRS
        )

    def is_dual_invariant(self) -> bool:
        dual = {Stone.ARROW_R: Stone.ARROW_L, Stone.ARROW_L: Stone.ARROW_R,
                Stone.SQUARE: Stone.CIRCLE, Stone.CIRCLE: Stone.SQUARE}
        return all(
            self.table[(a, b)] == self.table[(dual[a], dual[b])]
            for a, b in _ALL_PAIRS
        )

    def to_text(self) -> str:
        return "".join(
            f"{a.letter}{b.letter} -> {'E' if self.table[(a, b)] else 'N'}\n"
            for a, b in _ALL_PAIRS
        )

    @staticmethod
    def from_text(text: str) -> "SegmentClassifier":
        """Parse 16 lines of the form 'XY -> E' / 'XY -> N' (# comments)."""
        table = {}
        for ln, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace("->", " ").split()
            if len(parts) != 2 or len(parts[0]) != 2 or parts[1].upper() not in ("E", "N"):
                raise ValueError(f"line {ln}: expected 'XY -> E|N', got {raw!r}")
            pair = tuple(decode(parts[0]))
            table[pair] = parts[1].upper() == "E"
        return SegmentClassifier(table)


#: Conjectured default: a chain segment is essential exactly when it is
#: flanked by two arrow stones of opposite directions.
DEFAULT_CLASSIFIER = SegmentClassifier.from_essential_pairs({"RL", "LR"})


def essential_count(diagram: NecklaceDiagram, classifier: SegmentClassifier = DEFAULT_CLASSIFIER) -> int:
    """Number of essential chain segments (one per adjacent stone pair)."""
    stones = diagram.stones
    n = len(stones)
    return sum(
        classifier.is_essential(stones[i], stones[(i + 1) % n]) for i in range(n)
    )


def algebraicity_obstructed(
    diagram: NecklaceDiagram,
    n: int,
    classifier: SegmentClassifier = DEFAULT_CLASSIFIER,
) -> ScreenVerdict:
    """Necessary-condition screen for algebraic realizability of an E(n) diagram.

    PASS is not a certificate: it only means neither inequality rejects the
    diagram under the given classifier.
    """
    if len(diagram) != 6 * n:
        raise LengthMismatchError(f"diagram has {len(diagram)} stones, expected {6 * n}")
    essentials = essential_count(diagram, classifier)
    arrows = diagram.counts().arrows
    if essentials > 2 * n:
        return ScreenVerdict.FAIL_ESSENTIAL
    if essentials + arrows > 6 * n:
        return ScreenVerdict.FAIL_SUM
    return ScreenVerdict.PASS
