"""Structured per-diagram records for the CLI output formats."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .diagrams import CanonicalMode, NecklaceDiagram, canonical_word, dual_word
from .screen import DEFAULT_CLASSIFIER, SegmentClassifier, algebraicity_obstructed

CSV_HEADER = (
    "word,length,circles,squares,arrows,b0,b1,b2,euler,total_betti,maximal,dual_word,screen"
)


@dataclass(frozen=True)
class DiagramRecord:
    """Derived facts about one diagram; every field recomputes from the word."""

    word: str
    length: int
    circles: int
    squares: int
    arrows: int
    b0: int
    b1: int
    b2: int
    euler: int
    total_betti: int
    maximal: Optional[bool]
    dual_word: str
    screen: Optional[str]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def to_csv_row(self) -> str:
        def cell(v) -> str:
            if v is None:
                return ""
            if isinstance(v, bool):
                return str(v).lower()
            return str(v)

        d = asdict(self)
        return ",".join(cell(d[k]) for k in CSV_HEADER.split(","))


def build_record(
    word: str,
    mode: CanonicalMode = CanonicalMode.SYMMETRY,
    classifier: SegmentClassifier = DEFAULT_CLASSIFIER,
) -> DiagramRecord:
    """Record for the canonical form of ``word`` in the given mode.

    ``maximal`` and ``screen`` are populated only when the length is a
    multiple of 6 (they are E(n) notions).
    """
    canon = canonical_word(NecklaceDiagram.from_word(word).word, mode)
    diagram = NecklaceDiagram.from_word(canon)
    counts = diagram.counts()
    inv = diagram.invariants()
    maximal: Optional[bool] = None
    verdict: Optional[str] = None
    if len(canon) % 6 == 0:
        n = len(canon) // 6
        maximal = diagram.is_maximal(n)
        verdict = algebraicity_obstructed(diagram, n, classifier).value
    return DiagramRecord(
        word=canon,
        length=len(canon),
        circles=counts.circles,
        squares=counts.squares,
        arrows=counts.arrows,
        b0=inv.b0,
        b1=inv.b1,
        b2=inv.b2,
        euler=inv.euler,
        total_betti=inv.total_betti,
        maximal=maximal,
        dual_word=canonical_word(dual_word(canon), mode),
        screen=verdict,
    )
