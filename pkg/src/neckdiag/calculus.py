"""The necklace calculus: sums, flip-flops, metamorphoses, decompositions.

Mild sums concatenate two diagrams cut on the chain; harsh sums cut both
diagrams through a stone and cross-splice the half-decorations.  Rewrite
rules replace a short segment by another segment with the same monodromy:
profile-preserving rules are flip-flops, the rules dropping one circle or
one square are the two metamorphoses.  The shipped catalog is derived
exhaustively from monodromy equality rather than transcribed.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .diagrams import (
    COLLATION,
    CanonicalMode,
    NecklaceDiagram,
    Stone,
    STONE_DECORATIONS,
    canonical_word,
    decode,
    dual_word,
    encode,
    mirror_word,
    word_monodromy,
)
from .psl2 import DyadicMat, decoration_matrix


class NoMatchError(ValueError):
    """Rewrite left side does not occur at the requested position."""


class TableMissError(KeyError):
    """Harsh table has no entry for the stone pair."""


_COLLATE = str.maketrans(COLLATION, "0123")


def _collate(word: str) -> str:
    return word.translate(_COLLATE)


class RuleTag(Enum):
    FLIPFLOP = "flipflop"
    M1 = "m1"
    M2 = "m2"
    M1_INV = "m1_inv"
    M2_INV = "m2_inv"
    CUSTOM = "custom"


_INVERSE_TAG = {
    RuleTag.FLIPFLOP: RuleTag.FLIPFLOP,
    RuleTag.M1: RuleTag.M1_INV,
    RuleTag.M1_INV: RuleTag.M1,
    RuleTag.M2: RuleTag.M2_INV,
    RuleTag.M2_INV: RuleTag.M2,
    RuleTag.CUSTOM: RuleTag.CUSTOM,
}

_DUAL_TAG = {
    RuleTag.FLIPFLOP: RuleTag.FLIPFLOP,
    RuleTag.M1: RuleTag.M2,
    RuleTag.M2: RuleTag.M1,
    RuleTag.M1_INV: RuleTag.M2_INV,
    RuleTag.M2_INV: RuleTag.M1_INV,
    RuleTag.CUSTOM: RuleTag.CUSTOM,
}


def _classify(delta_circles: int, delta_squares: int) -> RuleTag:
    return {
        (0, 0): RuleTag.FLIPFLOP,
        (-1, 0): RuleTag.M1,
        (0, -1): RuleTag.M2,
        (1, 0): RuleTag.M1_INV,
        (0, 1): RuleTag.M2_INV,
    }.get((delta_circles, delta_squares), RuleTag.CUSTOM)


@dataclass(frozen=True)
class RewriteRule:
    """Segment pair with equal monodromy, with its stone-count deltas.

    Monodromy equality is checked at construction, so applying any rule
    preserves diagram validity by construction.
    """

    lhs: str
    rhs: str
    tag: RuleTag

    def __init__(self, lhs: str, rhs: str, tag: Optional[RuleTag] = None):
        lhs_stones, rhs_stones = decode(lhs), decode(rhs)
        lhs, rhs = encode(lhs_stones), encode(rhs_stones)
        if lhs == rhs:
            raise ValueError("rewrite sides must differ")
        if word_monodromy(lhs_stones) != word_monodromy(rhs_stones):
            raise ValueError(f"{lhs} and {rhs} have different monodromy")
        if tag is None:
            tag = _classify(rhs.count("C") - lhs.count("C"), rhs.count("S") - lhs.count("S"))
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "tag", tag)

    @property
    def delta_circles(self) -> int:
        return self.rhs.count("C") - self.lhs.count("C")

    @property
    def delta_squares(self) -> int:
        return self.rhs.count("S") - self.lhs.count("S")

    def inverse(self) -> "RewriteRule":
        return RewriteRule(self.rhs, self.lhs, _INVERSE_TAG[self.tag])

    def dual(self) -> "RewriteRule":
        return RewriteRule(dual_word(self.lhs), dual_word(self.rhs), _DUAL_TAG[self.tag])

    def __str__(self) -> str:
        arrow = "<->" if self.tag is RuleTag.FLIPFLOP else "->"
        return f"{self.lhs} {arrow} {self.rhs} {self.tag.value}"


def derive_rewrite_catalog(max_segment_len: int = 2) -> list[RewriteRule]:
    """All ordered pairs of distinct segments (lengths 1..bound) with equal monodromy.

    For bounds up to 3 every pair turns out to be length preserving, so the
    catalog splits cleanly into flip-flops, metamorphoses and their
    inverses (plus CUSTOM leftovers at bound 3).
    """
    if not 1 <= max_segment_len <= 3:
        raise ValueError("segment length bound must be between 1 and 3")
    by_product: dict = {}
    for n in range(1, max_segment_len + 1):
        for seg in itertools.product("SCRL", repeat=n):
            word = "".join(seg)
            by_product.setdefault(word_monodromy(decode(word)), []).append(word)
    rules = []
    for words in by_product.values():
        for lhs, rhs in itertools.permutations(words, 2):
            rules.append(RewriteRule(lhs, rhs))
    rules.sort(key=lambda r: (len(r.lhs), _collate(r.lhs), _collate(r.rhs)))
    return rules


@lru_cache(maxsize=2)
def default_catalog() -> tuple[RewriteRule, ...]:
    """The length-2 catalog used by the CLI: 4 flip-flops, m1, m2, inverses."""
    return tuple(derive_rewrite_catalog(2))


def rule_positions(diagram: NecklaceDiagram, rule: RewriteRule) -> list[int]:
    """Cyclic positions at which the rule's left side matches."""
    w = diagram.word
    n = len(w)
    doubled = w + w
    return [i for i in range(n) if doubled[i:i + len(rule.lhs)] == rule.lhs]


def apply_rewrite(diagram: NecklaceDiagram, rule: RewriteRule, position: int) -> NecklaceDiagram:
    """Replace the segment at a cyclic position; raises NoMatchError."""
    w = diagram.word
    n = len(w)
    k = len(rule.lhs)
    if k > n:
        raise NoMatchError(f"segment {rule.lhs} longer than the diagram")
    position %= n
    if (w + w)[position:position + k] != rule.lhs:
        raise NoMatchError(f"{rule.lhs} does not occur at position {position} of {w}")
    out = list(w)
    for j, ch in enumerate(rule.rhs):
        out[(position + j) % n] = ch
    return NecklaceDiagram.from_word("".join(out), diagram.oriented)


# ---------------------------------------------------------------------------
# sums

def mild_sum(
    d1: NecklaceDiagram, cut1: int, d2: NecklaceDiagram, cut2: int
) -> NecklaceDiagram:
    """Cut both diagrams on the chain and reglue crosswise.

    ``cut`` = i cuts the chain just before stone i; the result is the two
    linear words concatenated, of length len(d1) + len(d2), with all four
    stone counts (hence the Euler characteristic) adding up.
    """
    w1, w2 = d1.word, d2.word
    i, j = cut1 % len(w1), cut2 % len(w2)
    return NecklaceDiagram.from_word(w1[i:] + w1[:i] + w2[j:] + w2[:j], d1.oriented)


_STONE_BY_HALVES = {halves: stone for stone, halves in STONE_DECORATIONS.items()}


def _splice(s1: Stone, s2: Stone) -> tuple[Stone, Stone]:
    l1, r1 = STONE_DECORATIONS[s1]
    l2, r2 = STONE_DECORATIONS[s2]
    return _STONE_BY_HALVES[(l1, r2)], _STONE_BY_HALVES[(l2, r1)]


def _stone_dyadic(s: Stone) -> DyadicMat:
    left, right = STONE_DECORATIONS[s]
    return decoration_matrix(left) * decoration_matrix(right)


@dataclass(frozen=True)
class HarshTable:
    """Cut-at-a-stone regluing table: (stone1, stone2) -> junction stones.

    Every entry is checked at construction to preserve identity monodromy
    of the glued diagram (in the half-stone algebra); entries may be
    partial, missing pairs raise TableMissError on use.
    """

    entries: Mapping[tuple[Stone, Stone], tuple[Stone, Stone]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(self.entries))
        bad = []
        for (s1, s2), (j1, j2) in self.entries.items():
            # need P(j1) (P(s2))^-1 P(j2) (P(s1))^-1 == +-identity
            check = (
                _stone_dyadic(j1)
                * _stone_dyadic(s2).inverse()
                * _stone_dyadic(j2)
                * _stone_dyadic(s1).inverse()
            )
            if check != DyadicMat.identity():
                bad.append((s1.letter, s2.letter))
        if bad:
            raise ValueError(f"harsh entries break identity monodromy: {bad}")

    def junction(self, s1: Stone, s2: Stone) -> tuple[Stone, Stone]:
        try:
            return self.entries[(s1, s2)]
        except KeyError:
            raise TableMissError(f"no harsh entry for ({s1.letter}, {s2.letter})") from None


@lru_cache(maxsize=2)
def default_harsh_table() -> HarshTable:
    """The half-decoration cross-splice on all 16 stone pairs."""
    return HarshTable({
        (s1, s2): _splice(s1, s2)
        for s1 in Stone for s2 in Stone
    })


def harsh_sum(
    d1: NecklaceDiagram,
    stone_index1: int,
    d2: NecklaceDiagram,
    stone_index2: int,
    table: Optional[HarshTable] = None,
) -> NecklaceDiagram:
    """Cut both diagrams through the addressed stones and cross-splice.

    The two stones (l1,r1) and (l2,r2), viewed as ordered pairs of
    half-decorations, are replaced by the junction stones (l1,r2) and
    (l2,r1); the length of the result is len(d1) + len(d2).
    """
    if table is None:
        table = default_harsh_table()
    w1, w2 = d1.word, d2.word
    i, j = stone_index1 % len(w1), stone_index2 % len(w2)
    s1 = decode(w1[i])[0]
    s2 = decode(w2[j])[0]
    j1, j2 = table.junction(s1, s2)
    word = j1.letter + w2[j + 1:] + w2[:j] + j2.letter + w1[i + 1:] + w1[:i]
    return NecklaceDiagram.from_word(word, d1.oriented)


# ---------------------------------------------------------------------------
# reachability and decomposition

@dataclass(frozen=True)
class ReachResult:
    classes: frozenset[str]
    exhausted: bool          # True when the closure completed within budget
    nodes_expanded: int
    depth_reached: int


def reachable(
    seeds: NecklaceDiagram | str | Iterable[NecklaceDiagram | str],
    catalog: Optional[Sequence[RewriteRule]] = None,
    mode: CanonicalMode = CanonicalMode.SYMMETRY,
    max_nodes: int = 10 ** 6,
    max_depth: int = 64,
    include_sums: bool = False,
) -> ReachResult:
    """BFS closure of the seeds under the catalog (and optionally sums).

    Rewrites are tried at every position of every rotation of each class
    representative (and of its mirror in SYMMETRY mode), so the closure is
    a closure of classes.  With ``include_sums`` the mild and harsh sums of
    visited pairs join the frontier as well, which only terminates by
    budget.  The result carries an exhaustion flag instead of failing.
    """
    if catalog is None:
        catalog = default_catalog()
    if isinstance(seeds, (NecklaceDiagram, str)):
        seeds = [seeds]
    words = [s.word if isinstance(s, NecklaceDiagram) else s for s in seeds]
    seen: set[str] = {canonical_word(w, mode) for w in words}
    queue = deque((w, 0) for w in sorted(seen, key=_collate))
    expanded = 0
    depth_reached = 0
    exhausted = True

    def representatives(word: str) -> list[str]:
        reps = [word[i:] + word[:i] for i in range(len(word))]
        if mode is CanonicalMode.SYMMETRY:
            m = mirror_word(word)
            reps += [m[i:] + m[:i] for i in range(len(m))]
        return reps

    while queue:
        word, depth = queue.popleft()
        if depth >= max_depth:
            exhausted = False
            continue
        if expanded >= max_nodes:
            exhausted = False
            break
        expanded += 1
        depth_reached = max(depth_reached, depth)
        neighbours: set[str] = set()
        for rep in representatives(word):
            doubled = rep + rep
            n = len(rep)
            for rule in catalog:
                k = len(rule.lhs)
                if k > n:
                    continue
                for i in range(n):
                    if doubled[i:i + k] == rule.lhs:
                        out = list(rep)
                        for jj, ch in enumerate(rule.rhs):
                            out[(i + jj) % n] = ch
                        neighbours.add(canonical_word("".join(out), mode))
        if include_sums:
            diagram = NecklaceDiagram.from_word(word)
            for other in sorted(seen, key=_collate):
                od = NecklaceDiagram.from_word(other)
                for i in range(len(word)):
                    for j in range(len(other)):
                        neighbours.add(mild_sum(diagram, i, od, j).canonical(mode))
                        neighbours.add(harsh_sum(diagram, i, od, j).canonical(mode))
        for nb in sorted(neighbours, key=_collate):
            if nb not in seen:
                seen.add(nb)
                queue.append((nb, depth + 1))
    return ReachResult(frozenset(seen), exhausted, expanded, depth_reached)


@dataclass(frozen=True)
class Decomposition:
    kind: str                     # "mild" or "harsh"
    left: str
    right: str
    positions: tuple[int, ...]


def decompose(diagram: NecklaceDiagram, table: Optional[HarshTable] = None) -> list[Decomposition]:
    """All ways to write a 12-stone diagram as a sum of two valid 6-stone ones.

    Mild splits cut the chain at two opposite points; harsh splits undo the
    cross-splice at every ordered pair of stone positions.  An empty result
    certifies non-decomposability under both sum kinds.
    """
    from .diagrams import LengthMismatchError

    w = diagram.word
    if len(w) != 12:
        raise LengthMismatchError(f"decompose needs 12 stones, got {len(w)}")
    if table is None:
        table = default_harsh_table()
    results = []

    def is_valid(word: str) -> bool:
        return word_monodromy(decode(word)).is_identity()

    for r in range(12):
        rotated = w[r:] + w[:r]
        left, right = rotated[:6], rotated[6:]
        if is_valid(left) and is_valid(right):
            results.append(Decomposition("mild", left, right, (r,)))
    reverse = {pair: key for key, pair in table.entries.items()}
    for p in range(12):
        for q in range(12):
            if p == q:
                continue
            original = reverse.get((decode(w[p])[0], decode(w[q])[0]))
            if original is None:
                continue
            s1, s2 = original
            if q > p:
                t_part = w[p + 1:q]
                s_part = w[q + 1:] + w[:p]
            else:
                t_part = w[p + 1:] + w[:q]
                s_part = w[q + 1:p]
            left = s1.letter + s_part
            right = s2.letter + t_part
            if len(left) == 6 and is_valid(left) and is_valid(right):
                results.append(Decomposition("harsh", left, right, (p, q)))
    results.sort(key=lambda d: (d.kind, _collate(canonical_word(d.left)),
                                _collate(canonical_word(d.right)), d.positions))
    return results


# ---------------------------------------------------------------------------
# catalog and table text formats

def catalog_to_text(rules: Iterable[RewriteRule]) -> str:
    return "".join(f"{r}\n" for r in rules)


def parse_catalog(text: str) -> list[RewriteRule]:
    """Parse 'LHS -> RHS [tag]' / 'LHS <-> RHS [tag]' lines (# comments)."""
    rules = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4) or parts[1] not in ("->", "<->"):
            raise ValueError(f"line {ln}: expected 'LHS -> RHS [tag]', got {raw!r}")
        tag = RuleTag(parts[3]) if len(parts) == 4 else None
        rules.append(RewriteRule(parts[0], parts[2], tag))
        if parts[1] == "<->":
            rules.append(RewriteRule(parts[2], parts[0], tag))
    return rules


def harsh_table_to_text(table: HarshTable) -> str:
    lines = []
    for (s1, s2), (j1, j2) in sorted(
        table.entries.items(), key=lambda kv: (kv[0][0].letter, kv[0][1].letter)
    ):
        lines.append(f"{s1.letter}{s2.letter} -> {j1.letter}{j2.letter}\n")
    return "".join(lines)


def parse_harsh_table(text: str) -> HarshTable:
    """Parse 'XY -> JK' lines into a (verified) harsh table."""
    entries = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[1] != "->" or len(parts[0]) != 2 or len(parts[2]) != 2:
            raise ValueError(f"line {ln}: expected 'XY -> JK', got {raw!r}")
        (s1, s2), (j1, j2) = decode(parts[0]), decode(parts[2])
        entries[(s1, s2)] = (j1, j2)
    return HarshTable(entries)
