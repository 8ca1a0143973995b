"""Enumeration of identity-monodromy words and their equivalence classes.

Three engines count raw words (cyclic starting point fixed, no quotient):

* ``brute_force_count`` walks the full 4^n tree with prefix products;
* ``transfer_count`` folds the tree level by level, merging equal
  products, which prunes the search down to the set of reachable group
  elements;
* ``mitm_count`` joins two half-word product tables on inverse keys.

They must agree, and the class-level results are engine independent; the
test suite cross-validates them.  Class enumeration lists raw words via
the meet-in-the-middle join and deduplicates canonical forms.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from multiprocessing import Pool
from typing import Iterator, Mapping, Optional, Sequence

from .diagrams import COLLATION, CanonicalMode, Stone, canonical_word, stone_monodromy

DEFAULT_MAX_LENGTH = 24

LETTERS = "SCRL"

_IDENTITY = (1, 0, 0, 1)

# stone letter -> entry tuple of its monodromy, for the raw-word fast path
_MATS = {
    s.letter: stone_monodromy(s).entries() for s in Stone
}
_GEN = [(letter, _MATS[letter]) for letter in LETTERS]


class ResourceLimitError(RuntimeError):
    """Requested length exceeds the configured enumeration maximum."""


def _mul_sign(m, g):
    a, b, c, d = m
    e, f, g2, h = g
    na, nb = a * e + b * g2, a * f + b * h
    nc, nd = c * e + d * g2, c * f + d * h
    if na < 0 or (na == 0 and nb < 0):
        return -na, -nb, -nc, -nd
    return na, nb, nc, nd


def _inv(m):
    a, b, c, d = m
    if d < 0 or (d == 0 and b > 0):
        return -d, b, c, -a
    return d, -b, -c, a


def _check_length(length: int, max_length: int) -> None:
    if length < 0 or length % 2:
        raise ValueError(f"length must be a non-negative even integer, got {length}")
    if length > max_length:
        raise ResourceLimitError(f"length {length} exceeds the limit {max_length}")


def brute_force_count(length: int, max_length: int = DEFAULT_MAX_LENGTH) -> int:
    """Raw identity-word count by exhaustive DFS over all 4^length words."""
    _check_length(length, max_length)
    total = 0
    stack = [(_IDENTITY, length)]
    mats = [m for _, m in _GEN]
    while stack:
        m, remaining = stack.pop()
        if remaining == 0:
            total += m == _IDENTITY
            continue
        for g in mats:
            stack.append((_mul_sign(m, g), remaining - 1))
    return total


def transfer_count(length: int, max_length: int = DEFAULT_MAX_LENGTH) -> int:
    """Raw identity-word count by level-wise folding of equal products."""
    _check_length(length, max_length)
    level: dict = {_IDENTITY: 1}
    mats = [m for _, m in _GEN]
    for _ in range(length):
        nxt: dict = defaultdict(int)
        for m, n in level.items():
            for g in mats:
                nxt[_mul_sign(m, g)] += n
        level = dict(nxt)
    return level.get(_IDENTITY, 0)


@dataclass
class HalfProductTable:
    """Words of a fixed length grouped by their monodromy product."""

    length: int
    table: Mapping[tuple, Sequence[str]] = field(repr=False)

    @staticmethod
    def build(length: int) -> "HalfProductTable":
        table: dict = defaultdict(list)
        stack = [("", _IDENTITY)]
        while stack:
            w, m = stack.pop()
            if len(w) == length:
                table[m].append(w)
                continue
            for letter, g in _GEN:
                stack.append((w + letter, _mul_sign(m, g)))
        return HalfProductTable(length, {k: sorted(v) for k, v in table.items()})

    def __len__(self) -> int:
        return sum(len(v) for v in self.table.values())


@lru_cache(maxsize=4)
def _half_table(length: int) -> HalfProductTable:
    return HalfProductTable.build(length)


def mitm_count(length: int, max_length: int = DEFAULT_MAX_LENGTH) -> int:
    """Raw identity-word count by the meet-in-the-middle join."""
    _check_length(length, max_length)
    if length == 0:
        return 1
    half = _half_table(length // 2)
    total = 0
    for key, lefts in half.table.items():
        rights = half.table.get(_inv(key))
        if rights:
            total += len(lefts) * len(rights)
    return total


def iter_valid_words(length: int, max_length: int = DEFAULT_MAX_LENGTH) -> Iterator[str]:
    """All raw identity-monodromy words of the given length (MITM join)."""
    _check_length(length, max_length)
    if length == 0:
        yield ""
        return
    half = _half_table(length // 2)
    for key in sorted(half.table):
        rights = half.table.get(_inv(key))
        if not rights:
            continue
        for left in half.table[key]:
            for right in rights:
                yield left + right


def _canon_chunk(args) -> set:
    words, mode_value = args
    mode = CanonicalMode(mode_value)
    return {canonical_word(w, mode) for w in words}


_PARALLEL_THRESHOLD = 50_000


def _canonical_set(words: list[str], mode: CanonicalMode, workers: int) -> set[str]:
    if workers > 1 and len(words) > _PARALLEL_THRESHOLD:
        chunk = (len(words) + workers - 1) // workers
        parts = [(words[i:i + chunk], mode.value) for i in range(0, len(words), chunk)]
        with Pool(workers) as pool:
            sets = pool.map(_canon_chunk, parts)
        out: set[str] = set()
        for s in sets:
            out |= s
        return out
    return {canonical_word(w, mode) for w in words}


@dataclass(frozen=True)
class EnumQuery:
    """An enumeration request: length, quotient mode and optional filter."""

    length: int
    mode: CanonicalMode = CanonicalMode.SYMMETRY
    maximal: bool = False
    profile: Optional[tuple[int, int]] = None
    max_length: int = DEFAULT_MAX_LENGTH


def _profile(word: str) -> tuple[int, int]:
    return (word.count("C"), word.count("S"))


def enumerate_classes(
    length: int,
    mode: CanonicalMode = CanonicalMode.SYMMETRY,
    maximal: bool = False,
    profile: Optional[tuple[int, int]] = None,
    max_length: int = DEFAULT_MAX_LENGTH,
    workers: int = 1,
) -> list[str]:
    """Sorted canonical representatives of valid diagrams of a given length.

    ``maximal`` keeps classes with circles + squares == length - 2 (the
    length must then be a multiple of 6); ``profile`` keeps one
    (circles, squares) cell.  Sorting is lexicographic in the C < L < R < S
    collation, so output order is deterministic.
    """
    if maximal and length % 6:
        raise ValueError("maximal filter needs a length divisible by 6")
    words = list(iter_valid_words(length, max_length))
    if maximal:
        words = [w for w in words if w.count("C") + w.count("S") == length - 2]
    if profile is not None:
        words = [w for w in words if _profile(w) == tuple(profile)]
    classes = _canonical_set(words, mode, workers)
    collate = str.maketrans(COLLATION, "0123")
    return sorted(classes, key=lambda w: w.translate(collate))


def run_query(query: EnumQuery, workers: int = 1) -> list[str]:
    return enumerate_classes(
        query.length,
        query.mode,
        maximal=query.maximal,
        profile=query.profile,
        max_length=query.max_length,
        workers=workers,
    )


def count_by_profile(
    length: int,
    mode: CanonicalMode = CanonicalMode.SYMMETRY,
    max_length: int = DEFAULT_MAX_LENGTH,
    workers: int = 1,
) -> dict[tuple[int, int], int]:
    """Class counts keyed by (circles, squares); values sum to the total."""
    classes = enumerate_classes(length, mode, max_length=max_length, workers=workers)
    out: dict[tuple[int, int], int] = defaultdict(int)
    for w in classes:
        out[_profile(w)] += 1
    return dict(sorted(out.items()))


@lru_cache(maxsize=8)
def valid_classes_cached(length: int, mode: CanonicalMode) -> tuple[str, ...]:
    """Memoized enumerate_classes for the small lengths used internally."""
    return tuple(enumerate_classes(length, mode))
