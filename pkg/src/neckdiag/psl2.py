"""Exact 2x2 matrix arithmetic for the modular group and its dyadic frame.

Two layers live here.  ``ProjMat`` is an integer matrix of determinant 1
taken up to global sign, i.e. an element of PSL(2,Z); this is the currency
in which diagram monodromies are computed.  ``DyadicMat`` is a matrix with
entries in (1/2)Z, also up to sign; the four half-stone decoration matrices
and the base-change matrices live there.  ``conjugate_to_psl`` moves a
dyadic stone product into the integral frame.

All values are immutable and all operations are pure functions, so
everything here is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class NonIntegralError(ValueError):
    """Conjugation did not land in the integer matrices.

    Raised when the conjugated matrix has non-integer entries or a
    determinant other than 1; typically the caller composed an odd number
    of half-stone matrices.
    """


def _canonical_sign(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    # representative with a > 0, or a == 0 and b > 0
    if a < 0 or (a == 0 and b < 0):
        return -a, -b, -c, -d
    return a, b, c, d


@dataclass(frozen=True)
class ProjMat:
    """2x2 integer matrix of determinant 1, identified with its negation.

    The stored representative has ``a > 0`` or (``a == 0`` and ``b > 0``),
    so dataclass equality is equality in PSL(2,Z).  Entries are Python
    integers: products of arbitrarily long words stay exact, there is no
    wraparound to detect.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant is {self.a * self.d - self.b * self.c}, want 1")
        a, b, c, d = _canonical_sign(self.a, self.b, self.c, self.d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @staticmethod
    def identity() -> "ProjMat":
        return ProjMat(1, 0, 0, 1)

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def __mul__(self, other: "ProjMat") -> "ProjMat":
        return ProjMat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "ProjMat":
        return ProjMat(self.d, -self.b, -self.c, self.a)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return f"[{self.a} {self.b}; {self.c} {self.d}]"


def mul(m1: ProjMat, m2: ProjMat) -> ProjMat:
    """Product in PSL(2,Z) (canonical-sign representative)."""
    return m1 * m2


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class DyadicMat:
    """Matrix 2^(-e) * (a b; c d) with integer entries, up to global sign.

    Stored reduced (not all of a,b,c,d even while e > 0) and with the same
    sign rule as ProjMat.  The integer part must have determinant +-2^j:
    that covers every matrix of the half-stone layer (the decoration
    matrices have determinant 2 or 1/2, the reflection has -1).
    """

    a: int
    b: int
    c: int
    d: int
    e: int = 0

    def __post_init__(self) -> None:
        if self.e < 0:
            raise ValueError("scale exponent must be non-negative")
        det = self.a * self.d - self.b * self.c
        if not _is_pow2(abs(det)):
            raise ValueError(f"integer-part determinant is {det}, want a signed power of 2")
        a, b, c, d, e = self.a, self.b, self.c, self.d, self.e
        while e > 0 and a % 2 == 0 and b % 2 == 0 and c % 2 == 0 and d % 2 == 0:
            a, b, c, d, e = a // 2, b // 2, c // 2, d // 2, e - 1
        a, b, c, d = _canonical_sign(a, b, c, d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "e", e)

    @staticmethod
    def identity() -> "DyadicMat":
        return DyadicMat(1, 0, 0, 1)

    @staticmethod
    def from_projmat(m: ProjMat) -> "DyadicMat":
        return DyadicMat(m.a, m.b, m.c, m.d)

    def __mul__(self, other: "DyadicMat") -> "DyadicMat":
        return DyadicMat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.e + other.e,
        )

    def inverse(self) -> "DyadicMat":
        det = self.a * self.d - self.b * self.c
        j = abs(det).bit_length() - 1  # |det| == 2**j
        adj = (self.d, -self.b, -self.c, self.a)
        if self.e >= j:
            scale = 2 ** (self.e - j)
            return DyadicMat(*(x * scale for x in adj), 0)
        return DyadicMat(*adj, j - self.e)

    def __str__(self) -> str:
        head = "" if self.e == 0 else f"2^-{self.e} "
        return f"{head}[{self.a} {self.b}; {self.c} {self.d}]"


class Decoration(Enum):
    """The four decorations around a real critical value."""

    X_LEFT = "-x<"
    X_RIGHT = ">x-"
    O_LEFT = "-o<"
    O_RIGHT = ">o-"


_DECORATION_MATRICES = {
    Decoration.X_LEFT: DyadicMat(1, 0, -1, 2, 1),
    Decoration.X_RIGHT: DyadicMat(2, 0, -1, 1),
    Decoration.O_LEFT: DyadicMat(2, 1, 0, 1, 1),
    Decoration.O_RIGHT: DyadicMat(1, 1, 0, 2),
}


def decoration_matrix(dec: Decoration) -> DyadicMat:
    """Half-stone matrix of a decoration (dyadic frame)."""
    return _DECORATION_MATRICES[dec]


# generators of SL(2,Z): the twist pair and the torsion pair
T_A = ProjMat(1, 1, 0, 1)
T_B = ProjMat(1, 0, -1, 1)
GEN_X = T_A * T_B * T_A  # order 2 in PSL(2,Z)
GEN_Y = T_A * T_B        # order 3 in PSL(2,Z)

# base change to the integral frame, and the reflection relating the half-stones
R_CONJ = DyadicMat(1, -1, 1, 1, 1)
M_REFLECT = DyadicMat(1, 0, 0, -1)

# R_CONJ inverse is integral: 2 * (1 -1; 1 1)^-1 == (1 1; -1 1)
_R_INV = (1, 1, -1, 1)


def conjugate_to_psl(p: DyadicMat) -> ProjMat:
    """Conjugate a dyadic matrix by R into PSL(2,Z).

    Computes R^-1 * p * R and returns it as a ProjMat.  Raises
    NonIntegralError when the result has half-integer entries or its
    determinant is not 1 (both happen for odd half-stone compositions).
    """
    la, lb, lc, ld = _R_INV
    # N = R_inv * A, then N * (1 -1; 1 1); divide by 2^(e+1)
    na = la * p.a + lb * p.c
    nb = la * p.b + lb * p.d
    nc = lc * p.a + ld * p.c
    nd = lc * p.b + ld * p.d
    qa, qb = na + nb, -na + nb
    qc, qd = nc + nd, -nc + nd
    div = 2 ** (p.e + 1)
    if any(x % div for x in (qa, qb, qc, qd)):
        raise NonIntegralError(f"conjugate of {p} is not integral")
    qa, qb, qc, qd = qa // div, qb // div, qc // div, qd // div
    if qa * qd - qb * qc != 1:
        raise NonIntegralError(f"conjugate of {p} has determinant != 1")
    return ProjMat(qa, qb, qc, qd)


def _word(letters: str) -> ProjMat:
    m = ProjMat.identity()
    for ch in letters:
        m = m * (GEN_X if ch == "x" else GEN_Y)
    return m


# monodromies of the four stone types, via their generator factorizations
PROJ_SQUARE = _word("yxy")
PROJ_CIRCLE = _word("xyxyx")
PROJ_ARROW_R = _word("yyx")
PROJ_ARROW_L = _word("xyy")
