"""Chern classes of low rank from Chern characters, via the Newton identities.

Only degrees up to three are needed: c1 = ch1, c2 = (c1^2 - 2 ch2)/2, and c3
solves ch3 = (c1^3 - 3 c1 c2 + 3 c3)/6.  The inverse direction is provided for
round-trip testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeError
from .poly import TruncatedPoly

CHERN_MAX_DEGREE = 3


@dataclass(frozen=True)
class ChernVector:
    """Total Chern class 1 + c1 + c2 + c3 of a bundle of the given rank."""

    rank: int
    c1: TruncatedPoly
    c2: TruncatedPoly
    c3: TruncatedPoly

    def __post_init__(self):
        for i, ci in ((1, self.c1), (2, self.c2), (3, self.c3)):
            if not ci.is_pure_degree(i):
                raise DegreeError(f"c{i} must have pure total degree {i}, got {ci}")

    @classmethod
    def trivial(cls, rank: int) -> "ChernVector":
        z = TruncatedPoly.zero(CHERN_MAX_DEGREE)
        return cls(rank, z, z, z)

    @classmethod
    def line_bundle(cls, c1: TruncatedPoly) -> "ChernVector":
        z = TruncatedPoly.zero(CHERN_MAX_DEGREE)
        return cls(1, c1, z, z)

    def total(self) -> TruncatedPoly:
        return TruncatedPoly.constant(1, CHERN_MAX_DEGREE) + self.c1 + self.c2 + self.c3


def chern_from_character(
    rank: int, ch1: TruncatedPoly, ch2: TruncatedPoly, ch3: TruncatedPoly
) -> ChernVector:
    """Convert (ch1, ch2, ch3) of a rank-`rank` bundle to Chern classes."""
    for i, chi in ((1, ch1), (2, ch2), (3, ch3)):
        if not chi.is_pure_degree(i):
            raise DegreeError(f"ch{i} must have pure total degree {i}")
    c1 = ch1
    c2 = (c1 * c1 - ch2.scale(2)).scale(Fraction(1, 2))
    c3 = ch3.scale(2) - (c1 * c1 * c1).scale(Fraction(1, 3)) + c1 * c2
    return ChernVector(rank, c1, c2, c3)


def character_from_chern(c: ChernVector) -> tuple[TruncatedPoly, TruncatedPoly, TruncatedPoly]:
    """Inverse of chern_from_character in degrees <= 3 (round-trip oracle)."""
    ch1 = c.c1
    ch2 = (c.c1 * c.c1 - c.c2.scale(2)).scale(Fraction(1, 2))
    ch3 = (c.c1 * c.c1 * c.c1 - (c.c1 * c.c2).scale(3) + c.c3.scale(3)).scale(Fraction(1, 6))
    return ch1, ch2, ch3
