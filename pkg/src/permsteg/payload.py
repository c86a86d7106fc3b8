"""Randomized payload-length coding over a class of N equiprobable words.

A block whose class has N members can carry a whole number of payload bits
only when N is a power of two. The general case is handled by splitting the
class along the binary expansion of N: writing N = sum of 2**i over the set
bits i, the class decomposes into disjoint bands, one band of 2**i words
per set bit. The encoder first draws the payload length d among the set
bits, giving length i probability 2**i / N, then reads d payload bits and
interprets them MSB-first as a value r in [0, 2**d). The emitted class
index is

    tau = offset(d) + r,    offset(d) = sum of 2**l over set bits l > d,

i.e. bands are laid out from the highest set bit downward. The map from
(d, r) to tau is a bijection onto [0, N), and when d is drawn as above and
r is uniform, tau is exactly uniform on [0, N) -- the whole point: the
emitted word is distributed exactly like the covertext block it replaces.
The decoder recovers (d, r) from tau alone; no shared randomness is needed.

Drawing d costs nothing when N is a power of two (a single band forces d),
so degenerate classes consume no randomness at all.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import IndexOutOfRange, InvalidDelta, NonPositive, PayloadOutOfRange


@dataclass(frozen=True, slots=True)
class BinaryExpansion:
    """Base-2 digits of a positive integer, with band layout precomputed.

    ``bits[i]`` is the coefficient of 2**i (so the tuple reads LSB first and
    always ends in 1); ``levels`` lists the set bit positions in descending
    order and ``offsets[j]`` is the start of the band for ``levels[j]``.
    """

    value: int
    bits: tuple[int, ...]
    levels: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def m(self) -> int:
        """Position of the leading bit: floor(log2(value))."""
        return len(self.bits) - 1

    def bit(self, i: int) -> int:
        return self.bits[i] if 0 <= i < len(self.bits) else 0


@lru_cache(maxsize=65536)
def expand(value: int) -> BinaryExpansion:
    """Binary expansion of ``value`` >= 1 (memoized; expansions are immutable)."""
    if not isinstance(value, int) or isinstance(value, bool):
        raise NonPositive(f"expected a positive integer, got {value!r}")
    if value < 1:
        raise NonPositive(f"expected a positive integer, got {value}")
    bits = tuple((value >> i) & 1 for i in range(value.bit_length()))
    levels: list[int] = []
    offsets: list[int] = []
    offset = 0
    for i in range(len(bits) - 1, -1, -1):
        if bits[i]:
            levels.append(i)
            offsets.append(offset)
            offset += 1 << i
    return BinaryExpansion(value, bits, tuple(levels), tuple(offsets))


def delta_probabilities(exp: BinaryExpansion) -> list[tuple[int, Fraction]]:
    """Exact distribution of the payload length: P(d = i) = bit_i * 2**i / N.

    Returned for every i from the top bit down to 0, including zero-probability
    entries; the probabilities sum to exactly 1.
    """
    n = exp.value
    return [
        (i, Fraction(1 << i, n) if exp.bits[i] else Fraction(0))
        for i in range(exp.m, -1, -1)
    ]


def sample_delta(exp: BinaryExpansion, rng: random.Random, forced: int | None = None) -> int:
    """Draw a payload length with band probabilities 2**i / N.

    A power-of-two class has a single band, so the draw is forced and the
    generator is not consumed. ``forced`` overrides the draw with a fixed,
    admissible length (test hook; InvalidDelta if the band does not exist).
    """
    if forced is not None:
        if not (0 <= forced <= exp.m) or not exp.bits[forced]:
            raise InvalidDelta(
                f"forced payload length {forced} is not a set bit of {exp.value}"
            )
        return forced
    levels = exp.levels
    if len(levels) == 1:
        return levels[0]
    # randrange is exactly uniform on [0, N); locate the band containing it.
    u = rng.randrange(exp.value)
    for level in levels:
        width = 1 << level
        if u < width:
            return level
        u -= width
    raise AssertionError("unreachable: bands cover [0, N)")


def encode_index(exp: BinaryExpansion, d: int, r: int) -> int:
    """Class index for payload value ``r`` carried in a band of width 2**d."""
    if not (0 <= d <= exp.m) or not exp.bits[d]:
        raise InvalidDelta(f"payload length {d} is not a set bit of {exp.value}")
    if not (0 <= r < (1 << d)):
        raise PayloadOutOfRange(f"payload value {r} does not fit in {d} bits")
    return exp.offsets[exp.levels.index(d)] + r


def decode_index(exp: BinaryExpansion, tau: int) -> tuple[int, int]:
    """Invert encode_index: the unique (d, r) whose band contains ``tau``."""
    if not (0 <= tau < exp.value):
        raise IndexOutOfRange(f"class index {tau} outside [0, {exp.value})")
    for level in exp.levels:
        width = 1 << level
        if tau < width:
            return level, tau
        tau -= width
    raise AssertionError("unreachable: bands cover [0, N)")


def expected_payload_bits(exp: BinaryExpansion) -> Fraction:
    """Mean payload length under the band distribution: sum(l * 2**l) / N."""
    return Fraction(sum(level * (1 << level) for level in exp.levels), exp.value)
