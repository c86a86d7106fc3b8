"""Lexicographic ranking and unranking of multiset permutations.

Every block of n symbols belongs to a class: the set of all words with the
same letter counts. Under an i.i.d. source all members of one class are
equally probable, which is what makes swapping a block for a classmate
undetectable. The class is ordered lexicographically (canonical symbol
order) and its members are addressed by rank, from 0 to the class size
minus one.

The class size is the multinomial coefficient n! / prod(count_a!). Ranking
walks the block left to right; at each position it adds, for every still
available smaller symbol, the number of arrangements that would start with
that symbol. Unranking runs the same walk greedily in reverse. Both are
O(n * distinct symbols) big-integer operations per block. Everything here
is exact arbitrary-precision arithmetic; class sizes overflow 64 bits for
quite small blocks already.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from .alphabet import (
    Alphabet,
    Block,
    Composition,
    block_to_indices,
    indices_to_block,
)
from .errors import IndexOutOfRange


def class_size(comp: Composition) -> int:
    """Number of distinct arrangements of a block with the given composition."""
    return multinomial(cnt for _, cnt in comp.counts)


def multinomial(counts) -> int:
    """Exact multinomial coefficient (sum counts)! / prod(counts!)."""
    total = 0
    result = 1
    for cnt in counts:
        total += cnt
        result *= math.comb(total, cnt)
    return result


def rank_indices(indices: Sequence[int], size: int | None = None) -> int:
    """Rank of an index block within its class, lexicographic order.

    ``size`` may pass a precomputed class size to skip recomputing it.
    """
    counter = Counter(indices)
    symbols = sorted(counter)
    counts = [counter[s] for s in symbols]
    if size is None:
        size = multinomial(counts)
    rank_value = 0
    left = len(indices)
    for sym in indices:
        # Arrangements of the remaining suffix starting with symbol t number
        # size * count(t) / left; the divisions are exact.
        j = 0
        while True:
            t = symbols[j]
            if t == sym:
                break
            rank_value += size * counts[j] // left
            j += 1
        cnt = counts[j]
        size = size * cnt // left
        left -= 1
        if cnt == 1:
            del symbols[j]
            del counts[j]
        else:
            counts[j] = cnt - 1
    return rank_value


def unrank_indices(comp: Composition, index: int, size: int | None = None) -> list[int]:
    """Index block with the given rank within the class of ``comp``."""
    if size is None:
        size = class_size(comp)
    if not (0 <= index < size):
        raise IndexOutOfRange(f"rank {index} outside [0, {size})")
    symbols = [s for s, _ in comp.counts]
    counts = [c for _, c in comp.counts]
    out: list[int] = []
    left = comp.n
    for _ in range(comp.n):
        j = 0
        while True:
            starting_here = size * counts[j] // left
            if index < starting_here:
                break
            index -= starting_here
            j += 1
        out.append(symbols[j])
        size = starting_here
        cnt = counts[j]
        left -= 1
        if cnt == 1:
            del symbols[j]
            del counts[j]
        else:
            counts[j] = cnt - 1
    return out


def rank(block: Sequence[str], alphabet: Alphabet) -> int:
    """Number of classmates of ``block`` that are lexicographically smaller."""
    if len(block) == 0:
        raise ValueError("block must contain at least one symbol")
    return rank_indices(block_to_indices(block, alphabet))


def unrank(comp: Composition, index: int, alphabet: Alphabet) -> Block:
    """The unique member of the class of ``comp`` with the given rank."""
    return indices_to_block(unrank_indices(comp, index), alphabet)
