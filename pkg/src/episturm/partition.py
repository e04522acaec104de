"""Tilings of the word by blocks from one window of k consecutive levels.

The level-n partition tiles the word by blocks of levels n-k+1..n. It is
computed top-down: a high block expands through the recurrence until every
piece sits inside the window. Regrouping the level-n tiling yields the
level-(n+1) tiling, which the tests use as the uniqueness round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import BlockTable
from .errors import InsufficientDataError, InvariantViolation, RangeError
from .directive import exponent
from .words import Word


@dataclass(frozen=True)
class PartitionView:
    """One tiling: (block_level, start, length) per tile, 0-based starts, covering the prefix."""

    level: int
    items: tuple[tuple[int, int, int], ...]
    covered_prefix_length: int


def _expanded_levels(table: BlockTable, level: int, upto_level: int) -> tuple[int, ...]:
    """Flat sequence of tile levels for the level-`upto_level` block, all within the window."""
    spec = table.spec
    k = spec.k
    flat: dict[int, tuple[int, ...]] = {}
    for m in range(level + 1, upto_level + 1):
        parts: list[int] = []
        for j in range(1, k):
            if m - j + 1 >= 1:
                piece = (m - j,) if m - j <= level else flat[m - j]
                parts.extend(piece * exponent(spec, m - j + 1))
        parts.extend((m - k,) if m - k <= level else flat[m - k])
        flat[m] = tuple(parts)
    return flat[upto_level]


def level_partition(table: BlockTable, level: int, upto_level: int) -> PartitionView:
    """Tiling of the level-`upto_level` block by blocks of levels level-k+1..level."""
    if level < 0:
        raise RangeError(f"partition level must be >= 0 (got {level})")
    if upto_level <= level:
        raise RangeError(f"upto_level {upto_level} must exceed the partition level {level}")
    table.block_length(upto_level)  # surfaces guard violations before any expansion work
    tiles = _expanded_levels(table, level, upto_level)
    items: list[tuple[int, int, int]] = []
    start = 0
    for tile_level in tiles:
        size = table.block_length(tile_level)
        items.append((tile_level, start, size))
        start += size
    covered = table.block_length(upto_level)
    if start != covered:
        raise InvariantViolation(f"tiles cover {start} letters, block has {covered}")
    return PartitionView(level=level, items=tuple(items), covered_prefix_length=covered)


def block_positions(view: PartitionView, level: int) -> list[int]:
    """Start positions (0-based) of the level-`level` tiles in the tiling."""
    window_low = min(item[0] for item in view.items)
    if not window_low <= level <= view.level:
        raise RangeError(f"level {level} outside the tiling window {window_low}..{view.level}")
    return [start for tile_level, start, _ in view.items if tile_level == level]


def return_words(prefix: Word, w: Word) -> frozenset:
    """Factors spanning one occurrence of w to the next, over all occurrences inside prefix."""
    if not w:
        raise RangeError("return words need a nonempty factor")
    starts: list[int] = []
    pos = prefix.find(w)
    while pos != -1:
        starts.append(pos)
        pos = prefix.find(w, pos + 1)
    if len(starts) < 2:
        raise InsufficientDataError(f"{w!r} occurs {len(starts)} time(s); need at least 2")
    return frozenset(prefix[a:b] for a, b in zip(starts, starts[1:]))
