"""Block table: the nested building blocks of one episturmian word.

Levels 1-k..0 are single-letter seeds (level 0 is the first alphabet letter,
level -j the (k-j+1)-th). Each higher block concatenates powers of the k
previous ones, every block is a prefix of the next from level 0 on, and the
infinite word is their common limit. The table memoizes blocks, palindromic
prefixes and the integer length sequences, guarded both by level and by
materialized size.
"""

from __future__ import annotations

import threading

from .directive import DirectiveSpec, exponent
from .errors import CancellationError, GuardExceeded, RangeError
from .words import Word, strip_prefix

DEFAULT_LEVEL_GUARD = 64
DEFAULT_LENGTH_GUARD = 1 << 27


class BlockTable:
    """Memoized access to one word's blocks and derived data; safe to share between threads."""

    def __init__(
        self,
        spec: DirectiveSpec,
        *,
        level_guard: int = DEFAULT_LEVEL_GUARD,
        length_guard: int = DEFAULT_LENGTH_GUARD,
    ):
        if level_guard < 1:
            raise RangeError("level guard must be >= 1")
        self._spec = spec
        self._level_guard = level_guard
        self._length_guard = length_guard
        self._lock = threading.RLock()
        self._blocks: dict[int, Word] = {}
        self._prefixes: dict[int, Word] = {}
        self._lengths: dict[int, int] = {}
        self._others: dict[int, int] = {}

    @property
    def spec(self) -> DirectiveSpec:
        return self._spec

    @property
    def level_guard(self) -> int:
        return self._level_guard

    def exponent(self, i: int) -> int:
        return exponent(self._spec, i)

    def _check_level(self, n: int, *, low: int, what: str) -> None:
        if n < low:
            raise RangeError(f"{what} is undefined below level {low} (got {n})")
        if n > self._level_guard:
            raise GuardExceeded(f"level {n} above the guard {self._level_guard}")

    def _check_size(self, n: int) -> None:
        size = self.block_length(n)
        if size > self._length_guard:
            raise GuardExceeded(f"block at level {n} has {size} letters, above the length guard {self._length_guard}")

    # -- integer sequences ----------------------------------------------------

    def block_length(self, n: int) -> int:
        """Length of the level-n block, computed without materializing it."""
        k = self._spec.k
        self._check_level(n, low=1 - k, what="block length")
        with self._lock:
            return self._block_length_locked(n)

    def _block_length_locked(self, n: int) -> int:
        if n <= 0:
            return 1
        got = self._lengths.get(n)
        if got is None:
            got = self._combine_lengths(n, self._block_length_locked)
            self._lengths[n] = got
        return got

    def other_letter_count(self, n: int) -> int:
        """How many letters of the level-n block differ from the first alphabet letter."""
        k = self._spec.k
        self._check_level(n, low=1 - k, what="letter count")
        with self._lock:
            return self._other_count_locked(n)

    def _other_count_locked(self, n: int) -> int:
        if n <= 0:
            return 0 if n == 0 else 1
        got = self._others.get(n)
        if got is None:
            got = self._combine_lengths(n, self._other_count_locked)
            self._others[n] = got
        return got

    def _combine_lengths(self, n: int, value) -> int:
        k = self._spec.k
        total = value(n - k)
        for j in range(1, k):
            if n - j + 1 >= 1:
                total += exponent(self._spec, n - j + 1) * value(n - j)
        return total

    def first_letter_count(self, n: int) -> int:
        """How many letters of the level-n block equal the first alphabet letter."""
        return self.block_length(n) - self.other_letter_count(n)

    # -- words ----------------------------------------------------------------

    def block(self, n: int) -> Word:
        """The level-n block (single seed letters at levels 1-k..0)."""
        k = self._spec.k
        self._check_level(n, low=1 - k, what="block")
        if n <= 0:
            return self._spec.alphabet[n % k]
        with self._lock:
            got = self._blocks.get(n)
            if got is None:
                self._check_size(n)
                parts = []
                for j in range(1, k):
                    if n - j + 1 >= 1:
                        parts.append(self.block(n - j) * exponent(self._spec, n - j + 1))
                parts.append(self.block(n - k))
                got = "".join(parts)
                self._blocks[n] = got
            return got

    def palindromic_prefix(self, n: int) -> Word:
        """The palindromic prefix paired with level n (empty at level 0 when the first exponent is 1)."""
        k = self._spec.k
        self._check_level(n, low=0, what="palindromic prefix")
        with self._lock:
            got = self._prefixes.get(n)
            if got is None:
                d_next = exponent(self._spec, n + 1)
                if n < k:
                    got = (self.block(n) * d_next)[:-1]
                else:
                    got = self.block(n) * d_next + self.palindromic_prefix(n - k)
                self._prefixes[n] = got
            return got

    def palindromic_prefix_length(self, n: int) -> int:
        """Length of the level-n palindromic prefix; -1 at the formal seed levels -k..-1."""
        k = self._spec.k
        if n < -k:
            raise RangeError(f"palindromic prefix length is undefined below level {-k} (got {n})")
        if n < 0:
            return -1
        if n > self._level_guard:
            raise GuardExceeded(f"level {n} above the guard {self._level_guard}")
        return exponent(self._spec, n + 1) * self.block_length(n) + self.palindromic_prefix_length(n - k)

    def block_tail(self, n: int, r: int) -> Word:
        """Suffix of the level-n block after the level-(n-r) palindromic prefix (1 <= r < k).

        Below level r the prefix is only formal; the tail is then the block
        with one letter of the preceding cycle stitched in front.
        """
        k = self._spec.k
        self._check_level(n, low=0, what="block tail")
        if not 1 <= r <= k - 1:
            raise RangeError(f"tail depth {r} outside 1..{k - 1}")
        if n >= r:
            return strip_prefix(self.block(n), self.palindromic_prefix(n - r))
        return self._spec.alphabet[(n - r) % k] + self.block(n)

    def junction(self, n: int) -> Word:
        """Word closing the product of two consecutive blocks over the maximal power of the lower one.

        block(n+2) + block(n+1) == block(n+1)**(e+1) + junction(n) with e the
        (n+2)-nd exponent, literally for n >= k-1; below that the junction
        exists only formally and this raises.
        """
        k = self._spec.k
        self._check_level(n, low=0, what="junction")
        if n < k - 1:
            raise CancellationError(
                f"junction at level {n} exists only formally (levels below {k - 1} would need a negative-level prefix)"
            )
        return self.palindromic_prefix(n - k + 1) + self.block_tail(n + 1, k - 1)

    def power_prefix(self, n: int) -> Word:
        """Longest prefix of the infinite word that is a fractional power of the level-(n-1) block.

        Palindromic for every n; power_prefix(0) is empty.
        """
        self._check_level(n, low=0, what="power prefix")
        if n == 0:
            return ""
        return self.block(n - 1) + self.palindromic_prefix(n - 1)
