"""Directive sequences and the iterated palindromic-closure construction.

A directive is a list of positive exponents cycling through the alphabet:
entry i applies to letter number ((i-1) mod k) + 1. Expanding each entry to
that many copies of its letter yields an infinite (or finite, when no period
is given) sequence of single letters; iterated palindromic closure driven by
that sequence builds the word this whole package studies.
"""

from __future__ import annotations

import string
import threading
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParseError, RangeError
from .words import Word, z_array

_LETTER_POOL = string.ascii_lowercase


@dataclass(frozen=True)
class DirectiveSpec:
    """Alphabet plus the exponent list, split into a leading part and a repeating part.

    An empty period means the exponent list is finite; operations raise
    RangeError when asked to look past its end.
    """

    alphabet: str
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.alphabet)
        if k < 2:
            raise ParseError("need an alphabet of at least 2 letters")
        if k > len(_LETTER_POOL):
            raise ParseError(f"alphabets beyond {len(_LETTER_POOL)} letters are not supported")
        if len(set(self.alphabet)) != k:
            raise ParseError("alphabet letters must be distinct")
        if not self.preperiod and not self.period:
            raise ParseError("directive needs at least one exponent")
        for d in self.preperiod + self.period:
            if not isinstance(d, int) or d < 1:
                raise ParseError(f"exponents must be positive integers, got {d!r}")

    @property
    def k(self) -> int:
        return len(self.alphabet)

    @classmethod
    def make(cls, k: int, preperiod: tuple[int, ...] = (), period: tuple[int, ...] = ()) -> "DirectiveSpec":
        if k < 2 or k > len(_LETTER_POOL):
            raise ParseError(f"alphabet size must be between 2 and {len(_LETTER_POOL)}")
        return cls(_LETTER_POOL[:k], tuple(preperiod), tuple(period))

    @classmethod
    def parse(cls, text: str) -> "DirectiveSpec":
        """Parse 'k=3; d=1,1,2; 2,1,2' (third part, the period, may be omitted)."""
        parts = [p.strip() for p in text.split(";")]
        if len(parts) < 2 or len(parts) > 3:
            raise ParseError(f"expected 'k=<int>; d=<exponents>[; <period>]', got {text!r}")
        head, pre_part = parts[0], parts[1]
        if not head.startswith("k="):
            raise ParseError(f"spec must start with 'k=', got {head!r}")
        try:
            k = int(head[2:])
        except ValueError as exc:
            raise ParseError(f"bad alphabet size in {head!r}") from exc
        if not pre_part.startswith("d="):
            raise ParseError(f"second field must start with 'd=', got {pre_part!r}")

        def ints(chunk: str) -> tuple[int, ...]:
            chunk = chunk.strip()
            if not chunk:
                return ()
            try:
                return tuple(int(x) for x in chunk.split(","))
            except ValueError as exc:
                raise ParseError(f"bad exponent list {chunk!r}") from exc

        preperiod = ints(pre_part[2:])
        period = ints(parts[2]) if len(parts) == 3 else ()
        return cls.make(k, preperiod, period)

    def to_text(self) -> str:
        pre = ",".join(str(d) for d in self.preperiod)
        if not self.period:
            return f"k={self.k}; d={pre}"
        per = ",".join(str(d) for d in self.period)
        return f"k={self.k}; d={pre}; {per}"


def exponent(spec: DirectiveSpec, i: int) -> int:
    """The i-th exponent (1-based)."""
    if i < 1:
        raise RangeError(f"exponent index {i} must be >= 1")
    idx = i - 1
    if idx < len(spec.preperiod):
        return spec.preperiod[idx]
    if not spec.period:
        raise RangeError(f"directive is finite with {len(spec.preperiod)} exponents; index {i} is past its end")
    return spec.period[(idx - len(spec.preperiod)) % len(spec.period)]


@lru_cache(maxsize=None)
def _sums(spec: DirectiveSpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pre_sums = [0]
    for d in spec.preperiod:
        pre_sums.append(pre_sums[-1] + d)
    per_sums = [0]
    for d in spec.period:
        per_sums.append(per_sums[-1] + d)
    return tuple(pre_sums), tuple(per_sums)


def exponent_sum(spec: DirectiveSpec, n: int) -> int:
    """Total of the first n exponents (0 for n = 0)."""
    if n < 0:
        raise RangeError("exponent count must be nonnegative")
    pre_sums, per_sums = _sums(spec)
    if n < len(pre_sums):
        return pre_sums[n]
    if not spec.period:
        raise RangeError(f"directive is finite with {len(spec.preperiod)} exponents; cannot sum {n}")
    extra = n - len(spec.preperiod)
    cycles, rest = divmod(extra, len(spec.period))
    return pre_sums[-1] + cycles * per_sums[-1] + per_sums[rest]


def block_letter(spec: DirectiveSpec, i: int) -> str:
    """The letter carried by the i-th exponent entry."""
    if i < 1:
        raise RangeError(f"entry index {i} must be >= 1")
    return spec.alphabet[(i - 1) % spec.k]


def _entry_of_position(spec: DirectiveSpec, i: int) -> int:
    """Index of the exponent entry covering position i of the expanded letter sequence."""
    if i < 1:
        raise RangeError(f"letter position {i} must be >= 1")
    lo, hi = 1, i  # each exponent is >= 1, so entry index never exceeds position
    while lo < hi:
        mid = (lo + hi) // 2
        if exponent_sum(spec, mid) >= i:
            hi = mid
        else:
            lo = mid + 1
    return lo


def directive_letter(spec: DirectiveSpec, i: int) -> str:
    """The i-th letter of the expanded directive sequence (1-based)."""
    return block_letter(spec, _entry_of_position(spec, i))


def previous_same_letter(spec: DirectiveSpec, i: int) -> int | None:
    """Largest position j < i whose directive letter equals the one at i; None when absent."""
    b = _entry_of_position(spec, i)
    if i > exponent_sum(spec, b - 1) + 1:
        return i - 1
    if b > spec.k:
        return exponent_sum(spec, b - spec.k)
    return None


def next_same_letter(spec: DirectiveSpec, i: int) -> int:
    """Smallest position j > i whose directive letter equals the one at i."""
    b = _entry_of_position(spec, i)
    if i < exponent_sum(spec, b):
        return i + 1
    return exponent_sum(spec, b + spec.k - 1) + 1


def palindromic_closure(w: Word) -> Word:
    """Shortest palindrome that has w as a prefix."""
    if not w:
        return ""
    rev = w[::-1]
    n = len(w)
    z = z_array(rev + "\x00" + w)
    for i in range(n):
        # w[i:] is a palindrome exactly when it matches the reversed word that far
        if z[n + 1 + i] >= n - i:
            return w + rev[n - i:]
    raise AssertionError("unreachable: a single letter is always a palindrome")


def morphism(a: str, w: Word) -> Word:
    """Image of w under the map fixing a and sending any other letter x to a+x."""
    if len(a) != 1:
        raise RangeError("morphism seed must be a single letter")
    return "".join(c if c == a else a + c for c in w)


def prefix_increment(spec: DirectiveSpec, n: int) -> Word:
    """Word prepended to the n-th closure prefix to obtain the next one, built morphically.

    Equals the image of directive letter n+1 under the composed morphisms of
    the first n directive letters; the closure table satisfies
    prefix(j+1) == prefix_increment(spec, j-1) + prefix(j) for j >= 1.
    """
    if n < 0:
        raise RangeError("increment level must be >= 0")
    w = directive_letter(spec, n + 1)
    for i in range(n, 0, -1):
        w = morphism(directive_letter(spec, i), w)
    return w


class PalindromicPrefixTable:
    """Cache of the iterated-closure prefixes; prefix(1) is empty, each step closes one more directive letter."""

    def __init__(self, spec: DirectiveSpec):
        self._spec = spec
        self._prefixes: list[Word] = [""]
        self._lock = threading.RLock()

    @property
    def spec(self) -> DirectiveSpec:
        return self._spec

    def prefix(self, j: int) -> Word:
        """The j-th palindromic prefix (j >= 1)."""
        if j < 1:
            raise RangeError(f"closure index {j} must be >= 1")
        with self._lock:
            while len(self._prefixes) < j:
                x = directive_letter(self._spec, len(self._prefixes))
                self._prefixes.append(palindromic_closure(self._prefixes[-1] + x))
            return self._prefixes[j - 1]

    def prefix_of_length(self, length: int) -> Word:
        """Shortest closure prefix of length >= length (RangeError on a finite directive that runs out)."""
        if length < 0:
            raise RangeError("length must be nonnegative")
        with self._lock:
            j = len(self._prefixes)
            while len(self._prefixes[-1]) < length:
                j += 1
                self.prefix(j)
            for candidate in self._prefixes:
                if len(candidate) >= length:
                    return candidate
            return self._prefixes[-1]


def closure_prefix(spec: DirectiveSpec, length: int) -> Word:
    """Exactly the first `length` letters, built by iterated palindromic closure alone."""
    table = PalindromicPrefixTable(spec)
    return table.prefix_of_length(length)[:length]
