"""Invariant battery: literal word and integer identities tying the modules together.

Each check raises VerificationError naming the first failing level. The
battery is exact string or integer equality throughout; callers choose how
far up the level ladder to push. Checks that would materialize quadratic or
deep data (singular classes, occurrence sub-checks) cap themselves by size,
never by weakening an equality.
"""

from __future__ import annotations

from typing import Callable

from .blocks import BlockTable
from .directive import (
    PalindromicPrefixTable,
    closure_prefix,
    directive_letter,
    exponent_sum,
    next_same_letter,
    prefix_increment,
    previous_same_letter,
)
from .errors import VerificationError
from .partition import level_partition
from .powers import block_index, block_index_witness, census, length_sets, prefix_index
from .singular import factor_partition, singular_window
from .words import (
    Word,
    conjugate,
    is_palindrome,
    is_primitive,
    reversal,
    shorten,
    strip_prefix,
    strip_suffix,
    z_array,
)

_CLOSURE_CHECK_CAP = 200_000
_WITNESS_OCCURRENCE_CAP = 2_000_000
_PARTITION_SIZE_CAP = 2_000
_CENSUS_LENGTH_CAP = 2_000
_SPLIT_SIZE_CAP = 1_000_000


def _fail(name: str, level, detail: str):
    raise VerificationError(f"{name} at level {level}: {detail}")


def check_block_letters(table: BlockTable, n_max: int) -> None:
    """Every block starts with the first letter (levels >= 0) and ends on the cycling letter."""
    k = table.spec.k
    alphabet = table.spec.alphabet
    for n in range(1 - k, n_max + 1):
        w = table.block(n)
        if w[-1] != alphabet[n % k]:
            _fail("block-letters", n, f"last letter {w[-1]!r}, expected {alphabet[n % k]!r}")
        if n >= 0 and w[0] != alphabet[0]:
            _fail("block-letters", n, f"first letter {w[0]!r}, expected {alphabet[0]!r}")


def check_length_tables(table: BlockTable, n_max: int) -> None:
    """The integer recurrences agree with literal lengths and letter counts."""
    first = table.spec.alphabet[0]
    for n in range(1 - table.spec.k, n_max + 1):
        w = table.block(n)
        if table.block_length(n) != len(w):
            _fail("length-tables", n, f"recurrence says {table.block_length(n)}, block has {len(w)}")
        if table.first_letter_count(n) != w.count(first):
            _fail("length-tables", n, f"first-letter count {table.first_letter_count(n)} vs {w.count(first)}")


def check_palindromic_prefixes(table: BlockTable, n_max: int) -> None:
    """Palindromic prefixes are palindromes, sized by the recurrence, nested, and literal prefixes."""
    k = table.spec.k
    closures = PalindromicPrefixTable(table.spec)
    for n in range(0, n_max + 1):
        p = table.palindromic_prefix(n)
        if not is_palindrome(p):
            _fail("palindromic-prefixes", n, f"{shorten(p)!r} is not a palindrome")
        if len(p) != table.palindromic_prefix_length(n):
            _fail("palindromic-prefixes", n, f"length {len(p)} vs recurrence {table.palindromic_prefix_length(n)}")
        if not table.block(n + 1).startswith(p):
            _fail("palindromic-prefixes", n, "not a prefix of the next block")
        if n >= 1 and not p.startswith(table.palindromic_prefix(n - 1)):
            _fail("palindromic-prefixes", n, "does not extend the previous one")
        explicit = (table.exponent(n + 1) - 1) * table.block_length(n)
        explicit += sum(table.exponent(j + 1) * table.block_length(j) for j in range(n))
        if len(p) != explicit:
            _fail("palindromic-prefixes", n, f"length {len(p)} vs explicit sum {explicit}")
        spread = sum(table.palindromic_prefix_length(n - j) for j in range(1, k))
        if spread != table.block_length(n) - k:
            _fail("palindromic-prefixes", n, f"window prefix lengths sum to {spread}, expected length-{k}")
        if len(p) <= _CLOSURE_CHECK_CAP:
            stage = exponent_sum(table.spec, n + 1)
            if closures.prefix(stage) != p:
                _fail("palindromic-prefixes", n, "disagrees with the iterated-closure construction")


def check_telescoping(table: BlockTable, n_max: int) -> None:
    """Consecutive block/prefix products agree, literally where both sides are concrete."""
    k = table.spec.k
    for n in range(0, n_max + 1):
        lhs = table.block_length(n + 1) + table.palindromic_prefix_length(n - k + 1)
        rhs = table.block_length(n) + table.palindromic_prefix_length(n)
        if lhs != rhs:
            _fail("telescoping", n, f"length form {lhs} != {rhs}")
        if table.block_length(n + 1) <= table.palindromic_prefix_length(n):
            _fail("telescoping", n, "next block not longer than the palindromic prefix")
        if n >= k - 1:
            left = table.block(n + 1) + table.palindromic_prefix(n - k + 1)
            right = table.block(n) + table.palindromic_prefix(n)
            if left != right:
                _fail("telescoping", n, f"literal form {shorten(left)!r} != {shorten(right)!r}")


def check_prefix_nesting(table: BlockTable, n_max: int) -> None:
    """Each block from level 0 on is a prefix of the next."""
    for n in range(0, n_max + 1):
        if not table.block(n + 1).startswith(table.block(n)):
            _fail("prefix-nesting", n, "block is not a prefix of its successor")


def check_reversal_rotation(table: BlockTable, n_max: int) -> None:
    """Reversing a block equals rotating it by its window prefix length."""
    k = table.spec.k
    for n in range(0, n_max + 1):
        w = table.block(n)
        j = table.palindromic_prefix_length(n - k) % table.block_length(n)
        if reversal(w) != conjugate(w, j) and len(w) > 1:
            _fail("reversal-rotation", n, f"rotation by {j} is not the reversal")
        if len(w) == 1 and reversal(w) != w:
            _fail("reversal-rotation", n, "single letter not fixed")


def _palindromic_prefix_flags(w: Word) -> list[bool]:
    n = len(w)
    rev = w[::-1]
    z = z_array(w + "\x00" + rev)
    flags = [False] * (n + 1)
    flags[0] = True
    for p in range(1, n + 1):
        flags[p] = z[n + 1 + n - p] >= p
    return flags


def check_two_palindrome_split(table: BlockTable, n_max: int) -> None:
    """Each block splits into two palindromes in exactly one way, the predicted one."""
    k = table.spec.k
    for n in range(1, n_max + 1):
        if table.block_length(n) > _SPLIT_SIZE_CAP:
            break
        w = table.block(n)
        pref = _palindromic_prefix_flags(w)
        suff = list(reversed(_palindromic_prefix_flags(w[::-1])))
        # suff[q] now says w[q:] is a palindrome
        splits = [p for p in range(len(w)) if pref[p] and suff[p]]
        if n >= k:
            expected = len(table.palindromic_prefix(n - k))
        else:
            expected = len(w) - 1
        if splits != [expected]:
            _fail("two-palindrome-split", n, f"splits at {splits}, expected [{expected}]")


def check_near_commutation(table: BlockTable, n_max: int) -> None:
    """Products of consecutive blocks agree once each drops its own short tail."""
    k = table.spec.k
    for n in range(1, n_max + 1):
        left = strip_suffix(table.block(n) + table.block(n - 1), table.block_tail(n - 1, k - 1))
        right = strip_suffix(table.block(n - 1) + table.block(n), table.block_tail(n, 1))
        if left != right:
            _fail("near-commutation", n, f"{shorten(left)!r} != {shorten(right)!r}")


def check_tail_reversal_link(table: BlockTable, n_max: int) -> None:
    """The depth-1 tail of a block is the reversal of the previous level's deepest tail."""
    k = table.spec.k
    for n in range(1, n_max + 1):
        if table.block_tail(n, 1) != reversal(table.block_tail(n - 1, k - 1)):
            _fail("tail-reversal-link", n, "depth-1 tail is not the mirrored deepest tail")


def check_tail_letters(table: BlockTable, n_max: int) -> None:
    """First and last letters of every tail follow the cycling rule."""
    k = table.spec.k
    alphabet = table.spec.alphabet
    for n in range(0, n_max + 1):
        for r in range(1, k):
            g = table.block_tail(n, r)
            if g[0] != alphabet[(n - r) % k]:
                _fail("tail-letters", n, f"depth {r} starts with {g[0]!r}, expected {alphabet[(n - r) % k]!r}")
            if g[-1] != alphabet[n % k]:
                _fail("tail-letters", n, f"depth {r} ends with {g[-1]!r}, expected {alphabet[n % k]!r}")


def check_morphic_blocks(table: BlockTable, n_max: int) -> None:
    """Blocks are primitive and equal their morphic construction from the directive."""
    spec = table.spec
    for n in range(0, n_max + 1):
        w = table.block(n)
        if not is_primitive(w):
            _fail("morphic-blocks", n, "block is not primitive")
        if prefix_increment(spec, exponent_sum(spec, n)) != w:
            _fail("morphic-blocks", n, "morphic route disagrees with the block recurrence")


def check_increment_words(table: BlockTable, n_max: int) -> None:
    """Increment words repeat exactly when the directive letter repeats; otherwise they outgrow the closure prefix."""
    spec = table.spec
    closures = PalindromicPrefixTable(spec)
    cap = exponent_sum(spec, min(n_max, 8))
    previous = prefix_increment(spec, 0)
    for i in range(1, cap + 1):
        current = prefix_increment(spec, i)
        if len(current) > _CLOSURE_CHECK_CAP:
            break
        same_letter = directive_letter(spec, i + 1) == directive_letter(spec, i)
        if (current == previous) != same_letter:
            _fail("increment-words", i, f"repeat={current == previous} but letters repeat={same_letter}")
        if not same_letter and not (current.startswith(previous) and len(current) > len(previous)):
            _fail("increment-words", i, "previous increment is not a proper prefix of the next")
        if closures.prefix(i + 1) != prefix_increment(spec, i - 1) + closures.prefix(i):
            _fail("increment-words", i, "closure recurrence via the increment word fails")
        previous = current


def check_position_functions(table: BlockTable, n_max: int) -> None:
    """previous/next same-letter positions match a brute scan of the expanded directive."""
    spec = table.spec
    horizon = exponent_sum(spec, min(n_max + spec.k, 10))
    letters = [directive_letter(spec, i) for i in range(1, horizon + 1)]
    for i in range(1, horizon + 1):
        target = letters[i - 1]
        brute_prev = next((j for j in range(i - 1, 0, -1) if letters[j - 1] == target), None)
        if previous_same_letter(spec, i) != brute_prev:
            _fail("position-functions", i, f"previous: {previous_same_letter(spec, i)} vs brute {brute_prev}")
        nxt = next_same_letter(spec, i)
        brute_next = next((j for j in range(i + 1, horizon + 1) if letters[j - 1] == target), None)
        if brute_next is not None and nxt != brute_next:
            _fail("position-functions", i, f"next: {nxt} vs brute {brute_next}")


def check_junction_products(table: BlockTable, n_max: int) -> None:
    """Both literal factorizations of a consecutive-block product hold.

    Below level k the junction word carries a dangling one-letter inverse;
    there the identity is checked in its cancellation-resolved form (one
    letter stripped from the preceding power, then the deepest tail).
    """
    k = table.spec.k
    alphabet = table.spec.alphabet
    for n in range(1, n_max + 1):
        product = table.block(n + 1) + table.block(n)
        via_tail = table.power_prefix(n + 1) + table.block_tail(n, k - 1)
        if product != via_tail:
            _fail("junction-products", n, "power-prefix factorization fails")
        if n >= k:
            via_junction = table.block(n) * (table.exponent(n + 1) + 1) + table.junction(n - 1)
            if product != via_junction:
                _fail("junction-products", n, "junction factorization fails")
        else:
            power = table.block(n) * (table.exponent(n + 1) + 1)
            resolved = strip_suffix(power, alphabet[n % k]) + table.block_tail(n, k - 1)
            if product != resolved:
                _fail("junction-products", n, "resolved formal junction fails")


def check_power_prefixes(table: BlockTable, n_max: int) -> None:
    """Power prefixes are palindromic prefixes of the word with the predicted lengths."""
    k = table.spec.k
    closures = PalindromicPrefixTable(table.spec)
    for n in range(1, n_max + 1):
        r = table.power_prefix(n)
        if not is_palindrome(r):
            _fail("power-prefixes", n, "not a palindrome")
        expected = (table.exponent(n) + 1) * table.block_length(n - 1) + table.palindromic_prefix_length(n - 1 - k)
        if len(r) != expected:
            _fail("power-prefixes", n, f"length {len(r)} vs predicted {expected}")
        if table.block(n + 2)[:len(r)] != r:
            _fail("power-prefixes", n, "not a prefix of the word")
        if len(r) <= _CLOSURE_CHECK_CAP and closures.prefix(exponent_sum(table.spec, n) + 1) != r:
            _fail("power-prefixes", n, "disagrees with the closure construction")


def check_index_consistency(table: BlockTable, n_max: int) -> None:
    """Prefix and block indices differ by one; witnesses have the exact lengths and occur."""
    k = table.spec.k
    for n in range(1, n_max + 1):
        pre = prefix_index(table, n)
        blk = block_index(table, n)
        if pre.value.as_fraction() + 1 != blk.as_fraction():
            _fail("index-consistency", n, f"{pre.value} + 1 != {blk}")
        witness = block_index_witness(table, n)
        expected = blk.whole * blk.den + blk.num
        if len(witness) != expected:
            _fail("index-consistency", n, f"witness length {len(witness)}, predicted {expected}")
        if not witness.startswith(table.block(n) * blk.whole):
            _fail("index-consistency", n, "witness does not start with the full power")
        host_level = n + k + 2
        if table.block_length(host_level) <= _WITNESS_OCCURRENCE_CAP:
            host = table.block(host_level)
            if host.find(witness) == -1:
                _fail("index-consistency", n, "maximal power not visible at the predicted level")
            if not host.startswith(pre.witness):
                _fail("index-consistency", n, "prefix witness is not a prefix")


def check_length_grids(table: BlockTable, n_max: int) -> None:
    """Grid lengths stay inside their window, strictly sorted, disjoint across depths."""
    for n in range(1, n_max + 1):
        grid = length_sets(table, n)
        low, high = table.block_length(n), table.block_length(n + 1)
        seen: set[int] = set()
        for depth, members in grid.items():
            if list(members) != sorted(members):
                _fail("length-grids", n, f"depth {depth} not sorted")
            for m in members:
                if not low <= m < high:
                    _fail("length-grids", n, f"member {m} outside window {low}..{high - 1}")
                if m in seen:
                    _fail("length-grids", n, f"member {m} appears at two depths")
                seen.add(m)
                if m <= _CENSUS_LENGTH_CAP:
                    row = census(table, m, 2)
                    if row.provenance.depth != depth:
                        _fail("length-grids", n, f"census classifies {m} at depth {row.provenance.depth}, grid says {depth}")


def check_singular_forms(table: BlockTable, n_max: int) -> None:
    """Factor partitions hold their invariants; the small-level window has its two equivalent forms."""
    k = table.spec.k
    alphabet = table.spec.alphabet
    for n in range(1, n_max + 1):
        if table.block_length(n) > _PARTITION_SIZE_CAP:
            break
        factor_partition(table, n)
        for r in range(1, k):
            if not 1 <= n <= r:
                continue
            window = singular_window(table, n, r)
            pp = table.power_prefix(n)
            if n < r:
                alternate = pp + alphabet[(n - r) % k] + pp
            else:
                alternate = strip_suffix(pp, table.palindromic_prefix(0)) + pp
            if window != alternate:
                _fail("singular-forms", n, f"kind {r}: window forms disagree")


def check_partition_tilings(table: BlockTable, n_max: int) -> None:
    """Tilings rebuild their block literally and regroup consistently across levels."""
    for n in range(0, n_max + 1):
        upto = n + 2
        if table.block_length(upto) > _WITNESS_OCCURRENCE_CAP:
            break
        view = level_partition(table, n, upto)
        rebuilt = "".join(table.block(level) for level, _, _ in view.items)
        if rebuilt != table.block(upto):
            _fail("partition-tilings", n, "tiles do not rebuild the block")
        if n >= 1:
            coarser = level_partition(table, n, upto)
            finer = level_partition(table, n - 1, upto)
            expanded: list[int] = []
            k = table.spec.k
            for level, _, _ in coarser.items:
                if level <= n - 1:
                    expanded.append(level)
                    continue
                for j in range(1, k):
                    if level - j + 1 >= 1:
                        expanded.extend([level - j] * table.exponent(level - j + 1))
                expanded.append(level - k)
            if expanded != [level for level, _, _ in finer.items]:
                _fail("partition-tilings", n, "one-step expansion disagrees with the finer tiling")


def check_closure_equivalence(table: BlockTable, n_max: int) -> None:
    """The closure construction and the block recurrence build the same prefix."""
    target = min(10_000, table.block_length(min(n_max + 1, 12)))
    by_closure = closure_prefix(table.spec, target)
    by_blocks = None
    n = 1
    while table.block_length(n) < target:
        n += 1
    by_blocks = table.block(n)[:target]
    if by_closure != by_blocks:
        _fail("closure-equivalence", target, "construction routes disagree")


ALL_CHECKS: tuple[tuple[str, Callable[[BlockTable, int], None]], ...] = (
    ("block-letters", check_block_letters),
    ("length-tables", check_length_tables),
    ("palindromic-prefixes", check_palindromic_prefixes),
    ("telescoping", check_telescoping),
    ("prefix-nesting", check_prefix_nesting),
    ("reversal-rotation", check_reversal_rotation),
    ("two-palindrome-split", check_two_palindrome_split),
    ("near-commutation", check_near_commutation),
    ("tail-reversal-link", check_tail_reversal_link),
    ("tail-letters", check_tail_letters),
    ("morphic-blocks", check_morphic_blocks),
    ("increment-words", check_increment_words),
    ("position-functions", check_position_functions),
    ("junction-products", check_junction_products),
    ("power-prefixes", check_power_prefixes),
    ("index-consistency", check_index_consistency),
    ("length-grids", check_length_grids),
    ("singular-forms", check_singular_forms),
    ("partition-tilings", check_partition_tilings),
    ("closure-equivalence", check_closure_equivalence),
)


def run_battery(table: BlockTable, n_max: int):
    """Run every check; yield (name, None) on success or (name, error) on the first failure inside it."""
    for name, fn in ALL_CHECKS:
        try:
            fn(table, n_max)
        except VerificationError as exc:
            yield name, exc
        else:
            yield name, None
