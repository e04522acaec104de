"""Factor partitions: singular classes, their invariants, and ground truth."""

import pytest

from episturm.errors import InvariantViolation, RangeError
from episturm.singular import classify_factor, factor_partition, singular_window, singular_words
from episturm.words import factors_of_length, reversal, strip_suffix

from conftest import ALL_NAMES


@pytest.fixture(scope="module")
def trib(tables):
    return tables["tribonacci"]


class TestKnownValues:
    def test_level_one(self, trib):
        assert singular_words(trib, 1, 1) == frozenset({"aa"})
        assert singular_words(trib, 1, 2) == frozenset({"ac", "ca"})

    def test_level_two(self, trib):
        assert singular_words(trib, 2, 1) == frozenset({"abab", "baba"})
        assert singular_words(trib, 2, 2) == frozenset({"aaba", "abaa", "baab"})

    def test_windows(self, trib):
        assert singular_window(trib, 2, 1) == "ababa"
        assert singular_window(trib, 2, 2) == "abaaba"

    def test_bounds(self, trib):
        with pytest.raises(RangeError):
            singular_window(trib, 0, 1)
        with pytest.raises(RangeError):
            singular_window(trib, 2, 0)
        with pytest.raises(RangeError):
            singular_window(trib, 2, 3)
        with pytest.raises(RangeError):
            factor_partition(trib, 0)


class TestShallowLevelForms:
    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_window_agrees_with_power_prefix_form(self, tables, name):
        # for levels at or below the kind, the window has a closed alternate form
        table = tables[name]
        k = table.spec.k
        for r in range(1, k):
            for n in range(1, r + 1):
                window = singular_window(table, n, r)
                pp = table.power_prefix(n)
                if n < r:
                    joint = table.spec.alphabet[(n - r) % k]
                    alt = pp + joint + pp
                else:
                    alt = strip_suffix(pp, table.palindromic_prefix(0)) + pp
                assert window == alt


class TestPartitionInvariants:
    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_classes_disjoint_sized_and_reversal_closed(self, tables, name):
        table = tables[name]
        k = table.spec.k
        for n in range(1, 7):
            part = factor_partition(table, n)
            size = table.block_length(n)
            assert len(part.rotations) == size
            seen: set = set()
            for r in range(1, k):
                cls = part.singular[r]
                assert len(cls) == size - table.palindromic_prefix_length(n - r) - 1
                assert not (cls & part.rotations)
                assert not (cls & seen)
                seen |= cls
                assert {reversal(w) for w in cls} == set(cls)
            assert {reversal(w) for w in part.rotations} == set(part.rotations)
            assert part.total_count() == (k - 1) * size + 1
            assert part.classes == k

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_union_equals_all_factors_of_that_length(self, tables, name):
        # ground truth for levels up to 8, against a prefix that provably
        # contains every factor of the matching length (checked by count)
        table = tables[name]
        k = table.spec.k
        for n in range(1, 9):
            part = factor_partition(table, n)
            union = set(part.rotations)
            for cls in part.singular.values():
                union |= cls
            host = table.block(n + k)
            actual = factors_of_length(host, table.block_length(n))
            assert len(actual) == (k - 1) * table.block_length(n) + 1, "host prefix too short"
            assert actual == union

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_positive_separation(self, tables, certificates, name):
        # consecutive occurrences of a singular word never overlap or touch
        table = tables[name]
        host = certificates[name][0].word
        for n in range(1, 7):
            part = factor_partition(table, n)
            for cls in part.singular.values():
                for w in cls:
                    prev = host.find(w)
                    pos = host.find(w, prev + 1)
                    while pos != -1:
                        assert pos - prev > len(w)
                        prev, pos = pos, host.find(w, pos + 1)

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_no_singular_squares(self, tables, certificates, name):
        table = tables[name]
        host = certificates[name][0].word
        for n in range(1, 7):
            part = factor_partition(table, n)
            for cls in part.singular.values():
                for w in cls:
                    assert host.find(w + w) == -1


class TestClassify:
    def test_classify_by_class(self, trib):
        part = factor_partition(trib, 2)
        assert classify_factor(part, "abac") == 0
        assert classify_factor(part, "caba") == 0
        assert classify_factor(part, "abab") == 1
        assert classify_factor(part, "abaa") == 2
        assert classify_factor(part, "bbbb") is None

    def test_classify_length_guard(self, trib):
        part = factor_partition(trib, 2)
        with pytest.raises(RangeError):
            classify_factor(part, "abc")

    def test_not_a_factor_examples(self, trib):
        # the two-letter factor set misses bb entirely
        part = factor_partition(trib, 1)
        assert classify_factor(part, "bb") is None
