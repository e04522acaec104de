"""Word primitives: rotations, palindromes, stripping, Z-array, rational exponents."""

import pytest
from hypothesis import given, strategies as st

from episturm.errors import CancellationError, RangeError
from episturm.words import (
    RationalIndex,
    conjugacy_class,
    conjugate,
    factors_of_length,
    is_palindrome,
    is_primitive,
    reversal,
    shorten,
    strip_prefix,
    strip_suffix,
    z_array,
)

WORDS = st.text(alphabet="abc", min_size=0, max_size=40)
NONEMPTY = st.text(alphabet="abc", min_size=1, max_size=40)


class TestBasics:
    def test_reversal(self):
        assert reversal("abac") == "caba"
        assert reversal("") == ""

    def test_palindrome(self):
        assert is_palindrome("abacaba")
        assert is_palindrome("")
        assert not is_palindrome("abac")

    def test_conjugate(self):
        assert conjugate("abcd", 0) == "abcd"
        assert conjugate("abcd", 1) == "bcda"
        assert conjugate("abcd", 3) == "dabc"

    def test_conjugate_range_errors(self):
        with pytest.raises(RangeError):
            conjugate("abcd", 4)
        with pytest.raises(RangeError):
            conjugate("abcd", -1)
        with pytest.raises(RangeError):
            conjugate("", 0)

    def test_conjugacy_class_primitive(self):
        assert conjugacy_class("aab") == ["aab", "aba", "baa"]

    def test_conjugacy_class_power(self):
        assert conjugacy_class("abab") == ["abab", "baba"]
        assert conjugacy_class("aaa") == ["aaa"]

    def test_is_primitive(self):
        assert is_primitive("a")
        assert is_primitive("ab")
        assert is_primitive("aab")
        assert not is_primitive("abab")
        assert not is_primitive("aaa")
        with pytest.raises(RangeError):
            is_primitive("")

    def test_strip_prefix(self):
        assert strip_prefix("abacaba", "aba") == "caba"
        assert strip_prefix("abac", "") == "abac"
        with pytest.raises(CancellationError):
            strip_prefix("abac", "ac")

    def test_strip_suffix(self):
        assert strip_suffix("abacaba", "aba") == "abac"
        assert strip_suffix("abac", "") == "abac"
        with pytest.raises(CancellationError):
            strip_suffix("abac", "ab")

    def test_factors_of_length(self):
        assert factors_of_length("abab", 2) == {"ab", "ba"}
        assert factors_of_length("abab", 4) == {"abab"}
        assert factors_of_length("abab", 5) == set()
        assert factors_of_length("abab", 0) == {""}
        with pytest.raises(RangeError):
            factors_of_length("abab", -1)

    def test_shorten_passthrough_and_elision(self):
        assert shorten("short") == "short"
        long = "x" * 100
        out = shorten(long)
        assert len(out) < 100 and "(len 100)" in out


class TestZArray:
    def test_known(self):
        assert z_array("aaaaa") == [5, 4, 3, 2, 1]
        assert z_array("aabaab") == [6, 1, 0, 3, 1, 0]
        assert z_array("") == []

    @staticmethod
    def brute(w: str) -> list[int]:
        out = []
        for i in range(len(w)):
            j = 0
            while i + j < len(w) and w[j] == w[i + j]:
                j += 1
            out.append(j)
        if out:
            out[0] = len(w)
        return out

    @given(WORDS)
    def test_matches_brute_force(self, w):
        assert z_array(w) == self.brute(w)


class TestRotationProperties:
    @given(NONEMPTY, st.integers(min_value=0, max_value=39))
    def test_conjugate_is_involution_through_length(self, w, j):
        j %= len(w)
        assert conjugate(conjugate(w, j), (len(w) - j) % len(w)) == w

    @given(NONEMPTY)
    def test_class_size_divides_length(self, w):
        cls = conjugacy_class(w)
        assert len(w) % len(cls) == 0
        assert is_primitive(w) == (len(cls) == len(w))


class TestRationalIndex:
    def test_normalization(self):
        r = RationalIndex(2, 7, 4)
        assert (r.whole, r.num, r.den) == (3, 3, 4)

    def test_equality_by_fields(self):
        assert RationalIndex(2, 1, 4) == RationalIndex(2, 1, 4)
        assert RationalIndex(2, 1, 4) != RationalIndex(2, 1, 8)

    def test_ordering_is_by_value(self):
        assert RationalIndex(2, 1, 4) < RationalIndex(2, 3, 4)
        assert RationalIndex(2, 1, 4) <= RationalIndex(2, 2, 8)
        assert RationalIndex(2, 2, 8) >= RationalIndex(2, 1, 4)
        assert RationalIndex(3, 0, 1) > RationalIndex(2, 3, 4)

    def test_as_fraction_and_str(self):
        from fractions import Fraction

        assert RationalIndex(2, 3, 4).as_fraction() == Fraction(11, 4)
        assert str(RationalIndex(2, 3, 4)) == "2 + 3/4"
        assert str(RationalIndex(3, 0, 7)) == "3"

    def test_bad_denominator(self):
        with pytest.raises(RangeError):
            RationalIndex(1, 0, 0)
