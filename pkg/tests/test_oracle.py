"""Brute-force repetition scanning: the independent route the census is checked against."""

import pytest
from hypothesis import given, settings, strategies as st

from episturm.blocks import BlockTable
from episturm.directive import DirectiveSpec
from episturm.errors import NotAFactorError, RangeError, VerificationError
from episturm.oracle import (
    certified_scan,
    certify_prefix,
    generate_prefix,
    greatest_power_prefix,
    max_fractional_power,
    naive_scan,
    scan_powers,
    scan_powers_multi,
)
from episturm.powers import block_index, census
from episturm.words import RationalIndex

from conftest import ALL_NAMES


@pytest.fixture(scope="module")
def trib(tables):
    return tables["tribonacci"]


class TestScan:
    def test_known_squares(self):
        out = scan_powers("aabaabaa", 2, 1, 4)
        assert out.per_length[1] == frozenset({"a"})
        assert out.per_length[2] == frozenset()
        assert out.per_length[3] == frozenset({"aab", "aba", "baa"})
        assert out.per_length[4] == frozenset()
        assert scan_powers("abababab", 2, 2, 2).per_length[2] == frozenset({"ab", "ba"})

    def test_positions_are_sound(self):
        out = scan_powers("abababab", 3, 1, 2, record_positions=True)
        assert out.positions[2]["ab"] == (0, 2)
        for m, by_word in out.positions.items():
            for w, starts in by_word.items():
                for i in starts:
                    assert "abababab"[i : i + 3 * m] == w * 3

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_agrees_with_fully_naive_scan(self, tables, name):
        prefix = generate_prefix(tables[name], 600)[:600]
        for l in (2, 3, 4):
            fast = scan_powers(prefix, l, 1, 60)
            assert fast.per_length == naive_scan(prefix, l, 1, 60)

    def test_agrees_with_naive_over_the_full_length_range(self, trib):
        prefix = generate_prefix(trib, 1200)[:1200]
        for l in (2, 3, 4):
            m_max = len(prefix) // l
            fast = scan_powers(prefix, l, 1, m_max)
            assert fast.per_length == naive_scan(prefix, l, 1, m_max)

    def test_multi_shares_results(self, trib):
        prefix = generate_prefix(trib, 2000)
        multi = scan_powers_multi(prefix, (2, 3), 1, 40)
        assert multi[2].per_length == scan_powers(prefix, 2, 1, 40).per_length
        assert multi[3].per_length == scan_powers(prefix, 3, 1, 40).per_length

    def test_threaded_scan_matches_serial(self, trib):
        prefix = generate_prefix(trib, 5000)
        serial = scan_powers_multi(prefix, (2, 3), 1, 60)
        threaded = scan_powers_multi(prefix, (2, 3), 1, 60, jobs=3)
        for l in (2, 3):
            assert serial[l].per_length == threaded[l].per_length

    def test_rejects_bad_arguments(self):
        with pytest.raises(RangeError):
            scan_powers("abcabc", 1, 1, 2)
        with pytest.raises(RangeError):
            scan_powers("abcabc", 2, 3, 2)
        with pytest.raises(RangeError):
            scan_powers("abc", 2, 1, 2)

    @given(st.text(alphabet="ab", min_size=4, max_size=120), st.integers(min_value=2, max_value=4))
    @settings(max_examples=60, deadline=None)
    def test_random_words_match_naive(self, w, l):
        m_max = len(w) // l
        got = scan_powers(w, l, 1, m_max).per_length
        assert got == naive_scan(w, l, 1, m_max)


class TestCertificates:
    def test_certificate_records_its_evidence(self, trib):
        cert, scans = certified_scan(trib, 13, 3)
        assert cert.covered_m_max == 13
        assert "identical" in cert.method
        assert set(scans) == {2, 3}
        assert len(cert.word) == 504

    def test_certificate_is_stable_when_rechecked(self, trib):
        cert, scans = certified_scan(trib, 13, 2)
        bigger = generate_prefix(trib, 2 * len(cert.word))
        rescan = scan_powers(bigger, 2, 1, 13)
        assert rescan.per_length == scans[2].per_length

    def test_certify_prefix_shortcut(self, trib):
        assert certify_prefix(trib, 13, 2).word == certified_scan(trib, 13, 2)[0].word

    def test_finite_directive_cannot_certify(self):
        table = BlockTable(DirectiveSpec.parse("k=2; d=1,1,1,1"))
        with pytest.raises(RangeError):
            certified_scan(table, 5, 2)


class TestIndexMeasurement:
    def test_max_fractional_power_small(self):
        assert max_fractional_power("aaaa", "a") == RationalIndex(4, 0, 1)
        assert max_fractional_power("abababa", "ab") == RationalIndex(3, 1, 2)
        assert max_fractional_power("xabay", "ab") == RationalIndex(1, 1, 2)
        with pytest.raises(NotAFactorError):
            max_fractional_power("aaaa", "b")
        with pytest.raises(RangeError):
            max_fractional_power("aaaa", "")

    def test_greatest_power_prefix_small(self):
        assert greatest_power_prefix("abababc", "ab") == "ababab"
        assert greatest_power_prefix("abaab", "ab") == "aba"
        with pytest.raises(NotAFactorError):
            greatest_power_prefix("ba", "ab")

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_never_exceeds_the_closed_form_on_certified_prefixes(self, tables, certificates, name):
        table = tables[name]
        cert = certificates[name][0]
        for n in range(1, 7):
            measured = max_fractional_power(cert.word, table.block(n))
            assert measured <= block_index(table, n)


class TestSoundnessSample:
    def test_reported_bases_occur_literally(self, trib):
        prefix = generate_prefix(trib, 3000)
        result = scan_powers(prefix, 2, 1, 24, record_positions=True)
        for m, bases in result.per_length.items():
            for w in bases:
                starts = result.positions[m][w]
                assert starts, f"no recorded occurrence for {w!r}"
                assert prefix[starts[0] : starts[0] + 2 * m] == w * 2


@st.composite
def random_specs(draw):
    k = draw(st.integers(min_value=2, max_value=4))
    pre = draw(st.lists(st.integers(min_value=1, max_value=3), min_size=0, max_size=4))
    per = draw(st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=4))
    return DirectiveSpec.make(k, tuple(pre), tuple(per))


class TestRandomizedCensusAgreement:
    @given(random_specs(), st.integers(min_value=2, max_value=3))
    @settings(max_examples=25, deadline=None)
    def test_census_matches_oracle_on_random_directives(self, spec, l):
        table = BlockTable(spec)
        m_max = table.block_length(3)
        _, scans = certified_scan(table, m_max, l)
        for m in range(1, m_max + 1):
            assert frozenset(census(table, m, l).witnesses) == scans[l].per_length[m]
