import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcldpc import difference_families as dfam
from qcldpc.difference_families import (
    Classification,
    DifferenceFamily,
    SkolemPairing,
    cdf_from_pairing,
    classify,
    hooked_skolem,
    pdf_search,
    perfect_family,
    skolem,
)
from qcldpc.errors import NonexistentError, ParameterError, ParseError, SearchBudgetExceeded
from tests.oracles import difference_counts, is_cdf, is_pdf


def test_hooked_order_three_pairs():
    p = hooked_skolem(3)
    assert p.pairs == ((2, 3), (5, 7), (1, 4))
    assert p.sequence() == [3, 1, 1, 3, 2, 0, 2]


def test_hooked_order_three_family():
    df = cdf_from_pairing(hooked_skolem(3))
    assert df.v == 19
    assert df.blocks == ((0, 1, 6), (0, 2, 10), (0, 3, 7))
    assert classify(df)[0] is Classification.CDF


@pytest.mark.parametrize("t", [t for t in range(2, 120) if t % 4 in (2, 3)])
def test_hooked_pairings_are_valid(t):
    p = hooked_skolem(t)
    assert p.hooked and p.is_valid()
    assert is_cdf(cdf_from_pairing(p).blocks, 6 * t + 1)


@pytest.mark.parametrize("t", [t for t in range(1, 120) if t % 4 in (0, 1)])
def test_skolem_pairings_give_perfect_families(t):
    p = skolem(t)
    assert not p.hooked and p.is_valid()
    df = cdf_from_pairing(p)
    assert is_pdf(df.blocks, df.v)
    assert classify(df)[0] is Classification.PDF


def test_small_skolem_is_lexicographically_smallest():
    # brute force every permutation-shaped sequence of order 4
    best = None
    for seq in itertools.permutations([1, 1, 2, 2, 3, 3, 4, 4]):
        ok = all(seq.index(i) + i < 8 and seq[seq.index(i) + i] == i for i in range(1, 5))
        if ok and (best is None or list(seq) < best):
            best = list(seq)
    assert skolem(4).sequence() == best == [1, 1, 3, 4, 2, 3, 2, 4]


@pytest.mark.parametrize("t", [1, 4, 5, 8, 9])
def test_skolem_rejects_wrong_residue_helpers(t):
    with pytest.raises(NonexistentError):
        hooked_skolem(t)
    with pytest.raises(NonexistentError):
        skolem(t + 2)


def test_pairing_check_reports_bad_difference():
    bad = SkolemPairing(order=2, pairs=((1, 2), (3, 4)))
    assert not bad.is_valid()
    with pytest.raises(ValueError, match="difference"):
        bad.check()


def test_pdf_search_small_cases():
    assert pdf_search(4, 1).blocks == ((0, 1, 4, 6),)
    assert pdf_search(3, 1).blocks == ((0, 1, 3),)


@pytest.mark.parametrize("t", [1, 4, 5, 6])
def test_pdf_search_is_perfect(t):
    df = pdf_search(4, t)
    assert df.v == 12 * t + 1
    assert is_pdf(df.blocks, df.v)


def test_pdf_search_is_deterministic():
    assert pdf_search(4, 7).blocks == pdf_search(4, 7).blocks


@pytest.mark.parametrize("t", [2, 3])
def test_no_k4_family_for_two_or_three_blocks(t):
    with pytest.raises(NonexistentError):
        pdf_search(4, t)
    # the exhaustive search agrees with the tabulated nonexistence
    with pytest.raises(NonexistentError, match="exhaustive"):
        pdf_search(4, t, check_domain=False)


@pytest.mark.parametrize("k,exc", [(6, NonexistentError), (7, NonexistentError), (5, ParameterError)])
def test_pdf_domain_limits(k, exc):
    with pytest.raises(exc):
        pdf_search(k, 4)


def test_k3_pdf_needs_residue_zero_or_one():
    with pytest.raises(NonexistentError):
        perfect_family(3, 6)


def test_budget_exceeded():
    with pytest.raises(SearchBudgetExceeded) as info:
        pdf_search(4, 9, budget=50)
    assert info.value.nodes >= 50


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("QCLDPC_SEARCH_BUDGET", "17")
    assert dfam.search_budget() == 17
    with pytest.raises(SearchBudgetExceeded):
        pdf_search(4, 9)
    monkeypatch.setenv("QCLDPC_SEARCH_BUDGET", "lots")
    with pytest.raises(ParameterError):
        dfam.search_budget()


def test_classify_rejects_non_family():
    df = DifferenceFamily(v=13, k=3, blocks=((0, 1, 2), (0, 3, 6)))
    cls, spectrum = classify(df)
    assert cls is Classification.NOT_CDF
    assert spectrum.counts() == difference_counts(df.blocks, 13)
    assert spectrum.counts()[1] == 2


def test_classify_cdf_that_is_not_perfect():
    # (13,3,1) CDF whose backward differences are not 1..6
    df = DifferenceFamily(v=13, k=3, blocks=((0, 1, 4), (0, 2, 8)))
    assert is_cdf(df.blocks, 13) and not is_pdf(df.blocks, 13)
    assert classify(df)[0] is Classification.CDF


def test_family_validation():
    with pytest.raises(ValueError):
        DifferenceFamily(v=14, k=3, blocks=((0, 1, 4), (0, 2, 8)))
    with pytest.raises(ValueError):
        DifferenceFamily(v=13, k=3, blocks=((0, 4, 1), (0, 2, 8)))


def test_text_round_trip():
    df = cdf_from_pairing(hooked_skolem(7))
    assert DifferenceFamily.from_text(df.to_text()) == df


def test_text_parse_errors_carry_line():
    with pytest.raises(ParseError, match="line 3"):
        DifferenceFamily.from_text("13 3 2\n0 1 4\n0 2\n")


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=400))
def test_any_order_gives_some_family(t):
    p = hooked_skolem(t) if t % 4 in (2, 3) else skolem(t)
    df = cdf_from_pairing(p)
    counts = difference_counts(df.blocks, df.v)
    assert set(counts.values()) == {1} and len(counts) == df.v - 1
