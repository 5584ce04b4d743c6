from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rmtk.maps import (
    GenusPolynomial,
    TraceWord,
    connected_correlator_coeffs,
    cumulant_check,
    gaussian_moment,
    genus_bound,
    heine_oracle,
    vacuum_genus_coeffs,
)


def test_tr_m4():
    assert dict(gaussian_moment(TraceWord((4,)))) == {1: 2, -1: 1}
    # N <Tr M^4> = 2N^2 + 1
    assert gaussian_moment(TraceWord((4,))) * GenusPolynomial({1: 1}) == GenusPolynomial({2: 2, 0: 1})


def test_tr_m2_and_odd():
    assert dict(gaussian_moment(TraceWord((2,)))) == {1: 1}
    assert dict(gaussian_moment(TraceWord((3,)))) == {}


def test_mu4_genus_table():
    assert connected_correlator_coeffs((4,), 0) == {(0, 0): 2, (1, 0): 1}


@pytest.mark.parametrize("k,cat", [(1, 1), (2, 2), (3, 5), (4, 14)])
def test_catalan(k, cat):
    assert connected_correlator_coeffs((2 * k,), 0)[(0, 0)] == cat


def test_catalan_recursion():
    cats = [1] + [connected_correlator_coeffs((2 * k,), 0)[(0, 0)] for k in range(1, 5)]
    for n in range(1, 5):
        assert cats[n] == sum(cats[i] * cats[n - 1 - i] for i in range(n))


def test_odd_word_vanishes():
    assert connected_correlator_coeffs((1,), 3) == {}


def test_cap():
    with pytest.raises(ValueError):
        gaussian_moment(TraceWord((10, 10)))


def test_bad_word():
    with pytest.raises(ValueError):
        TraceWord((0,))


@pytest.mark.parametrize("mu", [(2, 2), (4, 2)])
def test_cumulants(mu):
    assert cumulant_check(mu)


@pytest.mark.parametrize("k", range(5))
def test_heine_monic(k):
    coeffs = heine_oracle(k, None)
    assert len(coeffs) == k + 1 and coeffs[-1] == 1


def test_heine_values():
    assert heine_oracle(1, Fraction(3, 7)) == Fraction(3, 7)
    assert heine_oracle(2, None) == [-1, 0, 1]
    assert heine_oracle(3, None) == [0, -3, 0, 1]
    assert heine_oracle(4, None) == [3, 0, -6, 0, 1]


def test_heine_cap():
    with pytest.raises(ValueError):
        heine_oracle(5, 0)


def test_vacuum_genus():
    assert vacuum_genus_coeffs(1) == {0: Fraction(2, 4), 1: Fraction(1, 4)}
    assert vacuum_genus_coeffs(3)[2] == Fraction(15, 4)


words = st.lists(st.integers(1, 5), min_size=1, max_size=3).filter(lambda m: sum(m) % 2 == 0 and sum(m) <= 12)


@settings(max_examples=25, deadline=None)
@given(words)
def test_parity_and_genus_bound(mu):
    word = TraceWord(tuple(mu))
    poly = gaussian_moment(word, connected=True)
    exps = sorted(poly)
    assert all((e - exps[0]) % 2 == 0 for e in exps)
    gmax = genus_bound(word)
    for (g, _q), _c in connected_correlator_coeffs(tuple(mu), 0).items():
        assert 0 <= g <= gmax
