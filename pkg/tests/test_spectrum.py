import pytest
from hypothesis import given, settings, strategies as st

from cusick.bitword import reflect
from cusick.dyadic import Dyadic
from cusick.spectrum import argmax_set, phi, phi_naive


def as_dict(s):
    return dict(s.items())


def test_base_cases():
    assert as_dict(phi(1)) == {0: Dyadic(1)}
    assert as_dict(phi(2)) == {0: Dyadic(1)}
    assert as_dict(phi(3)) == {-1: Dyadic(1, 1), 1: Dyadic(1, 1)}


def test_naive_examples():
    assert phi_naive(1, 0) == 1
    assert phi_naive(3, 1) == Dyadic(1, 1)
    assert phi_naive(3, 2) == 0
    with pytest.raises(ValueError):
        phi_naive(0, 0)
    with pytest.raises(ValueError):
        phi(0)


def test_argmax_examples():
    assert argmax_set(phi(1)) == {0}
    assert argmax_set(phi(3)) == {-1, 1}
    s = phi(149)
    assert 2 in argmax_set(s)
    assert all(s[2] > s[k] for k in (-1, 0, 1))


def test_phi_149_values():
    # hand-checked by the naive recursion
    s = phi(149)
    assert s[2] == Dyadic(3, 4)
    assert s[0] == Dyadic(11, 6)
    assert all(phi_naive(149, k) == s[k] for k in range(-9, 10))


def test_oracle_equivalence_small():
    for t in range(1, 1 << 10):
        s = phi(t)
        nu = t.bit_length() - 1
        for k in range(-nu - 1, nu + 2):
            assert s[k] == phi_naive(t, k)


def test_records_are_sorted():
    recs = phi(1234567).to_records()
    ks = [r[0] for r in recs]
    assert ks == sorted(ks)
    assert recs[0][1].count("/2^") == 1


def test_large_word_mass():
    t = (1 << 700) + 0xDEADBEEF12345
    s = phi(t)
    assert s.total() == 1
    lo, hi = s.support()
    assert -700 <= lo and hi <= 700


words = st.integers(1, 1 << 200)


@given(words)
@settings(max_examples=60)
def test_normalization_and_support(t):
    s = phi(t)
    assert s.total() == 1
    nu = t.bit_length() - 1
    lo, hi = s.support()
    assert -nu <= lo <= hi <= nu
    assert all(v > 0 for _, v in s.items())


@given(words)
@settings(max_examples=60)
def test_symmetry(t):
    assert as_dict(phi(reflect(t))) == as_dict(phi(t).mirrored())


@given(words)
@settings(max_examples=60)
def test_doubling(t):
    assert as_dict(phi(2 * t)) == as_dict(phi(t))


@given(words)
@settings(max_examples=60)
def test_odd_recurrence(t):
    a, b, odd = phi(t), phi(t + 1), phi(2 * t + 1)
    lo = min(a.support()[0], b.support()[0]) - 2
    hi = max(a.support()[1], b.support()[1]) + 2
    for k in range(lo, hi + 1):
        assert odd[k] == (a[k - 1] + b[k + 1]).halve()
