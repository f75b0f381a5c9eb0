import math
from fractions import Fraction

import mpmath
import pytest

from cusick.bitword import alternating_word
from cusick.bounds import (
    a_tilde,
    a_weight,
    mean_weight_lower_bound,
    min_weight,
    min_weight_brute,
    pair_lower_bound_via_residues,
    params_for,
    theorem_lower_bound,
    verify_main_theorem,
)
from cusick.delta import pair_sum
from cusick.dyadic import Dyadic

EPSILONS = [0.9, 0.6, 0.5, 0.2, 0.1, 0.01]


def float_chain(eps):
    """The parameter chain evaluated naively in double precision."""
    N = math.floor(-math.log2(eps)) + 1
    m = math.floor(6 * N / eps) + 1
    M = math.floor(-2 * m * m * math.log(eps / (3 * m))) + 1
    return N, m, M


def test_weights():
    assert a_weight(0) == Dyadic(3, 2)
    assert a_tilde(0) == Dyadic(3, 1)
    assert a_tilde(1) == a_tilde(-1) == Dyadic(11, 3)
    for l in range(-40, 41):
        assert a_tilde(l) >= a_weight(l)
        assert a_weight(l) == a_weight(-l)


def test_min_weight_examples():
    assert min_weight(0, 7) == Dyadic(3, 2)
    assert min_weight(6, 7) == Dyadic(7, 3)
    with pytest.raises(ValueError):
        min_weight(7, 7)


def test_min_weight_brute_force():
    for m in range(1, 65):
        for b in range(m):
            assert min_weight(b, m) == min_weight_brute(b, m)


def test_residue_bound_examples():
    assert pair_lower_bound_via_residues(12345, 1) == Dyadic(3, 2)
    assert pair_lower_bound_via_residues(3, 2) == Dyadic(7, 3)
    assert pair_sum(3)[2] >= Dyadic(7, 3)


def test_residue_bound_below_pair_sum():
    for t in list(range(1, 300)) + [alternating_word(30), 0xABCDEF12345]:
        total = pair_sum(t)[2]
        for m in (1, 2, 3, 5, 8, 13):
            assert pair_lower_bound_via_residues(t, m) <= total


@pytest.mark.parametrize("eps,N,m", [(0.5, 2, 25), (0.6, 1, 11)])
def test_params_examples(eps, N, m):
    p = params_for(eps)
    assert (p.N, p.m) == (N, m)
    assert (p.N, p.m, p.M) == float_chain(eps)
    assert p.C == 2 * p.M + 1


@pytest.mark.parametrize("eps", EPSILONS)
def test_params_chain(eps):
    p = params_for(eps)
    assert (p.N, p.m, p.M) == float_chain(eps)
    a, b, tail = p.error_terms()
    third = Fraction(repr(eps)) / 3
    assert a < third and b < third
    assert tail < mpmath.mpf(third.numerator) / third.denominator
    assert theorem_lower_bound(p) > 1 - eps
    # M is the least admissible value
    assert p.m * math.exp(-(p.M - 1) / (2 * p.m**2)) >= eps / 3 * (1 - 1e-12)


def test_params_accepts_exact_inputs():
    assert params_for("3/5") == params_for(0.6) == params_for(Fraction(3, 5))
    for bad in (0, 1, -0.5, 1.5):
        with pytest.raises(ValueError):
            params_for(bad)


def test_lower_bound_limit():
    vals = [theorem_lower_bound(params_for(e)) for e in (0.5, 0.1, 0.01)]
    assert vals == sorted(vals)
    assert vals[-1] > 0.99


@pytest.mark.parametrize("m,N", [(25, 2), (11, 1), (9, 9), (40, 5)])
def test_mean_weight_lower_bound(m, N):
    exact = sum((min_weight(b, m) for b in range(m)), Dyadic(0))
    assert mean_weight_lower_bound(m, N) <= exact


def test_mean_weight_rejects_large_N():
    with pytest.raises(ValueError):
        mean_weight_lower_bound(5, 6)


def test_verify_theorem_hypothesis_unmet():
    r = verify_main_theorem(5, 0.99)
    assert not r.hypothesis_met and r.holds is None
    assert r.pair_sum >= Fraction(15, 16)
    assert not r.violated


def test_verify_theorem_small_epsilon_requirement_reported():
    p = params_for(0.9)
    r = verify_main_theorem(alternating_word(p.C - 1), 0.9)
    assert not r.hypothesis_met
    r = verify_main_theorem(alternating_word(p.C), 0.9)
    assert r.hypothesis_met and r.holds
    assert r.residue_bound <= r.pair_sum
    assert r.psi_deviation <= r.psi_bound
