from math import comb

import pytest

from arithmetic.modp import PrimeField
from curves.families import AffineModel, Family
from curves.naive_oracles import naive_binom_mod, naive_count, naive_hasse_witt


def test_naive_count_small_example():
    F = PrimeField(3)
    model = AffineModel.from_residue(Family.C1, 1, 3)
    assert naive_count(model, F) == 4


def test_naive_count_c2_at_five():
    # over F_5, x^7 - x = x^3 - x pointwise
    F = PrimeField(5)
    model = AffineModel.from_residue(Family.C2, 1, 5)
    assert naive_count(model, F) == 8


@pytest.mark.parametrize("p", [7, 11, 19, 23, 31, 43])
@pytest.mark.parametrize("c", [1, 2, 5])
def test_odd_model_has_zero_trace_when_minus_one_is_nonsquare(p, c):
    model = AffineModel.from_residue(Family.C2, c, p)
    assert naive_count(model, PrimeField(p)) == p + 1


def test_naive_count_rejects_large_p():
    p = 2**24 + 1
    with pytest.raises(ValueError):
        naive_count(AffineModel.from_residue(Family.C1, 1, p), PrimeField(p))


def test_naive_binom_mod():
    F = PrimeField(13)
    assert naive_binom_mod(6, 3, F) == 7
    for n in range(13):
        for r in range(n + 1):
            assert naive_binom_mod(n, r, F) == comb(n, r) % 13


@pytest.mark.parametrize("n, r", [(3, 4), (13, 2), (5, -1)])
def test_naive_binom_mod_range(n, r):
    with pytest.raises(ValueError):
        naive_binom_mod(n, r, PrimeField(13))


def test_naive_hasse_witt_at_five():
    W = naive_hasse_witt(AffineModel.from_residue(Family.C2, 1, 5), PrimeField(5))
    assert W.entries == ((0, 0, 1), (0, 3, 0), (1, 0, 0))
    assert W.trace() == 3


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 37, 41])
def test_hasse_witt_trace_matches_point_count(family, p):
    F = PrimeField(p)
    for c in (1, 2, 3):
        if c % p == 0:
            continue
        model = AffineModel.from_residue(family, c, p)
        t = p + 1 - naive_count(model, F)
        assert (t - naive_hasse_witt(model, F).trace()) % p == 0


def test_naive_hasse_witt_rejects_large_p():
    p = 16411
    with pytest.raises(ValueError):
        naive_hasse_witt(AffineModel.from_residue(Family.C1, 1, p), PrimeField(p))
