import pytest

from curves.families import CurveFamily, Family
from datamodules.prime_segments import sieve_segment
from datamodules.split_filters import FieldTag, SplitFilter, split_filter_for


def _powers(k, p):
    return {pow(x, k, p) for x in range(1, p)}


def test_default_filter_passes_everything():
    f = split_filter_for(FieldTag.Q, CurveFamily(Family.C1, 2))
    assert f.description == "Q"
    assert all(f.passes(p) for p in sieve_segment(3, 500).tolist())


def test_sqrt2_fourth_root_filter_brute_force():
    f = split_filter_for(FieldTag.Q_i_sqrt2_c14, CurveFamily(Family.C1, 2))
    for p in sieve_segment(3, 3000).tolist():
        expected = p % 8 == 1 and 2 in _powers(4, p)
        assert f.passes(p) == expected, p


def test_sqrt3_cube_root_filter_brute_force():
    f = split_filter_for(FieldTag.Q_i_sqrt3_c13, CurveFamily(Family.C2, 5))
    for p in sieve_segment(7, 3000).tolist():
        expected = p % 12 == 1 and 5 % p in _powers(3, p)
        assert f.passes(p) == expected, p


def test_minus_three_filters_brute_force():
    fam = CurveFamily(Family.C2, 2)
    f4 = split_filter_for(FieldTag.Q_i_minus3_14, fam)
    f6 = split_filter_for(FieldTag.Q_i_minus3_14_c16, fam)
    for p in sieve_segment(5, 3000).tolist():
        fourth = p % 4 == 1 and -3 % p in _powers(4, p)
        assert f4.passes(p) == fourth, p
        sixth = p % 12 == 1 and -3 % p in _powers(4, p) and 2 in _powers(6, p)
        assert f6.passes(p) == sixth, p


def test_rational_base():
    fam = CurveFamily(Family.C1, "1/16")
    f = split_filter_for(FieldTag.Q_i_sqrt2_c14, fam)
    # 1/16 is always a fourth power
    assert all(f.passes(p) == (p % 8 == 1) for p in sieve_segment(3, 1000).tolist())


def test_tag_from_string():
    f = split_filter_for("Q_i_minus3_14", CurveFamily(Family.C2, 1))
    assert f.modulus == 4
    with pytest.raises(ValueError):
        split_filter_for("Q_sqrt5", CurveFamily(Family.C2, 1))


def test_split_filter_validation():
    with pytest.raises(ValueError):
        SplitFilter(4, frozenset({2}))
    with pytest.raises(ValueError):
        SplitFilter(4, frozenset({1}), ((2, 0),))
    assert SplitFilter(8, frozenset({9})).allowed_classes == frozenset({1})


@pytest.mark.parametrize("c", [2, 5, "3/7"])
def test_cube_root_twisted_square_filter_brute_force(c):
    fam = CurveFamily(Family.C2, c)
    f = split_filter_for(FieldTag.Q_i_c13_sqrt_c_minus3, fam)
    for p in sieve_segment(5, 3000).tolist():
        if not fam.is_good(p):
            continue
        cp = fam.c.numerator * pow(fam.c.denominator, -1, p) % p
        squares = _powers(2, p)
        roots = [x for x in range(1, p) if x * x % p == p - 3]
        expected = p % 12 == 1 and cp in _powers(3, p) and all(cp * r % p in squares for r in roots)
        assert f.passes(p) == expected, p


def test_twisted_square_fails_without_a_root():
    f = SplitFilter(1, frozenset({0}), twisted_squares=((2, -3),))
    # -3 is not a square mod 5 or 11
    assert not f.passes(5)
    assert not f.passes(11)
    # 6^2 = -3 and 2 * 6 = -1 = 5^2 mod 13
    assert f.passes(13)
