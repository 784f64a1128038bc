"""Prime filters selecting primes that split completely in a number field."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from arithmetic.modp import NoRootError, PrimeField, kth_power_residue, legendre, sqrt_mod
from curves.families import CurveFamily


class FieldTag(Enum):
    Q = "Q"
    Q_i_sqrt2_c14 = "Q_i_sqrt2_c14"  # Q(i, sqrt 2, c^(1/4))
    Q_i_sqrt3_c13 = "Q_i_sqrt3_c13"  # Q(i, sqrt 3, c^(1/3))
    Q_i_minus3_14 = "Q_i_minus3_14"  # Q(i, (-3)^(1/4))
    Q_i_minus3_14_c16 = "Q_i_minus3_14_c16"  # Q(i, (-3)^(1/4), c^(1/6))
    Q_i_c13_sqrt_c_minus3 = "Q_i_c13_sqrt_c_minus3"  # Q(i, c^(1/3), sqrt(c sqrt(-3)))


@dataclass(frozen=True)
class SplitFilter:
    modulus: int = 1
    allowed_classes: frozenset = frozenset({0})
    power_conditions: tuple = field(default=())
    description: str = "Q"
    # (base, radicand): base * sqrt(radicand) must be a nonzero square
    twisted_squares: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "allowed_classes", frozenset(r % self.modulus for r in self.allowed_classes))
        for r in self.allowed_classes:
            if gcd(r, self.modulus) != 1:
                raise ValueError(f"residue {r} is not coprime to modulus {self.modulus}")
        for base, k in self.power_conditions:
            if k <= 0:
                raise ValueError(f"power condition ({base}, {k}) needs k > 0")

    def passes(self, p: int) -> bool:
        if p % self.modulus not in self.allowed_classes:
            return False
        if not self.power_conditions and not self.twisted_squares:
            return True
        F = PrimeField(p)
        for base, k in self.power_conditions:
            b = F.reduce(Fraction(base))
            if b == 0 or not kth_power_residue(b, k, F):
                return False
        for base, radicand in self.twisted_squares:
            b = F.reduce(Fraction(base))
            try:
                root = sqrt_mod(F.reduce(Fraction(radicand)), F)
            except NoRootError:
                return False
            if b == 0 or root == 0 or legendre(b * root % F.p, F) != 1:
                return False
        return True


def split_filter_for(tag, fam: CurveFamily) -> SplitFilter:
    tag = FieldTag(tag)
    c = fam.c
    if tag is FieldTag.Q:
        return SplitFilter()
    if tag is FieldTag.Q_i_sqrt2_c14:
        return SplitFilter(8, frozenset({1}), ((c, 4),), f"Q(i,sqrt2,({c})^(1/4))")
    if tag is FieldTag.Q_i_sqrt3_c13:
        return SplitFilter(12, frozenset({1}), ((c, 3),), f"Q(i,sqrt3,({c})^(1/3))")
    if tag is FieldTag.Q_i_minus3_14:
        return SplitFilter(4, frozenset({1}), ((-3, 4),), "Q(i,(-3)^(1/4))")
    if tag is FieldTag.Q_i_c13_sqrt_c_minus3:
        # p = 1 mod 4 makes -1 a square, so either root of -3 gives the same answer
        return SplitFilter(
            12, frozenset({1}), ((c, 3),), f"Q(i,({c})^(1/3),sqrt(({c})sqrt(-3)))", twisted_squares=((c, -3),)
        )
    return SplitFilter(
        12, frozenset({1}), ((-3, 4), (c, 6)), f"Q(i,(-3)^(1/4),({c})^(1/6))"
    )
