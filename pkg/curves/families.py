from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import sqrt

from arithmetic.modp import PrimeField, Residue


class BadPrimeError(ValueError):
    pass


class Family(Enum):
    C1 = "c1"  # y^2 = x^8 + c
    C2 = "c2"  # y^2 = x^7 - c*x


@dataclass(frozen=True)
class CurveFamily:
    family: Family
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c == 0:
            raise ValueError("c must be nonzero")

    def is_good(self, p: int) -> bool:
        if p < 3 or p % 2 == 0:
            return False
        if p == 3 and self.family is not Family.C1:
            return False
        return self.c.numerator % p != 0 and self.c.denominator % p != 0

    def check_good(self, p: int) -> None:
        if not self.is_good(p):
            raise BadPrimeError(f"{self.family.value} with c={self.c} has bad reduction at p={p}")

    def residue(self, F: PrimeField) -> Residue:
        self.check_good(F.p)
        return F.reduce(self.c)

    def affine_model(self, F: PrimeField) -> "AffineModel":
        return AffineModel.from_residue(self.family, self.residue(F), F.p)

    def __str__(self):
        if self.family is Family.C1:
            return f"y^2=x^8+({self.c})"
        return f"y^2=x^7-({self.c})x"


@dataclass(frozen=True)
class AffineModel:
    """y^2 = f(x) with f given by coefficients mod p, lowest degree first."""

    coeffs: tuple
    p: int

    def __post_init__(self):
        if self.degree not in (7, 8):
            raise ValueError(f"genus-3 model needs degree 7 or 8, got {self.degree}")
        if self.coeffs[-1] % self.p == 0:
            raise ValueError("leading coefficient vanishes mod p")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_residue(cls, family: Family, cbar: Residue, p: int) -> "AffineModel":
        if family is Family.C1:
            coeffs = [cbar % p] + [0] * 7 + [1]
        else:
            coeffs = [0, -cbar % p] + [0] * 5 + [1]
        return cls(tuple(coeffs), p)


@dataclass(frozen=True)
class TraceRecord:
    p: int
    t: int

    @property
    def a1(self) -> float:
        return -self.t / sqrt(self.p)


@dataclass(frozen=True)
class HasseWittMatrix:
    """3x3 matrix over F_p, rows/columns indexed 1..3 in the formulas, 0..2 here."""

    entries: tuple
    p: int

    @classmethod
    def from_rows(cls, rows, p: int) -> "HasseWittMatrix":
        return cls(tuple(tuple(int(w) % p for w in row) for row in rows), p)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def trace(self) -> Residue:
        return sum(self.entries[i][i] for i in range(3)) % self.p

    def support(self) -> tuple:
        return tuple(tuple(int(w != 0) for w in row) for row in self.entries)

    def charpoly(self) -> tuple:
        """Coefficients (c0, c1, c2, c3) of det(W - lambda*I) mod p, lowest degree first."""
        p = self.p
        w = self.entries
        minors = (
            w[0][0] * w[1][1] - w[0][1] * w[1][0]
            + w[0][0] * w[2][2] - w[0][2] * w[2][0]
            + w[1][1] * w[2][2] - w[1][2] * w[2][1]
        )
        det = (
            w[0][0] * (w[1][1] * w[2][2] - w[1][2] * w[2][1])
            - w[0][1] * (w[1][0] * w[2][2] - w[1][2] * w[2][0])
            + w[0][2] * (w[1][0] * w[2][1] - w[1][1] * w[2][0])
        )
        # det(W - xI) = -x^3 + tr x^2 - minors x + det
        return (det % p, -minors % p, self.trace(), p - 1)
