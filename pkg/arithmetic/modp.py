"""Modular arithmetic over prime fields F_p.

Everything here is a pure function of its arguments. Primality of ``p`` is
a precondition (the scan feeds sieved primes) and is not re-checked.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import config

Residue = int


class NoRootError(ValueError):
    pass


@dataclass(frozen=True)
class PrimeField:
    """F_p together with the constants of p - 1 = 2^v * s (s odd) and n = (p - 1)/2."""

    p: int
    n: int = field(init=False)
    v: int = field(init=False)
    s: int = field(init=False)

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError(f"{self.p} is not an odd prime")
        if self.p >= 2**62:
            raise ValueError(f"{self.p} exceeds the 2^62 prime limit")
        s, v = self.p - 1, 0
        while s % 2 == 0:
            s //= 2
            v += 1
        object.__setattr__(self, "n", (self.p - 1) // 2)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "s", s)

    def reduce(self, c) -> Residue:
        """Image of an integer or rational in F_p (num * den^-1)."""
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator of {c} vanishes mod {self.p}")
        return c.numerator * pow(c.denominator, -1, self.p) % self.p


def pow_mod(a: Residue, e: int, F: PrimeField) -> Residue:
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return pow(a, e, F.p)


def legendre(a: Residue, F: PrimeField) -> int:
    # Euler's criterion
    ls = pow(a, F.n, F.p)
    return -1 if ls == F.p - 1 else ls


def find_nonresidue(F: PrimeField) -> Residue:
    """Least alpha >= 2 with (alpha/p) = -1, found by testing 2, 3, 4, ..."""
    alpha = 2
    while legendre(alpha, F) != -1:
        alpha += 1
    return alpha


def _canonical(r: Residue, F: PrimeField) -> Residue:
    return min(r, F.p - r)


def sqrt_tonelli_shanks(a: Residue, F: PrimeField) -> Residue:
    """Square root of a mod p in [0, (p-1)/2]; raises NoRootError for non-residues."""
    p = F.p
    a %= p
    if a == 0:
        return 0
    if legendre(a, F) != 1:
        raise NoRootError(f"{a} has no square root mod {p}")
    if F.v == 1:
        return _canonical(pow(a, (p + 1) // 4, p), F)

    # generator of the 2-Sylow subgroup
    c = pow(find_nonresidue(F), F.s, p)
    x = pow(a, (F.s + 1) // 2, p)
    t = pow(a, F.s, p)
    m = F.v
    while t != 1:
        # least i with t^(2^i) = 1
        i, t2i = 0, t
        while t2i != 1:
            t2i = t2i * t2i % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return _canonical(x, F)


def sqrt_cipolla(a: Residue, F: PrimeField, rng_seed: int = config.SEED) -> Residue:
    """Cipolla-Lehmer square root: (t + w)^((p+1)/2) in F_p[w]/(w^2 - (t^2 - a))."""
    p = F.p
    a %= p
    if a == 0:
        return 0
    if legendre(a, F) != 1:
        raise NoRootError(f"{a} has no square root mod {p}")

    rng = random.Random(rng_seed)
    while True:
        t = rng.randrange(1, p)
        w2 = (t * t - a) % p
        if legendre(w2, F) == -1:
            break

    # (x0 + x1 w) arithmetic in F_p^2
    def mul(u, v):
        return (
            (u[0] * v[0] + u[1] * v[1] % p * w2) % p,
            (u[0] * v[1] + u[1] * v[0]) % p,
        )

    result, base, e = (1, 0), (t, 1), (p + 1) // 2
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return _canonical(result[0], F)


def sqrt_mod(a: Residue, F: PrimeField, strategy: str = config.SQRT_STRATEGY, seed: int = config.SEED) -> Residue:
    if strategy == "tonelli-shanks":
        return sqrt_tonelli_shanks(a, F)
    if strategy == "cipolla":
        return sqrt_cipolla(a, F, rng_seed=seed)
    raise ValueError(f"unknown square-root strategy {strategy!r}")


def kth_power_residue(a: Residue, k: int, F: PrimeField) -> bool:
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if a % F.p == 0:
        raise ValueError(f"{a} is divisible by {F.p}")
    return pow(a, (F.p - 1) // gcd(k, F.p - 1), F.p) == 1
