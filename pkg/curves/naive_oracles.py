"""Brute-force ground truth for small primes.

Only modp-level arithmetic is used here so the fast path can be checked
against something independent of it.
"""

import numpy as np

from arithmetic.modp import PrimeField, Residue, legendre
from curves.families import HasseWittMatrix


def _quadratic_character_table(p: int) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    is_square = np.zeros(p, dtype=bool)
    is_square[x * x % p] = True
    chi = np.where(is_square, 1, -1).astype(np.int64)
    chi[0] = 0
    return chi


def naive_count(f, F: PrimeField) -> int:
    """#C(F_p) on the smooth model of y^2 = f(x), f of degree 7 or 8."""
    p = F.p
    if p >= 2**24:
        raise ValueError(f"p={p} is beyond oracle scale")
    x = np.arange(p, dtype=np.int64)
    values = np.zeros(p, dtype=np.int64)
    for coeff in reversed(f.coeffs):
        values = (values * x + coeff % p) % p
    affine = p + int(_quadratic_character_table(p)[values].sum())

    if f.degree == 7:
        at_infinity = 1
    else:
        at_infinity = 1 + legendre(f.coeffs[-1] % p, F)
    return affine + at_infinity


def naive_binom_mod(n: int, r: int, F: PrimeField) -> Residue:
    if not 0 <= r <= n < F.p:
        raise ValueError(f"need 0 <= r <= n < p, got n={n}, r={r}, p={F.p}")
    p = F.p
    num = den = 1
    for k in range(1, r + 1):
        num = num * (n - r + k) % p
        den = den * k % p
    return num * pow(den, -1, p) % p


def naive_hasse_witt(f, F: PrimeField) -> HasseWittMatrix:
    """[f^n_{ip-j}] for 1 <= i, j <= 3, from the expanded power f(x)^n mod p."""
    p, n = F.p, F.n
    if p >= 2**14:
        raise ValueError(f"p={p} is beyond oracle scale")
    # coefficients above 3p - 1 never reach the entries we read
    top = 3 * p
    coeffs = np.array([c % p for c in f.coeffs], dtype=np.int64)
    power = np.array([1], dtype=np.int64)
    for _ in range(n):
        power = np.convolve(power, coeffs)[:top] % p

    W = np.zeros((3, 3), dtype=np.int64)
    for i in range(1, 4):
        for j in range(1, 4):
            k = i * p - j
            if k < len(power):
                W[i - 1, j - 1] = power[k]
    return HasseWittMatrix.from_rows(W.tolist(), p)
