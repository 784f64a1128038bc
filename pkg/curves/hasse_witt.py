"""Frobenius traces of y^2 = x^8 + c and y^2 = x^7 - cx from the Hasse-Witt matrix.

The diagonal of W_p only ever needs binom(n, r) with r in {n/2, n/4, n/6}
(and their mirrors n - r), each of which reduces to a sign-normalized
representation p = x^2 + d*y^2. One square root and one half-gcd per prime.
"""

import time
from math import isqrt
from typing import Iterable, Optional

import numpy as np

import config
from arithmetic.modp import PrimeField, Residue, pow_mod
from arithmetic.quadratic_forms import FormSolution, solve_form_normalized
from curves.families import (
    AffineModel,
    BadPrimeError,
    CurveFamily,
    Family,
    HasseWittMatrix,
    TraceRecord,
)
from curves.naive_oracles import naive_count


class UnsupportedResidueClassError(ValueError):
    pass


def _require(F: PrimeField, modulus: int, name: str) -> None:
    if F.p % modulus != 1:
        raise UnsupportedResidueClassError(f"{name} needs p = 1 mod {modulus}, got p={F.p}")


def binom_half(
    F: PrimeField,
    form: Optional[FormSolution] = None,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> Residue:
    """binom(2m, m) mod p for p = 4m + 1 = x^2 + y^2."""
    _require(F, 4, "binom_half")
    m = (F.p - 1) // 4
    form = form or solve_form_normalized(1, F, strategy=strategy, seed=seed)
    sign = -1 if m % 2 == 0 else 1
    return 2 * sign * form.x % F.p


def binom_quarter(
    F: PrimeField,
    form: Optional[FormSolution] = None,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> Residue:
    """binom(4m, m) mod p for p = 8m + 1 = x^2 + 2y^2."""
    _require(F, 8, "binom_quarter")
    m = (F.p - 1) // 8
    form = form or solve_form_normalized(2, F, strategy=strategy, seed=seed)
    sign = -1 if m % 2 == 0 else 1
    return 2 * sign * form.x % F.p


def binom_sixth(
    F: PrimeField,
    form: Optional[FormSolution] = None,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> Residue:
    """binom(6m, m) mod p for p = 12m + 1 = x^2 + y^2."""
    _require(F, 12, "binom_sixth")
    m = (F.p - 1) // 12
    form = form or solve_form_normalized(1, F, strategy=strategy, seed=seed)
    eps = 0 if form.x % 3 == 0 else 1
    sign = 1 if (m + eps) % 2 == 0 else -1
    return 2 * sign * form.x % F.p


def hw_entry_index(i: int, j: int, d: int, e: int, F: PrimeField) -> Optional[int]:
    """r_ij = ((2i - e)n + i - j)/(d - e), or None when it is not an integer."""
    if (d, e) not in ((8, 0), (7, 1)):
        raise ValueError(f"unsupported model degrees (d, e)=({d}, {e})")
    num = (2 * i - e) * F.n + i - j
    if num % (d - e):
        return None
    return num // (d - e)


def _lemma_binom(n: int, r: int, F: PrimeField, forms: dict, strategy: str, seed: int) -> Residue:
    """binom(n, r) mod p for r in {0, n/2, n/4, 3n/4, n/6, 5n/6, n}."""
    r = min(r, n - r)
    if r == 0:
        return 1
    if 2 * r == n:
        return binom_half(F, forms.get(1), strategy=strategy, seed=seed)
    if 4 * r == n:
        return binom_quarter(F, forms.get(2), strategy=strategy, seed=seed)
    if 6 * r == n:
        return binom_sixth(F, forms.get(1), strategy=strategy, seed=seed)
    raise UnsupportedResidueClassError(f"binom({n}, {r}) mod {F.p} has no fast lemma")


def _supported(family: Family, p: int) -> bool:
    if family is Family.C1:
        return p % 8 != 3
    return p % 12 != 5


def hw_matrix(
    fam: CurveFamily,
    F: PrimeField,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> HasseWittMatrix:
    cbar = fam.residue(F)
    if not _supported(fam.family, F.p):
        raise UnsupportedResidueClassError(
            f"Hasse-Witt matrix of {fam} needs a lemma-free binomial at p={F.p}"
        )
    if fam.family is Family.C1:
        d, e, a, b = 8, 0, 1, cbar
    else:
        d, e, a, b = 7, 1, 1, -cbar % F.p

    forms = {}
    if F.p % 4 == 1:
        forms[1] = solve_form_normalized(1, F, strategy=strategy, seed=seed)
    if F.p % 8 == 1:
        forms[2] = solve_form_normalized(2, F, strategy=strategy, seed=seed)

    n = F.n
    rows = [[0] * 3 for _ in range(3)]
    for i in range(1, 4):
        for j in range(1, 4):
            r = hw_entry_index(i, j, d, e, F)
            if r is None or not 0 <= r <= n:
                continue
            binom = _lemma_binom(n, r, F, forms, strategy, seed)
            rows[i - 1][j - 1] = binom * pow_mod(a, r, F) * pow_mod(b, n - r, F)
    return HasseWittMatrix.from_rows(rows, F.p)


def lift_trace(m: Residue, p: int) -> int:
    """Unique t = m mod p with |t| <= floor(6 sqrt p); needs p > 2 floor(6 sqrt p)."""
    bound = isqrt(36 * p)
    if p <= 2 * bound:
        raise ValueError(f"p={p} is too small for a unique lift")
    return (m + bound) % p - bound


def _naive_trace(family: Family, c: Residue, F: PrimeField) -> int:
    model = AffineModel.from_residue(family, c, F.p)
    return F.p + 1 - naive_count(model, F)


def _check_residue(c: Residue, F: PrimeField) -> Residue:
    c %= F.p
    if c == 0:
        raise BadPrimeError(f"c vanishes mod p={F.p}")
    return c


def trace_c1(
    c: Residue,
    F: PrimeField,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> int:
    c = _check_residue(c, F)
    p, n = F.p, F.n
    if p < config.LIFT_THRESHOLD:
        return _naive_trace(Family.C1, c, F)

    if p % 8 == 1:
        form1 = solve_form_normalized(1, F, strategy=strategy, seed=seed)
        form2 = solve_form_normalized(2, F, strategy=strategy, seed=seed)
        b2 = binom_half(F, form1)
        b4 = binom_quarter(F, form2)
        m = (
            b2 * pow(c, n // 2, p)
            + b4 * pow(c, n // 4, p)
            + b4 * pow(c, 3 * n // 4, p)
        )
    elif p % 8 == 5:
        m = binom_half(F, strategy=strategy, seed=seed) * pow(c, n // 2, p)
    else:
        return 0
    return lift_trace(m % p, p)


def trace_c2(
    c: Residue,
    F: PrimeField,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> int:
    c = _check_residue(c, F)
    p, n = F.p, F.n
    if p == 3:
        raise BadPrimeError("y^2 = x^7 - cx has bad reduction at 3")
    if p < config.LIFT_THRESHOLD:
        return _naive_trace(Family.C2, c, F)

    b = -c % p
    if p % 12 == 1:
        form1 = solve_form_normalized(1, F, strategy=strategy, seed=seed)
        b2 = binom_half(F, form1)
        b6 = binom_sixth(F, form1)
        m = (
            b2 * pow(b, n // 2, p)
            + b6 * pow(b, n // 6, p)
            + b6 * pow(b, 5 * n // 6, p)
        )
    elif p % 12 == 5:
        m = binom_half(F, strategy=strategy, seed=seed) * pow(b, n // 2, p)
    else:
        return 0
    return lift_trace(m % p, p)


def frobenius_trace(
    fam: CurveFamily,
    p: int,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> TraceRecord:
    F = PrimeField(p)
    cbar = fam.residue(F)
    if fam.family is Family.C1:
        t = trace_c1(cbar, F, strategy=strategy, seed=seed)
    else:
        t = trace_c2(cbar, F, strategy=strategy, seed=seed)
    return TraceRecord(p, t)


def time_trace(fam: CurveFamily, primes: Iterable[int], repeats: int = 3) -> float:
    """Seconds per frobenius_trace call, averaged over primes, median over repeats."""
    primes = list(primes)
    if not primes:
        raise ValueError("no primes to time")
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        for p in primes:
            frobenius_trace(fam, p)
        timings.append((time.perf_counter() - start) / len(primes))
    return float(np.median(timings))
