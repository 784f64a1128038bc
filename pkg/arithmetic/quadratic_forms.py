"""Representations p = x^2 + d*y^2 via Cornacchia's algorithm."""

from dataclasses import dataclass
from math import isqrt

import config
from arithmetic.modp import NoRootError, PrimeField, legendre, sqrt_mod


class NoSolutionError(ValueError):
    pass


@dataclass(frozen=True)
class FormSolution:
    x: int
    y: int
    d: int

    @property
    def value(self) -> int:
        return self.x * self.x + self.d * self.y * self.y


def cornacchia(d: int, m: int, delta: int) -> FormSolution:
    """Solve x^2 + d*y^2 = m given delta with delta^2 = -d mod m.

    Returns (x, y) with x > 0, y >= 0. Raises NoSolutionError when m has no
    such representation.
    """
    if not 1 <= d < m:
        raise ValueError(f"need 1 <= d < m, got d={d}, m={m}")
    if (delta * delta + d) % m != 0:
        raise ValueError(f"{delta}^2 is not -{d} mod {m}")
    delta %= m
    if delta > m // 2:
        delta = m - delta

    # half of the Euclidean algorithm on (m, delta)
    a, b = m, delta
    while b * b >= m:
        a, b = b, a % b

    rest = m - b * b
    if rest % d:
        raise NoSolutionError(f"{m} is not of the form x^2 + {d}y^2")
    y2 = rest // d
    y = isqrt(y2)
    if y * y != y2:
        raise NoSolutionError(f"{m} is not of the form x^2 + {d}y^2")
    return FormSolution(b, y, d)


def normalize_sign(sol: FormSolution, F: PrimeField) -> FormSolution:
    """Make x odd (swapping x, y when d = 1) and pick the sign x = -(2/p) mod 4."""
    x, y = sol.x, sol.y
    if sol.d == 1 and x % 2 == 0:
        x, y = y, x
    if x % 2:
        target = -legendre(2, F) % 4
        if x % 4 != target:
            x = -x
    return FormSolution(x, abs(y), sol.d)


def solve_form_normalized(
    d: int,
    F: PrimeField,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
) -> FormSolution:
    """Sign-normalized solution of p = x^2 + d*y^2 for the binomial lemmas."""
    try:
        delta = sqrt_mod(-d % F.p, F, strategy=strategy, seed=seed)
    except NoRootError as err:
        raise NoSolutionError(f"-{d} is not a square mod {F.p}") from err
    return normalize_sign(cornacchia(d, F.p, delta), F)
