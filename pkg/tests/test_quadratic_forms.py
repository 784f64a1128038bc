from math import isqrt

import numpy as np
import pytest

from arithmetic.modp import PrimeField, legendre
from arithmetic.quadratic_forms import (
    FormSolution,
    NoSolutionError,
    cornacchia,
    normalize_sign,
    solve_form_normalized,
)
from datamodules.prime_segments import sieve_segment


def test_cornacchia_examples():
    assert cornacchia(1, 13, 5) == FormSolution(3, 2, 1)
    assert cornacchia(2, 17, 7) == FormSolution(3, 2, 2)
    assert cornacchia(3, 7, 2).value == 7


def test_cornacchia_either_root():
    assert cornacchia(1, 13, 8) == cornacchia(1, 13, 5)


def test_cornacchia_no_solution():
    # 3^2 = 2 = -5 mod 7 but 7 is not x^2 + 5y^2
    with pytest.raises(NoSolutionError):
        cornacchia(5, 7, 3)


def test_cornacchia_rejects_bad_input():
    with pytest.raises(ValueError):
        cornacchia(1, 13, 4)
    with pytest.raises(ValueError):
        cornacchia(13, 13, 0)


def test_normalize_sign_swaps_even_x():
    F = PrimeField(13)
    assert normalize_sign(FormSolution(2, 3, 1), F) == FormSolution(-3, 2, 1)


@pytest.mark.parametrize(
    "d, p, expected",
    [
        (1, 13, (-3, 2)),
        (1, 5, (1, 2)),
        (1, 17, (-1, 4)),
        (2, 17, (3, 2)),
        (2, 41, (3, 4)),
    ],
)
def test_solve_form_normalized(d, p, expected):
    sol = solve_form_normalized(d, PrimeField(p))
    assert (sol.x, sol.y) == expected
    assert sol.value == p


@pytest.mark.parametrize("strategy", ["tonelli-shanks", "cipolla"])
def test_solve_form_strategy_independent(strategy):
    for p in [13, 17, 29, 37, 41, 53, 61, 73, 89, 97]:
        F = PrimeField(p)
        assert solve_form_normalized(1, F, strategy=strategy) == solve_form_normalized(1, F)


def test_solve_form_unsolvable():
    with pytest.raises(NoSolutionError):
        solve_form_normalized(3, PrimeField(5))
    with pytest.raises(NoSolutionError):
        solve_form_normalized(1, PrimeField(7))


def _representable(d: int, bound: int) -> set:
    xs = np.arange(isqrt(bound) + 1, dtype=np.int64)
    ys = np.arange(1, isqrt(bound // d) + 1, dtype=np.int64)
    values = (xs[:, None] ** 2 + d * ys[None, :] ** 2).ravel()
    return set(values[values <= bound].tolist())


@pytest.mark.slow
@pytest.mark.parametrize("d", [1, 2, 3])
def test_cornacchia_exhaustive(d):
    bound = 10**6
    representable = _representable(d, bound)
    for p in sieve_segment(5, bound).tolist():
        F = PrimeField(p)
        try:
            sol = solve_form_normalized(d, F)
        except NoSolutionError:
            assert p not in representable
            continue
        assert p in representable
        assert sol.x * sol.x + d * sol.y * sol.y == p
        if sol.x % 2:
            assert sol.x % 4 == -legendre(2, F) % 4
