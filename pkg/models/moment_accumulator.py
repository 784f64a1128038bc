import math

import numpy as np

import config


def _two_sum(a: float, b: float):
    s = a + b
    bp = s - a
    return s, (a - (s - bp)) + (b - bp)


class MomentAccumulator:
    """Mergeable power sums, zero count and histogram of normalized traces a_1.

    Power sums are kept as (sum, compensation) pairs; batch sums use
    math.fsum so a chunk contributes a correctly rounded value.
    """

    def __init__(self, bins: int = config.BINS, max_moment: int = config.MAX_MOMENT) -> None:
        if bins <= 0:
            raise ValueError(f"bins must be positive, got {bins}")
        self.bins = bins
        self.max_moment = max_moment
        self.count = 0
        self.zero_count = 0
        self._sums = np.zeros(max_moment + 1, dtype=np.float64)
        self._comp = np.zeros(max_moment + 1, dtype=np.float64)
        self.histogram = np.zeros(bins, dtype=np.int64)
        self.bin_edges = np.linspace(*config.HIST_RANGE, bins + 1)

    @property
    def power_sums(self) -> np.ndarray:
        return self._sums + self._comp

    def _add_sum(self, n: int, value: float) -> None:
        s, err = _two_sum(self._sums[n], value)
        self._sums[n] = s
        self._comp[n] += err

    def update(self, a1: np.ndarray, t: np.ndarray) -> None:
        a1 = np.asarray(a1, dtype=np.float64)
        if a1.size == 0:
            return
        self.count += int(a1.size)
        self.zero_count += int(np.count_nonzero(np.asarray(t) == 0))

        self._add_sum(0, float(a1.size))
        power = np.ones_like(a1)
        for n in range(1, self.max_moment + 1):
            power = power * a1
            self._add_sum(n, math.fsum(power))

        counts, _ = np.histogram(a1, bins=self.bin_edges)
        self.histogram += counts

    def merge(self, other: "MomentAccumulator") -> "MomentAccumulator":
        if other.bins != self.bins or other.max_moment != self.max_moment:
            raise ValueError("cannot merge accumulators with different bins or moment orders")
        self.count += other.count
        self.zero_count += other.zero_count
        for n in range(self.max_moment + 1):
            self._add_sum(n, other._sums[n])
            self._add_sum(n, other._comp[n])
        self.histogram += other.histogram
        return self

    def __add__(self, other: "MomentAccumulator") -> "MomentAccumulator":
        s = MomentAccumulator(self.bins, self.max_moment)
        s.merge(self)
        s.merge(other)
        return s

    def moments(self) -> np.ndarray:
        """M_0..M_max; NaN when nothing was accumulated."""
        if self.count == 0:
            return np.full(self.max_moment + 1, np.nan)
        return self.power_sums / self.count

    def zero_fraction(self) -> float:
        return self.zero_count / self.count if self.count else float("nan")
