"""Scan engine: sieve, per-prime traces, filtered accumulation and CSV output."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from tqdm import tqdm

import config
from curves.families import CurveFamily
from curves.hasse_witt import frobenius_trace
from datamodules.prime_segments import PrimeRangeDataModule, sieve_segment
from datamodules.split_filters import SplitFilter
from models.moment_accumulator import MomentAccumulator


class ScanOutputError(OSError):
    pass


@dataclass
class ScanReport:
    family: str
    c: str
    N: int
    filter_description: str
    count: int
    moments: list  # M_1..M_max
    zero_fraction: float
    histogram: np.ndarray
    bin_edges: np.ndarray

    def as_dict(self):
        out = {"count": self.count, "zero_fraction": self.zero_fraction}
        for n, m in enumerate(self.moments, start=1):
            out[f"M{n}"] = m
        return out


class TraceScanner:
    """Accumulates a_1 = -t_p/sqrt(p) over the good primes of one chunk at a time."""

    def __init__(
        self,
        fam: CurveFamily,
        split_filter: SplitFilter,
        bins: int = config.BINS,
        strategy: str = config.SQRT_STRATEGY,
        seed: int = config.SEED,
    ) -> None:
        self.fam = fam
        self.split_filter = split_filter
        self.bins = bins
        self.strategy = strategy
        self.seed = seed

    def _common_step(self, lo: int, hi: int):
        primes, traces = [], []
        for p in sieve_segment(lo, hi).tolist():
            if not self.fam.is_good(p) or not self.split_filter.passes(p):
                continue
            record = frobenius_trace(self.fam, p, strategy=self.strategy, seed=self.seed)
            primes.append(p)
            traces.append(record.t)
        primes = np.asarray(primes, dtype=np.float64)
        traces = np.asarray(traces, dtype=np.int64)
        return -traces / np.sqrt(primes), traces

    def scan_chunk(self, chunk) -> MomentAccumulator:
        _, lo, hi = chunk
        a1, t = self._common_step(lo, hi)
        acc = MomentAccumulator(self.bins)
        acc.update(a1, t)
        return acc

    def _compute_metrics(self, acc: MomentAccumulator, mode="scan"):
        moments = acc.moments()
        return {
            mode + "/count": acc.count,
            mode + "/M2": moments[2],
            mode + "/M4": moments[4],
            mode + "/zero_fraction": acc.zero_fraction(),
        }


def show_results(metrics_dict, mode="scan") -> None:
    print_result = f"{mode} results:"
    for key, value in metrics_dict.items():
        print_result += f" {key}: {value:.4f} |"
    print(print_result)


def scan(
    fam: CurveFamily,
    N: int,
    split_filter: SplitFilter = SplitFilter(),
    bins: int = config.BINS,
    threads: int = 1,
    strategy: str = config.SQRT_STRATEGY,
    seed: int = config.SEED,
    chunk_size: int = config.CHUNK_SIZE,
    logger=None,
    verbose: bool = False,
) -> ScanReport:
    """Moment statistics of a_1 over good primes p <= N passing the filter.

    Chunks are merged in ascending order whatever the number of threads, so
    the report only depends on (inputs, bins, chunk_size).
    """
    scanner = TraceScanner(fam, split_filter, bins=bins, strategy=strategy, seed=seed)
    dm = PrimeRangeDataModule(N, chunk_size=chunk_size)
    dm.setup()
    chunks = list(dm.predict_dataloader())

    if logger is not None:
        logger.log_hyperparams(
            {
                "family": fam.family.value,
                "c": str(fam.c),
                "N": N,
                "filter": split_filter.description,
                "bins": bins,
                "threads": threads,
                "strategy": strategy,
                "chunk_size": chunk_size,
            }
        )

    total = MomentAccumulator(bins)
    if threads > 1:
        executor = ProcessPoolExecutor(max_workers=threads)
        results = executor.map(scanner.scan_chunk, chunks)
    else:
        executor = None
        results = map(scanner.scan_chunk, chunks)

    try:
        for (index, _, _), acc in tqdm(zip(chunks, results), total=len(chunks), disable=not verbose):
            total.merge(acc)
            if logger is not None and total.count:
                logger.log_metrics(scanner._compute_metrics(total), step=index)
    finally:
        if executor is not None:
            executor.shutdown()

    if logger is not None:
        logger.save()

    moments = total.moments()
    report = ScanReport(
        family=fam.family.value,
        c=str(fam.c),
        N=N,
        filter_description=split_filter.description,
        count=total.count,
        moments=[float(m) for m in moments[1:]],
        zero_fraction=total.zero_fraction(),
        histogram=total.histogram.copy(),
        bin_edges=total.bin_edges.copy(),
    )
    return report


def emit_csv(report: ScanReport, path) -> tuple:
    """Write <stem>.moments.csv and <stem>.hist.csv; returns both paths."""
    path = Path(path)
    name = path.name
    for suffix in (".moments.csv", ".hist.csv"):
        name = name.removesuffix(suffix)
    stem = path.parent / name
    moments_path = stem.with_name(stem.name + ".moments.csv")
    hist_path = stem.with_name(stem.name + ".hist.csv")

    ns = list(range(1, len(report.moments) + 1))
    if report.count == 0:
        moments = pd.DataFrame({"n": ns + ["# warning"], "Mn": [None] * len(ns) + ["no primes accumulated"]})
    else:
        moments = pd.DataFrame({"n": ns, "Mn": report.moments})

    edges = report.bin_edges
    widths = np.diff(edges)
    if report.count:
        density = report.histogram / (report.count * widths)
    else:
        density = np.zeros(len(report.histogram))
    hist = pd.DataFrame(
        {
            "bin_lo": edges[:-1],
            "bin_hi": edges[1:],
            "count": report.histogram,
            "density": density,
        }
    )

    try:
        moments_path.parent.mkdir(parents=True, exist_ok=True)
        moments.to_csv(moments_path, index=False, float_format="%.17g")
        hist.to_csv(hist_path, index=False, float_format="%.17g")
    except OSError as err:
        raise ScanOutputError(f"could not write scan output to {moments_path.parent}: {err}") from err
    return moments_path, hist_path
