import math

import lightning as L
import numpy as np
from torch.utils.data import DataLoader, Dataset

import config

SIEVE_CEILING = 2**40 + 2**32


def simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_segment(lo: int, hi: int) -> np.ndarray:
    """Primes in [lo, hi), ascending."""
    if hi > SIEVE_CEILING:
        raise ValueError(f"hi={hi} exceeds the sieve ceiling 2^40 + 2^32")
    lo = max(lo, 2)
    if hi <= lo:
        return np.array([], dtype=np.int64)

    mask = np.ones(hi - lo, dtype=bool)
    for p in simple_sieve(math.isqrt(hi - 1)):
        p = int(p)
        start = max(p * p, (lo + p - 1) // p * p)
        if start >= hi:
            continue
        mask[start - lo :: p] = False
    return np.flatnonzero(mask).astype(np.int64) + lo


class PrimeChunkDataset(Dataset):
    def __init__(self, limit: int, chunk_size: int):
        self.stop = limit + 1
        self.chunk_size = chunk_size

    def __len__(self):
        return -(-self.stop // self.chunk_size)

    def __getitem__(self, idx):
        if not 0 <= idx < len(self):
            raise IndexError(idx)
        lo = idx * self.chunk_size
        return idx, lo, min(lo + self.chunk_size, self.stop)


class PrimeRangeDataModule(L.LightningDataModule):
    """Splits [0, limit] into fixed-width chunks [lo, hi) handed to the scan workers.

    Chunk boundaries depend only on ``limit`` and ``chunk_size``, never on
    the worker count, so merged results are identical for any pool size.
    """

    def __init__(self, limit: int, chunk_size: int = config.CHUNK_SIZE) -> None:
        super().__init__()
        if chunk_size <= 0:
            raise ValueError(f"chunk_size must be positive, got {chunk_size}")
        self.limit = limit
        self.chunk_size = chunk_size

    def setup(self, stage=None):
        self.predict_dataset = PrimeChunkDataset(self.limit, self.chunk_size)

    def predict_dataloader(self):
        # one chunk per item, kept as a plain (index, lo, hi) tuple
        return DataLoader(self.predict_dataset, batch_size=None, shuffle=False, collate_fn=tuple)
