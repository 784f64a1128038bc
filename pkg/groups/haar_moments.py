"""Haar moments of characteristic-polynomial coefficients by torus quadrature.

For each component g.T the integrand coeff(g tau(theta))^n is a trigonometric
polynomial in theta, so the equispaced average over Q points per angle is
exact as soon as Q exceeds its harmonic degree (3n for a_3).
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
import torch
from tqdm import tqdm

import config
from groups.st_groups import STGroup, enumerate_components

COEFFICIENTS = ("a1", "a2", "a3")


@dataclass(frozen=True)
class MomentSequence:
    coefficient: str
    values: tuple  # M_0..M_max

    def __post_init__(self):
        if self.coefficient not in COEFFICIENTS:
            raise ValueError(f"unknown coefficient {self.coefficient!r}")

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def rounded(self) -> tuple:
        return tuple(int(round(v)) for v in self.values)


def get_device(accelerator: str = config.ACCELERATOR) -> torch.device:
    return torch.device("cuda" if accelerator == "gpu" and torch.cuda.is_available() else "cpu")


def charpoly_coefficients(M: torch.Tensor, k_max: int) -> torch.Tensor:
    """c_1..c_{k_max} of det(x I - M) for a batch (B, N, N), by Faddeev-LeVerrier.

    With det(I - M T) = sum (-1)^k e_k T^k these are c_k = (-1)^k e_k, which
    is exactly a_k under a_1 = -e_1, a_2 = e_2, a_3 = -e_3.
    """
    n = M.shape[-1]
    eye = torch.eye(n, dtype=M.dtype, device=M.device)
    Mk = M
    c = -torch.diagonal(Mk, dim1=-2, dim2=-1).sum(-1)
    coeffs = [c]
    for k in range(2, k_max + 1):
        Mk = M @ (Mk + c[:, None, None] * eye)
        c = -torch.diagonal(Mk, dim1=-2, dim2=-1).sum(-1) / k
        coeffs.append(c)
    return torch.stack(coeffs, dim=-1)


def _torus_grid(dim: int, Q: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(Q) / Q
    mesh = np.meshgrid(*([theta] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def haar_moments(
    G: STGroup,
    coeff: str = "a1",
    n_max: int = config.MAX_MOMENT,
    Q: int = config.QUADRATURE_POINTS,
    accelerator: str = config.ACCELERATOR,
    verbose: bool = False,
) -> MomentSequence:
    """Haar expectations E[coeff^n], n = 0..n_max, over the whole group G."""
    if coeff not in COEFFICIENTS:
        raise ValueError(f"unknown coefficient {coeff!r}")
    k = COEFFICIENTS.index(coeff) + 1
    if Q <= 3 * n_max:
        raise ValueError(f"Q={Q} quadrature points cannot integrate degree {3 * n_max} exactly")
    if k > G.size:
        raise ValueError(f"{coeff} is not defined for {G.size}x{G.size} matrices")

    if not G.components:
        enumerate_components(G)
    device = get_device(accelerator)

    diag = torch.from_numpy(G.embedding.diagonal(_torus_grid(G.embedding.dim, Q))).to(device)
    totals = torch.zeros(n_max + 1, dtype=torch.float64, device=device)
    for rep in tqdm(G.components, desc=f"{G.name} {coeff}", disable=not verbose):
        g = torch.from_numpy(rep).to(device)
        # g @ diag(d) scales the columns of g
        batch = g[None, :, :] * diag[:, None, :]
        values = charpoly_coefficients(batch, k)[:, k - 1].real
        powers = torch.cumprod(values[:, None].expand(-1, n_max), dim=1)
        totals[0] += 1.0
        totals[1:] += powers.mean(dim=0)
    totals /= len(G.components)
    return MomentSequence(coeff, tuple(float(v) for v in totals.cpu()))


def binomial_convolution(A: MomentSequence, B: MomentSequence) -> MomentSequence:
    """Moments of a_1 on a direct sum: M_n = sum_k binom(n, k) A_k B_{n-k}."""
    if A.coefficient != B.coefficient:
        raise ValueError(f"cannot convolve {A.coefficient} moments with {B.coefficient} moments")
    if A.coefficient != "a1":
        raise ValueError("binomial convolution only holds for the additive coefficient a1")
    n_max = min(A.n_max, B.n_max)
    values = []
    for n in range(n_max + 1):
        total, binom = 0, 1
        for k in range(n + 1):
            total += binom * A[k] * B[n - k]
            binom = binom * (n - k) // (k + 1)
        values.append(total)
    return MomentSequence("a1", tuple(values))


def scaled_moments(base: MomentSequence, s: int) -> MomentSequence:
    return MomentSequence(base.coefficient, tuple(s**n * v for n, v in enumerate(base.values)))


def write_moments_csv(seq: MomentSequence, path) -> Path:
    """n,Mn rows for n = 1..n_max, the same layout as a scan's moments file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({"n": range(1, len(seq)), "Mn": seq.values[1:]})
    frame.to_csv(path, index=False, float_format="%.10f")
    return path
