"""Fixed subalgebras of the real endomorphism algebra of Jac(y^2 = x^7 - cx).

V_R is realized as the 6x6 matrices with phi_ij = 0 unless i = j mod 2,
the odd-odd entries being conjugates of the even-even ones. A subgroup N
of the component group acts by conjugation and V_R^N is the real null
space of the stacked maps x -> g Phi(x) g^-1 - Phi(x).
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

import config
from groups.st_groups import builtin_group, close_under, symplectic_form

H = symplectic_form(3)

# Subgroups of the component group of ST(C2), generic c, one per conjugacy class
LATTICE_SUBGROUPS = (
    "r,t,s",
    "t,r,(rs)^2",
    "t,rs",
    "t,s,(rs)^2",
    "r,s",
    "t,r",
    "t,(rs)^2",
    "t,s",
    "(rs)^2,r",
    "rs",
    "(rs)^2,s",
    "t",
    "r",
    "(rs)^2",
    "s",
    "1",
)

ALGEBRA_NAMES = {
    (18, False, 2): "M3(C)",
    (10, False, 4): "M2(C)xC",
    (9, False, 1): "M3(R)",
    (6, True, 6): "CxCxC",
    (5, False, 2): "M2(R)xR",
    (4, True, 4): "CxC",
    (3, True, 3): "CxR | RxRxR",
    (2, True, 2): "RxR",
}


def vr_realize(params: Sequence[complex]) -> np.ndarray:
    """The 6x6 matrix of (alpha, beta, gamma, delta, epsilon, phi, lambda, mu, nu)."""
    params = np.asarray(params, dtype=np.complex128)
    if params.shape != (9,):
        raise ValueError(f"expected 9 parameters, got shape {params.shape}")
    P = params.reshape(3, 3)
    Phi = np.zeros((6, 6), dtype=np.complex128)
    Phi[0::2, 0::2] = P
    Phi[1::2, 1::2] = np.conj(P)
    return Phi


def _real_basis() -> List[np.ndarray]:
    """Phi of the 18 real coordinates (Re, Im of each parameter)."""
    basis = []
    for k in range(9):
        for unit in (1.0, 1j):
            params = np.zeros(9, dtype=np.complex128)
            params[k] = unit
            basis.append(vr_realize(params))
    return basis


def _realify(M: np.ndarray) -> np.ndarray:
    return np.concatenate([M.real.ravel(), M.imag.ravel()])


def nullspace(A: np.ndarray, atol: float = 1e-13, rtol: float = config.NULLSPACE_RTOL) -> np.ndarray:
    """Columns spanning ker A, from the SVD with tol = max(atol, rtol * s_max)."""
    A = np.atleast_2d(A)
    _, s, vh = np.linalg.svd(A)
    tol = max(atol, rtol * s[0]) if s.size else atol
    nnz = int((s >= tol).sum())
    return vh[nnz:].conj().T


def rosati_form(Phi1: np.ndarray, Phi2: np.ndarray) -> float:
    """Re Trace(Phi1 H^t Phi2^t H)."""
    return float(np.real(np.trace(Phi1 @ H.T @ Phi2.T @ H)))


_TOKEN = re.compile(r"\s*(?:([rstRST1])|(\()|(\))|\^\s*(-?\d+))")


def parse_word(word: str, generators: dict) -> np.ndarray:
    """Matrix of a word such as 'rs', '(rs)^2', 't^2r' or '1'."""
    tokens = []
    pos = 0
    word = word.strip()
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m:
            raise ValueError(f"cannot parse {word!r} at position {pos}")
        tokens.append(m.groups())
        pos = m.end()

    identity = np.eye(6, dtype=np.complex128)
    stack = [[]]
    for letter, lpar, rpar, exponent in tokens:
        if letter:
            stack[-1].append(identity if letter == "1" else generators[letter.upper()])
        elif lpar:
            stack.append([])
        elif rpar:
            if len(stack) == 1:
                raise ValueError(f"unbalanced parenthesis in {word!r}")
            group = stack.pop()
            stack[-1].append(_product(group, identity))
        else:
            if not stack[-1]:
                raise ValueError(f"exponent without a base in {word!r}")
            base = stack[-1].pop()
            e = int(exponent)
            if e < 0:
                base, e = base.conj().T, -e
            stack[-1].append(np.linalg.matrix_power(base, e))
    if len(stack) != 1:
        raise ValueError(f"unbalanced parenthesis in {word!r}")
    return _product(stack[0], identity)


def _product(factors, identity):
    out = identity
    for f in factors:
        out = out @ f
    return out


def split_words(words) -> List[str]:
    if isinstance(words, str):
        words = [w for w in re.split(r",(?![^(]*\))", words)]
    return [w.strip() for w in words if w.strip()]


@dataclass
class FixedAlgebra:
    label: str
    basis: List[np.ndarray]
    dim: int
    commutative: bool
    center_dim: int

    @property
    def identified_algebra(self) -> str:
        return ALGEBRA_NAMES.get((self.dim, self.commutative, self.center_dim), "unidentified")

    def _coordinates(self, M: np.ndarray):
        A = np.stack([_realify(b) for b in self.basis], axis=1)
        coords, *_ = np.linalg.lstsq(A, _realify(M), rcond=None)
        return coords, np.linalg.norm(A @ coords - _realify(M))

    def contains(self, M: np.ndarray, tol: float = 1e-9) -> bool:
        return self._coordinates(M)[1] < tol

    def is_closed(self, tol: float = 1e-9) -> bool:
        return all(self.contains(a @ b, tol) for a in self.basis for b in self.basis)

    def rosati_gram(self) -> np.ndarray:
        return np.array([[rosati_form(a, b) for b in self.basis] for a in self.basis])


def _c2_generators() -> dict:
    G = builtin_group("ST_C2_generic")
    return dict(zip("RST", G.generators))


def subgroup_elements(words, tol: float = config.TORUS_TOL) -> List[np.ndarray]:
    generators = _c2_generators()
    mats = [parse_word(w, generators) for w in split_words(words)]
    G = builtin_group("ST_C2_generic")
    return close_under(mats, G.embedding, tol)


def _commutator_kernel_dim(basis: List[np.ndarray], against: List[np.ndarray]) -> int:
    if not basis:
        return 0
    columns = [np.concatenate([_realify(b @ a - a @ b) for a in against]) for b in basis]
    return nullspace(np.stack(columns, axis=1)).shape[1]


def fixed_subalgebra(words, tol: float = config.TORUS_TOL) -> FixedAlgebra:
    """V_R^N for the subgroup N generated by words in R, S, T."""
    words = split_words(words)
    elements = subgroup_elements(words, tol)
    real_basis = _real_basis()

    columns = []
    for x in real_basis:
        columns.append(np.concatenate([_realify(g @ x @ g.conj().T - x) for g in elements]))
    kernel = nullspace(np.stack(columns, axis=1))

    basis = [sum(c * b for c, b in zip(v.real, real_basis)) for v in kernel.T]

    commutative = all(
        np.max(np.abs(a @ b - b @ a)) < 1e-9 for i, a in enumerate(basis) for b in basis[i + 1 :]
    )
    return FixedAlgebra(
        label="<" + ",".join(words) + ">",
        basis=basis,
        dim=len(basis),
        commutative=commutative,
        center_dim=_commutator_kernel_dim(basis, basis),
    )


def centralizer_dimension(group: str = "ST_C2_generic", samples: int = 3, seed: int = config.SEED) -> int:
    """Complex dimension of the commutant of the identity component in M_{2g}(C)."""
    G = builtin_group(group)
    n = G.size
    rng = np.random.default_rng(seed)
    torus = [G.embedding.element(rng.uniform(0, 2 * np.pi, G.embedding.dim)) for _ in range(samples)]

    columns = []
    for idx in range(n * n):
        for unit in (1.0, 1j):
            E = np.zeros(n * n, dtype=np.complex128)
            E[idx] = unit
            E = E.reshape(n, n)
            columns.append(np.concatenate([_realify(t @ E - E @ t) for t in torus]))
    return nullspace(np.stack(columns, axis=1)).shape[1] // 2


def lattice_report(subgroups=LATTICE_SUBGROUPS, path=None, verbose: bool = False) -> pd.DataFrame:
    rows = []
    for words in tqdm(subgroups, desc="lattice", disable=not verbose):
        algebra = fixed_subalgebra(words)
        rows.append(
            {
                "subgroup": algebra.label,
                "dim": algebra.dim,
                "commutative": algebra.commutative,
                "center_dim": algebra.center_dim,
                "identified_algebra": algebra.identified_algebra,
            }
        )
    frame = pd.DataFrame(rows, columns=["subgroup", "dim", "commutative", "center_dim", "identified_algebra"])
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False)
    return frame
