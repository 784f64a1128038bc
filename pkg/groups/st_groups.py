"""Sato-Tate groups as finite unions of torus cosets inside USp(2g).

A group is stored as its torus embedding plus a list of generator
matrices; ``enumerate_components`` closes the generators up to torus
equivalence, giving one representative per connected component.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import List

import numpy as np

import config


class ClosureOverflowError(RuntimeError):
    pass


I2 = np.eye(2, dtype=np.complex128)
J = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
K = np.array([[0, 1j], [1j, 0]], dtype=np.complex128)
O2 = np.zeros((2, 2), dtype=np.complex128)


def Z(n: int) -> np.ndarray:
    zeta = np.exp(2j * np.pi / n)
    return np.diag([zeta, np.conj(zeta)])


def U(u: complex) -> np.ndarray:
    return np.diag([u, np.conj(u)])


def symplectic_form(g: int) -> np.ndarray:
    return np.kron(np.eye(g), J)


@dataclass(frozen=True)
class TorusEmbedding:
    """Block k of the diagonal carries U(u_{pattern[k]})."""

    pattern: tuple

    @property
    def g(self) -> int:
        return len(self.pattern)

    @property
    def dim(self) -> int:
        return max(self.pattern) + 1

    def diagonal(self, angles: np.ndarray) -> np.ndarray:
        """Diagonals of the torus elements at angles of shape (..., dim), shape (..., 2g)."""
        angles = np.asarray(angles, dtype=np.float64)
        cols = []
        for k in self.pattern:
            u = np.exp(1j * angles[..., k])
            cols += [u, np.conj(u)]
        return np.stack(cols, axis=-1)

    def element(self, angles) -> np.ndarray:
        return np.diag(self.diagonal(np.asarray(angles, dtype=np.float64)))

    def contains(self, M: np.ndarray, tol: float = config.TORUS_TOL) -> bool:
        d = np.diag(M)
        if np.max(np.abs(M - np.diag(d))) > tol:
            return False
        if np.max(np.abs(np.abs(d) - 1)) > tol:
            return False
        first = {}
        for k, param in enumerate(self.pattern):
            u, ubar = d[2 * k], d[2 * k + 1]
            if abs(ubar - np.conj(u)) > tol:
                return False
            if param in first and abs(u - first[param]) > tol:
                return False
            first.setdefault(param, u)
        return True


@dataclass
class STGroup:
    name: str
    embedding: TorusEmbedding
    generators: List[np.ndarray]
    components: List[np.ndarray] = field(default_factory=list)

    @property
    def size(self) -> int:
        return 2 * self.embedding.g

    def equivalent(self, A: np.ndarray, B: np.ndarray, tol: float = config.TORUS_TOL) -> bool:
        # unitary, so the inverse is the conjugate transpose
        return self.embedding.contains(A.conj().T @ B, tol)

    def index_of(self, M: np.ndarray, tol: float = config.TORUS_TOL) -> int:
        for i, rep in enumerate(self.components):
            if self.equivalent(rep, M, tol):
                return i
        raise KeyError("matrix lies in no enumerated component")


def _blocks(*rows) -> np.ndarray:
    return np.block([list(row) for row in rows])


def _st_c1(third: np.ndarray = None) -> list:
    R = _blocks((J, O2, O2), (O2, J, O2), (O2, O2, J))
    S = _blocks((O2, J, O2), (-J, O2, O2), (O2, O2, I2))
    gens = [R, S]
    if third is not None:
        gens.append(_blocks((third, O2, O2), (O2, np.conj(third), O2), (O2, O2, I2)))
    return gens


def _st_c2(with_t: bool = True) -> list:
    R = _blocks((J, O2, O2), (O2, J, O2), (O2, O2, J))
    S = _blocks((O2, K, O2), (K, O2, O2), (O2, O2, J))
    gens = [R, S]
    if with_t:
        gens.append(_blocks((Z(3), O2, O2), (O2, np.conj(Z(3)), O2), (O2, O2, I2)))
    return gens


def _jd4() -> list:
    return [
        _blocks((J, O2), (O2, J)),
        _blocks((O2, J), (-J, O2)),
        _blocks((Z(8), O2), (O2, np.conj(Z(8)))),
    ]


def _d61() -> list:
    return [
        _blocks((J, O2), (O2, J)),
        _blocks((O2, K), (K, O2)),
        _blocks((Z(3), O2), (O2, np.conj(Z(3)))),
    ]


BUILTIN_GROUPS = {
    "U1": (TorusEmbedding((0,)), lambda: []),
    "N_U1": (TorusEmbedding((0,)), lambda: [J.copy()]),
    "U1_2": (TorusEmbedding((0, 0)), lambda: []),
    "U1_3": (TorusEmbedding((0, 0, 0)), lambda: []),
    "U1_2xU1": (TorusEmbedding((0, 0, 1)), lambda: []),
    "JD4": (TorusEmbedding((0, 0)), _jd4),
    "D61": (TorusEmbedding((0, 0)), _d61),
    "ST_C1_generic": (TorusEmbedding((0, 0, 1)), lambda: _st_c1(Z(8))),
    "ST_C1_sub4": (TorusEmbedding((0, 0, 1)), lambda: _st_c1(Z(4))),
    # Z_2 = -I is already realized by u = -1, v = 1
    "ST_C1_sub2": (TorusEmbedding((0, 0, 1)), lambda: _st_c1()),
    "ST_C2_generic": (TorusEmbedding((0, 0, 0)), lambda: _st_c2()),
    "ST_C2_cube": (TorusEmbedding((0, 0, 0)), lambda: _st_c2(with_t=False)),
}


def canonical_group_name(name: str) -> str:
    key = name.replace("-", "_").lower()
    for known in BUILTIN_GROUPS:
        if known.lower() == key:
            return known
    raise KeyError(f"unknown Sato-Tate group {name!r}; choose from {', '.join(BUILTIN_GROUPS)}")


def builtin_group(name: str) -> STGroup:
    name = canonical_group_name(name)
    embedding, make_generators = BUILTIN_GROUPS[name]
    return STGroup(name, embedding, make_generators())


def close_under(generators, embedding: TorusEmbedding, tol: float = config.TORUS_TOL, limit: int = config.MAX_COMPONENTS):
    """Coset representatives of the group generated by the matrices modulo the torus."""
    size = 2 * embedding.g
    reps = [np.eye(size, dtype=np.complex128)]
    frontier = list(reps)
    while frontier:
        new = []
        for h in frontier:
            for g in generators:
                x = g @ h
                if any(embedding.contains(r.conj().T @ x, tol) for r in reps):
                    continue
                reps.append(x)
                new.append(x)
                if len(reps) > limit:
                    raise ClosureOverflowError(
                        f"closure exceeded {limit} components; check the torus tolerance {tol}"
                    )
        frontier = new
    return reps


def enumerate_components(G: STGroup, tol: float = config.TORUS_TOL) -> List[np.ndarray]:
    G.components = close_under(G.generators, G.embedding, tol)
    return G.components


@dataclass(frozen=True)
class GroupProfile:
    order: int
    is_abelian: bool
    element_orders: tuple  # sorted (order, multiplicity) pairs

    def order_counts(self) -> dict:
        return dict(self.element_orders)


def multiplication_table(G: STGroup, tol: float = config.TORUS_TOL) -> np.ndarray:
    if not G.components:
        enumerate_components(G, tol)
    n = len(G.components)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(G.components):
        for j, b in enumerate(G.components):
            table[i, j] = G.index_of(a @ b, tol)
    return table


def component_group_profile(G: STGroup, tol: float = config.TORUS_TOL) -> GroupProfile:
    table = multiplication_table(G, tol)
    n = len(table)
    orders = []
    for i in range(n):
        k, x = 1, i
        while x != 0:
            x = table[x, i]
            k += 1
        orders.append(k)
    return GroupProfile(
        order=n,
        is_abelian=bool(np.array_equal(table, table.T)),
        element_orders=tuple(sorted(Counter(orders).items())),
    )
