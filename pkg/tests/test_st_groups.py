import numpy as np
import pytest

from groups.st_groups import (
    BUILTIN_GROUPS,
    ClosureOverflowError,
    J,
    TorusEmbedding,
    Z,
    builtin_group,
    canonical_group_name,
    close_under,
    component_group_profile,
    enumerate_components,
    multiplication_table,
    symplectic_form,
)

COMPONENT_COUNTS = {
    "U1": 1,
    "N_U1": 2,
    "U1_2": 1,
    "U1_3": 1,
    "U1_2xU1": 1,
    "JD4": 16,
    "D61": 12,
    "ST_C1_generic": 16,
    "ST_C1_sub4": 8,
    "ST_C1_sub2": 4,
    "ST_C2_generic": 24,
    "ST_C2_cube": 8,
}


def test_every_builtin_has_an_expected_count():
    assert set(COMPONENT_COUNTS) == set(BUILTIN_GROUPS)


@pytest.mark.parametrize("name", list(BUILTIN_GROUPS))
def test_generators_are_unitary_symplectic(name):
    G = builtin_group(name)
    H = symplectic_form(G.embedding.g)
    eye = np.eye(G.size)
    for g in G.generators:
        np.testing.assert_allclose(g.conj().T @ g, eye, atol=1e-12)
        np.testing.assert_allclose(g.T @ H @ g, H, atol=1e-12)


@pytest.mark.parametrize("name, count", list(COMPONENT_COUNTS.items()))
def test_component_counts(name, count):
    G = builtin_group(name)
    assert len(enumerate_components(G)) == count


def test_torus_membership():
    emb = TorusEmbedding((0, 0, 1))
    assert emb.dim == 2 and emb.g == 3
    assert emb.contains(emb.element([0.3, 1.7]))
    assert emb.contains(-np.eye(6))
    # u and v blocks must agree where the pattern repeats
    bad = np.diag([np.exp(0.3j), np.exp(-0.3j), np.exp(0.4j), np.exp(-0.4j), 1, 1])
    assert not emb.contains(bad)
    assert not emb.contains(np.kron(np.eye(3), J))


def test_torus_diagonal_batches():
    emb = TorusEmbedding((0, 0, 0))
    angles = np.linspace(0, 1, 10)[:, None]
    diag = emb.diagonal(angles)
    assert diag.shape == (10, 6)
    np.testing.assert_allclose(diag[:, 1], np.exp(-1j * angles[:, 0]))


@pytest.mark.parametrize(
    "name, order, abelian",
    [
        ("ST_C1_generic", 16, False),
        ("ST_C2_generic", 24, False),
        ("D61", 12, False),
        ("JD4", 16, False),
        ("U1_3", 1, True),
        ("N_U1", 2, True),
    ],
)
def test_component_group_profile(name, order, abelian):
    profile = component_group_profile(builtin_group(name))
    assert profile.order == order
    assert profile.is_abelian is abelian
    counts = profile.order_counts()
    assert counts[1] == 1
    assert sum(counts.values()) == order
    for k in counts:
        assert order % k == 0


def test_st_c1_component_group_has_exponent_four():
    counts = component_group_profile(builtin_group("ST_C1_generic")).order_counts()
    assert set(counts) == {1, 2, 4}


def test_multiplication_table_is_latin_square():
    table = multiplication_table(builtin_group("ST_C2_generic"))
    n = len(table)
    for row in table:
        assert sorted(row.tolist()) == list(range(n))
    for col in table.T:
        assert sorted(col.tolist()) == list(range(n))


@pytest.mark.parametrize("name", ["ST_C1_generic", "ST_C2_generic"])
def test_closure_is_stable_under_tolerance_and_order(name):
    G = builtin_group(name)
    base = len(close_under(G.generators, G.embedding, tol=1e-9))
    assert len(close_under(G.generators, G.embedding, tol=1e-6)) == base
    assert len(close_under(G.generators[::-1], G.embedding)) == base


def test_closure_overflow():
    G = builtin_group("ST_C2_generic")
    with pytest.raises(ClosureOverflowError):
        close_under(G.generators, G.embedding, limit=5)


def test_index_of_outside_group():
    G = builtin_group("JD4")
    enumerate_components(G)
    stray = np.diag(np.concatenate([np.diag(Z(5)), np.diag(Z(5)).conj()]))
    with pytest.raises(KeyError):
        G.index_of(stray)
    assert G.index_of(G.components[3] @ G.embedding.element([0.7])) == 3


def test_canonical_group_name():
    assert canonical_group_name("st-c2-generic") == "ST_C2_generic"
    assert canonical_group_name("u1_2xu1") == "U1_2xU1"
    with pytest.raises(KeyError):
        canonical_group_name("USp6")
