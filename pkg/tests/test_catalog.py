import numpy as np
import pytest

from rootscope import catalog, liealg, numkit
from rootscope.catalog import AlgebraSpec, parse_spec
from rootscope.errors import InvalidParams, NotInGroup

import oracles
from conftest import CATALOG


def test_list_catalog():
    labels = [s.label for s in catalog.list_catalog()]
    assert len(labels) >= 7
    assert "sl(2,R)" in labels and "su(2,1)" in labels


@pytest.mark.parametrize("text, family, params", [
    ("sl 3", "sl_real", (3,)),
    ("su 2 1", "su_pq", (2, 1)),
    ("so 1 4", "so_pq", (1, 4)),
    ("sp 4", "sp_real", (4,)),
])
def test_parse_spec(text, family, params):
    spec = parse_spec(text)
    assert (spec.family, spec.params) == (family, params)
    assert parse_spec(spec.spec_string) == spec


@pytest.mark.parametrize("text", ["sl 1", "su 0 2", "so 1 1", "sp 3", "sl", "xx 2", "sl two", "", "su 2"])
def test_invalid_specs(text):
    with pytest.raises(InvalidParams):
        parse_spec(text)


@pytest.mark.parametrize("text, dim, rank", [
    ("sl 2", 3, 1), ("sl 3", 8, 2), ("sl 4", 15, 3), ("su 2 1", 8, 1),
    ("so 1 4", 10, 1), ("so 2 3", 10, 2), ("sp 4", 10, 2),
])
def test_dimensions(text, dim, rank, algebra):
    L, C, _ = algebra(text)
    assert L.dim == dim
    assert C.a_frame.dim == rank
    assert C.k_frame.dim + C.p_frame.dim == dim


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_su_real_dimension(p, q):
    basis, _ = catalog.realization(AlgebraSpec("su_pq", (p, q)))
    assert len(basis) == (p + q) ** 2 - 1
    L = liealg.from_basis(basis)
    assert L.dim == (p + q) ** 2 - 1


@pytest.mark.parametrize("spec, expected_m", [("su 2 1", 1), ("so 1 4", 3)])
def test_m_dimension_against_kernel_oracle(spec, expected_m, algebra):
    family, *params = spec.split()
    basis, _ = catalog.realization(parse_spec(spec))
    _, m_dim = oracles.root_table(basis, oracles.hand_abelian(family, list(map(int, params))))
    assert m_dim == expected_m
    assert algebra(spec)[2].m_dim == expected_m


@pytest.mark.parametrize("spec", CATALOG)
def test_maximal_abelian(spec, algebra):
    L, C, _ = algebra(spec)
    for a in C.a_frame.vectors:
        assert C.norm(numkit.project(C.p_frame, a)[1]) < 1e-10
        for b in C.a_frame.vectors:
            assert C.norm(L.bracket(a, b)) < 1e-12
    cent = liealg.centralizer(L, C.a_frame, C.p_frame)
    assert cent.dim == C.a_frame.dim
    restricted = C.a_frame.vectors @ L.killing @ C.a_frame.vectors.T
    assert np.all(np.linalg.eigvalsh(restricted) > 0)


@pytest.mark.parametrize("spec", CATALOG)
def test_sigma_is_negative_transpose(spec, algebra):
    L, C, _ = algebra(spec)
    rng = np.random.default_rng(3)
    x = rng.standard_normal(L.dim)
    np.testing.assert_allclose(L.matrix(C.apply(x)), -L.matrix(x).T, atol=1e-12)


def _random_element(L, frame, rng, scale):
    return L.matrix(frame.random_unit(rng) * scale)


@pytest.mark.parametrize("spec", CATALOG)
def test_group_involution_integrates_sigma(spec, algebra):
    L, C, _ = algebra(spec)
    s = parse_spec(spec)
    rng = np.random.default_rng(11)
    for _ in range(10):
        x = rng.standard_normal(L.dim)
        x *= rng.uniform(0, 2) / np.linalg.norm(L.matrix(x))
        X = L.matrix(x)
        theta = catalog.group_involution(s, numkit.expm(X))
        assert np.linalg.norm(theta - numkit.expm(-X.T)) < 1e-9


def test_group_involution_fixed_points(algebra):
    s = parse_spec("sl 3")
    np.testing.assert_allclose(catalog.group_involution(s, np.eye(3)), np.eye(3))
    c, sn = np.cos(0.3), np.sin(0.3)
    k = np.array([[c, -sn, 0], [sn, c, 0], [0, 0, 1.0]])
    np.testing.assert_allclose(catalog.group_involution(s, k), k, atol=1e-15)


def test_not_in_group():
    with pytest.raises(NotInGroup):
        catalog.group_involution(parse_spec("sl 2"), 2 * np.eye(2))
    with pytest.raises(NotInGroup):
        catalog.group_involution(parse_spec("so 1 4"), numkit.expm(np.diag([1.0, -1, 0, 0, 0])))
    assert not catalog.k_membership(parse_spec("sl 2"), 2 * np.eye(2))


@pytest.mark.parametrize("spec", CATALOG)
def test_k_membership(spec, algebra):
    L, C, _ = algebra(spec)
    s = parse_spec(spec)
    rng = np.random.default_rng(5)
    n = L.matrix_size
    assert catalog.k_membership(s, np.eye(n))
    for _ in range(5):
        assert catalog.k_membership(s, numkit.expm(_random_element(L, C.k_frame, rng, 1.0)))
        a = C.a_frame.random_unit(rng) * rng.uniform(0.2, 1.0)
        assert not catalog.k_membership(s, numkit.expm(L.matrix(a)))
