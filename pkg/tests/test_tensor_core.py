import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from piezoinv import tensor_core as tc
from piezoinv.tensor_core import (
    EPS, Harm2, Harm3, PiezoTensor, SkewMat3, SymMat3, axial_of_skew, d0, d1, eps_bracket,
    g_theta, levi_civita, rotate, skew_of_axial, triple_product,
)

from helpers import random_piezo

angles = st.floats(-np.pi, np.pi, allow_nan=False)
coef = st.floats(-3, 3, allow_nan=False)


def test_levi_civita_values():
    assert levi_civita(1, 2, 3) == 1
    assert levi_civita(2, 1, 3) == -1
    assert levi_civita(3, 1, 2) == 1
    assert levi_civita(1, 1, 2) == 0
    with pytest.raises(ValueError):
        levi_civita(0, 1, 2)
    with pytest.raises(ValueError):
        levi_civita(1, 2, 4)


def test_eps_array_matches_symbol_and_is_read_only():
    for i in range(3):
        for j in range(3):
            for k in range(3):
                assert EPS[i, j, k] == levi_civita(i + 1, j + 1, k + 1)
    with pytest.raises(ValueError):
        EPS[0, 1, 2] = 5.0


def test_compact_index_map():
    C = np.zeros((3, 6))
    C[0, 0] = 1.0
    P = PiezoTensor(C).full
    assert P[0, 0, 0] == 1.0
    assert np.count_nonzero(P) == 1


def test_compact_columns_follow_pair_order():
    C = np.arange(18, dtype=float).reshape(3, 6)
    P = PiezoTensor(C).full
    for a, (j, k) in enumerate(((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))):
        assert np.all(P[:, j, k] == C[:, a])
        assert np.all(P[:, k, j] == C[:, a])


def test_full_compact_roundtrip(rng):
    P = random_piezo(rng)
    T = PiezoTensor.from_full(P)
    assert np.array_equal(T.full, P)
    assert np.array_equal(PiezoTensor(T.compact).compact, T.compact)


def test_symmetry_violation_rejected():
    P = np.zeros((3, 3, 3))
    P[0, 1, 2] = 1e-3
    with pytest.raises(ValueError, match=r"P\[1\]\[2\]\[3\]"):
        PiezoTensor.from_full(P)


def test_cached_full_is_read_only(rng):
    T = PiezoTensor.from_full(random_piezo(rng))
    with pytest.raises(ValueError):
        T.full[0, 0, 0] = 1.0


def test_harm3_storage_and_traces(rng):
    A = Harm3(rng.standard_normal(7))
    F = A.full
    for p in ((0, 2, 1), (1, 0, 2), (2, 1, 0)):
        assert np.allclose(F, F.transpose(p))
    assert np.allclose(np.einsum("iik->k", F), 0.0, atol=1e-15)
    assert np.allclose(Harm3.from_full(F).comps, A.comps)
    assert A["A223"] == A.comps[5]


def test_harm2_and_symmat_roundtrip(rng):
    M = rng.standard_normal((3, 3))
    M = M + M.T
    S = SymMat3.from_full(M)
    assert np.allclose(S.full, M)
    H = Harm2.from_full(M)
    assert abs(np.trace(H.full)) < 1e-15
    assert np.allclose(H.full, M - np.trace(M) / 3 * np.eye(3))


def test_triple_product_orientation():
    e = np.eye(3)
    assert triple_product(e[0], e[1], e[2]) == 1.0
    assert triple_product(e[1], e[0], e[2]) == -1.0


@given(st.lists(coef, min_size=9, max_size=9))
def test_triple_product_is_determinant(xs):
    u, v, w = np.reshape(xs, (3, 3))
    assert np.isclose(triple_product(u, v, w), np.linalg.det(np.array([u, v, w])), atol=1e-10)


def test_skew_axial_pair():
    e2, e3 = np.eye(3)[1], np.eye(3)[2]
    W = np.outer(e2, e3) - np.outer(e3, e2)
    assert np.allclose(axial_of_skew(W), -np.eye(3)[0])
    v = np.array([0.3, -1.2, 2.0])
    assert np.allclose(axial_of_skew(skew_of_axial(v)), v)
    assert isinstance(skew_of_axial(v), SkewMat3)


def test_eps_bracket_kills_symmetric(rng):
    M = rng.standard_normal((3, 3))
    assert np.allclose(eps_bracket(M + M.T), 0.0)


def test_rotation_rejects_reflection():
    with pytest.raises(ValueError):
        tc.check_rotation(np.diag([-1.0, 1.0, 1.0]))
    with pytest.raises(ValueError):
        tc.check_rotation(np.eye(2))


@given(st.integers(0, 2 ** 31), st.integers(0, 2 ** 31))
def test_rotation_composes(s1, s2):
    g1, g2 = tc.random_rotation(s1), tc.random_rotation(s2)
    T = np.random.default_rng(s1 ^ s2).standard_normal((3, 3, 3))
    lhs = rotate(g1, rotate(g2, T))
    assert np.allclose(lhs, rotate(g1 @ g2, T), atol=1e-12)
    assert np.isclose(np.linalg.norm(lhs), np.linalg.norm(T))


def test_typed_rotation_matches_arrays(rng):
    g = tc.random_rotation(rng)
    A = Harm3(rng.standard_normal(7))
    assert np.allclose(rotate(g, A).full, rotate(g, A.full))
    P = PiezoTensor.from_full(random_piezo(rng))
    assert np.allclose(rotate(g, P).full, rotate(g, P.full))
    M = rng.standard_normal((3, 3))
    assert np.allclose(rotate(g, SymMat3.from_full(M + M.T)).full, g @ (M + M.T) @ g.T)
    with pytest.raises(TypeError):
        rotate(g, "not a tensor")


def test_d0_fixed_by_plane_rotations():
    for th in np.linspace(0, 2 * np.pi, 7):
        assert np.allclose(rotate(g_theta(th), d0()), d0())
        W = np.outer(np.eye(3)[1], np.eye(3)[2]) - np.outer(np.eye(3)[2], np.eye(3)[1])
        assert np.allclose(rotate(g_theta(th), W), W)


@given(coef, coef, coef, angles)
def test_d1_rotates_by_three_theta(a, b, g, th):
    got = rotate(g_theta(th), d1(a, b, g)).comps
    c3, s3 = np.cos(3 * th), np.sin(3 * th)
    want = d1(a * c3 - b * s3, a * s3 + b * c3, g).comps
    assert np.allclose(got, want, atol=1e-12)


def test_d1_layout():
    assert np.allclose(d1(2.0, 3.0, 5.0).comps, [-10, 5, 0, 2, 0, 3, 0])
    assert np.allclose(rotate(g_theta(0.7), d1(0, 0, 1.3)).comps, d1(0, 0, 1.3).comps)


def test_random_rotation_seeded():
    assert np.array_equal(tc.random_rotation(5), tc.random_rotation(5))
    g = tc.random_rotation(5)
    assert np.allclose(g @ g.T, np.eye(3)) and np.isclose(np.linalg.det(g), 1.0)
