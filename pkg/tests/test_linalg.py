import numpy as np
import pytest

from skewham.linalg import (
    SymplecticForm,
    Tolerance,
    apply_j,
    apply_jt,
    format_matrix,
    frobenius_norm,
    is_skew_hamiltonian,
    j_matrix,
    load_matrix,
    numerical_rank,
    orthonormal_complement,
    pinv,
    save_matrix,
    spectral_norm,
    star_adjoint,
)


def _outer(i, j, dim=4):
    e = np.eye(dim)
    return np.outer(e[:, i], e[:, j])


def test_j_matrix_small():
    assert np.array_equal(j_matrix(1), [[0.0, 1.0], [-1.0, 0.0]])
    expected = [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
    assert np.array_equal(j_matrix(2), expected)
    with pytest.raises(ValueError):
        j_matrix(0)


def test_j_matrix_is_orthogonal_and_antisymmetric():
    for n in (1, 2, 5):
        j = j_matrix(n)
        assert np.array_equal(j.T @ j, np.eye(2 * n))
        assert np.array_equal(j.T, -j)


def test_apply_j_matches_materialized_matrix():
    rng = np.random.default_rng(0)
    for n in (1, 3):
        j = j_matrix(n)
        a = rng.standard_normal((2 * n, 3))
        assert np.array_equal(apply_j(a), j @ a)
        assert np.array_equal(apply_jt(a), j.T @ a)
        v = rng.standard_normal(2 * n)
        assert np.array_equal(apply_j(v), j @ v)
    with pytest.raises(ValueError):
        apply_j(np.zeros((3, 2)))


def test_symplectic_form_type():
    form = SymplecticForm(2)
    assert np.array_equal(form.matrix(), j_matrix(2))
    u, v = np.array([1.0, 2.0]), np.array([3.0, 4.0])
    assert np.array_equal(form.apply(np.concatenate([u, v])), np.concatenate([v, -u]))
    assert np.array_equal(
        form.apply_transpose(np.concatenate([u, v])), np.concatenate([-v, u])
    )
    with pytest.raises(ValueError):
        form.apply(np.zeros(6))
    with pytest.raises(ValueError):
        SymplecticForm(0)


def test_tolerance_validation():
    assert Tolerance().rel == 1e-10
    assert Tolerance().abs == 1e-13
    with pytest.raises(ValueError):
        Tolerance(rel=-1.0)


def test_star_adjoint_examples():
    assert np.array_equal(star_adjoint(np.eye(4)), np.eye(4))
    j1 = j_matrix(1)
    assert np.array_equal(star_adjoint(j1), -j1)
    assert np.array_equal(star_adjoint(_outer(1, 0)), _outer(2, 3))
    with pytest.raises(ValueError):
        star_adjoint(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        star_adjoint(np.zeros((2, 4)))


def test_star_adjoint_involution_and_linearity():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((8, 8))
    b = rng.standard_normal((8, 8))
    assert np.array_equal(star_adjoint(star_adjoint(a)), a)
    assert np.allclose(
        star_adjoint(2.5 * a - 0.5 * b),
        2.5 * star_adjoint(a) - 0.5 * star_adjoint(b),
        atol=1e-14,
    )


def test_skew_symmetric_correspondence():
    # J.T @ S is skew-Hamiltonian for skew-symmetric S, and J recovers S.
    rng = np.random.default_rng(2)
    m = rng.standard_normal((6, 6))
    s = np.tril(m, -1)
    s = s - s.T
    h = apply_jt(s)
    assert is_skew_hamiltonian(h).defect == 0.0
    assert np.array_equal(apply_j(h), s)


def test_is_skew_hamiltonian_examples():
    ok = is_skew_hamiltonian(np.eye(4))
    assert ok.passed and ok.defect == 0.0
    bad = is_skew_hamiltonian(j_matrix(2))
    assert not bad.passed
    assert bad.defect == pytest.approx(2 * frobenius_norm(j_matrix(2)))
    assert is_skew_hamiltonian(_outer(1, 0) + _outer(2, 3)).passed
    assert bool(ok) and not bool(bad)


def test_pinv_simple_cases():
    assert np.allclose(pinv(np.eye(3)), np.eye(3), atol=1e-15)
    e1 = np.eye(4)[:, :1]
    assert np.allclose(pinv(e1), e1.T, atol=1e-15)
    q, _ = np.linalg.qr(np.random.default_rng(3).standard_normal((6, 3)))
    assert np.allclose(pinv(q), q.T, atol=1e-14)
    assert pinv(np.zeros((4, 0))).shape == (0, 4)
    assert pinv(np.zeros((3, 3))).shape == (3, 3)


@pytest.mark.parametrize("rank", [1, 2, 4])
def test_pinv_penrose_identities(rank):
    rng = np.random.default_rng(rank)
    x = rng.standard_normal((6, rank)) @ rng.standard_normal((rank, 4))
    p = pinv(x)
    scale = 1e-10 * max(1.0, spectral_norm(x))
    assert np.linalg.norm(x @ p @ x - x) <= scale
    assert np.linalg.norm(p @ x @ p - p) <= scale
    assert np.linalg.norm((x @ p).T - x @ p) <= scale
    assert np.linalg.norm((p @ x).T - p @ x) <= scale


def test_numerical_rank():
    rng = np.random.default_rng(4)
    for r in (1, 2, 3):
        x = rng.standard_normal((7, r)) @ rng.standard_normal((r, 5))
        assert numerical_rank(x) == r
    assert numerical_rank(np.zeros((4, 2))) == 0
    assert numerical_rank(np.zeros((4, 0))) == 0


def test_orthonormal_complement_examples():
    e1 = np.eye(4)[:, :1]
    q = orthonormal_complement(e1)
    assert q.shape == (4, 3)
    assert np.linalg.norm(q.T @ e1) <= 1e-14
    assert np.allclose(q @ q.T, np.eye(4) - e1 @ e1.T, atol=1e-14)
    assert np.array_equal(orthonormal_complement(np.zeros((4, 0))), np.eye(4))
    assert orthonormal_complement(np.eye(4)).shape == (4, 0)


def test_orthonormal_complement_handles_rank_deficiency():
    rng = np.random.default_rng(5)
    v = rng.standard_normal((6, 1))
    q = orthonormal_complement(np.hstack([v, 2 * v]))
    assert q.shape == (6, 5)
    assert np.linalg.norm(q.T @ v) <= 1e-12
    assert np.allclose(q.T @ q, np.eye(5), atol=1e-14)


def test_orthonormal_complement_random_property():
    rng = np.random.default_rng(6)
    x = rng.standard_normal((8, 3))
    q = orthonormal_complement(x)
    assert q.shape == (8, 5)
    assert np.linalg.norm(q.T @ x) <= 1e-10 * np.linalg.norm(x)
    assert np.linalg.norm(q.T @ q - np.eye(5)) <= 10 * np.finfo(float).eps * 8


def test_norms():
    assert spectral_norm(np.eye(3)) == pytest.approx(1.0)
    assert spectral_norm(np.diag([3.0, 1.0])) == pytest.approx(3.0)
    assert spectral_norm(_outer(1, 0) + _outer(2, 3)) == pytest.approx(1.0)
    assert frobenius_norm(np.zeros((3, 3))) == 0.0
    assert frobenius_norm(np.eye(5)) == pytest.approx(np.sqrt(5))
    assert frobenius_norm(_outer(1, 0) + _outer(2, 3)) == pytest.approx(np.sqrt(2))


def test_matrix_io_roundtrip(tmp_path):
    rng = np.random.default_rng(7)
    a = rng.standard_normal((5, 3))
    a[0, 0] = 1e-308
    a[1, 1] = -1.2345678901234567e300
    a[2, 2] = np.pi
    path = tmp_path / "m.txt"
    save_matrix(path, a)
    assert np.array_equal(load_matrix(path), a)


def test_format_matrix_layout():
    assert format_matrix([[0.5, -1.0]]) == "1 2\n0.5 -1\n"


def test_load_matrix_rejects_bad_input(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("")
    with pytest.raises(ValueError):
        load_matrix(path)
    path.write_text("two by2\n1 2\n3 4\n")
    with pytest.raises(ValueError):
        load_matrix(path)
    path.write_text("2 2\n1 2\n")
    with pytest.raises(ValueError):
        load_matrix(path)
    path.write_text("1 2\n1 2 3\n")
    with pytest.raises(ValueError):
        load_matrix(path)
    path.write_text("1 1\nnan\n")
    with pytest.raises(ValueError):
        load_matrix(path)
    path.write_text("0 2\n")
    with pytest.raises(ValueError):
        load_matrix(path)
