import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tubeserre.gfmat import GF, field, kernel_basis, quotient_basis, rank, solve_affine

PRIMES = [2, 3, 5, 7, 11]


@st.composite
def matrices(draw, max_dim=5):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(entries, dtype=np.int64).reshape(r, c)


def test_rejects_composite_and_large_moduli():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(40009)


def test_inverse_table():
    F = field(7)
    assert all(a * F.inv(a) % 7 == 1 for a in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_kernel_of_zero_map():
    K = kernel_basis([[0]], p=5)
    assert K.shape == (1, 1) and K[0, 0] != 0


def test_kernel_of_identity_is_empty():
    assert kernel_basis(np.eye(2, dtype=np.int64), p=5).shape == (2, 0)


def test_kernel_example():
    A = np.array([[1, 2, 0], [0, 0, 1]])
    K = kernel_basis(A, p=5)
    assert K.shape == (3, 1)
    assert not ((A @ K) % 5).any()
    # spans (3, 1, 0)
    v = K[:, 0]
    assert rank(np.stack([v, [3, 1, 0]], axis=1), p=5) == 1


def test_solve_identity_and_inconsistent():
    b = np.array([3, 4])
    assert np.array_equal(solve_affine(np.eye(2, dtype=np.int64), b, p=5), b)
    assert solve_affine([[0]], [1], p=5) is None


def test_solve_underdetermined():
    x = solve_affine([[2, 1]], [3], p=5)
    assert (2 * x[0] + x[1]) % 5 == 3


def test_quotient_examples():
    F = field(5)
    reps, proj = F.quotient_basis(np.eye(2, dtype=np.int64), np.zeros((2, 0), dtype=np.int64))
    assert reps.shape == (2, 2) and np.array_equal((proj @ reps) % 5, np.eye(2))
    reps, proj = F.quotient_basis(np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64))
    assert reps.shape == (2, 0) and proj.shape == (0, 2)
    reps, proj = quotient_basis(np.eye(2, dtype=np.int64), np.array([[1], [1]]), p=5)
    assert reps.shape[1] == 1
    a, b = proj @ np.array([1, 0]) % 5, proj @ np.array([0, 1]) % 5
    assert np.array_equal(a, (-b) % 5)


def test_quotient_rejects_w_outside_v():
    with pytest.raises(ValueError):
        quotient_basis(np.array([[1], [0]]), np.array([[0], [1]]), p=5)


def test_empty_matrices():
    F = field(5)
    assert F.rank(np.zeros((0, 3), dtype=np.int64)) == 0
    assert F.kernel_basis(np.zeros((0, 3), dtype=np.int64)).shape == (3, 3)
    assert F.kernel_basis(np.zeros((2, 0), dtype=np.int64)).shape == (0, 0)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(data):
    p, A = data
    F = field(p)
    K = F.kernel_basis(A)
    assert F.rank(A) + K.shape[1] == A.shape[1]
    assert F.rank(A) <= min(A.shape)
    if K.size:
        assert not ((A @ K) % p).any()
        assert F.rank(K) == K.shape[1]


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 2**31))
def test_solve_consistent_systems(data, seed):
    p, A = data
    rng = np.random.default_rng(seed)
    x0 = rng.integers(0, p, size=A.shape[1])
    b = (A @ x0) % p
    x = field(p).solve_affine(A, b)
    assert x is not None and np.array_equal((A @ x) % p, b)


@settings(max_examples=40, deadline=None)
@given(matrices(), st.integers(0, 2**31))
def test_quotient_kills_w(data, seed):
    p, A = data
    F = field(p)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return
    rng = np.random.default_rng(seed)
    W = (A @ rng.integers(0, p, size=(A.shape[1], 2))) % p
    reps, proj = F.quotient_basis(A, W)
    assert reps.shape[1] == F.rank(A) - F.rank(W)
    assert not ((proj @ W) % p).any()
    v = (A @ rng.integers(0, p, size=A.shape[1])) % p
    w = (W @ rng.integers(0, p, size=2)) % p
    assert np.array_equal((proj @ (v + w)) % p, (proj @ v) % p)
    assert np.array_equal((proj @ reps) % p, np.eye(reps.shape[1], dtype=np.int64))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(1, 5), st.integers(0, 2**31))
def test_inverse_roundtrip(p, n, seed):
    F = field(p)
    A = F.random_invertible(np.random.default_rng(seed), n)
    assert np.array_equal(F.matmul(A, F.inverse(A)), np.eye(n, dtype=np.int64))


def test_singular_inverse_raises():
    with pytest.raises(np.linalg.LinAlgError):
        field(5).inverse(np.array([[1, 2], [2, 4]]))


def test_determinism():
    A = np.random.default_rng(3).integers(0, 7, size=(4, 6))
    assert np.array_equal(kernel_basis(A, p=7), kernel_basis(A.copy(), p=7))
