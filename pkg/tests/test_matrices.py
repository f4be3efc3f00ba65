import json
import math

import numpy as np
import pytest

from eub import (
    RngSeed,
    fourier_matrix,
    haar_unitary,
    is_unitary,
    largest_singular_value,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    require_unitary,
    save_matrix,
    submatrix,
    unitarity_residual,
)

SEED = 20240817


def test_rng_seed_validation():
    RngSeed(0)
    RngSeed(2**64 - 1, stream=3)
    with pytest.raises(ValueError):
        RngSeed(-1)
    with pytest.raises(ValueError):
        RngSeed(2**64)
    with pytest.raises(ValueError):
        RngSeed(0, stream=-2)
    assert RngSeed(5, 7).to_json() == {"seed": 5, "stream": 7}


def test_largest_singular_value_examples():
    assert largest_singular_value(np.diag([3.0, 4.0])) == pytest.approx(4.0, abs=1e-12)
    # column vector: sigma_1 is the 2-norm
    v = np.array([[3.0], [4.0]])
    assert largest_singular_value(v) == pytest.approx(5.0, abs=1e-12)
    row = np.array([[1.0, 2.0, 2.0]])
    assert largest_singular_value(row) == pytest.approx(3.0, abs=1e-12)
    assert largest_singular_value(np.zeros((2, 3))) == pytest.approx(0.0, abs=1e-15)


def test_largest_singular_value_adjoint_symmetry():
    "sigma_1(A) = sigma_1(A*) for random rectangular complex blocks."
    rng = np.random.default_rng(SEED)
    for _ in range(200):
        m = int(rng.integers(1, 7))
        n = int(rng.integers(1, 7))
        a = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        s1 = largest_singular_value(a)
        s2 = largest_singular_value(a.conj().T)
        assert abs(s1 - s2) <= 1e-12 * max(1.0, s1)
        # never exceeds the Frobenius norm, never less than max column norm
        assert s1 <= np.linalg.norm(a) + 1e-12
        assert s1 >= np.abs(a).max() - 1e-12


def test_haar_unitary_is_unitary():
    for n in range(1, 9):
        for i in range(25):
            u = haar_unitary(n, RngSeed(SEED + i, stream=n))
            assert u.shape == (n, n)
            assert is_unitary(u)
            assert unitarity_residual(u) <= 1e-12


def test_haar_reproducibility():
    a = haar_unitary(5, RngSeed(123, stream=9))
    b = haar_unitary(5, RngSeed(123, stream=9))
    assert np.array_equal(a, b)
    c = haar_unitary(5, RngSeed(123, stream=10))
    assert not np.allclose(a, c)
    d = haar_unitary(5, RngSeed(124, stream=9))
    assert not np.allclose(a, d)


def test_haar_entry_moment():
    """E|U_ij|^2 = 1/n under the invariant measure."""
    n = 4
    rng = np.random.default_rng(SEED)
    total = 0.0
    draws = 3000
    for i in range(draws):
        u = haar_unitary(n, RngSeed(SEED + i))
        total += abs(u[0, 0]) ** 2
    assert abs(total / draws - 1.0 / n) < 0.01
    del rng


def test_fourier_matrix_unitary():
    for n in (2, 3, 4, 7):
        f = fourier_matrix(n)
        assert is_unitary(f)
        assert np.allclose(np.abs(f), 1.0 / math.sqrt(n), atol=1e-12)


def test_require_unitary_messages():
    with pytest.raises(ValueError, match="square"):
        require_unitary(np.ones((2, 3)))
    with pytest.raises(ValueError, match="unitarity residual"):
        require_unitary(np.eye(3) * 1.01)
    u = require_unitary(np.eye(3))
    assert u.dtype == complex


def test_submatrix_basic():
    m = np.arange(12.0).reshape(3, 4)
    s = submatrix(m, [0, 2], [1, 3])
    assert s.shape == (2, 2)
    assert np.array_equal(s, np.array([[1.0, 3.0], [9.0, 11.0]]))
    with pytest.raises(IndexError):
        submatrix(m, [0, 3], [0])
    with pytest.raises(IndexError):
        submatrix(m, [0], [4])
    with pytest.raises(IndexError):
        submatrix(m, [0, 0], [1])  # repeated row index
    with pytest.raises(IndexError):
        submatrix(m, [], [1])


def test_matrix_json_roundtrip(tmp_path):
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        m = int(rng.integers(1, 6))
        n = int(rng.integers(1, 6))
        a = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        b = matrix_from_json(matrix_to_json(a))
        assert np.array_equal(a, b)
    path = tmp_path / "m.json"
    u = haar_unitary(4, RngSeed(77))
    save_matrix(path, u)
    v = load_matrix(path)
    assert np.array_equal(u, v)


def test_matrix_json_rejects_bad_payloads(tmp_path):
    good = matrix_to_json(np.eye(2))
    for key in ("rows", "cols", "re", "im"):
        bad = dict(good)
        del bad[key]
        with pytest.raises(ValueError):
            matrix_from_json(bad)
    bad = dict(good)
    bad["re"] = [[1.0, 0.0]]  # shape disagrees with rows
    with pytest.raises(ValueError):
        matrix_from_json(bad)
    bad = dict(good)
    bad["re"] = [[float("nan"), 0.0], [0.0, 1.0]]
    with pytest.raises(ValueError):
        matrix_from_json(bad)
    bad = dict(good)
    bad["im"] = [[0.0, float("inf")], [0.0, 0.0]]
    with pytest.raises(ValueError):
        matrix_from_json(bad)

    # token-level NaN/Infinity in the file must also be rejected
    path = tmp_path / "nan.json"
    path.write_text('{"rows": 1, "cols": 1, "re": [[NaN]], "im": [[0.0]]}')
    with pytest.raises(ValueError):
        load_matrix(path)
    path.write_text('{"rows": 1, "cols": 1, "re": [[1e999]], "im": [[0.0]]}')
    with pytest.raises(ValueError):
        load_matrix(path)


def test_save_matrix_emits_parseable_json(tmp_path):
    path = tmp_path / "u.json"
    save_matrix(path, fourier_matrix(3))
    obj = json.loads(path.read_text())
    assert obj["rows"] == 3 and obj["cols"] == 3
    assert len(obj["re"]) == 3 and len(obj["im"]) == 3
