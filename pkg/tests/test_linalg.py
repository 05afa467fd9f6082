import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loccgate.linalg import (
    hermitian_eigenvalues,
    nullspace_dimension,
    operator_basis,
    permute_party_to_front,
    represent_in_span,
    select_independent_subset,
    tensor_product,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def small_int_matrix(rows, cols):
    return st.lists(
        st.lists(st.integers(-3, 3), min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    ).map(lambda m: np.array(m, dtype=complex))


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# ---------------------------------------------------------------------------
# tensor_product


def test_tensor_identity():
    assert np.array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_pauli_block_pattern():
    out = tensor_product(SX, SZ)
    expected = np.zeros((4, 4), dtype=complex)
    expected[0:2, 2:4] = SZ
    expected[2:4, 0:2] = SZ
    assert np.array_equal(out, expected)


def test_tensor_entry_formula():
    rng = np.random.default_rng(0)
    a = random_complex(rng, 2, 3)
    b = random_complex(rng, 3, 2)
    out = tensor_product(a, b)
    for i in range(2):
        for j in range(3):
            for k in range(3):
                for l in range(2):
                    # kron may fuse multiplies (FMA), so compare to one ulp-ish
                    assert abs(out[i * 3 + k, j * 2 + l] - a[i, j] * b[k, l]) < 1e-14


@settings(max_examples=30, deadline=None)
@given(small_int_matrix(2, 2), small_int_matrix(2, 3), small_int_matrix(3, 2))
def test_tensor_associative_on_integers(a, b, c):
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c))
    assert np.array_equal(left, right)


# ---------------------------------------------------------------------------
# permute_party_to_front


def test_permute_party0_is_identity():
    rng = np.random.default_rng(1)
    m = random_complex(rng, 6, 6)
    assert np.array_equal(permute_party_to_front(m, [2, 3], 0), m)


def test_permute_swaps_two_factors():
    rng = np.random.default_rng(2)
    a = random_complex(rng, 2, 2)
    b = random_complex(rng, 3, 3)
    out = permute_party_to_front(np.kron(a, b), [2, 3], 1)
    assert np.allclose(out, np.kron(b, a), atol=1e-14)


@pytest.mark.parametrize("party", [0, 1, 2])
def test_permute_inverse_recovers_input(party):
    dims = [2, 3, 2]
    rng = np.random.default_rng(3)
    m = random_complex(rng, 12, 12)
    moved = permute_party_to_front(m, dims, party)
    # undo with the inverse index permutation
    n = len(dims)
    perm = [party] + [p for p in range(n) if p != party]
    inv = list(np.argsort(perm))
    new_dims = [dims[p] for p in perm]
    tens = moved.reshape(new_dims + new_dims)
    back = tens.transpose(inv + [n + p for p in inv]).reshape(12, 12)
    assert np.array_equal(back, m)


def test_permute_preserves_trace_hermiticity_eigenvalues():
    rng = np.random.default_rng(4)
    dims = [2, 3, 2]
    x = random_complex(rng, 12, 12)
    h = x + x.conj().T
    for party in range(3):
        out = permute_party_to_front(h, dims, party)
        assert abs(np.trace(out) - np.trace(h)) < 1e-10
        assert np.max(np.abs(out - out.conj().T)) < 1e-12
        assert np.allclose(
            hermitian_eigenvalues(out), hermitian_eigenvalues(h), atol=1e-10
        )


def test_permute_rejects_bad_dims():
    with pytest.raises(ValueError):
        permute_party_to_front(np.eye(5), [2, 3], 0)
    with pytest.raises(ValueError):
        permute_party_to_front(np.eye(6), [2, 3], 2)


# ---------------------------------------------------------------------------
# operator_basis


def test_operator_basis_qubit_is_pauli_set():
    basis = operator_basis(2)
    expected = [np.eye(2) / np.sqrt(2), SX / np.sqrt(2), SY / np.sqrt(2), SZ / np.sqrt(2)]
    assert len(basis.elements) == 4
    for want in expected:
        assert any(np.allclose(got, want, atol=1e-14) for got in basis.elements)


def test_operator_basis_gram_is_identity_d3():
    basis = operator_basis(3)
    assert len(basis.elements) == 9
    gram = np.array(
        [[np.trace(a.conj().T @ b) for b in basis.elements] for a in basis.elements]
    )
    assert np.max(np.abs(gram - np.eye(9))) < 1e-12


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_operator_basis_identity_first_rest_traceless(d):
    basis = operator_basis(d)
    assert np.allclose(basis.elements[0], np.eye(d) / np.sqrt(d), atol=1e-14)
    for el in basis.elements[1:]:
        assert abs(np.trace(el)) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_operator_basis_reconstructs_random_matrix(d):
    rng = np.random.default_rng(d)
    m = random_complex(rng, d, d)
    coeffs = [np.trace(el.conj().T @ m) for el in operator_basis(d).elements]
    rebuilt = sum(c * el for c, el in zip(coeffs, operator_basis(d).elements))
    assert np.max(np.abs(rebuilt - m)) < 1e-10


# ---------------------------------------------------------------------------
# hermitian_eigenvalues


def test_eigenvalues_sorted_ascending():
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])


def test_eigenvalues_sigma_x():
    assert np.allclose(hermitian_eigenvalues(SX), [-1, 1])


def test_eigenvalues_match_quadratic_roots():
    # independent 2x2 oracle: (a+c)/2 +- sqrt(((a-c)/2)^2 + |b|^2)
    rng = np.random.default_rng(6)
    for _ in range(25):
        a, c = rng.standard_normal(2)
        b = complex(*rng.standard_normal(2))
        h = np.array([[a, b], [np.conj(b), c]])
        mid = (a + c) / 2
        off = np.sqrt(((a - c) / 2) ** 2 + abs(b) ** 2)
        assert np.allclose(hermitian_eigenvalues(h), [mid - off, mid + off], atol=1e-12)


def test_eigenvalue_sum_is_trace_and_gram_psd():
    rng = np.random.default_rng(7)
    x = random_complex(rng, 8, 8)
    h = x + x.conj().T
    evals = hermitian_eigenvalues(h)
    assert abs(np.sum(evals) - np.trace(h).real) < 1e-8 * max(1.0, abs(np.trace(h)))
    q = random_complex(rng, 6, 4)
    gram_evals = hermitian_eigenvalues(q.conj().T @ q)
    assert np.min(gram_evals) > -1e-10


def test_eigenvalues_reject_bad_input():
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.ones((2, 3)))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


# ---------------------------------------------------------------------------
# select_independent_subset


def test_subset_keeps_orthogonal_vectors():
    vecs = [np.array([1, 0, 0]), np.array([0, 2, 0]), np.array([0, 0, 3])]
    assert select_independent_subset(vecs, 1e-9).indices == [0, 1, 2]


def test_subset_rejects_duplicate_direction():
    v = np.array([1.0, 1.0, 0.0])
    w = np.array([0.0, 0.0, 5.0])
    subset = select_independent_subset([v, 2 * v, w], 1e-9)
    assert subset.indices == [0, 2]
    assert np.allclose(subset.expansion[1], [2.0, 0.0], atol=1e-12)


def test_subset_all_zero_input_is_empty():
    subset = select_independent_subset([np.zeros(4), np.zeros(4)], 1e-9)
    assert subset.indices == []


def test_subset_expansion_reproduces_rejected():
    rng = np.random.default_rng(8)
    base = [random_complex(rng, 6) for _ in range(3)]
    vecs = base + [base[0] + 2j * base[2], 0.5 * base[1]]
    subset = select_independent_subset(vecs, 1e-9)
    assert subset.indices == [0, 1, 2]
    for j, coeffs in subset.expansion.items():
        rebuilt = sum(c * vecs[i] for c, i in zip(coeffs, subset.indices))
        assert np.linalg.norm(rebuilt - vecs[j]) <= 1e-9 * np.linalg.norm(vecs[j])


@settings(max_examples=25, deadline=None)
@given(
    st.integers(2, 5),
    st.integers(1, 4),
    st.integers(0, 3),
    st.integers(0, 2 ** 31 - 1),
)
def test_subset_size_matches_rank(length, n_independent, n_dependent, seed):
    # plant the rank by construction: an orthonormal block plus combinations of it
    n_independent = min(n_independent, length)
    rng = np.random.default_rng(seed)
    block, _ = np.linalg.qr(random_complex(rng, length, n_independent))
    base = [block[:, i] for i in range(n_independent)]
    extras = []
    for _ in range(n_dependent):
        weights = rng.standard_normal(n_independent)
        extras.append(sum(w * b for w, b in zip(weights, base)))
    vecs = base + extras
    subset = select_independent_subset(vecs, 1e-9)
    stacked = np.stack(vecs, axis=1)
    nullity, _, _ = nullspace_dimension(stacked, 1e-12)
    assert len(subset.indices) == stacked.shape[1] - nullity


def test_subset_rejects_bad_args():
    with pytest.raises(ValueError):
        select_independent_subset([], 1e-9)
    with pytest.raises(ValueError):
        select_independent_subset([np.ones(2)], 0.0)
    with pytest.raises(ValueError):
        select_independent_subset([np.ones(2), np.ones(3)], 1e-9)


# ---------------------------------------------------------------------------
# represent_in_span


def test_represent_exact_combination():
    e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    coeffs, residual = represent_in_span([e1, e2], e1 + e2)
    assert np.allclose(coeffs, [1, 1], atol=1e-12)
    assert residual < 1e-12


def test_represent_reports_residual_outside_span():
    e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    coeffs, residual = represent_in_span([e1], e2)
    assert np.allclose(coeffs, [0.0], atol=1e-12)
    assert abs(residual - 1.0) < 1e-12


def test_represent_matches_normal_equations():
    rng = np.random.default_rng(9)
    basis = [random_complex(rng, 5) for _ in range(5)]
    target = random_complex(rng, 5)
    coeffs, residual = represent_in_span(basis, target)
    # independent oracle: solve the normal equations directly
    b = np.stack(basis, axis=1)
    oracle = np.linalg.solve(b.conj().T @ b, b.conj().T @ target)
    assert np.allclose(coeffs, oracle, atol=1e-9)
    assert residual < 1e-9


# ---------------------------------------------------------------------------
# nullspace_dimension


def test_nullspace_zero_matrix():
    dim, eig_min, eig_max = nullspace_dimension(np.zeros((3, 2)), 1e-13)
    assert dim == 2
    assert eig_max == 0.0


def test_nullspace_identity():
    dim, eig_min, eig_max = nullspace_dimension(np.eye(3), 1e-13)
    assert dim == 0
    assert abs(eig_min - 1.0) < 1e-12 and abs(eig_max - 1.0) < 1e-12


def test_nullspace_rank_one_outer_product():
    rng = np.random.default_rng(10)
    u = random_complex(rng, 4)
    v = random_complex(rng, 3)
    dim, _, _ = nullspace_dimension(np.outer(u, v.conj()), 1e-9)
    assert dim == 2


def test_nullspace_rejects_empty():
    with pytest.raises(ValueError):
        nullspace_dimension(np.zeros((0, 2)), 1e-9)
