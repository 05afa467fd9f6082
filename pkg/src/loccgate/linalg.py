"""Dense complex linear algebra primitives at desk scale.

Everything operates on plain numpy arrays (complex128) and is a pure function
of its inputs, so concurrent use is safe.  Matrices are assumed small (a few
hundred rows at most); there are no sparse formats and no generalized
eigenproblems here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Relative residual below which a vector counts as linearly dependent.  Well
# above double-precision noise for the operator counts handled here, well
# below genuine independence scales.
DEFAULT_INDEPENDENCE_TOL = 1e-9


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with entry [i*p+k, j*q+l] = a[i,j] * b[k,l]."""
    return np.kron(np.asarray(a), np.asarray(b))


def permute_party_to_front(m: np.ndarray, dims, party: int) -> np.ndarray:
    """Re-express a square operator so the chosen party's factor comes first.

    ``m`` acts on a tensor product of subsystems with dimensions ``dims``; the
    result acts on H_party tensor H_rest with the remaining factors kept in
    their original relative order.  ``party = 0`` returns the input unchanged.
    """
    dims = [int(d) for d in dims]
    total = math.prod(dims)
    m = np.asarray(m, dtype=complex)
    if m.shape != (total, total):
        raise ValueError(
            f"operator has shape {m.shape}, expected {(total, total)} for dims {dims}"
        )
    if not 0 <= party < len(dims):
        raise ValueError(f"party index {party} out of range for {len(dims)} parties")
    n = len(dims)
    perm = [party] + [p for p in range(n) if p != party]
    tens = m.reshape(dims + dims)
    tens = tens.transpose(perm + [n + p for p in perm])
    return tens.reshape(total, total)


@dataclass(frozen=True)
class OperatorBasis:
    """Hilbert-Schmidt orthonormal basis of d x d operators, identity first."""

    dim: int
    elements: tuple[np.ndarray, ...]


def operator_basis(d: int) -> OperatorBasis:
    """Deterministic orthonormal operator basis on dimension ``d``.

    The first element is I/sqrt(d); the remaining d^2 - 1 elements are
    traceless, built from the generalized Gell-Mann families in a fixed order:
    symmetric off-diagonal, antisymmetric off-diagonal, then diagonal.  Every
    element has unit Hilbert-Schmidt norm.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    elements = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1.0 / np.sqrt(2)
            elements.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j / np.sqrt(2)
            m[k, j] = 1j / np.sqrt(2)
            elements.append(m)
    for level in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(level), np.arange(level)] = 1.0
        m[level, level] = -float(level)
        elements.append(m / np.sqrt(level * (level + 1)))
    return OperatorBasis(dim=d, elements=tuple(elements))


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    The input is symmetrized before solving; grossly non-Hermitian input
    (residual above 1e-6 relative to the largest entry) is rejected.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"matrix must be square, got shape {h.shape}")
    scale = float(np.max(np.abs(h))) if h.size else 0.0
    residual = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if scale > 0.0 and residual > 1e-6 * scale:
        raise ValueError(
            f"matrix is not Hermitian (residual {residual:.3e} at scale {scale:.3e})"
        )
    return np.linalg.eigvalsh((h + h.conj().T) / 2.0)


@dataclass
class IndependentSubset:
    """Selected indices S plus expansion coefficients for rejected vectors.

    ``expansion[j]`` holds least-squares coefficients over the selected
    vectors (in ``indices`` order) reproducing rejected vector ``j``.
    """

    indices: list[int]
    expansion: dict[int, np.ndarray]


def select_independent_subset(vectors, tol: float = DEFAULT_INDEPENDENCE_TOL) -> IndependentSubset:
    """Greedy maximal linearly independent subset, scanned in input order.

    Uses modified Gram-Schmidt with one reorthogonalization pass.  A vector
    joins S iff its residual after projecting onto span(S) exceeds ``tol``
    times its own norm.  Vectors whose norm is below ``tol`` times the largest
    input norm count as zero (they would otherwise enter S on pure rounding
    noise); all-zero inputs therefore yield an empty S.
    """
    vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    if not vecs:
        raise ValueError("vectors must be nonempty")
    length = vecs[0].size
    if any(v.size != length for v in vecs):
        raise ValueError("vectors must all have equal length")
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    norms = [float(np.linalg.norm(v)) for v in vecs]
    scale = max(norms)
    selected: list[int] = []
    onb: list[np.ndarray] = []
    for idx, v in enumerate(vecs):
        norm_v = norms[idx]
        if norm_v <= tol * scale:
            continue
        r = v.copy()
        for _ in range(2):  # MGS + one reorthogonalization pass
            for q in onb:
                r = r - (q.conj() @ r) * q
        rnorm = float(np.linalg.norm(r))
        if rnorm > tol * norm_v:
            selected.append(idx)
            onb.append(r / rnorm)

    expansion: dict[int, np.ndarray] = {}
    rejected = [i for i in range(len(vecs)) if i not in set(selected)]
    if rejected and selected:
        basis = np.stack([vecs[i] for i in selected], axis=1)
        targets = np.stack([vecs[j] for j in rejected], axis=1)
        coeffs, *_ = np.linalg.lstsq(basis, targets, rcond=None)
        for col, j in enumerate(rejected):
            expansion[j] = coeffs[:, col]
    else:
        for j in rejected:
            expansion[j] = np.zeros(0, dtype=complex)
    return IndependentSubset(indices=selected, expansion=expansion)


def represent_in_span(basis, target) -> tuple[np.ndarray, float]:
    """Least-squares coefficients expressing ``target`` over ``basis`` vectors.

    Returns ``(coefficients, residual_norm)``; whether the residual is
    acceptable is the caller's check.
    """
    cols = np.stack([np.asarray(v, dtype=complex).reshape(-1) for v in basis], axis=1)
    t = np.asarray(target, dtype=complex).reshape(-1)
    coeffs, *_ = np.linalg.lstsq(cols, t, rcond=None)
    residual = float(np.linalg.norm(cols @ coeffs - t))
    return coeffs, residual


def nullspace_dimension(m: np.ndarray, rel_tol: float) -> tuple[int, float, float]:
    """Numerical nullspace dimension of ``m`` plus the extreme eigenvalues of m^dag m.

    Counts eigenvalues of m^dag m below ``rel_tol`` times the largest; a zero
    matrix has nullity equal to its column count.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("matrix must be a nonempty 2-d array")
    gram = m.conj().T @ m
    evals = np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)
    eig_min = float(evals[0])
    eig_max = float(evals[-1])
    if eig_max <= 0.0:
        return m.shape[1], eig_min, eig_max
    dim = int(np.count_nonzero(evals < rel_tol * eig_max))
    return dim, eig_min, eig_max
