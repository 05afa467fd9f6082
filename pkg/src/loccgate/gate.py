"""First-measurement feasibility gate for multipartite Kraus channels.

Any local measurement a party could make to open an LOCC protocol for a
channel must, at the level of POVM elements, be a linear combination of the
Kraus pair products K_i^dag K_j whose partial expectation against every
traceless operator on the other parties vanishes.  Stacking those trace
constraints into a matrix Q (one row per basis pair with a traceless factor
on the rest, one column per linearly independent pair product) and adding a
single row that removes the always-present identity solution makes the test
linear: the party can measure first only if the augmented Q has a nontrivial
nullspace.  If the nullspace is empty for every party, no LOCC protocol of
any number of rounds implements the channel.

The eigenvalue ratio min/max of Q^dag Q per party ("ratio"), minimized over
parties ("lambda_hat"), doubles as a closeness-to-singular diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import (
    KrausChannel,
    check_completeness,
    kraus_rank,
    lone_kraus_operator,
    operator_schmidt_rank,
)
from .linalg import (
    DEFAULT_INDEPENDENCE_TOL,
    IndependentSubset,
    OperatorBasis,
    nullspace_dimension,
    operator_basis,
    permute_party_to_front,
    represent_in_span,
    select_independent_subset,
)

# Eigenvalues of Q^dag Q below DEFAULT_NULLSPACE_RTOL times the largest count
# as zero.  Sits between solver noise (~1e-16) and the smallest genuinely
# nonzero ratios seen in the example families (~1e-9), with margin.
DEFAULT_NULLSPACE_RTOL = 1e-13

# Hard ceiling on the completeness residual before gating is meaningless.
COMPLETENESS_TOL = 1e-6

VERDICT_NOT_LOCC = "NOT_LOCC"
VERDICT_FIRST_MOVE_CANDIDATES = "FIRST_MOVE_CANDIDATES"
VERDICT_DEGENERATE_KRAUS_RANK_ONE = "DEGENERATE_KRAUS_RANK_ONE"


@dataclass(frozen=True)
class PartyGateReport:
    """Per-party diagnostics of the augmented constraint matrix Q."""

    party: int
    pair_count: int
    q_rows: int
    eig_min: float
    eig_max: float
    ratio: float
    nullspace_dim: int
    can_measure_first: bool

    def to_dict(self) -> dict:
        return {
            "party": self.party,
            "pair_count": self.pair_count,
            "q_rows": self.q_rows,
            "eig_min": self.eig_min,
            "eig_max": self.eig_max,
            "ratio": self.ratio,
            "nullspace_dim": self.nullspace_dim,
            "can_measure_first": self.can_measure_first,
        }


@dataclass(frozen=True)
class GateVerdict:
    """Channel-level outcome of the gate, with one report per party.

    ``NOT_LOCC`` is a certificate that the channel admits no LOCC protocol.
    ``FIRST_MOVE_CANDIDATES`` is *not* a proof of LOCC-possibility; the gate
    is a necessary condition only.  Kraus-rank-1 channels are classified
    separately since they need no measurement at all.
    """

    reports: tuple[PartyGateReport, ...]
    lambda_hat: float
    verdict: str
    candidates: tuple[int, ...] | None = None
    local: bool | None = None

    def to_dict(self) -> dict:
        out = {
            "reports": [r.to_dict() for r in self.reports],
            "lambda_hat": self.lambda_hat,
            "verdict": self.verdict,
        }
        if self.candidates is not None:
            out["candidates"] = list(self.candidates)
        if self.local is not None:
            out["local"] = self.local
        return out


def _require_complete(channel: KrausChannel) -> None:
    residual = check_completeness(channel)
    if residual > COMPLETENESS_TOL:
        raise ValueError(
            f"channel '{channel.name}' is not trace-preserving "
            f"(completeness residual {residual:.3e})"
        )


def pair_products(channel: KrausChannel, party: int) -> list[np.ndarray]:
    """All N^2 products K_i^dag K_j on the input space, party's factor first.

    Ordered row-major in (i, j).  The adjoint of product (i, j) is product
    (j, i) exactly.
    """
    dims = channel.input_dims
    if not 0 <= party < len(dims):
        raise ValueError(f"party index {party} out of range for {len(dims)} parties")
    out = []
    for ki in channel.kraus:
        left = ki.conj().T
        for kj in channel.kraus:
            out.append(permute_party_to_front(left @ kj, dims, party))
    return out


def q_matrix_for_products(
    products,
    subset: IndependentSubset,
    d_party: int,
    d_rest: int,
    bases: tuple[OperatorBasis, OperatorBasis] | None = None,
) -> np.ndarray:
    """Unaugmented Q for an explicit product list and independent subset.

    Rows run over basis pairs (mu, nu) with mu over the full party basis and
    nu over the traceless rest basis only, mu outer / nu inner; columns follow
    ``subset.indices``.  Entry = trace[(L_mu tensor G_nu)^dag P_(i,j)].
    """
    if bases is None:
        bases = (operator_basis(d_party), operator_basis(d_rest))
    basis_party, basis_rest = bases
    rows = []
    for mu in range(d_party * d_party):
        lam = basis_party.elements[mu]
        for nu in range(1, d_rest * d_rest):
            rows.append(np.kron(lam, basis_rest.elements[nu]).conj().reshape(-1))
    n_cols = len(subset.indices)
    if not rows:
        return np.zeros((0, n_cols), dtype=complex)
    row_stack = np.stack(rows, axis=0)
    col_stack = np.stack([products[i].reshape(-1) for i in subset.indices], axis=0)
    return row_stack @ col_stack.T


def build_q(
    channel: KrausChannel,
    party: int,
    *,
    subset_tol: float = DEFAULT_INDEPENDENCE_TOL,
    bases: tuple[OperatorBasis, OperatorBasis] | None = None,
) -> tuple[np.ndarray, IndependentSubset]:
    """Unaugmented constraint matrix for one party, plus the selected subset."""
    products = pair_products(channel, party)
    subset = select_independent_subset([p.reshape(-1) for p in products], subset_tol)
    d_party = channel.input_dims[party]
    d_rest = channel.dim // d_party
    return q_matrix_for_products(products, subset, d_party, d_rest, bases), subset


def identity_vector(subset: IndependentSubset, products) -> np.ndarray:
    """Unit-norm coefficients over S reproducing the identity operator.

    Completeness guarantees the identity lies in the span of the pair
    products; a residual above 1e-9 signals a broken channel or a subset
    tolerance that discarded too much.
    """
    if not subset.indices:
        raise ValueError("independent subset is empty; cannot represent the identity")
    total = products[0].shape[0]
    selected = [products[i].reshape(-1) for i in subset.indices]
    target = np.eye(total, dtype=complex).reshape(-1)
    coeffs, residual = represent_in_span(selected, target)
    if residual > 1e-9:
        raise ValueError(
            f"identity not in the span of selected pair products (residual {residual:.3e}); "
            "completeness or the subset tolerance is broken"
        )
    return coeffs / np.linalg.norm(coeffs)


def _gate_party_from_products(
    products,
    d_party: int,
    d_rest: int,
    party: int,
    rel_tol: float,
    subset_tol: float,
    bases: tuple[OperatorBasis, OperatorBasis] | None,
) -> PartyGateReport:
    subset = select_independent_subset([p.reshape(-1) for p in products], subset_tol)
    q = q_matrix_for_products(products, subset, d_party, d_rest, bases)
    c_identity = identity_vector(subset, products)
    q_aug = np.vstack([q, c_identity.conj()[None, :]])
    nullity, eig_min, eig_max = nullspace_dimension(q_aug, rel_tol)
    ratio = eig_min / eig_max if eig_max > 0.0 else 0.0
    return PartyGateReport(
        party=party,
        pair_count=len(subset.indices),
        q_rows=q_aug.shape[0],
        eig_min=eig_min,
        eig_max=eig_max,
        ratio=ratio,
        nullspace_dim=nullity,
        can_measure_first=nullity >= 1,
    )


def gate_party(
    channel: KrausChannel,
    party: int,
    rel_tol: float = DEFAULT_NULLSPACE_RTOL,
    *,
    subset_tol: float = DEFAULT_INDEPENDENCE_TOL,
    bases: tuple[OperatorBasis, OperatorBasis] | None = None,
) -> PartyGateReport:
    """Augmented-Q diagnostics for one party: can it measure first at all?"""
    _require_complete(channel)
    products = pair_products(channel, party)
    d_party = channel.input_dims[party]
    d_rest = channel.dim // d_party
    return _gate_party_from_products(
        products, d_party, d_rest, party, rel_tol, subset_tol, bases
    )


def gate_channel(
    channel: KrausChannel,
    rel_tol: float = DEFAULT_NULLSPACE_RTOL,
    *,
    subset_tol: float = DEFAULT_INDEPENDENCE_TOL,
    rank_rel_tol: float = 1e-9,
) -> GateVerdict:
    """Run the gate for every party and classify the channel.

    A Kraus-rank-1 channel needs no measurement, so it is never certified
    NOT_LOCC; it is reported DEGENERATE_KRAUS_RANK_ONE with ``local`` true
    exactly when its lone (square) Kraus operator is a tensor product across
    every single-party cut.
    """
    if channel.n_parties < 2:
        raise ValueError("channel must have at least 2 parties")
    _require_complete(channel)
    reports = tuple(
        gate_party(channel, p, rel_tol, subset_tol=subset_tol, bases=None)
        for p in range(channel.n_parties)
    )
    lambda_hat = min(r.ratio for r in reports)
    if kraus_rank(channel, rank_rel_tol) == 1:
        local = False
        if channel.output_dim == channel.dim:
            lone = lone_kraus_operator(channel)
            local = all(
                operator_schmidt_rank(lone, channel.input_dims, p, rank_rel_tol) == 1
                for p in range(channel.n_parties)
            )
        return GateVerdict(
            reports=reports,
            lambda_hat=lambda_hat,
            verdict=VERDICT_DEGENERATE_KRAUS_RANK_ONE,
            local=local,
        )
    candidates = tuple(r.party for r in reports if r.can_measure_first)
    if candidates:
        return GateVerdict(
            reports=reports,
            lambda_hat=lambda_hat,
            verdict=VERDICT_FIRST_MOVE_CANDIDATES,
            candidates=candidates,
        )
    return GateVerdict(reports=reports, lambda_hat=lambda_hat, verdict=VERDICT_NOT_LOCC)
