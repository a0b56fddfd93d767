"""Measurable lower bound on the convex-roof extended negativity (CREN).

CREN extends the negativity to mixed states through the convex roof: the
minimum average pure-state negativity over all ensemble decompositions.  For
a pure state it is just the negativity; the convex-roof minimization itself
is intractable and deliberately not implemented here.  What is implemented is
a lower bound assembled entirely from two-qubit subspace data:

    bound = (1/(M-1)) * [ sum_ab |c_ab| * (X_ab/2 + 1) - (m-1)(n-1) ]

with M = min(m, n), c_ab the subspace weights, and X_ab = max(0, d_ab) the
clipped nonlinear witness violation.  The subtracted term equals sum_ab c_ab
for every state, so separable states (all X = 0) land at exactly 0; on square
dims it is the familiar (M-1)^2.  For pure states in canonical Schmidt form
the bound is tight: it collapses to the negativity through the trace-norm
identity sum_ab ||(L (x) L) psi-projector^{T_A} (L (x) L)||_tr
= (M-1)^2 + 2 sum_{i<j} sqrt(mu_i mu_j).

A literal clip-below variant (X = min(0, d)) is kept behind a flag for
comparison; it discards every violation and degenerates to 0 on the
maximally entangled state, which is why the shipped bound clips above.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .generators import so_generators
from .qstate import (
    DensityMatrix,
    Dims,
    PureState,
    negativity,
    partial_transpose,
    pure_negativity,
    trace_norm,
)
from .witness import SubspaceReport, TAU_C, subspace_reports


@dataclass(frozen=True)
class CrenBoundReport:
    """The bound, the plain negativity for comparison, and the per-subspace
    terms it was assembled from."""

    bound: float
    negativity: float
    reports: list[SubspaceReport]
    sum_c: float
    m_normalizer: int


def _assemble(reports: list[SubspaceReport], dims: Dims, literal_min: bool) -> tuple[float, float]:
    big_m = min(dims.m, dims.n)
    total = 0.0
    sum_c = 0.0
    for r in reports:
        if r.c <= TAU_C:
            continue
        x = min(0.0, r.d) if literal_min else r.x
        total += abs(r.c) * (x / 2.0 + 1.0)
        sum_c += r.c
    bound = (total - (dims.m - 1) * (dims.n - 1)) / (big_m - 1)
    return bound, sum_c


def cren_lower_bound(rho: DensityMatrix, literal_min: bool = False) -> CrenBoundReport:
    """Assemble the bound from all subspace reports in lexicographic order.

    literal_min=True swaps the violation clip to X = min(0, d); only useful
    for comparing against the clip-above default, see the module docstring.
    """
    reports = subspace_reports(rho)
    bound, sum_c = _assemble(reports, rho.dims, literal_min)
    return CrenBoundReport(
        bound=bound,
        negativity=negativity(rho),
        reports=reports,
        sum_c=sum_c,
        m_normalizer=min(rho.dims.m, rho.dims.n),
    )


def bound_from_rows(rows: list[dict], dims: Dims, literal_min: bool = False) -> float:
    """Rebuild the bound from serialized subspace rows (see witness.csv_rows).

    Uses only the c and d columns, so a round trip through CSV checks the
    whole serialization path.
    """
    big_m = min(dims.m, dims.n)
    total = 0.0
    for row in rows:
        c = row["c"]
        if c <= TAU_C:
            continue
        d = row["d"]
        x = min(0.0, d) if literal_min else max(0.0, d)
        total += abs(c) * (x / 2.0 + 1.0)
    return (total - (dims.m - 1) * (dims.n - 1)) / (big_m - 1)


def pure_sum_identity(psi: PureState) -> tuple[float, float]:
    """Both sides of the pure-state trace-norm identity.

    lhs sums ||(L_a (x) L_b) |psi><psi|^{T_A} (L_a (x) L_b)^dag||_tr over all
    subspace pairs with full-size matrices (no 4x4 shortcut, so it is an
    independent route); rhs = (M-1)^2 + 2 sum_{i<j} sqrt(mu_i mu_j) from the
    Schmidt spectrum.  Requires canonical Schmidt form sum_i sqrt(mu_i) |ii>.
    """
    m, n = psi.dims.m, psi.dims.n
    coeff = psi.vec.reshape(m, n)
    off = coeff.copy()
    big_m = min(m, n)
    for i in range(big_m):
        off[i, i] = 0.0
    if np.max(np.abs(off)) > 1e-10:
        raise ValueError("state is not in canonical Schmidt form")
    mu = np.abs(np.diagonal(coeff)[:big_m]) ** 2

    pt = partial_transpose(psi.projector())
    lhs = 0.0
    for _, la in so_generators(m):
        for _, lb in so_generators(n):
            ll = np.kron(la, lb)
            lhs += trace_norm(ll @ pt @ ll.conj().T)

    roots = np.sqrt(mu)
    cross = (roots.sum() ** 2 - mu.sum()) / 2.0
    rhs = (big_m - 1) ** 2 + 2.0 * cross
    return float(lhs), float(rhs)


def cren_pure(psi: PureState) -> float:
    """CREN of a pure state: exactly the negativity."""
    return pure_negativity(psi)


def report_to_json(report: CrenBoundReport) -> str:
    """{"bound":..., "negativity":..., "m":..., "subspaces":[...]}"""
    doc = {
        "bound": report.bound,
        "negativity": report.negativity,
        "m": report.m_normalizer,
        "subspaces": [
            {
                "alpha": [r.alpha.j, r.alpha.k],
                "beta": [r.beta.j, r.beta.k],
                "c": r.c,
                "lambda_min": r.lambda_min,
                "bell_max": r.bell_max,
                "nonlinear_max": r.nonlinear_max,
                "d": r.d,
                "x": r.x,
            }
            for r in report.reports
        ],
    }
    return json.dumps(doc)
