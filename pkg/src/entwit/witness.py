"""Two-qubit subspace compression and the Bell / nonlinear entanglement witnesses.

A bipartite state on m x n compresses onto each pair of 2-dim local subspaces
(alpha on A, beta on B) through the generator sandwich (L_a (x) L_b) rho
(L_a (x) L_b)^dag.  The surviving 4x4 block, normalized by its weight c,
is a genuine two-qubit state rho_ab, and every two-qubit separability test
applies to it:

* CHSH Bell test with two measurement directions per side.  The maximum of
  |<B>| over directions is c * 2*sqrt(s1^2 + s2^2) with s1 >= s2 the largest
  singular values of the correlation matrix T_ij = Tr(rho_ab sigma_i (x) sigma_j)
  [R. Horodecki, P. Horodecki, M. Horodecki, Phys. Lett. A 200, 340 (1995)].
  Note the c factor: the raw mean value on rho is suppressed by the subspace
  weight, so threshold detection applies the CHSH bound to the normalized
  compressed state (violation iff bell_max / c > 2).

* Nonlinear witness built from two triads of complementary observables with
  equal handedness.  On a two-qubit state the witness exceeds 1 exactly for
  entangled states, with maximum 1 - 4*lambda_min of the partial transpose
  [S. Yu, N.-L. Liu, Phys. Rev. Lett. 95, 150504 (2005)].  The embedded sum
  term <A3 + B3> is realized as A3 (x) P_beta + P_alpha (x) B3 with P the
  subspace projectors; only that choice makes the normalized witness equal
  the plain two-qubit witness on rho_ab.

Everything here is a pure function of immutable inputs; per-subspace work is
safe to run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .generators import (
    GeneratorPair,
    ObservableTriad,
    PAULI,
    embed_observable,
    generator_matrix,
    rotation_zyz,
    so_generators,
    subspace_projector,
    tilde_operator,
    triad_from_rotation,
)
from .qstate import (
    DensityMatrix,
    Dims,
    NotHermitianError,
    TAU_HERM,
    partial_transpose,
    partial_transpose_mat,
    validate_density,
)

TAU_C = 1e-12
TAU_DETECT = 1e-8

# generator restricted to its own 2-dim subspace, and its two-party sandwich
_Y2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
_K4 = np.kron(_Y2, _Y2)  # symmetric, K^2 = I

_ID2 = np.eye(2, dtype=complex)
_KRON_PP = [[np.kron(PAULI[i], PAULI[j]) for j in range(3)] for i in range(3)]
_KRON_PI = [np.kron(PAULI[i], _ID2) for i in range(3)]
_KRON_IP = [np.kron(_ID2, PAULI[i]) for i in range(3)]


@dataclass(frozen=True)
class WitnessSettings:
    """Measurement settings for the nonlinear witness: one subspace pair plus
    one observable triad per side, both with the same handedness."""

    alpha: GeneratorPair
    beta: GeneratorPair
    triad_a: ObservableTriad
    triad_b: ObservableTriad

    def __post_init__(self) -> None:
        if self.triad_a.orientation != self.triad_b.orientation:
            raise ValueError("witness triads must share orientation")


@dataclass(frozen=True)
class BellSettings:
    """Measurement settings for the Bell test: two independent unit directions
    per side.  The CHSH optimum generally needs non-orthogonal directions on
    one side, so this is deliberately wider than a triad."""

    alpha: GeneratorPair
    beta: GeneratorPair
    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "b1", "b2"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"{name} must be a unit 3-vector")
            v = v.copy()
            v.setflags(write=False)
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class ProjectedState:
    """Compression of a state onto one subspace pair: weight c and, when the
    subspace carries weight, the normalized two-qubit state."""

    c: float
    rho_ab: DensityMatrix | None

    @property
    def empty(self) -> bool:
        return self.rho_ab is None


@dataclass(frozen=True)
class SubspaceReport:
    """Per-subspace summary: weight, partial-transpose minimum eigenvalue,
    both witness maxima, the violation d and its clipped value x."""

    alpha: GeneratorPair
    beta: GeneratorPair
    c: float
    lambda_min: float
    bell_max: float
    nonlinear_max: float
    d: float
    x: float


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    seed: int = 0
    step_tol: float = 1e-7
    max_evals: int = 2000


def _check_pairs(dims: Dims, alpha: GeneratorPair, beta: GeneratorPair) -> None:
    if alpha.dim != dims.m or beta.dim != dims.n:
        raise ValueError(
            f"pair dims ({alpha.dim},{beta.dim}) do not match state dims ({dims.m},{dims.n})"
        )


def _compressed_block(rho: DensityMatrix, alpha: GeneratorPair, beta: GeneratorPair):
    """Weight c and the 4x4 block of (L (x) L) rho (L (x) L)^dag.

    The sandwich acts on the retained block as the local rotation Y (x) Y with
    Y = [[0,1],[-1,0]], so only the 4x4 slice of rho is ever touched.
    """
    n = rho.dims.n
    idx = [
        alpha.j * n + beta.j,
        alpha.j * n + beta.k,
        alpha.k * n + beta.j,
        alpha.k * n + beta.k,
    ]
    raw = rho.mat[np.ix_(idx, idx)]
    c = float(np.real(raw[0, 0] + raw[1, 1] + raw[2, 2] + raw[3, 3]))
    return c, _K4 @ raw @ _K4


def _expect(mat: np.ndarray, op: np.ndarray) -> float:
    # Tr(mat @ op) for Hermitian op without forming the product
    return float(np.real((mat * op.T).sum()))


def _pauli_stats(mat: np.ndarray):
    """Correlation matrix T and local Bloch vectors (r, s) of a 4x4 block."""
    t = np.empty((3, 3))
    r = np.empty(3)
    s = np.empty(3)
    for i in range(3):
        r[i] = _expect(mat, _KRON_PI[i])
        s[i] = _expect(mat, _KRON_IP[i])
        for j in range(3):
            t[i, j] = _expect(mat, _KRON_PP[i][j])
    return t, r, s


def project_state(rho: DensityMatrix, alpha: GeneratorPair, beta: GeneratorPair) -> ProjectedState:
    """Compress rho onto the (alpha, beta) subspace pair.

    Returns the weight c = Tr(rho P_alpha (x) P_beta) and the normalized
    two-qubit state on basis (|j l>, |j m>, |k l>, |k m>); an empty subspace
    (c <= TAU_C) is a value, not an error.
    """
    _check_pairs(rho.dims, alpha, beta)
    c, blk = _compressed_block(rho, alpha, beta)
    if c <= TAU_C:
        return ProjectedState(c=max(c, 0.0), rho_ab=None)
    rho_ab = validate_density((blk + blk.conj().T) / (2.0 * c), Dims(2, 2))
    return ProjectedState(c=c, rho_ab=rho_ab)


def c_coefficient(rho: DensityMatrix, alpha: GeneratorPair, beta: GeneratorPair) -> float:
    """Subspace weight through the partially transposed state.

    Tr((L (x) L) rho^{T_A} (L (x) L)) equals project_state's c because the
    double sandwich collapses to the diagonal projector P_alpha (x) P_beta,
    which the partial transpose leaves fixed.  Kept as a genuinely independent
    full-matrix code path for cross-checks.
    """
    _check_pairs(rho.dims, alpha, beta)
    ll = np.kron(generator_matrix(alpha), generator_matrix(beta))
    return float(np.real(np.trace(ll @ partial_transpose(rho) @ ll)))


def _tilde(pair: GeneratorPair, direction: np.ndarray) -> np.ndarray:
    return tilde_operator(generator_matrix(pair), embed_observable(pair, direction))


def _bell_directions(s):
    if isinstance(s, BellSettings):
        return s.a1, s.a2, s.b1, s.b2
    return s.triad_a.vector(0), s.triad_a.vector(1), s.triad_b.vector(0), s.triad_b.vector(1)


def bell_value(rho: DensityMatrix, s) -> float:
    """Mean value of the CHSH operator built from tilde observables.

    Accepts BellSettings or WitnessSettings (which contributes its first two
    triad directions per side).
    """
    a1, a2, b1, b2 = _bell_directions(s)
    ta1 = _tilde(s.alpha, a1)
    ta2 = _tilde(s.alpha, a2)
    tb1 = _tilde(s.beta, b1)
    tb2 = _tilde(s.beta, b2)
    op = np.kron(ta1, tb1) + np.kron(ta1, tb2) + np.kron(ta2, tb1) - np.kron(ta2, tb2)
    return float(np.real(np.trace(rho.mat @ op)))


def bell_max(rho: DensityMatrix, alpha: GeneratorPair, beta: GeneratorPair) -> float:
    """Largest attainable |bell_value| on this subspace: c * 2*sqrt(s1^2 + s2^2).

    This is the Horodecki CHSH criterion on the compressed state, scaled back
    by the subspace weight; 0 for an empty subspace.  For entanglement
    thresholds compare bell_max / c against 2, not bell_max itself.
    """
    _check_pairs(rho.dims, alpha, beta)
    c, blk = _compressed_block(rho, alpha, beta)
    if c <= TAU_C:
        return 0.0
    t, _, _ = _pauli_stats(blk / c)
    sv = np.linalg.svd(t, compute_uv=False)
    return float(c * 2.0 * math.sqrt(sv[0] ** 2 + sv[1] ** 2))


def nonlinear_value(rho: DensityMatrix, s: WitnessSettings) -> float:
    """Nonlinear witness mean sqrt(<A1B1 + A2B2>^2 + <A3 + B3>^2) - <A3B3>.

    All operators are tilde-conjugated embeddings; the sum term pairs each
    third observable with the other side's subspace projector.
    """
    ta = [_tilde(s.alpha, s.triad_a.vector(i)) for i in range(3)]
    tb = [_tilde(s.beta, s.triad_b.vector(i)) for i in range(3)]
    pa = subspace_projector(s.alpha)
    pb = subspace_projector(s.beta)
    mat = rho.mat
    t11 = float(np.real(np.trace(mat @ (np.kron(ta[0], tb[0]) + np.kron(ta[1], tb[1])))))
    t3 = float(np.real(np.trace(mat @ (np.kron(ta[2], pb) + np.kron(pa, tb[2])))))
    t33 = float(np.real(np.trace(mat @ np.kron(ta[2], tb[2]))))
    return math.hypot(t11, t3) - t33


def nonlinear_normalized(rho: DensityMatrix, s: WitnessSettings) -> float:
    """nonlinear_value / c; equals the plain two-qubit witness on rho_ab.

    Raises on an empty subspace (nothing to normalize).
    """
    c, _ = _compressed_block(rho, s.alpha, s.beta)
    if c <= TAU_C:
        raise ValueError("empty subspace: c <= TAU_C")
    return nonlinear_value(rho, s) / c


def nonlinear_max(rho: DensityMatrix, alpha: GeneratorPair, beta: GeneratorPair) -> float:
    """Maximum of the normalized nonlinear witness over same-handed triads.

    Equals 1 - 4*lambda_min(rho_ab^{T_A}); above 1 exactly when the compressed
    state is entangled.  Empty subspaces return 1 (no violation possible).
    """
    _check_pairs(rho.dims, alpha, beta)
    c, blk = _compressed_block(rho, alpha, beta)
    if c <= TAU_C:
        return 1.0
    return 1.0 - 4.0 * _lambda_min_pt(blk / c)


def _lambda_min_pt(mat4: np.ndarray) -> float:
    pt = partial_transpose_mat(mat4, 2, 2)
    return float(np.linalg.eigvalsh((pt + pt.conj().T) / 2.0)[0])


def subspace_report(rho: DensityMatrix, alpha: GeneratorPair, beta: GeneratorPair) -> SubspaceReport:
    """All per-subspace figures from one block extraction."""
    _check_pairs(rho.dims, alpha, beta)
    c, blk = _compressed_block(rho, alpha, beta)
    if c <= TAU_C:
        return SubspaceReport(alpha, beta, max(c, 0.0), 0.0, 0.0, 1.0, 0.0, 0.0)
    norm = blk / c
    lam = _lambda_min_pt(norm)
    t, _, _ = _pauli_stats(norm)
    sv = np.linalg.svd(t, compute_uv=False)
    bmax = float(c * 2.0 * math.sqrt(sv[0] ** 2 + sv[1] ** 2))
    nmax = 1.0 - 4.0 * lam
    d = nmax - 1.0
    return SubspaceReport(alpha, beta, c, lam, bmax, nmax, d, max(0.0, d))


def subspace_reports(rho: DensityMatrix) -> list[SubspaceReport]:
    """Reports for all subspace pairs in lexicographic (alpha, beta) order."""
    out = []
    for alpha, _ in so_generators(rho.dims.m):
        for beta, _ in so_generators(rho.dims.n):
            out.append(subspace_report(rho, alpha, beta))
    return out


def detect_entanglement(rho: DensityMatrix) -> tuple[bool, list[SubspaceReport]]:
    """True iff some subspace's nonlinear_max exceeds 1 + TAU_DETECT.

    Returns the full report list so callers can pick the witnessing subspace
    with the largest violation for experiment design.
    """
    reports = subspace_reports(rho)
    return any(r.nonlinear_max > 1.0 + TAU_DETECT for r in reports), reports


def best_report(reports: list[SubspaceReport]) -> SubspaceReport:
    """The subspace with the largest nonlinear violation."""
    return max(reports, key=lambda r: r.nonlinear_max)


# ---------------------------------------------------------------------------
# numeric settings search, used as an independent check of the closed forms

def _nonlinear_objective(t, r, s):
    (t00, t01, t02), (t10, t11, t12), (t20, t21, t22) = t.tolist()
    r0, r1, r2 = r.tolist()
    s0, s1, s2 = s.tolist()
    cos, sin, hypot = math.cos, math.sin, math.hypot

    def neg(x):
        ca, sa = cos(x[0]), sin(x[0])
        cb, sb = cos(x[1]), sin(x[1])
        cg, sg = cos(x[2]), sin(x[2])
        a10, a11, a12 = ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb
        a20, a21, a22 = sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb
        a30, a31, a32 = -sb * cg, sb * sg, cb
        ca, sa = cos(x[3]), sin(x[3])
        cb, sb = cos(x[4]), sin(x[4])
        cg, sg = cos(x[5]), sin(x[5])
        b10, b11, b12 = ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb
        b20, b21, b22 = sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb
        b30, b31, b32 = -sb * cg, sb * sg, cb
        u0 = a10 * t00 + a11 * t10 + a12 * t20
        u1 = a10 * t01 + a11 * t11 + a12 * t21
        u2 = a10 * t02 + a11 * t12 + a12 * t22
        v0 = a20 * t00 + a21 * t10 + a22 * t20
        v1 = a20 * t01 + a21 * t11 + a22 * t21
        v2 = a20 * t02 + a21 * t12 + a22 * t22
        w0 = a30 * t00 + a31 * t10 + a32 * t20
        w1 = a30 * t01 + a31 * t11 + a32 * t21
        w2 = a30 * t02 + a31 * t12 + a32 * t22
        corr = u0 * b10 + u1 * b11 + u2 * b12 + v0 * b20 + v1 * b21 + v2 * b22
        summ = a30 * r0 + a31 * r1 + a32 * r2 + b30 * s0 + b31 * s1 + b32 * s2
        last = w0 * b30 + w1 * b31 + w2 * b32
        return -(hypot(corr, summ) - last)

    return neg


def _bell_objective(t, c):
    (t00, t01, t02), (t10, t11, t12), (t20, t21, t22) = t.tolist()
    cos, sin = math.cos, math.sin

    def neg(x):
        st, ct = sin(x[0]), cos(x[0])
        a10, a11, a12 = st * cos(x[1]), st * sin(x[1]), ct
        st, ct = sin(x[2]), cos(x[2])
        a20, a21, a22 = st * cos(x[3]), st * sin(x[3]), ct
        st, ct = sin(x[4]), cos(x[4])
        b10, b11, b12 = st * cos(x[5]), st * sin(x[5]), ct
        st, ct = sin(x[6]), cos(x[6])
        b20, b21, b22 = st * cos(x[7]), st * sin(x[7]), ct
        u0 = a10 * t00 + a11 * t10 + a12 * t20
        u1 = a10 * t01 + a11 * t11 + a12 * t21
        u2 = a10 * t02 + a11 * t12 + a12 * t22
        v0 = a20 * t00 + a21 * t10 + a22 * t20
        v1 = a20 * t01 + a21 * t11 + a22 * t21
        v2 = a20 * t02 + a21 * t12 + a22 * t22
        val = (
            u0 * (b10 + b20) + u1 * (b11 + b21) + u2 * (b12 + b22)
            + v0 * (b10 - b20) + v1 * (b11 - b21) + v2 * (b12 - b22)
        )
        return -abs(val) * c

    return neg


def _sph(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def optimize_settings(
    rho: DensityMatrix,
    alpha: GeneratorPair,
    beta: GeneratorPair,
    kind: str,
    cfg: OptimizerConfig = OptimizerConfig(),
):
    """Multi-start Nelder-Mead search over measurement settings.

    kind="nonlinear" maximizes the normalized witness over two same-handed
    triads (6 angles, ZYZ per side) and returns (WitnessSettings, value);
    kind="bell" maximizes |bell_value| over four independent directions
    (8 spherical angles) and returns (BellSettings, value).  Deterministic
    for a fixed cfg.seed.
    """
    _check_pairs(rho.dims, alpha, beta)
    c, blk = _compressed_block(rho, alpha, beta)
    if c <= TAU_C:
        raise ValueError("empty subspace: c <= TAU_C")
    t, r, s = _pauli_stats(blk / c)
    if kind == "nonlinear":
        neg, nang = _nonlinear_objective(t, r, s), 6
    elif kind == "bell":
        neg, nang = _bell_objective(t, c), 8
    else:
        raise ValueError(f"unknown witness kind {kind!r}")

    rng = np.random.default_rng(cfg.seed)
    best_val, best_x = -np.inf, None
    for _ in range(cfg.restarts):
        x0 = rng.uniform(0.0, 2.0 * np.pi, nang)
        res = minimize(
            neg,
            x0,
            method="Nelder-Mead",
            options=dict(xatol=cfg.step_tol, fatol=1e-12, maxfev=cfg.max_evals),
        )
        if -res.fun > best_val:
            best_val, best_x = -res.fun, res.x

    if kind == "nonlinear":
        settings = WitnessSettings(
            alpha,
            beta,
            triad_from_rotation(rotation_zyz(*best_x[:3])),
            triad_from_rotation(rotation_zyz(*best_x[3:])),
        )
    else:
        settings = BellSettings(
            alpha,
            beta,
            _sph(best_x[0], best_x[1]),
            _sph(best_x[2], best_x[3]),
            _sph(best_x[4], best_x[5]),
            _sph(best_x[6], best_x[7]),
        )
    return settings, float(best_val)


# ---------------------------------------------------------------------------
# finite-shot simulation of a mean value

def estimate_mean_shots(rho: DensityMatrix, obs: np.ndarray, shots: int, seed=None):
    """Sample the observable in its eigenbasis and return (mean, stderr).

    Outcomes are eigenvalues drawn with Born weights <e_i|rho|e_i>; the mean
    converges to Tr(rho obs) and stderr is the sample standard deviation over
    sqrt(shots).
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    obs = np.asarray(obs, dtype=complex)
    if np.max(np.abs(obs - obs.conj().T)) > TAU_HERM:
        raise NotHermitianError("observable must be Hermitian")
    w, v = np.linalg.eigh((obs + obs.conj().T) / 2.0)
    probs = np.real(np.einsum("ij,jk,ki->i", v.conj().T, rho.mat, v))
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(w, size=shots, p=probs)
    mean = float(outcomes.mean())
    stderr = float(outcomes.std(ddof=1) / math.sqrt(shots)) if shots > 1 else 0.0
    return mean, stderr


# ---------------------------------------------------------------------------
# CSV serialization of report lists

CSV_HEADER = "alpha_j,alpha_k,beta_l,beta_m,c,lambda_min,bell_max,nonlinear_max,d,x"


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def reports_to_csv(reports: list[SubspaceReport]) -> str:
    """CSV text, 12 significant digits, LF line endings."""
    lines = [CSV_HEADER]
    for r in reports:
        fields = [str(r.alpha.j), str(r.alpha.k), str(r.beta.j), str(r.beta.k)]
        fields += [_fmt(v) for v in (r.c, r.lambda_min, r.bell_max, r.nonlinear_max, r.d, r.x)]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def csv_rows(text: str) -> list[dict]:
    """Parse reports_to_csv output back into numeric row dicts."""
    lines = text.strip().split("\n")
    if lines[0] != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    names = CSV_HEADER.split(",")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        row = {name: (int(p) if i < 4 else float(p)) for i, (name, p) in enumerate(zip(names, parts))}
        rows.append(row)
    return rows
