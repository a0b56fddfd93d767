"""Constructors for the reference state families plus seeded random states.

Families covered: maximally entangled and isotropic states in any local
dimension, the 3x3 tiles UPB bound entangled state [C. H. Bennett et al.,
Phys. Rev. Lett. 82, 5385 (1999)] and its mixture with the maximally
entangled projector, the weakly inseparable 3x3 family of
[P. Horodecki, Phys. Lett. A 232, 333 (1997)] and its mixture, canonical
Schmidt-form pure states, and Ginibre random states.  StateSpec maps a small
parameter dict (as it arrives from CLI flags or JSON) onto these
constructors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qstate import (
    DensityMatrix,
    Dims,
    PureState,
    TAU_NORM,
    from_json,
    validate_density,
    validate_pure,
)


def _ket(dim: int, i: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[i] = 1.0
    return v


def max_entangled(d: int) -> PureState:
    """Sum_i |ii> / sqrt(d)."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / math.sqrt(d)
    return validate_pure(vec, Dims(d, d))


def isotropic(d: int, x: float) -> DensityMatrix:
    """(1-x)/d^2 * I + x P_+; positive exactly for x in [-1/(d^2-1), 1]."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    lo = -1.0 / (d * d - 1.0)
    if x < lo - 1e-12 or x > 1.0 + 1e-12:
        raise ValueError(f"x={x} outside positivity range [{lo}, 1]")
    mat = x * max_entangled(d).projector().mat + (1.0 - x) * np.eye(d * d) / (d * d)
    return validate_density(mat, Dims(d, d))


def _tiles_vectors() -> list[np.ndarray]:
    z, o, t = (_ket(3, i) for i in range(3))
    s = 1.0 / math.sqrt(2.0)
    return [
        np.kron(z, s * (z - o)),
        np.kron(s * (z - o), t),
        np.kron(t, s * (o - t)),
        np.kron(s * (o - t), z),
        np.kron(z + o + t, z + o + t) / 3.0,
    ]


def bennett_rho() -> DensityMatrix:
    """Bound entangled state complementary to the 3x3 tiles UPB.

    rho = (I_9 - sum_i |xi_i><xi_i|) / 4 with the five product vectors of the
    unextendible product basis; each vector is unit norm as written.  PPT by
    construction, entangled by the realignment criterion.
    """
    mat = np.eye(9, dtype=complex)
    for xi in _tiles_vectors():
        mat -= np.outer(xi, xi.conj())
    return validate_density(mat / 4.0, Dims(3, 3))


def example1_mixture(p: float) -> DensityMatrix:
    """(1-p) * bennett_rho + p * P_+ on two qutrits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    mat = (1.0 - p) * bennett_rho().mat + p * max_entangled(3).projector().mat
    return validate_density(mat, Dims(3, 3))


def rho_a(a: float) -> DensityMatrix:
    """Weakly inseparable two-qutrit family, parameter 0 < a < 1.

    Diagonal weight a everywhere except the (2,0)/(2,2) corner, the P_+
    coherence pattern at weight a, a 2x2 block mixing |20> and |22> with
    diagonal (1+a)/2 and off-diagonal sqrt(1-a^2)/2, all over 8a+1.
    Row-major ordering |00>, |01>, ..., |22>.
    """
    if not 0.0 < a < 1.0:
        raise ValueError(f"a={a} outside (0, 1)")
    mat = a * np.eye(9, dtype=complex)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            if i != j:
                mat[i, j] = a
    root = math.sqrt(1.0 - a * a) / 2.0
    mat[6, 6] = (1.0 + a) / 2.0
    mat[8, 8] = (1.0 + a) / 2.0
    mat[6, 8] = root
    mat[8, 6] = root
    return validate_density(mat / (8.0 * a + 1.0), Dims(3, 3))


def example2_mixture(a: float, p: float) -> DensityMatrix:
    """(1-p) * rho_a(a) + p * P_+ on two qutrits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    mat = (1.0 - p) * rho_a(a).mat + p * max_entangled(3).projector().mat
    return validate_density(mat, Dims(3, 3))


def random_pure(dims: Dims, seed=None) -> PureState:
    """Haar-like random pure state: normalized complex Gaussian vector."""
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dims.total) + 1j * rng.normal(size=dims.total)
    return validate_pure(v / np.linalg.norm(v), dims)


def random_density(dims: Dims, rank: int, seed=None) -> DensityMatrix:
    """Ginibre random state G G^dag / Tr, with G of shape (mn, rank)."""
    if not 1 <= rank <= dims.total:
        raise ValueError(f"rank={rank} outside [1, {dims.total}]")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dims.total, rank)) + 1j * rng.normal(size=(dims.total, rank))
    mat = g @ g.conj().T
    return validate_density(mat / np.trace(mat).real, dims)


def pure_from_schmidt(mu, d: int) -> PureState:
    """Canonical Schmidt-form state sum_i sqrt(mu_i) |ii> on d x d."""
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or len(mu) > d:
        raise ValueError("mu must be a 1-d spectrum with length <= d")
    if np.any(mu < 0.0) or abs(mu.sum() - 1.0) > TAU_NORM:
        raise ValueError("mu must be nonnegative and sum to 1")
    vec = np.zeros(d * d, dtype=complex)
    for i, w in enumerate(mu):
        vec[i * d + i] = math.sqrt(w)
    return validate_pure(vec, Dims(d, d))


_FAMILIES = {
    "isotropic": ("d", "x"),
    "max_entangled": ("d",),
    "bennett_mix": ("p",),
    "rho_a_mix": ("a", "p"),
    "random_pure": ("d", "seed"),
    "random_density": ("d", "rank", "seed"),
    "schmidt_pure": ("mu", "d"),
    "json_file": ("path",),
}


@dataclass(frozen=True)
class StateSpec:
    """A named family plus its parameters, as parsed from CLI flags or JSON."""

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; known: {sorted(_FAMILIES)}")
        want = set(_FAMILIES[self.family])
        got = set(self.params)
        if got != want:
            raise ValueError(f"family {self.family!r} needs params {sorted(want)}, got {sorted(got)}")

    @classmethod
    def from_dict(cls, doc: dict) -> "StateSpec":
        doc = dict(doc)
        family = doc.pop("family", None)
        if family is None:
            raise ValueError("state spec needs a 'family' key")
        return cls(family=family, params=doc)

    def build(self) -> DensityMatrix:
        p = self.params
        if self.family == "isotropic":
            return isotropic(int(p["d"]), float(p["x"]))
        if self.family == "max_entangled":
            return max_entangled(int(p["d"])).projector()
        if self.family == "bennett_mix":
            return example1_mixture(float(p["p"]))
        if self.family == "rho_a_mix":
            return example2_mixture(float(p["a"]), float(p["p"]))
        if self.family == "random_pure":
            d = int(p["d"])
            return random_pure(Dims(d, d), p["seed"]).projector()
        if self.family == "random_density":
            d = int(p["d"])
            return random_density(Dims(d, d), int(p["rank"]), p["seed"])
        if self.family == "schmidt_pure":
            return pure_from_schmidt(p["mu"], int(p["d"])).projector()
        with open(p["path"], "r", encoding="utf-8") as fh:
            return from_json(fh.read())
