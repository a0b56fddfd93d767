"""Antisymmetric two-level generators, embedded qubit observables, tilde operators.

Each generator L = |j><k| - |k><j| (0-based, j < k) selects a 2-dimensional
local subspace; L L^dag is the projector onto it.  A unit vector a in R^3
embeds as the observable a.sigma placed on that subspace, and the "tilde"
conjugation L A L^dag rotates the observable inside the subspace (it flips
the x and z components, leaving the +-1 block spectrum intact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (PAULI_X, PAULI_Y, PAULI_Z)


@dataclass(frozen=True)
class GeneratorPair:
    """Index pair (j, k) with 0 <= j < k < dim identifying one local subspace."""

    j: int
    k: int
    dim: int

    def __post_init__(self) -> None:
        if not (0 <= self.j < self.k < self.dim):
            raise ValueError(f"need 0 <= j < k < dim, got j={self.j} k={self.k} dim={self.dim}")


@dataclass(frozen=True)
class ObservableTriad:
    """Orthonormal frame in R^3 whose rows a1, a2, a3 define three complementary
    qubit observables a_i.sigma; orientation is the frame handedness."""

    rot: np.ndarray

    def __post_init__(self) -> None:
        rot = np.asarray(self.rot, dtype=float)
        if rot.shape != (3, 3) or np.max(np.abs(rot @ rot.T - np.eye(3))) > 1e-12:
            raise ValueError("triad rows must be orthonormal to 1e-12")
        rot = rot.copy()
        rot.setflags(write=False)
        object.__setattr__(self, "rot", rot)

    @property
    def orientation(self) -> int:
        return 1 if np.linalg.det(self.rot) > 0 else -1

    def vector(self, i: int) -> np.ndarray:
        """Row i (0-based) of the frame."""
        return self.rot[i]


@dataclass(frozen=True)
class EmbeddedObservable:
    """A qubit observable a.sigma living on one 2-dim subspace of a larger party."""

    pair: GeneratorPair
    mat: np.ndarray


def generator_matrix(pair: GeneratorPair) -> np.ndarray:
    """The antisymmetric generator |j><k| - |k><j| as a dense real matrix."""
    mat = np.zeros((pair.dim, pair.dim))
    mat[pair.j, pair.k] = 1.0
    mat[pair.k, pair.j] = -1.0
    return mat


def so_generators(dim: int) -> list[tuple[GeneratorPair, np.ndarray]]:
    """All dim(dim-1)/2 generators in lexicographic (j, k) order."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    out = []
    for j in range(dim):
        for k in range(j + 1, dim):
            pair = GeneratorPair(j, k, dim)
            out.append((pair, generator_matrix(pair)))
    return out


def subspace_projector(pair: GeneratorPair) -> np.ndarray:
    """Diagonal projector onto span{|j>, |k>}; equals L L^dag exactly."""
    mat = np.zeros((pair.dim, pair.dim))
    mat[pair.j, pair.j] = 1.0
    mat[pair.k, pair.k] = 1.0
    return mat


def embed_observable(pair: GeneratorPair, a: np.ndarray) -> EmbeddedObservable:
    """Place the 2x2 block a.sigma at rows/columns (j, k), zero elsewhere.

    The vector must be unit length; the output is Hermitian with block
    eigenvalues +-1.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (3,) or abs(np.linalg.norm(a) - 1.0) > 1e-12:
        raise ValueError("observable direction must be a unit 3-vector")
    mat = np.zeros((pair.dim, pair.dim), dtype=complex)
    mat[pair.j, pair.j] = a[2]
    mat[pair.j, pair.k] = a[0] - 1j * a[1]
    mat[pair.k, pair.j] = a[0] + 1j * a[1]
    mat[pair.k, pair.k] = -a[2]
    return EmbeddedObservable(pair, mat)


def triad_from_rotation(rot: np.ndarray) -> ObservableTriad:
    """Wrap a 3x3 orthogonal matrix (rows = observable directions) as a triad."""
    rot = np.asarray(rot, dtype=float)
    if rot.shape != (3, 3) or np.max(np.abs(rot @ rot.T - np.eye(3))) > 1e-10:
        raise ValueError("expected an orthogonal 3x3 matrix")
    # re-orthonormalize so the 1e-12 triad invariant holds for inputs that
    # are only 1e-10 orthogonal
    u, _, vt = np.linalg.svd(rot)
    return ObservableTriad(u @ vt)


def rotation_zyz(t1: float, t2: float, t3: float) -> np.ndarray:
    """Proper rotation Rz(t1) Ry(t2) Rz(t3); covers SO(3) as angles range freely."""
    ca, sa = math.cos(t1), math.sin(t1)
    cb, sb = math.cos(t2), math.sin(t2)
    cg, sg = math.cos(t3), math.sin(t3)
    return np.array(
        [
            [ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb],
            [sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb],
            [-sb * cg, sb * sg, cb],
        ]
    )


def tilde_operator(ell: np.ndarray, obs: EmbeddedObservable) -> np.ndarray:
    """Conjugated observable L A L^dag, supported on the same subspace as A."""
    expected = generator_matrix(obs.pair)
    if ell.shape != expected.shape or not np.array_equal(ell, expected):
        raise ValueError("generator does not match the observable's subspace pair")
    return ell @ obs.mat @ ell.conj().T
