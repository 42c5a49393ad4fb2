"""Lattices L = A Z^d, their duals, and dual-point enumeration."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateAxis, SingularGenerator, TruncationOverflow

#: Default cap on the number of candidate indices scanned by enumerate_dual.
MAX_CANDIDATES = 5_000_000


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def singularity_threshold(generator):
    """Return 1e-10 * max|A_ij|**d, the determinant below which A counts as singular."""
    generator = np.asarray(generator, dtype=float)
    d = generator.shape[0]
    return 1e-10 * float(np.max(np.abs(generator))) ** d


@dataclass(frozen=True, eq=False)
class Lattice:
    """Full-rank lattice in R^d spanned by the columns of ``generator``.

    Build instances with :func:`new_lattice`, which validates the matrix.
    """

    generator: np.ndarray

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    @property
    def covolume(self) -> float:
        return abs(float(np.linalg.det(self.generator)))

    @property
    def dual_generator(self) -> np.ndarray:
        return np.linalg.inv(self.generator).T

    def dual(self) -> "Lattice":
        return dual(self)

    def points(self, indices):
        """Map integer index vectors (rows) to lattice vectors A m."""
        return np.asarray(indices, dtype=float) @ self.generator.T

    def dual_coords(self, indices):
        """Map integer index vectors (rows) to dual vectors A^{-T} k."""
        return np.asarray(indices, dtype=float) @ self.dual_generator.T

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return np.array_equal(self.generator, other.generator)

    def __hash__(self):
        return hash(self.generator.tobytes())

    def __repr__(self):
        return f"Lattice(generator={self.generator.tolist()!r})"


@dataclass(frozen=True, order=True)
class DualPoint:
    """Dual-lattice frequency kappa = A^{-T} k with its integer index k.

    Ordering and hashing follow the index, so sorted() is lexicographic in k.
    """

    index: tuple
    coords: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(int(i) for i in self.index))
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    def __eq__(self, other):
        if not isinstance(other, DualPoint):
            return NotImplemented
        return self.index == other.index

    def __hash__(self):
        return hash(self.index)


def new_lattice(generator) -> Lattice:
    """Validate ``generator`` and wrap it as a :class:`Lattice`.

    Raises SingularGenerator when |det A| <= 1e-10 * max|A_ij|**d.
    """
    a = np.array(generator, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"generator must be a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("generator must be at least 1x1")
    if not np.all(np.isfinite(a)):
        raise ValueError("generator entries must be finite")
    det = abs(float(np.linalg.det(a)))
    if det <= singularity_threshold(a):
        raise SingularGenerator(f"|det A| = {det:.3e} is below the singularity threshold")
    return Lattice(_frozen(a))


def identity_lattice(d: int) -> Lattice:
    return new_lattice(np.eye(d))


def dual(lat: Lattice) -> Lattice:
    """Dual lattice, generated by A^{-T}; its covolume is 1/|det A|."""
    return new_lattice(lat.dual_generator)


def _index_bound(lat: Lattice, radius: float) -> int:
    # k = A^T kappa, so |k|_inf <= ||A^T||_2 * |kappa|
    return int(math.floor(np.linalg.norm(lat.generator.T, 2) * radius + 1e-9))


def dual_points_array(lat: Lattice, radius: float, max_candidates: int = MAX_CANDIDATES):
    """Array form of :func:`enumerate_dual`: returns ``(indices, coords)``.

    ``indices`` is an int array of shape (n, d) in lexicographic order and
    ``coords`` the matching float array of dual vectors.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    d = lat.dim
    b = _index_bound(lat, radius)
    if (2 * b + 1) ** d > max_candidates:
        raise TruncationOverflow(
            f"{(2 * b + 1) ** d} candidate indices exceed the cap of {max_candidates}"
        )
    axis = np.arange(-b, b + 1)
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    indices = np.stack([g.ravel() for g in grids], axis=1)
    coords = lat.dual_coords(indices)
    # tiny relative slack so points exactly on the sphere survive rounding
    keep = np.linalg.norm(coords, axis=1) <= radius * (1 + 1e-12)
    return indices[keep], coords[keep]


def enumerate_dual(lat: Lattice, radius: float, max_candidates: int = MAX_CANDIDATES):
    """All dual points with |kappa| <= radius, sorted lexicographically by index."""
    indices, coords = dual_points_array(lat, radius, max_candidates)
    return [DualPoint(tuple(k), tuple(c)) for k, c in zip(indices.tolist(), coords.tolist())]


def band_indices(d: int, band: int) -> np.ndarray:
    """Index box [-band, band]^d as an (n, d) int array in lexicographic order."""
    axis = range(-band, band + 1)
    return np.array(list(itertools.product(axis, repeat=d)), dtype=int).reshape(-1, d)


def band_points(lat: Lattice, band: int):
    """DualPoints of the index box [-band, band]^d, lexicographic."""
    indices = band_indices(lat.dim, band)
    coords = lat.dual_coords(indices)
    return [DualPoint(tuple(k), tuple(c)) for k, c in zip(indices.tolist(), coords.tolist())]


def count_bound(lat: Lattice, radius: float) -> float:
    """Parallelotope bound C (2R+1)^d on #{kappa in L^perp : |kappa| <= R}.

    C is the product of 1/|a_j . e_j| over the columns of the dual generator.
    This bound is not valid for every lattice (it can undercount when the
    dual is coarse or strongly sheared); :func:`count_bound_strict` is.
    """
    diag = np.abs(np.diag(lat.dual_generator))
    if np.any(diag == 0):
        raise DegenerateAxis("some dual generator column has a_j . e_j = 0")
    return float(np.prod(1.0 / diag) * (2 * radius + 1) ** lat.dim)


def count_bound_strict(lat: Lattice, radius: float) -> float:
    """Always-valid box bound prod_j (2 floor(R |a_j|) + 1), a_j primal columns.

    Holds because the index of a dual point is k = A^T kappa, so |k_j| <= |a_j| R.
    """
    norms = np.linalg.norm(lat.generator, axis=0)
    return float(np.prod(2 * np.floor(norms * radius + 1e-9) + 1))


@dataclass(frozen=True, eq=False)
class EmbeddedLattice:
    """A_d = Z^{d+1} restricted to the zero-sum hyperplane, in homogeneous coordinates."""

    generator: np.ndarray
    dual_generator: np.ndarray

    @property
    def dim(self) -> int:
        return self.generator.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.generator.shape[0]

    @property
    def covolume(self) -> float:
        return math.sqrt(float(np.linalg.det(self.generator.T @ self.generator)))

    def orthonormal_basis(self) -> np.ndarray:
        """Orthonormal basis Q ((d+1) x d) of the hyperplane, from a QR of A."""
        q, _ = np.linalg.qr(self.generator)
        return q

    def intrinsic(self) -> Lattice:
        """The same lattice written in d intrinsic coordinates y = Q^T t."""
        return new_lattice(self.orthonormal_basis().T @ self.generator)

    def homogeneous_dual_index(self, j) -> np.ndarray:
        """Integer vector (d+1) * Atilde j of the dual point with index j."""
        j = np.asarray(j, dtype=float)
        return np.rint((self.ambient_dim) * (j @ self.dual_generator.T)).astype(int)


def a_d_lattice(d: int) -> EmbeddedLattice:
    """Generator (identity over a row of -1) and dual A (A^T A)^{-1} of A_d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    a = np.vstack([np.eye(d), -np.ones((1, d))])
    dual_gen = a @ np.linalg.inv(a.T @ a)
    return EmbeddedLattice(_frozen(a), _frozen(dual_gen))


def random_lattice(rng, d: int, max_cond: float = 1e3) -> Lattice:
    """Gaussian generator, redrawn until its condition number is below ``max_cond``."""
    while True:
        a = rng.standard_normal((d, d))
        if np.linalg.cond(a) < max_cond:
            return new_lattice(a)


def parse_generator(text: str) -> Lattice:
    """Parse ``d`` followed by d rows of d whitespace-separated decimals."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty generator file")
    try:
        d = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the dimension, got {lines[0]!r}") from None
    if d < 1:
        raise ValueError("dimension must be positive")
    rows = lines[1:]
    if len(rows) != d:
        raise ValueError(f"expected {d} matrix rows, got {len(rows)}")
    matrix = []
    for n, row in enumerate(rows, start=2):
        parts = row.split()
        if len(parts) != d:
            raise ValueError(f"line {n}: expected {d} entries, got {len(parts)}")
        try:
            matrix.append([float(x) for x in parts])
        except ValueError:
            raise ValueError(f"line {n}: non-numeric entry in {row!r}") from None
    return new_lattice(matrix)


def read_generator(path) -> Lattice:
    return parse_generator(Path(path).read_text())


def format_generator(lat: Lattice) -> str:
    rows = [" ".join(repr(float(x)) for x in row) for row in lat.generator]
    return "\n".join([str(lat.dim), *rows]) + "\n"
