"""Fourier transform on a fundamental domain via the torus DFT.

A function on Omega = A [0,1)^d is sampled on the deformed grid
x_j = A (j / N). Pulling back by A turns it into a function on the torus,
so the coefficient at kappa = A^{-T} k is the k-th normalized DFT bin; for
trigonometric polynomials whose indices lie in [-K, K]^d with 2K+1 <= N the
grid quadrature is exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import BandExceedsGrid
from .lattice import DualPoint, Lattice, band_indices


def _check_band(band: int, n: int):
    if band < 0:
        raise ValueError("band must be >= 0")
    if 2 * band + 1 > n:
        raise BandExceedsGrid(f"2K+1 = {2 * band + 1} exceeds grid size N = {n}")


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples f(A j / N) for j in {0..N-1}^d, stored with shape (N,)*d."""

    lattice: Lattice
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        d = self.lattice.dim
        if s.ndim != d or len(set(s.shape)) != 1:
            raise ValueError(f"samples must have shape (N,)*{d}, got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def n_per_axis(self) -> int:
        return self.samples.shape[0]

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def grid_points(self) -> np.ndarray:
        """Sample locations x_j = A j / N as an (N^d, d) array, C order."""
        return grid_points(self.lattice, self.n_per_axis)

    def with_samples(self, samples) -> "GridFunction":
        return GridFunction(self.lattice, samples)

    @classmethod
    def from_callable(cls, lattice: Lattice, n: int, func) -> "GridFunction":
        """Sample ``func`` (vectorized over rows of an (M, d) array) on the grid."""
        x = grid_points(lattice, n)
        return cls(lattice, np.asarray(func(x)).reshape((n,) * lattice.dim))


def grid_points(lattice: Lattice, n: int) -> np.ndarray:
    d = lattice.dim
    axis = np.arange(n) / n
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    t = np.stack([g.ravel() for g in grids], axis=1)
    return t @ lattice.generator.T


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Coefficients on the index box [-band, band]^d.

    ``coefficients`` has shape (2*band+1,)*d with entry ``[k + band]`` holding
    the coefficient of kappa = A^{-T} k; its C order is lexicographic in k.
    """

    lattice: Lattice
    coefficients: np.ndarray
    band: int

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex)
        d = self.lattice.dim
        width = 2 * self.band + 1
        if c.shape != (width,) * d:
            raise ValueError(f"coefficients must have shape {(width,) * d}, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def indices(self) -> np.ndarray:
        return band_indices(self.dim, self.band)

    def kappas(self) -> np.ndarray:
        return self.lattice.dual_coords(self.indices())

    def points(self):
        return [DualPoint(tuple(k), tuple(c))
                for k, c in zip(self.indices().tolist(), self.kappas().tolist())]

    def values(self) -> np.ndarray:
        """Coefficients flattened in lexicographic index order."""
        return self.coefficients.ravel()

    def items(self):
        return zip(self.points(), self.values().tolist())

    def __len__(self):
        return self.coefficients.size

    def __getitem__(self, key):
        k = key.index if isinstance(key, DualPoint) else tuple(key)
        if any(abs(i) > self.band for i in k):
            raise KeyError(k)
        return complex(self.coefficients[tuple(i + self.band for i in k)])

    def with_coefficients(self, coefficients) -> "Spectrum":
        return Spectrum(self.lattice, coefficients, self.band)

    @classmethod
    def from_mapping(cls, lattice: Lattice, band: int, entries) -> "Spectrum":
        """Build from {index tuple or DualPoint: value}; missing entries are zero."""
        c = np.zeros((2 * band + 1,) * lattice.dim, dtype=complex)
        for key, value in dict(entries).items():
            k = key.index if isinstance(key, DualPoint) else tuple(key)
            if len(k) != lattice.dim or any(abs(i) > band for i in k):
                raise KeyError(f"index {k} outside band {band}")
            c[tuple(i + band for i in k)] = value
        return cls(lattice, c, band)


def _band_slices(d: int, band: int, n: int):
    idx = np.arange(-band, band + 1) % n
    return np.ix_(*([idx] * d))


def band_coefficients(samples, band: int, d: int) -> np.ndarray:
    """Normalized DFT of the trailing ``d`` axes, cut to the centered band.

    Leading axes are treated as a batch.
    """
    samples = np.asarray(samples)
    n = samples.shape[-1]
    _check_band(band, n)
    axes = tuple(range(samples.ndim - d, samples.ndim))
    full = np.fft.fftn(samples, axes=axes) / n**d
    idx = np.arange(-band, band + 1) % n
    for ax in axes:
        full = np.take(full, idx, axis=ax)
    return full


def synthesize(coefficients, n: int, d: int) -> np.ndarray:
    """Inverse of :func:`band_coefficients`: grid values sum_k c_k e^{2 pi i k.j/N}."""
    coefficients = np.asarray(coefficients, dtype=complex)
    width = coefficients.shape[-1]
    band = (width - 1) // 2
    _check_band(band, n)
    batch = coefficients.shape[: coefficients.ndim - d]
    full = np.zeros(batch + (n,) * d, dtype=complex)
    idx = np.arange(-band, band + 1) % n
    full[(Ellipsis,) + np.ix_(*([idx] * d))] = coefficients
    axes = tuple(range(len(batch), len(batch) + d))
    return np.fft.ifftn(full, axes=axes) * n**d


def forward(f: GridFunction, band: int) -> Spectrum:
    """Coefficients (1/N^d) sum_j f_j e^{-2 pi i k.j/N} for k in [-band, band]^d."""
    _check_band(band, f.n_per_axis)
    return Spectrum(f.lattice, band_coefficients(f.samples, band, f.dim), band)


def inverse(s: Spectrum, n: int) -> GridFunction:
    """Grid samples of sum_kappa s(kappa) e^{2 pi i kappa.x} on the N^d grid."""
    _check_band(s.band, n)
    return GridFunction(s.lattice, synthesize(s.coefficients, n, s.dim))


def slow_forward_oracle(f: GridFunction, band: int) -> Spectrum:
    """Direct-sum reference for :func:`forward`.

    Evaluates (1/N^d) sum_j f(x_j) exp(-2 pi i kappa . x_j) with real
    coordinates x_j = A j/N and kappa = A^{-T} k, one frequency at a time.
    """
    n = f.n_per_axis
    _check_band(band, n)
    x = f.grid_points()
    values = f.samples.ravel()
    indices = band_indices(f.dim, band)
    kappas = f.lattice.dual_coords(indices)
    out = np.empty(len(indices), dtype=complex)
    for i, kappa in enumerate(kappas):
        phase = np.exp(-2j * np.pi * (x @ kappa))
        total = 0j
        for v, e in zip(values, phase):
            total += v * e
        out[i] = total / values.size
    return Spectrum(f.lattice, out.reshape((2 * band + 1,) * f.dim), band)


def plancherel_defect(f: GridFunction, s: Spectrum) -> float:
    """| (1/N^d) sum |f_j|^2 - sum |s(kappa)|^2 |."""
    energy = float(np.mean(np.abs(f.samples) ** 2))
    return abs(energy - float(np.sum(np.abs(s.coefficients) ** 2)))


def single_mode(lattice: Lattice, n: int, index) -> GridFunction:
    """Grid samples of e^{2 pi i kappa.x} for kappa = A^{-T} index."""
    kappa = lattice.dual_coords(np.atleast_2d(index))[0]
    return GridFunction.from_callable(lattice, n, lambda x: np.exp(2j * np.pi * (x @ kappa)))


def random_spectrum(lattice: Lattice, band: int, rng) -> Spectrum:
    """iid complex standard normal coefficients on the band."""
    shape = (2 * band + 1,) * lattice.dim
    c = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    return Spectrum(lattice, c, band)


def random_band_limited(lattice: Lattice, n: int, band: int, rng, normalize_p=None) -> GridFunction:
    """Random trigonometric polynomial on the band, optionally scaled to unit L^p norm."""
    f = inverse(random_spectrum(lattice, band, rng), n)
    if normalize_p is None:
        return f
    from .inequalities import lp_norm_domain

    return f.with_samples(f.samples / lp_norm_domain(f, normalize_p))


SPECTRUM_SCHEMA = "# schema=1"


def spectrum_to_csv(s: Spectrum) -> str:
    """CSV with columns k_1..k_d, kappa_1..kappa_d, re, im sorted by index."""
    d = s.dim
    buf = io.StringIO()
    buf.write(SPECTRUM_SCHEMA + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"k_{i + 1}" for i in range(d)] + [f"kappa_{i + 1}" for i in range(d)] + ["re", "im"])
    for k, kappa, c in zip(s.indices().tolist(), s.kappas().tolist(), s.values().tolist()):
        w.writerow([*k, *(repr(float(v)) for v in kappa), repr(c.real), repr(c.imag)])
    return buf.getvalue()


def spectrum_from_csv(text: str, lattice: Lattice) -> Spectrum:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    d = lattice.dim
    entries = {}
    band = 0
    for r in body:
        k = tuple(int(v) for v in r[:d])
        band = max(band, *(abs(i) for i in k))
        entries[k] = complex(float(r[header.index("re")]), float(r[header.index("im")]))
    return Spectrum.from_mapping(lattice, band, entries)
