"""Fundamental domains: the parallelotope of a lattice and the A_d hexagon.

Both domain types share a small protocol used by the Monte Carlo routines:
``lattice`` (a full-rank :class:`~latfourier.lattice.Lattice` in intrinsic
coordinates), ``bounding_box()`` and ``contains(points)`` over intrinsic
coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientShiftRadius
from .lattice import EmbeddedLattice, Lattice, a_d_lattice


@dataclass(frozen=True)
class Parallelotope:
    """Omega_P = {A t : t in [0,1)^d}."""

    lattice: Lattice

    @property
    def domain_id(self) -> str:
        return f"parallelotope_d{self.lattice.dim}"

    def measure(self) -> float:
        return self.lattice.covolume

    def coordinates(self, x):
        """Solve A t = x for each row of ``x``."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return np.linalg.solve(self.lattice.generator, x.T).T

    def contains(self, x) -> np.ndarray:
        t = self.coordinates(x)
        return np.all((t >= 0) & (t < 1), axis=1)

    def bounding_box(self):
        a = self.lattice.generator
        return np.minimum(a, 0).sum(axis=1), np.maximum(a, 0).sum(axis=1)


@dataclass(frozen=True)
class HexDomainAd:
    """Omega_H = {t in R_H^{d+1} : -s < t_i - t_j <= s for all i < j}, s = ``scale``.

    ``scale=1`` is the fundamental domain of A_d (a regular hexagon for d=2);
    other scales exist to exercise broken tilings.
    """

    d: int
    scale: float = 1.0

    @property
    def domain_id(self) -> str:
        if self.scale == 1.0:
            return f"hex_a{self.d}"
        return f"hex_a{self.d}_scale{self.scale:g}"

    @property
    def embedded(self) -> EmbeddedLattice:
        return a_d_lattice(self.d)

    @property
    def lattice(self) -> Lattice:
        return self.embedded.intrinsic()

    def measure(self) -> float:
        return self.scale**self.d * math.sqrt(self.d + 1)

    def contains_homogeneous(self, t, atol=1e-9) -> np.ndarray:
        t = np.atleast_2d(np.asarray(t, dtype=float))
        on_plane = np.abs(t.sum(axis=1)) <= atol * max(1.0, float(np.abs(t).max(initial=0.0)))
        diff = t[:, :, None] - t[:, None, :]
        iu = np.triu_indices(t.shape[1], k=1)
        diff = diff[:, iu[0], iu[1]]
        inside = np.all((diff > -self.scale) & (diff <= self.scale), axis=1)
        return on_plane & inside

    def to_homogeneous(self, y):
        return np.atleast_2d(np.asarray(y, dtype=float)) @ self.embedded.orthonormal_basis().T

    def contains(self, y) -> np.ndarray:
        return self.contains_homogeneous(self.to_homogeneous(y))

    def bounding_box(self):
        # farthest vertices have k coordinates (d+1-k)/(d+1) and the rest -k/(d+1)
        n = self.d + 1
        r = self.scale * math.sqrt(max(k * (n - k) / n for k in range(1, n)))
        return np.full(self.d, -r), np.full(self.d, r)


def measure(dom) -> float:
    return dom.measure()


def reduce(dom: Parallelotope, x) -> np.ndarray:
    """Representative of x + L inside Omega_P (rows of ``x`` handled independently)."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    t = dom.coordinates(x)
    t = t - np.floor(t)
    # floor of a value within rounding of 1 can leave t == 1.0 exactly
    t[t >= 1.0] = 0.0
    y = t @ dom.lattice.generator.T
    return y[0] if single else y


def required_shift_radius(dom, lat: Lattice | None = None) -> int:
    """Smallest index-box radius that reaches every translate from the bounding box."""
    lat = dom.lattice if lat is None else lat
    lo, hi = dom.bounding_box()
    width = np.asarray(hi) - np.asarray(lo)
    inv = np.linalg.inv(lat.generator)
    return int(math.ceil(float(np.max(np.abs(inv) @ width)) - 1e-12))


@dataclass(frozen=True)
class TilingReport:
    domain_id: str
    n_samples: int
    fraction_exactly_one: float
    seed: int
    fraction_uncovered: float = 0.0
    fraction_overlap: float = 0.0

    def csv_row(self):
        return [self.domain_id, self.n_samples, self.fraction_exactly_one, self.seed]


TILING_CSV_HEADER = ["domain_id", "n_samples", "fraction_exactly_one", "seed"]


def _as_intrinsic(lat):
    if isinstance(lat, EmbeddedLattice):
        return lat.intrinsic()
    return lat


def tiling_check(dom, lat=None, n_samples: int = 10_000, shift_radius: int | None = None,
                 seed: int = 0, chunk: int = 4096) -> TilingReport:
    """Monte Carlo check that translates of ``dom`` by ``lat`` tile space.

    Samples x uniformly in the bounding box of the domain and counts the
    lattice vectors lambda in the index box |m|_inf <= shift_radius with
    x - lambda in the domain. A tiling gives exactly one for almost every x.

    Raises InsufficientShiftRadius if the index box cannot reach every
    translate that may intersect the sampling box.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    lat = dom.lattice if lat is None else _as_intrinsic(lat)
    needed = required_shift_radius(dom, lat)
    if shift_radius is None:
        shift_radius = needed
    elif shift_radius < needed:
        raise InsufficientShiftRadius(
            f"shift_radius={shift_radius} cannot reach all translates; need >= {needed}"
        )
    d = lat.dim
    axis = np.arange(-shift_radius, shift_radius + 1)
    grids = np.meshgrid(*([axis] * d), indexing="ij")
    shifts = lat.points(np.stack([g.ravel() for g in grids], axis=1))

    rng = np.random.default_rng(seed)
    lo, hi = dom.bounding_box()
    exact = uncovered = overlap = 0
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        x = rng.uniform(lo, hi, size=(m, d))
        cand = (x[:, None, :] - shifts[None, :, :]).reshape(-1, d)
        counts = dom.contains(cand).reshape(m, len(shifts)).sum(axis=1)
        exact += int(np.sum(counts == 1))
        uncovered += int(np.sum(counts == 0))
        overlap += int(np.sum(counts > 1))
        done += m
    return TilingReport(dom.domain_id, n_samples, exact / n_samples, seed,
                        uncovered / n_samples, overlap / n_samples)


def monte_carlo_measure(dom, n_samples: int = 200_000, seed: int = 0) -> float:
    """Hit-or-miss volume estimate of ``dom`` inside its bounding box."""
    rng = np.random.default_rng(seed)
    lo, hi = dom.bounding_box()
    x = rng.uniform(lo, hi, size=(n_samples, len(lo)))
    return float(np.prod(np.asarray(hi) - np.asarray(lo)) * dom.contains(x).mean())
