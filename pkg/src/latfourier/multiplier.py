"""Fourier multipliers A f = F^{-1}(sigma F f) and their norm experiments."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .errors import BadExponentPair, MissingWeight
from .lattice import DualPoint, Lattice, band_indices
from .transform import GridFunction, band_coefficients, forward, inverse, synthesize


class Symbol:
    """A function sigma on the dual lattice.

    Subclasses implement ``_evaluate(indices, kappas)`` over row arrays; the
    integer index lets table symbols look values up without touching floats.
    """

    kind = "symbol"

    def _evaluate(self, indices, kappas):
        raise NotImplementedError

    def evaluate(self, points) -> np.ndarray:
        """Values at a list of DualPoints."""
        points = list(points)
        if not points:
            return np.zeros(0, dtype=complex)
        idx = np.array([p.index for p in points], dtype=int)
        kap = np.array([p.coords for p in points], dtype=float)
        return np.asarray(self._evaluate(idx, kap), dtype=complex)

    def __call__(self, points):
        return self.evaluate(points)

    def on_band(self, lattice: Lattice, band: int) -> np.ndarray:
        """Values on [-band, band]^d, shaped like a Spectrum's coefficient array."""
        idx = band_indices(lattice.dim, band)
        vals = np.asarray(self._evaluate(idx, lattice.dual_coords(idx)), dtype=complex)
        return vals.reshape((2 * band + 1,) * lattice.dim)

    def conj(self) -> "Symbol":
        return ConjugateSymbol(self)

    def __mul__(self, other) -> "Symbol":
        return ProductSymbol(self, other)


class GaussianSymbol(Symbol):
    """sigma(kappa) = exp(-|kappa|^2)."""

    kind = "gaussian"

    def _evaluate(self, indices, kappas):
        return np.exp(-np.sum(np.asarray(kappas) ** 2, axis=1)).astype(complex)

    def __repr__(self):
        return "GaussianSymbol()"


class ConstantSymbol(Symbol):
    kind = "constant"

    def __init__(self, a0):
        self.a0 = complex(a0)

    def _evaluate(self, indices, kappas):
        return np.full(len(indices), self.a0, dtype=complex)

    def __repr__(self):
        return f"ConstantSymbol({self.a0!r})"


class PolynomialSymbol(Symbol):
    """Symbol of the constant-coefficient operator sum_alpha a_alpha d^alpha.

    ``coefficients`` maps multi-indices alpha to a_alpha; the symbol is
    sum_alpha a_alpha (2 pi i kappa)^alpha.
    """

    kind = "polynomial"

    def __init__(self, coefficients):
        self.coefficients = {tuple(int(a) for a in k): complex(v) for k, v in dict(coefficients).items()}

    def _evaluate(self, indices, kappas):
        z = 2j * np.pi * np.asarray(kappas, dtype=float)
        out = np.zeros(len(z), dtype=complex)
        for alpha, a in self.coefficients.items():
            if len(alpha) != z.shape[1]:
                raise ValueError(f"multi-index {alpha} does not match dimension {z.shape[1]}")
            out += a * np.prod(z ** np.array(alpha), axis=1)
        return out

    def __repr__(self):
        return f"PolynomialSymbol({self.coefficients!r})"


class TableSymbol(Symbol):
    """Explicit values keyed by dual index; must cover every point it is asked about."""

    kind = "table"

    def __init__(self, values):
        self.values = {}
        for key, v in dict(values).items():
            k = key.index if isinstance(key, DualPoint) else tuple(int(i) for i in key)
            self.values[k] = complex(v)

    def _evaluate(self, indices, kappas):
        out = np.empty(len(indices), dtype=complex)
        for i, k in enumerate(map(tuple, np.asarray(indices).tolist())):
            try:
                out[i] = self.values[k]
            except KeyError:
                raise MissingWeight(f"symbol table has no entry for index {k}") from None
        return out

    @classmethod
    def from_array(cls, values, band: int) -> "TableSymbol":
        values = np.asarray(values)
        idx = band_indices(values.ndim, band)
        return cls({tuple(k): v for k, v in zip(idx.tolist(), values.ravel().tolist())})

    def __repr__(self):
        return f"TableSymbol(<{len(self.values)} entries>)"


class ConjugateSymbol(Symbol):
    kind = "conjugate"

    def __init__(self, base: Symbol):
        self.base = base

    def _evaluate(self, indices, kappas):
        return np.conj(self.base._evaluate(indices, kappas))

    def conj(self):
        return self.base


class ProductSymbol(Symbol):
    kind = "product"

    def __init__(self, left: Symbol, right: Symbol):
        self.left, self.right = left, right

    def _evaluate(self, indices, kappas):
        return self.left._evaluate(indices, kappas) * self.right._evaluate(indices, kappas)


def read_symbol_table(path, d: int | None = None) -> TableSymbol:
    """Read a CSV of ``k_1..k_d, re, im`` rows (header and ``#`` lines optional)."""
    values = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                nums = [float(x) for x in row]
            except ValueError:
                continue  # header
            if d is not None and len(nums) != d + 2:
                raise ValueError(f"expected {d + 2} columns in symbol table, got {len(nums)}")
            k = tuple(int(round(x)) for x in nums[:-2])
            values[k] = complex(nums[-2], nums[-1])
    if not values:
        raise ValueError(f"symbol table {path} has no rows")
    return TableSymbol(values)


def parse_symbol(text: str) -> Symbol:
    """Parse ``gaussian``, ``const:re,im``, ``poly:<alpha=coeff;...>`` or ``table:<path>``.

    Multi-indices in ``poly`` are comma separated (``1,0=2``); coefficients
    accept Python complex syntax (``2+1j``).
    """
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name == "gaussian":
        return GaussianSymbol()
    if name == "const":
        parts = [float(x) for x in arg.split(",") if x.strip()]
        if not 1 <= len(parts) <= 2:
            raise ValueError(f"const symbol needs 're' or 're,im', got {arg!r}")
        return ConstantSymbol(complex(parts[0], parts[1] if len(parts) == 2 else 0.0))
    if name == "poly":
        coeffs = {}
        for term in filter(None, (t.strip() for t in arg.split(";"))):
            alpha, _, c = term.partition("=")
            if not c:
                raise ValueError(f"poly term {term!r} needs the form alpha=coeff")
            coeffs[tuple(int(a) for a in alpha.split(","))] = complex(c.replace(" ", ""))
        if not coeffs:
            raise ValueError("poly symbol has no terms")
        return PolynomialSymbol(coeffs)
    if name == "table":
        if not Path(arg).is_file():
            raise ValueError(f"symbol table {arg!r} not found")
        return read_symbol_table(arg)
    raise ValueError(f"unknown symbol kind {name!r}")


def apply(sigma: Symbol, f: GridFunction, band: int) -> GridFunction:
    """A f = inverse(sigma * forward(f, band)) on the same grid."""
    s = forward(f, band)
    return inverse(s.with_coefficients(s.coefficients * sigma.on_band(f.lattice, band)), f.n_per_axis)


def _growth_values(sigma, points):
    if isinstance(sigma, Symbol):
        return np.abs(sigma.evaluate(points))
    return np.abs(np.asarray(sigma)).ravel()


def growth_functional(values, exponent: float) -> float:
    """sup_{s>0} s (#{|v| >= s})^exponent, evaluated at the breakpoints of |v|."""
    v = np.sort(np.abs(np.asarray(values, dtype=complex)).ravel())[::-1]
    if v.size == 0:
        return 0.0
    return float(np.max(v * np.arange(1, v.size + 1, dtype=float) ** exponent))


def symbol_growth(sigma, points, p: float, q: float) -> float:
    """Growth functional sup_s s #{|sigma| >= s}^(1/p - 1/q) over ``points``.

    ``sigma`` may be a Symbol (evaluated at the DualPoints) or an array of values.
    """
    exponent = 1 / p - 1 / q
    if exponent < 0:
        raise BadExponentPair(f"1/p - 1/q = {exponent} < 0 for p={p}, q={q}")
    return growth_functional(_growth_values(sigma, points), exponent)


def l2_opnorm_bound(sigma, points) -> float:
    """sup |sigma| over ``points``, the L^2 -> L^2 operator norm."""
    v = _growth_values(sigma, points)
    return float(v.max()) if v.size else 0.0


def argmax_point(sigma: Symbol, points) -> DualPoint:
    """Point of largest |sigma|; ties go to the lexicographically smallest index."""
    points = sorted(points)
    return points[int(np.argmax(np.abs(sigma.evaluate(points))))]


def growth_is_stable(sigma: Symbol, lattice: Lattice, band: int, p: float, q: float,
                     rtol: float = 0.01) -> bool:
    """True when the growth functional on bands K and 2K agrees within ``rtol``."""
    g1 = growth_functional(sigma.on_band(lattice, band), 1 / p - 1 / q)
    g2 = growth_functional(sigma.on_band(lattice, 2 * band), 1 / p - 1 / q)
    if g1 == 0:
        return g2 == 0
    return abs(g2 - g1) <= rtol * abs(g1)


def _batch_lp(samples, p, d):
    a = np.abs(samples).reshape(samples.shape[: samples.ndim - d] + (-1,))
    if math.isinf(p):
        return a.max(axis=-1)
    return np.mean(a**p, axis=-1) ** (1 / p)


def empirical_opnorm(sigma: Symbol, p: float, q: float, trials: int, n: int, band: int,
                     seed: int, lattice: Lattice, return_witness: bool = False):
    """Lower bound for ||A||_{L^p -> L^q} from explicit test functions.

    Takes the max of ||A f||_q / ||f||_p over the constant, every single mode
    in the band, and ``trials`` random band-limited functions, with both norms
    evaluated on the N^d grid (pass an oversampled N).
    """
    d = lattice.dim
    width = 2 * band + 1
    mult = sigma.on_band(lattice, band)
    rng = np.random.default_rng(seed)

    best, witness = -1.0, None

    def consider(coeffs, label):
        nonlocal best, witness
        f = synthesize(coeffs, n, d)
        af = synthesize(coeffs * mult, n, d)
        ratios = _batch_lp(af, q, d) / _batch_lp(f, p, d)
        i = int(np.argmax(ratios))
        if ratios[i] > best:
            best, witness = float(ratios[i]), label(i)

    eye = np.eye(width**d, dtype=complex).reshape((width**d,) + (width,) * d)
    idx = band_indices(d, band)
    consider(eye, lambda i: ("mode", tuple(idx[i])))
    consider(_constant_coeffs(d, band), lambda i: ("constant", None))
    chunk = 64
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        shape = (m,) + (width,) * d
        c = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
        consider(c, lambda i, base=done: ("random", base + i))
        done += m
    return (best, witness) if return_witness else best


def _constant_coeffs(d, band):
    c = np.zeros((1,) + (2 * band + 1,) * d, dtype=complex)
    c[(0,) + (band,) * d] = 1.0
    return c


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """Normalized quadrature (1/N^d) sum f conj(g)."""
    return complex(np.mean(f.samples * np.conj(g.samples)))


def adjoint_symbol_check(sigma: Symbol, f: GridFunction, g: GridFunction, band: int) -> float:
    """|<A f, g> - <f, A* g>| where A* is the multiplier with symbol conj(sigma)."""
    return abs(inner_product(apply(sigma, f, band), g) - inner_product(f, apply(sigma.conj(), g, band)))


def apply_batch(sigma: Symbol, samples, band: int, lattice: Lattice):
    """Apply ``sigma`` to a batch of grid samples with shape (m, N, ..., N)."""
    d = lattice.dim
    samples = np.asarray(samples)
    c = band_coefficients(samples, band, d)
    return synthesize(c * sigma.on_band(lattice, band), samples.shape[-1], d)
