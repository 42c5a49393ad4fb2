"""Experiment configuration: flat ``key=value`` files merged with CLI flags."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import ConfigError, LatFourierError
from .lattice import EmbeddedLattice, Lattice, a_d_lattice, new_lattice, random_lattice, read_generator

DEFAULT_P = (1.0, 1.25, 4 / 3, 1.5, 2.0)


def parse_number(text: str) -> float:
    """Float or fraction such as ``4/3``."""
    text = text.strip()
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def parse_number_list(text: str):
    return tuple(parse_number(t) for t in str(text).split(",") if t.strip())


@dataclass
class ExperimentConfig:
    lattice: str = "identity:2"
    N: int = 32
    K: int = 8
    oversample: int = 4
    p: tuple = DEFAULT_P
    q: tuple = ()
    b: tuple = ()
    beta: float | None = None
    symbol: str = "gaussian"
    weight: str | None = None
    trials: int = 20
    samples: int = 10_000
    seed: int = 0
    out: str = field(default_factory=lambda: os.environ.get("LATFOURIER_OUT", "latfourier_out"))
    jobs: int = 1

    def validate(self):
        if self.N < 1:
            raise ConfigError("N", "must be >= 1")
        if self.K < 0:
            raise ConfigError("K", "must be >= 0")
        if 2 * self.K + 1 > self.N:
            raise ConfigError("K", f"2K+1 = {2 * self.K + 1} exceeds N = {self.N}")
        if self.oversample < 1:
            raise ConfigError("oversample", "must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials", "must be >= 1")
        if self.samples < 1:
            raise ConfigError("samples", "must be >= 1")
        if self.jobs < 1:
            raise ConfigError("jobs", "must be >= 1")
        if self.seed is None:
            raise ConfigError("seed", "a seed is required")
        for p in self.p:
            if not 1 <= p <= 2:
                raise ConfigError("p", f"exponent {p} outside [1, 2]")
        for q in self.q:
            if not 1 < q < float("inf"):
                raise ConfigError("q", f"exponent {q} outside (1, inf)")
        if self.q and len(self.q) != len(self.p):
            raise ConfigError("q", "needs one entry per p")
        if self.beta is not None and not self.beta > 0:
            raise ConfigError("beta", "must be positive")
        self.lattice_object()
        return self

    def lattice_object(self):
        try:
            return parse_lattice(self.lattice)
        except ConfigError:
            raise
        except (LatFourierError, ValueError, OSError) as exc:
            raise ConfigError("lattice", str(exc)) from None


_CASTS = {
    "N": int, "K": int, "oversample": int, "trials": int, "samples": int, "seed": int, "jobs": int,
    "p": parse_number_list, "q": parse_number_list, "b": parse_number_list,
    "beta": parse_number,
}


def _cast(key, value):
    try:
        return _CASTS.get(key, str)(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(key, f"cannot parse {value!r}") from None


def read_config_file(path) -> dict:
    """Read ``key=value`` lines; ``#`` starts a comment."""
    known = {f.name for f in fields(ExperimentConfig)}
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", str(exc)) from None
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(key or f"line {n}", "expected key=value")
        if key not in known:
            raise ConfigError(key, "unknown configuration key")
        values[key] = _cast(key, value.strip())
    return values


def build_config(file_values: dict, flag_values: dict) -> ExperimentConfig:
    """Flags win over file values, which win over defaults."""
    merged = dict(file_values)
    for k, v in flag_values.items():
        if v is not None:
            merged[k] = _cast(k, v) if isinstance(v, str) and k in _CASTS else v
    return ExperimentConfig(**merged).validate()


def parse_lattice(source: str):
    """Resolve a lattice source.

    Forms: ``identity:d``, ``diag:a,b,...``, ``matrix:r11,r12;r21,r22``
    (rows separated by ``;``), ``random:d[:seed]``, ``a_d:d`` (returns an
    EmbeddedLattice), ``file:path`` or a bare path to a generator file.
    """
    kind, _, arg = source.partition(":")
    kind = kind.strip().lower()
    if kind == "identity":
        return new_lattice(np.eye(int(arg)))
    if kind == "diag":
        return new_lattice(np.diag(parse_number_list(arg)))
    if kind == "matrix":
        rows = [parse_number_list(r) for r in arg.split(";") if r.strip()]
        if len({len(r) for r in rows}) != 1:
            raise ConfigError("lattice", "matrix rows have different lengths")
        return new_lattice(rows)
    if kind == "random":
        d, _, s = arg.partition(":")
        return random_lattice(np.random.default_rng(int(s or 0)), int(d))
    if kind == "a_d":
        return a_d_lattice(int(arg))
    if kind == "file":
        return read_generator(arg)
    if Path(source).is_file():
        return read_generator(source)
    raise ConfigError("lattice", f"unrecognized lattice source {source!r}")


def working_lattice(lat) -> Lattice:
    """Full-rank lattice used for transforms (A_d goes to intrinsic coordinates)."""
    return lat.intrinsic() if isinstance(lat, EmbeddedLattice) else lat
