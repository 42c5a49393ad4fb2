"""Batch experiment suites behind the command-line driver.

Every suite writes its CSV into the output directory and returns a
:class:`SuiteResult` whose ``passed`` flag covers only the hard criteria
(constant-free inequalities, oracle equivalences, tiling fractions).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import domain as dom_mod
from .config import ExperimentConfig, working_lattice
from .errors import ConfigError
from .inequalities import (
    HY_INVERSE_TOLERANCE,
    HY_TOLERANCE,
    INEQUALITY_CSV_HEADER,
    WeightFunction,
    check_hardy_littlewood,
    check_hausdorff_young,
    check_hy_inverse,
    check_hyp,
    check_paley,
    check_plancherel,
    conjugate_exponent,
    lp_norm_domain,
    power_weight,
    report_row,
)
from .lattice import EmbeddedLattice, band_indices, band_points
from .multiplier import (
    adjoint_symbol_check,
    apply,
    apply_batch,
    argmax_point,
    empirical_opnorm,
    growth_is_stable,
    l2_opnorm_bound,
    parse_symbol,
    symbol_growth,
)
from .report import ratio_plots_from_csv, read_csv, write_csv
from .transform import (
    forward,
    inverse,
    plancherel_defect,
    random_band_limited,
    random_spectrum,
    single_mode,
    slow_forward_oracle,
    synthesize,
)

ORACLE_TOLERANCE = 1e-11
ROUND_TRIP_TOLERANCE = 1e-10
PLANCHEREL_TOLERANCE = 1e-10
TILING_THRESHOLD = 0.999
EIGEN_TOLERANCE = 1e-11
ADJOINT_TOLERANCE = 1e-10
L2_TOLERANCE = 1e-9
C_DRIFT_TOLERANCE = 0.05


@dataclass
class SuiteResult:
    name: str
    passed: bool
    files: list = field(default_factory=list)
    summary: list = field(default_factory=list)


def _rng(cfg: ExperimentConfig, item: int):
    return np.random.default_rng(np.random.SeedSequence([cfg.seed, item]))


def _map(cfg, func, items):
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(func, items))
    return [func(i) for i in items]


# -- transform-selftest ------------------------------------------------------

SELFTEST_HEADER = ["check", "instance", "value", "tolerance", "passed", "seed"]


def run_transform_selftest(cfg: ExperimentConfig) -> SuiteResult:
    lat = working_lattice(cfg.lattice_object())
    n, k = cfg.N, cfg.K

    def one(i):
        rng = _rng(cfg, i)
        f = random_band_limited(lat, n, k, rng)
        s = forward(f, k)
        scale = lp_norm_domain(f, 2)
        oracle = float(np.max(np.abs(slow_forward_oracle(f, k).coefficients - s.coefficients)))
        back = inverse(s, n)
        round_trip = float(np.max(np.abs(back.samples - f.samples))) / float(np.max(np.abs(f.samples)))
        defect = plancherel_defect(f, s) / scale**2
        tau = tuple(int(t) for t in rng.integers(0, n, size=lat.dim))
        g = f.with_samples(np.roll(f.samples, tau, axis=tuple(range(lat.dim))))
        phase = np.exp(-2j * np.pi * (band_indices(lat.dim, k) @ np.array(tau)) / n)
        shift = float(np.max(np.abs(forward(g, k).values() - phase * s.values())))
        return [
            ["oracle_equivalence", i, oracle, ORACLE_TOLERANCE, oracle <= ORACLE_TOLERANCE, cfg.seed],
            ["round_trip", i, round_trip, ROUND_TRIP_TOLERANCE, round_trip < ROUND_TRIP_TOLERANCE, cfg.seed],
            ["plancherel", i, defect, PLANCHEREL_TOLERANCE, defect < PLANCHEREL_TOLERANCE, cfg.seed],
            ["translation", i, shift, ROUND_TRIP_TOLERANCE, shift <= ROUND_TRIP_TOLERANCE, cfg.seed],
        ]

    rows = [r for chunk in _map(cfg, one, range(cfg.trials)) for r in chunk]
    path = write_csv(Path(cfg.out) / "transform_selftest.csv", SELFTEST_HEADER, rows)
    passed = all(r[4] for r in rows)
    worst = {}
    for r in rows:
        worst[r[0]] = max(worst.get(r[0], 0.0), r[2])
    summary = [f"{name}: worst {v:.3e}" for name, v in worst.items()]
    return SuiteResult("transform-selftest", passed, [path], summary)


# -- tiling -----------------------------------------------------------------

def tiling_domains(cfg: ExperimentConfig):
    lat = cfg.lattice_object()
    if isinstance(lat, EmbeddedLattice):
        return [(dom_mod.HexDomainAd(lat.dim), lat.intrinsic()),
                (dom_mod.Parallelotope(lat.intrinsic()), lat.intrinsic())]
    return [(dom_mod.Parallelotope(lat), lat)]


def run_tiling(cfg: ExperimentConfig) -> SuiteResult:
    pairs = tiling_domains(cfg)
    reports = _map(cfg, lambda pr: dom_mod.tiling_check(pr[0], pr[1], cfg.samples, seed=cfg.seed), pairs)
    rows = [r.csv_row() for r in reports]
    path = write_csv(Path(cfg.out) / "tiling.csv", dom_mod.TILING_CSV_HEADER, rows)
    passed = all(r.fraction_exactly_one >= TILING_THRESHOLD for r in reports)
    summary = [f"{r.domain_id}: fraction_exactly_one={r.fraction_exactly_one:.5f} "
               f"(measure {pr[0].measure():.7g})" for r, pr in zip(reports, pairs)]
    return SuiteResult("tiling", passed, [path], summary)


# -- inequalities -------------------------------------------------------------

def parse_weight(text: str | None, lat, band: int) -> WeightFunction:
    """``power:beta`` gives phi = (1+|kappa|)^beta; ``table:path`` reads k_1..k_d,value rows."""
    if text is None:
        return power_weight(lat, band, -float(lat.dim))
    kind, _, arg = text.partition(":")
    if kind == "power":
        try:
            return power_weight(lat, band, float(arg))
        except ValueError:
            raise ConfigError("weight", f"bad power exponent {arg!r}") from None
    if kind == "table":
        try:
            header, rows = read_csv(arg)
        except OSError as exc:
            raise ConfigError("weight", str(exc)) from None
        d = lat.dim
        data = [header] + rows if header and _numeric(header) else rows
        return WeightFunction({tuple(int(float(x)) for x in r[:d]): float(r[d]) for r in data})
    raise ConfigError("weight", f"unknown weight {text!r}")


def _numeric(row):
    try:
        [float(x) for x in row]
        return True
    except ValueError:
        return False


def hyp_b_values(cfg, p):
    pc = conjugate_exponent(p)
    if cfg.b:
        return [b for b in cfg.b if p <= b <= pc]
    return sorted({p, (p + pc) / 2, pc})


def run_inequalities(cfg: ExperimentConfig) -> SuiteResult:
    lat = working_lattice(cfg.lattice_object())
    d, n, k = lat.dim, cfg.N, cfg.K
    phi = parse_weight(cfg.weight, lat, k)
    hl_phi = power_weight(lat, k, 1.0)
    beta = float(d + 1) if cfg.beta is None else cfg.beta

    def one(item):
        i, p = item
        rng = _rng(cfg, i)
        rows, ok = [], True
        for _ in range(cfg.trials):
            f = random_band_limited(lat, n, k, rng, normalize_p=p)
            reps = [check_hausdorff_young(f, p, k)]
            reps.append(check_hy_inverse(random_spectrum(lat, k, rng), p, oversample=cfg.oversample))
            if p == 2:
                reps.append(check_plancherel(f, k))
            if p > 1:
                reps.append(check_paley(f, p, phi, k))
                reps.append(check_hardy_littlewood(f, p, hl_phi, beta, k))
                reps.extend(check_hyp(f, p, b, phi, k) for b in hyp_b_values(cfg, p))
            for r in reps:
                if r.passed is False:
                    ok = False
                grid_n = r.params.get("N", n)
                rows.append(report_row(r, d, grid_n, k, cfg.seed))
        return rows, ok

    results = _map(cfg, one, list(enumerate(cfg.p)))
    rows = [r for chunk, _ in results for r in chunk]
    passed = all(ok for _, ok in results)
    out = Path(cfg.out)
    path = write_csv(out / "inequalities.csv", INEQUALITY_CSV_HEADER, rows)
    svgs = ratio_plots_from_csv(path, out)
    summary = []
    for name in ("plancherel", "hy", "hy_inverse", "paley", "hardy_littlewood", "hyp"):
        ratios = [r[10] for r in rows if r[0] == name]
        if ratios:
            summary.append(f"{name}: n={len(ratios)} max ratio={max(ratios):.6g}")
    return SuiteResult("inequalities", passed, [path, *svgs], summary)


# -- multiplier --------------------------------------------------------------

MULTIPLIER_HEADER = ["name", "d", "N", "K", "p", "q", "symbol", "bound", "value", "ratio", "passed", "seed"]

DEFAULT_PAIRS = ((4 / 3, 4.0), (1.5, 3.0), (2.0, 2.0))


def exponent_pairs(cfg):
    if cfg.q:
        return list(zip(cfg.p, cfg.q))
    return list(DEFAULT_PAIRS)


def run_multiplier(cfg: ExperimentConfig) -> SuiteResult:
    lat = working_lattice(cfg.lattice_object())
    d, n, k = lat.dim, cfg.N, cfg.K
    try:
        sigma = parse_symbol(cfg.symbol)
    except ValueError as exc:
        raise ConfigError("symbol", str(exc)) from None
    points = band_points(lat, k)
    mult = sigma.on_band(lat, k)
    rng = _rng(cfg, 0)
    rows = []
    ok = True
    tag = cfg.symbol

    bound = l2_opnorm_bound(sigma, points)
    batch = np.stack([random_band_limited(lat, n, k, rng).samples for _ in range(cfg.trials)])
    out = apply_batch(sigma, batch, k, lat)
    axes = tuple(range(1, d + 1))
    ratios = np.sqrt(np.mean(np.abs(out) ** 2, axis=axes) / np.mean(np.abs(batch) ** 2, axis=axes))
    l2_ok = bool(np.max(ratios) <= bound + L2_TOLERANCE)
    rows.append(["l2_random", d, n, k, 2.0, 2.0, tag, bound, float(np.max(ratios)),
                 float(np.max(ratios)) / bound if bound else 0.0, l2_ok, cfg.seed])
    top = argmax_point(sigma, points)
    e = single_mode(lat, n, top.index)
    witness = lp_norm_domain(apply(sigma, e, k), 2)
    w_ok = abs(witness - bound) <= L2_TOLERANCE
    rows.append(["l2_argmax_mode", d, n, k, 2.0, 2.0, tag, bound, witness,
                 witness / bound if bound else 0.0, w_ok, cfg.seed])
    ok &= l2_ok and w_ok

    idx = band_indices(d, k)
    eye = np.eye(len(idx), dtype=complex).reshape((len(idx),) + (2 * k + 1,) * d)
    modes = synthesize(eye, n, d)
    residual = float(np.max(np.abs(apply_batch(sigma, modes, k, lat)
                                   - mult.reshape((-1,) + (1,) * d) * modes)))
    e_ok = residual <= EIGEN_TOLERANCE * max(1.0, bound)
    rows.append(["eigenfunction", d, n, k, "", "", tag, EIGEN_TOLERANCE, residual, "", e_ok, cfg.seed])
    ok &= e_ok

    worst = 0.0
    for _ in range(cfg.trials):
        f = random_band_limited(lat, n, k, rng)
        g = random_band_limited(lat, n, k, rng)
        worst = max(worst, adjoint_symbol_check(sigma, f, g, k)
                    / (lp_norm_domain(f, 2) * lp_norm_domain(g, 2)))
    a_ok = worst <= ADJOINT_TOLERANCE
    rows.append(["adjoint", d, n, k, "", "", tag, ADJOINT_TOLERANCE, worst, "", a_ok, cfg.seed])
    ok &= a_ok

    summary = [f"l2: max ratio {float(np.max(ratios)):.6g} vs sup|sigma| {bound:.6g}",
               f"eigenfunction residual {residual:.3e}, adjoint defect {worst:.3e}"]
    c_by_band = {}
    for band in (k, 2 * k):
        band_points_ = points if band == k else band_points(lat, band)
        n_os = cfg.oversample * (2 * band + 1)
        c = 0.0
        for i, (p, q) in enumerate(exponent_pairs(cfg), start=1):
            growth = symbol_growth(sigma, band_points_, p, q)
            emp = empirical_opnorm(sigma, p, q, cfg.trials, n_os, band, cfg.seed + i, lat)
            c = max(c, emp / growth if growth else math.inf)
            if band != k:
                continue
            stable = growth_is_stable(sigma, lat, k, p, q)
            rows.append(["opnorm", d, n_os, k, p, q, tag, growth, emp,
                         emp / growth if growth else math.inf, "", cfg.seed])
            rows.append(["growth_stable", d, n_os, k, p, q, tag, growth, "", "", stable, cfg.seed])
            summary.append(f"(p,q)=({p:.4g},{q:.4g}): empirical {emp:.6g}, growth {growth:.6g}, "
                           f"stable={stable}")
        c_by_band[band] = c
    c_k, c_2k = c_by_band[k], c_by_band[2 * k]
    drift = abs(c_2k - c_k) / c_k if c_k else math.inf
    c_ok = drift < C_DRIFT_TOLERANCE
    rows.append(["suite_constant", d, cfg.oversample * (2 * k + 1), k, "", "", tag, c_k, c_2k,
                 drift, c_ok, cfg.seed])
    summary.append(f"suite constant c={c_k:.6g} at K={k}, {c_2k:.6g} at K={2 * k}, drift {drift:.3%}")
    ok &= c_ok

    path = write_csv(Path(cfg.out) / "multiplier.csv", MULTIPLIER_HEADER, rows)
    return SuiteResult("multiplier", bool(ok), [path], summary)


def run_report(cfg: ExperimentConfig) -> SuiteResult:
    path = Path(cfg.out) / "inequalities.csv"
    if not path.is_file():
        raise ConfigError("out", f"no inequalities.csv in {cfg.out}")
    svgs = ratio_plots_from_csv(path, cfg.out)
    return SuiteResult("report", True, svgs, [f"wrote {len(svgs)} SVG file(s)"])


SUITES = {
    "transform-selftest": run_transform_selftest,
    "tiling": run_tiling,
    "inequalities": run_inequalities,
    "multiplier": run_multiplier,
    "report": run_report,
}
