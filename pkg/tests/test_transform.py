import numpy as np
import pytest

from latfourier.errors import BandExceedsGrid
from latfourier.lattice import identity_lattice, new_lattice
from latfourier.transform import (
    GridFunction,
    Spectrum,
    forward,
    inverse,
    plancherel_defect,
    random_band_limited,
    random_spectrum,
    single_mode,
    slow_forward_oracle,
    spectrum_from_csv,
    spectrum_to_csv,
)


def test_constant_function_z1():
    f = GridFunction(identity_lattice(1), np.ones(8))
    s = forward(f, 3)
    assert s[(0,)] == pytest.approx(1.0, abs=1e-15)
    for k in (-3, -2, -1, 1, 2, 3):
        assert abs(s[(k,)]) < 1e-15


def test_single_mode_diag_lattice():
    # f(x) = exp(2 pi i x_1 / 2) on diag(2,1) is the character at kappa = (1/2, 0), index (1, 0)
    lat = new_lattice(np.diag([2.0, 1.0]))
    f = GridFunction.from_callable(lat, 8, lambda x: np.exp(2j * np.pi * x[:, 0] / 2))
    s = forward(f, 3)
    expected = np.zeros_like(s.coefficients)
    expected[3 + 1, 3] = 1.0
    np.testing.assert_allclose(s.coefficients, expected, atol=1e-14)


def test_forward_matches_oracle(lattice2d, rng):
    for _ in range(3):
        f = GridFunction(lattice2d, rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12)))
        np.testing.assert_allclose(forward(f, 4).coefficients,
                                   slow_forward_oracle(f, 4).coefficients, atol=1e-11, rtol=0)


def test_round_trip(lattice2d, rng):
    s = random_spectrum(lattice2d, 5, rng)
    back = forward(inverse(s, 16), 5)
    np.testing.assert_allclose(back.coefficients, s.coefficients, atol=1e-12)


def test_single_mode_sharp(lattice2d):
    f = single_mode(lattice2d, 11, (2, -3))
    s = forward(f, 5)
    assert abs(s[(2, -3)] - 1) < 1e-12
    assert np.sum(np.abs(s.values())) == pytest.approx(1.0, abs=1e-11)


def test_plancherel(lattice2d, rng):
    f = random_band_limited(lattice2d, 16, 6, rng)
    s = forward(f, 6)
    assert plancherel_defect(f, s) < 1e-10 * np.mean(np.abs(f.samples) ** 2)


def test_translation_multiplies_by_character(rng):
    lat = new_lattice([[1.0, 0.3], [0.0, 1.2]])
    n, k = 16, 5
    s = random_spectrum(lat, k, rng)
    shift = (3, 5)
    f = inverse(s, n)
    g = f.with_samples(np.roll(f.samples, (-shift[0], -shift[1]), axis=(0, 1)))
    # f(x + A m/N) has coefficients s(kappa) exp(2 pi i k.m/N)
    idx = s.indices()
    phase = np.exp(2j * np.pi * (idx @ np.array(shift)) / n)
    np.testing.assert_allclose(forward(g, k).values(), s.values() * phase, atol=1e-12)


def test_band_exceeds_grid():
    f = GridFunction(identity_lattice(1), np.ones(8))
    with pytest.raises(BandExceedsGrid):
        forward(f, 4)
    with pytest.raises(BandExceedsGrid):
        inverse(random_spectrum(identity_lattice(1), 4, np.random.default_rng(0)), 8)


def test_grid_function_validation():
    with pytest.raises(ValueError):
        GridFunction(identity_lattice(2), np.ones((4, 5)))
    with pytest.raises(ValueError):
        GridFunction(identity_lattice(1), np.array([1.0, np.inf]))
    f = GridFunction(identity_lattice(1), np.ones(4))
    with pytest.raises(ValueError):
        f.samples[0] = 2


def test_spectrum_mapping_and_lookup():
    lat = identity_lattice(2)
    s = Spectrum.from_mapping(lat, 2, {(1, -1): 2 + 1j})
    assert s[(1, -1)] == 2 + 1j
    assert s[(0, 0)] == 0
    with pytest.raises(KeyError):
        s[(3, 0)]
    with pytest.raises(KeyError):
        Spectrum.from_mapping(lat, 1, {(2, 0): 1.0})


def test_spectrum_csv_roundtrip(rng):
    lat = new_lattice([[1.0, 0.5], [0.0, 2.0]])
    s = random_spectrum(lat, 2, rng)
    text = spectrum_to_csv(s)
    lines = text.splitlines()
    assert lines[0] == "# schema=1"
    assert lines[1] == "k_1,k_2,kappa_1,kappa_2,re,im"
    assert lines[2].startswith("-2,-2,")
    back = spectrum_from_csv(text, lat)
    np.testing.assert_array_equal(back.coefficients, s.coefficients)
