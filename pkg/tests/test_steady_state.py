import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cascade_eit import AtomRates, Config, DriveParams, absorption, rho21_eit, rho32_at, spectrum
from cascade_eit.errors import DomainError, GridError
from cascade_eit.steady_state import SpectrumSeries, default_grid


def hand_rho21(g12, g13, oc, dc, dp):
    # straight transcription of the closed form, kept separate from the library path
    num = complex(g13, -(dp + dc))
    den = oc * oc / 4 + complex(g12, -dp) * complex(g13, -(dp + dc))
    return -1j * num / den


def hand_rho32(g12, g13, oc, dc, dp):
    g23 = g12 + g13
    pref = (oc * oc / 4) / (g12 * g12 + dc * dc + oc * oc / 2)
    return 1j * pref * complex(g23, dp) / (complex(g13, dp + dc) * complex(g23, dp) + oc * oc / 4)


def test_rho21_examples(fig_rates):
    assert rho21_eit(fig_rates, DriveParams(Config.EIT, 0.0)) == pytest.approx(-2j, abs=1e-14)
    val = rho21_eit(fig_rates, DriveParams(Config.EIT, 1.5))
    assert val == pytest.approx(-1j * 0.105 / 0.615, abs=1e-14)
    assert abs(val.imag + 0.17073) < 1e-5
    for dp in (-1e6, 1e6):
        assert abs(rho21_eit(fig_rates, DriveParams(Config.EIT, 1.5, 0.0, dp))) < 1e-5


def test_rho32_examples(fig_rates):
    assert rho32_at(fig_rates, DriveParams(Config.AT, 0.0, 0.3, 0.2)) == 0
    val = rho32_at(fig_rates, DriveParams(Config.AT, 1.5))
    assert val.real == pytest.approx(0.0, abs=1e-15)
    assert val.imag == pytest.approx(0.3953516233377261, rel=1e-12)
    assert abs(val.imag - 0.3954) < 1e-4
    for dp in (-1e6, 1e6):
        assert abs(rho32_at(fig_rates, DriveParams(Config.AT, 1.5, 0.0, dp))) < 1e-5


def test_config_mismatch(fig_rates):
    with pytest.raises(DomainError):
        rho21_eit(fig_rates, DriveParams(Config.AT, 1.0))
    with pytest.raises(DomainError):
        rho32_at(fig_rates, DriveParams(Config.EIT, 1.0))


def test_absorption_signs(fig_rates):
    assert absorption(fig_rates, DriveParams(Config.EIT, 0.0)) == pytest.approx(-2.0)
    assert absorption(fig_rates, DriveParams(Config.EIT, 1.5)) == pytest.approx(-0.17073, abs=1e-5)
    assert absorption(fig_rates, DriveParams(Config.AT, 0.0)) == 0.0
    assert absorption(fig_rates, DriveParams(Config.AT, 1.5)) > 0


gam = st.floats(0.01, 3.0)
det = st.floats(-20, 20)


@settings(max_examples=200)
@given(gam, gam, st.floats(0, 5), det, det)
def test_matches_hand_evaluation(g12, g13, oc, dc, dp):
    rates = AtomRates.from_gammas(g12, g13)
    assert rho21_eit(rates, DriveParams(Config.EIT, oc, dc, dp)) == pytest.approx(
        hand_rho21(g12, g13, oc, dc, dp), rel=1e-12, abs=1e-300)
    assert rho32_at(rates, DriveParams(Config.AT, oc, dc, dp)) == pytest.approx(
        hand_rho32(g12, g13, oc, dc, dp), rel=1e-12, abs=1e-300)


@settings(max_examples=200)
@given(gam, gam, st.floats(0, 5), st.floats(0, 20))
def test_symmetric_in_probe_detuning(g12, g13, oc, dp):
    rates = AtomRates.from_gammas(g12, g13)
    for config in Config:
        a = absorption(rates, DriveParams(config, oc, 0.0, dp))
        b = absorption(rates, DriveParams(config, oc, 0.0, -dp))
        assert abs(abs(a) - abs(b)) <= 1e-12 * max(abs(a), 1e-300) + 1e-300


@given(st.floats(0.01, 5.0), st.floats(0.01, 3))
def test_exact_transparency_without_upper_decay(oc, g12):
    rates = AtomRates(2 * g12, 0.0, 0.0)
    assert absorption(rates, DriveParams(Config.EIT, oc, 0.0, 0.0)) == 0.0


@settings(max_examples=100)
@given(gam, gam, st.floats(0.01, 5))
def test_tails_vanish(g12, g13, oc):
    rates = AtomRates.from_gammas(g12, g13)
    far = 1e4 * max(g12, g13, rates.gamma23, oc)
    for config in Config:
        centre = max(abs(absorption(rates, DriveParams(config, oc, 0.0, x))) for x in np.linspace(-3, 3, 61))
        for dp in (-far, far):
            assert abs(absorption(rates, DriveParams(config, oc, 0.0, dp))) <= 1e-3 * centre


def test_spectrum_single_point(fig_rates):
    drive = DriveParams(Config.EIT, 1.5)
    s = spectrum(fig_rates, drive, [0.0])
    assert len(s) == 1 and s.values[0] == absorption(fig_rates, drive)


def test_spectrum_is_pointwise(fig_rates):
    grid = default_grid()
    assert grid.size == 1201 and grid[1] - grid[0] == pytest.approx(0.005)
    drive = DriveParams(Config.AT, 1.5, 0.3)
    s = spectrum(fig_rates, drive, grid)
    idx = [0, 17, 600, 1200]
    expected = [absorption(fig_rates, drive.at(grid[i])) for i in idx]
    assert [s.values[i] for i in idx] == pytest.approx(expected, rel=1e-14)


def test_spectrum_shapes_grid_scan(fig_rates):
    # grid-scan oracle: plain sign-change search on |value|
    grid = np.round(np.arange(-300, 301) * 0.01, 12)
    depth = {}
    for config in Config:
        v = np.abs(spectrum(fig_rates, DriveParams(config, 1.5), grid).values)
        maxima = [i for i in range(1, v.size - 1) if v[i - 1] < v[i] > v[i + 1]]
        assert len(maxima) == 2
        assert grid[maxima[0]] == -grid[maxima[1]]
        assert v[300] < v[299] and v[300] < v[301]
        depth[config] = 1 - v[300] / v[maxima[0]]
    assert depth[Config.AT] < depth[Config.EIT]


@pytest.mark.parametrize("grid", [[], [0.0, 0.0], [1.0, 0.0], [0.0, np.nan], [[0.0, 1.0]]])
def test_bad_grid(fig_rates, grid):
    with pytest.raises(GridError):
        spectrum(fig_rates, DriveParams(Config.EIT, 1.0), grid)


def test_series_validation():
    with pytest.raises(GridError):
        SpectrumSeries([0.0, 1.0], [1.0])
    with pytest.raises(DomainError):
        SpectrumSeries([0.0, 1.0], [1.0, np.inf])
    s = SpectrumSeries([0.0, 1.0, 2.0], [-4.0, 2.0, 1.0]).normalized()
    assert s.values.tolist() == [-1.0, 0.5, 0.25]


def test_spectrum_runtime(fig_rates):
    t0 = time.perf_counter()
    spectrum(fig_rates, DriveParams(Config.EIT, 1.5), default_grid())
    assert time.perf_counter() - t0 < 1.0
