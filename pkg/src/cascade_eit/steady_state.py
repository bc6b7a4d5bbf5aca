"""Closed-form steady-state probe coherences and absorption spectra.

The proportionality constants of both coherences are set to 1, so only the
line shapes, peak positions and relative depths carry meaning.  The returned
absorption is the raw imaginary part: negative for EIT (``-i`` prefactor),
positive for AT (``+i`` prefactor).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .atom_model import AtomRates, Config, DriveParams
from .errors import DomainError, GridError, SingularDenominator

_TINY = 1e-300


@dataclass(frozen=True)
class SpectrumSeries:
    """A real observable sampled on a strictly increasing probe-detuning grid."""

    delta_p_grid: np.ndarray
    values: np.ndarray
    label: str = "absorption"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        grid = np.asarray(self.delta_p_grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        check_grid(grid)
        if values.shape != grid.shape:
            raise GridError(f"grid has {grid.size} points but values has {values.size}")
        if not np.all(np.isfinite(values)):
            raise DomainError("spectrum contains non-finite values")
        object.__setattr__(self, "delta_p_grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    def normalized(self) -> SpectrumSeries:
        """Divide by the largest magnitude (no-op on an all-zero series)."""
        peak = np.max(np.abs(self.values))
        values = self.values / peak if peak > 0 else self.values.copy()
        return SpectrumSeries(self.delta_p_grid, values, self.label, dict(self.meta))


def check_grid(grid, min_points: int = 1) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < min_points:
        raise GridError(f"grid must be 1-D with at least {min_points} point(s)")
    if not np.all(np.isfinite(grid)):
        raise GridError("grid contains non-finite values")
    if np.any(np.diff(grid) <= 0):
        raise GridError("grid must be strictly increasing")
    return grid


def _checked(num, den):
    if np.any(np.abs(den) < _TINY):
        raise SingularDenominator("resonance denominator vanished")
    return num / den


def _require(drive: DriveParams, config: Config):
    if drive.config is not config:
        raise DomainError(f"operation requires config={config.value}, got {drive.config.value}")


def rho21_values(rates: AtomRates, omega_c: float, delta_c: float, delta_p):
    """Vectorized EIT probe coherence; ``delta_p`` may be an array."""
    dp = np.asarray(delta_p, dtype=float)
    g12, g13 = rates.gamma12, rates.gamma13
    raman = g13 - 1j * (dp + delta_c)
    den = omega_c ** 2 / 4 + (g12 - 1j * dp) * raman
    return -1j * _checked(raman, den)


def rho32_values(rates: AtomRates, omega_c: float, delta_c: float, delta_p):
    """Vectorized AT probe coherence; ``delta_p`` may be an array."""
    dp = np.asarray(delta_p, dtype=float)
    g12, g13, g23 = rates.gamma12, rates.gamma13, rates.gamma23
    q = omega_c ** 2 / 4
    pref_den = g12 ** 2 + delta_c ** 2 + 2 * q
    # Oc = 0 with g12 = dc = 0 is 0/0 in the population prefactor; it is 0 by continuity.
    pref = 0.0 if q == 0 else _checked(q, pref_den)
    num = g23 + 1j * dp
    den = (g13 + 1j * (dp + delta_c)) * num + q
    return 1j * pref * _checked(num, den)


def rho21_eit(rates: AtomRates, drive: DriveParams) -> complex:
    """Steady-state probe coherence rho21 for the EIT configuration."""
    _require(drive, Config.EIT)
    return complex(rho21_values(rates, drive.omega_c, drive.delta_c, drive.delta_p))


def rho32_at(rates: AtomRates, drive: DriveParams) -> complex:
    """Steady-state probe coherence rho32 for the AT configuration."""
    _require(drive, Config.AT)
    return complex(rho32_values(rates, drive.omega_c, drive.delta_c, drive.delta_p))


def _absorption_values(rates, drive, delta_p):
    if drive.config is Config.EIT:
        return rho21_values(rates, drive.omega_c, drive.delta_c, delta_p).imag
    return rho32_values(rates, drive.omega_c, drive.delta_c, delta_p).imag


def absorption(rates: AtomRates, drive: DriveParams) -> float:
    """Imaginary part of the probe coherence (raw sign)."""
    return float(_absorption_values(rates, drive, drive.delta_p))


def spectrum(rates: AtomRates, drive: DriveParams, grid) -> SpectrumSeries:
    """Absorption sampled over ``grid``; ``drive.delta_p`` is ignored."""
    grid = check_grid(grid)
    values = _absorption_values(rates, drive, grid)
    meta = {
        "config": drive.config.value,
        "omega_c": drive.omega_c,
        "delta_c": drive.delta_c,
        "gamma12": rates.gamma12,
        "gamma13": rates.gamma13,
        "gamma23": rates.gamma23,
    }
    label = "im_rho21" if drive.config is Config.EIT else "im_rho32"
    return SpectrumSeries(grid, values, label, meta)


def default_grid(start: float = -3.0, stop: float = 3.0, points: int = 1201) -> np.ndarray:
    return np.linspace(start, stop, points)
