"""Peak finding, peak-separation sweeps and interference diagnostics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atom_model import AtomRates, Config, DriveParams
from .errors import BracketError, GridError
from .scattering_bare import exact_decomposition
from .steady_state import SpectrumSeries, check_grid, spectrum

#: step of the automatically sized probe grid
AUTO_STEP = 0.005


@dataclass(frozen=True)
class PeakReport:
    """Refined maxima of |value|, sorted by position."""

    peaks: list[tuple[float, float]]
    separation: float
    dip_depth: float

    @property
    def count(self) -> int:
        return len(self.peaks)

    @property
    def positions(self) -> list[float]:
        return [p for p, _ in self.peaks]


def _local_maxima(v: np.ndarray) -> np.ndarray:
    # rising edge followed (after any plateau) by a fall; plateaus report their left end
    d = np.diff(v)
    nonflat = np.flatnonzero(d != 0)
    rises = np.flatnonzero(d > 0) + 1
    k = np.searchsorted(nonflat, rises)
    has_next = k < nonflat.size
    rises, k = rises[has_next], k[has_next]
    return rises[d[nonflat[k]] < 0]


def _refine(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    x0, x1, x2 = x[i - 1], x[i], x[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    # parabola through the three samples, in coordinates centred on x1
    a0, a2 = x0 - x1, x2 - x1
    s0, s2 = (y0 - y1) / a0, (y2 - y1) / a2
    curv = (s2 - s0) / (a2 - a0)
    if curv >= 0:
        return float(x1), float(y1)
    slope = s0 - curv * a0
    dx = -slope / (2 * curv)
    dx = min(max(dx, a0), a2)
    return float(x1 + dx), float(y1 + slope * dx + curv * dx * dx)


def find_peaks(series: SpectrumSeries) -> PeakReport:
    """Locate interior maxima of ``|values|``.

    Each maximum is refined by a parabola through its neighbours; maxima
    closer than two grid steps are merged, keeping the taller one.
    """
    x = series.delta_p_grid
    if x.size < 3:
        raise GridError("peak finding needs at least 3 samples")
    y = np.abs(series.values)
    raw = [_refine(x, y, int(i)) for i in _local_maxima(y)]

    merge = 2 * float(np.median(np.diff(x)))
    peaks: list[tuple[float, float]] = []
    for pos, height in raw:
        if peaks and pos - peaks[-1][0] < merge:
            if height > peaks[-1][1]:
                peaks[-1] = (pos, height)
            continue
        peaks.append((pos, height))

    if len(peaks) < 2:
        return PeakReport(peaks, 0.0, 0.0)
    lo, hi = peaks[0][0], peaks[-1][0]
    centre = float(np.interp(0.5 * (lo + hi), x, y))
    mean_height = float(np.mean([h for _, h in peaks]))
    dip = 1.0 - centre / mean_height if mean_height > 0 else 0.0
    return PeakReport(peaks, hi - lo, min(max(dip, 0.0), 1.0))


def auto_grid(omega_c: float, rates: AtomRates, delta_c: float = 0.0,
              step: float = AUTO_STEP) -> np.ndarray:
    """Probe grid wide enough to hold both split lines at ``omega_c``."""
    half = max(3.0, 0.75 * omega_c + abs(delta_c) + 10 * rates.gamma23)
    n = int(np.ceil(2 * half / step)) + 1
    return np.linspace(-half, half, n)


def peak_report(config: Config, rates: AtomRates, omega_c: float,
                delta_c: float = 0.0, dp_grid=None) -> PeakReport:
    grid = auto_grid(omega_c, rates, delta_c) if dp_grid is None else dp_grid
    drive = DriveParams(config, omega_c, delta_c)
    return find_peaks(spectrum(rates, drive, grid))


@dataclass(frozen=True)
class SeparationCurve:
    config: Config
    omega_c: np.ndarray
    separation: np.ndarray


def separation_curve(config: Config, rates: AtomRates, delta_c: float,
                     omega_grid, dp_grid=None) -> SeparationCurve:
    """Peak separation of the absorption line as a function of ``omega_c``.

    ``dp_grid`` is a fixed probe grid, a callable ``omega_c -> grid``, or
    ``None`` for :func:`auto_grid`.
    """
    omega = check_grid(omega_grid)
    config = Config(config)
    seps = np.empty_like(omega)
    for k, oc in enumerate(omega):
        grid = dp_grid(oc) if callable(dp_grid) else dp_grid
        seps[k] = peak_report(config, rates, float(oc), delta_c, grid).separation
    return SeparationCurve(config, omega, seps)


def default_omega_grid() -> np.ndarray:
    """Geometric 0.05..10 (60 points) followed by linear 10..50 (9 points)."""
    return np.concatenate([np.geomspace(0.05, 10, 60), np.linspace(10, 50, 9)[1:]])


@dataclass(frozen=True)
class InterferenceReport:
    r1_sq: float
    r2_sq: float
    cross: float
    total_sq: float

    def as_dict(self) -> dict:
        return {"r1_sq": self.r1_sq, "r2_sq": self.r2_sq,
                "cross": self.cross, "total_sq": self.total_sq}


def interference_report(rates: AtomRates, drive: DriveParams, delta_p: float | None = None) -> InterferenceReport:
    """Split |T|**2 into the two pathway intensities and their cross term."""
    if delta_p is not None:
        drive = drive.at(delta_p)
    pair = exact_decomposition(rates, drive)
    return InterferenceReport(
        r1_sq=abs(pair.r1) ** 2,
        r2_sq=abs(pair.r2) ** 2,
        cross=pair.cross,
        total_sq=abs(pair.total) ** 2,
    )


def regime_threshold(config: Config, rates: AtomRates, delta_c: float = 0.0,
                     lo: float = 1e-3, hi: float = 10.0, tol: float = 1e-3,
                     dp_grid=None) -> float:
    """Smallest ``omega_c`` in ``[lo, hi]`` at which the line shows two peaks.

    Bisection on the peak count; assumes a single transition in the bracket.
    """
    config = Config(config)

    def split(oc):
        return peak_report(config, rates, oc, delta_c, dp_grid).count >= 2

    if split(lo) or not split(hi):
        raise BracketError(f"no one-to-two peak transition for omega_c in [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if split(mid):
            hi = mid
        else:
            lo = mid
    return hi
