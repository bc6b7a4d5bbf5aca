"""Bare-state scattering amplitude for the EIT ladder.

The probe photon is absorbed from the ground state and re-emitted into a
vacuum mode.  The intermediate states form the quasi-degenerate pair

    |phi2> = |2; 0_p, N_c, 0>      (energy 0, width gamma12)
    |phi3> = |3; 0_p, N_c - 1, 0>  (energy -delta_c, width gamma13)

coupled by ``omega_c / 2``; the initial energy is ``delta_p``.  With the
photon-number prefactor set to 1, the transition amplitude is the matrix
element <phi2|G(delta_p + i0)|phi2> of the resolvent projected on that pair.
Writing the resolvent through its two complex poles ``z2``, ``z3`` splits the
amplitude into two resonances (scattering pathways).

The AT ladder has no quasi-stable bare initial state and is rejected here.
"""
from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

import numpy as np

from .atom_model import AtomRates, Config, DriveParams, LOW_SATURATION_LIMIT, low_saturation_margin
from .errors import DegenerateRegime, DomainError, ExceptionalPoint, LowSaturationWarning, SingularDenominator

EP_RTOL = 1e-12


@dataclass(frozen=True)
class ResolventSubspace:
    """Projected resolvent on (|phi2>, |phi3>), in that row/column order."""

    m: np.ndarray

    @property
    def phi2_element(self) -> complex:
        """<phi2|G|phi2>, the element that enters the transition amplitude."""
        return complex(self.m[0, 0])


@dataclass(frozen=True)
class EigenPair:
    """Complex poles of the projected resolvent.

    ``z2`` continues to ``-i gamma12`` and ``z3`` to ``-delta_c - i gamma13``
    as the coupling is switched off.  ``z2 = -i gamma12 - delta_c_prime +
    i gamma_c_prime`` defines the exact light shift and radiative correction.
    """

    z2: complex
    z3: complex
    delta_c_prime: float
    gamma_c_prime: float


@dataclass(frozen=True)
class ResonancePair:
    """Two pathway amplitudes and their coherent sum."""

    r1: complex
    r2: complex
    total: complex

    @classmethod
    def of(cls, r1, r2) -> ResonancePair:
        r1, r2 = complex(r1), complex(r2)
        return cls(r1, r2, r1 + r2)

    pathway_count = 2

    @property
    def cross(self) -> float:
        """Interference term ``2 Re(r1 conj(r2))``."""
        return 2.0 * (self.r1 * self.r2.conjugate()).real


def _require_eit(drive: DriveParams):
    if drive.config is not Config.EIT:
        raise DomainError("bare-picture scattering undefined for Cascade-AT")


def inverse_resolvent(rates: AtomRates, drive: DriveParams) -> np.ndarray:
    """``z - H_eff`` on (|phi2>, |phi3>) at ``z = delta_p``."""
    _require_eit(drive)
    dp, dc, half = drive.delta_p, drive.delta_c, drive.omega_c / 2
    return np.array([
        [dp + 1j * rates.gamma12, -half],
        [-half, dp + dc + 1j * rates.gamma13],
    ])


def determinant_d(rates: AtomRates, drive: DriveParams) -> complex:
    """Determinant of the inverse projected resolvent."""
    _require_eit(drive)
    dp, dc = drive.delta_p, drive.delta_c
    return (dp + dc + 1j * rates.gamma13) * (dp + 1j * rates.gamma12) - drive.omega_c ** 2 / 4


def pgp_matrix(rates: AtomRates, drive: DriveParams) -> ResolventSubspace:
    """Closed-form projected resolvent (adjugate over determinant)."""
    d = determinant_d(rates, drive)
    if abs(d) < 1e-300:
        raise SingularDenominator("projected resolvent determinant vanished")
    dp, dc, half = drive.delta_p, drive.delta_c, drive.omega_c / 2
    m = np.array([
        [dp + dc + 1j * rates.gamma13, half],
        [half, dp + 1j * rates.gamma12],
    ]) / d
    return ResolventSubspace(m)


def _split_root(w: complex, omega_c: float) -> complex:
    # sqrt(w**2 + Oc**2), on the branch that tends to +w as Oc -> 0
    if omega_c == 0:
        return w
    if w == 0:
        return complex(omega_c)
    ratio = omega_c / w
    sq = ratio * ratio
    if not cmath.isfinite(sq):
        return complex(omega_c) if (ratio.real >= 0) else complex(-omega_c)
    return w * cmath.sqrt(1 + sq)


def eigenvalues(rates: AtomRates, drive: DriveParams) -> EigenPair:
    """Poles ``z2``, ``z3`` of the projected resolvent, labelled by continuity."""
    _require_eit(drive)
    dc = drive.delta_c
    g12, g13 = rates.gamma12, rates.gamma13
    centre = -(dc + 1j * rates.gamma23)
    s = _split_root(dc + 1j * (g13 - g12), drive.omega_c)
    z2 = (centre + s) / 2
    z3 = (centre - s) / 2
    return EigenPair(z2, z3, delta_c_prime=-z2.real, gamma_c_prime=z2.imag + g12)


def _check_split(pair: EigenPair):
    z2, z3 = pair.z2, pair.z3
    if abs(z2 - z3) < EP_RTOL * (abs(z2) + abs(z3) + 1):
        raise ExceptionalPoint(f"resonances coalesce at z = {z2:.6g}; no pathway split")


def _perturbative_shifts(rates: AtomRates, drive: DriveParams) -> tuple[float, float]:
    q = drive.omega_c ** 2 / 4
    if q == 0:
        return 0.0, 0.0
    dg = rates.gamma13 - rates.gamma12
    denom = drive.delta_c ** 2 + dg ** 2
    if denom == 0:
        raise DegenerateRegime("delta_c = 0 and gamma12 = gamma13: perturbative shifts undefined")
    return -drive.delta_c * q / denom, -dg * q / denom


def _warn_saturation(rates, drive):
    if drive.omega_c == 0:
        return
    s = low_saturation_margin(drive, rates)
    if s > LOW_SATURATION_LIMIT:
        warnings.warn(
            f"saturation margin {s:.3g} exceeds {LOW_SATURATION_LIMIT}; "
            "second-order terms are not negligible",
            LowSaturationWarning, stacklevel=3,
        )


def light_shift_corrections(rates: AtomRates, drive: DriveParams) -> tuple[float, float]:
    """Weak-coupling light shift ``delta_c'`` and radiative correction ``gamma_c'``."""
    _require_eit(drive)
    shifts = _perturbative_shifts(rates, drive)
    _warn_saturation(rates, drive)
    return shifts


def exact_decomposition(rates: AtomRates, drive: DriveParams) -> ResonancePair:
    """Split <phi2|G|phi2> exactly into its two pole contributions.

    ``r1`` is the pole at ``z2`` (probe absorption straight to |2>), ``r2`` the
    pole at ``z3`` (the Raman pathway through |3>).
    """
    pair = eigenvalues(rates, drive)
    _check_split(pair)
    z2, z3 = pair.z2, pair.z3
    dp = drive.delta_p
    raman = drive.delta_c + 1j * rates.gamma13
    gap = z2 - z3
    if dp == z2 or dp == z3:
        raise SingularDenominator("probe detuning sits on a real pole")
    r1 = (z2 + raman) / (gap * (dp - z2))
    r2 = -(z3 + raman) / (gap * (dp - z3))
    return ResonancePair.of(r1, r2)


def approx_resonances(rates: AtomRates, drive: DriveParams,
                      raman_substituted: bool = False) -> ResonancePair:
    """Weak-coupling form of the two resonances.

    ``r1 = 1/(dp + i g12)`` and
    ``r2 = [(Oc/2) / (dc + i(g13 - g12))]**2 / (dp + dc - dc' + i(g13 + gc'))``.

    With ``raman_substituted`` the mixing factor is evaluated on the Raman
    condition ``dc ~ -dp``, giving ``(Oc/2)**2 / (dp + i(g12 - g13))**2``;
    that form only holds near the second resonance.
    """
    _require_eit(drive)
    dshift, gshift = _perturbative_shifts(rates, drive)
    _warn_saturation(rates, drive)
    dp, dc = drive.delta_p, drive.delta_c
    g12, g13 = rates.gamma12, rates.gamma13
    q = drive.omega_c ** 2 / 4
    if dp == 0 and g12 == 0:
        _singular()
    r1 = 1 / complex(dp, g12)
    if q == 0:
        return ResonancePair.of(r1, 0j)
    if raman_substituted:
        mix_den = complex(dp, g12 - g13) ** 2
    else:
        mix_den = complex(dc, g13 - g12) ** 2
    pole = complex(dp + dc - dshift, g13 + gshift)
    if mix_den == 0 or pole == 0:
        _singular()
    r2 = q / mix_den / pole
    return ResonancePair.of(r1, r2)


def _singular():
    raise SingularDenominator("resonance denominator vanished")
