"""Dressed-state scattering amplitudes in the weak-coupling limit.

To first order in ``Oc / (2 dc)`` the coupled pair of levels mixes into
dressed states |a> (energy 0) and |b> (energy -dc).  In the AT ladder |a> is
the quasi-stable ground-like state, so a probe photon can only scatter through
|3>: one pathway.  In the EIT ladder the photon reaches either |a> or |b>: two
pathways.
"""
from __future__ import annotations

from dataclasses import dataclass

from .atom_model import AtomRates, Config, DriveParams
from .errors import DegenerateRegime, DomainError, RegimeViolation
from .scattering_bare import ResonancePair, approx_resonances

#: |Oc / (2 dc)| above which first-order dressed states are rejected
MIXING_LIMIT = 0.32
_EPS = 1e-30


@dataclass(frozen=True)
class DressedBasis:
    mixing: float
    e_a: float
    e_b: float
    gamma_a: float
    gamma_b: float


def dressed_basis(rates: AtomRates, drive: DriveParams) -> DressedBasis:
    """First-order dressed states of the strongly coupled transition.

    Raises
    ------
    DegenerateRegime
        On coupling resonance, where the expansion parameter diverges.
    RegimeViolation
        When ``|Oc / (2 dc)|`` exceeds :data:`MIXING_LIMIT`.
    """
    if drive.delta_c == 0:
        raise DegenerateRegime("dressed expansion undefined at delta_c = 0")
    mixing = drive.omega_c / (2 * drive.delta_c)
    if abs(mixing) > MIXING_LIMIT:
        raise RegimeViolation(
            f"|omega_c / (2 delta_c)| = {abs(mixing):.3g} exceeds {MIXING_LIMIT}"
        )
    if drive.config is Config.AT:
        gamma_a, gamma_b = 0.0, rates.W21
    else:
        gamma_a, gamma_b = rates.W21, rates.W31 + rates.W32
    return DressedBasis(mixing, 0.0, -drive.delta_c, gamma_a, gamma_b)


def at_amplitude(rates: AtomRates, drive: DriveParams) -> complex:
    """Single-resonance AT amplitude ``(Oc/2dc)**2 / (dp + dc + i g13)``."""
    if drive.config is not Config.AT:
        raise DomainError("at_amplitude requires config=at")
    basis = dressed_basis(rates, drive)
    return basis.mixing ** 2 / complex(drive.delta_p + drive.delta_c, rates.gamma13)


def eit_dressed_amplitude(rates: AtomRates, drive: DriveParams) -> ResonancePair:
    """Two-resonance EIT amplitude through |a> and |b>."""
    if drive.config is not Config.EIT:
        raise DomainError("eit_dressed_amplitude requires config=eit")
    basis = dressed_basis(rates, drive)
    dp = drive.delta_p
    r1 = 1 / complex(dp, rates.gamma12)
    r2 = basis.mixing ** 2 / complex(dp + drive.delta_c, rates.gamma13)
    return ResonancePair.of(r1, r2)


def compare_pictures(rates: AtomRates, drive: DriveParams) -> float:
    """Relative gap between the weak-coupling bare and dressed EIT amplitudes."""
    bare = approx_resonances(rates, drive).total
    dressed = eit_dressed_amplitude(rates, drive).total
    return abs(bare - dressed) / max(abs(bare), _EPS)
