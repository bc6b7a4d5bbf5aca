"""Probe absorption and scattering-pathway analysis for three-level ladder atoms.

Two configurations are covered: EIT (weak probe on the lower transition,
coupling on the upper) and AT (the roles swapped).  Rates and detunings are
in one arbitrary frequency unit with hbar = 1.
"""
from .atom_model import (FIGURE_OMEGA_C, FIGURE_RATES, AtomRates, Config, DriveParams,
                         low_saturation_margin, polarization_rates)
from .errors import (BracketError, DegenerateRegime, DomainError, ExceptionalPoint, GridError,
                     LowSaturationWarning, RegimeViolation, SingularDenominator)
from .scattering_bare import (EigenPair, ResolventSubspace, ResonancePair, approx_resonances,
                              determinant_d, eigenvalues, exact_decomposition, light_shift_corrections,
                              pgp_matrix)
from .scattering_dressed import at_amplitude, compare_pictures, dressed_basis, eit_dressed_amplitude
from .spectral_analysis import (PeakReport, find_peaks, interference_report, regime_threshold,
                                separation_curve)
from .steady_state import SpectrumSeries, absorption, rho21_eit, rho32_at, spectrum

__version__ = "0.1.0"
