"""Physical parameters of a three-level cascade (ladder) atom.

Levels are |1> (ground), |2>, |3>.  All rates and frequencies share one
arbitrary unit and hbar = 1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import DegenerateRegime, DomainError

#: saturation margin above which perturbative formulas are flagged
LOW_SATURATION_LIMIT = 0.1


class Config(str, enum.Enum):
    """Which transition carries the weak probe.

    ``EIT``: probe on |1>-|2>, coupling on |2>-|3>.
    ``AT``: coupling on |1>-|2>, probe on |2>-|3>.
    """

    EIT = "eit"
    AT = "at"


def polarization_rates(W21: float, W31: float, W32: float) -> tuple[float, float, float]:
    """Coherence decay rates from spontaneous emission rates.

    Each coherence decays at half the summed population decay rates of its
    two levels; the ground state does not decay.

    Returns
    -------
    (gamma12, gamma13, gamma23)
    """
    for name, w in (("W21", W21), ("W31", W31), ("W32", W32)):
        if not w >= 0:
            raise DomainError(f"{name} must be a non-negative rate, got {w!r}")
    gamma12 = W21 / 2
    gamma13 = (W31 + W32) / 2
    return gamma12, gamma13, gamma12 + gamma13


@dataclass(frozen=True)
class AtomRates:
    """Spontaneous decay rates and the derived coherence decay rates.

    Only ``W31 + W32`` enters any formula, so the split between the two is a
    free choice.
    """

    W21: float
    W31: float
    W32: float

    def __post_init__(self):
        # validates as a side effect
        polarization_rates(self.W21, self.W31, self.W32)

    @classmethod
    def from_gammas(cls, gamma12: float, gamma13: float, gamma23: float | None = None,
                    tol: float = 1e-9) -> AtomRates:
        """Build from coherence decay rates; ``gamma23`` is checked if given."""
        if gamma23 is not None and abs(gamma23 - gamma12 - gamma13) > tol:
            raise DomainError(
                f"gamma23 = gamma12 + gamma13 violated: {gamma23!r} != {gamma12!r} + {gamma13!r}"
            )
        return cls(W21=2 * gamma12, W31=2 * gamma13, W32=0.0)

    @property
    def gamma12(self) -> float:
        return self.W21 / 2

    @property
    def gamma13(self) -> float:
        return (self.W31 + self.W32) / 2

    @property
    def gamma23(self) -> float:
        return self.gamma12 + self.gamma13

    def scaled(self, factor: float) -> AtomRates:
        return AtomRates(self.W21 * factor, self.W31 * factor, self.W32 * factor)


@dataclass(frozen=True)
class DriveParams:
    """Coupling-field strength and the two detunings.

    For EIT, ``delta_c = wc - w23`` and ``delta_p = wp - w12``; for AT the
    roles of the transitions swap.  Only ``omega_c**2`` enters any formula.
    """

    config: Config
    omega_c: float
    delta_c: float = 0.0
    delta_p: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "config", Config(self.config))
        if not self.omega_c >= 0:
            raise DomainError(f"omega_c must be >= 0, got {self.omega_c!r}")
        for name in ("delta_c", "delta_p"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    def at(self, delta_p: float) -> DriveParams:
        """Same drive, different probe detuning."""
        return replace(self, delta_p=delta_p)

    def scaled(self, factor: float) -> DriveParams:
        return replace(self, omega_c=self.omega_c * factor,
                       delta_c=self.delta_c * factor, delta_p=self.delta_p * factor)


# Parameters of the reference absorption figures: gamma = (0.5, 0.105, 0.605).
FIGURE_RATES = AtomRates(W21=1.0, W31=0.06, W32=0.15)
FIGURE_OMEGA_C = 1.5


def low_saturation_margin(params: DriveParams, rates: AtomRates) -> float:
    """Saturation parameter ``Oc**2 / max(dc**2, (g12 - g13)**2)``.

    Values at or below :data:`LOW_SATURATION_LIMIT` count as weak coupling.
    """
    denom = max(params.delta_c ** 2, (rates.gamma12 - rates.gamma13) ** 2)
    if params.omega_c == 0:
        return 0.0
    if denom == 0:
        raise DegenerateRegime("delta_c = 0 and gamma12 = gamma13: no low-saturation scale")
    return params.omega_c ** 2 / denom
