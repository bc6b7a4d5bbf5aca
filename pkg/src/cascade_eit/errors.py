"""Exception hierarchy.

Every error raised on bad physics input derives from :class:`DomainError`,
so callers (and the CLI) can catch a single type.
"""


class DomainError(ValueError):
    """Input outside the domain of a closed-form expression."""


class SingularDenominator(DomainError):
    """A resonance denominator vanished (zero widths at exact resonance)."""


class DegenerateRegime(DomainError):
    """The perturbative expansion has no finite small parameter."""


class RegimeViolation(DomainError):
    """Parameters leave the validity window of a low-saturation formula."""


class ExceptionalPoint(DomainError):
    """The two complex resonances coalesce; the pathway split is singular."""


class GridError(DomainError):
    """Malformed detuning or Rabi-frequency grid."""


class BracketError(DomainError):
    """No peak-count transition inside the bisection bracket."""


class LowSaturationWarning(UserWarning):
    """Emitted when a perturbative formula is used with a large saturation margin."""
