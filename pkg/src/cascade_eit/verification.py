"""Randomized invariant checks behind ``cascade-eit verify``."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .atom_model import AtomRates, Config, DriveParams
from .errors import LowSaturationWarning
from .scattering_bare import eigenvalues, exact_decomposition, inverse_resolvent
from .scattering_dressed import compare_pictures
from .spectral_analysis import interference_report

FIGURE_GAMMAS = (0.5, 0.105, 0.605)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str = ""


def random_draws(seed: int, n: int) -> list[tuple[AtomRates, DriveParams]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        rates = AtomRates(W21=rng.uniform(0.05, 2.0), W31=rng.uniform(0.0, 0.5), W32=rng.uniform(0.0, 0.5))
        drive = DriveParams(Config.EIT, omega_c=rng.uniform(0.0, 3.0),
                            delta_c=rng.uniform(-5, 5), delta_p=rng.uniform(-5, 5))
        out.append((rates, drive))
    return out


def check_rate_identity(gammas) -> CheckResult:
    g12, g13, g23 = gammas
    err = abs(g23 - g12 - g13)
    tol = 1e-9
    return CheckResult("rate-identity", err <= tol, err, tol, f"gamma=({g12}, {g13}, {g23})")


def check_trace(draws) -> CheckResult:
    worst = 0.0
    for rates, drive in draws:
        pair = eigenvalues(rates, drive)
        resid = abs(pair.z2 + pair.z3 + drive.delta_c + 1j * rates.gamma23)
        worst = max(worst, resid / max(abs(drive.delta_c), rates.gamma23, 1.0))
    return CheckResult("trace-conservation", worst <= 1e-12, worst, 1e-12)


def check_partial_fraction(draws) -> CheckResult:
    worst = 0.0
    for rates, drive in draws:
        direct = np.linalg.inv(inverse_resolvent(rates, drive))[0, 0]
        total = exact_decomposition(rates, drive).total
        worst = max(worst, abs(total - direct) / abs(direct))
    return CheckResult("partial-fraction", worst <= 1e-12, worst, 1e-12)


def check_interference_identity(draws) -> CheckResult:
    worst = 0.0
    for rates, drive in draws:
        rep = interference_report(rates, drive)
        scale = max(rep.total_sq, rep.r1_sq, rep.r2_sq)
        worst = max(worst, abs(rep.total_sq - rep.r1_sq - rep.r2_sq - rep.cross) / scale)
    return CheckResult("interference-identity", worst <= 1e-12, worst, 1e-12)


def check_limits(draws) -> CheckResult:
    worst = 0.0
    for rates, drive in draws:
        pair = eigenvalues(rates, DriveParams(Config.EIT, 1e-8, drive.delta_c))
        worst = max(worst,
                    abs(pair.z2 + 1j * rates.gamma12),
                    abs(pair.z3 + drive.delta_c + 1j * rates.gamma13))
    return CheckResult("weak-coupling-limits", worst <= 1e-6, worst, 1e-6)


def check_picture_convergence() -> CheckResult:
    rates = AtomRates.from_gammas(*FIGURE_GAMMAS)
    ladder = [0.8, 0.4, 0.2, 0.1]
    gaps = [compare_pictures(rates, DriveParams(Config.EIT, oc, 10.0, -10.0)) for oc in ladder]
    far = compare_pictures(rates, DriveParams(Config.EIT, 1.0, 100.0, -100.0))
    monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    detail = "ladder " + ", ".join(f"{g:.3e}" for g in gaps) + f"; dc=100: {far:.3e}"
    return CheckResult("picture-convergence", monotone and far < 0.02, far, 0.02, detail)


def run_all(seed: int = 42, n: int = 1000, gammas=None) -> list[CheckResult]:
    draws = random_draws(seed, n)
    checks: list[Callable[[], CheckResult]] = [
        lambda: check_rate_identity(gammas if gammas is not None else FIGURE_GAMMAS),
        lambda: check_trace(draws),
        lambda: check_partial_fraction(draws),
        lambda: check_interference_identity(draws),
        lambda: check_limits(draws),
        check_picture_convergence,
    ]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LowSaturationWarning)
        return [c() for c in checks]


def format_report(results: list[CheckResult], seed: int, n: int) -> str:
    lines = [f"seed={seed} draws={n}", f"{'check':<24}{'status':<8}{'worst':>12}{'tol':>10}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<24}{status:<8}{r.worst:>12.3e}{r.tol:>10.0e}  {r.detail}".rstrip())
    return "\n".join(lines) + "\n"
