"""Command-line interface.

Subcommands: ``spectrum``, ``separation``, ``decompose``, ``compare-pictures``
and ``verify``.  Every option may also come from ``--config-file`` (JSON object
or ``key=value`` lines, keys spelled like the long options); command-line
flags win over the file.

Exit codes: 0 success, 1 failed verification, 2 configuration error,
3 I/O error, 4 domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .atom_model import FIGURE_OMEGA_C, FIGURE_RATES, AtomRates, Config, DriveParams
from .errors import DomainError
from .scattering_bare import approx_resonances, exact_decomposition
from .scattering_dressed import at_amplitude, compare_pictures, eit_dressed_amplitude
from .serialization import columns_json, format_csv, format_json
from .spectral_analysis import default_omega_grid, separation_curve
from .steady_state import spectrum
from .verification import format_report, run_all

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_IO, EXIT_DOMAIN = 0, 1, 2, 3, 4

DEFAULTS = {
    "config": "eit",
    "omega_c": FIGURE_OMEGA_C,
    "delta_c": 0.0,
    "delta_p": 0.0,
    "dp_start": -3.0,
    "dp_stop": 3.0,
    "dp_points": 1201,
    "omega_spacing": "geom",
    "format": "csv",
    "picture": "bare",
    "seed": 42,
    "draws": 1000,
}
_RATE_W = ("w21", "w31", "w32")
_RATE_G = ("gamma12", "gamma13", "gamma23")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    config: Config
    rates: AtomRates | None
    gammas: tuple | None
    omega_c: float
    delta_c: float
    delta_p: float
    dp_grid: np.ndarray | None
    omega_grid: np.ndarray | None
    output: str | None
    format: str
    normalize: bool
    raw_sign: bool
    raman_substituted: bool
    approx: bool
    picture: str
    figure: int | None
    seed: int
    draws: int


def _parse_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"not a boolean: {v!r}")


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON in {path}: {exc}") from exc
    else:
        raw = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{n}: expected key=value")
            raw[key.strip()] = value.strip()
    return {k.replace("-", "_"): v for k, v in raw.items()}


def _common_options(p: argparse.ArgumentParser):
    p.add_argument("--config-file", help="JSON or key=value file with option defaults")
    p.add_argument("--config", choices=[c.value for c in Config], help="ladder configuration (default eit)")
    rates = p.add_argument_group("decay rates (give W21/W31/W32 or gamma12/gamma13[/gamma23])")
    for name in _RATE_W + _RATE_G:
        rates.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)
    p.add_argument("--omega-c", type=float, help="coupling Rabi frequency")
    p.add_argument("--delta-c", type=float, help="coupling detuning")
    p.add_argument("--dp-start", type=float)
    p.add_argument("--dp-stop", type=float)
    p.add_argument("--dp-points", type=int)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--format", choices=["csv", "json"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cascade-eit", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="probe absorption vs probe detuning")
    _common_options(sp)
    sp.add_argument("--figure", type=int, choices=[2], help="reference preset: EIT and AT curves")
    sp.add_argument("--normalize", action="store_const", const=True, help="divide each curve by its max |value|")
    sp.add_argument("--raw-sign", action="store_const", const=True, help="emit raw Im(rho) instead of |Im(rho)|")

    sp = sub.add_parser("separation", help="peak separation vs coupling Rabi frequency")
    _common_options(sp)
    sp.add_argument("--figure", type=int, choices=[3], help="reference preset sweep")
    sp.add_argument("--omega-values", help="comma-separated omega_c values")
    sp.add_argument("--omega-start", type=float)
    sp.add_argument("--omega-stop", type=float)
    sp.add_argument("--omega-points", type=int)
    sp.add_argument("--omega-spacing", choices=["geom", "linear"])

    for name, help_ in (("decompose", "pathway amplitudes at one probe detuning"),
                        ("compare-pictures", "bare vs dressed weak-coupling amplitudes")):
        sp = sub.add_parser(name, help=help_)
        _common_options(sp)
        sp.add_argument("--delta-p", type=float, help="probe detuning")
        sp.add_argument("--raman-substituted", action="store_const", const=True,
                        help="bare weak-coupling form evaluated on the Raman condition")
        if name == "decompose":
            sp.add_argument("--picture", choices=["bare", "dressed"])
            sp.add_argument("--approx", action="store_const", const=True,
                            help="bare picture: weak-coupling resonances instead of the exact split")

    sp = sub.add_parser("verify", help="run randomized invariant checks")
    _common_options(sp)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--draws", type=int)
    return parser


def _resolve_rates(opts: dict, validate: bool = True):
    given_w = [opts.get(k) is not None for k in _RATE_W]
    given_g = [opts.get(k) is not None for k in _RATE_G]
    if any(given_w) and any(given_g):
        raise ConfigError("give either the W triple or the gamma triple, not both")
    try:
        if any(given_w):
            if not all(given_w):
                raise ConfigError("W21, W31 and W32 must all be given")
            rates = AtomRates(*(float(opts[k]) for k in _RATE_W))
            return rates, (rates.gamma12, rates.gamma13, rates.gamma23)
        if any(given_g):
            if not (given_g[0] and given_g[1]):
                raise ConfigError("gamma12 and gamma13 must both be given")
            g12, g13 = float(opts["gamma12"]), float(opts["gamma13"])
            g23 = float(opts["gamma23"]) if given_g[2] else g12 + g13
            if not validate:
                return None, (g12, g13, g23)
            return AtomRates.from_gammas(g12, g13, g23), (g12, g13, g23)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    return FIGURE_RATES, (FIGURE_RATES.gamma12, FIGURE_RATES.gamma13, FIGURE_RATES.gamma23)


def _grid(start, stop, points, spacing="linear", name="dp"):
    if points < 3:
        raise ConfigError(f"{name}_points must be >= 3, got {points}")
    if not start < stop:
        raise ConfigError(f"{name}_start must be < {name}_stop")
    if spacing == "geom":
        if start <= 0:
            raise ConfigError("geometric spacing needs a positive start")
        return np.geomspace(start, stop, points)
    return np.linspace(start, stop, points)


def resolve(args: argparse.Namespace) -> RunConfig:
    opts = load_config_file(args.config_file) if getattr(args, "config_file", None) else {}
    for k, v in vars(args).items():
        if v is not None:
            opts[k] = v
    merged = {**DEFAULTS, **opts}
    cmd = args.command

    try:
        config = Config(str(merged["config"]).lower())
        figure = int(merged["figure"]) if merged.get("figure") is not None else None
        rates, gammas = _resolve_rates(merged, validate=cmd != "verify")
        if figure is not None:
            rates, gammas = FIGURE_RATES, (FIGURE_RATES.gamma12, FIGURE_RATES.gamma13, FIGURE_RATES.gamma23)
            merged["delta_c"] = 0.0
            merged["omega_c"] = FIGURE_OMEGA_C

        dp_keys = ("dp_start", "dp_stop", "dp_points")
        dp_grid = None
        if cmd == "spectrum" or any(k in opts for k in dp_keys):
            dp_grid = _grid(float(merged["dp_start"]), float(merged["dp_stop"]), int(merged["dp_points"]))

        omega_grid = None
        if cmd == "separation":
            if merged.get("omega_values") is not None:
                vals = merged["omega_values"]
                if isinstance(vals, str):
                    vals = [float(v) for v in vals.split(",") if v.strip()]
                omega_grid = np.asarray(vals, dtype=float)
                if omega_grid.size == 0 or np.any(np.diff(omega_grid) <= 0) or np.any(omega_grid < 0):
                    raise ConfigError("omega_values must be non-negative and strictly increasing")
            elif merged.get("omega_points") is not None:
                omega_grid = _grid(float(merged["omega_start"]), float(merged["omega_stop"]),
                                   int(merged["omega_points"]), merged["omega_spacing"], "omega")
            else:
                omega_grid = default_omega_grid()

        fmt = str(merged["format"])
        if fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {fmt!r}")
        picture = str(merged["picture"])
        if picture not in ("bare", "dressed"):
            raise ConfigError(f"unknown picture {picture!r}")
        return RunConfig(
            command=cmd, config=config, rates=rates, gammas=gammas,
            omega_c=float(merged["omega_c"]), delta_c=float(merged["delta_c"]),
            delta_p=float(merged["delta_p"]), dp_grid=dp_grid, omega_grid=omega_grid,
            output=merged.get("output"), format=fmt,
            normalize=_parse_bool(merged.get("normalize", False)),
            raw_sign=_parse_bool(merged.get("raw_sign", False)),
            raman_substituted=_parse_bool(merged.get("raman_substituted", False)),
            approx=_parse_bool(merged.get("approx", False)),
            picture=picture, figure=figure,
            seed=int(merged["seed"]), draws=int(merged["draws"]),
        )
    except KeyError as exc:
        raise ConfigError(f"missing option {exc.args[0]}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise ConfigError(str(exc)) from exc
        raise ConfigError(f"bad option value: {exc}") from exc


def _meta(rc: RunConfig, **extra) -> dict:
    g12, g13, g23 = rc.gammas
    meta = {"command": rc.command, "gamma12": g12, "gamma13": g13, "gamma23": g23,
            "omega_c": rc.omega_c, "delta_c": rc.delta_c,
            "prefactor": "unit (overall proportionality constants dropped)"}
    meta.update(extra)
    return meta


def _curve(rc: RunConfig, config: Config) -> np.ndarray:
    series = spectrum(rc.rates, DriveParams(config, rc.omega_c, rc.delta_c), rc.dp_grid)
    values = series.values if rc.raw_sign else np.abs(series.values)
    if rc.normalize:
        peak = np.max(np.abs(values))
        if peak > 0:
            values = values / peak
    return values


def cmd_spectrum(rc: RunConfig) -> tuple[str, int]:
    sign = "raw Im(rho)" if rc.raw_sign else "|Im(rho)| (negative absorption, positive up)"
    columns = {"delta_p": rc.dp_grid}
    if rc.figure == 2:
        columns["eit"] = _curve(rc, Config.EIT)
        columns["at"] = _curve(rc, Config.AT)
        meta = _meta(rc, figure=2, observable="eit: Im rho21, at: Im rho32")
    else:
        columns["value"] = _curve(rc, rc.config)
        meta = _meta(rc, config=rc.config.value,
                     observable="Im rho21" if rc.config is Config.EIT else "Im rho32")
    meta.update(sign=sign, normalized=rc.normalize)
    return _emit(rc, columns, meta), EXIT_OK


def cmd_separation(rc: RunConfig) -> tuple[str, int]:
    grid = rc.dp_grid
    eit = separation_curve(Config.EIT, rc.rates, rc.delta_c, rc.omega_grid, grid)
    at = separation_curve(Config.AT, rc.rates, rc.delta_c, rc.omega_grid, grid)
    columns = {"omega_c": rc.omega_grid, "separation_eit": eit.separation, "separation_at": at.separation}
    meta = _meta(rc, dp_grid="fixed" if grid is not None else "auto (step 0.005)")
    meta.pop("omega_c")
    if rc.figure == 3:
        meta["figure"] = 3
    return _emit(rc, columns, meta), EXIT_OK


def _emit(rc: RunConfig, columns: dict, meta: dict) -> str:
    if rc.format == "json":
        return columns_json(columns, meta)
    return format_csv(columns, meta)


def cmd_decompose(rc: RunConfig) -> tuple[str, int]:
    drive = DriveParams(rc.config, rc.omega_c, rc.delta_c, rc.delta_p)
    out = {"config": rc.config.value, "picture": rc.picture,
           "omega_c": rc.omega_c, "delta_c": rc.delta_c, "delta_p": rc.delta_p}
    if rc.config is Config.AT:
        if rc.picture == "bare":
            raise DomainError("bare-picture scattering undefined for Cascade-AT "
                              "(no quasi-stable bare initial state)")
        total = at_amplitude(rc.rates, drive)
        out.update(r1=total, r2=None, total=total, cross_term=0.0, pathway_count=1)
    else:
        if rc.picture == "dressed":
            pair = eit_dressed_amplitude(rc.rates, drive)
            method = "dressed weak-coupling"
        elif rc.approx:
            pair = approx_resonances(rc.rates, drive, rc.raman_substituted)
            method = "bare weak-coupling"
        else:
            pair = exact_decomposition(rc.rates, drive)
            method = "bare exact"
        out.update(method=method, r1=pair.r1, r2=pair.r2, total=pair.total,
                   cross_term=pair.cross, pathway_count=pair.pathway_count)
    return format_json(out), EXIT_OK


def cmd_compare(rc: RunConfig) -> tuple[str, int]:
    if rc.config is not Config.EIT:
        raise DomainError("picture comparison is defined for Cascade-EIT only")
    drive = DriveParams(Config.EIT, rc.omega_c, rc.delta_c, rc.delta_p)
    bare = approx_resonances(rc.rates, drive, rc.raman_substituted).total
    dressed = eit_dressed_amplitude(rc.rates, drive).total
    out = {"omega_c": rc.omega_c, "delta_c": rc.delta_c, "delta_p": rc.delta_p,
           "bare_total": bare, "dressed_total": dressed,
           "divergence": compare_pictures(rc.rates, drive)}
    return format_json(out), EXIT_OK


def cmd_verify(rc: RunConfig) -> tuple[str, int]:
    results = run_all(rc.seed, rc.draws, rc.gammas)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
    return format_report(results, rc.seed, rc.draws), code


COMMANDS = {
    "spectrum": cmd_spectrum,
    "separation": cmd_separation,
    "decompose": cmd_decompose,
    "compare-pictures": cmd_compare,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rc = resolve(args)
        text, code = COMMANDS[rc.command](rc)
    except ConfigError as exc:
        print(f"cascade-eit: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"cascade-eit: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    if rc.output:
        try:
            with open(rc.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cascade-eit: cannot write {rc.output}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {rc.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
