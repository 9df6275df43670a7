"""Scenario runner and configuration front end.

Subcommands: modes, vacuum, thermal, oracle, sweep.  Values come from
flags, optionally seeded by a flat key=value config file with dotted
keys (flags win).  All outputs are prefix-derived files with the full
resolved configuration in their headers; two runs with the same
configuration and seed produce byte-identical artifacts.

Exit codes: 0 success, 1 configuration error, 2 numerical failure (with
partial outputs removed).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .backend import BACKEND_ENV, max_workers, resolve_backend
from .coupling import (
    DetectorConfig,
    SwitchingProfile,
    Worldline,
    compute_coupling,
    compute_coupling_set,
)
from .emit import fmt_number, render_csv, render_json, rows_as_json, write_text
from .errors import NumericalFailureError
from .oracle import (
    build_space,
    evolve_exact,
    measure_channel,
    product_state,
    thermal_field_diagonal,
    vacuum_field_diagonal,
)
from .spectrum import CavityConfig, solve_modes
from .thermal_channel import (
    ResonanceSpec,
    apply_thermal_channel,
    occupation_marginals,
    p_from_temperature,
    thermal_weight,
)
from .vacuum_channel import apply_vacuum_channel, convergence_report


class ConfigError(Exception):
    """Invalid configuration; maps to exit code 1."""


# dotted config-file key -> argparse dest
_FILE_KEYS = {
    "cavity.L": "L",
    "cavity.mass": "mass",
    "cavity.root_tol": "root_tol",
    "cavity.quad_tol": "quad_tol",
    "detector.omega": "omega",
    "detector.lambda": "lam",
    "detector.T": "T",
    "detector.x0": "x0",
    "detector.velocity": "velocity",
    "detector.p": "p",
    "detector.t_detector": "t_detector",
    "detector.eta": "eta",
    "field.t_field": "t_field",
    "run.n_max": "n_max",
    "run.n_max_list": "n_max_list",
    "run.convention": "convention",
    "run.switching": "switching",
    "run.dt": "dt",
    "run.n_modes": "n_modes",
    "run.output": "output",
    "run.format": "format",
    "run.seed": "seed",
    "run.grid": "grid",
    "run.t_field_range": "t_field_range",
    "run.t_detector_range": "t_detector_range",
    "run.axis": "axis",
    "run.workers": "workers",
    "run.allow_detuning": "allow_detuning",
}

_STRING_DESTS = {
    "omega",  # numeric or mode:N
    "eta",
    "convention",
    "switching",
    "output",
    "format",
    "grid",
    "t_field_range",
    "t_detector_range",
}
_INT_DESTS = {"n_max", "n_modes", "seed", "workers"}
_BOOL_DESTS = {"allow_detuning"}
_LIST_DESTS = {"axis", "n_max_list"}


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fermi-landauer",
        description="Cavity Dirac-field detector thermodynamics",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="scenario", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key=value config file (flags override)")
        p.add_argument("--L", type=float, help="cavity length")
        p.add_argument("--mass", type=float, help="field mass")
        p.add_argument("--root-tol", dest="root_tol", type=float, default=None)
        p.add_argument("--quad-tol", dest="quad_tol", type=float, default=None)
        p.add_argument("--output", help="output path prefix (default: scenario name)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--seed", type=int, default=None)

    def detector(p: argparse.ArgumentParser) -> None:
        p.add_argument("--omega", help="detector gap; 'mode:N' locks onto mode N")
        p.add_argument("--lambda", dest="lam", type=float, help="coupling strength")
        p.add_argument("--T", type=float, help="interaction duration")
        p.add_argument("--x0", type=float, help="detector position at t=0")
        p.add_argument("--velocity", type=float, default=None)
        p.add_argument("--p", type=float, default=None, help="initial excited population")
        p.add_argument("--t-detector", dest="t_detector", type=float, default=None)
        p.add_argument("--eta", help="reference spinor as re,im,re,im")
        p.add_argument(
            "--convention", choices=("gibbs", "paper"), default=None,
            help="temperature-to-population convention",
        )
        p.add_argument("--switching", default=None, help="sharp | cosine:<ramp>")

    p_modes = sub.add_parser("modes", help="solve and tabulate the mode spectrum")
    common(p_modes)
    p_modes.add_argument("--n-max", dest="n_max", type=int, help="number of modes")

    p_vac = sub.add_parser("vacuum", help="second-order channel, vacuum field")
    common(p_vac)
    detector(p_vac)
    p_vac.add_argument("--n-max", dest="n_max", type=int)
    p_vac.add_argument(
        "--n-max-list", dest="n_max_list",
        help="comma list of truncations for the convergence report",
    )

    p_th = sub.add_parser("thermal", help="resonant thermal channel over a (T_R,T_D) grid")
    common(p_th)
    detector(p_th)
    p_th.add_argument("--n-max", dest="n_max", type=int)
    p_th.add_argument("--grid", default=None, help="grid shape, e.g. 20x20")
    p_th.add_argument(
        "--t-field-range", dest="t_field_range", default=None,
        help="lo:hi for T_R (default 0.1*wB:10*wB)",
    )
    p_th.add_argument(
        "--t-detector-range", dest="t_detector_range", default=None,
        help="lo:hi for T_D (default 0.1*wB:10*wB)",
    )
    p_th.add_argument("--allow-detuning", dest="allow_detuning", action="store_true", default=None)
    p_th.add_argument("--workers", type=int, default=None)

    p_or = sub.add_parser("oracle", help="exact truncated evolution vs perturbation")
    common(p_or)
    detector(p_or)
    p_or.add_argument("--n-modes", dest="n_modes", type=int, help="truncation (1..3)")
    p_or.add_argument("--dt", type=float, default=None, help="integrator step (default T/4096)")
    p_or.add_argument("--t-field", dest="t_field", type=float, default=None,
                      help="thermal field temperature (default: vacuum)")

    p_sw = sub.add_parser("sweep", help="vacuum-channel sweep over 1..2 parameter axes")
    common(p_sw)
    detector(p_sw)
    p_sw.add_argument("--n-max", dest="n_max", type=int)
    p_sw.add_argument(
        "--axis", action="append",
        help="axis spec key=lo:hi:count (repeat for a second axis)",
    )
    p_sw.add_argument("--workers", type=int, default=None)
    return top


def _parse_config_file(path: str) -> dict:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in _FILE_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            dest = _FILE_KEYS[key]
            try:
                if dest in _STRING_DESTS:
                    values[dest] = val
                elif dest in _INT_DESTS:
                    values[dest] = int(val)
                elif dest in _BOOL_DESTS:
                    values[dest] = val.lower() in ("1", "true", "yes")
                elif dest in _LIST_DESTS:
                    values.setdefault(dest, [])
                    values[dest].extend(v.strip() for v in val.split(";") if v.strip())
                else:
                    values[dest] = float(val)
            except ValueError as exc:
                raise ConfigError(
                    f"{path}:{lineno}: bad value for {key!r}: {val!r}"
                ) from exc
    return values


def _merge_file_values(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    filevals = _parse_config_file(args.config)
    for dest, val in filevals.items():
        if getattr(args, dest, None) is None:
            setattr(args, dest, val)


def _require(args: argparse.Namespace, names: list[str]) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            flag = "--" + name.replace("_", "-")
            if name == "lam":
                flag = "--lambda"
            raise ConfigError(f"scenario {args.scenario!r} requires {flag}")


def _parse_eta(text: str | None) -> tuple[complex, complex]:
    if text is None:
        return (1.0 + 0.0j, 0.0 + 0.0j)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"--eta expects re,im,re,im (4 numbers), got {text!r}")
    try:
        a, b, c, d = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"--eta components must be numbers: {text!r}") from exc
    return (complex(a, b), complex(c, d))


@dataclass
class RunConfig:
    """Fully resolved scenario configuration."""

    scenario: str
    cavity: CavityConfig
    output: str
    fmt: str = "csv"
    seed: int = 0
    detector: DetectorConfig | None = None
    switching: SwitchingProfile = field(default_factory=SwitchingProfile.sharp)
    convention: str = "gibbs"
    n_max: int = 40
    n_max_list: list[int] | None = None
    n_modes: int = 2
    dt: float | None = None
    t_field: float | None = None
    grid: tuple[int, int] = (20, 20)
    t_field_range: tuple[float, float] | None = None
    t_detector_range: tuple[float, float] | None = None
    axes: list[tuple[str, float, float, int]] = field(default_factory=list)
    workers: int | None = None
    allow_detuning: bool = False
    omega_spec: str = ""

    def header(self) -> dict:
        cfg: dict = {
            "scenario": self.scenario,
            "backend": resolve_backend(),
            "seed": self.seed,
            "format": self.fmt,
            "cavity.L": self.cavity.L,
            "cavity.mass": self.cavity.m,
            "cavity.root_tol": self.cavity.root_tol,
            "cavity.quad_tol": self.cavity.quad_tol,
        }
        if self.detector is not None:
            det = self.detector
            cfg.update(
                {
                    "detector.omega": det.omega,
                    "detector.lambda": det.lam,
                    "detector.T": det.T,
                    "detector.x0": det.worldline.x0,
                    "detector.velocity": det.worldline.v,
                    "detector.p": det.p,
                    "detector.eta": "{},{},{},{}".format(
                        fmt_number(det.eta[0].real),
                        fmt_number(det.eta[0].imag),
                        fmt_number(det.eta[1].real),
                        fmt_number(det.eta[1].imag),
                    ),
                    "switching": self.switching.label(),
                }
            )
        if self.scenario in ("modes", "vacuum", "thermal", "sweep"):
            cfg["n_max"] = self.n_max
        if self.scenario == "thermal":
            cfg["convention"] = self.convention
            cfg["grid"] = f"{self.grid[0]}x{self.grid[1]}"
            cfg["omega_spec"] = self.omega_spec
        if self.scenario == "oracle":
            cfg["n_modes"] = self.n_modes
            cfg["dt"] = self.dt if self.dt is not None else -1.0
            cfg["t_field"] = self.t_field if self.t_field is not None else "vacuum"
        if self.scenario == "sweep":
            cfg["axes"] = ";".join(
                f"{k}={lo:g}:{hi:g}:{n}" for (k, lo, hi, n) in self.axes
            )
        return cfg


def _resolve_omega(spec: str, cavity: CavityConfig) -> float:
    """Numeric gap, or 'mode:N' to lock exactly onto the N-th mode frequency."""
    if spec.startswith("mode:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"--omega mode:N needs an integer N, got {spec!r}") from exc
        if n < 1:
            raise ConfigError(f"--omega mode:N needs N >= 1, got {n}")
        return solve_modes(cavity, n)[-1].omega
    try:
        return float(spec)
    except ValueError as exc:
        raise ConfigError(f"--omega must be a number or mode:N, got {spec!r}") from exc


def parse_config(argv: list[str]) -> RunConfig:
    """Parse flags (+ optional config file) into a validated RunConfig."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code not in (0, None):
            raise ConfigError("invalid command line") from None
        raise
    _merge_file_values(args)

    _require(args, ["L", "mass"])
    try:
        cavity = CavityConfig(
            L=args.L,
            m=args.mass,
            root_tol=args.root_tol if args.root_tol is not None else 1e-12,
            quad_tol=args.quad_tol if args.quad_tol is not None else 1e-10,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    cfg = RunConfig(
        scenario=args.scenario,
        cavity=cavity,
        output=args.output or args.scenario,
        fmt=args.format or "csv",
        seed=args.seed if args.seed is not None else 0,
    )

    if args.scenario == "modes":
        _require(args, ["n_max"])
        if args.n_max < 1:
            raise ConfigError(f"--n-max must be >= 1, got {args.n_max}")
        cfg.n_max = args.n_max
        return cfg

    _require(args, ["omega", "lam", "T", "x0"])
    omega = _resolve_omega(str(args.omega), cavity)
    cfg.omega_spec = str(args.omega)
    cfg.convention = args.convention or "gibbs"

    p = args.p
    if p is not None and args.t_detector is not None:
        raise ConfigError("--p and --t-detector are mutually exclusive")
    if p is None and args.t_detector is not None:
        try:
            p = p_from_temperature(args.t_detector, omega, cfg.convention)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if p is None:
        p = 0.0 if args.scenario != "thermal" else 0.5  # thermal grid overrides p anyway
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"--p must lie in [0, 1], got {p}")

    try:
        v = args.velocity or 0.0
        if v == 0.0:
            wl = Worldline.static(args.x0, cavity)
        else:
            wl = Worldline.uniform(args.x0, v, cavity, args.T)
        detector = DetectorConfig(
            omega=omega,
            lam=args.lam,
            T=args.T,
            worldline=wl,
            eta=_parse_eta(args.eta),
            p=p,
        )
        cfg.switching = (
            SwitchingProfile.parse(args.switching) if args.switching else SwitchingProfile.sharp()
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cfg.detector = detector

    if args.scenario == "vacuum":
        _require(args, ["n_max"])
        cfg.n_max = args.n_max
        if args.n_max_list:
            text = (
                args.n_max_list if isinstance(args.n_max_list, str)
                else ";".join(args.n_max_list)
            )
            try:
                lst = sorted({int(v) for v in text.replace(";", ",").split(",") if v.strip()})
            except ValueError as exc:
                raise ConfigError(f"--n-max-list must be integers, got {args.n_max_list!r}") from exc
            if not lst or lst[0] < 1 or lst[-1] > cfg.n_max:
                raise ConfigError("--n-max-list entries must lie in [1, n_max]")
            cfg.n_max_list = lst
        else:
            qs = sorted({max(1, cfg.n_max // 4), cfg.n_max // 2, (3 * cfg.n_max) // 4, cfg.n_max})
            cfg.n_max_list = [q for q in qs if q >= 1]
    elif args.scenario == "thermal":
        cfg.n_max = args.n_max if args.n_max is not None else max(4, _guess_mode_count(cavity, omega))
        cfg.allow_detuning = bool(args.allow_detuning)
        cfg.workers = args.workers
        if args.grid:
            try:
                a, b = args.grid.lower().split("x")
                cfg.grid = (int(a), int(b))
            except ValueError as exc:
                raise ConfigError(f"--grid expects NxM, got {args.grid!r}") from exc
        if cfg.grid[0] < 1 or cfg.grid[1] < 1:
            raise ConfigError(f"grid must be at least 1x1, got {cfg.grid}")
        cfg.t_field_range = _parse_range(args.t_field_range, "--t-field-range")
        cfg.t_detector_range = _parse_range(args.t_detector_range, "--t-detector-range")
    elif args.scenario == "oracle":
        _require(args, ["n_modes"])
        if not 1 <= args.n_modes <= 3:
            raise ConfigError(f"--n-modes must be 1..3, got {args.n_modes}")
        cfg.n_modes = args.n_modes
        cfg.dt = args.dt if args.dt is not None else detector.T / 4096.0
        if cfg.dt <= 0:
            raise ConfigError(f"--dt must be positive, got {cfg.dt}")
        if args.t_field is not None and args.t_field < 0:
            raise ConfigError(f"--t-field must be >= 0, got {args.t_field}")
        cfg.t_field = args.t_field
    elif args.scenario == "sweep":
        _require(args, ["n_max", "axis"])
        cfg.n_max = args.n_max
        cfg.workers = args.workers
        if not 1 <= len(args.axis) <= 2:
            raise ConfigError("sweep needs one or two --axis specs")
        for spec in args.axis:
            cfg.axes.append(_parse_axis(spec))
    return cfg


_SWEEP_KEYS = {
    "cavity.L",
    "cavity.mass",
    "detector.omega",
    "detector.lambda",
    "detector.T",
    "detector.x0",
    "detector.p",
}


def _parse_axis(spec: str) -> tuple[str, float, float, int]:
    try:
        key, rng = spec.split("=", 1)
        lo, hi, count = rng.split(":")
        key = key.strip()
        axis = (key, float(lo), float(hi), int(count))
    except ValueError as exc:
        raise ConfigError(f"--axis expects key=lo:hi:count, got {spec!r}") from exc
    if key not in _SWEEP_KEYS:
        raise ConfigError(f"unknown sweep axis {key!r}; choose from {sorted(_SWEEP_KEYS)}")
    if axis[3] < 2:
        raise ConfigError(f"axis {key} needs count >= 2, got {axis[3]}")
    return axis


def _parse_range(text: str | None, flag: str) -> tuple[float, float] | None:
    if text is None:
        return None
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise ConfigError(f"{flag} expects lo:hi, got {text!r}") from exc
    if not 0.0 <= lo < hi:
        raise ConfigError(f"{flag} needs 0 <= lo < hi, got {text!r}")
    return (lo, hi)


def _guess_mode_count(cavity: CavityConfig, omega: float) -> int:
    # enough modes to reach past the gap frequency
    k_needed = math.sqrt(max(omega**2 - cavity.m**2, 0.0)) if omega > cavity.m else 0.0
    return int(k_needed * cavity.L / math.pi + 0.5) + 2


def _table_path(prefix: str, name: str, fmt: str) -> str:
    return f"{prefix}.{name}.{fmt}"


def _emit_table(paths: list[str], prefix: str, name: str, fmt: str,
                columns: list[str], rows, config: dict) -> None:
    path = _table_path(prefix, name, fmt)
    text = (
        render_csv(columns, rows, config)
        if fmt == "csv"
        else rows_as_json(columns, rows, config)
    )
    write_text(path, text)
    paths.append(path)


def run_scenario(cfg: RunConfig) -> list[str]:
    """Execute the scenario and return the list of written artifact paths."""
    written: list[str] = []
    try:
        if cfg.scenario == "modes":
            _run_modes(cfg, written)
        elif cfg.scenario == "vacuum":
            _run_vacuum(cfg, written)
        elif cfg.scenario == "thermal":
            _run_thermal(cfg, written)
        elif cfg.scenario == "oracle":
            _run_oracle(cfg, written)
        elif cfg.scenario == "sweep":
            _run_sweep(cfg, written)
        else:  # pragma: no cover - parser restricts choices
            raise ConfigError(f"unknown scenario {cfg.scenario!r}")
    except BaseException:
        for path in written:
            try:
                os.remove(path)
            except OSError:
                pass
        raise
    return written


def _run_modes(cfg: RunConfig, written: list[str]) -> None:
    modes = solve_modes(cfg.cavity, cfg.n_max)
    rows = [(m.n, m.k, m.omega, m.norm) for m in modes]
    _emit_table(written, cfg.output, "modes", cfg.fmt,
                ["n", "k", "omega", "norm"], rows, cfg.header())


def _run_vacuum(cfg: RunConfig, written: list[str]) -> None:
    det = cfg.detector
    assert det is not None
    couplings = compute_coupling_set(cfg.cavity, det, cfg.n_max, cfg.switching)
    result = apply_vacuum_channel(couplings, det)
    header = cfg.header()

    absW2 = np.abs(couplings.W) ** 2
    absV2 = np.abs(couplings.V) ** 2
    cum_dq = 0.0
    cum_dp = 0.0
    permode_rows = []
    lam2 = det.lam**2
    for i, mode in enumerate(couplings.modes):
        dq_n = result.per_mode[i][1]
        cum_dq += dq_n
        cum_dp += lam2 * ((1.0 - det.p) * absW2[i] - det.p * absV2[i])
        permode_rows.append((mode.n, absW2[i], absV2[i], dq_n, cum_dq, cum_dp))
    _emit_table(written, cfg.output, "permode", cfg.fmt,
                ["n", "abs_W2", "abs_V2", "dQ_n", "cum_dQ", "cum_delta_p"],
                permode_rows, header)

    coupling_rows = [
        (m.n, couplings.W[i].real, couplings.W[i].imag,
         couplings.V[i].real, couplings.V[i].imag, absW2[i], absV2[i])
        for i, m in enumerate(couplings.modes)
    ]
    _emit_table(written, cfg.output, "coupling", cfg.fmt,
                ["n", "re_W", "im_W", "re_V", "im_V", "abs_W2", "abs_V2"],
                coupling_rows, header)

    conv = convergence_report(cfg.cavity, det, cfg.n_max_list or [cfg.n_max], cfg.switching)
    _emit_table(written, cfg.output, "convergence", cfg.fmt,
                ["n_max", "dQ", "delta_p", "tail_estimate"],
                [(r.n_max, r.dQ, r.delta_p, r.tail_estimate) for r in conv], header)

    summary = {
        "delta_p": result.delta_p,
        "dQ": result.dQ,
        "dS_linear": result.dS_linear,
        "dS_exact": result.dS_exact,
        "landauer_margin": result.landauer_margin,
        "n_max": couplings.n_max,
        "tail_estimate": couplings.tail_estimate,
    }
    path = f"{cfg.output}.summary.json"
    write_text(path, render_json(summary, header))
    written.append(path)


def _run_thermal(cfg: RunConfig, written: list[str]) -> None:
    det = cfg.detector
    assert det is not None
    modes = tuple(solve_modes(cfg.cavity, cfg.n_max))
    spec = ResonanceSpec.pick(modes, det)
    if not spec.resonant and not cfg.allow_detuning:
        raise ConfigError(
            f"detector gap is detuned from every solved mode "
            f"(|Omega-w_B|*T = {spec.detuning_check:g}); closest is mode {spec.B}. "
            "Pass --omega mode:N to lock on, or --allow-detuning to override."
        )
    mode_B = modes[spec.B - 1]
    V_B = compute_coupling(mode_B, det, "V", cfg.switching)

    lo_r, hi_r = cfg.t_field_range or (0.1 * spec.omega_B, 10.0 * spec.omega_B)
    lo_d, hi_d = cfg.t_detector_range or (0.1 * spec.omega_B, 10.0 * spec.omega_B)
    trs = np.linspace(lo_r, hi_r, cfg.grid[0])
    tds = np.linspace(lo_d, hi_d, cfg.grid[1])

    def one_point(tr: float, td: float):
        p = p_from_temperature(td, spec.omega_B, cfg.convention)
        # ln((1-p)/p) is exactly +-omega_B/T_D in these conventions
        log_ratio = spec.omega_B / td if cfg.convention == "gibbs" else -spec.omega_B / td
        occ = occupation_marginals(tr, spec.omega_B)
        d = DetectorConfig(
            omega=det.omega, lam=det.lam, T=det.T,
            worldline=det.worldline, eta=det.eta, p=p,
        )
        res = apply_thermal_channel(
            occ, V_B, d, B=spec.B,
            allow_detuned=cfg.allow_detuning, log_ratio=log_ratio,
        )
        X = thermal_weight(occ, p)
        return (tr, td, p, occ.P0, occ.P1, occ.P2, X,
                res.dQ, res.dS_linear, res.dS_exact, res.landauer_margin)

    points = [(tr, td) for tr in trs for td in tds]
    workers = max_workers(cfg.workers)
    if workers > 1 and len(points) > 64:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda pt: one_point(*pt), points))
    else:
        rows = [one_point(*pt) for pt in points]

    header = cfg.header()
    header["resonant_mode"] = spec.B
    header["omega_B"] = spec.omega_B
    _emit_table(written, cfg.output, "sweep", cfg.fmt,
                ["T_R", "T_D", "p", "P0", "P1", "P2", "X",
                 "dQ", "dS_linear", "dS_exact", "landauer_margin"],
                rows, header)

    margins = [r[10] for r in rows]
    summary = {
        "resonant_mode": spec.B,
        "omega_B": spec.omega_B,
        "abs_V_B": abs(V_B),
        "detuning_check": spec.detuning_check,
        "grid": list(cfg.grid),
        "T_R_range": [lo_r, hi_r],
        "T_D_range": [lo_d, hi_d],
        "min_landauer_margin": min(margins),
        "max_abs_dQ": max(abs(r[7]) for r in rows),
    }
    path = f"{cfg.output}.summary.json"
    write_text(path, render_json(summary, header))
    written.append(path)


def _run_oracle(cfg: RunConfig, written: list[str]) -> None:
    det = cfg.detector
    assert det is not None
    space = build_space(cfg.cavity, cfg.n_modes)
    if cfg.t_field is None:
        field_diag = vacuum_field_diagonal(space)
    else:
        field_diag = thermal_field_diagonal(space, cfg.t_field)

    spec = ResonanceSpec.pick(space.modes, det)
    rows = []
    for lam in (det.lam, det.lam / 2.0, det.lam / 4.0):
        d = DetectorConfig(
            omega=det.omega, lam=lam, T=det.T,
            worldline=det.worldline, eta=det.eta, p=det.p,
        )
        initial = product_state(d.p, field_diag)
        final = evolve_exact(space, d, initial, cfg.dt, cfg.switching)
        dp_e, dq_e, ds_e = measure_channel(initial, final, space)

        couplings = compute_coupling_set(cfg.cavity, d, cfg.n_modes, cfg.switching)
        if cfg.t_field is None:
            pert = apply_vacuum_channel(couplings, d)
        else:
            occ = occupation_marginals(cfg.t_field, spec.omega_B)
            pert = apply_thermal_channel(
                occ, couplings.V[spec.B - 1], d, B=spec.B,
                allow_detuned=cfg.allow_detuning or not spec.resonant,
            )
        rel_dp = abs(dp_e - pert.delta_p) / abs(dp_e) if dp_e != 0.0 else math.nan
        rel_dq = abs(dq_e - pert.dQ) / abs(dq_e) if dq_e != 0.0 else math.nan
        rows.append((lam, cfg.dt, dp_e, pert.delta_p, dq_e, pert.dQ,
                     ds_e, pert.dS_exact, rel_dp, rel_dq))

    _emit_table(written, cfg.output, "oracle", cfg.fmt,
                ["lambda", "dt", "delta_p_exact", "delta_p_pert",
                 "dQ_exact", "dQ_pert", "dS_exact", "dS_pert",
                 "rel_err_delta_p", "rel_err_dQ"],
                rows, cfg.header())


def _run_sweep(cfg: RunConfig, written: list[str]) -> None:
    det = cfg.detector
    assert det is not None

    grids = [np.linspace(lo, hi, n) for (_, lo, hi, n) in cfg.axes]
    keys = [k for (k, *_rest) in cfg.axes]
    if len(grids) == 1:
        points = [(v,) for v in grids[0]]
    else:
        points = [(a, b) for a in grids[0] for b in grids[1]]

    def one_point(vals: tuple[float, ...]):
        over = dict(zip(keys, vals))
        cavity = CavityConfig(
            L=over.get("cavity.L", cfg.cavity.L),
            m=over.get("cavity.mass", cfg.cavity.m),
            root_tol=cfg.cavity.root_tol,
            quad_tol=cfg.cavity.quad_tol,
        )
        x0 = over.get("detector.x0", det.worldline.x0)
        if det.worldline.kind == "static":
            wl = Worldline.static(x0, cavity)
        else:
            wl = Worldline.uniform(x0, det.worldline.v, cavity, over.get("detector.T", det.T))
        d = DetectorConfig(
            omega=over.get("detector.omega", det.omega),
            lam=over.get("detector.lambda", det.lam),
            T=over.get("detector.T", det.T),
            worldline=wl,
            eta=det.eta,
            p=over.get("detector.p", det.p),
        )
        couplings = compute_coupling_set(cavity, d, cfg.n_max, cfg.switching)
        res = apply_vacuum_channel(couplings, d)
        return vals + (res.delta_p, res.dQ, res.dS_linear, res.dS_exact,
                       res.landauer_margin, couplings.tail_estimate)

    workers = max_workers(cfg.workers)
    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one_point, points))
    else:
        rows = [one_point(pt) for pt in points]

    cols = keys + ["delta_p", "dQ", "dS_linear", "dS_exact", "landauer_margin", "tail_estimate"]
    _emit_table(written, cfg.output, "sweep", cfg.fmt, cols, rows, cfg.header())


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        written = run_scenario(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # keep the 0/1/2 exit-code contract
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
