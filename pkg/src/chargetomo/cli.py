"""Command-line entry point: ``chargetomo {tomogram,trajectory,fidelity,validate}``.

A JSON file given with ``--config`` supplies defaults; flags win. Schema::

    {
      "state":  {"kind": "coherent", "alpha": [re, im], "beta": [re, im]}
                | {"kind": "fock", "n1": int, "n2": int},
      "state2": same as "state" (fidelity only),
      "field":  {"kind": "zero"} | {"kind": "constant", "e1": .., "e2": ..}
                | {"kind": "sinusoidal", "amp1", "amp2", "freq", "phase"}
                | {"kind": "tabulated", "times": [..], "e1": [..], "e2": [..]},
      "frame":  {"kind": "symplectic", "mu1", "nu1", "mu2", "nu2"}
                | {"kind": "optical", "theta1", "theta2"},
      "time": float, "t_end": float, "step": float,
      "z0_init": [re, im], "z0dot_init": [re, im],
      "grid": int, "span": float, "psi_grid": int, "psi_span": float,
      "tolerance": float, "method": "pure_overlap" | "tomographic",
      "out": path, "format": "csv" | "json"
    }

Exit status: 0 success, 1 usage or configuration error, 2 numeric or oracle failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .analytic import coherent_mode_tomograms, evaluate_gaussian, var_field_tomogram
from .core import (
    ChargeTomoError,
    CoherentLabel,
    FockLabel,
    Grid1D,
    Grid2D,
    InvalidArgumentError,
    NumericError,
    TwoModeFrame,
    UnsupportedFrameError,
    optical_frame,
)
from .drive import (
    TrajectoryPoint,
    ZeroDrive,
    drive_from_dict,
    integrate_trajectory,
    trajectory_at,
)
from .frft import TomogramSlice2D, tomogram_2d
from .hermite import fock_tomogram
from .io import dumps_json, fidelity_json, tomogram_csv, tomogram_json, trajectory_csv, write_text
from .reconstruction import FIDELITY_TOL, FidelityResult, fidelity_pure, fidelity_product
from .validation import SUITE_ORDER, render_report, report_json, run_suite
from .wavefunctions import coherent_wavefunction_var, fock_wavefunction_const

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

DEFAULTS = {
    "state": {"kind": "coherent", "alpha": [0.0, 0.0], "beta": [0.0, 0.0]},
    "field": {"kind": "zero"},
    "frame": {"kind": "optical", "theta1": 0.0, "theta2": 0.0},
    "time": 0.0,
    "t_end": 4 * math.pi,
    "step": 1e-3,
    "z0_init": [0.0, 0.0],
    "z0dot_init": [0.0, 0.0],
    "grid": 257,
    "span": 10.0,
    "psi_grid": 256,
    "psi_span": 12.0,
    "tolerance": 1e-6,
    "method": "pure_overlap",
    "format": "csv",
    "out": None,
}
PURE_TOL = 1e-5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _pair(text: str) -> list[float]:
    parts = [float(v) for v in text.split(",")]
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    return parts


def _ints(text: str) -> list[int]:
    parts = [int(v) for v in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'n1,n2', got {text!r}")
    return parts


def _floats(count: int):
    def parse(text: str) -> list[float]:
        parts = [float(v) for v in text.split(",")]
        if len(parts) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers")
        return parts
    return parse


def _add_shared(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--grid", type=int, help="points per X axis")
    p.add_argument("--span", type=float, help="X grid half-width")
    p.add_argument("--time", type=float, help="evaluation time t")
    p.add_argument("--z0-init", type=_pair, metavar="RE,IM")
    p.add_argument("--z0dot-init", type=_pair, metavar="RE,IM")
    p.add_argument("--step", type=float, help="trajectory integration step")
    field = p.add_argument_group("field")
    field.add_argument("--field", choices=["zero", "constant", "sinusoidal"])
    field.add_argument("--e1", type=float, default=None)
    field.add_argument("--e2", type=float, default=None)
    field.add_argument("--amp1", type=float, default=None)
    field.add_argument("--amp2", type=float, default=None)
    field.add_argument("--freq", type=float, default=None)
    field.add_argument("--phase", type=float, default=None)


def _add_state(p: argparse.ArgumentParser, suffix: str = ""):
    p.add_argument(f"--alpha{suffix}", type=_pair, metavar="RE,IM")
    p.add_argument(f"--beta{suffix}", type=_pair, metavar="RE,IM")
    p.add_argument(f"--fock{suffix}", type=_ints, metavar="N1,N2")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chargetomo",
                     description="Tomograms of a charge in a magnetic field and a uniform electric field.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tomogram", help="two-mode tomogram slice")
    _add_shared(p)
    _add_state(p)
    p.add_argument("--frame", type=_floats(4), metavar="MU1,NU1,MU2,NU2")
    p.add_argument("--theta", type=_floats(2), metavar="THETA1,THETA2",
                   help="optical frame angles")
    p.add_argument("--numeric", action="store_true", help="use the FRFT of the sampled wavefunction")
    p.add_argument("--compare", action="store_true", help="emit both paths and their max deviation")
    p.add_argument("--strict", action="store_true", help="exit 2 when --compare exceeds --tolerance")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--psi-grid", type=int)
    p.add_argument("--psi-span", type=float)

    p = sub.add_parser("trajectory", help="guiding-centre orbit z0(t) and action phase")
    _add_shared(p)
    p.add_argument("--t-end", type=float)

    p = sub.add_parser("fidelity", help="transition probability between two states")
    _add_shared(p)
    _add_state(p, "1")
    _add_state(p, "2")
    p.add_argument("--method", choices=["pure_overlap", "tomographic"])
    p.add_argument("--psi-grid", type=int)
    p.add_argument("--psi-span", type=float)

    p = sub.add_parser("validate", help="run the oracle validation suites")
    p.add_argument("suite", nargs="?", default="all", help=f"all, {', '.join(SUITE_ORDER)}")
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


# -- config resolution ---------------------------------------------------------------

def _load_config(path) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def _state_from_flags(args, suffix=""):
    alpha = getattr(args, f"alpha{suffix}", None)
    beta = getattr(args, f"beta{suffix}", None)
    fock = getattr(args, f"fock{suffix}", None)
    if fock is not None and (alpha is not None or beta is not None):
        raise UsageError(f"give either --fock{suffix} or --alpha{suffix}/--beta{suffix}, not both")
    if fock is not None:
        return {"kind": "fock", "n1": fock[0], "n2": fock[1]}
    if alpha is not None or beta is not None:
        return {"kind": "coherent", "alpha": alpha or [0.0, 0.0], "beta": beta or [0.0, 0.0]}
    return None


def _field_from_flags(args, base: dict):
    kind = args.field
    values = {k: getattr(args, k) for k in ("e1", "e2", "amp1", "amp2", "freq", "phase")
              if getattr(args, k) is not None}
    if kind is None and not values:
        return base
    field = dict(base) if kind is None or kind == base.get("kind") else {}
    field["kind"] = kind or base.get("kind", "zero")
    field.update(values)
    return field


def resolve_config(args) -> dict:
    """Merge defaults, the --config file and explicit flags (flags win)."""
    cfg = json.loads(json.dumps(DEFAULTS))
    cfg["command"] = args.command
    cfg.update(_load_config(getattr(args, "config", None)))
    for key in ("out", "format", "grid", "span", "time", "step", "t_end", "tolerance",
                "method", "psi_grid", "psi_span"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    for key in ("z0_init", "z0dot_init"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = list(v)
    if hasattr(args, "field"):
        cfg["field"] = _field_from_flags(args, cfg.get("field") or {"kind": "zero"})
    if args.command == "tomogram":
        st = _state_from_flags(args)
        if st is not None:
            cfg["state"] = st
        if args.frame is not None and args.theta is not None:
            raise UsageError("give either --frame or --theta, not both")
        if args.frame is not None:
            cfg["frame"] = dict(zip(("mu1", "nu1", "mu2", "nu2"), args.frame), kind="symplectic")
        if args.theta is not None:
            cfg["frame"] = {"kind": "optical", "theta1": args.theta[0], "theta2": args.theta[1]}
        cfg["numeric"] = bool(args.numeric)
        cfg["compare"] = bool(args.compare)
        cfg["strict"] = bool(args.strict)
    if args.command == "fidelity":
        for i, key in (("1", "state"), ("2", "state2")):
            st = _state_from_flags(args, i)
            if st is not None:
                cfg[key] = st
        cfg.setdefault("state2", cfg["state"])
    return cfg


def provenance(cfg: dict) -> dict:
    """Config as embedded in outputs; the output path is left out so that the
    same run written to two places gives the same bytes."""
    return {k: v for k, v in cfg.items() if k != "out"}


def _complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise UsageError(f"expected a number or [re, im], got {v!r}")


def parse_state(spec: dict):
    if not isinstance(spec, dict):
        raise UsageError("state must be an object")
    kind = spec.get("kind")
    if kind == "coherent":
        return CoherentLabel(_complex(spec.get("alpha", 0)), _complex(spec.get("beta", 0)))
    if kind == "fock":
        return FockLabel(int(spec.get("n1", 0)), int(spec.get("n2", 0)))
    raise UsageError(f"state kind must be 'coherent' or 'fock', got {kind!r}")


def parse_frame(spec: dict) -> TwoModeFrame:
    kind = spec.get("kind")
    if kind == "optical":
        return optical_frame(float(spec["theta1"]), float(spec["theta2"]))
    if kind == "symplectic":
        return TwoModeFrame.from_values(*(float(spec[k]) for k in ("mu1", "nu1", "mu2", "nu2")))
    raise UsageError(f"frame kind must be 'optical' or 'symplectic', got {kind!r}")


def trajectory_point(cfg: dict, t: float) -> TrajectoryPoint:
    """Orbit state at time ``t`` for the configured drive and initial values."""
    if t < 0 or not math.isfinite(t):
        raise UsageError(f"time must be a nonnegative number, got {t}")
    drive = drive_from_dict(cfg["field"])
    z0, v0 = _complex(cfg["z0_init"]), _complex(cfg["z0dot_init"])
    if isinstance(drive, ZeroDrive) and z0 == 0 and v0 == 0:
        return TrajectoryPoint.rest(t)
    if t == 0:
        return TrajectoryPoint(0.0, z0, v0, 0.0)
    traj = integrate_trajectory(drive, z0, v0, t, min(float(cfg["step"]), t))
    return trajectory_at(traj, t)


def _x_grid(cfg) -> Grid1D:
    n, span = int(cfg["grid"]), float(cfg["span"])
    if n < 2 or span <= 0:
        raise UsageError("--grid must be >= 2 and --span positive")
    return Grid1D.symmetric(span, n)


def _psi_grid(cfg) -> Grid2D:
    return Grid2D.square(float(cfg["psi_span"]), int(cfg["psi_grid"]))


# -- commands ------------------------------------------------------------------------

def _analytic_tomogram(state, p, frame, X1, X2):
    if isinstance(state, CoherentLabel):
        return evaluate_gaussian(var_field_tomogram(state, p, frame), X1, X2)
    try:
        return fock_tomogram(state, p, frame, X1, X2)
    except UnsupportedFrameError as exc:
        raise UsageError(f"{exc}; use --numeric for this frame") from exc


def _wavefunction(state, p, cfg):
    grid = _psi_grid(cfg)
    if isinstance(state, CoherentLabel):
        return coherent_wavefunction_var(state, p, grid)
    if p.z0 != 0 or p.z0_dot != 0:
        raise UsageError("numeric Fock tomograms are only available for the undriven orbit")
    return fock_wavefunction_const(state, grid)


def cmd_tomogram(cfg: dict) -> int:
    state = parse_state(cfg["state"])
    frame = parse_frame(cfg["frame"])
    xg = _x_grid(cfg)
    p = trajectory_point(cfg, float(cfg["time"]))
    X1, X2 = np.meshgrid(xg.points, xg.points, indexing="ij")
    da = xg.spacing ** 2
    extra = {"n1": state.n1, "n2": state.n2} if isinstance(state, FockLabel) else {}
    report = []
    numeric = None
    if cfg["numeric"] or cfg["compare"]:
        numeric = tomogram_2d(_wavefunction(state, p, cfg), frame, xg, xg).values
        report.append(f"normalization (numeric): {float(np.sum(numeric) * da)!r}")
    analytic = None
    if not cfg["numeric"] or cfg["compare"]:
        analytic = _analytic_tomogram(state, p, frame, X1, X2)
        report.append(f"normalization (analytic): {float(np.sum(analytic) * da)!r}")
    values = numeric if analytic is None else analytic
    status = EXIT_OK
    if cfg["compare"]:
        dev = float(np.max(np.abs(numeric - analytic)))
        report.append(f"max deviation: {dev!r}")
        extra["max_deviation"] = dev
        if cfg["strict"] and dev > float(cfg["tolerance"]):
            report.append(f"deviation exceeds tolerance {cfg['tolerance']!r}")
            status = EXIT_NUMERIC
    s = TomogramSlice2D(frame, xg, xg, values)
    if cfg["format"] == "json":
        if numeric is not None and analytic is not None:
            extra["values_numeric"] = np.asarray(numeric).ravel()
        text = tomogram_json(s, provenance(cfg), extra)
    else:
        meta = {k: v for k, v in extra.items()}
        text = tomogram_csv(s, provenance(cfg), meta)
        if cfg["compare"]:
            text = _append_column(text, "w_numeric", numeric.ravel())
    write_text(text, cfg["out"])
    print("\n".join(report), file=sys.stderr)
    return status


def _append_column(text: str, name: str, column) -> str:
    lines = text.rstrip("\n").split("\n")
    out, k = [], 0
    for line in lines:
        if line.startswith("#"):
            out.append(line)
        elif k == 0:
            out.append(f"{line},{name}")
            k = 1
        else:
            out.append(f"{line},{float(column[k - 1])!r}")
            k += 1
    return "\n".join(out) + "\n"


def cmd_trajectory(cfg: dict) -> int:
    drive = drive_from_dict(cfg["field"])
    traj = integrate_trajectory(drive, _complex(cfg["z0_init"]), _complex(cfg["z0dot_init"]),
                                float(cfg["t_end"]), float(cfg["step"]))
    if cfg["format"] == "json":
        text = dumps_json({"config": provenance(cfg), "t": traj.times, "z0": traj.z0,
                           "z0_dot": traj.z0_dot, "phase": traj.phase})
    else:
        text = trajectory_csv(traj, provenance(cfg))
    write_text(text, cfg["out"])
    return EXIT_OK


def cmd_fidelity(cfg: dict) -> int:
    s1, s2 = parse_state(cfg["state"]), parse_state(cfg["state2"])
    p = trajectory_point(cfg, float(cfg["time"]))
    method = cfg["method"]
    if method == "pure_overlap":
        value = fidelity_pure(_wavefunction(s1, p, cfg), _wavefunction(s2, p, cfg))
        tol = PURE_TOL
    elif method == "tomographic":
        if not (isinstance(s1, CoherentLabel) and isinstance(s2, CoherentLabel)):
            raise UsageError("tomographic fidelity needs product states; Fock states are not "
                             "products in (x, y), use --method pure_overlap")
        value = fidelity_product(coherent_mode_tomograms(s1, p), coherent_mode_tomograms(s2, p))
        tol = FIDELITY_TOL
    else:
        raise UsageError(f"unknown fidelity method {method!r}")
    if not (-1e-3 <= value <= 1 + 1e-3):
        raise NumericError(f"fidelity {value!r} outside [0, 1]")
    write_text(fidelity_json(FidelityResult(value, method, tol), provenance(cfg)), cfg["out"])
    return EXIT_OK


def cmd_validate(suite: str, out=None, fmt: str = "text") -> int:
    checks = run_suite(suite)
    text = report_json(suite, checks) if fmt == "json" else render_report(suite, checks)
    write_text(text, out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NUMERIC


COMMANDS = {"tomogram": cmd_tomogram, "trajectory": cmd_trajectory, "fidelity": cmd_fidelity}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            if args.suite != "all" and args.suite not in SUITE_ORDER:
                parser.print_usage(sys.stderr)
                print(f"chargetomo: unknown suite {args.suite!r}; choose from: all, "
                      f"{', '.join(SUITE_ORDER)}", file=sys.stderr)
                return EXIT_USAGE
            return cmd_validate(args.suite, args.out, args.format)
        cfg = resolve_config(args)
        if cfg["format"] not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {cfg['format']!r}")
        return COMMANDS[args.command](cfg)
    except (UsageError, InvalidArgumentError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ChargeTomoError) and not isinstance(exc, InvalidArgumentError):
            print(f"chargetomo: numeric error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        msg = f"missing config key {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"chargetomo: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except ChargeTomoError as exc:
        print(f"chargetomo: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"chargetomo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
