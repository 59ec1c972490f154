"""CSV and JSON exporters.

Floats are written with ``repr``, the shortest string that reads back to
the same double, so identical inputs give byte-identical files. CSV files
start with a ``# config-sha256:`` comment line; JSON files embed the config.
"""
from __future__ import annotations

import hashlib
import json
import sys
from contextlib import contextmanager

import numpy as np

from .analytic import GaussianTomogram
from .core import Grid1D, Grid2D
from .drive import Trajectory
from .frft import TomogramSlice2D
from .reconstruction import DensityMatrixGrid1D, FidelityResult
from .wavefunctions import WavefunctionGrid

__all__ = [
    "fmt",
    "config_hash",
    "to_jsonable",
    "dumps_json",
    "trajectory_csv",
    "wavefunction_csv",
    "tomogram_csv",
    "tomogram_json",
    "gaussian_json",
    "density_csv",
    "fidelity_json",
    "write_text",
    "read_csv",
    "read_wavefunction_csv",
]


def fmt(x) -> str:
    return repr(float(x))


def to_jsonable(obj):
    """Recursively convert numpy and complex values into JSON-safe types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=1, allow_nan=False) + "\n"


def config_hash(config) -> str:
    blob = json.dumps(to_jsonable(config or {}), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _csv(header, rows, config, meta=None) -> str:
    lines = [f"# config-sha256: {config_hash(config)}"]
    for k, v in (meta or {}).items():
        lines.append(f"# {k}: {v}")
    lines.append(",".join(header))
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def trajectory_csv(traj: Trajectory, config=None) -> str:
    rows = zip(traj.times, traj.z0.real, traj.z0.imag, traj.z0_dot.real, traj.z0_dot.imag,
               traj.phase)
    return _csv(["t", "re_z0", "im_z0", "re_z0_dot", "im_z0_dot", "phase"], rows, config)


def wavefunction_csv(psi: WavefunctionGrid, config=None) -> str:
    g: Grid2D = psi.grid
    meta = ["xmin,xmax,nx,ymin,ymax,ny,t",
            ",".join([fmt(g.gx.min), fmt(g.gx.max), str(g.gx.count),
                      fmt(g.gy.min), fmt(g.gy.max), str(g.gy.count), fmt(psi.t)])]
    x, y = g.mesh()
    v = psi.values.ravel()
    body = _csv(["x", "y", "re_psi", "im_psi"], zip(x.ravel(), y.ravel(), v.real, v.imag), config)
    head, rest = body.split("\n", 1)
    return "\n".join([head] + meta) + "\n" + rest


def tomogram_csv(s: TomogramSlice2D, config=None, extra: dict | None = None) -> str:
    X1, X2 = np.meshgrid(s.x1_grid.points, s.x2_grid.points, indexing="ij")
    meta = {"frame": json.dumps(s.frame.as_dict(), sort_keys=True)}
    meta.update(extra or {})
    return _csv(["X1", "X2", "w"], zip(X1.ravel(), X2.ravel(), s.values.ravel()), config, meta)


def tomogram_json(s: TomogramSlice2D, config=None, extra: dict | None = None) -> str:
    out = {
        "frame": s.frame.as_dict(),
        "x1_grid": s.x1_grid.as_dict(),
        "x2_grid": s.x2_grid.as_dict(),
        "values": np.asarray(s.values, dtype=float).ravel(),
        "config": config or {},
    }
    out.update(extra or {})
    return dumps_json(out)


def gaussian_json(g: GaussianTomogram, config=None) -> str:
    out = g.as_dict()
    out["config"] = config or {}
    return dumps_json(out)


def density_csv(rho: DensityMatrixGrid1D, config=None) -> str:
    x = rho.x_grid.points
    X, Xp = np.meshgrid(x, x, indexing="ij")
    v = rho.values.ravel()
    return _csv(["x", "x_prime", "re_rho", "im_rho"], zip(X.ravel(), Xp.ravel(), v.real, v.imag),
                config)


def fidelity_json(res: FidelityResult, config=None) -> str:
    out = res.as_dict()
    out["config"] = config or {}
    return dumps_json(out)


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def write_text(text: str, path=None):
    """Write to ``path``, or stdout when it is None or '-'."""
    with _open_out(path) as fh:
        fh.write(text)


def read_csv(path) -> tuple[list[str], list[str], np.ndarray]:
    """(comment lines, header, data) of a numeric CSV written by this module."""
    comments, header, rows = [], None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line[1:].strip())
            elif header is None:
                header = line.split(",")
            else:
                rows.append([float(v) for v in line.split(",")])
    return comments, header or [], np.array(rows, dtype=float).reshape(len(rows), len(header or []))


def read_wavefunction_csv(path) -> WavefunctionGrid:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if not ln.startswith("#")]
    meta = lines[1].split(",")
    gx = Grid1D(float(meta[0]), float(meta[1]), int(meta[2]))
    gy = Grid1D(float(meta[3]), float(meta[4]), int(meta[5]))
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[3:]])
    values = (data[:, 2] + 1j * data[:, 3]).reshape(gx.count, gy.count)
    return WavefunctionGrid(Grid2D(gx, gy), values, float(meta[6]))
