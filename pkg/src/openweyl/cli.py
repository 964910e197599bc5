"""Command-line front end: each subcommand writes one delimited data table.

Exit codes: 0 success, 2 bad parameters, 3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import re
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from openweyl.dynamics import (
    NumericalStabilityError,
    coherence_series,
    integrate,
)
from openweyl.io import FORMATS, write_table
from openweyl.model import ModelParams, MomentumPoint, band_gap, realize_mass
from openweyl.scan import (
    band_surface,
    find_band_touchings,
    purity_surface,
    transition_sweep,
)
from openweyl.steady import DensityMatrix, SteadyStateError

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

COMMANDS = ("bands", "purity-surface", "sweep", "evolve", "weyl-find")

_ANGLE = re.compile(r"^\s*([+-]?)\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")


def parse_angle(text: str) -> float:
    """Radians, with shorthands like ``pi``, ``-pi/2``, ``3pi/4``, ``0.5*pi``."""
    m = _ANGLE.match(text)
    if m is None:
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an angle in radians: {text!r}")
    sign, coeff, denom = m.groups()
    value = math.pi
    if coeff:
        value *= float(coeff)
    if denom:
        value /= int(denom)
    return -value if sign == "-" else value


@dataclass
class RunConfig:
    """Fully resolved parameters of one run, echoed to the sidecar file."""

    command: str
    lam: float = 0.0
    gamma: float = 1.0
    k_x: float | None = None
    k_y: float | None = None
    k_z: float = math.pi / 2
    m: float | None = None
    m_min: float = -2.0
    m_max: float = 2.0
    grid_n: int = 100
    dt: float = 1e-3
    t_end: float | None = None
    steps: int = 401
    sample_every: int = 100
    tol: float = 1e-9
    out: str = "-"
    format: str = "csv"
    sidecar: bool = True

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))

    @property
    def params(self) -> ModelParams:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return ModelParams(self.lam, self.gamma)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Fill in per-command defaults (gamma = 1, lambda = 0, k_z = pi/2, ...)."""
    cfg = RunConfig(command=args.command)
    for name in ("gamma", "grid_n", "dt", "steps", "sample_every", "tol", "m_min", "m_max"):
        value = getattr(args, name)
        if value is not None:
            setattr(cfg, name, value)
    cfg.out = args.out
    cfg.format = args.format
    cfg.sidecar = args.sidecar

    if args.m is not None:
        cfg.m = args.m
        cfg.lam, cfg.k_z = realize_mass(args.m)
    elif args.command == "evolve" and args.lam is None and args.kz is None:
        # dynamics defaults sit at the transition point
        cfg.m = 0.0
        cfg.lam, cfg.k_z = realize_mass(0.0)
    else:
        cfg.lam = 0.0 if args.lam is None else args.lam
        cfg.k_z = math.pi / 2 if args.kz is None else args.kz
        cfg.m = cfg.lam + math.cos(cfg.k_z)

    if args.command == "sweep":
        cfg.k_x = math.pi / 2 if args.kx is None else args.kx
        cfg.k_y = math.pi / 2 if args.ky is None else args.ky
    elif args.command == "evolve":
        cfg.k_x = 0.0 if args.kx is None else args.kx
        cfg.k_y = 0.0 if args.ky is None else args.ky
        if args.t_end is not None:
            cfg.t_end = args.t_end
        elif cfg.gamma > 0:
            cfg.t_end = 50.0 / cfg.gamma

    if cfg.gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {cfg.gamma}")
    if args.command in ("purity-surface", "sweep", "evolve") and not cfg.gamma > 0:
        raise ValueError(f"{args.command} requires gamma > 0")
    if cfg.grid_n < 3:
        raise ValueError("--grid-n must be >= 3")
    return cfg


def cmd_bands(cfg: RunConfig):
    p = cfg.params
    upper = band_surface(cfg.grid_n, p, cfg.k_z, "plus")
    lower = band_surface(cfg.grid_n, p, cfg.k_z, "minus")
    rows = [
        (kx, ky, e, lower.values[i, j])
        for (i, j), (kx, ky, e) in zip(np.ndindex(upper.shape), upper.rows())
    ]
    return ["k_x", "k_y", "E_plus", "E_minus"], rows


def cmd_purity_surface(cfg: RunConfig):
    grid = purity_surface(cfg.grid_n, cfg.params, cfg.k_z)
    return ["k_x", "k_y", "purity"], list(grid.rows())


def cmd_sweep(cfg: RunConfig):
    res = transition_sweep(cfg.k_x, cfg.k_y, cfg.gamma, cfg.m_min, cfg.m_max, cfg.steps)
    radius = np.sqrt(np.maximum(2.0 * res.purity - 1.0, 0.0))
    rows = np.column_stack([res.m, res.purity, res.bloch, radius])
    return ["m", "purity", "R_x", "R_y", "R_z", "R"], rows.tolist()


def cmd_evolve(cfg: RunConfig):
    k = MomentumPoint(cfg.k_x, cfg.k_y, cfg.k_z)
    rho0 = DensityMatrix.from_components(0.5, 0.5)  # (|e> + |g>) / sqrt(2)
    traj = integrate(rho0, k, cfg.params, cfg.t_end, cfg.dt, cfg.sample_every)
    coh = coherence_series(traj)
    eg = traj.rho_eg
    rows = np.column_stack(
        [traj.times, traj.rho_ee, eg.real, eg.imag, coh[:, 1], traj.bloch()]
    )
    header = ["t", "rho_ee", "re_rho_eg", "im_rho_eg", "abs_rho_eg", "R_x", "R_y", "R_z"]
    return header, rows.tolist()


def cmd_weyl_find(cfg: RunConfig):
    p = cfg.params
    points = find_band_touchings(cfg.grid_n, p, cfg.k_z, cfg.tol)
    return ["k_x", "k_y", "gap"], [(q.k_x, q.k_y, band_gap(q, p)) for q in points]


HANDLERS = {
    "bands": cmd_bands,
    "purity-surface": cmd_purity_surface,
    "sweep": cmd_sweep,
    "evolve": cmd_evolve,
    "weyl-find": cmd_weyl_find,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=float, help="control parameter lambda")
    common.add_argument("--gamma", type=float, help="decay rate (default 1)")
    common.add_argument("--kx", type=parse_angle, help="k_x in radians ('pi/2' accepted)")
    common.add_argument("--ky", type=parse_angle, help="k_y in radians")
    common.add_argument("--kz", type=parse_angle, help="k_z in radians (default pi/2)")
    common.add_argument("--m", type=float, help="mass lambda + cos k_z, overrides --lambda/--kz")
    common.add_argument("--m-min", type=float, help="sweep start (default -2)")
    common.add_argument("--m-max", type=float, help="sweep end (default 2)")
    common.add_argument("--grid-n", type=int, help="grid points per axis (default 100)")
    common.add_argument("--dt", type=float, help="RK4 step (default 1e-3)")
    common.add_argument("--t-end", type=float, help="final time (default 50/gamma)")
    common.add_argument("--steps", type=int, help="sweep samples (default 401)")
    common.add_argument("--sample-every", type=int, help="RK4 steps per stored sample (default 100)")
    common.add_argument("--tol", type=float, help="band-touching tolerance (default 1e-9)")
    common.add_argument("--out", default="-", help="output file, '-' for stdout")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument(
        "--sidecar",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="write <out>.config.json with the resolved configuration",
    )

    parser = argparse.ArgumentParser(
        prog="openweyl",
        description="Steady states and dynamics of the dissipative Weyl-semimetal qubit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "bands": "upper/lower band energies on the (k_x, k_y) grid",
        "purity-surface": "steady-state purity on the (k_x, k_y) grid",
        "sweep": "purity and Bloch vector versus the mass lambda + cos k_z",
        "evolve": "RK4 time evolution from (|e> + |g>)/sqrt(2)",
        "weyl-find": "detect band-touching points",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def sidecar_path(out: str) -> Path:
    return Path(out + ".config.json")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        header, rows = HANDLERS[cfg.command](cfg)
    except (NumericalStabilityError, SteadyStateError) as exc:
        print(f"openweyl: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"openweyl: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAM

    try:
        write_table(cfg.out, header, rows, cfg.format)
        if cfg.sidecar and cfg.out != "-":
            sidecar_path(cfg.out).write_text(cfg.to_json(), encoding="utf-8")
    except OSError as exc:
        print(f"openweyl: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
