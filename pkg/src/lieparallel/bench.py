"""Convergence benchmark: transport error against step count.

Compares RK2 and RK4 integration of the reduced transport equation with
the pole ladder along one random geodesic, and fits log-log slopes.
"""
import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import build_se3_structure, build_so3_structure, norm
from .geometry import NonConvergence, Scheme, parallel_transport_geodesic, pole_ladder

SCHEMES = ("rk2", "rk4", "pole")
EXPECTED_ORDERS = {"rk2": (1.7, 2.3), "rk4": (3.5, 4.5), "pole": (1.6, 2.4)}
FIELDS = ("scheme", "beta", "n", "error", "wall_time_s")


def geometric_grid(n_min=10, n_max=1000, n_count=16):
    return [int(n) for n in np.unique(np.geomspace(n_min, n_max, n_count).round().astype(int))]


@dataclass
class BenchConfig:
    group: str = "se3"
    beta: float = 1.5
    schemes: tuple = SCHEMES
    n_grid: list = field(default_factory=geometric_grid)
    seed: int = 42
    reference_steps: int = 2000
    output_path: str = None

    def validate(self):
        if self.group not in ("se3", "so3"):
            raise ValueError(f"unknown group {self.group!r}")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.group == "so3" and self.beta != 1.0:
            raise ValueError("so3 has no anisotropy parameter; use beta=1")
        unknown = set(self.schemes) - set(SCHEMES)
        if unknown or not self.schemes:
            raise ValueError(f"unknown schemes {sorted(unknown)}")
        grid = list(self.n_grid)
        if not grid or grid[0] < 1 or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("n_grid must be strictly increasing positive integers")
        if self.reference_steps < grid[-1]:
            raise ValueError("reference_steps must be at least max(n_grid)")

    def structure(self):
        return build_se3_structure(self.beta) if self.group == "se3" else build_so3_structure()


@dataclass
class ConvergenceRecord:
    scheme: str
    beta: float
    n: int
    error: float
    wall_time_s: float = 0.0


def random_inputs(s, seed):
    """Unit-norm initial velocity and transported vector drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    direction = rng.uniform(-1.0, 1.0, s.dim)
    zeta = rng.uniform(-1.0, 1.0, s.dim)
    return direction / norm(s, direction), zeta / norm(s, zeta)


def transport(s, scheme, direction, zeta, n):
    base = np.eye(s.matrix_size)
    if scheme == "pole":
        return pole_ladder(s, base, direction, zeta, n)
    return parallel_transport_geodesic(s, base, direction, zeta, n, Scheme(scheme))[1]


def run_convergence(cfg):
    cfg.validate()
    s = cfg.structure()
    direction, zeta = random_inputs(s, cfg.seed)
    reference = transport(s, "rk4", direction, zeta, cfg.reference_steps)
    records = []
    for scheme in cfg.schemes:
        for n in cfg.n_grid:
            start = time.perf_counter()
            try:
                error = norm(s, transport(s, scheme, direction, zeta, n) - reference)
            except NonConvergence:
                error = math.nan
            records.append(ConvergenceRecord(scheme, cfg.beta, n, error, time.perf_counter() - start))
    records.sort(key=lambda r: (SCHEMES.index(r.scheme), r.n))
    return records


def fit_slope(records, floor=100 * np.finfo(float).eps):
    """Negated least-squares slope of log(error) against log(n)."""
    pts = [(r.n, r.error) for r in records if np.isfinite(r.error) and r.error > floor]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points above the error floor, got {len(pts)}")
    n, err = np.array(pts, dtype=float).T
    return -float(np.polyfit(np.log(n), np.log(err), 1)[0])


def _fmt(x):
    return format(x, ".17g")


def write_csv(records, path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(FIELDS)
        for r in records:
            writer.writerow([r.scheme, _fmt(r.beta), r.n, _fmt(r.error), _fmt(r.wall_time_s)])


def read_csv(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows or tuple(rows[0]) != FIELDS:
        raise ValueError(f"{path}: bad header {rows[0] if rows else None}")
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(FIELDS):
            raise ValueError(f"{path}:{lineno}: expected {len(FIELDS)} fields, got {len(row)}")
        try:
            records.append(ConvergenceRecord(row[0], float(row[1]), int(row[2]), float(row[3]),
                                             float(row[4])))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return records


def slopes_by_scheme(records):
    out = {}
    for scheme in SCHEMES:
        rows = [r for r in records if r.scheme == scheme]
        if rows:
            out[scheme] = fit_slope(rows)
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(prog="bench", description=__doc__.splitlines()[0])
    parser.add_argument("--group", default="se3", choices=("se3", "so3"))
    parser.add_argument("--beta", type=float, default=1.5)
    parser.add_argument("--schemes", default=",".join(SCHEMES))
    parser.add_argument("--n-min", type=int, default=10)
    parser.add_argument("--n-max", type=int, default=1000)
    parser.add_argument("--n-count", type=int, default=16)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--reference-steps", type=int, default=2000)
    parser.add_argument("--output", required=True)
    parser.add_argument("--assert-orders", action="store_true",
                        help="exit with status 1 if a fitted slope is outside its expected band")
    args = parser.parse_args(argv)

    try:
        if args.n_min < 1 or args.n_max < args.n_min or args.n_count < 1:
            raise ValueError("need 1 <= n-min <= n-max and n-count >= 1")
        cfg = BenchConfig(
            group=args.group,
            beta=args.beta,
            schemes=tuple(x.strip() for x in args.schemes.split(",") if x.strip()),
            n_grid=geometric_grid(args.n_min, args.n_max, args.n_count),
            seed=args.seed,
            reference_steps=args.reference_steps,
            output_path=args.output,
        )
        cfg.validate()
    except ValueError as exc:
        print(f"bench: invalid configuration: {exc}", file=sys.stderr)
        return 2

    records = run_convergence(cfg)
    write_csv(records, cfg.output_path)
    failed = False
    for scheme in cfg.schemes:
        try:
            slope = fit_slope([r for r in records if r.scheme == scheme])
        except ValueError as exc:
            print(f"{scheme:5s} slope: n/a ({exc})")
            failed = True
            continue
        lo, hi = EXPECTED_ORDERS[scheme]
        ok = lo <= slope <= hi
        failed |= not ok
        print(f"{scheme:5s} slope {slope:6.3f}  expected [{lo}, {hi}]  {'ok' if ok else 'OUT OF BAND'}")
    return 1 if args.assert_orders and failed else 0


if __name__ == "__main__":
    sys.exit(main())
