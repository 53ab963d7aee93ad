"""Command-line front end.

Subcommands: ``sweep``, ``figure1``, ``poles``, ``compare``, ``front``.
Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure
(including a comparison above tolerance).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path

import numpy as np

from .barrier import SquareBarrier, find_poles
from .constants import default_constants, natural_units
from .errors import ConfigError, NumericalError, PoleSearchError
from .oracle import kg_grid, propagate_kg, propagate_schrodinger, relative_l2, schrodinger_grid
from .scenario import Evaluator, Scenario, SweepSpec, load_scenario

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
CSV_HEADER = "t_or_x,re_psi,im_psi,density"

# Reference set-up: delta barrier at x = 0, observed at x = 0.3 Angstrom.
FIG1 = dict(x=0.3, b_s=2.0, energy=0.01)
COMPARE_TOL = {"schrodinger": 1e-2, "klein_gordon": 3e-2}
SQUARE_TOL = 2e-2


def _fmt(v: float) -> str:
    return "%.17g" % v


def format_rows(samples, psi) -> list[str]:
    """CSV rows; density is computed from the emitted floats."""
    lines = [CSV_HEADER]
    for s, p in zip(np.asarray(samples, dtype=float), np.asarray(psi, dtype=complex)):
        re, im = float(p.real), float(p.imag)
        lines.append(",".join((_fmt(s), _fmt(re), _fmt(im), _fmt(re * re + im * im))))
    return lines


def write_csv(path, samples, psi):
    text = "\n".join(format_rows(samples, psi)) + "\n"
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _scenario(args) -> Scenario:
    if not args.scenario:
        raise ConfigError("--scenario FILE is required")
    sc = load_scenario(args.scenario)
    if args.natural_units:
        sc = dataclasses.replace(sc, natural_units=True)
    if getattr(args, "n_poles", None) is not None:
        sc = dataclasses.replace(sc, n_poles=args.n_poles)
    return sc


def run_sweep(scenario: Scenario, sweep: SweepSpec):
    ev = Evaluator(scenario)
    s = sweep.samples()
    if sweep.mode == "time_at_x":
        psi = ev(sweep.fixed, s)
    else:
        psi = ev(s, sweep.fixed)
    return s, np.asarray(psi, dtype=complex)


def cmd_sweep(args) -> int:
    sc = _scenario(args)
    if args.time is not None:
        sweep = SweepSpec("space_at_t", args.time, args.x_min, args.x_max, args.steps, args.out)
    else:
        if args.x is None:
            raise ConfigError("sweep needs --x (time sweep) or --time (space sweep)")
        sweep = SweepSpec("time_at_x", args.x, args.t_min, args.t_max, args.steps, args.out)
    s, psi = run_sweep(sc, sweep)
    write_csv(sweep.out, s, psi)
    return EXIT_OK


def figure1_data(n_early: int = 4001, n_long: int = 400, t_long: float = 1e5):
    """Densities for the reference delta set-up and the summary record."""
    base = dict(potential="delta", b_s=FIG1["b_s"], energy=FIG1["energy"])
    sch = Evaluator(Scenario(equation="schrodinger", **base))
    kg = Evaluator(Scenario(equation="klein_gordon", **base))
    consts = default_constants()
    x = FIG1["x"]
    t0 = x / consts.c
    t = np.unique(np.concatenate([np.linspace(0.0, 4 * t0, n_early),
                                  np.geomspace(4 * t0, t_long, n_long)]))
    psi_s, psi_r = sch(x, t), kg(x, t)
    k, b, k_r = sch.kin.k, sch.scenario.delta.b, kg.kin.k_r
    summary = {
        "x": x, "b_s": FIG1["b_s"], "energy": FIG1["energy"],
        "front_time": t0,
        "front_height": float(abs(kg(x, t0 * (1 + 1e-9))) ** 2),
        "schrodinger_plateau": float(abs(sch(x, t_long)) ** 2),
        "klein_gordon_plateau": float(abs(kg(x, t_long)) ** 2),
        "schrodinger_stationary": k * k / (k * k + b * b),
        "klein_gordon_stationary": k_r * k_r / (k_r * k_r + b * b),
        "classical_front_time": x * consts.m_over_hbar / k,
        "plateau_time": t_long,
    }
    return t, psi_s, psi_r, summary


def cmd_figure1(args) -> int:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    t, psi_s, psi_r, summary = figure1_data()
    write_csv(out / "figure1_schrodinger.csv", t, psi_s)
    write_csv(out / "figure1_klein_gordon.csv", t, psi_r)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    for key in ("front_time", "front_height", "schrodinger_plateau", "klein_gordon_plateau"):
        print(f"{key} = {summary[key]:.10g}")
    return EXIT_OK


def pole_rows(poles) -> list[str]:
    lines = ["n,re_k,im_k,re_u0uL,im_u0uL,residual"]
    for p in poles:
        lines.append(",".join([str(p.n)] + [_fmt(v) for v in (
            p.k.real, p.k.imag, p.u0uL.real, p.u0uL.imag, p.residual)]))
    return lines


def cmd_poles(args) -> int:
    consts = natural_units() if args.natural_units else default_constants()
    bar = SquareBarrier(args.V0, args.L)
    status = EXIT_OK
    try:
        poles = find_poles(bar, args.n_poles, consts)
    except PoleSearchError as exc:
        print(f"error: {exc} (partial table written)", file=sys.stderr)
        poles, status = exc.partial, EXIT_NUMERIC
    text = "\n".join(pole_rows(poles)) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def kg_oracle_dx(scenario: Scenario, t_final: float, target: float = 5e-3) -> float:
    """dx for which the leapfrog mass-term phase drift stays near ``target``.

    The drift of the k = 0 mode after time T is about (5/24) (mu dx)^2 mu c T.
    """
    c = scenario.consts
    mu = c.mu
    dx = math.sqrt(target / (0.2 * mu * c.c * t_final)) / mu
    return min(dx, 0.05 / mu)


def run_compare(scenario: Scenario, probes, t_min: float, t_max: float, dx: float | None = None):
    """Relative L2 error of the analytic solution against the oracle, per probe."""
    ev = Evaluator(scenario)
    if scenario.equation == "schrodinger":
        grid = schrodinger_grid(scenario, probes, t_max, dx=dx or 0.1, record_dt=(t_max - t_min) / 400)
        series = propagate_schrodinger(scenario, grid)
    else:
        grid = kg_grid(scenario, probes, t_max, dx or kg_oracle_dx(scenario, t_max),
                       record_dt=(t_max - t_min) / 400)
        series = propagate_kg(scenario, grid)
    mask = series.t >= t_min
    if mask.sum() < 2:
        raise ConfigError("comparison window holds fewer than two samples")
    errors = {}
    for j, xp in enumerate(series.x):
        ref = series.psi[mask, j]
        ana = ev(xp, series.t[mask])
        errors[float(xp)] = relative_l2(ana, ref)
    return errors


def cmd_compare(args) -> int:
    sc = _scenario(args)
    probes = args.x or [FIG1["x"]]
    if sc.equation == "schrodinger":
        t_max = args.t_max if args.t_max is not None else 5.0
        t_min = args.t_min if args.t_min is not None else 0.05
    else:
        c = sc.consts.c
        t_max = args.t_max if args.t_max is not None else 3 * max(probes) / c
        t_min = args.t_min if args.t_min is not None else 1.05 * max(probes) / c
    if sc.potential == "square" and min(probes) < sc.L:
        raise ConfigError("probes must lie at x >= L for the square barrier")
    tol = SQUARE_TOL if sc.potential == "square" else COMPARE_TOL[sc.equation]
    errors = run_compare(sc, probes, t_min, t_max, args.dx)
    worst = 0.0
    for xp, err in errors.items():
        print(f"x = {xp:.6g}  relative_l2 = {err:.3e}")
        worst = max(worst, err)
    verdict = "PASS" if worst <= tol else "FAIL"
    print(f"{verdict}: max relative_l2 {worst:.3e} (tolerance {tol:g})")
    return EXIT_OK if worst <= tol else EXIT_NUMERIC


def run_front(scenario: Scenario, x: float, threshold: float, t_min: float, t_max: float,
              steps: int = 2001, rtol: float = 1e-13) -> float:
    """First time |psi|^2 exceeds ``threshold``, refined by bisection."""
    if not threshold > 0:
        raise ConfigError("threshold must be > 0")
    if not 0 <= t_min < t_max:
        raise ConfigError("need 0 <= t_min < t_max")
    ev = Evaluator(scenario)

    def density(t):
        return np.abs(ev(x, t)) ** 2

    ts = np.linspace(t_min, t_max, steps)
    d = density(ts)
    above = np.nonzero(d > threshold)[0]
    if above.size == 0:
        raise NumericalError(f"density never exceeds {threshold:g} in [{t_min:g}, {t_max:g}]")
    i = above[0]
    if i == 0:
        return float(ts[0])
    lo, hi = float(ts[i - 1]), float(ts[i])
    for _ in range(400):
        if hi - lo <= rtol * hi:
            break
        mid = 0.5 * (lo + hi)
        if density(mid) > threshold:
            hi = mid
        else:
            lo = mid
    return hi


def cmd_front(args) -> int:
    sc = _scenario(args)
    if args.x is None or len(args.x) != 1:
        raise ConfigError("front needs exactly one --x")
    x = args.x[0]
    t_min = 0.0 if args.t_min is None else args.t_min
    t_max = args.t_max if args.t_max is not None else 10 * x / sc.consts.c
    t = run_front(sc, x, args.threshold, t_min, t_max, steps=args.steps)
    print(f"front_time = {_fmt(t)}")
    if sc.equation == "klein_gordon":
        print(f"light_cone = {_fmt(x / sc.consts.c)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qshutter", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_units(sp):
        sp.add_argument("--natural-units", action="store_true",
                        help="hbar = m = c = 1 instead of eV / Angstrom / fs")

    def add_scenario(sp):
        sp.add_argument("--scenario", metavar="FILE", help="key = value scenario file")
        add_units(sp)

    sp = sub.add_parser("sweep", help="psi on a time or space grid, as CSV")
    add_scenario(sp)
    sp.add_argument("--x", type=float, help="fixed position for a time sweep")
    sp.add_argument("--time", type=float, help="fixed time for a space sweep")
    sp.add_argument("--t-min", type=float, default=0.0)
    sp.add_argument("--t-max", type=float, default=1.0)
    sp.add_argument("--x-min", type=float, default=0.1)
    sp.add_argument("--x-max", type=float, default=10.0)
    sp.add_argument("--steps", type=int, default=201)
    sp.add_argument("--n-poles", type=int)
    sp.add_argument("--out", help="output CSV (default: stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("figure1", help="reference delta set-up: two CSV files and summary.json")
    sp.add_argument("--out", help="output directory (default: .)")
    sp.set_defaults(func=cmd_figure1)

    sp = sub.add_parser("poles", help="S-matrix pole table of a square barrier")
    sp.add_argument("--V0", type=float, default=1.0, help="height (eV)")
    sp.add_argument("--L", type=float, default=5.0, help="width (Angstrom)")
    sp.add_argument("--n-poles", type=int, default=16)
    sp.add_argument("--out")
    add_units(sp)
    sp.set_defaults(func=cmd_poles)

    sp = sub.add_parser("compare", help="analytic solution against the finite-difference oracle")
    add_scenario(sp)
    sp.add_argument("--x", type=float, action="append", help="probe position (repeatable)")
    sp.add_argument("--t-min", type=float)
    sp.add_argument("--t-max", type=float)
    sp.add_argument("--dx", type=float)
    sp.add_argument("--n-poles", type=int)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("front", help="first time the density exceeds a threshold")
    add_scenario(sp)
    sp.add_argument("--x", type=float, action="append")
    sp.add_argument("--threshold", type=float, default=1e-6)
    sp.add_argument("--t-min", type=float)
    sp.add_argument("--t-max", type=float)
    sp.add_argument("--steps", type=int, default=2001)
    sp.add_argument("--n-poles", type=int)
    sp.set_defaults(func=cmd_front)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
