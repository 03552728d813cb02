"""Command line front end.

Four subcommands sweep altitude and emit CSV (header row, full double
precision) to stdout or ``--output``:

* ``moments``   analytic first/second moment and variance of the
                conditional coverage, optionally next to simulation.
* ``meta``      beta-approximated meta-distribution CCDF over a grid of
                reliability targets, optionally next to the empirical CCDF.
* ``simulate``  seeded Monte Carlo moment estimates with standard errors.
* ``compare``   analytic vs simulated moments with a 3-standard-error
                agreement gate (applied only for nakagami_m = 1, where the
                analysis is exact).

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 comparison
gate failure.  Diagnostics go to stderr, data to stdout.
"""

import argparse
import csv
import sys

import numpy as np

from .analytic import (
    DEFAULT_QUAD_ORDER,
    UnfittableMomentsError,
    beta_fit,
    beta_meta_ccdf,
    default_rules,
    moment,
)
from .geometry import EARTH_RADIUS_M, InvalidConfigError, SystemConfig, derive
from .simulator import DEFAULT_FADING_DRAWS, MODES, ModeMismatchError, estimate
from .special import ConvergenceError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_GATE = 3

_THETA_DEFAULTS = {"moments": 0.1, "meta": 1.0, "simulate": 1.0, "compare": 1.0}


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_values(spec: str) -> list[float]:
    """Parse a sweep spec: a number, a comma list, or ``start:stop:step``.

    Range endpoints are inclusive when the step divides the span.
    """
    spec = spec.strip()
    if not spec:
        raise ValueError("empty value list")
    if ":" in spec:
        pieces = spec.split(":")
        if len(pieces) != 3:
            raise ValueError(f"range must be start:stop:step, got {spec!r}")
        start, stop, step = (float(p) for p in pieces)
        if step <= 0.0:
            raise ValueError(f"step must be positive, got {step}")
        if stop < start:
            raise ValueError(f"stop {stop} precedes start {start}")
        count = int((stop - start) / step + 1e-9)
        return [start + i * step for i in range(count + 1)]
    return [float(p) for p in spec.split(",")]


def _add_common(p: argparse.ArgumentParser, command: str) -> None:
    p.add_argument("--lambda", dest="density", type=float, default=1e-12,
                   help="satellite density per square meter (default 1e-12)")
    p.add_argument("--alt-km", default="200:1500:50",
                   help="altitude sweep in km: number, comma list, or start:stop:step")
    p.add_argument("--alpha", type=float, default=3.5,
                   help="path loss exponent (default 3.5)")
    p.add_argument("--m", type=int, default=1,
                   help="Nakagami fading order (default 1)")
    theta = p.add_mutually_exclusive_group()
    theta.add_argument("--theta", type=float, default=None,
                       help=f"SIR threshold, linear (default {_THETA_DEFAULTS[command]})")
    theta.add_argument("--theta-db", type=float, default=None,
                       help="SIR threshold in dB (alternative to --theta)")
    p.add_argument("--quad-k", type=int, default=DEFAULT_QUAD_ORDER,
                   help="outer quadrature order (default %(default)s)")
    p.add_argument("--quad-n", type=int, default=DEFAULT_QUAD_ORDER,
                   help="inner quadrature order (default %(default)s)")
    p.add_argument("--earth-radius-km", type=float, default=EARTH_RADIUS_M / 1e3,
                   help="Earth radius in km (default %(default)s)")
    p.add_argument("--seed", type=int, default=1,
                   help="master seed for simulation (default 1)")
    p.add_argument("--realizations", type=int, default=10000,
                   help="Monte Carlo realizations (default 10000)")
    p.add_argument("--mode", choices=MODES, default=None,
                   help="per-realization coverage evaluation "
                        "(default: exact-m1 when --m 1, else fading-mc)")
    p.add_argument("--fading-draws", type=int, default=DEFAULT_FADING_DRAWS,
                   help="fading draws per realization in fading-mc mode (default %(default)s)")
    p.add_argument("--output", default=None, help="write CSV here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leometa",
                     description="Coverage moments and meta distribution of a "
                                 "Poisson LEO constellation")
    sub = parser.add_subparsers(dest="command", required=True)
    p_moments = sub.add_parser("moments", help="analytic coverage moments over altitude")
    _add_common(p_moments, "moments")
    p_moments.add_argument("--with-sim", action="store_true",
                           help="append simulated moment columns")
    p_meta = sub.add_parser("meta", help="beta-approximated meta distribution")
    _add_common(p_meta, "meta")
    p_meta.add_argument("--x", default="0.01:0.99:0.01",
                        help="reliability targets in [0, 1] (default %(default)s)")
    p_meta.add_argument("--with-sim", action="store_true",
                        help="append the empirical CCDF column")
    p_simulate = sub.add_parser("simulate", help="seeded Monte Carlo moment estimates")
    _add_common(p_simulate, "simulate")
    p_compare = sub.add_parser("compare", help="analytic vs simulated moments with gate")
    _add_common(p_compare, "compare")
    return parser


def _resolve_theta(args) -> float:
    if args.theta is not None:
        return args.theta
    if args.theta_db is not None:
        return 10.0 ** (args.theta_db / 10.0)
    return _THETA_DEFAULTS[args.command]


def _resolve_mode(args) -> str:
    if args.mode is not None:
        return args.mode
    return "exact-m1" if args.m == 1 else "fading-mc"


def _configs(args, theta: float) -> list[SystemConfig]:
    alts = parse_values(args.alt_km)
    if not alts:
        raise ValueError("empty altitude sweep")
    return [
        SystemConfig(
            altitude=alt * 1e3,
            density=args.density,
            earth_radius=args.earth_radius_km * 1e3,
            path_loss_exponent=args.alpha,
            nakagami_m=args.m,
            sir_threshold=theta,
        )
        for alt in alts
    ]


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(args, header: list[str], rows: list[list]) -> None:
    if args.output is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows([_fmt(v) for v in row] for row in rows)
        return
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows([_fmt(v) for v in row] for row in rows)


def _echo_sim(args, mode: str) -> None:
    print(
        f"seed={args.seed} mode={mode} realizations={args.realizations} "
        f"fading_draws={args.fading_draws}",
        file=sys.stderr,
    )


def _validate_sim(args, mode: str) -> None:
    if args.realizations < 1:
        raise ValueError(f"--realizations must be positive, got {args.realizations}")
    if args.fading_draws < 1:
        raise ValueError(f"--fading-draws must be positive, got {args.fading_draws}")
    if not 0 <= args.seed < 2**64:
        raise ValueError(f"--seed must fit in 64 bits, got {args.seed}")
    if mode == "exact-m1" and args.m != 1:
        raise ModeMismatchError(f"--mode exact-m1 requires --m 1, got --m {args.m}")


def cmd_moments(args) -> int:
    theta = _resolve_theta(args)
    configs = _configs(args, theta)
    rules = default_rules(args.quad_k, args.quad_n)
    mode = _resolve_mode(args)
    if args.with_sim:
        _validate_sim(args, mode)
        _echo_sim(args, mode)
    header = ["altitude_km", "m1", "m2", "variance"]
    if args.with_sim:
        header += ["sim_m1", "sim_m1_se", "sim_m2", "sim_m2_se"]
    rows = []
    for cfg in configs:
        geo = derive(cfg)
        m1 = moment(1, theta, cfg, geo, rules).value
        m2 = moment(2, theta, cfg, geo, rules).value
        row = [cfg.altitude / 1e3, m1, m2, max(m2 - m1 * m1, 0.0)]
        if args.with_sim:
            est = estimate(theta, cfg, args.realizations, mode,
                           fading_draws=args.fading_draws, master_seed=args.seed)
            row += [est.m1_hat, est.m1_se, est.m2_hat, est.m2_se]
        rows.append(row)
    _emit(args, header, rows)
    return EXIT_OK


def cmd_meta(args) -> int:
    theta = _resolve_theta(args)
    configs = _configs(args, theta)
    x_grid = parse_values(args.x)
    if not x_grid or min(x_grid) < 0.0 or max(x_grid) > 1.0:
        raise ValueError("--x targets must lie in [0, 1]")
    rules = default_rules(args.quad_k, args.quad_n)
    mode = _resolve_mode(args)
    if args.with_sim:
        _validate_sim(args, mode)
        _echo_sim(args, mode)
    header = ["altitude_km", "x", "meta_ccdf"]
    if args.with_sim:
        header.append("empirical_ccdf")
    x_arr = np.asarray(x_grid)
    rows = []
    for cfg in configs:
        geo = derive(cfg)
        m1 = moment(1, theta, cfg, geo, rules).value
        m2 = moment(2, theta, cfg, geo, rules).value
        fit = beta_fit(m1, m2)
        if fit.valid:
            ccdf = beta_meta_ccdf(fit, x_arr)
        else:
            ccdf = None
            print(
                f"warning: altitude {cfg.altitude / 1e3:g} km: no beta fit "
                f"({fit.diagnostic}); emitting empty meta_ccdf cells",
                file=sys.stderr,
            )
        emp = None
        if args.with_sim:
            est = estimate(theta, cfg, args.realizations, mode,
                           fading_draws=args.fading_draws, master_seed=args.seed,
                           x_grid=x_arr)
            emp = est.empirical_ccdf[:, 1]
        for j, x in enumerate(x_grid):
            row = [cfg.altitude / 1e3, x, "" if ccdf is None else float(ccdf[j])]
            if args.with_sim:
                row.append(float(emp[j]))
            rows.append(row)
    _emit(args, header, rows)
    return EXIT_OK


def cmd_simulate(args) -> int:
    theta = _resolve_theta(args)
    configs = _configs(args, theta)
    mode = _resolve_mode(args)
    _validate_sim(args, mode)
    _echo_sim(args, mode)
    header = ["altitude_km", "realizations", "mode", "seed",
              "sim_m1", "sim_m1_se", "sim_m2", "sim_m2_se"]
    rows = []
    for cfg in configs:
        est = estimate(theta, cfg, args.realizations, mode,
                       fading_draws=args.fading_draws, master_seed=args.seed)
        rows.append([cfg.altitude / 1e3, est.realizations, mode, args.seed,
                     est.m1_hat, est.m1_se, est.m2_hat, est.m2_se])
    _emit(args, header, rows)
    return EXIT_OK


def cmd_compare(args) -> int:
    theta = _resolve_theta(args)
    configs = _configs(args, theta)
    rules = default_rules(args.quad_k, args.quad_n)
    mode = _resolve_mode(args)
    _validate_sim(args, mode)
    _echo_sim(args, mode)
    gate_applies = args.m == 1
    header = ["altitude_km", "metric", "analytic", "simulated",
              "abs_diff", "sim_se", "within_3se"]
    rows = []
    failures = 0
    comparisons = 0
    for cfg in configs:
        geo = derive(cfg)
        ana = {
            "m1": moment(1, theta, cfg, geo, rules).value,
            "m2": moment(2, theta, cfg, geo, rules).value,
        }
        est = estimate(theta, cfg, args.realizations, mode,
                       fading_draws=args.fading_draws, master_seed=args.seed)
        sim = {"m1": (est.m1_hat, est.m1_se), "m2": (est.m2_hat, est.m2_se)}
        for metric in ("m1", "m2"):
            sim_val, sim_se = sim[metric]
            diff = abs(ana[metric] - sim_val)
            ok = diff <= 3.0 * sim_se
            comparisons += 1
            if not ok:
                failures += 1
            rows.append([cfg.altitude / 1e3, metric, ana[metric], sim_val,
                         diff, sim_se, "true" if ok else "false"])
    _emit(args, header, rows)
    if gate_applies:
        print(f"gate: {comparisons - failures}/{comparisons} comparisons within 3 "
              f"standard errors", file=sys.stderr)
        if failures:
            return EXIT_GATE
    else:
        print(f"gate not applied for nakagami_m={args.m} (approximate analysis); "
              f"{comparisons - failures}/{comparisons} within 3 standard errors",
              file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "moments": cmd_moments,
    "meta": cmd_meta,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.quad_k < 1 or args.quad_n < 1:
        print("leometa: error: quadrature orders must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (ConvergenceError, UnfittableMomentsError) as exc:
        print(f"leometa: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidConfigError, ModeMismatchError, ValueError) as exc:
        print(f"leometa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
