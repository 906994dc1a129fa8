"""Command-line entry point.

    lbnes analyze  SCENARIO [--out report.json]
    lbnes simulate SCENARIO [--out traj.csv]
    lbnes average  SCENARIO [--out avg.csv]
    lbnes sweep    SCENARIO --multipliers 1,2,4,8 [--t-end T] [--out sweep.csv] [--summary sweep.json]
    lbnes oligopoly --emit scenario.json

Exit status: 0 on success, 1 on invalid input, 2 on numerical failure.
"""

import argparse
import json
import sys

import numpy as np

from .averaging import error_matrix, nu_table
from .errors import NumericalError, ValidationError
from .game import check_diagonal_dominance, nash_equilibrium
from .oligopoly import reference_scenario
from .scenario import load_scenario, serialize_scenario
from .sim import closed_form_averaged, convergence_sweep, run_seeker, seeker_step
from .stability import stability_report

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    sc = load_scenario(args.scenario)
    nash = nash_equilibrium(sc.game)
    dominance = check_diagonal_dominance(sc.game)
    report = stability_report(sc.game, sc.seeker)
    plan = sc.plan
    doc = report.to_dict()
    doc.update({
        "theta_star": nash.actions.tolist(),
        "nash_payoffs": nash.payoffs.tolist(),
        "dominance_margins": dominance.margins.tolist(),
        "diagonally_dominant": dominance.passed,
        "frequency_plan": {
            "base_omega": plan.base_omega,
            "ratios": [[r.p, r.q] for r in plan.ratios],
            "q_product": plan.q_product,
            "omega_tilde": plan.omega_tilde,
            "multipliers": list(plan.multipliers),
            "omegas": list(plan.omegas),
        },
        "nu_table": nu_table(plan.multipliers),
    })
    _emit(json.dumps(doc, indent=2) + "\n", args.out)


def cmd_simulate(args):
    sc = load_scenario(args.scenario)
    traj = run_seeker(sc.game, sc.seeker, sc.plan, sc.theta0, sc.t_end,
                      sc.steps_per_fast_period, sc.record_every)
    _emit(traj.to_csv(), args.out)


def cmd_average(args):
    sc = load_scenario(args.scenario)
    theta_star = nash_equilibrium(sc.game).actions
    # same time grid as `simulate`, so the two CSVs line up row by row
    step = seeker_step(sc.plan, sc.steps_per_fast_period)
    n_steps = max(1, int(np.ceil(sc.t_end / step - 1e-9)))
    dt = sc.t_end / n_steps
    idx = list(range(0, n_steps, sc.record_every)) + [n_steps]
    times = [k * dt for k in idx[:-1]] + [sc.t_end]
    traj = closed_form_averaged(error_matrix(sc.game, sc.seeker), sc.theta0, theta_star, times)
    _emit(traj.to_csv(), args.out)


def _multipliers(text):
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    return [int(v) if v.is_integer() else v for v in vals]


def cmd_sweep(args):
    sc = load_scenario(args.scenario)
    t_end = args.t_end if args.t_end is not None else sc.t_end
    result = convergence_sweep(sc.game, sc.seeker, sc.plan, args.multipliers, sc.theta0, t_end,
                               sc.steps_per_fast_period, sc.record_every, max_workers=args.workers)
    _emit(result.to_csv(), args.out)
    summary = result.summary()
    summary["multipliers"] = list(args.multipliers)
    summary["t_end"] = t_end
    text = json.dumps(summary, indent=2) + "\n"
    if args.summary:
        _emit(text, args.summary)
    else:
        sys.stderr.write(text)


def cmd_oligopoly(args):
    _emit(serialize_scenario(reference_scenario()), args.emit)


def build_parser():
    parser = argparse.ArgumentParser(prog="lbnes", description="Lie-bracket Nash equilibrium seeking toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Nash point, dominance margins and stability certificate (JSON)")
    p.add_argument("scenario")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="oscillatory seeking trajectory with payoffs (CSV)")
    p.add_argument("scenario")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("average", help="closed-form averaged trajectory (CSV)")
    p.add_argument("scenario")
    p.add_argument("--out")
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("sweep", help="averaging-error sweep over frequency multipliers")
    p.add_argument("scenario")
    p.add_argument("--multipliers", type=_multipliers, default=[1, 2, 4, 8])
    p.add_argument("--t-end", type=float, default=None, help="horizon override (default: scenario t_end)")
    p.add_argument("--out", help="sweep CSV path (default: stdout)")
    p.add_argument("--summary", help="JSON summary path (default: stderr)")
    p.add_argument("--workers", type=int, default=None, help="parallel processes for independent runs")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oligopoly", help="write the reference oligopoly scenario")
    p.add_argument("--emit", help="output path (default: stdout)")
    p.set_defaults(func=cmd_oligopoly)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"lbnes {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"lbnes {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"lbnes {args.command}: numerical failure in {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
