"""Command line entry point (``softgrip``)."""
import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import SimConfig, config_from_mapping, load_config
from .dynamics import make_rng, simulate
from .exceptions import CapacityError, SoftgripError, StructureError
from .fincat import (
    categories_equivalent, categories_isomorphic, check_category, load_category,
)
from .harness import (
    FIG4D_SMIN, cmd_fig4d, cmd_fig4e, cmd_fig4fg, cmd_mobility, output_dir,
)
from .statespace import arrangement_space, enumerate_space

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CAPACITY = 0, 1, 2, 3
SIM_FLAGS = ("n_exp", "amplitude", "s_min", "s_max", "cycles", "runs", "target", "seed")


def _int_list(text):
    if "-" in text.strip("-") and "," not in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def _sim_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("simulation")
    g.add_argument("--config", metavar="FILE", help="key=value file; flags override it")
    for name in SIM_FLAGS:
        g.add_argument("--" + name.replace("_", "-"), dest=name, default=None, metavar="V")
    g.add_argument("--edge-argmax", dest="edge_argmax", default=None,
                   action=argparse.BooleanOptionalAction)
    return p


def _out_parent():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", metavar="DIR", help="output directory (default $SOFTGRIP_OUT)")
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="softgrip", description=__doc__)
    parser.add_argument("--version", action="version", version=f"softgrip {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sim, out = _sim_parent(), _out_parent()

    p = sub.add_parser("run", parents=[sim, out], help="one trajectory to CSV")
    p.add_argument("--run-index", type=int, default=0)

    p = sub.add_parser("fig4d", parents=[sim, out], help="S_min sweep on target B")
    p.add_argument("--s-min-list", type=_int_list, default=list(FIG4D_SMIN))
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("fig4fg", parents=[sim, out], help="targets A vs B")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("fig4e", parents=[out], help="state/transition count table")
    p.add_argument("--n-exp", type=int, default=10)
    p.add_argument("--scales", type=_int_list, default=list(range(2, 8)), help="e.g. 2-7 or 2,3")

    p = sub.add_parser("mobility", parents=[sim, out], help="toy category of mobility")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--robot", metavar="FILE", help="robot category file to classify against")
    p.add_argument("--no-monte-carlo", action="store_true")

    p = sub.add_parser("count", help="exact counts for B blocks")
    p.add_argument("blocks", type=int, nargs="+")
    p.add_argument("--enumerate", action="store_true", help="also enumerate (B <= 6)")

    p = sub.add_parser("catcheck", help="check a category file")
    p.add_argument("file")
    p.add_argument("--against", metavar="FILE", help="compare for isomorphism and equivalence")
    return parser


def _config(args):
    base = load_config(args.config) if args.config else SimConfig()
    flags = {k: getattr(args, k) for k in SIM_FLAGS if getattr(args, k) is not None}
    cfg = config_from_mapping(flags, base)
    if args.edge_argmax is not None:
        cfg = cfg.replace(edge_argmax=args.edge_argmax)
    return cfg.validate()


def _print_report(report):
    print(json.dumps(report.summary, indent=2, default=str))
    for kind in ("csv", "svg"):
        for path in getattr(report, kind).values():
            print(f"wrote {path}")


def _run(args):
    cfg = _config(args)
    out = output_dir(args.out)
    traj = simulate(cfg.target_profile(), cfg, make_rng(cfg.seed, args.run_index), seed=cfg.seed)
    path = out / f"run_{args.run_index}.csv"
    traj.to_csv(path)
    print(f"cycles={traj.cycles} halted={traj.halted} ra0={traj.ra[0]:.6f} ra={traj.ra[-1]:.6f}")
    print(f"wrote {path}")
    return EXIT_OK


def _count(args):
    for b in args.blocks:
        sp = arrangement_space(b)
        line = f"B={b} states={sp.state_count} transitions={sp.transition_count}"
        if args.enumerate:
            states, edges = enumerate_space(b)
            ok = len(states) == sp.state_count and len(edges) == sp.transition_count
            line += f" enumerated={len(states)}/{len(edges)} {'ok' if ok else 'MISMATCH'}"
        print(line)
    return EXIT_OK


def _catcheck(args):
    c = load_category(args.file)
    bad = check_category(c)
    for v in bad:
        print(v)
    print(f"{args.file}: {len(c.objects)} objects, {len(c.arrows)} arrows, "
          f"{'valid' if not bad else f'{len(bad)} violation(s)'}")
    if bad:
        return EXIT_FAIL
    if args.against:
        d = load_category(args.against)
        if check_category(d):
            print(f"{args.against}: not a category")
            return EXIT_FAIL
        print(f"isomorphic: {categories_isomorphic(c, d) is not None}")
        print(f"equivalent: {categories_equivalent(c, d) is not None}")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run(args)
        if args.command == "count":
            return _count(args)
        if args.command == "catcheck":
            return _catcheck(args)
        if args.command == "fig4e":
            _print_report(cmd_fig4e(args.n_exp, args.scales, args.out))
        elif args.command == "fig4d":
            _print_report(cmd_fig4d(_config(args), args.s_min_list, args.out, args.jobs))
        elif args.command == "fig4fg":
            _print_report(cmd_fig4fg(_config(args), args.out, args.jobs))
        elif args.command == "mobility":
            robot = Path(args.robot) if args.robot else None
            _print_report(cmd_mobility(
                _config(args), args.horizon, robot, args.out, not args.no_monte_carlo,
            ))
        return EXIT_OK
    except CapacityError as err:
        print(f"capacity: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except StructureError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAIL
    except (SoftgripError, OSError) as err:
        print(f"config: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
