"""Command-line entry point.

Exit status: 0 success, 1 usage or configuration error, 2 data error,
3 numerical error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import report
from .config import frequency_of, load_config
from .dataio import Schema, load_csv, write_event_log, write_trajectory
from .equilibrium import implied_rer, usd_generalised_rer
from .errors import ConfigError, DataError, NumericalError
from .inference import build_ardl_design, granger_test, replication_battery
from .regress import ols_fit
from .scenario import neutral_rate_comparison, simulate

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _schema(args):
    return Schema(frequency=frequency_of(args.frequency)) if getattr(args, "frequency", None) else None


def cmd_fit_ardl(args, out):
    spec, title = load_config(args.spec).ardl_spec()
    data = load_csv(args.data, _schema(args))
    fit = ols_fit(build_ardl_design(spec, data))
    out.write(report.render_regression_table(fit, title=title))


def cmd_granger(args, out):
    data = load_csv(args.data, _schema(args))
    for name in (args.cause, args.effect):
        if name not in data:
            raise DataError(f"column {name!r} not found in {args.data}")
    results = granger_test(data[args.cause], data[args.effect], args.max_lag)
    title = args.title or f"{args.cause} on {args.effect}"
    out.write(report.render_granger_table(results, title))


def cmd_battery(args, out):
    cfg = load_config(args.config)
    cells = replication_battery(cfg.battery(), loader=load_csv)
    if cells:
        out.write(report.render_battery(cells))
    failed = [c for c in cells if not c.ok]
    for c in failed:
        print(f"warning: {c.title}: {c.error}", file=sys.stderr)


def cmd_rer(args, out):
    cfg = load_config(args.config)
    sec = cfg.section("rer")
    b = cfg.params(sec)
    f = cfg.formulation(sec, args.formulation)
    if "domestic" not in sec:
        raise ConfigError("rer section needs 'domestic'")
    dom = cfg.economy(sec["domestic"])
    if "usd" in sec:
        res = usd_generalised_rer(dom, cfg.economy(sec["usd"]), float(sec.get("p_ratio", 1.0)), b, f)
    else:
        if "reference" not in sec:
            raise ConfigError("rer section needs 'reference' or 'usd'")
        res = implied_rer(dom, cfg.economy(sec["reference"]), b, f)
    obs = sec.get("observed_rer")
    out.write(report.render_equilibrium(res, None if obs is None else float(obs)))


def cmd_simulate(args, out):
    cfg = load_config(args.config)
    kwargs = cfg.simulation(args.horizon)
    path = simulate(**kwargs)
    write_trajectory(path, args.out)
    events_out = args.events or str(Path(args.out).with_suffix(".events.json"))
    write_event_log(path, events_out)
    out.write(f"wrote {len(path)} periods to {args.out}; {len(path.events)} event(s) to {events_out}\n")


def cmd_neutral_rates(args, out):
    cfg = load_config(args.config)
    sec = cfg.section("neutral_rates")
    labels = sec.get("economies")
    if labels is None:
        labels = list((cfg.doc.get("economies") or {}).keys())
    economies = [cfg.economy(e) for e in labels]
    try:
        rep = neutral_rate_comparison(economies, float(sec.get("max_spread", 0.01)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    out.write(report.render_neutral_report(rep))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rerbalance", description="ARDL/Granger battery and RER growth-capital equilibrium tools")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("fit-ardl", help="fit an ARDL regression and print the coefficient table")
    s.add_argument("--data", required=True)
    s.add_argument("--spec", required=True, help="YAML file with the ARDL layout")
    s.add_argument("--frequency", choices=["quarterly", "annual"])
    s.set_defaults(func=cmd_fit_ardl)

    s = sub.add_parser("granger", help="Granger-causality F tests for one pair")
    s.add_argument("--data", required=True)
    s.add_argument("--cause", required=True)
    s.add_argument("--effect", required=True)
    s.add_argument("--max-lag", type=int, required=True)
    s.add_argument("--title")
    s.add_argument("--frequency", choices=["quarterly", "annual"])
    s.set_defaults(func=cmd_granger)

    s = sub.add_parser("battery", help="per-country Granger tables")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_battery)

    s = sub.add_parser("rer", help="implied real exchange rate")
    s.add_argument("--config", required=True)
    s.add_argument("--formulation", choices=["price", "monetary"])
    s.set_defaults(func=cmd_rer)

    s = sub.add_parser("simulate", help="currency-shock scenario trajectory")
    s.add_argument("--config", required=True)
    s.add_argument("--horizon", type=int)
    s.add_argument("--out", required=True)
    s.add_argument("--events", help="event log path (default: OUT with .events.json suffix)")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("neutral-rates", help="pairwise capital-neutral growth spreads")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_neutral_rates)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise _Usage(parser.format_usage())
        if getattr(args, "horizon", None) is not None and args.horizon < 1:
            raise _Usage("simulate: --horizon must be at least 1")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(message)s")
        args.func(args, out)
    except _Usage as exc:
        print(str(exc).rstrip(), file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
