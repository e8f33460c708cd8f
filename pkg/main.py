#!/usr/bin/env python3
"""Poissonize: typical-user SINR laws of Poisson and hexagonal cellular networks."""

import argparse
import logging
import sys

from core.config import ConfigManager, RunConfig, dump, parse_float_list
from core.errors import EXIT_OK, PoissonizeError, exit_code
from core.figures import (
    converge_table,
    fig_energy_table,
    fig_sinr_table,
    fig_sir_table,
    write_csv,
)

logger = logging.getLogger("poissonize")


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def load_config(args) -> RunConfig:
    """Config file (or defaults) with the command-line overrides applied."""
    overrides = {
        "seed": args.seed,
        "workers": args.workers,
        "sigma_db_list": parse_float_list(args.sigma_db) if args.sigma_db else None,
        "p_grid_dbm": parse_float_list(args.p_grid_dbm) if args.p_grid_dbm else None,
    }
    return ConfigManager(args.config).load(overrides)


def _run_table(args, build) -> None:
    config = load_config(args)
    logger.info("running %s (seed %d)", args.command, config.seed)
    table = build(config)
    write_csv(table, args.out)
    for comment in table.comments:
        print(comment)


def cmd_fig_sir(args):
    """Handle fig-sir: simulated vs analytic SIR CDF."""
    _run_table(args, fig_sir_table)


def cmd_fig_sinr(args):
    """Handle fig-sinr: SINR CDFs of the hexagonal and Poisson models."""
    _run_table(args, fig_sinr_table)


def cmd_fig_energy(args):
    """Handle fig-energy: mean energy efficiency against transmit power."""
    _run_table(args, fig_energy_table)


def cmd_converge(args):
    """Handle converge: K-S pass fractions over a shadowing sweep."""
    _run_table(args, converge_table)


def cmd_show_config(args):
    """Handle show-config: print the effective configuration as YAML."""
    config = load_config(args)
    if args.out:
        ConfigManager().save(config, args.out)
    else:
        print(dump(config), end="")


def _add_common(parser: argparse.ArgumentParser, out_required: bool = True) -> None:
    parser.add_argument("-c", "--config", help="Config file (key = value or .yaml)")
    parser.add_argument(
        "-o", "--out", required=out_required, help="Output file"
    )
    parser.add_argument("--seed", type=int, help="Override the RNG seed")
    parser.add_argument("-j", "--workers", type=int, help="Worker threads for simulations")
    parser.add_argument("--sigma-db", help="Comma-separated sigma_dB list (converge)")
    parser.add_argument("--p-grid-dbm", help="Comma-separated transmit powers in dBm (fig-energy)")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for progress, -vv for detail"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poissonize",
        description="Poissonize: typical-user SINR laws of Poisson and hexagonal cellular networks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    commands = [
        ("fig-sir", "Simulated and analytic SIR CDF", cmd_fig_sir),
        ("fig-sinr", "SINR CDFs of hexagonal and Poisson networks", cmd_fig_sinr),
        ("fig-energy", "Mean energy efficiency against transmit power", cmd_fig_energy),
        ("converge", "K-S convergence sweep over sigma_dB", cmd_converge),
    ]
    for name, help_text, func in commands:
        sub = subparsers.add_parser(name, help=help_text)
        _add_common(sub)
        sub.set_defaults(func=func)

    show_parser = subparsers.add_parser("show-config", help="Print the effective configuration")
    _add_common(show_parser, out_required=False)
    show_parser.set_defaults(func=cmd_show_config)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    configure_logging(args.verbose)
    try:
        args.func(args)
    except (PoissonizeError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return exit_code(e)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
