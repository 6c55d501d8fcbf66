""" cli module - the pqc-randomness command line

    pqc-randomness express  --ansatz 1 --topology rin --topology st --qubits 4..8 --layers 1..5
    pqc-randomness entangle --qubits 8 --layers 1..3 --order 1 --out entanglement.csv
    pqc-randomness tdesign  --topology lin --qubits 5 --layers 1 --t 2 --reps 20
    pqc-randomness sweep    --config experiment.ini --profile entanglement --quantity all
    pqc-randomness haar-ref --qubits 3..5 --samples 20000

Every flag overrides the matching experiment.* field of the experiment file; fields set by neither use
the namespace defaults.  With --out, rows already in the file are skipped and new rows are appended, so
an interrupted sweep can be resumed by running the same command again.  Without --out rows are printed
to stdout as CSV.

Exit codes: 0 when every row succeeded, 2 when some rows failed, 1 when the run was aborted.
"""

# Standard Library Imports
import argparse
import sys
from typing import Any, Dict, List, Optional

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.config_object import Config
from pqc_randomness.config_reader import parse_int_range, parse_interval
from pqc_randomness.environment import Environment
from pqc_randomness.errors import ConfigError, PQCError
from pqc_randomness.harness import (FORMATS, QuantityKind, emit_results, existing_keys, load_experiment_config,
                                    run_sweep, summarize_repetitions, write_csv)

EXIT_ABORTED = 1

# subcommand -> the quantity it measures; sweep and haar-ref take --quantity
_COMMAND_QUANTITY = {
    "express": QuantityKind.EXPRESSIBILITY.value,
    "entangle": QuantityKind.ENTANGLEMENT.value,
    "tdesign": QuantityKind.TDESIGN.value,
}


class ArgumentParser(argparse.ArgumentParser):
    """ an argparse parser that raises ConfigError instead of exiting, so usage errors exit with 1 """

    def error(self, message: str):
        self.print_usage(sys.stderr)
        logger.error(f"command line: {message}")
        raise ConfigError(message, "command line")


def _range_type(text: str):
    try:
        return parse_int_range(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _interval_type(text: str):
    try:
        return parse_interval(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    families = parser.add_argument_group("circuit families")
    families.add_argument("--ansatz", action="append", choices=["1", "2", "A1", "A2"], help="ansatz; repeatable")
    families.add_argument("--topology", action="append", type=str.lower, choices=["nc", "lin", "rin", "st", "ata"],
                          help="connectivity; repeatable")
    families.add_argument("--qubits", type=_range_type, metavar="a..b", help="qubit counts, e.g. 4 or 3..8")
    families.add_argument("--layers", type=_range_type, metavar="a..b", help="layer counts, e.g. 1..5")
    families.add_argument("--spec", action="append", metavar="A1:RIN:6:3",
                          help="an explicit circuit family; repeatable, replaces the range product")

    sampling = parser.add_argument_group("sampling")
    sampling.add_argument("--samples", type=int, metavar="N", help="states per estimate (even)")
    sampling.add_argument("--bins", type=int, metavar="B", help="histogram bins for expressibility")
    sampling.add_argument("--order", type=int, metavar="M", help="Scott order m")
    sampling.add_argument("--t", type=int, metavar="T", help="t-design moment order")
    sampling.add_argument("--reps", type=int, metavar="R", help="repetitions per row; 0 picks 20 for tdesign, else 1")
    sampling.add_argument("--seed", type=int, metavar="S", help="master seed")
    sampling.add_argument("--interval", type=_interval_type, metavar="lo:hi", help="parameter interval, e.g. -pi:pi")

    output = parser.add_argument_group("output")
    output.add_argument("--out", metavar="PATH", help="result file; existing rows are kept and skipped")
    output.add_argument("--format", choices=FORMATS, help="result format; inferred from --out otherwise")
    output.add_argument("--workers", metavar="K", help="worker processes or 'auto'")

    setup = parser.add_argument_group("experiment file")
    setup.add_argument("--config", metavar="PATH", help="experiment file (default $PQC_CONFIG_LOCATION or experiment.ini)")
    setup.add_argument("--profile", help="experiment file section (default $PQC_PROFILE or DEFAULT)")
    setup.add_argument("--log-level", help="logger level (default $PQC_LOG_LEVEL or INFO)")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="pqc-randomness",
        description="Expressibility, entanglement and t-design deviation of parameterized quantum circuits.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    commands = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)
    commands.required = True

    helps = {
        "express": "KL divergence of the circuit fidelity distribution from Haar",
        "entangle": "mean and deviation of the Scott measure Q_m",
        "tdesign": "t-design deviation E[F^t] - E_Haar[F^t]",
        "sweep": "any quantity, or 'all', over the configured families",
        "haar-ref": "the same quantities for Haar random states",
    }
    for name, text in helps.items():
        command = commands.add_parser(name, help=text, description=text)
        _add_common_arguments(command)
        if name in ("sweep", "haar-ref"):
            command.add_argument("--quantity", metavar="Q",
                                 help="expressibility, entanglement[:m], cue_gap[:m], tdesign[:t] or all")
    return parser


def overrides_from(args: argparse.Namespace) -> Dict[str, Any]:
    """ experiment.* field overrides from parsed arguments; None leaves the file value """
    quantity = _COMMAND_QUANTITY.get(args.command, getattr(args, "quantity", None))
    if args.command == "haar-ref" and quantity is None:
        quantity = "all"
    return {
        "ansatz": args.ansatz,
        "topology": args.topology,
        "qubits": args.qubits,
        "layers": args.layers,
        "specs": args.spec,
        "quantity": quantity,
        "order": args.order,
        "t": args.t,
        "n_states": args.samples,
        "n_bins": args.bins,
        "repetitions": args.reps,
        "seed": args.seed,
        "interval": args.interval,
        "workers": args.workers,
        "out": args.out,
        "format": args.format,
    }


def _log_summaries(rows) -> None:
    summary = summarize_repetitions(rows)
    for record in summary.itertuples(index=False):
        if record.repetitions > 1:
            logger.info(f"{record.spec} {record.quantity}: {record.mean:.6g} +- {record.std:.2g} over {record.repetitions} repetitions")


def main(argv: Optional[List[str]] = None) -> int:
    """ run one command; returns the process exit code """
    try:
        args = build_parser().parse_args(argv)
        environment = Environment(profile=args.profile, config_location=args.config, log_level=args.log_level)
        config = Config(environment)
        experiment, fields = load_experiment_config(config, overrides_from(args), haar=(args.command == "haar-ref"))

        out, fmt = fields["out"], fields["format"] or None
        skip = existing_keys(out, fmt) if out else frozenset()
        result = run_sweep(experiment, skip)

        if out:
            emit_results(result.rows, fmt, out, append=True)
        else:
            write_csv(result.rows, sys.stdout)
        _log_summaries(result.rows)
    except PQCError as e:
        logger.error(f"aborted: {e}")
        return EXIT_ABORTED

    if result.failures:
        logger.error(f"{len(result.failures)} of {len(result.rows) + len(result.failures)} rows failed")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
