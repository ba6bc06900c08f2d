"""
Command line front end.

    jcarray single   --config run.json [--out spectrum.csv] [--format csv|json]
    jcarray array    --config run.json ...
    jcarray bands    --config run.json ...
    jcarray disorder --config run.json [--seed 7] [--threads 4] ...

Exit status: 0 on success, 2 for configuration errors, 3 for computation
errors, 4 for I/O errors.
"""

# =============================================================================
# Imports
# =============================================================================
import argparse
import sys

from . import __version__
from .config import MODES, OUTPUT_FORMATS, loadConfig
from .pyjcarray import pyJCArray
from .utilities import ComputationError, Error, OutputError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTATION = 3
EXIT_IO = 4


def buildParser():
    parser = argparse.ArgumentParser(
        prog="jcarray",
        description="Single-photon transport through waveguide-coupled Jaynes-Cummings arrays.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="mode", required=True)
    helps = {
        "single": "transmission/reflection spectrum of one site",
        "array": "spectrum of a finite periodic array",
        "bands": "forbidden bands of the infinite lattice",
        "disorder": "mean spectrum over position-disorder realizations",
    }
    for mode in MODES:
        sub = subparsers.add_parser(mode, help=helps[mode])
        sub.add_argument("--config", required=True, help="JSON run description")
        sub.add_argument("--out", default=None, help="data table path (overrides output_path)")
        sub.add_argument(
            "--format", choices=OUTPUT_FORMATS, default=None, help="data table format"
        )
        sub.add_argument(
            "--seed", type=int, default=None, help="master seed override (disorder only)"
        )
        sub.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker threads per process; does not change the output",
        )
        sub.add_argument("--print-timing", action="store_true", help="print solve timing")
        sub.add_argument(
            "--print-level", type=int, default=0, help="0 is silent, >0 prints summaries"
        )
    return parser


def applyOverrides(config, args):
    """Apply the command line overrides to a parsed RunConfig."""
    changes = {}
    if args.out is not None:
        changes["output_path"] = args.out
    if args.format is not None:
        changes["output_format"] = args.format
    if args.seed is not None:
        if config.disorder is None:
            changes["warnings"] = config.warnings + (
                f"--seed is ignored in mode '{config.mode}'.",
            )
        else:
            changes["disorder"] = config.disorder.replace(seed=args.seed).validate()
    config = config.replace(**changes)
    if config.output_path is None:
        config = config.replace(output_path=f"{config.mode}.{config.output_format}")
    return config


def _report(error, stage):
    print(f"jcarray: {type(error).__name__} during {stage}", file=sys.stderr)
    print(str(error), file=sys.stderr)


def main(argv=None):
    """
    Run one computation described by a configuration file.

    Returns
    -------
    status : int
        Process exit status.
    """
    args = buildParser().parse_args(argv)

    try:
        config = applyOverrides(loadConfig(args.config, mode=args.mode), args)
        front = pyJCArray.fromConfig(
            config,
            options={"printLevel": args.print_level, "printTiming": args.print_timing},
        )
        options = {"printLevel": args.print_level}
        if config.mode == "disorder":
            options["threads"] = max(1, args.threads)
        problem = front.createProblemFromConfig(config, options=options)
    except OutputError as e:
        _report(e, "configuration")
        return EXIT_IO
    except Error as e:
        # Configuration and parameter errors
        _report(e, "configuration")
        return EXIT_CONFIG

    try:
        problem.solve()
    except ComputationError as e:
        _report(e, f"{config.mode} computation")
        return EXIT_COMPUTATION
    except Error as e:
        _report(e, f"{config.mode} computation")
        return EXIT_CONFIG

    try:
        problem.writeTable(config.output_path, config.output_format)
    except OutputError as e:
        _report(e, "output")
        return EXIT_IO

    return EXIT_OK
