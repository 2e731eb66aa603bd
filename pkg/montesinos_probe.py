import argparse
import json
import sys

from colorama import Fore, Style, init
from pygments import highlight
from pygments.formatters import TerminalFormatter
from pygments.lexers import JsonLexer

from bracket_utilities import jones_invariants
from classify_utilities import classify_montesinos, reduce_rational_tangle
from config import Config
from cyclotomic_utilities import norms_table
from dt_utilities import DTCode, dt_to_diagram, read_knot_table
from exceptions import ConsistencyError, InputError
from kauffman_utilities import f_invariants, jones_rong_exponent
from link_utilities import (conway_to_descriptor, montesinos_to_diagram, parse_conway, parse_fraction,
                            parse_montesinos, rational_link_diagram)
from log_config import configure_logger
from probe_utilities import format_human, format_json, format_tsv, probe_table

# Initialize colorama
init(autoreset=True)

# Engine caps before any -mc flag; main() puts them back when a run does not pass -mc
DEFAULT_CROSSING_CAPS = (Config.BRACKET_MAX_CROSSINGS, Config.KAUFFMAN_MAX_CROSSINGS)


def parse_args(argv=None):
    # Options shared by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose",
                        action="store_true",
                        help="Enable verbose mode")
    common.add_argument("-q", "--quiet",
                        action="store_true",
                        help="Disable logging completely")
    common.add_argument("-f", "--format",
                        choices=("human", "tsv", "json"),
                        default="human",
                        help="Output format (optional)")
    common.add_argument("-mc", "--max-crossings",
                        type=int,
                        help="Crossing cap of both polynomial engines. Defaults to "
                             f"{Config.BRACKET_MAX_CROSSINGS} for the bracket and {Config.KAUFFMAN_MAX_CROSSINGS} "
                             "for the Kauffman recursion (optional)")
    common.add_argument("-nm", "--no-mirror",
                        action="store_true",
                        help="Do not probe the mirror image of the input (optional)")

    parser = argparse.ArgumentParser(
        description="Compute 5-move invariants of links and test whether a link can be a Montesinos link.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    link_help = "Link: M(q1/p1,...;e), Conway notation (213,-4,22,40), DT:4,6,2 or a fraction p/q"
    jones_parser = subparsers.add_parser("jones", parents=[common],
                                         help="Jones polynomial, determinant and the norms v1, v3")
    jones_parser.add_argument("link", help=link_help)

    kauffman_parser = subparsers.add_parser("kauffman", parents=[common],
                                            help="Kauffman polynomial values at the four 5-move points")
    kauffman_parser.add_argument("link", help=link_help)

    classify_parser = subparsers.add_parser("classify", parents=[common],
                                            help="Normal form of a Montesinos link")
    classify_parser.add_argument("montesinos", help="M(q1/p1,...;e) or Conway notation")

    reduce_parser = subparsers.add_parser("reduce-tangle", parents=[common],
                                          help="Basic tangle of a rational tangle")
    reduce_parser.add_argument("fraction", help="p/q, an integer or inf")

    probe_parser = subparsers.add_parser("probe", parents=[common],
                                         help="Run the Montesinos test on every knot of a table")
    probe_parser.add_argument("table",
                              nargs="?",
                              default=Config.KNOT_TABLE,
                              help="Knot table file, one '<name> <crossings> <dt code or M(...)>' per line (optional)")
    probe_parser.add_argument("-r", "--refine",
                              action="store_true",
                              help="Check the Jones matches with the Kauffman polynomial (optional)")
    probe_parser.add_argument("-j", "--jobs",
                              type=int,
                              default=1,
                              help="Number of worker processes (optional)")

    subparsers.add_parser("norms", parents=[common], help="Print the norms table")

    return parser.parse_args(argv)


def read_link(text):
    """
    Build a diagram from any of the link notations.

    Args:
        text: Montesinos string, Conway notation, "DT:" code or fraction

    Returns:
        LinkDiagram
    """
    stripped = text.strip()
    if stripped.startswith("M"):
        return montesinos_to_diagram(parse_montesinos(stripped))
    if stripped.startswith("("):
        return montesinos_to_diagram(conway_to_descriptor(*parse_conway(stripped)))
    if stripped.upper().startswith("DT:"):
        return dt_to_diagram(DTCode.from_text(stripped[3:]))
    return rational_link_diagram(parse_fraction(stripped))


def read_montesinos(text):
    stripped = text.strip()
    if stripped.startswith("("):
        return conway_to_descriptor(*parse_conway(stripped))
    return parse_montesinos(stripped)


def print_json(data):
    pretty_json_str = json.dumps(data, indent=4)
    if sys.stdout.isatty():
        print(highlight(pretty_json_str, JsonLexer(), TerminalFormatter()), end="")
    else:
        print(pretty_json_str)


def print_report(title, rows):
    """Print (key, value) rows in the selected output format."""
    if Config.OUTPUT_FORMAT == "json":
        print_json({key: value for key, value in rows})
    elif Config.OUTPUT_FORMAT == "tsv":
        for key, value in rows:
            print(f"{key}\t{value}")
    else:
        print("[" + Fore.YELLOW + title + Style.RESET_ALL + "]")
        for key, value in rows:
            print(f"    {key:<10} {Fore.LIGHTBLUE_EX}{value}{Style.RESET_ALL}")


def run_jones(args):
    inv = jones_invariants(read_link(args.link))
    print_report("JONES POLYNOMIAL", [
        ("V", str(inv.jones)),
        ("det", inv.det),
        ("v1", f"{inv.v1:.10f}"),
        ("v3", f"{inv.v3:.10f}"),
        ("vbar", str(inv.vbar)),
    ])


def run_kauffman(args):
    f = f_invariants(read_link(args.link))
    d = jones_rong_exponent(f.q1)
    print_report("KAUFFMAN POLYNOMIAL", [
        ("q1", str(f.q1)),
        ("q2", str(f.q2)),
        ("f1", str(f.f1.value)),
        ("f2", str(f.f2.value)),
        ("d", "-" if d is None else d),
    ])


def run_classify(args):
    nf = classify_montesinos(read_montesinos(args.montesinos))
    if Config.OUTPUT_FORMAT == "json":
        print_json({"form": nf.form, **nf.parameters()})
    elif Config.OUTPUT_FORMAT == "tsv":
        p = nf.parameters()
        print(f"{nf.form}\t{p.get('k', '-')}\t{p.get('l', '-')}")
    else:
        print(nf.describe())


def run_reduce_tangle(args):
    print(reduce_rational_tangle(parse_fraction(args.fraction)))


def run_probe(args):
    records = read_knot_table(args.table)
    reports = probe_table(records, Config.REFINE, Config.JOBS)
    if Config.OUTPUT_FORMAT == "json":
        print_json(json.loads(format_json(reports)))
    elif Config.OUTPUT_FORMAT == "tsv":
        for report in reports:
            print(format_tsv(report))
    else:
        for report in reports:
            print(format_human(report))


def run_norms(args):
    rows = [(f"{label} n={n}", f"{value:.12f}") for label, n, value in norms_table()]
    print_report("NORMS", rows)


LIBRARY_MODULES = ("cyclotomic_utilities", "link_utilities", "dt_utilities", "bracket_utilities",
                   "kauffman_utilities", "classify_utilities", "probe_utilities")

COMMANDS = {
    "jones": run_jones,
    "kauffman": run_kauffman,
    "classify": run_classify,
    "reduce-tangle": run_reduce_tangle,
    "probe": run_probe,
    "norms": run_norms,
}


def main(argv=None):
    args = parse_args(argv)

    # Update the config based on the parsed arguments
    Config.VERBOSE = args.verbose
    Config.QUIET = args.quiet
    Config.OUTPUT_FORMAT = args.format
    Config.PROBE_MIRROR = not args.no_mirror

    # If the user specified a crossing cap, it replaces both engine defaults
    if args.max_crossings:
        Config.BRACKET_MAX_CROSSINGS = args.max_crossings
        Config.KAUFFMAN_MAX_CROSSINGS = args.max_crossings
    else:
        Config.BRACKET_MAX_CROSSINGS, Config.KAUFFMAN_MAX_CROSSINGS = DEFAULT_CROSSING_CAPS

    Config.REFINE = args.command == "probe" and args.refine
    Config.JOBS = args.jobs if args.command == "probe" else 1

    # The library loggers were installed at import time, before the -v/-q flags were known
    for name in LIBRARY_MODULES:
        configure_logger(name)
    logger = configure_logger(__name__)
    logger.debug(f"running {args.command}")

    try:
        COMMANDS[args.command](args)
    except FileNotFoundError as e:
        print(f"{Fore.RED}[-] No such file: {e.filename}{Style.RESET_ALL}")
        return 1
    except InputError as e:
        print(f"{Fore.RED}[-] {e}{Style.RESET_ALL}")
        return 1
    except ConsistencyError as e:
        print(f"{Fore.RED}[-] internal consistency failure: {e}{Style.RESET_ALL}")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
