#  This file contains the configuration and default values for the montesinos_probe.py application.
# It is used to set the various options for the application.
#
# The configuration options are set in the Config class. The command line parser copies its arguments into
# these attributes before any computation starts, and the library modules read them at call time.
import os


class Config:
    VERBOSE = False
    QUIET = False

    # Largest diagram the Kauffman bracket state sum will accept. The state sum visits all 2^c smoothings of a
    # diagram with c crossings, so each extra crossing doubles the running time. 24 crossings is roughly the limit
    # where a desk machine still answers within minutes.
    BRACKET_MAX_CROSSINGS = 24

    # Largest diagram the skein recursion for the Kauffman polynomial will accept. The recursion is exponential in
    # the number of crossings that have to be switched, with a memo cache making repeated sub-diagrams cheap.
    KAUFFMAN_MAX_CROSSINGS = 14

    # Probe the mirror image of every input diagram as well. Knot tables do not agree on mirroring conventions,
    # so a diagram is reported as matched when either it or its mirror image matches a normal form.
    PROBE_MIRROR = True

    # Run the Kauffman polynomial refinement after the Jones polynomial probe.
    REFINE = False

    # Tolerance for the floating point norm windows of the probe. Norms only decide which candidates are compared
    # exactly, so a tolerance that is too tight can only lose candidates, never produce a wrong match.
    NORM_TOLERANCE = 1e-9

    # Tolerance used when a rational link is matched against the four 5-move classes by its (v1, v3) pair.
    RATIONAL_CLASS_TOLERANCE = 1e-6

    # Breadth-first search limits of the rational tangle reduction. The depth counts rewriting levels, the entry
    # bound keeps continued fraction entries inside [-bound, bound] after a 5-move.
    TANGLE_SEARCH_DEPTH = 64
    TANGLE_ENTRY_BOUND = 7

    # Output format of the probe and the other subcommands: human, tsv or json.
    OUTPUT_FORMAT = "human"

    # Number of worker processes used when probing a knot table. 1 keeps everything in the current process.
    JOBS = 1

    # Default knot table of the probe subcommand. The shipped table holds the non-alternating 10 crossing Montesinos
    # knots; MONTESINOS_KNOT_TABLE points the probe and the table tests at a complete copy.
    KNOT_TABLE = os.environ.get("MONTESINOS_KNOT_TABLE",
                                os.path.join(os.path.dirname(os.path.abspath(__file__)), "Knot_Tables",
                                             "nonalternating_10.dt"))
