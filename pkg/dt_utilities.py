"""
Dowker-Thistlethwaite codes and knot tables.

A DT code of a knot with n crossings lists, for i = 1..n, the even passage label paired with the odd passage
2i - 1. A negative entry marks an even passage that goes over. The planar realization is found with networkx:
every crossing becomes a wheel whose rim fixes the cyclic order of its four ports, so a planar embedding of
the gadget graph is a realization of the code.
"""
from dataclasses import dataclass

import networkx as nx

from exceptions import InputError, ParseError, RealizationError
from link_utilities import LinkDiagram, MontesinosDescriptor, montesinos_to_diagram, parse_montesinos
from log_config import configure_logger

logger = configure_logger(__name__)


@dataclass(frozen=True)
class DTCode:
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        n = len(entries)
        if any(e == 0 or e % 2 for e in entries):
            raise InputError(f"DT code entries must be nonzero even integers: {entries}")
        if sorted(abs(e) for e in entries) != list(range(2, 2 * n + 1, 2)):
            raise InputError(f"DT code {entries} is not a permutation of 2, 4, ..., {2 * n}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_text(cls, text):
        try:
            return cls(tuple(int(token) for token in text.replace(",", " ").split()))
        except ValueError:
            raise ParseError("DT codes are whitespace separated even integers", text, 0)

    @property
    def crossing_count(self):
        return len(self.entries)

    def __str__(self):
        return " ".join(str(e) for e in self.entries)


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossings: int
    # a DTCode, or a MontesinosDescriptor for rows written in M(...) notation
    code: object

    def diagram(self):
        if isinstance(self.code, MontesinosDescriptor):
            return montesinos_to_diagram(self.code)
        return dt_to_diagram(self.code)


# Ports of a crossing in the cyclic order of the wheel rim.
_PORTS = ("in_odd", "in_even", "out_odd", "out_even")


def _gadget_graph(code):
    n = code.crossing_count
    # passage p lies on crossing passage_crossing[p]
    passage_crossing = {}
    for i, e in enumerate(code.entries):
        passage_crossing[2 * i + 1] = i
        passage_crossing[abs(e)] = i

    graph = nx.Graph()
    for i in range(n):
        hub = ("hub", i)
        rim = [("port", i, port) for port in _PORTS]
        for k, node in enumerate(rim):
            graph.add_edge(hub, node)
            graph.add_edge(node, rim[(k + 1) % 4])

    for arc in range(1, 2 * n + 1):
        start = arc
        end = arc % (2 * n) + 1
        start_port = "out_odd" if start % 2 else "out_even"
        end_port = "in_odd" if end % 2 else "in_even"
        middle = ("arc", arc)
        graph.add_edge(("port", passage_crossing[start], start_port), middle)
        graph.add_edge(middle, ("port", passage_crossing[end], end_port))
    return graph


def dt_to_diagram(code):
    """
    Planar diagram of a DT code.

    Arc k runs from passage k to passage k + 1 (arc 2n closes the knot), so the arcs entering and leaving
    passage p are (p - 2) mod 2n + 1 and p.

    Args:
        code: DTCode or its text form

    Raises:
        RealizationError: when the code has no planar realization
    """
    if isinstance(code, str):
        code = DTCode.from_text(code)
    n = code.crossing_count
    if n == 0:
        return LinkDiagram.unknot()

    planar, embedding = nx.check_planarity(_gadget_graph(code))
    if not planar:
        raise RealizationError(f"DT code {code} is not realizable")

    def arc_in(p):
        return (p - 2) % (2 * n) + 1

    crossings = []
    for i, e in enumerate(code.entries):
        odd, even = 2 * i + 1, abs(e)
        labels = {"in_odd": arc_in(odd), "out_odd": odd, "in_even": arc_in(even), "out_even": even}
        ring = [node for node in reversed(list(embedding.neighbors_cw_order(("hub", i))))]
        ports = [node[2] for node in ring]
        under_in = "in_even" if e > 0 else "in_odd"
        shift = ports.index(under_in)
        ports = ports[shift:] + ports[:shift]
        crossings.append(tuple(labels[port] for port in ports))

    diagram = LinkDiagram(tuple(crossings), 0)
    logger.debug(f"DT {code} -> {diagram}")
    return diagram


def read_knot_table(path):
    """
    Read a knot table file.

    Each non-empty line is ``<name> <crossing count> <dt entries...>`` or ``<name> <crossing count> M(...)`` for a
    knot given by its Montesinos descriptor; '#' starts a comment.

    Args:
        path: the table file

    Returns:
        list of KnotRecord, in file order

    Raises:
        FileNotFoundError: when the file does not exist
        ParseError: when a line is malformed
    """
    records = []
    with open(path, encoding="utf-8") as table:
        for number, line in enumerate(table, start=1):
            content = line.split("#", 1)[0].strip()
            if not content:
                continue
            tokens = content.split()
            if len(tokens) < 3:
                raise ParseError(f"line {number} needs a name, a crossing count and a code", line.rstrip("\n"), 0)
            name = tokens[0]
            try:
                crossings = int(tokens[1])
            except ValueError:
                raise ParseError(f"line {number}: crossing count must be an integer", line.rstrip("\n"),
                                 line.index(tokens[1]))
            code_text = content.split(None, 2)[2]
            if code_text.startswith("M"):
                code = parse_montesinos(code_text)
            else:
                try:
                    code = DTCode(tuple(int(token) for token in tokens[2:]))
                except ValueError as error:
                    raise ParseError(f"line {number}: {error}", line.rstrip("\n"), line.index(tokens[2]))
                if crossings != code.crossing_count:
                    raise ParseError(f"line {number}: {name} declares {crossings} crossings but its code has "
                                     f"{code.crossing_count}", line.rstrip("\n"), line.index(tokens[1]))
            records.append(KnotRecord(name, crossings, code))
    logger.debug(f"read {len(records)} knots from {path}")
    return records
