"""
Link and tangle model: continued fractions, Conway and Montesinos notation, rational tangle diagrams and
planar diagram (PD) codes.

Crossing convention: a crossing is a 4-tuple of arc labels in counterclockwise order. Slots 0 and 2 hold
the under-strand, slots 1 and 3 the over-strand; the tuple is only defined up to a rotation by two slots.
The A-smoothing joins slots (0, 1) and (2, 3), the B-smoothing joins (0, 3) and (1, 2).

Tangle convention: fractions count horizontal twists, so T(x) + T(n) = T(x + n) for integers n, T(0) has
the arcs NW-NE and SW-SE, T(oo) the arcs NW-SW and NE-SE, and 1/T is the reflection in the NW-SE diagonal.
T(+1) is the crossing whose A-smoothing is T(oo). A Montesinos link M(x_1, ..., x_n, e) is the numerator
closure of T(x_1) + ... + T(x_n) + T(e); with this choice M(-3) is the positive trefoil.
"""
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from exceptions import InputError, ParseError
from log_config import configure_logger

logger = configure_logger(__name__)


@dataclass(frozen=True)
class TangleFraction:
    """An extended rational p/q with gcd(p, q) = 1 and q >= 0; infinity is 1/0."""
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise InputError("0/0 is not a tangle fraction")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def of(cls, value):
        if isinstance(value, TangleFraction):
            return value
        if isinstance(value, int):
            return cls(value, 1)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        if isinstance(value, str):
            return parse_fraction(value)
        raise InputError(f"cannot read {value!r} as a tangle fraction")

    @property
    def is_infinite(self):
        return self.q == 0

    @property
    def is_integer(self):
        return self.q == 1

    def inverse(self):
        return TangleFraction(self.q, self.p)

    def add_integer(self, n):
        if self.is_infinite:
            return self
        return TangleFraction(self.p + n * self.q, self.q)

    def as_fraction(self):
        if self.is_infinite:
            raise InputError("infinity has no rational value")
        return Fraction(self.p, self.q)

    def __str__(self):
        if self.is_infinite:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


INFINITY = TangleFraction(1, 0)


def parse_fraction(text):
    """Read 'p/q', an integer, or 'inf'."""
    cleaned = text.strip()
    if cleaned.lower() in ("inf", "infinity", "oo", "1/0"):
        return INFINITY
    match = re.fullmatch(r"([+-]?\d+)(?:\s*/\s*([+-]?\d+))?", cleaned)
    if not match:
        raise ParseError("expected a fraction p/q", text, 0)
    p = int(match.group(1))
    q = int(match.group(2)) if match.group(2) is not None else 1
    if p == 0 and q == 0:
        raise ParseError("0/0 is not a fraction", text, 0)
    return TangleFraction(p, q)


@dataclass(frozen=True)
class ContinuedFraction:
    entries: tuple

    def __str__(self):
        return " ".join(str(c) for c in self.entries)


def cf_value(entries):
    """
    Value of [[c_1, ..., c_n]] = c_n + 1/[[c_1, ..., c_{n-1}]], with 1/0 standing for infinity.

    Args:
        entries: sequence of integers, or a ContinuedFraction

    Returns:
        TangleFraction
    """
    if isinstance(entries, ContinuedFraction):
        entries = entries.entries
    entries = list(entries)
    if not entries:
        raise InputError("a continued fraction needs at least one entry")
    value = TangleFraction(entries[0], 1)
    for c in entries[1:]:
        value = value.inverse().add_integer(c)
    return value


def cf_from_fraction(f):
    """
    A continued fraction expansion of f.

    Fractions with |f| > 1 use the shortest expansion whose entries all carry the sign of f; proper fractions
    get a trailing 0 (the inversion), 0 is [0] and infinity is [0, 0].
    """
    f = TangleFraction.of(f)
    if f.is_infinite:
        return [0, 0]
    if f.p == 0:
        return [0]
    if abs(f.p) < f.q:
        return cf_from_fraction(f.inverse()) + [0]
    sign = 1 if f.p > 0 else -1
    p, q = abs(f.p), f.q
    quotients = []
    while q:
        a, r = divmod(p, q)
        quotients.append(a)
        p, q = q, r
    return [sign * a for a in reversed(quotients)]


_SIGNED_INT = re.compile(r"[+-]?\d+")


def parse_conway(text):
    """
    Parse the Conway notation of a Montesinos link, e.g. "(213,-4,22,40)".

    Groups are separated by commas. A group is either a run of digits with an optional leading minus sign
    (one entry per digit, the sign applies to every entry) or whitespace separated signed integers for entries
    of more than one digit. A last group of the form "e0" is the integer part e.

    Returns:
        (list of ContinuedFraction, integer part)
    """
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if not stripped.startswith("("):
        raise ParseError("Conway notation must start with '('", text, offset)
    if not stripped.endswith(")"):
        raise ParseError("Conway notation must end with ')'", text, offset + len(stripped) - 1)

    body = stripped[1:-1]
    position = offset + 1
    groups = []
    for raw in body.split(","):
        group = raw.strip()
        group_position = position + (len(raw) - len(raw.lstrip()))
        if not group:
            raise ParseError("empty group", text, group_position)
        if re.search(r"\s", group):
            entries = []
            for token in group.split():
                if not _SIGNED_INT.fullmatch(token):
                    raise ParseError(f"bad entry {token!r}", text, group_position + group.index(token))
                entries.append(int(token))
        else:
            match = re.fullmatch(r"([+-]?)(\d+)", group)
            if not match:
                bad = next((i for i, ch in enumerate(group) if not (ch.isdigit() or (i == 0 and ch in "+-"))), 0)
                raise ParseError("groups are digits with an optional sign", text, group_position + bad)
            sign = -1 if match.group(1) == "-" else 1
            entries = [sign * int(digit) for digit in match.group(2)]
        groups.append(entries)
        position += len(raw) + 1

    integer_part = 0
    if groups and len(groups[-1]) == 2 and groups[-1][-1] == 0:
        integer_part = groups.pop()[0]
    return [ContinuedFraction(tuple(g)) for g in groups], integer_part


@dataclass(frozen=True)
class MontesinosDescriptor:
    """M(q_1/p_1, ..., q_n/p_n, e) with 0 < |q_i| < p_i."""
    factors: tuple
    integer_part: int = 0

    def __post_init__(self):
        factors = tuple(Fraction(f) for f in self.factors)
        for f in factors:
            if not 0 < abs(f) < 1:
                raise InputError(f"Montesinos factor {f} must satisfy 0 < |q| < p")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "integer_part", int(self.integer_part))

    def __str__(self):
        inner = ",".join(f"{f.numerator}/{f.denominator}" for f in self.factors)
        return f"M({inner};{self.integer_part})"


def descriptor_from_values(values, integer_part=0):
    """Build a descriptor from arbitrary rational summands; integer parts fold into e."""
    factors = []
    e = integer_part
    for value in values:
        value = Fraction(value)
        whole = int(value)
        e += whole
        if value != whole:
            factors.append(value - whole)
    return MontesinosDescriptor(tuple(factors), e)


def parse_montesinos(text):
    """Read "M(q1/p1,...,qn/pn;e)" or "M(q1/p1,...,qn/pn,e)" (a trailing integer item is e)."""
    match = re.fullmatch(r"\s*M\s*\((.*)\)\s*", text)
    if not match:
        raise ParseError("expected M(...)", text, 0)
    inner = match.group(1)
    inner_start = match.start(1)
    parts = inner.split(";")
    if len(parts) > 2:
        raise ParseError("more than one ';'", text, inner_start + inner.index(";", inner.index(";") + 1))

    e = 0
    if len(parts) == 2:
        try:
            e = int(parts[1].strip())
        except ValueError:
            raise ParseError("integer part must be an integer", text, inner_start + len(parts[0]) + 1)

    values = []
    items = [item for item in parts[0].split(",")]
    position = inner_start
    parsed = []
    for item in items:
        if item.strip():
            try:
                parsed.append((parse_fraction(item), position))
            except ParseError:
                raise ParseError(f"bad Montesinos entry {item.strip()!r}", text, position)
        position += len(item) + 1
    if len(parts) == 1 and parsed and parsed[-1][0].is_integer:
        e += parsed.pop()[0].p
    for value, item_position in parsed:
        if value.is_infinite:
            raise ParseError("an infinite tangle is not a Montesinos entry", text, item_position)
        values.append(value.as_fraction())
    return descriptor_from_values(values, e)


def conway_to_descriptor(tangles, integer_part=0):
    """Each Conway group c_1...c_k contributes the Montesinos entry 1/[[c_1, ..., c_k]]."""
    values = []
    for cf in tangles:
        inverse = cf_value(cf).inverse()
        if inverse.is_infinite:
            raise InputError(f"Conway group {cf} closes to an infinite tangle")
        values.append(inverse.as_fraction())
    return descriptor_from_values(values, integer_part)


def montesinos_normalize(m):
    """Move every factor into (0, 1): q/p -> (q + p)/p and e -> e - 1 whenever q < 0."""
    factors = []
    e = m.integer_part
    for f in m.factors:
        if f < 0:
            f += 1
            e -= 1
        factors.append(f)
    return MontesinosDescriptor(tuple(factors), e)


def montesinos_determinant(m):
    """|p_1 ... p_n (e + q_1/p_1 + ... + q_n/p_n)|"""
    value = prod(f.denominator for f in m.factors) * (m.integer_part + sum(m.factors, Fraction(0)))
    return abs(int(value))


@dataclass(frozen=True)
class LinkDiagram:
    """
    Unoriented planar diagram: crossing 4-tuples (see the module docstring) plus crossingless loops.

    Every arc label occurs exactly twice among the crossing slots.
    """
    crossings: tuple
    free_loops: int = 0

    def __post_init__(self):
        crossings = tuple(tuple(int(label) for label in c) for c in self.crossings)
        for c in crossings:
            if len(c) != 4:
                raise InputError(f"crossing {c} does not have 4 arcs")
        counts = Counter(label for c in crossings for label in c)
        odd = sorted(label for label, n in counts.items() if n != 2)
        if odd:
            raise InputError(f"arcs {odd} do not occur exactly twice")
        if not crossings and self.free_loops < 1:
            raise InputError("the empty diagram is not a link")
        object.__setattr__(self, "crossings", crossings)

    @classmethod
    def unknot(cls):
        return cls((), 1)

    @classmethod
    def unlink(cls, n):
        return cls((), n)

    @property
    def crossing_count(self):
        return len(self.crossings)

    def labels(self):
        return sorted({label for c in self.crossings for label in c})

    def max_label(self):
        return max((label for c in self.crossings for label in c), default=0)

    def occurrences(self):
        occ = {}
        for i, c in enumerate(self.crossings):
            for j, label in enumerate(c):
                occ.setdefault(label, []).append((i, j))
        return occ

    def compacted(self):
        """Relabel arcs 1, 2, ... in order of first appearance."""
        mapping = {}
        for c in self.crossings:
            for label in c:
                if label not in mapping:
                    mapping[label] = len(mapping) + 1
        return LinkDiagram(tuple(tuple(mapping[l] for l in c) for c in self.crossings), self.free_loops)

    def relabeled(self, offset):
        return LinkDiagram(tuple(tuple(l + offset for l in c) for c in self.crossings), self.free_loops)

    def __str__(self):
        body = ", ".join("X[" + ",".join(map(str, c)) + "]" for c in self.crossings)
        loops = f" + {self.free_loops} loop(s)" if self.free_loops else ""
        return f"PD[{body}]{loops}"


def _glue(crossings, pairs):
    """
    Identify open arc ends pairwise and return the resulting diagram.

    Each pair names two labels whose free ends get joined. Joining the two ends of one arc closes a
    crossingless loop.
    """
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    loops = 0
    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx == ry:
            loops += 1
        else:
            parent[ry] = rx
    glued = tuple(tuple(find(label) for label in c) for c in crossings)
    return glued, loops, find


class Tangle:
    """A 4-ended tangle diagram with boundary arcs NW, NE, SW, SE."""

    def __init__(self, crossings, nw, ne, sw, se, free_loops=0):
        self.crossings = tuple(tuple(c) for c in crossings)
        self.boundary = {"NW": nw, "NE": ne, "SW": sw, "SE": se}
        self.free_loops = free_loops

    @classmethod
    def zero(cls):
        return cls((), 1, 1, 2, 2)

    @classmethod
    def infinity(cls):
        return cls((), 1, 2, 1, 2)

    @classmethod
    def twist(cls, sign):
        nw, ne, sw, se = 1, 2, 3, 4
        if sign > 0:
            return cls(((nw, sw, se, ne),), nw, ne, sw, se)
        return cls(((sw, se, ne, nw),), nw, ne, sw, se)

    @classmethod
    def integer(cls, n):
        if n == 0:
            return cls.zero()
        sign = 1 if n > 0 else -1
        tangle = cls.twist(sign)
        for _ in range(abs(n) - 1):
            tangle = tangle + cls.twist(sign)
        return tangle

    @classmethod
    def from_fraction(cls, f):
        f = TangleFraction.of(f)
        if f.is_infinite:
            return cls.infinity()
        return rational_tangle(cf_from_fraction(f))

    def max_label(self):
        labels = [label for c in self.crossings for label in c] + list(self.boundary.values())
        return max(labels)

    def relabeled(self, offset):
        b = self.boundary
        return Tangle(tuple(tuple(l + offset for l in c) for c in self.crossings),
                      b["NW"] + offset, b["NE"] + offset, b["SW"] + offset, b["SE"] + offset, self.free_loops)

    def __add__(self, other):
        other = other.relabeled(self.max_label())
        pairs = [(self.boundary["NE"], other.boundary["NW"]), (self.boundary["SE"], other.boundary["SW"])]
        crossings, loops, find = _glue(self.crossings + other.crossings, pairs)
        return Tangle(crossings, find(self.boundary["NW"]), find(other.boundary["NE"]),
                      find(self.boundary["SW"]), find(other.boundary["SE"]),
                      self.free_loops + other.free_loops + loops)

    def invert(self):
        """Reflection in the NW-SE diagonal; the fraction x becomes 1/x."""
        b = self.boundary
        return Tangle(tuple((c[0], c[3], c[2], c[1]) for c in self.crossings),
                      b["NW"], b["SW"], b["NE"], b["SE"], self.free_loops)

    def _close(self, pairs):
        crossings, loops, _ = _glue(self.crossings, pairs)
        return LinkDiagram(crossings, self.free_loops + loops).compacted()

    def numerator_closure(self):
        b = self.boundary
        return self._close([(b["NW"], b["NE"]), (b["SW"], b["SE"])])

    def denominator_closure(self):
        b = self.boundary
        return self._close([(b["NW"], b["SW"]), (b["NE"], b["SE"])])


def rational_tangle(entries):
    """The tangle c_1 c_2 ... c_n: start with c_1 twists, then invert and add c_k twists for each next entry."""
    entries = list(entries.entries if isinstance(entries, ContinuedFraction) else entries)
    if not entries:
        raise InputError("a rational tangle needs at least one entry")
    tangle = Tangle.integer(entries[0])
    for c in entries[1:]:
        tangle = tangle.invert() + Tangle.integer(c)
    return tangle


def rational_link_diagram(f):
    """Numerator closure of T(f): the 2-bridge link with determinant |p| for f = p/q."""
    return Tangle.from_fraction(f).numerator_closure()


def montesinos_tangle(m):
    tangle = Tangle.integer(m.integer_part)
    for f in reversed(m.factors):
        tangle = Tangle.from_fraction(f) + tangle
    return tangle


def montesinos_to_diagram(m):
    diagram = montesinos_tangle(m).numerator_closure()
    logger.debug(f"{m}: {diagram.crossing_count} crossings")
    return diagram


def mirror(d):
    """Exchange over and under at every crossing."""
    return LinkDiagram(tuple((c[1], c[2], c[3], c[0]) for c in d.crossings), d.free_loops)


def switch_crossing(d, index):
    crossings = list(d.crossings)
    a, b, c, e = crossings[index]
    crossings[index] = (b, c, e, a)
    return LinkDiagram(tuple(crossings), d.free_loops)


def smooth(d, index, kind):
    """Remove crossing `index` with its A- or B-smoothing."""
    x = d.crossings[index]
    rest = d.crossings[:index] + d.crossings[index + 1:]
    if kind == "A":
        pairs = [(x[0], x[1]), (x[2], x[3])]
    elif kind == "B":
        pairs = [(x[0], x[3]), (x[1], x[2])]
    else:
        raise InputError(f"unknown smoothing {kind!r}")
    crossings, loops, _ = _glue(rest, pairs)
    return LinkDiagram(crossings, d.free_loops + loops)


def find_curl(d):
    """
    First crossing with an arc joining two adjacent slots.

    Returns:
        (crossing index, first slot of the curl, curl sign) or None; slots (0, 1) and (2, 3) make a
        positive curl, (1, 2) and (3, 0) a negative one
    """
    for i, c in enumerate(d.crossings):
        for j in range(4):
            if c[j] == c[(j + 1) % 4]:
                return i, j, (1 if j % 2 == 0 else -1)
    return None


def remove_curl(d, index, slot):
    x = d.crossings[index]
    rest = d.crossings[:index] + d.crossings[index + 1:]
    crossings, loops, _ = _glue(rest, [(x[(slot + 2) % 4], x[(slot + 3) % 4])])
    return LinkDiagram(crossings, d.free_loops + loops)


def split_components(d):
    """
    Split a diagram into crossing-connected pieces.

    Returns:
        (list of LinkDiagram without free loops, number of free loops)
    """
    occ = d.occurrences()
    seen = set()
    pieces = []
    for start in range(d.crossing_count):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        members = []
        while stack:
            i = stack.pop()
            members.append(i)
            for label in d.crossings[i]:
                for k, _ in occ[label]:
                    if k not in seen:
                        seen.add(k)
                        stack.append(k)
        members.sort()
        pieces.append(LinkDiagram(tuple(d.crossings[i] for i in members), 0))
    return pieces, d.free_loops


def components(d, reverse=()):
    """
    Oriented traversal of the link components.

    Components are ordered by their smallest arc label. Each starts by entering the crossing slot where that
    label first occurs and runs forward; components whose index is listed in `reverse` run backwards.

    Returns:
        list of components, each a list of (crossing index, entering slot)
    """
    occ = d.occurrences()
    visited = set()
    result = []
    for label in sorted(occ):
        if label in visited:
            continue
        start = min(occ[label])
        walk = []
        i, j = start
        while True:
            walk.append((i, j))
            visited.add(d.crossings[i][j])
            exit_slot = (j + 2) % 4
            out_label = d.crossings[i][exit_slot]
            first, second = occ[out_label]
            i, j = second if first == (i, exit_slot) else first
            if (i, j) == start:
                break
        result.append(walk)
    reverse = set(reverse)
    for index in reverse:
        if not 0 <= index < len(result):
            raise InputError(f"no link component {index}")
        result[index] = [(i, (j + 2) % 4) for i, j in reversed(result[index])]
    return result


def crossing_signs(d, reverse=()):
    """Sign of every crossing under the orientation chosen by components()."""
    under = {}
    over = {}
    for walk in components(d, reverse):
        for i, j in walk:
            if j % 2 == 0:
                under[i] = j
            else:
                over[i] = j
    return [1 if over[i] == (under[i] + 3) % 4 else -1 for i in range(d.crossing_count)]


def writhe(d, reverse=()):
    return sum(crossing_signs(d, reverse))


def link_component_count(d):
    return len(components(d)) + d.free_loops


def disjoint_union(a, b):
    shifted = b.relabeled(a.max_label())
    return LinkDiagram(a.crossings + shifted.crossings, a.free_loops + b.free_loops)


def connected_sum(a, b, arc_a=None, arc_b=None):
    """
    Connected sum along arc `arc_a` of a and arc `arc_b` of b (smallest labels by default).

    A crossingless summand is a union of unknots; one of them is absorbed as the unit of the sum.
    """
    if not a.crossings:
        return LinkDiagram(b.crossings, b.free_loops + a.free_loops - 1)
    if not b.crossings:
        return LinkDiagram(a.crossings, a.free_loops + b.free_loops - 1)

    x = arc_a if arc_a is not None else min(a.labels())
    offset = a.max_label()
    shifted = b.relabeled(offset)
    y = (arc_b if arc_b is not None else min(b.labels())) + offset
    fresh = shifted.max_label() + 1

    a_occ = a.occurrences().get(x)
    b_occ = shifted.occurrences().get(y)
    if a_occ is None or b_occ is None:
        raise InputError("connected sum needs an existing arc on each diagram")

    a_crossings = [list(c) for c in a.crossings]
    i, j = a_occ[1]
    a_crossings[i][j] = fresh
    b_crossings = [list(c) for c in shifted.crossings]
    i, j = b_occ[0]
    b_crossings[i][j] = x
    i, j = b_occ[1]
    b_crossings[i][j] = fresh
    crossings = tuple(tuple(c) for c in a_crossings + b_crossings)
    return LinkDiagram(crossings, a.free_loops + b.free_loops).compacted()


def insert_twists(d, index, twists):
    """
    Replace crossing `index` by a twist region of 1 + twists crossings of the same kind.

    Read with slots 0, 1, 2, 3 as NW, SW, SE, NE every crossing is T(+1), so the region is T(1 + twists).
    Inserting 5 or -5 twists is a 5-move.
    """
    x = d.crossings[index]
    rest = d.crossings[:index] + d.crossings[index + 1:]
    tangle = Tangle.integer(1 + twists).relabeled(d.max_label())
    b = tangle.boundary
    pairs = [(x[0], b["NW"]), (x[1], b["SW"]), (x[2], b["SE"]), (x[3], b["NE"])]
    crossings, loops, _ = _glue(rest + tangle.crossings, pairs)
    return LinkDiagram(crossings, d.free_loops + tangle.free_loops + loops).compacted()


def canonical_code(d):
    """
    Canonical key of a connected diagram up to relabelling and the rotation of crossings by two slots.

    For every starting half-edge the diagram is explored breadth first; each crossing is read from the slot
    through which it was reached and arc labels are renumbered in order of first appearance. The least code
    over all starting half-edges is returned.

    Raises:
        InputError: when the diagram has more than one piece; split it with split_components() first
    """
    occ = d.occurrences()
    best = None
    for start in range(d.crossing_count):
        for start_slot in range(4):
            code = _bfs_code(d, occ, start, start_slot)
            if len(code) < d.crossing_count:
                raise InputError(f"canonical_code needs a connected diagram, got {d}")
            if best is None or code < best:
                best = code
    if d.free_loops > (0 if d.crossings else 1):
        raise InputError(f"canonical_code needs a connected diagram, got {d}")
    return (best or ()), d.free_loops


def _bfs_code(d, occ, start, start_slot):
    entry = {start: start_slot}
    order = [start]
    names = {}
    code = []
    head = 0
    while head < len(order):
        i = order[head]
        head += 1
        slot = entry[i]
        c = d.crossings[i]
        row = [slot % 2]
        for step in range(4):
            s = (slot + step) % 4
            label = c[s]
            if label not in names:
                names[label] = len(names) + 1
            row.append(names[label])
            for k, t in occ[label]:
                if k not in entry:
                    entry[k] = t
                    order.append(k)
        code.append(tuple(row))
    return tuple(code)
