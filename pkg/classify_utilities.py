"""
Classification of Montesinos links up to 5-moves and mutation.

Rational tangles reduce to one of twelve basic tangles; a Montesinos link then falls into one of five normal forms:

    Form 1: M(1/2, ..., 1/2, -1/2, ..., -1/2) with k halves and l negative halves, l <= 4, k + l >= 3
    Form 2: M(1/2, ..., 1/2, 2/5, ..., 2/5) with k halves and l >= 1 tangles 2/5, k + l >= 3
    Form 3: connected sum of k Hopf links with l trivial split components
    Form 4: connected sum of n >= 1 figure-8 knots and k Hopf links with l trivial split components
    Form 5: M(1/2, 1/2, 1/2, 1)
"""
import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Optional

from bracket_utilities import jones_invariants, v1_closed, v2_closed, v3_closed, v4_closed, v5_closed
from config import Config
from cyclotomic_utilities import QuotientElement, UnitOrbitValue, complex_norm, doteq_canonical, eval_at_root
from exceptions import ConsistencyError, InputError
from kauffman_utilities import (EVAL_POINTS, APowerClass, KauffmanEvaluator, f1_closed, f2_closed, f3_closed,
                                f_invariants)
from link_utilities import (INFINITY, LinkDiagram, MontesinosDescriptor, Tangle, TangleFraction, cf_from_fraction,
                            cf_value, connected_sum, montesinos_determinant, montesinos_to_diagram,
                            rational_link_diagram)
from log_config import configure_logger

logger = configure_logger(__name__)

BASIC_TANGLES = tuple(TangleFraction.of(f) for f in (
    0, INFINITY, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(-3, 2),
    Fraction(2, 5), Fraction(5, 2)))


class RationalClass(enum.Enum):
    UNKNOT = "unknot"
    UNLINK = "2-component unlink"
    FIGURE_EIGHT = "figure-8 knot"
    HOPF = "Hopf link"


def _simplify(entries):
    """Merge (c, 0, c') into c + c' and drop a leading (0, c) pair; the value is unchanged."""
    entries = list(entries)
    changed = True
    while changed:
        changed = False
        for i in range(1, len(entries) - 1):
            if entries[i] == 0:
                entries[i - 1:i + 2] = [entries[i - 1] + entries[i + 1]]
                changed = True
                break
        if len(entries) >= 3 and entries[0] == 0:
            entries = entries[2:]
            changed = True
    return tuple(entries)


def _five_moves(entries, bound):
    """Entry lists one 5-move (or the all-entries mod 5 shortcut) away."""
    yield tuple(((c + 2) % 5) - 2 for c in entries)
    for i, c in enumerate(entries):
        for delta in (5, -5):
            if abs(c + delta) <= bound:
                yield entries[:i] + (c + delta,) + entries[i + 1:]


def _closure_norms(f):
    tangle = Tangle.from_fraction(f)
    norms = []
    for diagram in (tangle.numerator_closure(), tangle.denominator_closure()):
        inv = jones_invariants(diagram)
        norms.extend((inv.v1, inv.v3))
    return norms


def reduce_rational_tangle(f, certify=False):
    """
    A basic tangle 5-move equivalent to the rational tangle T(f).

    Breadth first search over continued fraction entry lists, keyed by their value. Each step applies a
    5-move to one twist region (or reduces every entry into [-2, 2] at once), tried on the entry list that
    reached the value and on its canonical expansion.

    Args:
        f: fraction, int, "p/q" or TangleFraction
        certify: compare (v1, v3) of both closures of T(f) and of the result

    Returns:
        TangleFraction

    Raises:
        ConsistencyError: when the search exhausts Config.TANGLE_SEARCH_DEPTH
    """
    f = TangleFraction.of(f)
    bound = Config.TANGLE_ENTRY_BOUND
    result = None
    if f in BASIC_TANGLES:
        result = f
    else:
        start = tuple(cf_from_fraction(f))
        seen = {f}
        frontier = deque([(start, 0)])
        while frontier and result is None:
            entries, depth = frontier.popleft()
            if depth >= Config.TANGLE_SEARCH_DEPTH:
                break
            value = cf_value(entries)
            candidates = {entries, tuple(cf_from_fraction(value))}
            for candidate in candidates:
                for moved in _five_moves(candidate, bound):
                    moved = _simplify(moved)
                    moved_value = cf_value(moved)
                    if moved_value in BASIC_TANGLES:
                        result = moved_value
                        break
                    if moved_value not in seen:
                        seen.add(moved_value)
                        frontier.append((moved, depth + 1))
                if result is not None:
                    break
        if result is None:
            raise ConsistencyError(f"no basic tangle found for {f} within depth {Config.TANGLE_SEARCH_DEPTH}")
        logger.debug(f"tangle {f} -> {result} after visiting {len(seen)} values")

    if certify:
        before, after = _closure_norms(f), _closure_norms(result)
        if any(abs(x - y) > Config.RATIONAL_CLASS_TOLERANCE for x, y in zip(before, after)):
            raise ConsistencyError(f"reduction {f} -> {result} changes the closure invariants")
    return result


@lru_cache(maxsize=None)
def _reference_norms():
    references = {
        RationalClass.UNKNOT: rational_link_diagram(1),
        RationalClass.UNLINK: rational_link_diagram(0),
        RationalClass.HOPF: rational_link_diagram(2),
        RationalClass.FIGURE_EIGHT: rational_link_diagram(Fraction(5, 2)),
    }
    norms = {}
    for rational_class, diagram in references.items():
        inv = jones_invariants(diagram)
        norms[rational_class] = (inv.v1, inv.v3)
    return norms


def diagram_rational_class(d):
    """Match (v1, v3) of a diagram of a rational link against the four 5-move classes."""
    inv = jones_invariants(d)
    tolerance = Config.RATIONAL_CLASS_TOLERANCE
    for rational_class, (v1, v3) in _reference_norms().items():
        if abs(inv.v1 - v1) <= tolerance and abs(inv.v3 - v3) <= tolerance:
            return rational_class
    raise ConsistencyError(f"(v1, v3) = ({inv.v1:.9f}, {inv.v3:.9f}) matches no rational link class")


def rational_link_class(f):
    """
    5-move class of the rational link N(T(f)).

    With the numerator closure 0 gives the 2-component unlink and infinity the unknot.
    """
    f = TangleFraction.of(f)
    diagram = rational_link_diagram(f)
    if diagram.crossing_count > Config.BRACKET_MAX_CROSSINGS:
        diagram = rational_link_diagram(reduce_rational_tangle(f))
    return diagram_rational_class(diagram)


@dataclass(frozen=True)
class NormalForm:
    form: ClassVar[int] = 0

    def parameters(self):
        return {}

    def parameter_sum(self):
        return sum(self.parameters().values())

    def label(self):
        """The verdict text of a probe line."""
        p = self.parameters()
        return f"match form {self.form} for k={p['k']}, l={p['l']}"

    def describe(self):
        parameters = ", ".join(f"{name}={value}" for name, value in self.parameters().items())
        return f"form {self.form} for {parameters}" if parameters else f"form {self.form}"

    def representative_descriptor(self):
        return None

    def representative_diagram(self):
        return montesinos_to_diagram(self.representative_descriptor())

    def __str__(self):
        inner = ", ".join(f"{name}={value}" for name, value in self.parameters().items())
        return f"Form{self.form}({inner})"


@dataclass(frozen=True)
class Form1(NormalForm):
    form: ClassVar[int] = 1
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if not (self.k >= 0 and 0 <= self.l <= 4 and self.k + self.l >= 3):
            raise InputError(f"Form 1 needs k >= 0, 0 <= l <= 4 and k + l >= 3, got k={self.k}, l={self.l}")

    def parameters(self):
        return {"k": self.k, "l": self.l}

    def representative_descriptor(self):
        return MontesinosDescriptor((Fraction(1, 2),) * self.k + (Fraction(-1, 2),) * self.l, 0)


@dataclass(frozen=True)
class Form2(NormalForm):
    form: ClassVar[int] = 2
    k: int = 0
    l: int = 1

    def __post_init__(self):
        if not (self.k >= 0 and self.l >= 1 and self.k + self.l >= 3):
            raise InputError(f"Form 2 needs k >= 0, l >= 1 and k + l >= 3, got k={self.k}, l={self.l}")

    def parameters(self):
        return {"k": self.k, "l": self.l}

    def representative_descriptor(self):
        return MontesinosDescriptor((Fraction(1, 2),) * self.k + (Fraction(2, 5),) * self.l, 0)


def _connected_sum_diagram(figure_eights, hopfs, trivial):
    diagram = LinkDiagram.unknot()
    for _ in range(figure_eights):
        diagram = connected_sum(diagram, rational_link_diagram(Fraction(5, 2)))
    for _ in range(hopfs):
        diagram = connected_sum(diagram, rational_link_diagram(2))
    return LinkDiagram(diagram.crossings, diagram.free_loops + trivial)


@dataclass(frozen=True)
class Form3(NormalForm):
    form: ClassVar[int] = 3
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise InputError(f"Form 3 needs k, l >= 0, got k={self.k}, l={self.l}")

    def parameters(self):
        return {"k": self.k, "l": self.l}

    def representative_diagram(self):
        return _connected_sum_diagram(0, self.k, self.l)


@dataclass(frozen=True)
class Form4(NormalForm):
    form: ClassVar[int] = 4
    n: int = 1
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.n < 1 or self.k < 0 or self.l < 0:
            raise InputError(f"Form 4 needs n >= 1 and k, l >= 0, got n={self.n}, k={self.k}, l={self.l}")

    def parameters(self):
        return {"n": self.n, "k": self.k, "l": self.l}

    def label(self):
        return "form 4"

    def representative_diagram(self):
        return _connected_sum_diagram(self.n, self.k, self.l)


@dataclass(frozen=True)
class Form5(NormalForm):
    form: ClassVar[int] = 5

    def label(self):
        return "form 5"

    def representative_descriptor(self):
        return MontesinosDescriptor((Fraction(1, 2),) * 3, 1)


# integer part and fractional part of the basic tangles that are not infinite
_BASIC_SPLIT = {
    TangleFraction.of(0): (0, None),
    TangleFraction.of(1): (1, None),
    TangleFraction.of(-1): (-1, None),
    TangleFraction.of(2): (2, None),
    TangleFraction.of(-2): (-2, None),
    TangleFraction.of(Fraction(1, 2)): (0, Fraction(1, 2)),
    TangleFraction.of(Fraction(-1, 2)): (0, Fraction(-1, 2)),
    TangleFraction.of(Fraction(3, 2)): (1, Fraction(1, 2)),
    TangleFraction.of(Fraction(-3, 2)): (-1, Fraction(-1, 2)),
    TangleFraction.of(Fraction(5, 2)): (2, Fraction(1, 2)),
    TangleFraction.of(Fraction(2, 5)): (0, Fraction(2, 5)),
}


def _classify_with_infinity(basics, integer_part):
    """
    Sums with infinite tangles close up to connected sums of denominator closures.

    The segments before the first and after the last infinite tangle close to one connected sum; every segment
    between two infinite tangles closes to a split component.
    """
    positions = [i for i, b in enumerate(basics) if b.is_infinite]
    outer = basics[:positions[0]] + basics[positions[-1] + 1:]
    middles = [basics[a + 1:b] for a, b in zip(positions, positions[1:])]

    figure_eights = hopfs = trivial = 0
    trivial += len(middles)
    for segment in [outer] + middles:
        for b in segment:
            # D(T(b)) is N(T(-1/b))
            rational_class = rational_link_class(TangleFraction(-b.q, b.p))
            if rational_class is RationalClass.FIGURE_EIGHT:
                figure_eights += 1
            elif rational_class is RationalClass.HOPF:
                hopfs += 1
            elif rational_class is RationalClass.UNLINK:
                trivial += 1
    logger.debug(f"infinite tangle sum with integer part {integer_part}: "
                 f"{figure_eights} figure-8, {hopfs} Hopf, {trivial} trivial")
    if figure_eights:
        return Form4(figure_eights, hopfs, trivial)
    return Form3(hopfs, trivial)


def _classify_rational(fractions, integer_part):
    e = ((integer_part + 2) % 5) - 2
    diagram = montesinos_to_diagram(MontesinosDescriptor(tuple(fractions), e))
    rational_class = diagram_rational_class(diagram)
    return {
        RationalClass.UNKNOT: Form3(0, 0),
        RationalClass.UNLINK: Form3(0, 1),
        RationalClass.HOPF: Form3(1, 0),
        RationalClass.FIGURE_EIGHT: Form4(1, 0, 0),
    }[rational_class]


def classify_montesinos(m):
    """
    The normal form of a Montesinos link.

    Args:
        m: MontesinosDescriptor

    Returns:
        NormalForm
    """
    basics = [reduce_rational_tangle(f) for f in m.factors]
    if any(b.is_infinite for b in basics):
        return _classify_with_infinity(basics, m.integer_part)

    integer_part = m.integer_part
    fractions = []
    for b in basics:
        whole, fraction = _BASIC_SPLIT[b]
        integer_part += whole
        if fraction is not None:
            fractions.append(fraction)

    if len(fractions) < 3:
        nf = _classify_rational(fractions, integer_part)
    elif Fraction(2, 5) in fractions:
        nf = Form2(len(fractions) - fractions.count(Fraction(2, 5)), fractions.count(Fraction(2, 5)))
    else:
        # -1/2 = 1/2 - 1, and M(1/2^(k+l); -l) is Form 1 (k, l)
        count = len(fractions)
        l = (fractions.count(Fraction(-1, 2)) - integer_part) % 5
        nf = Form1(count - l, l) if count >= l else Form5()
    logger.debug(f"{m} -> {nf}")
    return nf


def mirror_descriptor(m):
    return MontesinosDescriptor(tuple(-f for f in m.factors), -m.integer_part)


def mirror_normal_form(nf):
    """Normal form of the mirror image. Forms 3, 4 and 5 are their own mirror classes."""
    if isinstance(nf, (Form1, Form2)):
        return classify_montesinos(mirror_descriptor(nf.representative_descriptor()))
    return nf


def enumerate_normal_forms(max_sum):
    """All normal forms whose parameters sum to at most max_sum."""
    forms = [Form5()]
    for total in range(max_sum + 1):
        for l in range(total + 1):
            k = total - l
            forms.append(Form3(k, l))
            if total >= 3 and l <= 4:
                forms.append(Form1(k, l))
            if total >= 3 and l >= 1:
                forms.append(Form2(k, l))
        for n in range(1, total + 1):
            for k in range(total - n + 1):
                forms.append(Form4(n, k, total - n - k))
    return forms


@dataclass(frozen=True)
class InvariantTuple:
    vbar: object
    gamma1: UnitOrbitValue
    gamma3: UnitOrbitValue
    v1: float
    v3: float
    det: int
    q1: Optional[QuotientElement] = None
    q2: Optional[QuotientElement] = None
    f1: Optional[APowerClass] = None
    f2: Optional[APowerClass] = None

    def distinctness_key(self):
        return self.vbar, self.gamma1, self.gamma3, self.q1


def closed_form_vbar_value(nf):
    """The closed form reduced Jones polynomial of a normal form, as a field element."""
    if isinstance(nf, Form1):
        return v1_closed(nf.k, nf.l)
    if isinstance(nf, Form2):
        return v2_closed(nf.k, nf.l)
    if isinstance(nf, Form3):
        return v3_closed(nf.k, nf.l)
    if isinstance(nf, Form4):
        return v4_closed()
    return v5_closed()


def closed_form_f_values(nf, evaluator=None):
    """F at EVAL_POINTS for a normal form; Form 5 is evaluated on its representative diagram."""
    if isinstance(nf, Form5):
        evaluator = evaluator or KauffmanEvaluator()
        return evaluator.evaluate(nf.representative_diagram())
    values = []
    for point in EVAL_POINTS:
        if isinstance(nf, Form1):
            values.append(f1_closed(nf.k, nf.l, point))
        elif isinstance(nf, Form2):
            values.append(f2_closed(nf.k, nf.l, point))
        elif isinstance(nf, Form3):
            values.append(f3_closed(0, nf.k, nf.l, point))
        else:
            values.append(f3_closed(nf.n, nf.k, nf.l, point))
    return tuple(values)


def normal_form_determinant(nf):
    if isinstance(nf, Form3):
        return 2 ** nf.k if nf.l == 0 else 0
    if isinstance(nf, Form4):
        return 5 ** nf.n * 2 ** nf.k if nf.l == 0 else 0
    return montesinos_determinant(nf.representative_descriptor())


def normal_form_invariants(nf, evaluator=None, with_f=True):
    """
    The invariant tuple of a normal form from its closed forms.

    Args:
        with_f: also compute the Kauffman values (skipped by Jones-only callers)

    Returns:
        InvariantTuple
    """
    value = closed_form_vbar_value(nf)
    q1 = q2 = f1 = f2 = None
    if with_f:
        q1, q2, f1_value, f2_value = closed_form_f_values(nf, evaluator)
        f1, f2 = APowerClass(f1_value), APowerClass(f2_value)
    return InvariantTuple(
        vbar=doteq_canonical(value),
        gamma1=UnitOrbitValue(eval_at_root(value, 1)),
        gamma3=UnitOrbitValue(eval_at_root(value, 3)),
        v1=complex_norm(value, 1),
        v3=complex_norm(value, 3),
        det=normal_form_determinant(nf),
        q1=q1, q2=q2, f1=f1, f2=f2,
    )


def link_invariants(d, evaluator=None, with_f=True):
    """The invariant tuple computed from a diagram."""
    inv = jones_invariants(d)
    q1 = q2 = f1 = f2 = None
    if with_f:
        f = f_invariants(d, evaluator)
        q1, q2, f1, f2 = f.q1, f.q2, f.f1, f.f2
    return InvariantTuple(inv.vbar, inv.gamma1, inv.gamma3, inv.v1, inv.v3, inv.det, q1, q2, f1, f2)
