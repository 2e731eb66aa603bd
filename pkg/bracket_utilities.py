"""
Kauffman bracket state sum, Jones polynomial and the Jones-derived 5-move invariants.

The bracket is a Laurent polynomial in A (variable "A", step 1). The Jones polynomial is stored in powers of
s = t^(1/2) (variable "t", step 2) and obtained as V(t) = (-A^3)^(-w) <D> at A = t^(-1/4).
"""
import math
from collections import Counter
from dataclasses import dataclass

from config import Config
from cyclotomic_utilities import (LaurentPolynomial, QuotientElement, UnitOrbitValue, complex_norm,
                                  doteq_canonical, eval_at_root, to_quotient)
from exceptions import ConsistencyError, DiagramSizeError, InputError
from link_utilities import writhe
from log_config import configure_logger

logger = configure_logger(__name__)

_DELTA = LaurentPolynomial({2: -1, -2: -1}, variable="A", step=1)


def _bracket_polynomial(terms):
    return LaurentPolynomial(terms, variable="A", step=1)


def _state_counts(d):
    """
    Enumerate the 2^c states depth first.

    Arcs are merged in a union-find without path compression, so that every union can be undone when the
    search backtracks; the number of classes left after the last crossing is the number of state loops.

    Returns:
        Counter mapping (#A - #B, loops) to the number of states
    """
    labels = d.labels()
    index = {label: i for i, label in enumerate(labels)}
    pairs = []
    for c in d.crossings:
        x = [index[label] for label in c]
        pairs.append((((x[0], x[1]), (x[2], x[3])), ((x[0], x[3]), (x[1], x[2]))))

    parent = list(range(len(labels)))
    rank = [0] * len(labels)
    classes = [len(labels)]
    history = []
    counts = Counter()

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            history.append(None)
            return
        if rank[rx] < rank[ry]:
            rx, ry = ry, rx
        parent[ry] = rx
        bumped = rank[rx] == rank[ry]
        if bumped:
            rank[rx] += 1
        classes[0] -= 1
        history.append((ry, rx, bumped))

    def undo():
        record = history.pop()
        if record is None:
            return
        ry, rx, bumped = record
        parent[ry] = ry
        if bumped:
            rank[rx] -= 1
        classes[0] += 1

    def visit(i, a_minus_b):
        if i == len(pairs):
            counts[(a_minus_b, classes[0])] += 1
            return
        for joins, step in zip(pairs[i], (1, -1)):
            for x, y in joins:
                union(x, y)
            visit(i + 1, a_minus_b + step)
            undo()
            undo()

    visit(0, 0)
    return counts


def kauffman_bracket(d, max_crossings=None):
    """
    The Kauffman bracket <D>, normalised so that the crossingless unknot has bracket 1.

    Args:
        d: LinkDiagram
        max_crossings: crossing cap, Config.BRACKET_MAX_CROSSINGS when None

    Raises:
        DiagramSizeError: when the diagram exceeds the cap
    """
    cap = Config.BRACKET_MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.crossing_count > cap:
        raise DiagramSizeError(d.crossing_count, cap, "bracket state sum")

    if not d.crossings:
        return _DELTA ** (d.free_loops - 1)

    counts = _state_counts(d)
    max_loops = max(loops for _, loops in counts) + d.free_loops
    delta_powers = [_bracket_polynomial({0: 1})]
    for _ in range(max_loops):
        delta_powers.append(delta_powers[-1] * _DELTA)

    result = _bracket_polynomial({})
    for (a_minus_b, loops), number in counts.items():
        result = result + delta_powers[loops + d.free_loops - 1].shift(a_minus_b) * number
    logger.debug(f"bracket of {d.crossing_count} crossings: {len(counts)} state classes")
    return result


def jones(d, reverse=(), max_crossings=None):
    """
    Jones polynomial of the diagram oriented as link_utilities.components() orients it.

    Args:
        reverse: indices of link components to orient backwards

    Returns:
        LaurentPolynomial in t with half-integer exponents
    """
    bracket = kauffman_bracket(d, max_crossings)
    w = writhe(d, reverse) if d.crossings else 0
    sign = -1 if w % 2 else 1
    terms = {}
    for k, c in bracket.terms.items():
        exponent = k - 3 * w
        if exponent % 2:
            raise ConsistencyError(f"A^{exponent} is not a half-integer power of t")
        # A^m = t^(-m/4) = s^(-m/2)
        terms[-exponent // 2] = sign * c
    return LaurentPolynomial(terms)


def determinant(d, polynomial=None):
    """|V(-1)|, read exactly from V at s = i."""
    polynomial = jones(d) if polynomial is None else polynomial
    real = imaginary = 0
    for e, c in polynomial.terms.items():
        phase = e % 4
        if phase == 0:
            real += c
        elif phase == 1:
            imaginary += c
        elif phase == 2:
            real -= c
        else:
            imaginary -= c
    if real and imaginary:
        raise ConsistencyError(f"V(-1) = {real} + {imaginary}i is not a real or imaginary integer")
    return abs(real) + abs(imaginary)


@dataclass(frozen=True)
class JonesInvariants:
    jones: LaurentPolynomial
    vbar: object
    gamma1: UnitOrbitValue
    gamma3: UnitOrbitValue
    v1: float
    v3: float
    det: int


def invariants_from_quotient(value, det, polynomial=None):
    """Assemble the 5-move invariants of a V value already reduced into the field."""
    return JonesInvariants(
        jones=polynomial,
        vbar=doteq_canonical(value),
        gamma1=UnitOrbitValue(eval_at_root(value, 1)),
        gamma3=UnitOrbitValue(eval_at_root(value, 3)),
        v1=complex_norm(value, 1),
        v3=complex_norm(value, 3),
        det=det,
    )


def jones_invariants(d, max_crossings=None):
    polynomial = jones(d, max_crossings=max_crossings)
    return invariants_from_quotient(to_quotient(polynomial), determinant(d, polynomial), polynomial)


def determinant_filter(det, residue_condition):
    """False exactly when 5 divides one of det and residue_condition but not the other."""
    if det < 0:
        raise InputError("a determinant is never negative")
    return (det % 5 == 0) == (residue_condition % 5 == 0)


def d_lower_bound(det):
    """
    5-adic valuation of the determinant. Since 5^d(L) divides det, d(L) never exceeds it.

    det = 0 gives no bound and returns math.inf.
    """
    if det == 0:
        return math.inf
    valuation = 0
    while det % 5 == 0:
        det //= 5
        valuation += 1
    return valuation


def closed_form_d(nf):
    """
    The d(L) of a normal form as an interval (low, high); high is None when unbounded.

    Form 1: 1 if 5 divides k - l else 0. Form 2: l - 1 .. l + 1. Form 3: l. Form 4: at least 1. Form 5: 1.
    """
    if nf.form == 1:
        d = 1 if (nf.k - nf.l) % 5 == 0 else 0
        return d, d
    if nf.form == 2:
        return max(0, nf.l - 1), nf.l + 1
    if nf.form == 3:
        return nf.l, nf.l
    if nf.form == 4:
        return 1, None
    return 1, 1


# Closed forms of the reduced Jones polynomial, evaluated in Q(zeta_20) with s = t^(1/2).

_S = QuotientElement.monomial(1)
_T = QuotientElement.monomial(2)
_T_INV = QuotientElement.monomial(-2)
_MINUS_T_SUM = -(_T + _T_INV)                      # -t - 1/t
_UNKNOT_SUM = -(_S + QuotientElement.monomial(-1))  # -s - 1/s
_TREFOIL_FACTOR = _T + 1 + _T_INV                  # t + 1 + 1/t


def v1_closed(k, l, formal=False):
    """
    Form 1: [(-t-1/t)^(k+l) + (-1/t)^l (1-t)^(k+l) (t+1+1/t)] / (-s-1/s).

    formal=True lifts the parameter check, e.g. for V1(4, -1) = V5.
    """
    if not formal and not (k >= 0 and 0 <= l <= 4 and k + l >= 3):
        raise InputError(f"Form 1 needs k >= 0, 0 <= l <= 4 and k + l >= 3, got k={k}, l={l}")
    m = k + l
    numerator = _MINUS_T_SUM ** m + (-_T_INV) ** l * (1 - _T) ** m * _TREFOIL_FACTOR
    return numerator / _UNKNOT_SUM


def v2_closed(k, l):
    """Form 2: (1-t^2)^l (1-t)^k (t+1+1/t) / (-s-1/s), only meaningful modulo X."""
    if not (k >= 0 and l >= 1 and k + l >= 3):
        raise InputError(f"Form 2 needs k >= 0, l >= 1 and k + l >= 3, got k={k}, l={l}")
    return (1 - _T * _T) ** l * (1 - _T) ** k * _TREFOIL_FACTOR / _UNKNOT_SUM


def v3_closed(k, l):
    """Form 3: k Hopf links, l trivial split components."""
    if k < 0 or l < 0:
        raise InputError(f"Form 3 needs k, l >= 0, got k={k}, l={l}")
    return _UNKNOT_SUM ** l * _MINUS_T_SUM ** k


def v4_closed():
    return QuotientElement.zero()


def v5_closed():
    numerator = _MINUS_T_SUM ** 3 - (1 - _T) ** 3 * _T * _TREFOIL_FACTOR
    return numerator / _UNKNOT_SUM
