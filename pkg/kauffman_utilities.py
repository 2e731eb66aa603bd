"""
The Kauffman polynomial at the four 5-move invariant points.

Lambda is the regular isotopy version, fixed by

    Lambda(L+) + Lambda(L-) = z (Lambda(L0) + Lambda(Loo)),    Lambda(unknot) = 1,

a positive curl (an arc joining slots 0-1 or 2-3 of a crossing) contributing a factor 1/a and a negative curl a
factor a. F = a^w Lambda. The evaluation points are q1 = (1, 2cos 2pi/5), q2 = (1, 2cos 4pi/5),
f1 = (e^(2pi i/5), 2cos 4pi/5) and f2 = (e^(4pi i/5), 2cos 2pi/5); there F is a 5-move invariant up to powers of a,
and Q(z) = F(1, z) is one outright.

Lambda is never expanded as a polynomial: KauffmanEvaluator runs the skein recursion with one field value per
point and caches connected diagrams by canonical_code().
"""
from dataclasses import dataclass
from math import comb

from config import Config
from cyclotomic_utilities import QuotientElement
from exceptions import ConsistencyError, DiagramSizeError, InputError
from link_utilities import (canonical_code, components, find_curl, remove_curl, smooth, split_components,
                            switch_crossing, writhe)
from log_config import configure_logger

logger = configure_logger(__name__)


@dataclass(frozen=True)
class EvalPoint:
    """a = s^a_exponent (s = zeta_20) and z = s^z_exponent + s^-z_exponent."""
    name: str
    a_exponent: int
    z_exponent: int

    @property
    def a(self):
        return QuotientElement.monomial(self.a_exponent)

    @property
    def z(self):
        return QuotientElement.monomial(self.z_exponent) + QuotientElement.monomial(-self.z_exponent)

    def a_power(self, k):
        return QuotientElement.monomial(self.a_exponent * k)


EVAL_POINTS = (
    EvalPoint("q1", 0, 4),
    EvalPoint("q2", 0, 8),
    EvalPoint("f1", 4, 8),
    EvalPoint("f2", 8, 4),
)
POINTS_BY_NAME = {point.name: point for point in EVAL_POINTS}


@dataclass(frozen=True)
class SkeinConstants:
    """Lambda of the 2-component unlink (T2), Hopf link (H), figure-8 knot (G4) and negative trefoil (G3)."""
    a1: QuotientElement
    T2: QuotientElement
    H: QuotientElement
    G4: QuotientElement
    G3: QuotientElement

    @classmethod
    def at(cls, point):
        a, z = point.a, point.z
        a_inv = point.a_power(-1)
        a1 = a + a_inv
        t2 = -1 + a1 / z
        h = z * a1 - t2
        g4 = (1 - a1 * a1) - z * a1 + z * z * a1 * a1 + z * z * z * a1
        g3 = (-a_inv - 2 * a) + z * a1 * a_inv + z * z * a1
        return cls(a1, t2, h, g4, g3)


class APowerClass:
    """A field value compared up to multiplication with powers of a, a a 5th root of unity."""

    __slots__ = ("value", "_key")

    def __init__(self, value):
        self.value = value
        self._key = min((value.times_s_power(4 * j) for j in range(5)), key=lambda e: e.coords).coords

    def __eq__(self, other):
        if not isinstance(other, APowerClass):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"APowerClass({self.value})"


@dataclass(frozen=True)
class FInvariantSet:
    q1: QuotientElement
    q2: QuotientElement
    f1: APowerClass
    f2: APowerClass

    @classmethod
    def from_values(cls, values):
        """Build the set from Lambda (or F) values at EVAL_POINTS, in that order."""
        q1, q2, f1, f2 = values
        return cls(q1, q2, APowerClass(f1), APowerClass(f2))


def orbit_eq_mod_a(x, y, a):
    """x = a^j y for some 0 <= j < 5."""
    power = QuotientElement.one()
    for _ in range(5):
        if x == y * power:
            return True
        power = power * a
    return False


def _descending_violations(d):
    """Crossings first reached as the under-strand when the components are traversed in order."""
    seen = set()
    bad = []
    for walk in components(d):
        for i, slot in walk:
            if i in seen:
                continue
            seen.add(i)
            if slot % 2 == 0:
                bad.append(i)
    return bad


class KauffmanEvaluator:
    """
    Lambda at several points in one skein recursion.

    Curls are removed first, split pieces are evaluated separately and multiplied with the unlink factor, and a
    connected piece is switched towards the descending diagram of its traversal. Each switch costs one skein
    step, whose smoothings have one crossing less. Values of connected pieces are cached by canonical_code().
    """

    def __init__(self, points=EVAL_POINTS, max_crossings=None):
        self.points = tuple(points)
        self.max_crossings = Config.KAUFFMAN_MAX_CROSSINGS if max_crossings is None else max_crossings
        self.constants = tuple(SkeinConstants.at(point) for point in self.points)
        self._cache = {}
        self._hits = 0
        self._misses = 0

    def cache_info(self):
        return {"hits": self._hits, "misses": self._misses, "size": len(self._cache)}

    def evaluate(self, d):
        """
        Returns:
            tuple of Lambda values, one per point

        Raises:
            DiagramSizeError: when the diagram exceeds max_crossings
        """
        if d.crossing_count > self.max_crossings:
            raise DiagramSizeError(d.crossing_count, self.max_crossings, "Kauffman skein recursion")
        value = self._evaluate(d)
        logger.debug(f"Kauffman recursion on {d.crossing_count} crossings, cache {self.cache_info()}")
        return value

    def _unlink(self, count):
        return tuple(c.T2 ** (count - 1) for c in self.constants)

    def _times_a(self, value, k):
        if not k:
            return value
        return tuple(v * point.a_power(k) for v, point in zip(value, self.points))

    def _evaluate(self, d):
        a_power = 0
        while True:
            curl = find_curl(d)
            if curl is None:
                break
            index, slot, sign = curl
            d = remove_curl(d, index, slot)
            a_power -= sign

        pieces, loops = split_components(d)
        value = self._unlink(len(pieces) + loops)
        for piece in pieces:
            value = tuple(x * y for x, y in zip(value, self._connected(piece)))
        return self._times_a(value, a_power)

    def _connected(self, piece):
        key = canonical_code(piece)
        cached = self._cache.get(key)
        if cached is not None:
            self._hits += 1
            return cached
        self._misses += 1
        value = self._resolve(piece)
        self._cache[key] = value
        return value

    def _resolve(self, piece):
        total = tuple(QuotientElement.zero() for _ in self.points)
        sign = 1
        current = piece
        for index in _descending_violations(piece):
            a_side = self._evaluate(smooth(current, index, "A"))
            b_side = self._evaluate(smooth(current, index, "B"))
            total = tuple(t + (x + y) * point.z * sign
                          for t, x, y, point in zip(total, a_side, b_side, self.points))
            current = switch_crossing(current, index)
            sign = -sign

        # a descending diagram is an unlink up to curls
        w = writhe(current)
        base = self._times_a(self._unlink(len(components(current))), -w)
        return tuple(t + b * sign for t, b in zip(total, base))


def lambda_eval(d, point, max_crossings=None):
    """Lambda of one diagram at one point."""
    return KauffmanEvaluator((point,), max_crossings).evaluate(d)[0]


def f_invariants(d, evaluator=None):
    """
    The four 5-move invariants: q1 and q2 exactly, f1 and f2 up to powers of a.

    Args:
        evaluator: a KauffmanEvaluator on EVAL_POINTS to share its cache between calls

    Returns:
        FInvariantSet
    """
    evaluator = evaluator or KauffmanEvaluator()
    if evaluator.points != EVAL_POINTS:
        raise InputError("f_invariants needs an evaluator on EVAL_POINTS")
    return FInvariantSet.from_values(evaluator.evaluate(d))


def jones_rong_exponent(q):
    """d with q * conj(q) = 5^d, or None when q does not have that shape."""
    product = q * q.complex_conjugate()
    if not product.is_rational():
        return None
    value = product.rational_value()
    d = 0
    while value != 1:
        if value % 5 or value == 0:
            return None
        value //= 5
        d += 1
    return d


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _solve3(matrix, rhs):
    """Cramer's rule over the field."""
    det = _det3(matrix)
    if det.is_zero():
        raise ConsistencyError("the skein module matrix is singular")
    solution = []
    for column in range(3):
        replaced = [[rhs[r] if c == column else matrix[r][c] for c in range(3)] for r in range(3)]
        solution.append(_det3(replaced) / det)
    return tuple(solution)


def skein_matrix(point):
    """Closures of the sums of <0>, <1>, <oo> with the 0, oo and -1 tangles."""
    c = SkeinConstants.at(point)
    a, a_inv = point.a, point.a_power(-1)
    return ((c.T2, a, QuotientElement.one()),
            (QuotientElement.one(), a_inv, c.T2),
            (a_inv, c.T2, a))


def skein_tangle_coeffs(point):
    """
    Kauffman skein module coefficients of the tangles <1/2> and <2/5> in the basis <0>, <1>, <oo>.

    Solves the closure system and checks the solution against the expected closed forms.

    Returns:
        ((A, B, C), (D, E, F))

    Raises:
        ConsistencyError: when the matrix is singular or the solution disagrees with the closed forms
    """
    c = SkeinConstants.at(point)
    a, a_inv, z = point.a, point.a_power(-1), point.z
    matrix = skein_matrix(point)
    half = _solve3(matrix, (a * a, c.H, a_inv))
    two_fifths = _solve3(matrix, (a * a * c.H, c.G4, c.G3))

    expected_half = (z * a, z, -QuotientElement.one())
    expected_two_fifths = (-a * a + z * z + a * a * z * z + a * z ** 3,
                           -z + z * z * a_inv + z ** 3,
                           -z * a_inv - z * z)
    if half != expected_half or two_fifths != expected_two_fifths:
        raise ConsistencyError(f"skein module coefficients at {point.name} disagree with their closed forms")
    return half, two_fifths


def _w1(residue, point, c):
    a = point.a_power
    table = {
        0: -1 + c.T2 * c.T2,
        1: -a(-2) + c.T2,
        4: -a(2) + c.T2,
        2: -a(1) + a(-2) * c.H * c.T2,
        3: -a(-1) + a(2) * c.H * c.T2,
    }
    return table[residue]


def _w2(residue, point, c):
    a = point.a_power
    table = {
        0: -1 + c.T2 * c.T2,
        1: -a(-1) + a(1) * c.T2,
        4: -a(1) + a(-1) * c.T2,
        2: -a(-2) + c.H * c.T2,
        3: -a(2) + c.H * c.T2,
    }
    return table[residue]


def f1_closed(n, n2, point):
    """Form 1 with k = n halves and l = n2 negative halves, up to powers of a."""
    if not (n >= 0 and 0 <= n2 <= 4 and n + n2 >= 3):
        raise InputError(f"Form 1 needs n >= 0, 0 <= n' <= 4 and n + n' >= 3, got {n}, {n2}")
    c = SkeinConstants.at(point)
    z = point.z
    total = QuotientElement.zero()
    for j in range(n + 1):
        for j2 in range(n2 + 1):
            total = total + _w1((j - j2) % 5, point, c) * (comb(n, j) * comb(n2, j2))
    bracket = c.H ** (n + n2) + point.a_power(n - n2) * z ** (n + n2) * total
    return bracket / c.T2


def f2_closed(n, n2, point):
    """Form 2 with k = n halves and l = n2 tangles 2/5, up to powers of a."""
    if not (n >= 0 and n2 >= 1 and n + n2 >= 3):
        raise InputError(f"Form 2 needs n >= 0, n' >= 1 and n + n' >= 3, got {n}, {n2}")
    c = SkeinConstants.at(point)
    (A, B, _), (D, E, _) = skein_tangle_coeffs(point)
    total = QuotientElement.zero()
    for j in range(n + 1):
        for j2 in range(n2 + 1):
            term = A ** (n - j) * B ** j * D ** (n2 - j2) * E ** j2 * _w2((j + j2) % 5, point, c)
            total = total + term * (comb(n, j) * comb(n2, j2))
    return (c.G4 ** n2 * c.H ** n + total) / c.T2


def f3_closed(n, n2, n3, point):
    """Connected sum of n figure-8 knots and n2 Hopf links with n3 trivial split components."""
    if min(n, n2, n3) < 0:
        raise InputError(f"Forms 3 and 4 need nonnegative parameters, got {n}, {n2}, {n3}")
    c = SkeinConstants.at(point)
    return c.G4 ** n * c.H ** n2 * c.T2 ** n3
