"""
Exact arithmetic in the cyclotomic field Q(zeta_20) and in Laurent polynomials over Z.

Every 5-move invariant of the probe lives in the field Q[s]/<s^8 - s^6 + s^4 - s^2 + 1>, where s plays the
role of t^(1/2) and the modulus turns into X(t) = t^4 - t^3 + t^2 - t + 1 = (t^5 + 1)/(t + 1) after putting
t = s^2. Its elements are stored as 8 rational coordinates in the power basis 1, s, ..., s^7; coordinates with
denominator 1 are kept as plain ints, which is the common case (all values met by the polynomial engines are
algebraic integers).

Floating point numbers appear only in complex_norm() and QuotientElement.complex_value(); every equality test
is exact.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from exceptions import ConsistencyError, InputError
from log_config import configure_logger

logger = configure_logger(__name__)

DEGREE = 8
ORDER = 20

# Exponents k with s -> s^k a field automorphism
UNIT_EXPONENTS = (1, 3, 7, 9, 11, 13, 17, 19)


def _normalize(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _reduce(coeffs):
    """Reduce a coefficient list of any length modulo s^8 = s^6 - s^4 + s^2 - 1."""
    coeffs = list(coeffs) + [0] * max(0, DEGREE - len(coeffs))
    for d in range(len(coeffs) - 1, DEGREE - 1, -1):
        c = coeffs[d]
        if c:
            coeffs[d - 2] += c
            coeffs[d - 4] -= c
            coeffs[d - 6] += c
            coeffs[d - 8] -= c
    return tuple(_normalize(c) for c in coeffs[:DEGREE])


class QuotientElement:
    """
    An element of Q(zeta_20) = Q[s]/<s^8 - s^6 + s^4 - s^2 + 1>.

    Instances are immutable. Arithmetic accepts other elements, ints and Fractions.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(_normalize(c) for c in coords)
        if len(coords) != DEGREE:
            raise InputError(f"a field element needs {DEGREE} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, key, value):
        raise AttributeError("QuotientElement is immutable")

    @classmethod
    def zero(cls):
        return _ZERO

    @classmethod
    def one(cls):
        return _ONE

    @classmethod
    def from_rational(cls, value):
        return cls((value,) + (0,) * (DEGREE - 1))

    @classmethod
    def monomial(cls, exponent):
        """s^exponent for any integer exponent, using s^20 = 1."""
        return _MONOMIALS[exponent % ORDER]

    @staticmethod
    def _coerce(other):
        if isinstance(other, QuotientElement):
            return other
        if isinstance(other, (int, Fraction)):
            return QuotientElement.from_rational(other)
        return None

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuotientElement(a + b for a, b in zip(self.coords, other.coords))

    __radd__ = __add__

    def __neg__(self):
        return QuotientElement(-a for a in self.coords)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuotientElement(a - b for a, b in zip(self.coords, other.coords))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuotientElement(a * other for a in self.coords)
        if not isinstance(other, QuotientElement):
            return NotImplemented
        product = [0] * (2 * DEGREE - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    product[i + j] += a * b
        return QuotientElement(_reduce(product))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return field_div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return field_div(other, self)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = _ONE
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def times_s_power(self, exponent):
        return self * QuotientElement.monomial(exponent)

    def conjugate(self, k):
        """The Galois automorphism s -> s^k, k coprime to 20."""
        if gcd(k, ORDER) != 1:
            raise InputError(f"s -> s^{k} is not an automorphism of Q(zeta_20)")
        result = _ZERO
        for j, c in enumerate(self.coords):
            if c:
                result = result + QuotientElement.monomial(j * k) * c
        return result

    def complex_conjugate(self):
        return self.conjugate(ORDER - 1)

    def field_norm(self):
        """The product of all 8 Galois conjugates, a rational number."""
        product = self
        for k in UNIT_EXPONENTS[1:]:
            product = product * self.conjugate(k)
        return product.rational_value()

    def inverse(self):
        if self.is_zero():
            raise ConsistencyError("division by zero in Q(zeta_20)")
        # x^-1 = (product of the other conjugates) / N(x)
        others = _ONE
        for k in UNIT_EXPONENTS[1:]:
            others = others * self.conjugate(k)
        norm = (self * others).rational_value()
        return others * (Fraction(1) / norm)

    def rational_value(self):
        if any(self.coords[1:]):
            raise ConsistencyError(f"{self} is not a rational number")
        return self.coords[0]

    def is_rational(self):
        return not any(self.coords[1:])

    def complex_value(self, embedding=1):
        """Image under s -> exp(2 pi i embedding / 20)."""
        powers = np.exp(2j * np.pi * embedding * np.arange(DEGREE) / ORDER)
        return complex(np.dot(np.array([float(c) for c in self.coords]), powers))

    def __repr__(self):
        return f"QuotientElement({self})"

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coords):
            if not c:
                continue
            monomial = "" if j == 0 else ("s" if j == 1 else f"s^{j}")
            if monomial and c == 1:
                text = monomial
            elif monomial and c == -1:
                text = "-" + monomial
            else:
                text = f"{c}{'*' + monomial if monomial else ''}"
            parts.append(text)
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


_ZERO = QuotientElement((0,) * DEGREE)
_ONE = QuotientElement((1,) + (0,) * (DEGREE - 1))


def _build_monomials():
    monomials = []
    coords = [1] + [0] * (DEGREE - 1)
    for _ in range(ORDER):
        monomials.append(QuotientElement(coords))
        coords = list(_reduce([0] + coords))
    return tuple(monomials)


_MONOMIALS = _build_monomials()


class LaurentPolynomial:
    """
    A Laurent polynomial with integer coefficients in one variable.

    Exponents are stored as integers in units of 1/step of the variable: the Jones polynomial uses
    variable="t", step=2, so the stored exponent is the power of s = t^(1/2). The Kauffman bracket uses
    variable="A", step=1. Zero coefficients are never stored.
    """

    __slots__ = ("terms", "variable", "step")

    def __init__(self, terms=None, variable="t", step=2):
        self.terms = {int(e): int(c) for e, c in (terms or {}).items() if c}
        self.variable = variable
        self.step = step

    @classmethod
    def monomial(cls, exponent, coefficient=1, variable="t", step=2):
        return cls({exponent: coefficient}, variable, step)

    @classmethod
    def from_t(cls, mapping):
        """Build a polynomial in t from {t-exponent: coefficient}; exponents may be halves."""
        terms = {}
        for exponent, coefficient in mapping.items():
            doubled = Fraction(exponent) * 2
            if doubled.denominator != 1:
                raise InputError(f"t^{exponent} is not a half-integer power")
            terms[int(doubled)] = terms.get(int(doubled), 0) + coefficient
        return cls(terms)

    def _like(self, terms):
        return LaurentPolynomial(terms, self.variable, self.step)

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return self._like({0: other})
        return None

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return self._like(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            if len(self.terms) != 1:
                raise InputError("only monomials have Laurent polynomial inverses")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise InputError("only unit monomials have Laurent polynomial inverses")
            return self._like({-e * -exponent: c ** -exponent})
        result = self._like({0: 1})
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def reflect(self):
        """Substitute the variable by its inverse (t -> 1/t)."""
        return self._like({-e: c for e, c in self.terms.items()})

    def shift(self, exponent):
        """Multiply by the monomial of the given stored exponent."""
        return self._like({e + exponent: c for e, c in self.terms.items()})

    def to_quotient(self):
        return to_quotient(self)

    def evaluate(self, s_value):
        """Numeric value with the stored exponent unit (s for Jones polynomials) replaced by s_value."""
        return sum(c * s_value ** e for e, c in self.terms.items())

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            power = Fraction(e, self.step)
            if power == 0:
                monomial = ""
            elif power == 1:
                monomial = self.variable
            elif power.denominator == 1:
                monomial = f"{self.variable}^{power.numerator}"
            else:
                monomial = f"{self.variable}^({power})"
            if not monomial:
                text = str(abs(c))
            elif abs(c) == 1:
                text = monomial
            else:
                text = f"{abs(c)}*{monomial}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first_text = parts[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


@dataclass(frozen=True)
class DoteqClass:
    """The class of a value under the unit group {+-s^k}: the lexicographically least orbit element."""
    canonical: QuotientElement

    def __str__(self):
        return str(self.canonical)


class UnitOrbitValue:
    """A field value compared up to multiplication with 20th roots of unity."""

    __slots__ = ("value", "_key")

    def __init__(self, value):
        self.value = value
        self._key = _orbit_min(value)

    def __eq__(self, other):
        if not isinstance(other, UnitOrbitValue):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def norm(self, embedding=1):
        return complex_norm(self.value, embedding)

    def __repr__(self):
        return f"UnitOrbitValue({self._key})"


def _orbit_min(x):
    return min((x * monomial for monomial in _MONOMIALS), key=lambda e: e.coords)


def to_quotient(p):
    """Image of a Laurent polynomial in s = t^(1/2) in the quotient field."""
    result = [0] * DEGREE
    for e, c in p.terms.items():
        for j, m in enumerate(_MONOMIALS[e % ORDER].coords):
            if m:
                result[j] += c * m
    return QuotientElement(result)


def doteq_canonical(x):
    """Canonical representative of the class of x modulo X and the units +-t^(k/2)."""
    if isinstance(x, LaurentPolynomial):
        x = to_quotient(x)
    return DoteqClass(_orbit_min(x))


def eval_at_root(p, n):
    """
    Exact value of p at t = exp(n pi i / 5), i.e. s = zeta_20^n, for n in {1, 3}.

    The result is the Galois conjugate s -> s^n of to_quotient(p), read in the embedding s -> zeta_20.
    """
    if n not in (1, 3):
        raise InputError(f"roots are taken at n = 1 or n = 3, not {n}")
    if isinstance(p, LaurentPolynomial):
        p = to_quotient(p)
    return p.conjugate(n)


def complex_norm(x, embedding=1):
    """Modulus of x under s -> exp(2 pi i embedding / 20)."""
    if gcd(embedding, ORDER) != 1:
        raise InputError(f"embedding exponent {embedding} is not coprime to 20")
    return abs(x.complex_value(embedding))


def unit_orbit_eq(a, b):
    """True iff a and b differ by a 20th root of unity (0 only matches 0)."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return (a / b) ** ORDER == _ONE


def field_div(a, b):
    if b.is_zero():
        raise ConsistencyError("division by zero in Q(zeta_20)")
    return a * b.inverse()


def s_power(exponent):
    return QuotientElement.monomial(exponent)


def t_power(exponent):
    return QuotientElement.monomial(2 * exponent)


# Rows of the norms table: the norm of each expression at t = exp(pi i/5) and t = exp(3 pi i/5)
NORMS_TABLE_ROWS = (
    ("1-t", (1, 0, -1)),
    ("1+t", (1, 0, 1)),
    ("1+t^2", (1, 0, 0, 0, 1)),
    ("1-t^2", (1, 0, 0, 0, -1)),
    ("1+t+t^2", (1, 0, 1, 0, 1)),
)


def norms_table():
    """
    The ten norms |f(t)| for the expressions of NORMS_TABLE_ROWS at n = 1 and n = 3.

    Returns:
        list: list of (row label, n, norm) tuples
    """
    table = []
    for label, s_coords in NORMS_TABLE_ROWS:
        element = QuotientElement(list(s_coords) + [0] * (DEGREE - len(s_coords)))
        for n in (1, 3):
            table.append((label, n, complex_norm(element, n)))
    return table
