import random
from fractions import Fraction
from math import gcd

import pytest

from exceptions import InputError, ParseError
from link_utilities import (INFINITY, ContinuedFraction, LinkDiagram, MontesinosDescriptor, Tangle, TangleFraction,
                            canonical_code, cf_from_fraction, cf_value, components, connected_sum,
                            conway_to_descriptor, descriptor_from_values, disjoint_union, find_curl, insert_twists,
                            link_component_count, mirror, montesinos_determinant, montesinos_normalize,
                            montesinos_to_diagram, parse_conway, parse_fraction, parse_montesinos,
                            rational_link_diagram, remove_curl, smooth, split_components, switch_crossing, writhe)

TREFOIL = rational_link_diagram(3)
HOPF = rational_link_diagram(2)


def test_tangle_fraction_is_normalized():
    assert TangleFraction(2, -4) == TangleFraction(-1, 2)
    assert TangleFraction(-3, 0) == INFINITY
    assert str(TangleFraction(6, 3)) == "2"
    assert str(INFINITY) == "inf"
    assert TangleFraction.of(Fraction(-2, 6)) == TangleFraction(-1, 3)
    with pytest.raises(InputError):
        TangleFraction(0, 0)


def test_parse_fraction():
    assert parse_fraction(" 3 / 7 ") == TangleFraction(3, 7)
    assert parse_fraction("-4") == TangleFraction(-4, 1)
    assert parse_fraction("inf") is INFINITY
    with pytest.raises(ParseError):
        parse_fraction("3/x")


def test_cf_value():
    assert cf_value([2, 1, 3]) == TangleFraction(11, 3)
    assert cf_value(ContinuedFraction((3, 0))) == TangleFraction(1, 3)
    assert cf_value([0, 0]) == INFINITY
    with pytest.raises(InputError):
        cf_value([])


@pytest.mark.parametrize("fraction, expected", [
    (TangleFraction(11, 3), [2, 1, 3]),
    (TangleFraction(-7, 2), [-2, -3]),
    (TangleFraction(1, 3), [3, 0]),
    (TangleFraction(0, 1), [0]),
    (INFINITY, [0, 0]),
])
def test_cf_from_fraction(fraction, expected):
    assert cf_from_fraction(fraction) == expected
    assert cf_value(expected) == fraction


def test_parse_conway():
    tangles, e = parse_conway("(213,-4,22,40)")
    assert [cf.entries for cf in tangles] == [(2, 1, 3), (-4,), (2, 2)]
    assert e == 4

    tangles, e = parse_conway("(12 3, 2)")
    assert [cf.entries for cf in tangles] == [(12, 3), (2,)]
    assert e == 0


@pytest.mark.parametrize("text, position", [
    ("213", 0),
    ("(2a1)", 2),
    ("(21,,3)", 4),
])
def test_parse_conway_errors(text, position):
    with pytest.raises(ParseError) as error:
        parse_conway(text)
    assert error.value.position == position


def test_parse_montesinos():
    m = parse_montesinos("M(1/2,1/3;-1)")
    assert m.factors == (Fraction(1, 2), Fraction(1, 3))
    assert m.integer_part == -1
    assert parse_montesinos("M(1/2, 1/3, 2)").integer_part == 2
    assert parse_montesinos("M(3/2;0)") == MontesinosDescriptor((Fraction(1, 2),), 1)
    assert str(parse_montesinos("M(-1/2,2/5;1)")) == "M(-1/2,2/5;1)"


@pytest.mark.parametrize("text", ["M(1/2;1;2)", "M(inf,1/2)", "N(1/2)", "M(1/2;x)"])
def test_parse_montesinos_errors(text):
    with pytest.raises(ParseError):
        parse_montesinos(text)


def test_descriptor_rejects_improper_factors():
    with pytest.raises(InputError):
        MontesinosDescriptor((Fraction(3, 2),))
    assert descriptor_from_values([Fraction(-7, 3)]) == MontesinosDescriptor((Fraction(-1, 3),), -2)


def test_conway_to_descriptor():
    tangles, e = parse_conway("(3,2)")
    assert str(conway_to_descriptor(tangles, e)) == "M(1/3,1/2;0)"


def test_normalize_and_determinant():
    m = MontesinosDescriptor((Fraction(-1, 3), Fraction(1, 2)), 0)
    assert montesinos_normalize(m) == MontesinosDescriptor((Fraction(2, 3), Fraction(1, 2)), -1)
    assert montesinos_determinant(m) == montesinos_determinant(montesinos_normalize(m)) == 1
    assert montesinos_determinant(MontesinosDescriptor((Fraction(1, 2),) * 3, 1)) == 20
    assert montesinos_determinant(MontesinosDescriptor((Fraction(2, 7),), 0)) == 2


def test_link_diagram_validation():
    with pytest.raises(InputError):
        LinkDiagram(((1, 2, 3, 4),))
    with pytest.raises(InputError):
        LinkDiagram((), 0)
    assert LinkDiagram.unlink(3).free_loops == 3


@pytest.mark.parametrize("fraction, crossings, count", [
    (0, 0, 2),
    (INFINITY, 0, 1),
    (1, 1, 1),
    (2, 2, 2),
    (3, 3, 1),
    (Fraction(5, 2), 4, 1),
    (Fraction(7, 3), 5, 1),
    (Fraction(8, 3), 5, 2),
])
def test_rational_links(fraction, crossings, count):
    d = rational_link_diagram(fraction)
    assert d.crossing_count == crossings
    assert link_component_count(d) == count


def test_tangle_sum_adds_integers():
    assert (Tangle.integer(2) + Tangle.integer(-2)).numerator_closure().crossing_count == 4
    assert Tangle.integer(0).numerator_closure() == LinkDiagram.unlink(2)
    assert Tangle.infinity().denominator_closure() == LinkDiagram.unlink(2)


def test_montesinos_diagram():
    d = montesinos_to_diagram(MontesinosDescriptor((Fraction(1, 2),) * 3, 1))
    assert d.crossing_count == 7


def test_curl_removal():
    d = rational_link_diagram(1)
    index, slot, sign = find_curl(d)
    assert index == 0
    assert sign in (1, -1)
    assert remove_curl(d, index, slot) == LinkDiagram.unknot()
    assert find_curl(TREFOIL) is None


def test_mirror_flips_writhe():
    assert abs(writhe(TREFOIL)) == 3
    assert writhe(mirror(TREFOIL)) == -writhe(TREFOIL)
    assert canonical_code(mirror(mirror(TREFOIL))) == canonical_code(TREFOIL)


def test_switching_every_crossing_is_the_mirror():
    d = TREFOIL
    for index in range(d.crossing_count):
        d = switch_crossing(d, index)
    assert canonical_code(d) == canonical_code(mirror(TREFOIL))


def test_reversing_a_hopf_component_flips_the_writhe():
    assert len(components(HOPF)) == 2
    assert abs(writhe(HOPF)) == 2
    assert writhe(HOPF, reverse=(0,)) == -writhe(HOPF)
    with pytest.raises(InputError):
        components(HOPF, reverse=(5,))


def test_smoothing_removes_one_crossing():
    for kind in ("A", "B"):
        assert smooth(TREFOIL, 0, kind).crossing_count == 2
    with pytest.raises(InputError):
        smooth(TREFOIL, 0, "C")


def test_split_and_sums():
    union = disjoint_union(TREFOIL, HOPF)
    pieces, loops = split_components(union)
    assert sorted(piece.crossing_count for piece in pieces) == [2, 3]
    assert loops == 0
    assert link_component_count(union) == 3

    total = connected_sum(TREFOIL, TREFOIL)
    assert total.crossing_count == 6
    assert link_component_count(total) == 1
    assert len(split_components(total)[0]) == 1
    assert connected_sum(LinkDiagram.unknot(), HOPF) == HOPF


def test_insert_twists():
    assert insert_twists(TREFOIL, 0, 5).crossing_count == 8
    assert insert_twists(TREFOIL, 0, -5).crossing_count == 6
    assert canonical_code(insert_twists(TREFOIL, 0, 0)) == canonical_code(TREFOIL)


def test_canonical_code_ignores_labels():
    assert canonical_code(TREFOIL.relabeled(10)) == canonical_code(TREFOIL)
    assert canonical_code(TREFOIL) != canonical_code(HOPF)


def test_canonical_code_needs_a_connected_diagram():
    assert canonical_code(LinkDiagram.unknot()) == ((), 1)
    with pytest.raises(InputError):
        canonical_code(disjoint_union(TREFOIL, HOPF))
    with pytest.raises(InputError):
        canonical_code(LinkDiagram(TREFOIL.crossings, 1))
    with pytest.raises(InputError):
        canonical_code(LinkDiagram.unlink(2))


def test_continued_fractions_round_trip():
    for p in range(-50, 51):
        for q in range(1, 51):
            if gcd(p, q) == 1:
                f = TangleFraction(p, q)
                assert cf_value(cf_from_fraction(f)) == f


def test_normalize_is_idempotent():
    rng = random.Random(13)
    for _ in range(50):
        factors = []
        for _ in range(rng.randint(1, 4)):
            p = rng.randint(2, 9)
            factors.append(Fraction(rng.choice((1, -1)) * rng.randint(1, p - 1), p))
        m = montesinos_normalize(MontesinosDescriptor(tuple(factors), rng.randint(-3, 3)))
        assert montesinos_normalize(m) == m
        assert all(0 < f < 1 for f in m.factors)
