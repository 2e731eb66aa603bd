import random
from fractions import Fraction

import pytest

from cyclotomic_utilities import QuotientElement
from dt_utilities import dt_to_diagram
from exceptions import DiagramSizeError, InputError
from kauffman_utilities import (EVAL_POINTS, POINTS_BY_NAME, APowerClass, KauffmanEvaluator, SkeinConstants,
                                f1_closed, f2_closed, f3_closed, f_invariants, jones_rong_exponent, lambda_eval,
                                orbit_eq_mod_a, skein_matrix, skein_tangle_coeffs)
from link_utilities import (LinkDiagram, connected_sum, disjoint_union, mirror, rational_link_diagram, smooth,
                            switch_crossing)

TREFOIL = rational_link_diagram(3)
HOPF = rational_link_diagram(2)
FIGURE_EIGHT = dt_to_diagram("4 6 8 2")

Q_POINTS = [POINTS_BY_NAME["q1"], POINTS_BY_NAME["q2"]]


def test_points():
    for point in EVAL_POINTS:
        assert point.a ** 5 == 1
        assert point.z.complex_conjugate() == point.z
    assert POINTS_BY_NAME["q1"].a == 1


def test_unlinks():
    evaluator = KauffmanEvaluator()
    assert evaluator.evaluate(LinkDiagram.unknot()) == (1, 1, 1, 1)
    constants = [SkeinConstants.at(point) for point in EVAL_POINTS]
    assert evaluator.evaluate(LinkDiagram.unlink(3)) == tuple(c.T2 ** 2 for c in constants)
    assert evaluator.evaluate(rational_link_diagram(0)) == tuple(c.T2 for c in constants)


def test_curls_contribute_powers_of_a():
    for point in EVAL_POINTS:
        value = lambda_eval(rational_link_diagram(1), point)
        assert value in (point.a, point.a_power(-1))


@pytest.mark.parametrize("point", EVAL_POINTS, ids=lambda p: p.name)
def test_figure_eight(point):
    assert lambda_eval(FIGURE_EIGHT, point) == SkeinConstants.at(point).G4


@pytest.mark.parametrize("point", Q_POINTS, ids=lambda p: p.name)
def test_hopf_and_trefoil_at_a_equal_one(point):
    constants = SkeinConstants.at(point)
    assert lambda_eval(HOPF, point) == constants.H
    assert lambda_eval(TREFOIL, point) == constants.G3


def test_mirror_conjugates_lambda():
    evaluator = KauffmanEvaluator()
    values = evaluator.evaluate(TREFOIL)
    mirrored = evaluator.evaluate(mirror(TREFOIL))
    assert mirrored == tuple(v.complex_conjugate() for v in values)
    assert mirrored[:2] == values[:2]


def test_multiplicative_under_sums():
    evaluator = KauffmanEvaluator()
    trefoil, hopf = evaluator.evaluate(TREFOIL), evaluator.evaluate(HOPF)
    constants = [SkeinConstants.at(point) for point in EVAL_POINTS]
    product = tuple(x * y for x, y in zip(trefoil, hopf))
    assert evaluator.evaluate(connected_sum(TREFOIL, HOPF)) == product
    assert evaluator.evaluate(disjoint_union(TREFOIL, HOPF)) == tuple(p * c.T2 for p, c in zip(product, constants))


def test_cache_is_shared():
    evaluator = KauffmanEvaluator()
    evaluator.evaluate(FIGURE_EIGHT)
    misses = evaluator.cache_info()["misses"]
    evaluator.evaluate(FIGURE_EIGHT.relabeled(20))
    info = evaluator.cache_info()
    assert info["misses"] == misses
    assert info["hits"] >= 1


def test_crossing_cap():
    with pytest.raises(DiagramSizeError):
        KauffmanEvaluator(max_crossings=3).evaluate(FIGURE_EIGHT)


def test_f_invariants_need_all_points():
    with pytest.raises(InputError):
        f_invariants(TREFOIL, KauffmanEvaluator(points=Q_POINTS))


def test_a_power_classes():
    point = POINTS_BY_NAME["f1"]
    x = 1 + point.z
    assert APowerClass(x) == APowerClass(x * point.a_power(3))
    assert APowerClass(x) != APowerClass(-x)
    assert orbit_eq_mod_a(x * point.a, x, point.a)
    assert not orbit_eq_mod_a(-x, x, point.a)


@pytest.mark.parametrize("diagram, d", [
    (LinkDiagram.unknot(), 0),
    (TREFOIL, 0),
    (HOPF, 0),
    (FIGURE_EIGHT, 1),
    (LinkDiagram.unlink(2), 1),
    (connected_sum(FIGURE_EIGHT, FIGURE_EIGHT), 2),
])
def test_jones_rong_exponent(diagram, d):
    assert jones_rong_exponent(f_invariants(diagram).q1) == d


def test_jones_rong_exponent_of_other_values():
    assert jones_rong_exponent(QuotientElement.from_rational(5)) == 2
    assert jones_rong_exponent(QuotientElement.from_rational(2)) is None
    assert jones_rong_exponent(QuotientElement.zero()) is None


@pytest.mark.parametrize("point", EVAL_POINTS, ids=lambda p: p.name)
def test_skein_tangle_coefficients(point):
    half, _ = skein_tangle_coeffs(point)
    assert half == (point.z * point.a, point.z, -QuotientElement.one())
    matrix = skein_matrix(point)
    assert len(matrix) == 3 and all(len(row) == 3 for row in matrix)


@pytest.mark.parametrize("point", EVAL_POINTS, ids=lambda p: p.name)
def test_connected_sum_closed_form(point):
    constants = SkeinConstants.at(point)
    assert f3_closed(0, 0, 0, point) == 1
    assert f3_closed(1, 2, 1, point) == constants.G4 * constants.H ** 2 * constants.T2


def test_closed_forms_validate_parameters():
    point = EVAL_POINTS[0]
    with pytest.raises(InputError):
        f1_closed(1, 1, point)
    with pytest.raises(InputError):
        f2_closed(3, 0, point)
    with pytest.raises(InputError):
        f3_closed(-1, 0, 0, point)


def test_skein_relation_on_random_diagrams():
    rng = random.Random(5)
    evaluator = KauffmanEvaluator()
    for _ in range(15):
        a = rational_link_diagram(Fraction(rng.randint(-7, 7) or 1, rng.randint(1, 3)))
        b = rational_link_diagram(Fraction(rng.randint(1, 5), rng.randint(1, 2)))
        d = connected_sum(a, b) if a.crossings else b
        index = rng.randrange(d.crossing_count)
        plus = evaluator.evaluate(d)
        minus = evaluator.evaluate(switch_crossing(d, index))
        zero = evaluator.evaluate(smooth(d, index, "A"))
        infinity = evaluator.evaluate(smooth(d, index, "B"))
        for point, values in zip(EVAL_POINTS, zip(plus, minus, zero, infinity)):
            x, y, z0, zi = values
            assert x + y == point.z * (z0 + zi), point.name
