import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

import probe_utilities
from bracket_utilities import invariants_from_quotient, jones_invariants, v1_closed, v2_closed, v3_closed, v5_closed
from classify_utilities import Form1, Form2, Form5, classify_montesinos
from config import Config
from cyclotomic_utilities import QuotientElement
from dt_utilities import dt_to_diagram, read_knot_table
from exceptions import ConsistencyError
from kauffman_utilities import APowerClass, FInvariantSet, KauffmanEvaluator, f_invariants, jones_rong_exponent
from link_utilities import (LinkDiagram, MontesinosDescriptor, insert_twists, montesinos_to_diagram,
                            rational_link_diagram)
from probe_utilities import (STAGE_JONES, STAGE_KAUFFMAN, ProbeMatch, ProbeReport, form1_search_limit, format_human,
                             format_json, format_tsv, kauffman_refine, probe, probe_form1, probe_form2, probe_form3,
                             probe_forms45, probe_table)

DATA = Path(__file__).resolve().parent / "data"
SAMPLE_TABLE = Path(__file__).resolve().parent.parent / "Knot_Tables" / "sample.dt"

def triples(report):
    return {(m.form, m.k, m.l) for m in report.matches}


def test_form1_search_limit():
    assert form1_search_limit(0) == 2
    assert form1_search_limit(100) == 10
    with pytest.raises(ConsistencyError):
        form1_search_limit(1e150)


def test_searches_find_their_own_closed_forms():
    assert (2, 1) in probe_form1(invariants_from_quotient(v1_closed(2, 1), 4))
    assert (1, 2) in probe_form2(invariants_from_quotient(v2_closed(1, 2), 65))
    assert (2, 0) in probe_form3(invariants_from_quotient(v3_closed(2, 0), 4))
    assert probe_forms45(invariants_from_quotient(v5_closed(), 20)) == [5]
    assert probe_forms45(invariants_from_quotient(QuotientElement.zero(), 0)) == [4]


def test_determinant_filter_prunes_form1():
    # 5 divides det, but not k - l
    assert (2, 1) not in probe_form1(invariants_from_quotient(v1_closed(2, 1), 20))


def test_unknot_trefoil_and_figure_eight():
    assert probe(LinkDiagram.unknot()).primary() == ProbeMatch(3, 0, 0)
    assert probe(rational_link_diagram(3)).primary().normal_form().parameters() == {"k": 1, "l": 0}

    report = probe(dt_to_diagram("4 6 8 2"), "4_1")
    assert {m.form for m in report.matches} == {4}
    assert format_human(report) == "4_1 form 4"


def test_unlink_matches_form_five_first():
    report = probe(LinkDiagram.unlink(2))
    assert (3, 0, 1) in triples(report)
    assert report.primary().form == 5


@pytest.mark.parametrize("nf", [Form1(3, 0), Form1(2, 1), Form2(2, 1)])
def test_montesinos_representatives_are_found(nf):
    report = probe(nf.representative_diagram())
    assert (nf.form, nf.k, nf.l) in triples(report)
    assert report.verdict == "matched"


def test_form_five_representative():
    report = probe(Form5().representative_diagram(), "m5")
    assert 5 in {m.form for m in report.matches}
    assert format_human(report) == "m5 form 5"


def test_skipping_the_mirror_image():
    report = probe(Form1(3, 0).representative_diagram(), probe_mirror=False)
    assert not any(m.mirrored for m in report.matches)


def test_refine_keeps_genuine_matches():
    diagram = Form2(2, 1).representative_diagram()
    report = probe(diagram)
    refined = kauffman_refine(diagram, report)
    kept = [m for m in refined.matches if (m.form, m.k, m.l) == (2, 2, 1)]
    assert kept and all(m.stage == STAGE_KAUFFMAN for m in kept)
    assert triples(refined) <= triples(report)


def test_refine_keeps_form_four():
    diagram = dt_to_diagram("4 6 8 2")
    report = probe(diagram)
    assert kauffman_refine(diagram, report).matches == report.matches


def test_refine_checks_mirrored_matches_against_the_mirror_image(monkeypatch):
    # s is not an a-power multiple of its conjugate 1/s
    s = QuotientElement.monomial(1)
    chiral = FInvariantSet(QuotientElement.monomial(0), QuotientElement.monomial(0), APowerClass(s), APowerClass(s))
    monkeypatch.setattr(probe_utilities, "f_invariants", lambda d, evaluator=None: chiral)
    monkeypatch.setattr(probe_utilities, "normal_form_invariants", lambda nf, evaluator=None: chiral)
    report = ProbeReport("x", (ProbeMatch(1, 3, 0), ProbeMatch(1, 3, 0, mirrored=True)))
    refined = kauffman_refine(LinkDiagram.unknot(), report, KauffmanEvaluator())
    assert refined.matches == (ProbeMatch(1, 3, 0, stage=STAGE_KAUFFMAN),)


def test_determinant_bounds_the_form2_and_form3_searches():
    # d(L) >= l for Form 3 and >= l - 1 for Form 2, and 5^d(L) divides det
    assert (0, 2) in probe_form3(invariants_from_quotient(v3_closed(0, 2), 0))
    assert (0, 2) not in probe_form3(invariants_from_quotient(v3_closed(0, 2), 5))
    assert (1, 3) in probe_form2(invariants_from_quotient(v2_closed(1, 3), 25))
    assert (1, 3) not in probe_form2(invariants_from_quotient(v2_closed(1, 3), 5))


def test_primary_match_order():
    report = ProbeReport("x", (ProbeMatch(1, 2, 1, mirrored=True), ProbeMatch(3, 1, 0)))
    assert format_human(report) == "x match form 3 for k=1, l=0"
    report = ProbeReport("x", (ProbeMatch(3, 2, 0), ProbeMatch(5, mirrored=True)))
    assert format_human(report) == "x form 5"
    report = ProbeReport("x", (ProbeMatch(2, 1, 2), ProbeMatch(2, 3, 1)))
    assert report.primary() == ProbeMatch(2, 1, 2)


def test_ruled_out_formats():
    report = ProbeReport("10_150")
    assert report.verdict == "ruled_out"
    assert format_human(report) == "10_150"
    assert format_tsv(report) == "10_150\t-\t-\t-\truled_out"


def test_tsv_and_json():
    report = ProbeReport("k", (ProbeMatch(4), ProbeMatch(1, 3, 0, stage=STAGE_KAUFFMAN)))
    assert format_tsv(report).split("\n") == ["k\t4\t-\t-\tjones", "k\t1\t3\t0\tjones+kauffman"]
    data = json.loads(format_json([report]))
    assert data[0]["verdict"] == "matched"
    assert data[0]["matches"][1] == {"form": 1, "k": 3, "l": 0, "mirrored": False, "stage": STAGE_KAUFFMAN}
    assert data[0]["matches"][0]["stage"] == STAGE_JONES


def random_montesinos(rng, max_denominator=4):
    factors = []
    for _ in range(rng.randint(1, 3)):
        p = rng.randint(2, max_denominator)
        factors.append(Fraction(rng.choice((1, -1)) * rng.randint(1, p - 1), p))
    return MontesinosDescriptor(tuple(factors), rng.randint(-1, 1))


@pytest.mark.slow
def test_invariants_survive_five_moves():
    rng = random.Random(20)
    evaluator = KauffmanEvaluator()
    checked = 0
    while checked < 200:
        d = montesinos_to_diagram(random_montesinos(rng))
        if not d.crossings:
            continue
        moved = insert_twists(d, rng.randrange(d.crossing_count), rng.choice((5, -5)))
        before, after = jones_invariants(d), jones_invariants(moved)
        assert (before.vbar, before.gamma1, before.gamma3) == (after.vbar, after.gamma1, after.gamma3)
        if moved.crossing_count <= 12:
            assert f_invariants(d, evaluator) == f_invariants(moved, evaluator)
        checked += 1


def test_montesinos_links_match_their_own_normal_form():
    rng = random.Random(7)
    for _ in range(25):
        descriptor = random_montesinos(rng, max_denominator=5)
        nf = classify_montesinos(descriptor)
        report = probe(montesinos_to_diagram(descriptor), probe_mirror=False)
        if nf.form == 4:
            assert 4 in {m.form for m in report.matches}, descriptor
        else:
            p = nf.parameters()
            assert (nf.form, p.get("k"), p.get("l")) in triples(report), f"{descriptor} -> {nf}"


def test_table_in_parallel():
    records = read_knot_table(SAMPLE_TABLE)
    serial = probe_table(records, refine=False, jobs=1)
    assert [r.name for r in serial] == [r.name for r in records]
    assert probe_table(records, refine=False, jobs=2) == serial


def read_expected_table():
    lines = (DATA / "probe_table_10n.txt").read_text().splitlines()
    return {" ".join(line.split()[:2]): line for line in lines if line.strip()}


def table_lines(reports):
    return {report.name.replace("_", " "): format_human(report).replace("_", " ") for report in reports}


def test_knot_table_holds_the_montesinos_knots():
    names = {record.name for record in read_knot_table(Config.KNOT_TABLE)}
    assert {f"10_{n}" for n in range(124, 148)} <= names


def test_golden_table():
    expected = read_expected_table()
    lines = table_lines(probe_table(read_knot_table(Config.KNOT_TABLE), refine=False, jobs=1))
    assert set(lines) <= set(expected)
    for name, line in lines.items():
        assert line == expected[name]


def test_refined_table():
    records = read_knot_table(Config.KNOT_TABLE)
    plain = {r.name.replace("_", " "): r.verdict for r in probe_table(records, refine=False, jobs=1)}
    refined = {r.name.replace("_", " "): r.verdict for r in probe_table(records, refine=True, jobs=1)}
    changed = {name for name in plain if plain[name] != refined[name]}
    assert changed == {"10 155", "10 161"} & set(plain)
    assert all(refined[name] == "ruled_out" for name in changed)


def test_jones_rong_shape_of_table_knots():
    evaluator = KauffmanEvaluator()
    for record in read_knot_table(Config.KNOT_TABLE):
        q1 = f_invariants(record.diagram(), evaluator).q1
        assert jones_rong_exponent(q1) is not None, record.name
