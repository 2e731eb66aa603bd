from fractions import Fraction
from pathlib import Path

import pytest

from bracket_utilities import determinant
from dt_utilities import DTCode, dt_to_diagram, read_knot_table
from exceptions import InputError, ParseError
from link_utilities import LinkDiagram, MontesinosDescriptor, link_component_count

SAMPLE_TABLE = Path(__file__).resolve().parent.parent / "Knot_Tables" / "sample.dt"


def test_dt_code_validation():
    assert DTCode.from_text("4, 6, 2").entries == (4, 6, 2)
    assert str(DTCode((4, -6, 2))) == "4 -6 2"
    with pytest.raises(InputError):
        DTCode((4, 5, 2))
    with pytest.raises(InputError):
        DTCode((4, 4, 2))
    with pytest.raises(ParseError):
        DTCode.from_text("4 six 2")


def test_empty_code_is_the_unknot():
    assert dt_to_diagram(DTCode(())) == LinkDiagram.unknot()


@pytest.mark.parametrize("code, det", [
    ("4 6 2", 3),
    ("4 6 8 2", 5),
    ("6 8 10 2 4", 5),
    ("4 8 10 2 6", 7),
    ("4 8 12 10 2 6", 9),
])
def test_realization(code, det):
    d = dt_to_diagram(code)
    assert d.crossing_count == len(code.split())
    assert link_component_count(d) == 1
    assert determinant(d) == det


def test_read_sample_table():
    records = read_knot_table(SAMPLE_TABLE)
    assert [r.name for r in records][:3] == ["3_1", "4_1", "5_1"]
    assert all(r.crossings == r.code.crossing_count for r in records)


def test_read_table_errors(tmp_path):
    table = tmp_path / "bad.dt"
    table.write_text("# comment\n\n3_1 3 4 6 2\n4_1 5 4 6 8 2\n")
    with pytest.raises(ParseError) as error:
        read_knot_table(table)
    assert "line 4" in str(error.value)

    table.write_text("3_1 3 4 six 2\n")
    with pytest.raises(ParseError):
        read_knot_table(table)

    with pytest.raises(FileNotFoundError):
        read_knot_table(tmp_path / "missing.dt")


def test_read_montesinos_rows(tmp_path):
    table = tmp_path / "montesinos.dt"
    table.write_text("10_132 10 M(2/7,1/3,-1/2;0)\n3_1 3 4 6 2\n")
    montesinos, trefoil = read_knot_table(table)
    assert montesinos.code == MontesinosDescriptor((Fraction(2, 7), Fraction(1, 3), Fraction(-1, 2)), 0)
    assert montesinos.diagram().crossing_count == 10
    assert trefoil.diagram().crossing_count == 3

    table.write_text("10_132 10 M(2/7,1/3\n")
    with pytest.raises(ParseError):
        read_knot_table(table)
