import pytest

from pseudosym.catalogue import named
from pseudosym.decoration import GSAT, enumerate_decorations, is_generalized_satake, orbit_classes
from pseudosym.restricted import restricted_type
from pseudosym.table import diff_typeA, table_typeA


def expected_row_count(n):
    # pl (n > 1), alt (n > 1 odd) and one rfl_p for each admissible p
    N = n + 1
    if n == 1:
        return 2
    return 1 + (n % 2) + N // 2 + 1


@pytest.mark.parametrize("n", range(1, 8))
def test_row_count(n):
    assert len(table_typeA(n)) == expected_row_count(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_table_matches_enumeration(n):
    diff = diff_typeA(n)
    assert diff.ok, diff.as_dict()
    assert len(orbit_classes(enumerate_decorations(named(f"A{n}"), GSAT))) == len(table_typeA(n))


def test_rows_are_gsat():
    for n in range(1, 7):
        for row in table_typeA(n):
            assert is_generalized_satake(row.decoration)
            assert restricted_type(row.decoration).name == row.restricted


def test_a3_rows():
    rows = {r.label: r.restricted for r in table_typeA(3)}
    assert rows == {"pl": "A3", "alt": "A1", "rfl_0": "C2", "rfl_2": "BC1", "rfl_4": "Z0"}


def test_a4_rows():
    rows = {r.label: r.restricted for r in table_typeA(4)}
    assert rows == {"pl": "A4", "rfl_1": "BC2", "rfl_3": "BC1", "rfl_5": "Z0"}


def test_as_dict_shape():
    d = diff_typeA(2).as_dict()
    assert d == {"n": 2, "ok": True, "missing": [], "extra": [], "mismatched": []}


def test_bad_rank():
    with pytest.raises(ValueError):
        table_typeA(0)
