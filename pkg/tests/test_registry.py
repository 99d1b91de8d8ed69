import json
from fractions import Fraction

import pytest

from wzverify import closedform as cf
from wzverify.certificates import BY_NAME
from wzverify.exact import K, N
from wzverify.registry import (BOUNDARY_FORMS, DEFAULT_GRID, IDENTITIES, IdentityDef, compose, default_grid,
                               export_document, g_series, get, import_document, shifted_weight)

LHS_Z = {1: "1/4", 2: "1/64", 3: "-1/8", 4: "-1/4", 5: "-27/512", 6: "1/9", 7: "-1/48", 8: "-1/4",
         9: "-1/1024", 10: "1/16"}
WEIGHTS = {1: (1, 6), 2: (5, 42), 3: (1, 6), 4: (3, 20), 5: (15, 154), 6: (1, 8), 7: (3, 28), 8: (1, 8, 20),
           9: (13, 180, 820), 10: (3, 34, 120)}
SPECIAL = {1: "π^2/2", 2: "8·π^2/3", 3: "4·G", 4: "16·ln2", 5: "128·ln2", 6: "√3·π", 8: "7·ζ(3)",
           9: "256·ζ(3)", 10: "16·π^2/3"}


def test_ten_identities():
    assert sorted(IDENTITIES) == list(range(1, 11))


@pytest.mark.parametrize("i", range(1, 11))
def test_left_sides(i):
    d = IDENTITIES[i]
    assert d.lhs_z == Fraction(LHS_Z[i])
    assert tuple(d.lhs_weight) == WEIGHTS[i]
    assert d.lhs.weight == shifted_weight(WEIGHTS[i])


def test_special_values_table():
    got = {i: cf.to_text(e) for i, d in IDENTITIES.items() for x, e in d.special_values if x == Fraction(1, 2)}
    assert got == SPECIAL
    assert IDENTITIES[7].special_values == ()


def test_variants():
    for i in (1, 2, 3, 4, 5):
        assert IDENTITIES[i].variant_labels == ["series", "closed"]
    assert IDENTITIES[6].variant_labels == ["closed"]
    for i in (8, 9, 10):
        assert IDENTITIES[i].variant_labels == ["series", "via_g", "expanded"]
    with pytest.raises(KeyError):
        IDENTITIES[1].variant("via_g")


def test_auxiliary_links():
    assert g_series(IDENTITIES[8]) == IDENTITIES[1].lhs
    assert g_series(IDENTITIES[9]) == IDENTITIES[2].lhs
    assert g_series(IDENTITIES[10]) == IDENTITIES[2].lhs
    assert g_series(IDENTITIES[1]) is None


def test_pairs_resolve():
    names = [p.name for d in IDENTITIES.values() for p in d.pairs()]
    assert sorted(names) == sorted(BY_NAME)


def test_shifted_weight_polynomial():
    w = shifted_weight((1, 8, 20))
    assert w == 20 * (N + K) ** 2 + 8 * (N + K) + 1


def test_default_grid_adds_special_points():
    assert default_grid(IDENTITIES[1]) == sorted(set(DEFAULT_GRID) | {Fraction(1, 2)})
    assert default_grid(IDENTITIES[7]) == list(DEFAULT_GRID)


def test_get_unknown():
    with pytest.raises(KeyError):
        get(11)


def test_compose_substitutes_g():
    v = compose(IDENTITIES[8])
    g = IDENTITIES[1].lhs
    assert all(t.series != g for t in v.terms)
    assert len(v.terms) == len(IDENTITIES[8].variant("via_g").terms) - 1 + len(IDENTITIES[1].variant("closed").terms)
    with pytest.raises(ValueError):
        compose(IDENTITIES[1])


def test_with_lhs_weight_is_a_copy():
    d = IDENTITIES[1].with_lhs_weight((2, 6))
    assert d.lhs_weight == (2, 6)
    assert IDENTITIES[1].lhs_weight == (1, 6)


def test_export_contains_expected_parameters():
    doc = export_document()
    by_id = {d["id"]: d for d in doc["identities"]}
    assert by_id[3]["lhs"]["z"] == "-1/8"
    assert by_id[5]["lhs"]["z"] == "-27/512"
    assert set(doc["boundary_forms"]) == set(BOUNDARY_FORMS)
    assert len(doc["certificates"]) == 18


def test_export_round_trip():
    doc = export_document()
    text = json.dumps(doc)
    back = import_document(json.loads(text))
    assert back == IDENTITIES
    for d in back.values():
        assert isinstance(d, IdentityDef)
    assert json.dumps(export_document()) == text
