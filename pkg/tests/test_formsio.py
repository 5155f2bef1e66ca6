import json
from fractions import Fraction

import pytest

from conftest import echelon
from hodgefil.errors import (DataError, DependentForms, DimensionMismatch, EtaMismatch, FixtureNotFound,
                             ParseError, PrecisionTooLow, SchemaError)
from hodgefil.formsio import (FormBasis, basis_from_json, basis_to_json, echelonize, eta_product_12,
                              express_in_basis, ingest_basis, load_fixture, required_precision,
                              validate_dimensions)
from hodgefil.series import LaurentSeries

P = LaurentSeries.parse


def doc(forms, prec=10, level=67, weight=2, sign="+"):
    return {"level": level, "weight": weight, "atkin_lehner": sign, "precision": prec, "forms": forms}


def basis(*texts, prec=6, level=67, weight=2):
    return FormBasis(level, weight, "plus", tuple(P(t) for t in texts), prec)


def test_load_bundled_fixture():
    b = load_fixture(67, 2, "+")
    assert (b.level, b.weight, b.al_sign, len(b), b.prec) == (67, 2, "plus", 2, 210)
    assert b.forms[0].coefficients(1, 5) == [1, 0, -3, -3, -3]


def test_json_roundtrip():
    b = load_fixture(67, 12, "plus")
    assert basis_from_json(basis_to_json(b)) == b


def test_missing_fixture(tmp_path):
    with pytest.raises(FixtureNotFound) as exc:
        load_fixture(67, 2, "+", data_dir=tmp_path)
    assert exc.value.exit_code == 3 and isinstance(exc.value, DataError)


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        ingest_basis(p)


@pytest.mark.parametrize("bad", [
    doc([]),
    {"level": 67},
    doc([{"valuation": 0, "coefficients": ["1"]}]),
    doc([{"coefficients": ["1"]}]),
    doc([{"valuation": 1, "coefficients": ["1"]}], sign="?"),
    doc([{"valuation": 1, "coefficients": ["1"]}], prec="10"),
    [],
])
def test_schema_errors(bad):
    with pytest.raises(SchemaError):
        basis_from_json(bad)


def test_bad_coefficient_is_parse_error():
    with pytest.raises(ParseError):
        basis_from_json(doc([{"valuation": 1, "coefficients": ["x"]}]))


def test_precision_floor():
    with pytest.raises(PrecisionTooLow):
        basis_from_json(doc([{"valuation": 1, "coefficients": ["1"]}], prec=10), min_precision=11)


def test_echelonize_example():
    b = echelonize(basis("q + q^2 + O(q^6)", "q + 2q^2 + O(q^6)"))
    assert [str(f) for f in b.forms] == ["q + O(q^6)", "q^2 + O(q^6)"]


def test_echelonize_dependent():
    with pytest.raises(DependentForms):
        echelonize(basis("q + q^2 + O(q^6)", "2q + 2q^2 + O(q^6)"))


@pytest.mark.parametrize("level,weight,sign", [(67, 2, "+"), (67, 2, "full"), (97, 12, "+"), (193, 2, "+")])
def test_echelonize_preserves_span_and_is_idempotent(level, weight, sign):
    raw = load_fixture(level, weight, sign)
    e = echelon(level, weight, sign)
    assert echelonize(e) == e
    vals = e.valuations
    assert vals == sorted(set(vals))
    assert all(f[f.valuation] == 1 for f in e.forms)
    for f in raw.forms:
        coords = express_in_basis(f, e)
        rebuilt = sum((b.scale(c) for b, c in zip(e.forms, coords)), LaurentSeries.zero())
        assert (rebuilt - f).is_known_zero()


def test_express_outside_span():
    e = echelonize(basis("q + O(q^6)", "q^3 + O(q^6)"))
    with pytest.raises(DependentForms):
        express_in_basis(P("q^2 + O(q^6)"), e)


def test_eta_product_small_level():
    # q^2 prod (1-q^n)^12 (1-q^{3n})^12 for N = 3
    e = eta_product_12(3, 6)
    assert e.coefficients(2, 5) == [1, -12, 54, -100]
    assert all(isinstance(c, int) or c.denominator == 1 for c in e.coeffs)


@pytest.mark.parametrize("N", [67, 97, 193])
def test_eta_product_matches_last_fixture_form(N):
    last = echelon(N, 12, "+").forms[-1]
    assert eta_product_12(N, last.prec) == last
    assert last.valuation == (N + 1) // 2


@pytest.mark.parametrize("N,g,d", [(67, 2, 32), (97, 3, 46), (193, 7, 90)])
def test_validate_dimensions(N, g, d):
    info = validate_dimensions(echelon(N, 2, "+"), echelon(N, 12, "+"))
    assert (info["g"], info["d"], info["half_level"]) == (g, d, (N + 1) // 2)


def test_dimension_mismatch():
    w2 = echelon(67, 2, "+")
    w12 = echelon(67, 12, "+")
    short = FormBasis(67, 12, "plus", w12.forms[1:], w12.prec)
    assert len(short) == 31
    with pytest.raises(DimensionMismatch):
        validate_dimensions(w2, short)


def test_eta_mismatch():
    w2 = echelon(67, 2, "+")
    w12 = echelon(67, 12, "+")
    bad = w12.forms[:-1] + (w12.forms[-1] + P("q^100 + O(q^210)"),)
    with pytest.raises(EtaMismatch):
        validate_dimensions(w2, FormBasis(67, 12, "plus", bad, w12.prec))


def test_required_precision_fits_fixtures():
    for N, g, d in ((67, 2, 32), (97, 3, 46), (193, 7, 90)):
        need = required_precision(N, 3, g, d, N - 7)
        assert need <= load_fixture(N, 12, "+").prec
