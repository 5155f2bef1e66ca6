"""Cusp-form bases: fixture ingestion, echelon form, eta product, dimension checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import linalg
from .errors import (DependentForms, DimensionMismatch, EtaMismatch, FixtureNotFound, ParseError,
                     PrecisionTooLow, SchemaError)
from .series import LaurentSeries

SIGNS = {"+": "plus", "-": "minus", "full": "full", "plus": "plus", "minus": "minus"}


@dataclass(frozen=True)
class FormBasis:
    level: int
    weight: int
    al_sign: str
    forms: tuple[LaurentSeries, ...]
    prec: int

    def __len__(self) -> int:
        return len(self.forms)

    def __getitem__(self, i: int) -> LaurentSeries:
        return self.forms[i]

    @property
    def valuations(self) -> list[int]:
        return [f.valuation for f in self.forms]


def default_data_dir() -> Path:
    return Path(str(resources.files("hodgefil") / "data"))


def fixture_path(level: int, weight: int, sign: str, data_dir: str | Path | None = None) -> Path:
    base = Path(data_dir) if data_dir is not None else default_data_dir()
    return base / f"{level}_w{weight}_{SIGNS.get(sign, sign)}.json"


def load_fixture(level: int, weight: int, sign: str, data_dir=None, min_precision: int | None = None) -> FormBasis:
    return ingest_basis(fixture_path(level, weight, sign, data_dir), min_precision)


def ingest_basis(path: str | Path, min_precision: int | None = None) -> FormBasis:
    """Parse a fixture file into a (not yet echelonized) basis."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FixtureNotFound(f"fixture not found: {path}", operation="ingest_basis", datum=path) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}", operation="ingest_basis", datum=path) from None
    return basis_from_json(doc, min_precision, source=str(path))


def basis_from_json(doc, min_precision: int | None = None, source: str = "<json>") -> FormBasis:
    if not isinstance(doc, dict):
        raise SchemaError(f"{source}: top level must be an object", operation="ingest_basis", datum=source)
    for key in ("level", "weight", "atkin_lehner", "precision", "forms"):
        if key not in doc:
            raise SchemaError(f"{source}: missing field {key!r}", operation="ingest_basis", datum=key)
    level, weight, prec = doc["level"], doc["weight"], doc["precision"]
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (level, weight, prec)):
        raise SchemaError(f"{source}: level, weight and precision must be integers",
                          operation="ingest_basis", datum=source)
    if doc["atkin_lehner"] not in ("+", "-", "full"):
        raise SchemaError(f"{source}: atkin_lehner must be '+', '-' or 'full'",
                          operation="ingest_basis", datum=doc["atkin_lehner"])
    forms_doc = doc["forms"]
    if not isinstance(forms_doc, list) or not forms_doc:
        raise SchemaError(f"{source}: form list is empty", operation="ingest_basis", datum="forms")
    forms = []
    for i, fd in enumerate(forms_doc):
        if not isinstance(fd, dict) or "valuation" not in fd or "coefficients" not in fd:
            raise SchemaError(f"{source}: form {i} needs valuation and coefficients",
                              operation="ingest_basis", datum=i)
        v = fd["valuation"]
        if not isinstance(v, int) or v < 1:
            raise SchemaError(f"{source}: form {i} has valuation {v!r}; cusp forms need >= 1",
                              operation="ingest_basis", datum=i)
        try:
            coeffs = [Fraction(c) for c in fd["coefficients"]]
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ParseError(f"{source}: form {i}: {exc}", operation="ingest_basis", datum=i) from None
        forms.append(LaurentSeries(coeffs, v, prec))
    if min_precision is not None and prec < min_precision:
        raise PrecisionTooLow(f"{source}: precision {prec} below required {min_precision}",
                              operation="ingest_basis", datum=prec)
    return FormBasis(level, weight, SIGNS[doc["atkin_lehner"]], tuple(forms), prec)


def basis_to_json(basis: FormBasis) -> dict:
    sign = {"plus": "+", "minus": "-", "full": "full"}[basis.al_sign]
    return {
        "level": basis.level,
        "weight": basis.weight,
        "atkin_lehner": sign,
        "precision": basis.prec,
        "forms": [{"valuation": f.valuation, "coefficients": f.to_json()["coefficients"]} for f in basis.forms],
    }


def echelonize(basis: FormBasis) -> FormBasis:
    """Reduced echelon basis of the same span: increasing valuations, monic.

    Pivots are taken at the lowest exponent first, so the result does not
    depend on the order of the input forms.
    """
    P = basis.prec
    lo = min(f.valuation for f in basis.forms)
    width = P - lo
    rows = [[f[e] for e in range(lo, P)] for f in basis.forms]
    R, piv = linalg.rref(rows)
    if len(piv) < len(rows):
        raise DependentForms(f"forms span rank {len(piv)} < {len(rows)} to O(q^{P})",
                             operation="echelonize", datum=len(piv))
    forms = tuple(LaurentSeries(R[i][:width], lo, P) for i in range(len(piv)))
    return replace(basis, forms=forms)


def express_in_basis(f: LaurentSeries, basis: FormBasis) -> list[Fraction]:
    """Coordinates of f in an echelonized basis, verified on all certain terms."""
    coords = []
    rest = f
    for b in basis.forms:
        c = rest[b.valuation] if b.valuation < rest.prec else Fraction(0)
        coords.append(c)
        if c:
            rest = rest - b.scale(c)
    if not rest.is_known_zero():
        raise DependentForms(f"series is not in the span (residual valuation {rest.valuation})",
                             operation="express_in_basis", datum=rest.valuation)
    return coords


def _eta12_coefficients(n: int) -> list[int]:
    """First n coefficients of prod_{m>=1} (1 - q^m)^12."""
    sigma = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            sigma[m] += d
    a = [0] * n
    if n:
        a[0] = 1
    for k in range(1, n):
        s = sum(sigma[m] * a[k - m] for m in range(1, k + 1))
        a[k] = -12 * s // k
    return a


def eta_product_12(N: int, prec: int) -> LaurentSeries:
    """q^((N+1)/2) prod (1-q^n)^12 (1-q^(Nn))^12, known to O(q^prec)."""
    v = (N + 1) // 2
    n = max(prec - v, 0)
    a = _eta12_coefficients(n)
    b = [0] * n
    for i in range(0, n, N):
        b[i] = a[i // N]
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j in range(0, n - i, N):
                if b[j]:
                    out[i + j] += x * b[j]
    return LaurentSeries(out, v, prec)


def required_precision(N: int, p: int, g: int, d: int, n_N: int) -> int:
    """Declared minimum fixture precision for the full pipeline."""
    return (N + 1) // 2 + p * (g + (d - 1) + 3) + n_N


def validate_dimensions(w2: FormBasis, w12: FormBasis) -> dict:
    """Check (N+1)/2 = d + g and that the last weight-12 form is the eta product."""
    N = w2.level
    if w12.level != N:
        raise DimensionMismatch(f"levels differ: {N} vs {w12.level}", operation="validate_dimensions",
                                datum=w12.level)
    g, d = len(w2), len(w12)
    if (N + 1) // 2 != d + g:
        raise DimensionMismatch(f"(N+1)/2 = {(N + 1) // 2} but d + g = {d} + {g}",
                                operation="validate_dimensions", datum=d + g)
    last = w12.forms[-1]
    eta = eta_product_12(N, last.prec)
    diff = last - eta
    if not diff.is_known_zero():
        raise EtaMismatch(f"last weight-12 form differs from the eta product at q^{diff.valuation}",
                          operation="validate_dimensions", datum=diff.valuation)
    return {"level": N, "g": g, "d": d, "half_level": (N + 1) // 2, "eta_checked_to": last.prec}
