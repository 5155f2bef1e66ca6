"""A symplectic basis of first de Rham cohomology as q-expansions.

Differentials are stored by their dq-coefficient: ``mu = series * dq``.
The raw basis is omega_0..omega_{g-1} (weight-2 cusp forms divided by q)
followed by eta_{g+i} = f_dR * omega_i, where f_dR is a quotient of
weight-12 cusp forms with a pole only at the cusp.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import linalg
from .errors import (DegenerateBasis, FixtureNotFound, InsufficientPrecision, NoAdmissibleJ,
                     NotSymplectic, ParseError, ResidueObstruction, SingularBlock)
from .formsio import FormBasis
from .linalg import Matrix
from .series import LaurentSeries, div, linear_combination


@dataclass(frozen=True)
class Differential:
    series: LaurentSeries
    label: str = ""

    def __add__(self, other: "Differential") -> "Differential":
        return Differential(self.series + other.series)

    def scale(self, c) -> "Differential":
        return Differential(self.series.scale(c), self.label)

    def check_second_kind(self) -> None:
        if self.series.prec > -1 and self.series[-1]:
            raise ResidueObstruction(f"{self.label or 'differential'} has residue {self.series[-1]}",
                                     operation="check_second_kind", datum=self.label)


@dataclass(frozen=True)
class DeRhamData:
    level: int
    genus: int
    j_dR: int
    f_dR: LaurentSeries
    raw_basis: tuple[Differential, ...]
    raw_cup: Matrix
    symplectic_basis: tuple[Differential, ...] = ()
    change_of_basis: Matrix | None = None
    cup_matrix: Matrix | None = None

    @property
    def omegas(self) -> list[LaurentSeries]:
        """dq-coefficients of the symplectic basis."""
        return [d.series for d in self.symplectic_basis]


def form_to_differential(f: LaurentSeries, label: str = "") -> Differential:
    """omega_f = f dq/q."""
    return Differential(f.shift(-1), label)


def select_jdr(w2: FormBasis, w12: FormBasis) -> int:
    """Smallest j with val(s_{d-j}/s_d * f) <= -1 for every weight-2 basis form f."""
    d = len(w12)
    vd = w12.forms[-1].valuation
    top = max(f.valuation for f in w2.forms)
    for j in range(1, d):
        if w12.forms[d - 1 - j].valuation - vd + top <= -1:
            return j
    raise NoAdmissibleJ(f"no j in 1..{d - 1} gives a pole at every product",
                        operation="select_jdr", datum=w2.level)


def f_dr(w12: FormBasis, j: int) -> LaurentSeries:
    d = len(w12)
    return div(w12.forms[d - 1 - j], w12.forms[-1])


def cup_series(f1: LaurentSeries, f2: LaurentSeries) -> Fraction:
    """Residue of f1 * (integral of f2)."""
    return _residue_against_integral(f2, f1)


def _residue_against_integral(f1: LaurentSeries, f2: LaurentSeries) -> Fraction:
    """Residue of f2 * (integral of f1), reading only the needed coefficients."""
    if f1.prec <= -1:
        raise InsufficientPrecision("q^-1 coefficient of the integrated argument unknown",
                                    operation="cup", datum=f1.prec)
    if f1[-1]:
        raise ResidueObstruction(f"integrated argument has residue {f1[-1]}", operation="cup", datum=f1[-1])
    if f1.is_known_zero() or f2.is_known_zero():
        if f1.is_zero() or f2.is_zero():
            return Fraction(0)
        v1 = f1.valuation
        v2 = f2.valuation
        if -2 - v2 >= f1.prec or -2 - v1 >= f2.prec:
            raise InsufficientPrecision("cup product window not certain", operation="cup")
        return Fraction(0)
    v1, v2 = f1.valuation, f2.valuation
    hi1 = -2 - v2
    if hi1 >= f1.prec or -2 - v1 >= f2.prec:
        raise InsufficientPrecision(f"cup product needs q^{hi1} of the integrand and q^{-2 - v1} of the other factor",
                                    operation="cup", datum=(f1.prec, f2.prec))
    total = Fraction(0)
    c1, c2 = f1.coeffs, f2.coeffs
    for i in range(v1, hi1 + 1):
        if i == -1:
            continue
        a = c1[i - v1] if i - v1 < len(c1) else 0
        k = -2 - i - v2
        b = c2[k] if 0 <= k < len(c2) else 0
        if a and b:
            total += a * b / (i + 1)
    return total


def cup(mu1: Differential, mu2: Differential) -> Fraction:
    """[mu1 cup mu2] = Res(mu1 * integral(mu2)) at the cusp; mu2 must be residue-free."""
    return cup_series(mu1.series, mu2.series)


def cup_matrix(basis: Sequence[Differential]) -> Matrix:
    n = len(basis)
    M = linalg.zeros(n)
    for i in range(n):
        for j in range(i + 1, n):
            c = cup(basis[i], basis[j])
            M[i][j] = c
            M[j][i] = -c
    return M


def build_raw_basis(w2: FormBasis, w12: FormBasis, j_dR: int) -> DeRhamData:
    """omega_i from w2 and eta_{g+i} = f_dR * omega_i; checks the cup matrix is invertible."""
    g = len(w2)
    fdr = f_dr(w12, j_dR)
    omegas = [form_to_differential(f, f"omega{i}") for i, f in enumerate(w2.forms)]
    etas = [Differential(fdr * w.series, f"eta{g + i}") for i, w in enumerate(omegas)]
    raw = tuple(omegas + etas)
    for mu in raw:
        mu.check_second_kind()
    M = cup_matrix(raw)
    if linalg.det(M) == 0:
        raise DegenerateBasis("raw cup matrix is singular", operation="build_raw_basis", datum=j_dR)
    return DeRhamData(w2.level, g, j_dR, fdr, raw, M)


def _apply(A: Matrix, basis: Sequence[Differential], prefix: str = "w") -> tuple[Differential, ...]:
    out = []
    for i, row in enumerate(A):
        nz = [(c, b.series) for c, b in zip(row, basis) if c]
        s = linear_combination([c for c, _ in nz], [b for _, b in nz])
        out.append(Differential(s, f"{prefix}{i}"))
    return tuple(out)


def default_change_of_basis(raw_cup: Matrix, g: int) -> Matrix:
    """Keep the omegas, normalize the off-diagonal block, then clear the eta block.

    With eta'_j normalized so that cup(omega_i, eta'_j) = delta_ij, adding
    S_kj * omega_k to eta'_j for k < j kills cup(eta'_k, eta'_j).
    """
    B = linalg.block(raw_cup, range(g), range(g, 2 * g))
    try:
        Binv = linalg.inverse(B)
    except linalg.SingularMatrix:
        raise SingularBlock("cup(omega, eta) block is singular", operation="symplectic_complete") from None
    # eta' = (B^-1)^T eta, so that cup(omega_i, eta'_j) = delta_ij
    T = linalg.transpose(Binv)
    A = linalg.identity(2 * g)
    for j in range(g):
        A[g + j] = [Fraction(0)] * g + T[j]
    # cup(eta'_i, eta'_j) from the raw matrix
    S = linalg.matmul(linalg.matmul(A, raw_cup), linalg.transpose(A))
    for j in range(g):
        row = A[g + j][:]
        for k in range(j):
            s = S[g + k][g + j]
            if s:
                row[k] += s
        A[g + j] = row
    return A


def symplectic_complete(data: DeRhamData, override: Matrix | None = None) -> DeRhamData:
    """Install a change of basis whose cup matrix is the standard symplectic form."""
    g = data.genus
    n = 2 * g
    if override is None:
        A = default_change_of_basis(data.raw_cup, g)
    else:
        A = linalg.to_matrix(override)
        if len(A) != n or any(len(r) != n for r in A):
            raise NotSymplectic(f"override must be {n}x{n}", operation="symplectic_complete", datum=len(A))
        if [r for r in A[:g]] != linalg.identity(n)[:g]:
            raise NotSymplectic("override must keep the holomorphic block fixed",
                                operation="symplectic_complete", datum="rows 0..g-1")
    C = linalg.symplectic_form(g)
    predicted = linalg.matmul(linalg.matmul(A, data.raw_cup), linalg.transpose(A))
    if predicted != C:
        raise NotSymplectic("change of basis does not give the symplectic form",
                            operation="symplectic_complete", datum=linalg.fmt(predicted))
    basis = _apply(A, data.raw_basis)
    for mu in basis:
        mu.check_second_kind()
    recomputed = cup_matrix(basis)
    if recomputed != C:
        raise NotSymplectic("recomputed cup matrix differs from the symplectic form",
                            operation="symplectic_complete", datum=linalg.fmt(recomputed))
    return DeRhamData(data.level, g, data.j_dR, data.f_dR, data.raw_basis, data.raw_cup,
                      basis, A, recomputed)


@dataclass(frozen=True)
class BasisOverride:
    """A change of basis plus the Hecke cup orientation used alongside it."""

    matrix: Matrix
    hecke_orientation: str = "standard"
    level: int | None = None


def read_override(path: str | Path) -> BasisOverride:
    """Read an override file: a bare array, or an object with "matrix" and optional
    "level" and "hecke_orientation" keys."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if isinstance(doc, dict):
            return BasisOverride(linalg.parse(doc["matrix"]), doc.get("hecke_orientation", "standard"),
                                 doc.get("level"))
        return BasisOverride(linalg.parse(doc))
    except FileNotFoundError:
        raise FixtureNotFound(f"override not found: {path}", operation="load_override", datum=path) from None
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"{path}: {exc}", operation="load_override", datum=path) from None


def load_override(path: str | Path) -> Matrix:
    return read_override(path).matrix


def build_derham(w2: FormBasis, w12: FormBasis, override: Matrix | None = None) -> DeRhamData:
    j = select_jdr(w2, w12)
    return symplectic_complete(build_raw_basis(w2, w12, j), override)
