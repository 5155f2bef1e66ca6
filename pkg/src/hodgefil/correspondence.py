"""Hecke operator T_p on de Rham cohomology and the nice correspondence Z."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .derham import DeRhamData, Differential, cup
from .errors import InadmissiblePrime, NotBlockTriangular
from .linalg import Matrix
from .series import LaurentSeries

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EndoMatrix:
    entries: Matrix
    prime_p: int
    kind: str
    antisymmetric: bool | None = None

    @property
    def size(self) -> int:
        return len(self.entries)


def hecke_on_form(f: LaurentSeries, p: int) -> LaurentSeries:
    """sum a_n q^n  ->  sum a_{pn} q^n + p sum a_n q^{pn}."""
    if f.is_zero():
        return f
    prec = f.prec if f.prec == float("inf") else f.prec // p
    terms: dict[int, object] = {}
    for e, c in f.terms():
        if e % p == 0 and e // p < prec:
            terms[e // p] = terms.get(e // p, 0) + c
        if p * e < prec:
            terms[p * e] = terms.get(p * e, 0) + p * c
    return LaurentSeries.from_dict(terms, prec)


def hecke_series(s: LaurentSeries, p: int) -> LaurentSeries:
    """T_p on the dq-coefficient s of f dq/q, acting on f = q s as a weight-2 form."""
    return hecke_on_form(s.shift(1), p).shift(-1)


def hecke_on_differential(mu: Differential, p: int) -> Differential:
    return Differential(hecke_series(mu.series, p), f"T{p}({mu.label})")


ORIENTATIONS = ("standard", "reversed")


def cup_hecke_matrix(basis: Sequence[Differential], p: int, orientation: str = "standard") -> Matrix:
    """M_ij = [T_p mu_i cup mu_j].

    ``orientation="reversed"`` swaps the cup arguments, which negates M and
    hence T_p and Z.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    images = [hecke_on_differential(mu, p) for mu in basis]
    if orientation == "standard":
        return [[cup(t, mu) for mu in basis] for t in images]
    return [[cup(mu, t) for mu in basis] for t in images]


def hecke_matrix_from(basis: Sequence[Differential], gram: Matrix, p: int,
                      orientation: str = "standard") -> Matrix:
    """T_p as (M G^-1)^T for any basis with cup matrix G."""
    M = cup_hecke_matrix(basis, p, orientation)
    return linalg.transpose(linalg.matmul(M, linalg.inverse(gram)))


def check_admissible(T: Matrix, p: int) -> None:
    if linalg.is_scalar(T):
        raise InadmissiblePrime(f"T_{p} acts as a scalar; choose another prime",
                                operation="hecke_matrix", datum=p)


def hecke_matrix(data: DeRhamData, p: int, orientation: str = "standard") -> EndoMatrix:
    """T_p in the symplectic basis; verifies the holomorphic block is preserved."""
    if data.level % p == 0:
        raise InadmissiblePrime(f"p = {p} divides the level", operation="hecke_matrix", datum=p)
    g = data.genus
    T = hecke_matrix_from(data.symplectic_basis, linalg.symplectic_form(g), p, orientation)
    bad = [(i, j) for i in range(g, 2 * g) for j in range(g) if T[i][j]]
    if bad:
        raise NotBlockTriangular(f"T_{p} has nonzero entries below the holomorphic block",
                                 operation="hecke_matrix", datum=bad[0])
    check_admissible(T, p)
    return EndoMatrix(T, p, "hecke")


def nice_correspondence(tp: EndoMatrix) -> EndoMatrix:
    """Z = (Tr(T_p) I - 2g T_p) C^-1."""
    T = tp.entries
    n = len(T)
    check_admissible(T, tp.prime_p)
    K = linalg.add(linalg.scale(linalg.trace(T), linalg.identity(n)), linalg.scale(-n, T))
    assert linalg.trace(K) == 0
    Z = linalg.matmul(K, linalg.inverse(linalg.symplectic_form(n // 2)))
    anti = linalg.transpose(Z) == linalg.scale(-1, Z)
    if not anti:
        log.warning("Z is not antisymmetric for p = %d", tp.prime_p)
    return EndoMatrix(Z, tp.prime_p, "correspondence", anti)
