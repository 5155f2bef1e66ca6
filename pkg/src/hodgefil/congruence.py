"""Mod-N coranks comparing iterated-integral products with cusp-form differentials.

A1 = {(int omega_i) * omega_j}, A2 = differentials of a basis of all of
S_2(Gamma_0(N)), A3 = the holomorphic omegas of the plus part.  A nonzero
corank(A1 u A2) - corank(A1 u A3) points at congruences between A1 and the
minus part.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .derham import DeRhamData, form_to_differential
from .errors import BadDenominator
from .formsio import FormBasis
from .linalg import rank_mod_p
from .series import LaurentSeries, antiderivative, mul


@dataclass(frozen=True)
class CongruenceReport:
    level: int
    n_N: int
    window_start: int
    corank_A1A2: int
    corank_A1A3: int
    rows_A1: int
    rows_A2: int
    rows_A3: int
    skipped_rows: tuple = field(default=())

    @property
    def difference(self) -> int:
        return self.corank_A1A2 - self.corank_A1A3

    def summary(self) -> str:
        return f"corank(A1∪A2)={self.corank_A1A2} corank(A1∪A3)={self.corank_A1A3} diff={self.difference}"


def default_nn(N: int) -> int:
    return N - 7


def build_A1(basis: DeRhamData, upto: int | None = None) -> list[LaurentSeries]:
    """(int omega_i) * omega_j for all i, j, row-major in i.

    With ``upto`` the factors are cut so that only the coefficients through
    q^upto are formed.
    """
    om = basis.omegas
    ints = [antiderivative(w) for w in om]
    if upto is None:
        return [mul(F, w) for F in ints for w in om]
    # every integral has valuation >= vmin + 1 and every omega >= vmin
    vmin = min(w.valuation for w in om)
    om = [w.truncate(upto - vmin) for w in om]
    ints = [F.truncate(upto + 1 - vmin) for F in ints]
    return [mul(F, w) for F in ints for w in om]


def _reduce_rows(rows, N, lo, hi, lenient, tag, skipped):
    out = []
    for k, f in enumerate(rows):
        try:
            out.append(f.reduce_mod(N, lo, hi))
        except BadDenominator as exc:
            if not lenient:
                raise BadDenominator(f"{tag} row {k}: {exc}", operation="corank_mod_N",
                                     datum=(tag, k, exc.datum)) from None
            skipped.append((tag, k, str(exc)))
    return out


def corank_mod_N(rows: list[LaurentSeries], N: int, n_N: int, window_start: int | None = None,
                 lenient: bool = False, skipped: list | None = None, tag: str = "rows") -> int:
    """Rows minus rank over F_N of the coefficients of q^w .. q^(w + n_N - 1).

    Rows dropped under the lenient policy do not count towards the corank.
    """
    if window_start is None:
        window_start = min(min((f.valuation for f in rows if not f.is_known_zero()), default=0), 0)
    if skipped is None:
        skipped = []
    reduced = _reduce_rows(rows, N, window_start, window_start + n_N - 1, lenient, tag, skipped)
    return len(reduced) - rank_mod_p(reduced, N)


def congruence_report(basis: DeRhamData, s2full: FormBasis, s2plus: FormBasis, n_N: int | None = None,
                      lenient: bool = False) -> CongruenceReport:
    N = basis.level
    n_N = default_nn(N) if n_N is None else n_N
    A2 = [form_to_differential(f).series for f in s2full.forms]
    A3 = [form_to_differential(f).series for f in s2plus.forms]
    # deepest pole of an A1 row is that of (int omega_k) * omega_k
    vmin = min(w.valuation for w in basis.omegas)
    w = min([2 * vmin + 1] + [f.valuation for f in A2 + A3])
    A1 = build_A1(basis, w + n_N - 1)
    skipped: list = []
    lo, hi = w, w + n_N - 1
    r1 = _reduce_rows(A1, N, lo, hi, lenient, "A1", skipped)
    r2 = _reduce_rows(A2, N, lo, hi, lenient, "A2", skipped)
    r3 = _reduce_rows(A3, N, lo, hi, lenient, "A3", skipped)
    c12 = len(r1) + len(r2) - rank_mod_p(r1 + r2, N)
    c13 = len(r1) + len(r3) - rank_mod_p(r1 + r3, N)
    return CongruenceReport(N, n_N, w, c12, c13, len(A1), len(A2), len(A3), tuple(skipped))
