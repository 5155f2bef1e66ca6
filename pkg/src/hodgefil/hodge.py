"""Gauge transformation near the cusp and the Hodge filtration constants.

Near the cusp the connection matrix is

    Lambda = -[[0, 0, 0], [omega, 0, 0], [0, omega^T Z, 0]]

(no eta slot: the curve has a single point at infinity) and the gauge
transformation is unipotent with blocks a, b, c solving

    da + omega = 0,   db^T + omega^T Z = 0,   dc + b^T omega = 0

with every constant of integration set to zero.  The filtration data are
the constants b_Fil and the function gamma_Fil, a combination of
s_{d-i}/s_d for 1 <= i < j_dR, making

    c + gamma_Fil - b_Fil^T N^T a - b^T N N^T a

holomorphic at the cusp, where N^T a = (a_g, ..., a_{2g-1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .correspondence import EndoMatrix
from .derham import DeRhamData
from .errors import HodgeError, InconsistentSystem, NonUniqueSolution, ResidueObstruction
from .formsio import FormBasis
from .linalg import Matrix
from .series import LaurentSeries, antiderivative, div, linear_combination, mul


@dataclass(frozen=True)
class GaugeSolution:
    a: tuple[LaurentSeries, ...]
    b: tuple[LaurentSeries, ...]
    c: LaurentSeries


@dataclass(frozen=True)
class HodgeResult:
    j_dR: int
    T_p: EndoMatrix
    Z: EndoMatrix
    gauge: GaugeSolution
    b_fil: tuple[Fraction, ...]
    beta_fil: tuple[Fraction, ...]
    gamma_fil_coeffs: tuple[Fraction, ...]
    gamma_fil_series: LaurentSeries
    gamma_span: tuple[LaurentSeries, ...]
    target: LaurentSeries
    regular_part: LaurentSeries
    equations: int
    max_pole_a: int

    @property
    def genus(self) -> int:
        return len(self.b_fil)


def omega_t_z(omegas: list[LaurentSeries], Z: Matrix) -> list[LaurentSeries]:
    """(omega^T Z)_j = sum_k omega_k Z_kj."""
    n = len(omegas)
    return [linear_combination([Z[k][j] for k in range(n)], omegas) for j in range(n)]


def build_lambda(basis: DeRhamData, Z: EndoMatrix) -> list[list[LaurentSeries]]:
    """Connection matrix as (2g+2)x(2g+2) dq-coefficient series."""
    om = basis.omegas
    n = len(om)
    zero = LaurentSeries.zero()
    L = [[zero] * (n + 2) for _ in range(n + 2)]
    for i, w in enumerate(om):
        L[1 + i][0] = -w
    for j, s in enumerate(omega_t_z(om, Z.entries)):
        L[n + 1][1 + j] = -s
    return L


def _integrate(f: LaurentSeries, name: str) -> LaurentSeries:
    try:
        return -antiderivative(f)
    except ResidueObstruction as exc:
        raise ResidueObstruction(f"{name} is not residue-free: {exc}", operation="solve_gauge",
                                 datum=name) from None


def solve_gauge(basis: DeRhamData, Z: EndoMatrix) -> GaugeSolution:
    """Formal antiderivatives with zero constants, verified by differentiation."""
    om = basis.omegas
    wz = omega_t_z(om, Z.entries)
    a = tuple(_integrate(w, f"omega{i}") for i, w in enumerate(om))
    b = tuple(_integrate(s, f"(omega^T Z){j}") for j, s in enumerate(wz))
    btw = linear_combination([1] * len(om), [mul(bj, w) for bj, w in zip(b, om)])
    c = _integrate(btw, "b^T omega")
    sol = GaugeSolution(a, b, c)
    verify_gauge(sol, om, wz, btw)
    return sol


def verify_gauge(sol: GaugeSolution, om, wz, btw) -> None:
    checks = [(x.derivative() + w, f"a{i}") for i, (x, w) in enumerate(zip(sol.a, om))]
    checks += [(x.derivative() + w, f"b{j}") for j, (x, w) in enumerate(zip(sol.b, wz))]
    checks.append((sol.c.derivative() + btw, "c"))
    for diff, name in checks:
        if not diff.is_known_zero():
            raise HodgeError(f"gauge equation for {name} fails at q^{diff.valuation}",
                             operation="verify_gauge", datum=name)


def gamma_span(w12: FormBasis, j_dR: int) -> list[LaurentSeries]:
    """s_{d-(j_dR-1)}/s_d, ..., s_{d-1}/s_d."""
    d = len(w12)
    sd = w12.forms[-1]
    return [div(w12.forms[d - 1 - k], sd) for k in range(j_dR - 1, 0, -1)]


def solve_hodge(gauge: GaugeSolution, basis: DeRhamData, w12: FormBasis, j_dR: int,
                T_p: EndoMatrix, Z: EndoMatrix) -> HodgeResult:
    """Solve for b_Fil and gamma_Fil by matching every negative exponent."""
    g = basis.genus
    a_hi = gauge.a[g:]
    b_hi = gauge.b[g:]
    # c - b^T N N^T a
    target = gauge.c - linear_combination([1] * g, [mul(x, y) for x, y in zip(b_hi, a_hi)])
    span = gamma_span(w12, j_dR)
    max_pole_a = max(x.pole_order() for x in a_hi)
    if max_pole_a > g + j_dR - 1:
        raise HodgeError(f"pole order {max_pole_a} of a exceeds g + j_dR - 1 = {g + j_dR - 1}",
                         operation="solve_hodge", datum=max_pole_a)
    # unknowns: b_fil (g of them) then gamma coefficients; column series enter with
    # sign -1 for b_fil and +1 for gamma
    columns = [-x for x in a_hi] + span
    M = max([target.pole_order()] + [x.pole_order() for x in columns])
    rows, rhs = [], []
    for e in range(-M, 0):
        rows.append([col[e] for col in columns])
        rhs.append(-target[e])
    n = len(columns)
    if n == 0:
        sol = []
    else:
        if linalg.rank(rows) < n:
            raise NonUniqueSolution(f"principal parts have rank {linalg.rank(rows)} < {n}",
                                    operation="solve_hodge", datum=linalg.rank(rows))
        try:
            sol = linalg.solve(rows, rhs)
        except ValueError:
            raise InconsistentSystem("no combination cancels the principal part",
                                     operation="solve_hodge", datum=M) from None
    b_fil = tuple(sol[:g])
    gam = tuple(sol[g:])
    gamma_series = linear_combination(list(gam), span) if span else LaurentSeries.zero()
    regular = target + linear_combination(list(sol), columns)
    if regular.pole_order():
        raise InconsistentSystem(f"residual pole at q^{regular.valuation}", operation="solve_hodge",
                                 datum=regular.valuation)
    beta = tuple([Fraction(0)] * g) + b_fil
    return HodgeResult(j_dR, T_p, Z, gauge, b_fil, beta, gam, gamma_series, tuple(span),
                       target, regular, len(rows), max_pole_a)
