import math
from fractions import Fraction

import pytest

import reference as R
from conftest import derham, echelon
from hodgefil import linalg
from hodgefil.correspondence import (EndoMatrix, cup_hecke_matrix, hecke_matrix, hecke_matrix_from,
                                     hecke_on_differential, hecke_on_form, hecke_series, nice_correspondence)
from hodgefil.derham import Differential
from hodgefil.errors import InadmissiblePrime
from hodgefil.formsio import express_in_basis
from hodgefil.series import LaurentSeries

P = LaurentSeries.parse


def charpoly(A):
    """Coefficients c_0..c_n of det(x I - A), Faddeev-LeVerrier."""
    n = len(A)
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    M = linalg.zeros(n)
    for k in range(1, n + 1):
        M = linalg.add(linalg.matmul(A, M), linalg.scale(c[n - k + 1], linalg.identity(n)))
        c[n - k] = -linalg.trace(linalg.matmul(A, M)) / k
    return c


def _trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _rem(a, b):
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        for i in range(len(b)):
            a[len(a) - len(b) + i] -= f * b[i]
        a = _trim(a[:-1])
    return a


def _sign_changes(seq, x):
    vals = [sum(c * x ** i for i, c in enumerate(p)) for p in seq]
    vals = [v for v in vals if v]
    return sum(1 for u, v in zip(vals, vals[1:]) if (u < 0) != (v < 0))


def roots_in(p, lo, hi):
    """Distinct real roots of p in (lo, hi] via a Sturm sequence."""
    dp = _trim([i * c for i, c in enumerate(p)][1:])
    seq = [p, dp]
    while True:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return _sign_changes(seq, lo) - _sign_changes(seq, hi), len(p) - len(seq[-1])


def test_hecke_on_form_delta_like():
    f = P("q + 2q^2 + 3q^3 + 4q^4 + 5q^5 + 6q^6 + O(q^7)")
    assert hecke_on_form(f, 2) == P("2q + 6q^2 + O(q^3)")


def test_hecke_series_acts_on_q_times_series():
    w = echelon(67, 2, "+").forms[0]
    s = w.shift(-1)
    assert hecke_series(s, 3) == hecke_on_form(w, 3).shift(-1)
    assert hecke_series(s, 3).prec == w.prec // 3 - 1
    mu = hecke_on_differential(Differential(s, "omega0"), 3)
    assert mu.label == "T3(omega0)"


@pytest.mark.parametrize("N", [67, 97, 193])
def test_holomorphic_block_matches_q_expansion_action(N):
    d = derham(N, False)
    g = d.genus
    T = hecke_matrix(d, 3).entries
    w2 = echelon(N, 2, "+")
    H = [express_in_basis(hecke_on_form(f, 3), w2) for f in w2.forms]
    assert [row[:g] for row in T[:g]] == linalg.transpose(H)


@pytest.mark.parametrize("N", [67, 97, 193])
def test_charpoly_satisfies_weil_bound(N):
    T = hecke_matrix(derham(N, False), 3).entries
    g = len(T) // 2
    hol = [row[:g] for row in T[:g]]
    p = charpoly(hol)
    bound = Fraction(math.isqrt(12 * 10 ** 12) + 1, 10 ** 6)  # just above 2 sqrt(3)
    inside, distinct = roots_in(p, -bound, bound)
    assert inside == distinct
    # the full 2g x 2g characteristic polynomial is the square of the holomorphic one
    full = charpoly(T)
    sq = [sum(p[i] * p[k - i] for i in range(max(0, k - g), min(k, g) + 1)) for k in range(2 * g + 1)]
    assert full == sq


@pytest.mark.parametrize("N", [67, 97, 193])
def test_conjugation_between_bases(N):
    d = derham(N, False)
    A = d.change_of_basis
    raw = hecke_matrix_from(d.raw_basis, d.raw_cup, 3)
    symp = hecke_matrix_from(d.symplectic_basis, linalg.symplectic_form(d.genus), 3)
    assert symp == linalg.matmul(linalg.matmul(linalg.transpose(linalg.inverse(A)), raw), linalg.transpose(A))


def test_reference_matrices_67():
    d = derham(67, True)
    assert cup_hecke_matrix(d.symplectic_basis, 3, "reversed") == linalg.parse(R.M_67)
    assert cup_hecke_matrix(d.symplectic_basis, 3) == linalg.scale(-1, linalg.parse(R.M_67))
    T = hecke_matrix(d, 3, "reversed")
    assert T.entries == linalg.parse(R.T3_67)
    Z = nice_correspondence(T)
    assert Z.entries == linalg.parse(R.Z_67) and Z.antisymmetric


def test_orientation_validation():
    with pytest.raises(ValueError):
        cup_hecke_matrix(derham(67, False).symplectic_basis, 3, "sideways")


def test_prime_dividing_level():
    with pytest.raises(InadmissiblePrime) as exc:
        hecke_matrix(derham(67, False), 67)
    assert exc.value.exit_code == 4


def test_scalar_hecke_is_inadmissible():
    with pytest.raises(InadmissiblePrime):
        nice_correspondence(EndoMatrix(linalg.scale(5, linalg.identity(4)), 3, "hecke"))


@pytest.mark.parametrize("N", [67, 97, 193])
def test_z_is_antisymmetric_and_traceless(N):
    T = hecke_matrix(derham(N, False), 3)
    Z = nice_correspondence(T)
    assert Z.antisymmetric
    K = linalg.matmul(Z.entries, linalg.symplectic_form(len(T.entries) // 2))
    assert linalg.trace(K) == 0
