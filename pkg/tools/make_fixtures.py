#!/usr/bin/env python3
"""Generate the q-expansion fixtures shipped in ``src/hodgefil/data``.

This script sits outside the library: it needs python-flint, which the
library itself does not.  For a prime level N it writes

    <N>_w2_plus.json    echelon basis of S_2^+(Gamma_0(N))
    <N>_w2_full.json    echelon basis of S_2(Gamma_0(N))
    <N>_w12_plus.json   echelon basis of S_12^+(Gamma_0(N))

Weight 2 comes from the plus quotient of weight-2 modular symbols (Manin
symbols on P^1(F_N), Cremona/Merel Heilbronn matrices for T_n).  Weight 12
comes from monomials in forms whose Atkin-Lehner images are known in closed
form (E2(z) - N E2(Nz), weight-2 eigen-pieces, E4, E6, Delta at z and Nz);
the monomials are checked to span M_12(Gamma_0(N)) against the dimension
formula and then symmetrised under w_N.

Usage:  python tools/make_fixtures.py --level 67 --precision 210 --out src/hodgefil/data
"""

from __future__ import annotations

import argparse
import json
import logging
import random
from fractions import Fraction
from pathlib import Path

import flint

log = logging.getLogger("make_fixtures")

NMOD_PRIME = 2305843009213693951  # 2^61 - 1


# ---------------------------------------------------------------------------
# small exact helpers

def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def genus_x0(N: int) -> int:
    e2 = 1 + legendre(-1, N)
    e3 = 1 + legendre(-3, N)
    g = 1 + Fraction(N + 1, 12) - Fraction(e2, 4) - Fraction(e3, 3) - 1
    assert g.denominator == 1
    return int(g)


def dim_cusp_forms(k: int, N: int) -> int:
    """dim S_k(Gamma_0(N)) for N prime, k >= 4 even."""
    e2 = 1 + legendre(-1, N)
    e3 = 1 + legendre(-3, N)
    g = genus_x0(N)
    return (k - 1) * (g - 1) + (k // 2 - 1) * 2 + (k // 4) * e2 + (k // 3) * e3


def qmat(rows) -> flint.fmpq_mat:
    rows = [list(r) for r in rows]
    if not rows:
        raise ValueError("empty matrix")
    return flint.fmpq_mat(len(rows), len(rows[0]), [to_fmpq(x) for r in rows for x in r])


def to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def mat_rows(m) -> list[list[Fraction]]:
    return [[Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(m.ncols())]
            for i in range(m.nrows())]


def rref_rows(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, zero rows dropped; returns (rows, pivots)."""
    m, rank = qmat(rows).rref()
    out = mat_rows(m)[:rank]
    pivots = [next(j for j, x in enumerate(r) if x != 0) for r in out]
    return out, pivots


def left_kernel(rows: list[list[Fraction]], ncols_hint: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : v * A = 0} for the matrix A given by ``rows``."""
    n = len(rows)
    k = len(rows[0]) if rows else ncols_hint
    # v*A = 0  <=>  A^T v^T = 0
    at = [[rows[i][j] for i in range(n)] for j in range(k)]
    red, pivots = rref_rows(at) if any(any(x for x in r) for r in at) else ([], [])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# weight-2 modular symbols for Gamma_0(N), N prime

class P1:
    def __init__(self, N: int):
        self.N = N
        self.inv = [0] + [pow(i, -1, N) for i in range(1, N)]

    def index(self, c: int, d: int) -> int | None:
        N = self.N
        c %= N
        d %= N
        if c == 0:
            return None if d == 0 else N
        return d * self.inv[c] % N

    def symbol(self, i: int) -> tuple[int, int]:
        return (0, 1) if i == self.N else (1, i)


def heilbronn_cremona(p: int) -> list[tuple[int, int, int, int]]:
    if p == 2:
        return [(1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2)]
    out = [(1, 0, 0, p)]
    for r in range(-(p // 2), p // 2 + 1):
        x1, x2, y1, y2 = p, -r, 0, 1
        a, b = -p, r
        out.append((x1, x2, y1, y2))
        while b != 0:
            q = round_half_away(Fraction(a, b))
            c = a - b * q
            a, b = -b, c
            x1, x2 = x2, q * x2 - x1
            y1, y2 = y2, q * y2 - y1
            out.append((x1, x2, y1, y2))
    return out


def round_half_away(x: Fraction) -> int:
    if x >= 0:
        return int(x + Fraction(1, 2))
    return -int(-x + Fraction(1, 2))


def heilbronn_merel(n: int) -> list[tuple[int, int, int, int]]:
    out = []
    for a in range(1, n + 1):
        q = n // a
        if q * a == n:
            d = q
            for b in range(a):
                out.append((a, b, 0, d))
            for c in range(1, d):
                out.append((a, 0, c, d))
        for d in range(q + 1, n + 1):
            bc = a * d - n
            for c in range(bc // a + 1, d):
                if bc % c == 0:
                    out.append((a, bc // c, c, d))
    return out


class ModularSymbols:
    """Plus quotient of weight-2 modular symbols for Gamma_0(N)."""

    def __init__(self, N: int):
        self.N = N
        self.p1 = P1(N)
        n = N + 1
        rels = []

        def unit(*pairs):
            row = [0] * n
            for idx, coef in pairs:
                row[idx] += coef
            return row

        for i in range(n):
            c, d = self.p1.symbol(i)
            s = self.p1.index(d, -c)
            t1 = self.p1.index(d, -c - d)
            c1, d1 = d, -c - d
            t2 = self.p1.index(d1, -c1 - d1)
            star = self.p1.index(-c, d)
            rels.append(unit((i, 1), (s, 1)))
            rels.append(unit((i, 1), (t1, 1), (t2, 1)))
            rels.append(unit((i, 1), (star, -1)))
        red, pivots = rref_rows([[Fraction(x) for x in r] for r in rels])
        self.free = [j for j in range(n) if j not in set(pivots)]
        m = len(self.free)
        col = {f: k for k, f in enumerate(self.free)}
        reduce = [[Fraction(0)] * m for _ in range(n)]
        for f, k in col.items():
            reduce[f][k] = Fraction(1)
        for r, p in zip(red, pivots):
            reduce[p] = [-r[f] for f in self.free]
        self.reduce = reduce
        self.dim = m
        log.info("N=%d: %d Manin symbols, quotient dimension %d", N, n, m)

    def boundary_rows(self) -> list[list[Fraction]]:
        out = []
        for f in self.free:
            c, d = self.p1.symbol(f)
            row = [Fraction(0), Fraction(0)]
            row[0 if c % self.N == 0 else 1] += 1
            row[0 if d % self.N == 0 else 1] -= 1
            out.append(row)
        return out

    def hecke(self, n: int) -> list[list[Fraction]]:
        hs = heilbronn_merel(n) if self.N % n == 0 or n < 0 else heilbronn_cremona(n)
        return self._apply(hs)

    def hecke_merel(self, n: int) -> list[list[Fraction]]:
        return self._apply(heilbronn_merel(n))

    def _apply(self, hs) -> list[list[Fraction]]:
        rows = []
        for f in self.free:
            u, v = self.p1.symbol(f)
            counts: dict[int, int] = {}
            for a, b, c, d in hs:
                idx = self.p1.index(u * a + v * c, u * b + v * d)
                if idx is None:
                    continue
                counts[idx] = counts.get(idx, 0) + 1
            row = [Fraction(0)] * self.dim
            for idx, k in counts.items():
                red = self.reduce[idx]
                for j in range(self.dim):
                    if red[j]:
                        row[j] += k * red[j]
            rows.append(row)
        return rows


def restrict(basis: list[list[Fraction]], pivots: list[int], op: list[list[Fraction]]) -> flint.fmpq_mat:
    """Matrix of ``op`` (row-vector action) on the span of echelon ``basis``."""
    img = qmat(basis) * qmat(op)
    rows = mat_rows(img)
    coords = [[r[p] for p in pivots] for r in rows]
    # verify closure
    back = qmat(coords) * qmat(basis)
    assert mat_rows(back) == rows, "subspace is not stable"
    return qmat(coords)


def primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(n + 1) if sieve[i]]


def weight2_spaces(N: int, prec: int, rng: random.Random) -> dict[int, list[list[Fraction]]]:
    """Echelon q-expansion bases (coefficients of q^1..q^{prec-1}) of S_2^{+}, S_2^{-}."""
    ms = ModularSymbols(N)
    cusp = left_kernel(ms.boundary_rows())
    cusp, cpiv = rref_rows(cusp)
    g0 = genus_x0(N)
    assert len(cusp) == g0, (len(cusp), g0)

    # consistency check of the two Heilbronn families on a small prime
    for p in (2, 3, 5):
        if p != N:
            assert ms.hecke(p) == ms.hecke_merel(p), f"Cremona/Merel mismatch at p={p}"

    un_full = ms.hecke(N)
    un = restrict(cusp, cpiv, un_full)
    spaces = {}
    for eps in (1, -1):
        # w_N = eps  <=>  U_N = -eps on newforms of prime level
        shifted = mat_rows(un)
        for i in range(len(shifted)):
            shifted[i][i] += eps
        ker = left_kernel(shifted)
        if not ker:
            spaces[eps] = []
            continue
        sub = [[sum((c * cusp[k][j] for k, c in enumerate(v)), Fraction(0)) for j in range(ms.dim)]
               for v in ker]
        sub, spiv = rref_rows(sub)
        dim = len(sub)
        log.info("N=%d: w_N=%+d part has dimension %d", N, eps, dim)

        tp: dict[int, flint.fmpq_mat] = {}
        ident = flint.fmpq_mat(dim, dim, [1 if i == j else 0 for i in range(dim) for j in range(dim)])
        tmat: list = [None, ident]
        for p in primes_upto(prec):
            tp[p] = restrict(sub, spiv, ms.hecke(p))
        for n in range(2, prec):
            p = next(q for q in primes_upto(n) if n % q == 0)
            k, m = 0, n
            while m % p == 0:
                m //= p
                k += 1
            if m > 1:
                tmat.append(tmat[p ** k] * tmat[m])
            elif k == 1:
                tmat.append(tp[p])
            elif p == N:
                tmat.append(tp[p] * tmat[n // p])
            else:
                tmat.append(tp[p] * tmat[n // p] - p * tmat[n // (p * p)])
        # commutation sanity
        assert tp[2] * tp[3] == tp[3] * tp[2]
        for _ in range(5):
            x = qmat([[rng.randint(-5, 5) for _ in range(dim)]])
            rows = [[Fraction(0)] * (prec - 1) for _ in range(dim)]
            for n in range(1, prec):
                v = x * tmat[n]
                for j in range(dim):
                    rows[j][n - 1] = Fraction(int(v[0, j].p), int(v[0, j].q))
            ech, _ = rref_rows(rows)
            if len(ech) == dim:
                break
        else:
            raise RuntimeError("no cyclic vector found")
        spaces[eps] = ech
    return spaces


# ---------------------------------------------------------------------------
# weight 12 via products

def sigma(n: int, k: int) -> int:
    s = 0
    i = 1
    while i * i <= n:
        if n % i == 0:
            s += i ** k
            j = n // i
            if j != i:
                s += j ** k
        i += 1
    return s


def eisenstein(k: int, prec: int) -> list[int]:
    const = {2: -24, 4: 240, 6: -504}[k]
    return [1] + [const * sigma(n, k - 1) for n in range(1, prec)]


def delta(prec: int) -> list[int]:
    e4 = flint.fmpz_poly(eisenstein(4, prec))
    e6 = flint.fmpz_poly(eisenstein(6, prec))
    d = (e4 ** 3 - e6 ** 2)
    coeffs = [int(c) // 1728 for c in d.coeffs()[:prec]]
    return coeffs + [0] * (prec - len(coeffs))


def dilate(coeffs: list, N: int, prec: int) -> list:
    out = [0] * prec
    for i, c in enumerate(coeffs):
        if i * N >= prec:
            break
        out[i * N] = c
    return out


def weight12_plus(N: int, prec: int, s2: dict[int, list[list[Fraction]]], rng: random.Random):
    P = prec

    def poly(coeffs) -> flint.fmpq_poly:
        return flint.fmpq_poly([to_fmpq(c) for c in coeffs])

    def trunc(f: flint.fmpq_poly) -> flint.fmpq_poly:
        cs = f.coeffs()[:P]
        return flint.fmpq_poly(cs)

    E2 = eisenstein(2, P)
    e2n = [a - N * b for a, b in zip(E2, dilate(E2, N, P))]
    gens: dict[int, list[tuple[flint.fmpq_poly, flint.fmpq_poly]]] = {2: [], 4: [], 6: [], 12: []}
    gens[2].append((poly(e2n), -poly(e2n)))
    for eps, forms in s2.items():
        for f in forms:
            pf = poly([0] + f)
            gens[2].append((pf, eps * pf))
    for k, half in ((4, 2), (6, 3)):
        e = eisenstein(k, P)
        a = poly(e)
        b = poly([N ** half * c for c in dilate(e, N, P)])
        gens[k] += [(a, b), (b, a)]
    dl = delta(P)
    a = poly(dl)
    b = poly([N ** 6 * c for c in dilate(dl, N, P)])
    gens[12] += [(a, b), (b, a)]

    partitions = [[12], [6, 6], [6, 4, 2], [6, 2, 2, 2], [4, 4, 4], [4, 4, 2, 2],
                  [4, 2, 2, 2, 2], [2] * 6]
    target = dim_cusp_forms(12, N) + 2
    log.info("N=%d: dim M_12 = %d", N, target)

    chosen: list[tuple[flint.fmpq_poly, flint.fmpq_poly]] = []
    seen = set()
    pivots_mod: list[tuple[int, list[int]]] = []  # incremental echelon mod a prime

    def reduce_mod(vec: list[int]) -> list[int]:
        for piv, row in pivots_mod:
            c = vec[piv]
            if c:
                vec = [(x - c * y) % NMOD_PRIME for x, y in zip(vec, row)]
        return vec

    def to_mod(f: flint.fmpq_poly) -> list[int]:
        cs = f.coeffs()
        out = [0] * P
        for i, c in enumerate(cs[:P]):
            out[i] = int(c.p) * pow(int(c.q), -1, NMOD_PRIME) % NMOD_PRIME
        return out

    attempts = 0
    while len(chosen) < target:
        attempts += 1
        if attempts > 50 * target:
            raise RuntimeError(f"monomials span only {len(chosen)} of {target}")
        part = rng.choice(partitions)
        key = tuple(sorted((k, rng.randrange(len(gens[k]))) for k in part))
        if key in seen:
            continue
        seen.add(key)
        m = poly([1])
        w = poly([1])
        for k, idx in key:
            f, fw = gens[k][idx]
            m = trunc(m * f)
            w = trunc(w * fw)
        vec = reduce_mod(to_mod(m))
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            continue
        inv = pow(vec[piv], -1, NMOD_PRIME)
        vec = [x * inv % NMOD_PRIME for x in vec]
        pivots_mod.append((piv, vec))
        chosen.append((m, w))
    log.info("N=%d: %d monomials tried for %d independent ones", N, attempts, target)

    sym = []
    for m, w in chosen:
        cs = trunc(m + w).coeffs()
        row = [Fraction(int(c.p), int(c.q)) for c in cs] + [Fraction(0)] * (P - len(cs))
        sym.append(row)
    ech, piv = rref_rows(sym)
    cusp = [r for r, p in zip(ech, piv) if p > 0]
    assert all(r[0] == 0 for r in cusp)
    return cusp


# ---------------------------------------------------------------------------

def frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dump(path: Path, N: int, weight: int, sign: str, prec: int, rows: list[list[Fraction]], offset: int):
    """``rows[i][j]`` is the coefficient of q^{j + offset}."""
    forms = []
    for r in rows:
        v = next(j for j, x in enumerate(r) if x != 0)
        forms.append({"valuation": v + offset,
                      "coefficients": [frac_str(x) for x in r[v:prec - offset]]})
    doc = {"level": N, "weight": weight, "atkin_lehner": sign, "precision": prec, "forms": forms}
    path.write_text(json.dumps(doc, indent=1) + "\n")
    log.info("wrote %s (%d forms)", path, len(forms))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--level", type=int, required=True)
    ap.add_argument("--precision", type=int, required=True)
    ap.add_argument("--out", type=Path, default=Path("src/hodgefil/data"))
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    rng = random.Random(args.seed)
    N, P = args.level, args.precision
    args.out.mkdir(parents=True, exist_ok=True)

    s2 = weight2_spaces(N, P, rng)
    dump(args.out / f"{N}_w2_plus.json", N, 2, "+", P, s2[1], 1)
    full, _ = rref_rows(s2[1] + s2[-1])
    dump(args.out / f"{N}_w2_full.json", N, 2, "full", P, full, 1)
    s12 = weight12_plus(N, P, s2, rng)
    dump(args.out / f"{N}_w12_plus.json", N, 12, "+", P, s12, 0)


if __name__ == "__main__":
    main()
