"""Truncated Laurent series in q with exact rational coefficients.

A :class:`LaurentSeries` stores dense coefficients starting at its valuation
and the precision ``prec``: the series is known modulo ``O(q^prec)``.  Every
coefficient with exponent below ``prec`` is certain; coefficients between the
last stored one and ``prec`` are known zeros.  The exact zero series has no
coefficients and ``prec = INF``.  A series with no stored coefficients and a
finite ``prec`` is ``O(q^prec)`` and has valuation ``prec``.

Values are immutable and all operations are pure.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import islice
from typing import Iterable, Sequence

from .errors import BadDenominator, InsufficientPrecision, ResidueObstruction, ZeroDivisor

INF = math.inf

Scalar = int | Fraction


def _lcm_den(coeffs: Sequence[Fraction]) -> int:
    return math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1


def _scaled_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = _lcm_den(coeffs)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(F: list[int], G: list[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer sequences."""
    if len(F) > len(G):
        F, G = G, F
    out = [0] * n
    for i, a in enumerate(F):
        if i >= n:
            break
        if not a:
            continue
        m = min(len(G), n - i)
        out[i:i + m] = [x + a * y for x, y in zip(out[i:i + m], G)]
    return out


class LaurentSeries:
    """Element of Q((q)) known modulo O(q^prec)."""

    __slots__ = ("valuation", "coeffs", "prec")

    def __init__(self, coeffs: Iterable[Scalar | str] = (), valuation: int = 0, prec: float | int = INF):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        self._set(cs, valuation, prec)

    @classmethod
    def _raw(cls, coeffs: list[Fraction], valuation: int, prec) -> "LaurentSeries":
        obj = cls.__new__(cls)
        obj._set(coeffs, valuation, prec)
        return obj

    def _set(self, cs: list[Fraction], valuation, prec) -> None:
        if prec != INF:
            prec = int(prec)
            keep = prec - valuation
            if keep < len(cs):
                cs = cs[:max(keep, 0)]
        lo, hi = 0, len(cs)
        while lo < hi and not cs[lo]:
            lo += 1
        while hi > lo and not cs[hi - 1]:
            hi -= 1
        cs = cs[lo:hi]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "valuation", valuation + lo if cs else prec)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- construction helpers ----------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1, prec=INF) -> "LaurentSeries":
        return cls([coeff], exponent, prec)

    @classmethod
    def zero(cls, prec=INF) -> "LaurentSeries":
        return cls._raw([], 0, prec)

    @classmethod
    def from_dict(cls, terms: dict[int, Scalar], prec=INF) -> "LaurentSeries":
        if not terms:
            return cls.zero(prec)
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo, prec)

    # -- basic queries -----------------------------------------------------

    @property
    def end(self):
        """One past the exponent of the last stored coefficient."""
        return self.valuation + len(self.coeffs) if self.coeffs else self.prec

    def is_zero(self) -> bool:
        """True only for the exact zero series."""
        return not self.coeffs and self.prec == INF

    def is_known_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.prec:
            raise InsufficientPrecision(f"coefficient of q^{n} is beyond O(q^{self.prec})",
                                        operation="coefficient", datum=n)
        k = n - self.valuation
        if self.coeffs and 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def coefficients(self, lo: int, hi: int) -> list[Fraction]:
        """Coefficients of q^lo .. q^hi inclusive."""
        return [self[e] for e in range(lo, hi + 1)]

    def pole_order(self) -> int:
        return max(0, -self.valuation) if self.coeffs else 0

    def terms(self) -> Iterable[tuple[int, Fraction]]:
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.valuation + k, c

    def truncate(self, prec) -> "LaurentSeries":
        return LaurentSeries._raw(list(self.coeffs), self.valuation if self.coeffs else 0, min(self.prec, prec))

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^k."""
        return LaurentSeries._raw(list(self.coeffs), (self.valuation if self.coeffs else 0) + k, self.prec + k)

    def principal_part(self) -> "LaurentSeries":
        """Exact sum of the negative-exponent terms."""
        if self.prec < 0:
            raise InsufficientPrecision("principal part not fully known", operation="principal_part",
                                        datum=self.prec)
        return LaurentSeries._raw([c for e, c in self._items() if e < 0], self.valuation, INF) \
            if self.coeffs and self.valuation < 0 else LaurentSeries.zero()

    def _items(self):
        return ((self.valuation + k, c) for k, c in enumerate(self.coeffs))

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries._raw([-c for c in self.coeffs], self.valuation if self.coeffs else 0, self.prec)

    def __pos__(self):
        return self

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentSeries([other], 0)
        return NotImplemented

    def __add__(self, other) -> "LaurentSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other) -> "LaurentSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return div(self, other)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisor("division by the scalar 0", operation="div")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentSeries":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = LaurentSeries([1])
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def scale(self, c: Scalar) -> "LaurentSeries":
        c = Fraction(c)
        if c == 0:
            return LaurentSeries.zero()
        return LaurentSeries._raw([c * x for x in self.coeffs], self.valuation if self.coeffs else 0, self.prec)

    def derivative(self) -> "LaurentSeries":
        return derivative(self)

    def antiderivative(self) -> "LaurentSeries":
        return antiderivative(self)

    def residue(self) -> Fraction:
        return residue(self)

    def reduce_mod(self, N: int, lo: int, hi: int) -> list[int]:
        return reduce_mod(self, N, (lo, hi))

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries([other])
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.prec == other.prec
                and (not self.coeffs or self.valuation == other.valuation))

    def __hash__(self):
        return hash((self.valuation if self.coeffs else None, self.coeffs, self.prec))

    def agrees(self, other: "LaurentSeries") -> bool:
        """Equal on every coefficient certain in both."""
        p = min(self.prec, other.prec)
        return (self - other).truncate(p).is_known_zero()

    # -- text ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"

    def __str__(self) -> str:
        return self.format()

    def format(self, max_terms: int | None = None) -> str:
        parts = []
        shown = 0
        trunc_at = None
        for e, c in self.terms():
            if max_terms is not None and shown >= max_terms:
                trunc_at = e
                break
            parts.append(_format_term(c, e, first=not parts))
            shown += 1
        bound = self.prec if trunc_at is None else trunc_at
        if bound != INF:
            tail = f"O(q^{bound})" if bound not in (0, 1) else ("O(1)" if bound == 0 else "O(q)")
            parts.append(("+ " if parts else "") + tail)
        return " ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "LaurentSeries":
        """Parse ``"q^-3 + q^-2 + 3q^-1 + 70 + 9q + O(q^2)"`` style strings."""
        s = text.replace(" ", "").replace("**", "^").replace("{", "").replace("}", "")
        s = s.replace("^-", "^~").replace("^(-", "^(~")
        if not s or s == "0":
            return cls.zero()
        terms: dict[int, Fraction] = {}
        prec = INF
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            body = body.replace("~", "-").replace("(", "").replace(")", "") if not body.startswith("O") else body.replace("~", "-")
            if body.startswith("O"):
                inner = body[1:].strip("()")
                prec = _parse_exponent(inner) if "q" in inner else 0
                continue
            m = re.fullmatch(r"(\d+(?:/\d+)?)?\*?(q(?:\^(-?\d+))?)?", body)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            if sign == "-":
                coeff = -coeff
            if m.group(2) is None:
                exp = 0
            else:
                exp = int(m.group(3)) if m.group(3) is not None else 1
            terms[exp] = terms.get(exp, Fraction(0)) + coeff
        return cls.from_dict(terms, prec)

    # -- serialization -------------------------------------------------------

    def to_json(self, max_terms: int | None = None) -> dict:
        coeffs = self.coeffs
        prec = self.prec
        if max_terms is not None and len(coeffs) > max_terms:
            coeffs = coeffs[:max_terms]
            prec = self.valuation + max_terms
        return {
            "valuation": self.valuation if self.coeffs else (None if prec == INF else prec),
            "coefficients": [frac_str(c) for c in coeffs],
            "prec": None if prec == INF else prec,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LaurentSeries":
        prec = INF if doc.get("prec") is None else int(doc["prec"])
        val = doc.get("valuation")
        return cls([Fraction(c) for c in doc["coefficients"]], 0 if val is None else int(val), prec)


def _parse_exponent(inner: str) -> int:
    inner = inner.replace("~", "-")
    if inner == "q":
        return 1
    return int(inner.split("^", 1)[1])


def _format_term(c: Fraction, e: int, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if e == 0:
        body = frac_str(a)
    else:
        mono = "q" if e == 1 else f"q^{e}"
        body = mono if a == 1 else f"{frac_str(a)}*{mono}"
    if first:
        return body if sign == "+" else "-" + body
    return f"{sign} {body}"


def frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- module-level operations ---------------------------------------------------

def add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Sum; precision is the smaller of the two."""
    prec = min(f.prec, g.prec)
    if not g.coeffs:
        return f.truncate(prec)
    if not f.coeffs:
        return g.truncate(prec)
    lo = min(f.valuation, g.valuation)
    hi = min(prec, max(f.end, g.end))
    if hi <= lo:
        return LaurentSeries.zero(prec)
    out = [Fraction(0)] * (hi - lo)
    for e, c in f._items():
        if e >= hi:
            break
        out[e - lo] = c
    for e, c in g._items():
        if e >= hi:
            break
        out[e - lo] += c
    return LaurentSeries._raw(out, lo, prec)


def mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Cauchy product, keeping only certain coefficients."""
    if f.is_zero() or g.is_zero():
        return LaurentSeries.zero()
    vf, vg = f.valuation, g.valuation
    prec = min(f.prec + vg, g.prec + vf)
    if not f.coeffs or not g.coeffs:
        return LaurentSeries.zero(prec)
    v = vf + vg
    n = len(f.coeffs) + len(g.coeffs) - 1
    if prec != INF:
        n = min(n, prec - v)
    if n <= 0:
        return LaurentSeries.zero(prec)
    F, df = _scaled_ints(f.coeffs)
    G, dg = _scaled_ints(g.coeffs)
    out = _convolve(F, G, n)
    den = df * dg
    return LaurentSeries._raw([Fraction(x, den) for x in out], v, prec)


def div(f: LaurentSeries, g: LaurentSeries, terms: int | None = None) -> LaurentSeries:
    """Quotient f/g by exact long division.

    ``terms`` is the number of certain coefficients wanted (counted from the
    valuation); it is required when both inputs are exact and g is not a
    monomial, since the quotient is then an infinite series.
    """
    if g.is_zero():
        raise ZeroDivisor("division by the zero series", operation="div")
    if not g.coeffs:
        raise InsufficientPrecision(f"divisor is O(q^{g.prec}); its leading term is unknown",
                                    operation="div", datum=g.prec)
    if f.is_zero():
        return LaurentSeries.zero()
    vg = g.valuation
    if not f.coeffs:
        return LaurentSeries.zero(f.prec - vg)
    vf = f.valuation
    v = vf - vg
    rel = min(f.prec - vf, g.prec - vg)
    if rel == INF:
        if len(g.coeffs) == 1:
            c = g.coeffs[0]
            return LaurentSeries._raw([x / c for x in f.coeffs], v, INF)
        if terms is None:
            raise InsufficientPrecision("quotient of exact series is infinite; pass terms=",
                                        operation="div", datum=str(g))
        rel = terms
        prec = v + rel
    else:
        prec = v + rel
        if terms is not None and rel < terms:
            raise InsufficientPrecision(f"quotient has {rel} certain terms, {terms} requested",
                                        operation="div", datum=rel)
    F, df = _scaled_ints(f.coeffs)
    G, dg = _scaled_ints(g.coeffs[:rel])
    g0 = G[0]
    # Q_k = q_k * g0^(k+1) stays integral
    Q: list[int] = []
    pw = [1]
    for k in range(rel):
        pw.append(pw[-1] * g0)
    for k in range(rel):
        s = (F[k] if k < len(F) else 0) * pw[k]
        m = min(k, len(G) - 1)
        if m:
            if g0 == 1:
                s -= sum(G[i] * Q[k - i] for i in range(1, m + 1))
            else:
                s -= sum(G[i] * Q[k - i] * pw[i - 1] for i in range(1, m + 1))
        Q.append(s)
    scale = Fraction(dg, df)
    return LaurentSeries._raw([Fraction(Q[k], pw[k + 1]) * scale for k in range(rel)], v, prec)


def derivative(f: LaurentSeries) -> LaurentSeries:
    """d/dq, termwise; precision drops by one."""
    if not f.coeffs:
        return LaurentSeries.zero(f.prec - 1)
    return LaurentSeries._raw([e * c for e, c in f._items()], f.valuation - 1, f.prec - 1)


def antiderivative(f: LaurentSeries) -> LaurentSeries:
    """Formal integral with zero constant term.

    Raises :class:`ResidueObstruction` if the q^-1 coefficient is nonzero.
    """
    if f.prec <= -1:
        raise InsufficientPrecision("q^-1 coefficient unknown; cannot integrate",
                                    operation="antiderivative", datum=f.prec)
    r = f[-1]
    if r:
        raise ResidueObstruction(f"nonzero residue {r}", operation="antiderivative", datum=r)
    if not f.coeffs:
        return LaurentSeries.zero(f.prec + 1)
    out = [Fraction(0) if e == -1 else c / (e + 1) for e, c in f._items()]
    return LaurentSeries._raw(out, f.valuation + 1, f.prec + 1)


def residue(f: LaurentSeries) -> Fraction:
    """Coefficient of q^-1."""
    if f.prec <= -1:
        raise InsufficientPrecision("q^-1 coefficient is beyond the known precision",
                                    operation="residue", datum=f.prec)
    return f[-1]


def residue_of_product(f: LaurentSeries, g: LaurentSeries) -> Fraction:
    """Coefficient of q^-1 in f*g without forming the product."""
    if f.is_zero() or g.is_zero() or not f.coeffs or not g.coeffs:
        p = min(f.prec + (g.valuation if g.coeffs else g.prec),
                g.prec + (f.valuation if f.coeffs else f.prec))
        if p <= -1:
            raise InsufficientPrecision("q^-1 coefficient of product unknown",
                                        operation="residue", datum=p)
        return Fraction(0)
    p = min(f.prec + g.valuation, g.prec + f.valuation)
    if p <= -1:
        raise InsufficientPrecision("q^-1 coefficient of product unknown",
                                    operation="residue", datum=p)
    total = Fraction(0)
    for e, c in f._items():
        k = -1 - e - g.valuation
        if k < 0:
            break
        if k < len(g.coeffs):
            total += c * g.coeffs[k]
    return total


def reduce_mod(f: LaurentSeries, N: int, window: tuple[int, int]) -> list[int]:
    """Coefficients of q^lo .. q^hi reduced modulo the prime N."""
    lo, hi = window
    if hi >= f.prec:
        raise InsufficientPrecision(f"window end q^{hi} beyond O(q^{f.prec})",
                                    operation="reduce_mod", datum=hi)
    out = []
    for e in range(lo, hi + 1):
        c = f[e]
        if c.denominator % N == 0:
            raise BadDenominator(f"coefficient {c} of q^{e} has denominator divisible by {N}",
                                 operation="reduce_mod", datum=e)
        out.append(c.numerator * pow(c.denominator, -1, N) % N)
    return out


def linear_combination(scalars: Sequence[Scalar], series: Sequence[LaurentSeries]) -> LaurentSeries:
    total = LaurentSeries.zero()
    for a, s in zip(scalars, series):
        if a:
            total = add(total, s.scale(a))
    return total


def first_n(f: LaurentSeries, n: int) -> list[tuple[int, Fraction]]:
    return list(islice(f.terms(), n))
