"""Truncated series in q with exact rational exponents.

Exponents are fractions.Fraction values; a QSeries with truncation order o
has every coefficient of q^e with e <= o stored exactly, and knows nothing
above o.  Multiplication propagates the truncation through

    order(f*g) = min(order(f) + val(g), order(g) + val(f)),

so products of series with positive valuation lose no precision at the bottom.
Coefficients can live in any exact ring with +, -, *, .is_zero(), .render();
the default ring is YFraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import SeriesOrderInsufficient
from .scalars import QQ, to_fraction
from .yfraction import YF_ONE, YF_ZERO, YFraction

QExp = Fraction


def _as_exp(e) -> Fraction:
    if isinstance(e, Fraction):
        return e
    if isinstance(e, int):
        return Fraction(e)
    return to_fraction(e)


class QSeries:
    __slots__ = ("terms", "order", "one")

    def __init__(self, terms: dict, order, one=YF_ONE):
        self.order = _as_exp(order)
        self.one = one
        self.terms = {}
        for e, c in terms.items():
            e = _as_exp(e)
            if e > self.order:
                continue
            if hasattr(c, "is_zero"):
                if c.is_zero():
                    continue
            elif c == 0:
                continue
            self.terms[e] = c

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @staticmethod
    def zero(order, one=YF_ONE) -> "QSeries":
        return QSeries({}, order, one)

    @staticmethod
    def constant(c, order, one=YF_ONE) -> "QSeries":
        return QSeries({Fraction(0): c}, order, one)

    @staticmethod
    def unit(order, one=YF_ONE) -> "QSeries":
        return QSeries({Fraction(0): one}, order, one)

    @staticmethod
    def monomial(c, e, order, one=YF_ONE) -> "QSeries":
        return QSeries({_as_exp(e): c}, order, one)

    # ------------------------------------------------------------------
    # access
    # ------------------------------------------------------------------

    def coefficient(self, e):
        e = _as_exp(e)
        if e > self.order:
            raise SeriesOrderInsufficient(
                f"coefficient of q^{e} requested, series exact only through q^{self.order}"
            )
        return self.terms.get(e, self._zero_coeff())

    def _zero_coeff(self):
        if isinstance(self.one, YFraction):
            return YF_ZERO
        return self.one - self.one

    def valuation(self) -> Fraction | None:
        if not self.terms:
            return None
        return min(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> list[Fraction]:
        return sorted(self.terms)

    def __eq__(self, other) -> bool:
        """Equality of coefficients up to the common truncation order."""
        if not isinstance(other, QSeries):
            return NotImplemented
        o = min(self.order, other.order)
        for e, c in self.terms.items():
            if e > o:
                continue
            oc = other.terms.get(e)
            if oc is None:
                if hasattr(c, "is_zero") and c.is_zero():
                    continue
                return False
            if c != oc:
                return False
        for e, c in other.terms.items():
            if e <= o and e not in self.terms:
                if hasattr(c, "is_zero") and c.is_zero():
                    continue
                return False
        return True

    __hash__ = None

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self.terms.items()}, self.order, self.one)

    def __add__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return QSeries(out, order, self.one)

    def __sub__(self, other) -> "QSeries":
        return self + (-other)

    def _effective_valuation(self) -> Fraction:
        v = self.valuation()
        return v if v is not None else self.order

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        order = min(
            self.order + other._effective_valuation(),
            other.order + self._effective_valuation(),
        )
        out: dict[Fraction, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e > order:
                    continue
                prod = c1 * c2
                cur = out.get(e)
                out[e] = prod if cur is None else cur + prod
        return QSeries(out, order, self.one)

    __rmul__ = __mul__

    def scale(self, c) -> "QSeries":
        """Multiply every coefficient by a ring element or rational scalar."""
        return QSeries({e: v * c for e, v in self.terms.items()}, self.order, self.one)

    def shift(self, e) -> "QSeries":
        """Multiply by q^e."""
        d = _as_exp(e)
        return QSeries({k + d: v for k, v in self.terms.items()}, self.order + d, self.one)

    def truncate(self, order) -> "QSeries":
        order = _as_exp(order)
        if order > self.order:
            raise SeriesOrderInsufficient(
                f"cannot extend truncation order {self.order} to {order}"
            )
        return QSeries(self.terms, order, self.one)

    def map_coefficients(self, fn) -> "QSeries":
        return QSeries({e: fn(c) for e, c in self.terms.items()}, self.order, self.one)

    # ------------------------------------------------------------------
    # rendering
    # ------------------------------------------------------------------

    def render(self) -> str:
        lines = [f"qseries order={self.order}"]
        for e in sorted(self.terms):
            lines.append(f"q^({e}): {self.terms[e].render()}")
        return "\n".join(lines)

    @staticmethod
    def parse(text: str, coeff_parse=YFraction.parse, one=YF_ONE) -> "QSeries":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("qseries order="):
            raise ValueError("malformed q-series text")
        order = Fraction(lines[0][len("qseries order=") :])
        terms = {}
        for ln in lines[1:]:
            head, body = ln.split(": ", 1)
            if not (head.startswith("q^(") and head.endswith(")")):
                raise ValueError(f"malformed q-series line: {ln[:40]}")
            terms[Fraction(head[3:-1])] = coeff_parse(body)
        return QSeries(terms, order, one)

    def __repr__(self):
        return f"QSeries({len(self.terms)} terms, order={self.order})"


# ----------------------------------------------------------------------
# transcendental operations (exact, term by term)
# ----------------------------------------------------------------------


def qseries_inverse(f: QSeries) -> QSeries:
    """Invert a series whose lowest coefficient is an invertible ring element.

    For f = c q^v (1 + h) exact through order o, the inverse is exact through
    o - 2v.
    """
    v = f.valuation()
    if v is None:
        raise ZeroDivisionError("cannot invert the zero q-series")
    c = f.terms[v]
    cinv = c.inverse()
    h = (f.shift(-v).scale(cinv) - QSeries.unit(f.order - v, f.one))
    # geometric series sum_{k} (-h)^k
    acc = QSeries.unit(f.order - v, f.one)
    power = QSeries.unit(f.order - v, f.one)
    hv = h._effective_valuation()
    if hv > 0 and not h.is_zero():
        k = 1
        while k * hv <= f.order - v:
            power = power * (-h)
            acc = acc + power
            k += 1
    elif not h.is_zero():
        raise ValueError("inverse needs a unit leading term")
    return acc.scale(cinv).shift(-v)


def qseries_div(f: QSeries, g: QSeries) -> QSeries:
    return f * qseries_inverse(g)


def qseries_log(f: QSeries) -> QSeries:
    """log of a series with constant term 1 (exponent 0, coefficient one)."""
    if f.valuation() != 0 or f.terms[Fraction(0)] != f.one:
        raise ValueError("qseries_log needs constant term 1")
    g = f - QSeries.unit(f.order, f.one)
    acc = QSeries.zero(f.order, f.one)
    gv = g._effective_valuation()
    if g.is_zero():
        return acc
    if gv <= 0:
        raise ValueError("qseries_log needs positive valuation tail")
    power = QSeries.unit(f.order, f.one)
    k = 1
    while k * gv <= f.order:
        power = power * g
        acc = acc + power.scale(QQ((-1) ** (k + 1), k))
        k += 1
    return acc


def qseries_exp(f: QSeries) -> QSeries:
    """exp of a series with positive valuation."""
    v = f._effective_valuation()
    if not f.is_zero() and v <= 0:
        raise ValueError("qseries_exp needs positive valuation")
    acc = QSeries.unit(f.order, f.one)
    if f.is_zero():
        return acc
    power = QSeries.unit(f.order, f.one)
    k = 1
    while k * v <= f.order:
        power = power * f
        acc = acc + power.scale(QQ(1, factorial(k)))
        k += 1
    return acc


def qseries_pow(f: QSeries, c) -> QSeries:
    """f^c for integer c (any unit leading term) or rational c (leading 1)."""
    cf = c if isinstance(c, Fraction) else to_fraction(c)
    if cf.denominator == 1:
        n = int(cf)
        if n == 0:
            return QSeries.unit(f.order, f.one)
        base = f if n > 0 else qseries_inverse(f)
        n = abs(n)
        acc = None
        while n:
            if n & 1:
                acc = base if acc is None else acc * base
            n >>= 1
            if n:
                base = base * base
        return acc
    return qseries_exp(qseries_log(f).scale(QQ(cf.numerator, cf.denominator)))


def qseries_sqrt(f: QSeries) -> QSeries:
    return qseries_pow(f, QQ(1, 2))
