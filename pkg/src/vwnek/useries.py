"""Truncated Laurent series in u = s - 1 with YFraction coefficients.

A ULaurentSeries tracks a window [lo, hi]: coefficients below lo are known to
vanish (a support bound coming from the pole order of the underlying rational
function), coefficients above hi are unknown (truncation).  Addition keeps the
window [min(lo), min(hi)]; multiplication keeps

    [lo1 + lo2,  min(lo1 + hi2, lo2 + hi1)],

which is exactly the range on which the product of two windowed expansions is
determined.  These rules make the t1 = t2 = 1 limit of products of chart
series exact: give every factor the same window width and the u^0 coefficient
of the product survives with full precision.
"""

from __future__ import annotations

from math import comb

from .errors import SpecializedWeightTrivial, WindowExceeded
from .scalars import QQ, QQ0, QQ1, frac_str
from .weights import SubstitutionSpec, Weight, weight_eval
from .yfraction import YF_ONE, YF_ZERO, YFraction
from .ylaurent import YLaurent


class ULaurentSeries:
    __slots__ = ("coeffs", "lo", "hi")

    def __init__(self, coeffs: dict[int, YFraction], lo: int, hi: int):
        if lo > hi:
            raise ValueError(f"empty window [{lo}, {hi}]")
        self.coeffs = {k: v for k, v in coeffs.items() if lo <= k <= hi and not v.is_zero()}
        self.lo = lo
        self.hi = hi

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @staticmethod
    def constant(value, lo: int = 0, hi: int = 0) -> "ULaurentSeries":
        v = value if isinstance(value, YFraction) else YFraction(value)
        return ULaurentSeries({0: v} if not v.is_zero() else {}, min(lo, 0), hi)

    @staticmethod
    def zero(lo: int, hi: int) -> "ULaurentSeries":
        return ULaurentSeries({}, lo, hi)

    # ------------------------------------------------------------------
    # access
    # ------------------------------------------------------------------

    def __getitem__(self, k: int) -> YFraction:
        if k > self.hi:
            raise WindowExceeded(f"coefficient u^{k} outside window [{self.lo}, {self.hi}]")
        return self.coeffs.get(k, YF_ZERO)

    def u0(self) -> YFraction:
        """The u^0 coefficient (the t -> 1 limit when the series is regular)."""
        return self[0]

    def valuation(self) -> int | None:
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def negative_part_is_zero(self) -> bool:
        return all(k >= 0 for k in self.coeffs)

    def __eq__(self, other) -> bool:
        """Equality of the stored windows and coefficients on the overlap."""
        if not isinstance(other, ULaurentSeries):
            return NotImplemented
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        for k in range(lo, hi + 1):
            if self.coeffs.get(k, YF_ZERO) != other.coeffs.get(k, YF_ZERO):
                return False
        for k, v in self.coeffs.items():
            if k < lo and not v.is_zero():
                return False
        for k, v in other.coeffs.items():
            if k < lo and not v.is_zero():
                return False
        return True

    __hash__ = None

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __neg__(self) -> "ULaurentSeries":
        return ULaurentSeries({k: -v for k, v in self.coeffs.items()}, self.lo, self.hi)

    def __add__(self, other) -> "ULaurentSeries":
        if isinstance(other, (int, YFraction, YLaurent)):
            other = ULaurentSeries.constant(other, 0, self.hi)
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return ULaurentSeries(out, lo, hi)

    __radd__ = __add__

    def __sub__(self, other) -> "ULaurentSeries":
        if isinstance(other, (int, YFraction, YLaurent)):
            other = ULaurentSeries.constant(other, 0, self.hi)
        return self + (-other)

    def __mul__(self, other) -> "ULaurentSeries":
        if isinstance(other, (int, YFraction, YLaurent)) or not isinstance(other, ULaurentSeries):
            scale = other if isinstance(other, YFraction) else YFraction(other)
            if scale.is_zero():
                return ULaurentSeries({}, self.lo, self.hi)
            return ULaurentSeries(
                {k: v * scale for k, v in self.coeffs.items()}, self.lo, self.hi
            )
        lo = self.lo + other.lo
        hi = min(self.lo + other.hi, other.lo + self.hi)
        out: dict[int, YFraction] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                if k > hi:
                    continue
                prod = v1 * v2
                cur = out.get(k)
                out[k] = prod if cur is None else cur + prod
        return ULaurentSeries(out, lo, hi)

    __rmul__ = __mul__

    def shift(self, d: int) -> "ULaurentSeries":
        """Multiply by u^d."""
        return ULaurentSeries({k + d: v for k, v in self.coeffs.items()}, self.lo + d, self.hi + d)

    def widen_lo(self, lo: int) -> "ULaurentSeries":
        """Declare a weaker support bound (lo' <= lo); coefficients in between
        are known to vanish."""
        if lo > self.lo:
            raise ValueError("widen_lo only loosens the bound")
        return ULaurentSeries(self.coeffs, lo, self.hi)

    def clip(self, lo: int, hi: int) -> "ULaurentSeries":
        """Restrict to a smaller window."""
        if lo < self.lo or hi > self.hi:
            raise WindowExceeded(
                f"cannot clip [{self.lo},{self.hi}] to larger window [{lo},{hi}]"
            )
        return ULaurentSeries({k: v for k, v in self.coeffs.items() if lo <= k <= hi}, lo, hi)

    def inverse(self) -> "ULaurentSeries":
        """Invert a series with nonzero leading coefficient.

        For f with valuation v on window [lo, hi], the inverse is exact on
        [-v, hi - 2v].
        """
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("cannot invert the zero series")
        lead = self.coeffs[v]
        pad = self.hi - v  # number of known tail coefficients
        inv_lead = lead.inverse()
        # h = f * u^(-v) / lead = 1 + tail, tail valuation >= 1, known to pad
        h = {k - v: c * inv_lead for k, c in self.coeffs.items()}
        out = [YF_ZERO] * (pad + 1)
        out[0] = YF_ONE
        # recursive inversion: g_k = -sum_{j=1}^{k} h_j g_(k-j)
        for k in range(1, pad + 1):
            acc = YF_ZERO
            for j in range(1, k + 1):
                hj = h.get(j)
                if hj is not None and not out[k - j].is_zero():
                    acc = acc + hj * out[k - j]
            out[k] = -acc
        coeffs = {k - v: c * inv_lead for k, c in enumerate(out) if not c.is_zero()}
        return ULaurentSeries(coeffs, -v, self.hi - 2 * v)

    # ------------------------------------------------------------------
    # rendering
    # ------------------------------------------------------------------

    def render(self) -> str:
        body = " + ".join(
            f"u^{k}*({self.coeffs[k].render()})" for k in sorted(self.coeffs)
        )
        if not body:
            body = "0"
        return f"{{window=[{self.lo},{self.hi}]; {body}}}"

    @staticmethod
    def parse(text: str) -> "ULaurentSeries":
        text = text.strip()
        if not (text.startswith("{window=[") and text.endswith("}")):
            raise ValueError(f"malformed u-series: {text[:40]}")
        head, body = text[1:-1].split("; ", 1)
        lo, hi = head[len("window=[") : -1].split(",")
        coeffs: dict[int, YFraction] = {}
        if body != "0":
            for part in body.split(" + u^"):
                part = part.removeprefix("u^")
                kstr, rest = part.split("*(", 1)
                # the coefficient rendering may itself contain " + ", so we
                # rely on the outer split pattern " + u^" being unambiguous
                coeffs[int(kstr)] = YFraction.parse(rest[:-1])
        return ULaurentSeries(coeffs, int(lo), int(hi))

    def __repr__(self):
        return f"ULaurentSeries({self.render()})"


# ----------------------------------------------------------------------
# expansions of weight factors
# ----------------------------------------------------------------------

def _ypoly(head, yexp: int, c) -> YLaurent:
    """head + c * Y^yexp as a YLaurent, merging exponents when yexp = 0."""
    if yexp == 0:
        return YLaurent.monomial(head + c)
    return YLaurent.from_dict({0: head, yexp: c})


_BINOMIAL_SERIES_CACHE: dict[tuple[int, int], tuple] = {}


def _one_plus_u_power(a: int, hi: int) -> tuple:
    """Rational coefficients of (1+u)^a through u^hi (a may be negative)."""
    key = (a, hi)
    hit = _BINOMIAL_SERIES_CACHE.get(key)
    if hit is not None:
        return hit
    if a >= 0:
        cs = tuple(QQ(comb(a, k)) if k <= a else QQ0 for k in range(hi + 1))
    else:
        # (1+u)^a = sum_k C(a, k) u^k, C(a, k) = (-1)^k C(-a+k-1, k)
        cs = tuple(QQ((-1) ** k * comb(-a + k - 1, k)) for k in range(hi + 1))
    _BINOMIAL_SERIES_CACHE[key] = cs
    return cs


def one_minus_inverse_weight_series(
    w: Weight, spec: SubstitutionSpec, lo: int, hi: int
) -> ULaurentSeries:
    """Expansion of 1 - w^(-1) under the substitution, on window [lo, hi].

    With w -> s^a Y^b this is 1 - (1+u)^(-a) Y^(-b).  For b = 0 the constant
    term cancels and the series starts at u^1 (a must be nonzero, otherwise
    the weight is trivial under the substitution and the direction has to be
    resampled).
    """
    a, b = weight_eval(w, spec)
    if a == 0 and b == 0:
        raise SpecializedWeightTrivial(f"weight {w.render()} specializes to 1")
    pw = _one_plus_u_power(-a, hi)
    coeffs: dict[int, YFraction] = {}
    for k in range(0, hi + 1):
        head = QQ1 if k == 0 else QQ0
        poly = _ypoly(head, -b, -pw[k])
        if not poly.is_zero():
            coeffs[k] = YFraction(poly)
    return ULaurentSeries(coeffs, min(lo, 0), hi)


_GENUS_FACTOR_CACHE: dict[tuple[int, int, int], ULaurentSeries] = {}


def genus_factor_series(a: int, b: int, width: int) -> ULaurentSeries:
    """Expansion of (1 - y w^(-1)) / (1 - w^(-1)) for w -> s^a Y^b.

    Here y = Y^2 so the numerator is 1 - (1+u)^(-a) Y^(2-b).  The result is
    windowed as [-1, width-1] when b = 0 (simple pole) and [0, width] when
    b != 0 (unit factor); in both cases the window width is exactly `width`.
    """
    key = (a, b, width)
    hit = _GENUS_FACTOR_CACHE.get(key)
    if hit is not None:
        return hit
    if a == 0 and b == 0:
        raise SpecializedWeightTrivial("weight specializes to 1")
    if b == 0:
        # the denominator 1 - (1+u)^(-a) vanishes at u = 0 to first order,
        # the numerator 1 - (1+u)^(-a) y does not (y = Y^2 is not 1)
        hi = width + 1
        pw = _one_plus_u_power(-a, hi)
        ncoeffs = {}
        dcoeffs = {}
        for k in range(hi + 1):
            head = QQ1 if k == 0 else QQ0
            npoly = _ypoly(head, 2, -pw[k])
            if not npoly.is_zero():
                ncoeffs[k] = YFraction(npoly)
            c = head - pw[k]
            if c != 0:
                dcoeffs[k] = YFraction(YLaurent.monomial(c))
        num = ULaurentSeries(ncoeffs, 0, hi)
        den = ULaurentSeries(dcoeffs, 1, hi)  # constant term cancels exactly
        result = (num * den.inverse()).clip(-1, width - 1)
    else:
        hi = width
        pw = _one_plus_u_power(-a, hi)
        ncoeffs = {}
        dcoeffs = {}
        for k in range(hi + 1):
            head = QQ1 if k == 0 else QQ0
            npoly = _ypoly(head, 2 - b, -pw[k])
            dpoly = _ypoly(head, -b, -pw[k])
            if not npoly.is_zero():
                ncoeffs[k] = YFraction(npoly)
            if not dpoly.is_zero():
                dcoeffs[k] = YFraction(dpoly)
        num = ULaurentSeries(ncoeffs, 0, hi)
        den = ULaurentSeries(dcoeffs, 0, hi)
        result = (num * den.inverse()).clip(0, width)
    if len(_GENUS_FACTOR_CACHE) < 65536:
        _GENUS_FACTOR_CACHE[key] = result
    return result


def render_rational(x) -> str:
    return frac_str(x)
