"""Rational functions in Y over exact rationals.

Denominators that arise in localization work are overwhelmingly products of
binomials (1 - Y^c): they come from inverting weight factors whose Y-part is
nontrivial, and from quantum numbers.  A YFraction therefore keeps its
denominator as

    dfac:  {c: m}  meaning  prod_c (1 - Y^c)^m   with c >= 1,
    dpoly: an ordinary polynomial factor for everything else (usually 1).

Multiplication and addition only merge these factored parts and trial-divide
the numerator by the known binomials, which avoids general polynomial gcd on
the hot path.  A fully reduced canonical (numerator, denominator) pair is
computed lazily for rendering, hashing-free equality is done by cross
multiplication.
"""

from __future__ import annotations

from .scalars import QQ, QQ0, QQ1
from .ylaurent import Y_ONE, Y_ZERO, YLaurent

# cache of expanded denominators keyed by the factored form
_DEN_EXPANSION_CACHE: dict[tuple, YLaurent] = {}

# cache of binomial powers (1 - Y^c)^m used by trial reduction
_BINOM_POW_CACHE: dict[tuple[int, int], YLaurent] = {}


def _binom_power(c: int, m: int) -> YLaurent:
    key = (c, m)
    hit = _BINOM_POW_CACHE.get(key)
    if hit is None:
        hit = YLaurent.one_minus_y_power(c) ** m
        if len(_BINOM_POW_CACHE) < 4096:
            _BINOM_POW_CACHE[key] = hit
    return hit


def _expand_dfac(dfac: tuple) -> YLaurent:
    """Expand prod (1 - Y^c)^m for dfac = ((c, m), ...)."""
    cached = _DEN_EXPANSION_CACHE.get(dfac)
    if cached is not None:
        return cached
    poly = Y_ONE
    for c, m in dfac:
        poly = poly * (YLaurent.one_minus_y_power(c) ** m)
    if len(_DEN_EXPANSION_CACHE) < 4096:
        _DEN_EXPANSION_CACHE[dfac] = poly
    return poly


class YFraction:
    __slots__ = ("num", "dfac", "dpoly", "_canon")

    def __init__(self, num, dfac: dict[int, int] | None = None, dpoly: YLaurent | None = None):
        if isinstance(num, YLaurent):
            self.num = num
        elif isinstance(num, YFraction):
            other = num
            self.num = other.num
            self.dfac = dict(other.dfac)
            self.dpoly = other.dpoly
            self._canon = other._canon
            return
        else:
            self.num = YLaurent.monomial(num)
        self.dfac = {} if dfac is None else {c: m for c, m in dfac.items() if m}
        self.dpoly = Y_ONE if dpoly is None else dpoly
        self._canon = None
        if self.num.is_zero():
            self.dfac = {}
            self.dpoly = Y_ONE
        else:
            self._trial_reduce()

    # ------------------------------------------------------------------
    # construction helpers
    # ------------------------------------------------------------------

    @staticmethod
    def from_pair(num: YLaurent, den: YLaurent) -> "YFraction":
        """num / den for an arbitrary nonzero denominator polynomial."""
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        f = YFraction(num)
        return f._with_dpoly(den)

    @staticmethod
    def one_minus_y_inverse(c: int) -> "YFraction":
        """1 / (1 - Y^c) for c != 0, normalized so the stored factor has c >= 1."""
        if c == 0:
            raise ZeroDivisionError("1 - Y^0 vanishes")
        if c > 0:
            return YFraction(Y_ONE, {c: 1})
        # 1/(1 - Y^c) = -Y^(-c)/(1 - Y^(-c)) for c < 0
        return YFraction(YLaurent.monomial(-1, -c), {-c: 1})

    def _with_dpoly(self, extra: YLaurent) -> "YFraction":
        if extra.is_one():
            return self
        if extra.is_monomial():
            e, c = next(iter(extra.items()))
            out = YFraction.__new__(YFraction)
            out.num = self.num.shift(-e) * (QQ1 / c)
            out.dfac = dict(self.dfac)
            out.dpoly = self.dpoly
            out._canon = None
            return out
        out = YFraction.__new__(YFraction)
        g = self.num.gcd(extra)
        if not g.is_one() and not g.is_zero():
            num = self.num.exact_div(g)
            den = extra.exact_div(g)
        else:
            num, den = self.num, extra
        out.num = num
        out.dfac = dict(self.dfac)
        out.dpoly = self.dpoly * den
        out._canon = None
        return out

    # ------------------------------------------------------------------
    # reduction
    # ------------------------------------------------------------------

    def _trial_reduce(self) -> None:
        """Cancel stored binomial factors that divide the numerator exactly.

        Cancellation runs a power ladder: try the full remaining power first
        and halve the step on failure, so a numerator divisible by a high
        power costs O(log m) divisions instead of m.
        """
        if not self.dfac or self.num.is_zero():
            return
        num = self.num
        for c in sorted(self.dfac, reverse=True):
            m = self.dfac[c]
            step = m
            while m > 0 and step > 0:
                if step > m:
                    step = m
                q = num.exact_div(_binom_power(c, step))
                if q is None:
                    step //= 2
                else:
                    num = q
                    m -= step
            if m:
                self.dfac[c] = m
            else:
                del self.dfac[c]
        self.num = num

    def canonical_pair(self) -> tuple[YLaurent, YLaurent]:
        """Fully reduced (numerator, denominator).

        The denominator is an honest polynomial (no negative Y powers) whose
        lowest-degree coefficient is 1; the numerator absorbs all units.
        """
        if self._canon is not None:
            return self._canon
        num = self.num
        den = _expand_dfac(tuple(sorted(self.dfac.items())))
        if not self.dpoly.is_one():
            den = den * self.dpoly
        if num.is_zero():
            self._canon = (Y_ZERO, Y_ONE)
            return self._canon
        g = num.gcd(den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
        # normalize: den with offset 0 and lowest coefficient 1
        shift = den.min_exp
        low = den.coeffs[0]
        den = den.shift(-shift) * (QQ1 / low)
        num = num.shift(-shift) * (QQ1 / low)
        self._canon = (num, den)
        return self._canon

    # ------------------------------------------------------------------
    # predicates
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        num, den = self.canonical_pair()
        return den.is_one() and num.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, YLaurent)):
            other = YFraction(other)
        if not isinstance(other, YFraction):
            return NotImplemented
        if self.num.is_zero():
            return other.num.is_zero()
        if other.num.is_zero():
            return False
        return self.num * other._den_expanded() == other.num * self._den_expanded()

    __hash__ = None  # fractions are mutable-ish caches; never dict keys

    def _den_expanded(self) -> YLaurent:
        den = _expand_dfac(tuple(sorted(self.dfac.items())))
        if not self.dpoly.is_one():
            den = den * self.dpoly
        return den

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __neg__(self) -> "YFraction":
        out = YFraction.__new__(YFraction)
        out.num = -self.num
        out.dfac = dict(self.dfac)
        out.dpoly = self.dpoly
        out._canon = None
        return out

    def __add__(self, other) -> "YFraction":
        if isinstance(other, (int, YLaurent)):
            other = YFraction(other)
        elif not isinstance(other, YFraction):
            if not (hasattr(other, "numerator") and hasattr(other, "denominator")):
                return NotImplemented
            other = YFraction(YLaurent.monomial(other))
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        # common denominator: max powers of each binomial, product of dpolys
        dfac: dict[int, int] = dict(self.dfac)
        for c, m in other.dfac.items():
            dfac[c] = max(dfac.get(c, 0), m)
        pad_self = Y_ONE
        pad_other = Y_ONE
        for c, m in dfac.items():
            ds = m - self.dfac.get(c, 0)
            do = m - other.dfac.get(c, 0)
            if ds:
                pad_self = pad_self * (YLaurent.one_minus_y_power(c) ** ds)
            if do:
                pad_other = pad_other * (YLaurent.one_minus_y_power(c) ** do)
        same_dpoly = self.dpoly == other.dpoly
        if not same_dpoly:
            pad_self = pad_self * other.dpoly
            pad_other = pad_other * self.dpoly
            dpoly = self.dpoly * other.dpoly
        else:
            dpoly = self.dpoly
        num = self.num * pad_self + other.num * pad_other
        return YFraction(num, dfac, dpoly)

    __radd__ = __add__

    def __sub__(self, other) -> "YFraction":
        return self + (-(other if isinstance(other, YFraction) else YFraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "YFraction":
        if isinstance(other, (int, YLaurent)):
            other = YFraction(other)
        elif not isinstance(other, YFraction):
            if not (hasattr(other, "numerator") and hasattr(other, "denominator")):
                # series types define their own __rmul__ against scalars
                return NotImplemented
            other = YFraction(YLaurent.monomial(other))
        if self.num.is_zero() or other.num.is_zero():
            return YF_ZERO
        dfac = dict(self.dfac)
        for c, m in other.dfac.items():
            dfac[c] = dfac.get(c, 0) + m
        dpoly = self.dpoly
        if not other.dpoly.is_one():
            dpoly = dpoly * other.dpoly
        return YFraction(self.num * other.num, dfac, dpoly)

    __rmul__ = __mul__

    def inverse(self) -> "YFraction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        den = self._den_expanded()
        return YFraction.from_pair(den, self.num)

    def __truediv__(self, other) -> "YFraction":
        if isinstance(other, (int, YLaurent)):
            other = YFraction(other)
        elif not isinstance(other, YFraction):
            other = YFraction(YLaurent.monomial(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "YFraction":
        return YFraction(other) * self.inverse()

    def __pow__(self, n: int) -> "YFraction":
        if n == 0:
            return YF_ONE
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result = YF_ONE
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # maps and evaluation
    # ------------------------------------------------------------------

    def substitute_y_inverse(self) -> "YFraction":
        """Apply Y -> Y^(-1)."""
        num, den = self.canonical_pair()
        return YFraction.from_pair(num.substitute_y_inverse(), den.substitute_y_inverse())

    def evaluate(self, y_value):
        """Evaluate at an exact rational value of Y (must avoid denominator zeros)."""
        num, den = self.canonical_pair()
        dval = den.evaluate(y_value)
        if dval == 0:
            raise ZeroDivisionError("denominator vanishes at the given Y value")
        return num.evaluate(y_value) / dval

    def as_laurent(self) -> YLaurent:
        """Return the underlying Laurent polynomial, or raise if not polynomial."""
        num, den = self.canonical_pair()
        if not den.is_one():
            raise ValueError(f"not a Laurent polynomial: denominator {den.render()}")
        return num

    def is_laurent(self) -> bool:
        _, den = self.canonical_pair()
        return den.is_one()

    # ------------------------------------------------------------------
    # rendering
    # ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"YFraction({self.render()})"

    def render(self) -> str:
        num, den = self.canonical_pair()
        if den.is_one():
            return num.render()
        return f"({num.render()})/({den.render()})"

    @staticmethod
    def parse(text: str) -> "YFraction":
        text = text.strip()
        if text.startswith("(") and ")/(" in text and text.endswith(")"):
            numtext, dentext = text[1:-1].split(")/(")
            return YFraction.from_pair(YLaurent.parse(numtext), YLaurent.parse(dentext))
        return YFraction(YLaurent.parse(text))


YF_ZERO = YFraction(Y_ZERO)
YF_ONE = YFraction(Y_ONE)


def quantum_number(n: int) -> YFraction:
    """The symmetric quantum integer [n]_y = (y^(n/2) - y^(-n/2)) / (y^(1/2) - y^(-1/2)).

    Expanded form: Y^(n-1) + Y^(n-3) + ... + Y^(1-n), a Laurent polynomial.
    [0]_y = 0 and [-n]_y = -[n]_y.
    """
    if n == 0:
        return YF_ZERO
    sign = 1
    if n < 0:
        sign = -1
        n = -n
    coeffs = {}
    for j in range(n):
        coeffs[n - 1 - 2 * j] = sign
    return YFraction(YLaurent.from_dict(coeffs))


def quantum_binom(n: int, m: int) -> YFraction:
    """Quantum binomial coefficient [n choose m]_y.

    Computed as a quotient of quantum factorial products; the division is
    always exact, so the result is a Laurent polynomial.
    """
    if m < 0 or m > n:
        return YF_ZERO
    m = min(m, n - m)
    num = YF_ONE
    den = YF_ONE
    for j in range(m):
        num = num * quantum_number(n - j)
        den = den * quantum_number(j + 1)
    quot = num / den
    if not quot.is_laurent():
        raise ArithmeticError("quantum binomial quotient failed to be exact")
    return quot
