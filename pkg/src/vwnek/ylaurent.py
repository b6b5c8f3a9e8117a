"""Laurent polynomials in the half-weight variable Y over exact rationals.

The genus variable is y = Y^2; keeping the half power as an honest generator
makes every symmetrized genus a genuine Laurent polynomial with integer
exponents.  A YLaurent is stored densely as (offset, coeffs): the polynomial
sum_i coeffs[i] * Y^(offset + i), with coeffs trimmed so that both ends are
nonzero (the zero polynomial has empty coeffs and offset 0).
"""

from __future__ import annotations

from math import gcd as int_gcd, lcm as int_lcm
from typing import Iterable

from .scalars import QQ, QQ0, QQ1, frac_str, parse_frac

try:  # big-integer packing is markedly faster on gmpy2's mpz
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _big = int

# Dense convolution switches to Kronecker packing once both operands carry at
# least this many stored coefficients; below that the schoolbook loop wins.
_KRONECKER_MIN = 18


def _kronecker_conv(a: tuple, b: tuple) -> list:
    """Exact convolution of rational coefficient tuples by integer packing.

    Both inputs are scaled to integers and packed into single big integers,
    digit width chosen so every convolution coefficient fits with a sign bit
    to spare.  One big multiplication (where the GMP kernels are
    subquadratic) replaces the coefficient double loop.  Packing goes through
    bytes: the positive and negative parts are laid out separately and
    subtracted, and the signed digits of the product are recovered by adding
    half to every digit (no carries, by the width bound) and slicing.
    """
    la = 1
    for c in a:
        la = int_lcm(la, int(c.denominator))
    lb = 1
    for c in b:
        lb = int_lcm(lb, int(c.denominator))
    ai = [int(c.numerator) * (la // int(c.denominator)) for c in a]
    bi = [int(c.numerator) * (lb // int(c.denominator)) for c in b]
    bound = (
        min(len(ai), len(bi))
        * max(abs(x) for x in ai)
        * max(abs(x) for x in bi)
    )
    width = (bound.bit_length() + 9) // 8  # digit bytes, sign bit spare

    def pack(values: list) -> int:
        pos = bytearray(len(values) * width)
        neg = bytearray(len(values) * width)
        for i, x in enumerate(values):
            if x > 0:
                pos[i * width : i * width + (x.bit_length() + 7) // 8] = x.to_bytes(
                    (x.bit_length() + 7) // 8, "little"
                )
            elif x < 0:
                x = -x
                neg[i * width : i * width + (x.bit_length() + 7) // 8] = x.to_bytes(
                    (x.bit_length() + 7) // 8, "little"
                )
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    z = int(_big(pack(ai)) * _big(pack(bi)))
    n_out = len(ai) + len(bi) - 1
    half = 1 << (8 * width - 1)
    offsets = bytearray(n_out * width)
    for k in range(n_out):
        offsets[(k + 1) * width - 1] = 0x80
    raw = (z + int.from_bytes(offsets, "little")).to_bytes(n_out * width, "little")
    den = la * lb
    out = []
    for k in range(n_out):
        d = int.from_bytes(raw[k * width : (k + 1) * width], "little") - half
        out.append(QQ(d, den))
    return out


class YLaurent:
    __slots__ = ("offset", "coeffs")

    def __init__(self, offset: int = 0, coeffs: Iterable = ()):  # noqa: D401
        cs = [QQ(c) if isinstance(c, (int, str)) else c for c in coeffs]
        lo = 0
        hi = len(cs)
        while lo < hi and cs[lo] == 0:
            lo += 1
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.offset = 0
            self.coeffs: tuple = ()
        else:
            self.offset = offset + lo
            self.coeffs = tuple(cs[lo:hi])

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @staticmethod
    def from_dict(d: dict) -> "YLaurent":
        """Build from {exponent: coefficient}."""
        if not d:
            return Y_ZERO
        lo = min(d)
        hi = max(d)
        cs = [QQ0] * (hi - lo + 1)
        for e, c in d.items():
            cs[e - lo] = QQ(c) if isinstance(c, (int, str)) else c
        return YLaurent(lo, cs)

    @staticmethod
    def monomial(coeff, exp: int = 0) -> "YLaurent":
        return YLaurent(exp, [QQ(coeff) if isinstance(coeff, (int, str)) else coeff])

    @staticmethod
    def sum_terms(terms) -> "YLaurent":
        """Sum many Laurent polynomials in one dense pass."""
        terms = [t for t in terms if t.coeffs]
        if not terms:
            return Y_ZERO
        if len(terms) == 1:
            return terms[0]
        lo = min(t.offset for t in terms)
        hi = max(t.offset + len(t.coeffs) for t in terms)
        acc = [QQ0] * (hi - lo)
        for t in terms:
            base = t.offset - lo
            for i, c in enumerate(t.coeffs):
                if c:
                    acc[base + i] += c
        return YLaurent(lo, acc)

    @staticmethod
    def one_minus_y_power(c: int) -> "YLaurent":
        """The binomial 1 - Y^c (c != 0)."""
        if c == 0:
            return Y_ZERO
        if c > 0:
            cs = [QQ0] * (c + 1)
            cs[0] = QQ1
            cs[c] = QQ(-1)
            return YLaurent(0, cs)
        cs = [QQ0] * (-c + 1)
        cs[0] = QQ(-1)
        cs[-1] = QQ1
        return YLaurent(c, cs)

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.offset == 0 and len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.offset

    @property
    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.offset + len(self.coeffs) - 1

    def __getitem__(self, exp: int):
        i = exp - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return QQ0

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.offset + i, c

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            if other == 0:
                return self.is_zero()
            other = YLaurent.monomial(other)
        if not isinstance(other, YLaurent):
            return NotImplemented
        return self.offset == other.offset and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.offset, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def __neg__(self) -> "YLaurent":
        p = YLaurent.__new__(YLaurent)
        p.offset = self.offset
        p.coeffs = tuple(-c for c in self.coeffs)
        return p

    def __add__(self, other) -> "YLaurent":
        if isinstance(other, int):
            other = YLaurent.monomial(other)
        if not isinstance(other, YLaurent):
            return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        cs = [QQ0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            cs[self.offset - lo + i] = c
        for i, c in enumerate(other.coeffs):
            cs[other.offset - lo + i] += c
        return YLaurent(lo, cs)

    __radd__ = __add__

    def __sub__(self, other) -> "YLaurent":
        if isinstance(other, int):
            other = YLaurent.monomial(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "YLaurent":
        if isinstance(other, int):
            if other == 0:
                return Y_ZERO
            p = YLaurent.__new__(YLaurent)
            p.offset = self.offset
            p.coeffs = tuple(c * other for c in self.coeffs)
            return p
        if not isinstance(other, YLaurent):
            # exact rational scalar
            if other == 0:
                return Y_ZERO
            p = YLaurent.__new__(YLaurent)
            p.offset = self.offset
            p.coeffs = tuple(c * other for c in self.coeffs)
            return p
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Y_ZERO
        if len(a) == 1:
            p = YLaurent.__new__(YLaurent)
            p.offset = self.offset + other.offset
            p.coeffs = tuple(a[0] * c for c in b)
            return p
        if len(b) == 1:
            p = YLaurent.__new__(YLaurent)
            p.offset = self.offset + other.offset
            p.coeffs = tuple(c * b[0] for c in a)
            return p
        if len(a) >= _KRONECKER_MIN and len(b) >= _KRONECKER_MIN:
            out = _kronecker_conv(a, b)
        else:
            out = [QQ0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        # ends are products of the trimmed inputs' ends, hence nonzero
        p = YLaurent.__new__(YLaurent)
        p.offset = self.offset + other.offset
        p.coeffs = tuple(out)
        return p

    __rmul__ = __mul__

    def shift(self, k: int) -> "YLaurent":
        """Multiply by Y^k."""
        if not self.coeffs:
            return self
        p = YLaurent.__new__(YLaurent)
        p.offset = self.offset + k
        p.coeffs = self.coeffs
        return p

    def __pow__(self, n: int) -> "YLaurent":
        if n < 0:
            raise ValueError("negative power of a YLaurent; use YFraction")
        result = Y_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def substitute_y_inverse(self) -> "YLaurent":
        """The involution Y -> Y^(-1)."""
        if not self.coeffs:
            return self
        return YLaurent(-(self.offset + len(self.coeffs) - 1), list(reversed(self.coeffs)))

    def evaluate(self, y_value):
        """Evaluate at an exact rational Y-value (nonzero)."""
        if y_value == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at Y = 0")
        acc = QQ0
        power = QQ(1)
        # Horner on the polynomial part, then one shift for the offset.
        for c in reversed(self.coeffs):
            acc = acc * y_value + c
        if self.offset:
            acc = acc * y_value ** self.offset
        return acc

    # ------------------------------------------------------------------
    # division
    # ------------------------------------------------------------------

    def divmod_poly(self, other: "YLaurent") -> tuple["YLaurent", "YLaurent"]:
        """Polynomial division after clearing Y-offsets: self = q*other + r.

        Offsets are normalized away first, so this is division in QQ[Y] of
        self * Y^(-self.min_exp_or_0) style representatives.  Intended for
        exact-division checks and gcd; remainders carry no offset meaning.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a = list(self.coeffs)
        b = other.coeffs
        if not a:
            return Y_ZERO, Y_ZERO
        if len(a) < len(b):
            return Y_ZERO, self
        q = [QQ0] * (len(a) - len(b) + 1)
        inv_lead = QQ1 / b[-1]
        for i in range(len(a) - len(b), -1, -1):
            c = a[i + len(b) - 1] * inv_lead
            if c != 0:
                q[i] = c
                for j, bj in enumerate(b):
                    a[i + j] -= c * bj
        quot = YLaurent(self.offset - other.offset, q)
        rem = YLaurent(self.offset, a[: len(b) - 1])
        return quot, rem

    def exact_div(self, other: "YLaurent") -> "YLaurent | None":
        """Return self / other when the division is exact, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return Y_ZERO
        if other.is_monomial():
            inv = QQ1 / other.coeffs[0]
            p = YLaurent.__new__(YLaurent)
            p.offset = self.offset - other.offset
            p.coeffs = tuple(c * inv for c in self.coeffs)
            return p
        q, r = self.divmod_poly(other)
        if r.is_zero():
            return q
        return None

    # ------------------------------------------------------------------
    # gcd over the integers (primitive polynomial remainder sequence)
    # ------------------------------------------------------------------

    def gcd(self, other: "YLaurent") -> "YLaurent":
        """Monic gcd in QQ[Y], ignoring Y-offsets (units).

        Runs a primitive polynomial remainder sequence over the integers so
        coefficient growth stays tame.
        """
        if self.is_zero():
            return other.monic() if not other.is_zero() else Y_ZERO
        if other.is_zero():
            return self.monic()
        a = _primitive_ints(self)
        b = _primitive_ints(other)
        if len(a) < len(b):
            a, b = b, a
        while b:
            r = _pseudo_rem(a, b)
            r = _primitive_list(r)
            a, b = b, r
        poly = YLaurent(0, [QQ(v) for v in a])
        return poly.monic()

    def monic(self) -> "YLaurent":
        """Scale so the top coefficient is 1 and the offset is 0."""
        if self.is_zero():
            return Y_ZERO
        inv = QQ1 / self.coeffs[-1]
        return YLaurent(0, [c * inv for c in self.coeffs])

    # ------------------------------------------------------------------
    # rendering
    # ------------------------------------------------------------------

    def __repr__(self) -> str:
        return f"YLaurent({self.render()})"

    def render(self) -> str:
        """Canonical text: ascending exponents, explicit coefficients."""
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(frac_str(c))
            else:
                parts.append(f"{frac_str(c)}*Y^{e}")
        return " + ".join(parts)

    @staticmethod
    def parse(text: str) -> "YLaurent":
        text = text.strip()
        if text == "0":
            return Y_ZERO
        d: dict[int, object] = {}
        for part in text.split(" + "):
            part = part.strip()
            if "*Y^" in part:
                cstr, estr = part.split("*Y^")
                e = int(estr)
            elif "*Y" in part:
                cstr, e = part.split("*Y")[0], 1
            elif part.startswith("Y^"):
                cstr, e = "1", int(part[2:])
            elif part.startswith("-Y^"):
                cstr, e = "-1", int(part[3:])
            elif part == "Y":
                cstr, e = "1", 1
            elif part == "-Y":
                cstr, e = "-1", 1
            else:
                cstr, e = part, 0
            d[e] = d.get(e, QQ0) + QQ(parse_frac(cstr))
        return YLaurent.from_dict(d)


def _primitive_ints(p: YLaurent) -> list[int]:
    """Integer coefficient list of p with content and Y-offset stripped."""
    den = 1
    for c in p.coeffs:
        d = int(c.denominator)
        den = den * d // int_gcd(den, d)
    ints = [int(c * den) for c in p.coeffs]
    return _primitive_list(ints)


def _primitive_list(ints: list[int]) -> list[int]:
    while ints and ints[-1] == 0:
        ints.pop()
    g = 0
    for v in ints:
        g = int_gcd(g, v)
        if g == 1:
            return ints
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Fraction-free remainder of a by b over the integers.

    Each cancellation step scales the running remainder by lead(b), which
    keeps everything integral; the caller strips content afterwards, so the
    scaling does not affect the gcd.
    """
    db = len(b) - 1
    lead = b[-1]
    r = list(a)
    while True:
        while r and r[-1] == 0:
            r.pop()
        if not r or len(r) - 1 < db:
            break
        top = r[-1]
        shift = len(r) - 1 - db
        r = [lead * c for c in r]
        for j in range(db + 1):
            r[shift + j] -= top * b[j]
    return r


Y_ZERO = YLaurent(0, ())
Y_ONE = YLaurent(0, (QQ1,))
Y_VAR = YLaurent(1, (QQ1,))  # the generator Y itself
