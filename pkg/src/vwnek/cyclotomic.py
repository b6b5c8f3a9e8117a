"""Exact arithmetic in cyclotomic integer rings Z[e], e = exp(2*pi*i/r).

Elements are represented by integer (or Y-Laurent, or Y-fraction) coordinate
vectors in the power basis 1, e, ..., e^(phi(r)-1) of Z[x]/(Phi_r(x)), where
Phi_r is the r-th cyclotomic polynomial.  Reducing modulo Phi_r rather than
x^r - 1 makes equality testing faithful: a combination of root-of-unity
phases vanishes as a complex number exactly when its reduced coordinate
vector vanishes.
"""

from __future__ import annotations

from functools import lru_cache


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (den monic); coefficient lists
    are little-endian."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return out, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Little-endian integer coefficients of Phi_r, via the recursion
    Phi_r = (x^r - 1) / prod of Phi_d over proper divisors d of r."""
    if r == 1:
        return (-1, 1)
    num = [0] * (r + 1)
    num[0] = -1
    num[r] = 1
    for d in range(1, r):
        if r % d == 0:
            quo, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise ArithmeticError("cyclotomic recursion failed")
            num = quo
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(r: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of x^k mod Phi_r in the power basis, for k = 0..2r."""
    phi = cyclotomic_polynomial(r)
    deg = len(phi) - 1
    rows: list[tuple[int, ...]] = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(2 * r + 1):
        rows.append(tuple(cur))
        nxt = [0] + cur[: deg - 1] if deg > 1 else [0]
        lead = cur[deg - 1]
        if lead:
            for j in range(deg):
                nxt[j] -= lead * phi[j]
        cur = nxt
    return tuple(rows)


class CycloElement:
    """An element of K[x]/(Phi_r(x)), K any commutative coefficient ring
    (integers, Y-Laurent polynomials, Y-fractions)."""

    __slots__ = ("r", "coords")

    def __init__(self, r: int, coords):
        deg = len(cyclotomic_polynomial(r)) - 1
        coords = tuple(coords)
        if len(coords) != deg:
            raise ValueError(f"need {deg} coordinates for r={r}, got {len(coords)}")
        self.r = r
        self.coords = coords

    @staticmethod
    def zero(r: int) -> "CycloElement":
        deg = len(cyclotomic_polynomial(r)) - 1
        return CycloElement(r, (0,) * deg)

    @staticmethod
    def root_power(r: int, k: int, scale=1) -> "CycloElement":
        """scale * e^k as an element of the ring."""
        row = _power_table(r)[k % r]
        return CycloElement(r, tuple(scale * c for c in row))

    def __add__(self, other: "CycloElement") -> "CycloElement":
        if self.r != other.r:
            raise ValueError("mixed cyclotomic orders")
        return CycloElement(self.r, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        if self.r != other.r:
            raise ValueError("mixed cyclotomic orders")
        return CycloElement(self.r, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.r, tuple(-a for a in self.coords))

    def scale(self, c) -> "CycloElement":
        return CycloElement(self.r, tuple(a * c for a in self.coords))

    def mul_root_power(self, k: int) -> "CycloElement":
        """Multiply by e^k."""
        table = _power_table(self.r)
        deg = len(self.coords)
        k = k % self.r
        out = [0] * deg
        for i, a in enumerate(self.coords):
            if isinstance(a, int) and a == 0:
                continue
            row = table[i + k]
            for j in range(deg):
                if row[j]:
                    out[j] = out[j] + a * row[j]
        return CycloElement(self.r, tuple(out))

    def is_zero(self) -> bool:
        for a in self.coords:
            if isinstance(a, int):
                if a:
                    return False
            elif not a.is_zero():
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.r == other.r and (self - other).is_zero()

    def __hash__(self):
        return hash((self.r, self.coords))

    def render(self) -> str:
        parts = []
        for i, a in enumerate(self.coords):
            if isinstance(a, int):
                if not a:
                    continue
                body = str(a)
            else:
                if a.is_zero():
                    continue
                body = f"({a.render()})"
            parts.append(body if i == 0 else f"{body}*E^{i}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CycloElement(r={self.r}, {self.render()})"
