"""Torus weights, characters, and substitution data.

A Weight is a monomial t1^a * t2^b * e_0^c0 * ... * e_(r-1)^c(r-1) * Y^d in
the equivariant parameters of the rank-r framed torus together with the
half-weight variable Y (y = Y^2).  A Character is a finite integer-multiplicity
combination of weights; multiplicities may be negative in intermediate
arithmetic, but geometric characters (box, pair, tangent) come out
nonnegative.

A SubstitutionSpec records a one-parameter specialization: t1 -> s^A1,
t2 -> s^A2 together with framing images e_i -> s^(m_i) * Y^(k_i).  Chart
substitutions for toric surfaces compose the chart weights and line-bundle
characters into the same shape, so the series engine only ever sees
(s-exponent, Y-exponent) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import SingularPoint
from .scalars import QQ


@dataclass(frozen=True)
class Weight:
    t1: int
    t2: int
    e: tuple[int, ...]
    y: int = 0  # exponent of Y

    def __mul__(self, other: "Weight") -> "Weight":
        if len(self.e) != len(other.e):
            raise ValueError("weights live in different framing ranks")
        return Weight(
            self.t1 + other.t1,
            self.t2 + other.t2,
            tuple(a + b for a, b in zip(self.e, other.e)),
            self.y + other.y,
        )

    def inverse(self) -> "Weight":
        return Weight(-self.t1, -self.t2, tuple(-c for c in self.e), -self.y)

    def is_trivial(self) -> bool:
        return self.t1 == 0 and self.t2 == 0 and self.y == 0 and all(c == 0 for c in self.e)

    def render(self) -> str:
        parts = []
        if self.t1:
            parts.append(f"t1^{self.t1}")
        if self.t2:
            parts.append(f"t2^{self.t2}")
        for i, c in enumerate(self.e):
            if c:
                parts.append(f"e{i}^{c}")
        if self.y:
            parts.append(f"Y^{self.y}")
        return "*".join(parts) if parts else "1"


def weight(rank: int, t1: int = 0, t2: int = 0, e: dict[int, int] | None = None, y: int = 0) -> Weight:
    """Convenience constructor; e maps framing index -> exponent."""
    ev = [0] * rank
    if e:
        for i, c in e.items():
            ev[i] = c
    return Weight(t1, t2, tuple(ev), y)


class Character:
    """Finite formal sum of weights with integer multiplicities."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Weight, int] | None = None):
        self.terms: dict[Weight, int] = {}
        if terms:
            for w, m in terms.items():
                if m:
                    self.terms[w] = m

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[Weight, int]]) -> "Character":
        ch = Character()
        for w, m in pairs:
            ch._add_term(w, m)
        return ch

    def _add_term(self, w: Weight, m: int) -> None:
        cur = self.terms.get(w, 0) + m
        if cur:
            self.terms[w] = cur
        elif w in self.terms:
            del self.terms[w]

    # ------------------------------------------------------------------

    def rank(self) -> int:
        return sum(self.terms.values())

    def is_effective(self) -> bool:
        """True when every multiplicity is nonnegative."""
        return all(m > 0 for m in self.terms.values())

    def items(self) -> Iterator[tuple[Weight, int]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ------------------------------------------------------------------

    def __add__(self, other: "Character") -> "Character":
        ch = Character(dict(self.terms))
        for w, m in other.terms.items():
            ch._add_term(w, m)
        return ch

    def __sub__(self, other: "Character") -> "Character":
        ch = Character(dict(self.terms))
        for w, m in other.terms.items():
            ch._add_term(w, -m)
        return ch

    def __mul__(self, other) -> "Character":
        """Product of characters (convolution), or integer scaling."""
        if isinstance(other, int):
            if other == 0:
                return Character()
            return Character({w: m * other for w, m in self.terms.items()})
        ch = Character()
        for w1, m1 in self.terms.items():
            for w2, m2 in other.terms.items():
                ch._add_term(w1 * w2, m1 * m2)
        return ch

    __rmul__ = __mul__

    def twist(self, w: Weight) -> "Character":
        """Multiply every weight by a fixed monomial."""
        return Character({w0 * w: m for w0, m in self.terms.items()})

    def dual(self) -> "Character":
        return Character({w.inverse(): m for w, m in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (w.t1, w.t2, w.e, w.y)):
            m = self.terms[w]
            parts.append(w.render() if m == 1 else f"{m}*{w.render()}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Character({self.render()})"


# ----------------------------------------------------------------------
# substitution specifications
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SubstitutionSpec:
    """One-parameter specialization of the equivariant weights.

    t1 -> s^(t1_exp), t2 -> s^(t2_exp), e_i -> s^(e_images[i][0]) * Y^(e_images[i][1]).
    The symbolic marker describes "no substitution" and is rejected by
    weight_eval; it exists so interfaces can name the unspecialized object.
    """

    t1_exp: int
    t2_exp: int
    e_images: tuple[tuple[int, int], ...]
    symbolic: bool = False

    def __post_init__(self):
        if not self.symbolic and self.t1_exp == 0 and self.t2_exp == 0:
            raise ValueError("direction (0, 0) is not allowed")

    @property
    def rank(self) -> int:
        return len(self.e_images)

    @staticmethod
    def standard(rank: int, alpha: tuple[int, int] | None = None) -> "SubstitutionSpec":
        """The default specialization e_i -> Y^(-2i) along t_i = s^(alpha_i).

        The default direction alpha = (1, rank + 2) avoids the weight
        degeneracies of small fixed-point tangent spaces; verification code
        resamples deterministically when a weight still collapses.
        """
        if alpha is None:
            alpha = (1, rank + 2)
        return SubstitutionSpec(alpha[0], alpha[1], tuple((0, -2 * i) for i in range(rank)))

    @staticmethod
    def make_symbolic(rank: int) -> "SubstitutionSpec":
        return SubstitutionSpec(1, 1, tuple((0, 0) for _ in range(rank)), symbolic=True)

    def key(self) -> tuple:
        """Hashable canonical form, used in cache digests."""
        return (self.t1_exp, self.t2_exp, self.e_images)


def weight_eval(w: Weight, spec: SubstitutionSpec) -> tuple[int, int]:
    """Image of a weight under the substitution: (s-exponent, Y-exponent)."""
    if spec.symbolic:
        raise ValueError("cannot evaluate against the symbolic substitution")
    s_exp = w.t1 * spec.t1_exp + w.t2 * spec.t2_exp
    y_exp = w.y
    for c, (m, k) in zip(w.e, spec.e_images):
        if c:
            s_exp += c * m
            y_exp += c * k
    return s_exp, y_exp


# ----------------------------------------------------------------------
# exact rational evaluation points
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class EvalPoint:
    """Exact rational values for (t1, t2, e_0..e_(r-1), Y)."""

    t1: object
    t2: object
    e: tuple
    y_half: object  # value of Y; y = Y^2

    @staticmethod
    def make(t1, t2, e, y_half) -> "EvalPoint":
        return EvalPoint(QQ(t1), QQ(t2), tuple(QQ(v) for v in e), QQ(y_half))

    def weight_value(self, w: Weight):
        if any(v == 0 for v in (self.t1, self.t2, self.y_half)) or any(v == 0 for v in self.e):
            raise SingularPoint("evaluation point has a zero coordinate")
        val = self.t1 ** w.t1 * self.t2 ** w.t2
        for c, ev in zip(w.e, self.e):
            if c:
                val *= ev ** c
        if w.y:
            val *= self.y_half ** w.y
        return val
