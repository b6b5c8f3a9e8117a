"""Smooth complete toric surfaces and their chart-product G-series.

A surface is recorded by its fan: primitive integer rays v_0, ..., v_(m-1)
listed counterclockwise, winding once around the origin, with every
consecutive pair (v_k, v_(k+1 mod m)) a positively oriented unimodular
basis of Z^2.  Charts (torus-fixed points) correspond to consecutive ray
pairs; divisor classes are integer coefficient vectors on the invariant
curves D_0, ..., D_(m-1).

Chart data feeding the counting engine, with characters (a, b) standing for
the torus monomial t1^a * t2^b:

  * chart weights: the dual basis m1 = (v_(k+1).y, -v_(k+1).x),
    m2 = (-v_k.y, v_k.x) of cone(v_k, v_(k+1)); for the standard cone
    ((1,0), (0,1)) this gives (t1, t2).
  * chart character of O(D), D = sum c_k D_k: the fiber weight at the fixed
    point, the character m with <m, v_k> = -c_k and <m, v_(k+1)> = -c_(k+1),
    i.e. m = -c_k m1 - c_(k+1) m2.

The G-series of a surface with twist divisors a_1, ..., a_(r-1) multiplies,
over all charts, the rank-r instanton series specialized along a
one-parameter subgroup t = s^alpha with t_i -> chart weights and
e_i -> (chart character of L_i) * Y^(-2i), where L_0 = O and
L_i = L_(i-1) - a_i.  Each chart factor has poles on the locus s = 1, but
on a complete surface the poles cancel in the product: every u = s - 1
coefficient in negative degree vanishes exactly, and the u^0 coefficient is
the G-series coefficient, an exact element of Q(Y) (a Laurent polynomial in
Y for rank <= 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    InvalidCone,
    InvalidSurface,
    PoleCancellationFailure,
    SpecializedWeightTrivial,
)
from .nekrasov import nekrasov_series
from .qseries import QSeries
from .useries import ULaurentSeries
from .weights import SubstitutionSpec, Weight
from .yfraction import YFraction


# ----------------------------------------------------------------------
# divisors and surfaces
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class EquivariantDivisor:
    """Integer coefficients on the torus-invariant curves, sum c_k D_k."""

    coeffs: tuple[int, ...]

    @staticmethod
    def of(*coeffs: int) -> "EquivariantDivisor":
        return EquivariantDivisor(tuple(int(c) for c in coeffs))

    @staticmethod
    def zero(m: int) -> "EquivariantDivisor":
        return EquivariantDivisor((0,) * m)

    def __add__(self, other: "EquivariantDivisor") -> "EquivariantDivisor":
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("divisors live on different surfaces")
        return EquivariantDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "EquivariantDivisor") -> "EquivariantDivisor":
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("divisors live on different surfaces")
        return EquivariantDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, scale: int) -> "EquivariantDivisor":
        return EquivariantDivisor(tuple(scale * a for a in self.coeffs))

    __rmul__ = __mul__

    def render(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


class ToricSurface:
    """A smooth complete toric surface, validated from its fan rays."""

    __slots__ = ("rays", "self_intersections")

    def __init__(self, rays):
        rays = tuple((int(x), int(y)) for x, y in rays)
        m = len(rays)
        if m < 3:
            raise InvalidSurface(f"a complete fan needs at least 3 rays, got {m}")
        for k, (x, y) in enumerate(rays):
            if gcd(x, y) != 1:
                raise InvalidSurface(f"ray {k} = ({x},{y}) is not primitive")
        for k in range(m):
            v = rays[k]
            w = rays[(k + 1) % m]
            det = v[0] * w[1] - v[1] * w[0]
            if det != 1:
                raise InvalidSurface(
                    f"rays {k} and {(k + 1) % m} have determinant {det}, expected +1 "
                    "(fan must be smooth and counterclockwise)"
                )
        # v_(k-1) + v_(k+1) = a_k v_k fixes a_k = self-intersection of -D_k;
        # the total sum 3m - 12 holds exactly when the rays wind once.
        selfint = []
        for k in range(m):
            u = rays[(k - 1) % m]
            w = rays[(k + 1) % m]
            s = (u[0] + w[0], u[1] + w[1])
            v = rays[k]
            if v[0] != 0:
                a = s[0] // v[0] if s[0] % v[0] == 0 else 0
            else:
                a = s[1] // v[1] if s[1] % v[1] == 0 else 0
            if (a * v[0], a * v[1]) != s:
                raise InvalidSurface(f"rays {k - 1}, {k}, {k + 1} violate smoothness")
            selfint.append(-a)
        if sum(-a for a in selfint) != 3 * m - 12:
            raise InvalidSurface(
                "rays do not wind exactly once around the origin "
                f"(relation sum is {sum(-a for a in selfint)}, expected {3 * m - 12})"
            )
        self.rays = rays
        self.self_intersections = tuple(selfint)

    # ------------------------------------------------------------------

    @property
    def euler_number(self) -> int:
        return len(self.rays)

    @property
    def chart_count(self) -> int:
        return len(self.rays)

    def zero_divisor(self) -> EquivariantDivisor:
        return EquivariantDivisor.zero(len(self.rays))

    def ray_divisor(self, k: int) -> EquivariantDivisor:
        c = [0] * len(self.rays)
        c[k % len(self.rays)] = 1
        return EquivariantDivisor(tuple(c))

    def canonical_class(self) -> EquivariantDivisor:
        return EquivariantDivisor((-1,) * len(self.rays))

    def key(self) -> tuple:
        """Hashable canonical form for cache digests."""
        return self.rays

    def render(self) -> str:
        return "fan[" + " ".join(f"({x},{y})" for x, y in self.rays) + "]"

    # ------------------------------------------------------------------

    def _check_divisor(self, d: EquivariantDivisor) -> None:
        if len(d.coeffs) != len(self.rays):
            raise ValueError(
                f"divisor has {len(d.coeffs)} coefficients, surface has {len(self.rays)} rays"
            )

    def intersection(self, d1: EquivariantDivisor, d2: EquivariantDivisor) -> int:
        """Intersection number of two divisor classes.

        Bilinear extension of D_k.D_l = 1 for cyclically adjacent rays,
        0 for non-adjacent distinct rays, and D_k^2 = self_intersections[k].
        """
        self._check_divisor(d1)
        self._check_divisor(d2)
        m = len(self.rays)
        total = 0
        for k in range(m):
            c = d1.coeffs[k]
            if not c:
                continue
            total += c * (
                self.self_intersections[k] * d2.coeffs[k]
                + d2.coeffs[(k - 1) % m]
                + d2.coeffs[(k + 1) % m]
            )
        return total

    def canonical_square(self) -> int:
        k = self.canonical_class()
        return self.intersection(k, k)

    # ------------------------------------------------------------------

    def chart_dual_basis(self, alpha_idx: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """Dual basis (m1, m2) of the cone (v_k, v_(k+1)) as characters."""
        m = len(self.rays)
        if not (0 <= alpha_idx < m):
            raise InvalidCone(f"chart index {alpha_idx} out of range for {m} cones")
        vk = self.rays[alpha_idx]
        vk1 = self.rays[(alpha_idx + 1) % m]
        m1 = (vk1[1], -vk1[0])
        m2 = (-vk[1], vk[0])
        return m1, m2

    def chart_weights(self, alpha_idx: int) -> tuple[Weight, Weight]:
        """Tangent weights (t1, t2) of the chart as Weight objects."""
        m1, m2 = self.chart_dual_basis(alpha_idx)
        return Weight(m1[0], m1[1], ()), Weight(m2[0], m2[1], ())

    def chart_character(self, d: EquivariantDivisor, alpha_idx: int) -> Weight:
        """Fiber character of O(D) at the fixed point of the chart.

        The character m satisfies <m, v_k> = -c_k and <m, v_(k+1)> = -c_(k+1),
        i.e. m = -c_k m1 - c_(k+1) m2 in the chart's dual basis.
        """
        self._check_divisor(d)
        m = len(self.rays)
        m1, m2 = self.chart_dual_basis(alpha_idx)
        ck = d.coeffs[alpha_idx]
        ck1 = d.coeffs[(alpha_idx + 1) % m]
        return Weight(-ck * m1[0] - ck1 * m2[0], -ck * m1[1] - ck1 * m2[1], ())


# ----------------------------------------------------------------------
# built-in fans
# ----------------------------------------------------------------------


def projective_plane() -> ToricSurface:
    return ToricSurface([(1, 0), (0, 1), (-1, -1)])


def quadric_surface() -> ToricSurface:
    """P^1 x P^1."""
    return ToricSurface([(1, 0), (0, 1), (-1, 0), (0, -1)])


def hirzebruch(a: int) -> ToricSurface:
    """The Hirzebruch surface F_a = P(O + O(a)) over P^1."""
    return ToricSurface([(1, 0), (0, 1), (-1, a), (0, -1)])


def blow_up(surface: ToricSurface, chart_idx: int) -> ToricSurface:
    """Blow up the torus-fixed point of the given chart.

    Inserts the ray v_k + v_(k+1) between the chart's rays.  The new ray's
    divisor is the exceptional curve; existing divisor classes pull back by
    inserting coefficient c_k + c_(k+1) at the new slot (so that pullbacks
    keep their chart characters away from the center and intersect the
    exceptional curve in 0).
    """
    m = len(surface.rays)
    if not (0 <= chart_idx < m):
        raise InvalidCone(f"chart index {chart_idx} out of range for {m} cones")
    vk = surface.rays[chart_idx]
    vk1 = surface.rays[(chart_idx + 1) % m]
    new_ray = (vk[0] + vk1[0], vk[1] + vk1[1])
    rays = surface.rays[: chart_idx + 1] + (new_ray,) + surface.rays[chart_idx + 1 :]
    return ToricSurface(rays)


def pull_back(d: EquivariantDivisor, chart_idx: int) -> EquivariantDivisor:
    """Pull back a divisor class through blow_up(surface, chart_idx)."""
    c = d.coeffs
    new_c = c[: chart_idx + 1] + (c[chart_idx] + c[(chart_idx + 1) % len(c)],) + c[chart_idx + 1 :]
    return EquivariantDivisor(new_c)


BUILTIN_SURFACES = {
    "p2": projective_plane,
    "p1xp1": quadric_surface,
    "f1": lambda: hirzebruch(1),
}


# ----------------------------------------------------------------------
# chart substitution data and the G-series
# ----------------------------------------------------------------------


def _pair(alpha: tuple[int, int], char: tuple[int, int]) -> int:
    return alpha[0] * char[0] + alpha[1] * char[1]


def chart_substitution(
    surface: ToricSurface,
    twists: tuple[EquivariantDivisor, ...],
    rank: int,
    alpha_idx: int,
    alpha: tuple[int, int],
) -> SubstitutionSpec:
    """Substitution data for one chart of the surface G-series.

    The chart weights go to s^<alpha, m_i>; the framing parameters go to
    e_i -> (chart character of L_i) * Y^(-2i) with L_0 = O and
    L_i = L_(i-1) - a_i, all evaluated along t = s^alpha.  Raises
    SpecializedWeightTrivial when either chart weight collapses to s^0, so
    callers can resample the direction alpha.
    """
    if len(twists) != rank - 1:
        raise ValueError(f"need {rank - 1} twist divisors for rank {rank}, got {len(twists)}")
    m1, m2 = surface.chart_dual_basis(alpha_idx)
    t1_exp = _pair(alpha, m1)
    t2_exp = _pair(alpha, m2)
    if t1_exp == 0 or t2_exp == 0:
        raise SpecializedWeightTrivial(
            f"direction {alpha} kills a chart weight of chart {alpha_idx}"
        )
    e_images = [(0, 0)]
    acc = surface.zero_divisor()
    for i in range(1, rank):
        acc = acc - twists[i - 1]
        ch = surface.chart_character(acc, alpha_idx)
        e_images.append((alpha[0] * ch.t1 + alpha[1] * ch.t2, -2 * i))
    return SubstitutionSpec(t1_exp, t2_exp, tuple(e_images))


def assemble_chart_product(specs, rank: int, n_max: int) -> QSeries:
    """Multiply per-chart instanton series and take the u^0 part.

    Each factor is a q-series with u-Laurent coefficients on windows of
    width 2 * n_max; the product determines every coefficient on the
    exponent range needed to read off u^0 exactly through q^n_max.  All
    u^(<0) coefficients of the product must vanish identically: that is
    the pole cancellation at t = 1, and any leftover is a convention or
    window bug, never acceptable.  The u^0 parts are exact elements of
    Q(Y); they reduce to Laurent polynomials in Y for rank <= 2, but
    genuinely rational values appear from rank 3 on (the universal series
    only live in 1 + q * Q(y^(1/2))[[q]]).
    """
    width = 2 * n_max
    product = QSeries.unit(n_max, one=ULaurentSeries.constant(YFraction(1), 0, width))
    for spec in specs:
        product = product * nekrasov_series(rank, n_max, spec)
    out = {}
    for n in range(n_max + 1):
        coeff = product.coefficient(n)
        if not coeff.negative_part_is_zero():
            raise PoleCancellationFailure(
                f"q^{n} coefficient of the chart product keeps u-degrees "
                f"below zero: {coeff.render()}"
            )
        out[n] = coeff.u0()
    return QSeries(out, n_max)


def _resample_directions(rank: int, alpha: tuple[int, int] | None):
    """Deterministic direction schedule: the standard direction, then
    increments of the second coordinate, at most 100 attempts."""
    if alpha is not None:
        yield alpha
        return
    a1, a2 = 1, rank + 2
    for _ in range(100):
        yield (a1, a2)
        a2 += 1


def surface_g_series(
    surface: ToricSurface,
    twists,
    rank: int,
    n_max: int,
    alpha: tuple[int, int] | None = None,
) -> QSeries:
    """The G-series of (surface, twist divisors) through q^n_max.

    Product over all charts of the rank-r instanton series under the chart
    substitution, restricted to u^0.  The result has exact coefficients in
    Q(Y) and constant term 1.
    """
    twists = tuple(twists)
    for d in twists:
        surface._check_divisor(d)
    from .cache import active_cache

    last_err: Exception | None = None
    for direction in _resample_directions(rank, alpha):
        cache = active_cache()
        key = (
            "surface_g_series",
            surface.key(),
            tuple(d.coeffs for d in twists),
            rank,
            n_max,
            direction,
        )
        hit = cache.get_qseries(key)
        if hit is not None:
            return hit
        try:
            specs = [
                chart_substitution(surface, twists, rank, k, direction)
                for k in range(surface.chart_count)
            ]
            result = assemble_chart_product(specs, rank, n_max)
        except SpecializedWeightTrivial as err:
            last_err = err
            continue
        cache.put_qseries(key, result)
        return result
    raise SpecializedWeightTrivial(
        f"no usable direction found after 100 attempts: {last_err}"
    )
