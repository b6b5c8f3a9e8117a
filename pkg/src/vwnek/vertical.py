"""Chart-level G-series by the vertical fixed-point formula.

At a fixed point p = (lambda_0, ..., lambda_(r-1)) of a chart's multi-Hilbert
scheme, the twisted sheaf E = (+)_i I_i . L_i . y^(-i) produces the
normalized virtual cotangent

    Omega_0|_p = V^dual - y^(-1) V,    V = tangent character at p,

and the localized summand of the G-series is

    det(Omega_0|_p)^(1/2) / Lambda_(-1)(Omega_0|_p),

with the square root resolved termwise by pulling one global y^(-1/2) per
trace-free weight: det(Omega_0)^(1/2) = prod_(w in V) y^(1/2) w^(-1).  Per
tangent weight the summand factor is therefore

    (y^(1/2) / w) * (1 - w/y) / (1 - 1/w).

The factor is assembled here from these three pieces, not from the genus
factor of the instanton route; that the two routes agree coefficient by
coefficient -- including the overall Y^(-2rn) normalization, which the
vertical route produces on its own -- is the route-equality check.
"""

from __future__ import annotations

from .errors import SpecializedWeightTrivial, VerificationFailed
from .nekrasov import fixed_points, nekrasov_series
from .partitions import PartitionTuple, tangent_character
from .qseries import QSeries
from .useries import ULaurentSeries, _one_plus_u_power, _ypoly
from .verification import VerificationReport
from .weights import SubstitutionSpec, Weight, weight_eval
from .yfraction import YF_ONE, YFraction
from .ylaurent import YLaurent

# ----------------------------------------------------------------------
# per-weight factor
# ----------------------------------------------------------------------

_VERTICAL_FACTOR_CACHE: dict[tuple[int, int, int], ULaurentSeries] = {}


def vertical_factor_series(a: int, b: int, width: int) -> ULaurentSeries:
    """Expansion of (y^(1/2)/w) * (1 - w/y) / (1 - 1/w) for w -> s^a Y^b.

    The three pieces are (1+u)^(-a) Y^(1-b), then 1 - (1+u)^a Y^(b-2),
    then the inverse of 1 - (1+u)^(-a) Y^(-b).  As with the genus factor,
    the result is windowed [-1, width-1] when b = 0 (simple pole at u = 0)
    and [0, width] otherwise.
    """
    key = (a, b, width)
    hit = _VERTICAL_FACTOR_CACHE.get(key)
    if hit is not None:
        return hit
    if a == 0 and b == 0:
        raise SpecializedWeightTrivial("weight specializes to 1")
    hi = width + 1 if b == 0 else width
    pw_neg = _one_plus_u_power(-a, hi)
    pw_pos = _one_plus_u_power(a, hi)
    mono_coeffs = {}
    top_coeffs = {}
    bot_coeffs = {}
    for k in range(hi + 1):
        head = 1 if k == 0 else 0
        if pw_neg[k]:
            mono_coeffs[k] = YFraction(YLaurent.monomial(pw_neg[k], 1 - b))
        tpoly = _ypoly(head, b - 2, -pw_pos[k])
        if not tpoly.is_zero():
            top_coeffs[k] = YFraction(tpoly)
        bpoly = _ypoly(head, -b, -pw_neg[k])
        if not bpoly.is_zero():
            bot_coeffs[k] = YFraction(bpoly)
    mono = ULaurentSeries(mono_coeffs, 0, hi)
    top = ULaurentSeries(top_coeffs, 0, hi)
    if b == 0:
        bot = ULaurentSeries(bot_coeffs, 1, hi)  # constant term cancels exactly
        result = (mono * top * bot.inverse()).clip(-1, width - 1)
    else:
        bot = ULaurentSeries(bot_coeffs, 0, hi)
        result = (mono * top * bot.inverse()).clip(0, width)
    if len(_VERTICAL_FACTOR_CACHE) < 65536:
        _VERTICAL_FACTOR_CACHE[key] = result
    return result


# ----------------------------------------------------------------------
# fixed-point sums
# ----------------------------------------------------------------------

_VERTICAL_TERM_CACHE: dict[tuple, ULaurentSeries] = {}


def vertical_contribution(
    rank: int, rho: PartitionTuple, spec: SubstitutionSpec, width: int
) -> ULaurentSeries:
    """det(Omega_0)^(1/2) / Lambda_(-1)(Omega_0) at one fixed point, as a
    u-series.

    The tangent character must be effective (all multiplicities positive);
    inverting Lambda_(-1) of the dual is only justified for such characters.
    """
    if rho.rank != rank:
        raise ValueError("tuple rank does not match the requested rank")
    key = (tuple(c.parts for c in rho.components), spec.key(), width)
    hit = _VERTICAL_TERM_CACHE.get(key)
    if hit is not None:
        return hit
    ch = tangent_character(rho)
    if not ch.is_effective():
        raise VerificationFailed(
            f"tangent character at {rho.render()} is not effective"
        )
    series = ULaurentSeries.constant(YF_ONE, 0, width)
    for w, mult in ch.items():
        a, b = weight_eval(w, spec)
        factor = vertical_factor_series(a, b, width)
        for _ in range(mult):
            series = series * factor
    if len(_VERTICAL_TERM_CACHE) < 65536:
        _VERTICAL_TERM_CACHE[key] = series
    return series


def vertical_level_series(
    rank: int, n: int, spec: SubstitutionSpec, width: int
) -> ULaurentSeries:
    """Sum of the vertical contributions over all fixed points at charge n."""
    from .cache import active_cache

    cache = active_cache()
    key = ("vertical_level_series", rank, n, spec.key(), width)
    hit = cache.get_ulaurent(key)
    if hit is not None:
        return hit
    total = ULaurentSeries.zero(-2 * n, width - 2 * n)
    for rho in fixed_points(rank, n):
        total = total + vertical_contribution(rank, rho, spec, width).widen_lo(-2 * n)
    cache.put_ulaurent(key, total)
    return total


def _monomial_pairing(w: Weight, alpha: tuple[int, int], what: str) -> int:
    if w.e and any(w.e):
        raise ValueError(f"{what} must be a t-monomial, got {w.render()}")
    if w.y:
        raise ValueError(f"{what} must be free of y, got {w.render()}")
    return alpha[0] * w.t1 + alpha[1] * w.t2


def vertical_g_series_direct(
    chart_weights: tuple[Weight, Weight],
    l_chars: tuple[Weight, ...],
    rank: int,
    n_max: int,
    alpha: tuple[int, int] | None = None,
) -> QSeries:
    """G-series of one chart from the vertical fixed-point formula.

    chart_weights are the two coordinate weights of the chart and l_chars
    the r twisting t-monomials; both are characters of the global torus,
    paired against the direction alpha."""
    if len(l_chars) != rank:
        raise ValueError(f"expected {rank} twisting characters, got {len(l_chars)}")
    if alpha is None:
        alpha = (1, rank + 2)
    t1_exp = _monomial_pairing(chart_weights[0], alpha, "chart weight")
    t2_exp = _monomial_pairing(chart_weights[1], alpha, "chart weight")
    e_images = tuple(
        (_monomial_pairing(l, alpha, "twisting character"), -2 * i)
        for i, l in enumerate(l_chars)
    )
    spec = SubstitutionSpec(t1_exp, t2_exp, e_images)
    width = 2 * n_max
    one = ULaurentSeries.constant(YF_ONE, 0, width)
    terms = {}
    for n in range(n_max + 1):
        terms[n] = vertical_level_series(rank, n, spec, width)
    return QSeries(terms, n_max, one=one)


# ----------------------------------------------------------------------
# route equality
# ----------------------------------------------------------------------

T_MONOMIAL_ONE = Weight(0, 0, (), 0)


def _route_configurations(rank: int) -> list[tuple[str, tuple, tuple]]:
    """Chart weights and twisting characters exercised by the cross-check."""
    plain = (Weight(1, 0, (), 0), Weight(0, 1, (), 0))
    blown = (Weight(1, -1, (), 0), Weight(0, 1, (), 0))
    trivial = tuple(T_MONOMIAL_ONE for _ in range(rank))
    t1_ladder = tuple(Weight(-i, 0, (), 0) for i in range(rank))
    mixed = tuple(Weight(i, -i, (), 0) for i in range(rank))
    return [
        ("plain chart, trivial twist", plain, trivial),
        ("plain chart, t1-ladder twist", plain, t1_ladder),
        ("plain chart, mixed twist", plain, mixed),
        ("blown chart, t1-ladder twist", blown, t1_ladder),
    ]


def verify_route_equality(
    max_rank: int = 3, n_max: int = 2, report: VerificationReport | None = None
) -> VerificationReport:
    """The vertical route equals the instanton-substitution route exactly.

    For each rank and configuration the same substitution is fed to both
    routes and the windowed coefficients are compared at every charge; the
    tangent characters of all enumerated fixed points are also checked to
    be effective (the positivity that justifies inverting Lambda_(-1))."""
    if report is None:
        report = VerificationReport("vertical/instanton route equality")
    for rank in range(1, max_rank + 1):
        effective = all(
            tangent_character(rho).is_effective()
            for n in range(n_max + 1)
            for rho in fixed_points(rank, n)
        )
        report.record(
            effective,
            f"rank {rank}: tangent characters effective at all fixed points "
            f"through charge {n_max}",
        )
        for label, chart, l_chars in _route_configurations(rank):
            alpha = (1, rank + 2)
            vert = vertical_g_series_direct(chart, l_chars, rank, n_max, alpha)
            t1_exp = _monomial_pairing(chart[0], alpha, "chart weight")
            t2_exp = _monomial_pairing(chart[1], alpha, "chart weight")
            e_images = tuple(
                (_monomial_pairing(l, alpha, "twisting character"), -2 * i)
                for i, l in enumerate(l_chars)
            )
            nek = nekrasov_series(rank, n_max, SubstitutionSpec(t1_exp, t2_exp, e_images))
            for n in range(n_max + 1):
                report.record(
                    vert.coefficient(n) == nek.coefficient(n),
                    f"rank {rank}, {label}, q^{n}: vertical sum matches the "
                    f"instanton substitution",
                )
    return report
