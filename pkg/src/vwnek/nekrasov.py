"""Instanton partition functions on the plane by fixed-point localization.

The normalized holomorphic Euler characteristic attached to a moduli space of
rank-r framed sheaves with second Chern class n is computed as a finite sum
over fixed points (r-tuples of partitions with n boxes total):

    chi_hat(r, n) = sum_rho  Y^(-2 r n) * prod_{w in T_rho} (1 - y/w) / (1 - 1/w),

with y = Y^2 and T_rho the tangent character at rho.  Two consumers share
this engine: exact evaluation at a rational point of the torus (the route the
wall-crossing checks use), and windowed u-series expansion along a chart
substitution (the route toric surface assembly uses).  The series route keeps
a window wide enough that products over charts still determine the u^0
coefficient exactly.
"""

from __future__ import annotations

from .errors import SingularPoint, SpecializedWeightTrivial
from .partitions import PartitionTuple, partition_tuples, tangent_character
from .scalars import QQ, QQ1, Rat
from .useries import ULaurentSeries, _one_plus_u_power, genus_factor_series
from .verification import VerificationReport, with_resampling
from .weights import Character, EvalPoint, SubstitutionSpec, weight_eval
from .yfraction import YFraction
from .ylaurent import Y_ONE, Y_ZERO, YLaurent


def fixed_points(rank: int, n: int) -> list[PartitionTuple]:
    return partition_tuples(rank, n)


# ----------------------------------------------------------------------
# exact evaluation at a rational torus point
# ----------------------------------------------------------------------


def chi_hat_term(rho: PartitionTuple, point: EvalPoint) -> Rat:
    """One fixed point's localization term, as an exact rational."""
    r, n = rho.rank, rho.size
    y = point.y_half ** 2
    value = point.y_half ** (-2 * r * n)
    for w, mult in tangent_character(rho).items():
        if mult < 0:
            raise ValueError("tangent character must be effective")
        wv = point.weight_value(w)
        if wv == 1:
            raise SingularPoint(f"tangent weight {w.render()} evaluates to 1")
        factor = (1 - y / wv) / (1 - 1 / wv)
        for _ in range(mult):
            value *= factor
    return value


def chi_hat_eval(rank: int, n: int, point: EvalPoint) -> Rat:
    """chi_hat of the rank-r, charge-n moduli as an exact rational."""
    total = QQ(0)
    for rho in fixed_points(rank, n):
        total += chi_hat_term(rho, point)
    return total


# ----------------------------------------------------------------------
# windowed u-series expansion along a substitution
# ----------------------------------------------------------------------

_TERM_SERIES_CACHE: dict[tuple, ULaurentSeries] = {}


def chi_hat_contribution_reference(
    rank: int, rho: PartitionTuple, spec: SubstitutionSpec, width: int
) -> ULaurentSeries:
    """Reference route for one fixed point's u-series: multiply the windowed
    genus factors one weight at a time.

    Every factor is expanded on a window of width `width`, so the product
    window also has width `width`; its lower end is minus the number of
    tangent weights that specialize to pure powers of s (each contributes a
    simple pole at u = 0).  Fraction arithmetic per convolution term makes
    this quadratic in the weight count with large exact coefficients, so the
    production route below assembles the same rational function differently;
    this one is kept for cross-checking on small inputs.
    """
    if rho.rank != rank:
        raise ValueError("tuple rank does not match the requested rank")
    n = rho.size
    series = ULaurentSeries.constant(
        YFraction(YLaurent.monomial(1, -2 * rank * n)), 0, width
    )
    for w, mult in tangent_character(rho).items():
        a, b = weight_eval(w, spec)
        factor = genus_factor_series(a, b, width)
        for _ in range(mult):
            series = series * factor
    return series


def _upoly_mul(a: list, b: list, hi: int) -> list:
    """Truncated convolution of u-polynomials with YLaurent coefficients."""
    slots: list[list] = [[] for _ in range(hi + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(min(len(b), hi - i + 1)):
            bj = b[j]
            if not bj.is_zero():
                slots[i + j].append(ai * bj)
    return [YLaurent.sum_terms(s) for s in slots]


def chi_hat_contribution(
    rank: int, rho: PartitionTuple, spec: SubstitutionSpec, width: int
) -> ULaurentSeries:
    """u-series of one fixed point's term under the substitution.

    The term is a single rational function of u: the product over tangent
    weights of the genus-factor numerators 1 - (1+u)^(-a) Y^(2-b), divided by
    the product of denominators 1 - (1+u)^(-a) Y^(-b).  Both products are
    accumulated as u-polynomials with Laurent-polynomial coefficients (no
    fraction arithmetic), the denominator's unit part is inverted with every
    coefficient kept over a power of its leading coefficient L -- whose
    factorization into binomials 1 - Y^c is known by construction -- and only
    the final windowed coefficients become YFractions, already in reduced
    factored form.  Weights with a = 0 specialize to exact constants and are
    folded into a scalar prefactor; weights with b = 0 are the simple poles
    at u = 0, so the result's window is [-P, width - P] with P their count.
    """
    if rho.rank != rank:
        raise ValueError("tuple rank does not match the requested rank")
    key = (_tuple_key(rho), spec.key(), width)
    hit = _TERM_SERIES_CACHE.get(key)
    if hit is not None:
        return hit
    n = rho.size
    pole_as: list[int] = []
    units: list[tuple[int, int]] = []
    prefactor = YFraction(YLaurent.monomial(1, -2 * rank * n))
    vanishes = False
    for w, mult in tangent_character(rho).items():
        a, b = weight_eval(w, spec)
        if a == 0 and b == 0:
            raise SpecializedWeightTrivial(f"weight {w.render()} specializes to 1")
        if a == 0:
            # constant factor (1 - Y^(2-b)) / (1 - Y^(-b))
            if b == 2:
                vanishes = True
                continue
            value = YFraction.from_pair(
                YLaurent.one_minus_y_power(2 - b),
                YLaurent.one_minus_y_power(-b),
            )
            prefactor = prefactor * value ** mult
        elif b == 0:
            pole_as.extend([a] * mult)
        else:
            units.extend([(a, b)] * mult)
    poles = len(pole_as)
    if vanishes:
        result = ULaurentSeries.zero(-poles, width - poles)
        if len(_TERM_SERIES_CACHE) < 65536:
            _TERM_SERIES_CACHE[key] = result
        return result

    # each simple pole at u = 0 costs one order of accuracy when dividing,
    # so both products are expanded that much further
    hi = width + poles

    # numerator and denominator products, known exactly through u^hi
    npoly = [Y_ONE] + [Y_ZERO] * hi
    dpoly = [Y_ONE] + [Y_ZERO] * hi
    lead_fac: dict[int, int] = {}  # binomial factorization of the u^poles
    lead_scale = QQ1  # coefficient of the denominator: scalar ...
    lead_shift = 0  # ... times Y^lead_shift times prod (1 - Y^c)^m
    for a, b in units:
        pw = _one_plus_u_power(-a, hi)
        nf = [YLaurent.one_minus_y_power(2 - b)]
        df = [YLaurent.one_minus_y_power(-b)]
        for k in range(1, hi + 1):
            c = -pw[k]
            nf.append(YLaurent.monomial(c, 2 - b))
            df.append(YLaurent.monomial(c, -b))
        npoly = _upoly_mul(npoly, nf, hi)
        dpoly = _upoly_mul(dpoly, df, hi)
        if b < 0:
            lead_fac[-b] = lead_fac.get(-b, 0) + 1
        else:
            # 1 - Y^(-b) = -Y^(-b) (1 - Y^b) for b > 0
            lead_fac[b] = lead_fac.get(b, 0) + 1
            lead_scale = -lead_scale
            lead_shift -= b
    for a in pole_as:
        pw = _one_plus_u_power(-a, hi)
        nf = [YLaurent.one_minus_y_power(2)]
        df = [Y_ZERO]
        for k in range(1, hi + 1):
            c = -pw[k]
            nf.append(YLaurent.monomial(c, 2))
            df.append(YLaurent.monomial(c, 0))
        npoly = _upoly_mul(npoly, nf, hi)
        dpoly = _upoly_mul(dpoly, df, hi)
        lead_scale = lead_scale * a  # u-leading coefficient -pw[1] = a

    for k in range(poles):
        if not dpoly[k].is_zero():
            raise AssertionError("denominator valuation below the pole count")
    lead = dpoly[poles]
    expected = YLaurent.monomial(lead_scale, lead_shift)
    for c, m in lead_fac.items():
        expected = expected * (YLaurent.one_minus_y_power(c) ** m)
    if expected != lead:
        raise AssertionError("leading coefficient factorization mismatch")

    # invert the unit part U(u) = dpoly shifted by u^poles: coefficient k of
    # U^(-1) is G[k] / lead^(k+1) with G[k] a Laurent polynomial
    top = hi - poles
    lead_pow = [Y_ONE]
    for _ in range(top):
        lead_pow.append(lead_pow[-1] * lead)
    inv_num = [Y_ONE]
    for k in range(1, top + 1):
        acc = []
        for j in range(1, k + 1):
            uj = dpoly[poles + j]
            gk = inv_num[k - j]
            if uj.is_zero() or gk.is_zero():
                continue
            acc.append(uj * gk * lead_pow[j - 1])
        inv_num.append(-YLaurent.sum_terms(acc))

    # coefficient of u^(k - poles) in the term: H_k / lead^(k+1), with the
    # scalar/monomial part of lead^(k+1) divided out and the binomial part
    # going to the fraction's factored denominator
    coeffs: dict[int, YFraction] = {}
    for k in range(top + 1):
        parts = []
        for j in range(k + 1):
            gj = inv_num[j]
            ni = npoly[k - j]
            if gj.is_zero() or ni.is_zero():
                continue
            parts.append(ni * gj * lead_pow[k - j])
        acc = YLaurent.sum_terms(parts)
        if acc.is_zero():
            continue
        num = (acc * (QQ1 / lead_scale ** (k + 1))).shift(-lead_shift * (k + 1))
        dfac = {c: m * (k + 1) for c, m in lead_fac.items()}
        value = YFraction(num, dfac) * prefactor
        if not value.is_zero():
            coeffs[k - poles] = value
    result = ULaurentSeries(coeffs, -poles, width - poles)
    if len(_TERM_SERIES_CACHE) < 65536:
        _TERM_SERIES_CACHE[key] = result
    return result


def level_series(rank: int, n: int, spec: SubstitutionSpec, width: int) -> ULaurentSeries:
    """Sum of the u-series contributions over all fixed points at charge n."""
    from .cache import active_cache

    cache = active_cache()
    key = ("level_series", rank, n, spec.key(), width)
    hit = cache.get_ulaurent(key)
    if hit is not None:
        return hit
    total = ULaurentSeries.zero(-2 * n, width - 2 * n)
    for rho in fixed_points(rank, n):
        total = total + chi_hat_contribution(rank, rho, spec, width).widen_lo(-2 * n)
    cache.put_ulaurent(key, total)
    return total


def nekrasov_series(rank: int, n_max: int, spec: SubstitutionSpec) -> "QSeries":
    """Sum over charges of q^n times the fixed-point u-series at charge n.

    The q^n coefficient is kept on the window [-2n, 2(n_max - n)], wide
    enough that any product of such series over the charts of a surface
    still determines the u^0 coefficient exactly through q^n_max.
    """
    from .qseries import QSeries

    width = 2 * n_max
    one = ULaurentSeries.constant(YFraction(1), 0, width)
    terms = {}
    for n in range(n_max + 1):
        terms[n] = level_series(rank, n, spec, width)
    return QSeries(terms, n_max, one=one)


def _tuple_key(rho: PartitionTuple) -> tuple:
    return tuple(c.parts for c in rho.components)


# ----------------------------------------------------------------------
# wall-crossing invariance checks
# ----------------------------------------------------------------------


def verify_framing_permutation(
    rank: int, n: int, trials: int = 25, seed: int = 0
) -> VerificationReport:
    """chi_hat is a symmetric function of the framing parameters.

    All rank! permutations are checked at each point when rank <= 3; for
    larger ranks a seeded sample of permutations is used.
    """
    import itertools
    import random as _random

    report = VerificationReport(f"framing-permutation r={rank} n={n}")
    if rank <= 3:
        perms = [p for p in itertools.permutations(range(rank)) if p != tuple(range(rank))]
    else:
        perm_rng = _random.Random(seed + 777)
        perms = []
        for _ in range(6):
            p = list(range(rank))
            perm_rng.shuffle(p)
            if p != list(range(rank)):
                perms.append(tuple(p))

    def check(point: EvalPoint):
        base = chi_hat_eval(rank, n, point)
        for perm in perms:
            permuted = EvalPoint(
                point.t1, point.t2, tuple(point.e[i] for i in perm), point.y_half
            )
            other = chi_hat_eval(rank, n, permuted)
            report.record(base == other, f"permutation {perm} changed the value at {point}")
        return base

    with_resampling(check, rank, seed, trials)
    return report


def verify_framing_inversion(
    rank: int, n: int, trials: int = 25, seed: int = 0
) -> VerificationReport:
    """chi_hat is unchanged by inverting every framing parameter."""
    report = VerificationReport(f"framing-inversion r={rank} n={n}")

    def check(point: EvalPoint):
        base = chi_hat_eval(rank, n, point)
        inverted = EvalPoint(point.t1, point.t2, tuple(1 / v for v in point.e), point.y_half)
        other = chi_hat_eval(rank, n, inverted)
        report.record(base == other, f"framing inversion changed the value at {point}")
        return base

    with_resampling(check, rank, seed, trials)
    return report


def verify_simultaneous_inversion(
    rank: int, n: int, trials: int = 25, seed: int = 0
) -> VerificationReport:
    """chi_hat is unchanged by inverting t1, t2, the framing, and Y together.

    This is the value statement of the symplectic self-duality of the tangent
    character; inverting only part of the variables genuinely changes the
    value, which the tests pin down separately.
    """
    report = VerificationReport(f"simultaneous-inversion r={rank} n={n}")

    def check(point: EvalPoint):
        base = chi_hat_eval(rank, n, point)
        inverted = EvalPoint(
            1 / point.t1, 1 / point.t2, tuple(1 / v for v in point.e), 1 / point.y_half
        )
        other = chi_hat_eval(rank, n, inverted)
        report.record(base == other, f"simultaneous inversion changed the value at {point}")
        return base

    with_resampling(check, rank, seed, trials)
    return report
