"""Exact q-expansions: eta products, the Jacobi form phi_{-2,1}, and the
A-lattice theta functions with glue vectors.

Conventions (q-exponents are exact rationals, y = Y^2):

  eta_bar = prod (1 - q^n)            eta = q^(1/24) * eta_bar
  Delta   = q * eta_bar^24
  phi_{-2,1} = (Y - Y^(-1))^2 * prod (1-y q^n)^2 (1-y^(-1) q^n)^2 (1-q^n)^(-4)

  Theta_{A_(r-1), l} = sum over v in Z^(r-1) of
      q^((1/2) <x, x>) * y^(x_1 + ... + x_(r-1)),   x = v - l * glue,
  with the A_(r-1) Cartan pairing <,> and glue = (r-1, r-2, ..., 1) / r.
  For r = 1 the lattice is empty and Theta = 1.

  Theta_{A_(r-1)^dual, k} = sum over v in Z^(r-1) of
      q^((1/2) <v, v>*) * E^(sum_j (r-j) k v_j) * y^(<v, (1,..,1)>*),
  where <,>* is the inverse Cartan pairing and E = exp(2 pi i / r); the
  coefficients live in the cyclotomic ring Z[E].

Square roots of Delta and phi_{-2,1} are taken with the positive-leading-
coefficient convention fixed by their product formulas.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .cyclotomic import CycloElement
from .qseries import QSeries, qseries_inverse
from .scalars import QQ
from .verification import VerificationReport
from .yfraction import YF_ONE, YFraction
from .ylaurent import YLaurent


def _y_monomial(y_exp2: int) -> YFraction:
    """The monomial Y^(y_exp2) as a coefficient."""
    return YFraction(YLaurent.monomial(QQ(1), y_exp2))


def _one_minus(y_exp2: int, q_exp, order) -> QSeries:
    """1 - Y^(y_exp2) * q^(q_exp) as an exact q-series."""
    return QSeries({Fraction(0): YF_ONE, q_exp: -_y_monomial(y_exp2)}, order)


def eta_bar(order) -> QSeries:
    """prod_(n>=1) (1 - q^n) through q^order."""
    order = Fraction(order)
    out = QSeries.unit(order)
    n = 1
    while n <= order:
        out = out * _one_minus(0, n, order)
        n += 1
    return out


def eta(order) -> QSeries:
    """q^(1/24) * eta_bar, exponents in 1/24 + Z."""
    return eta_bar(Fraction(order) - Fraction(1, 24)).shift(Fraction(1, 24))


def delta_series(order) -> QSeries:
    """The discriminant cusp form q * prod (1 - q^n)^24."""
    order = Fraction(order)
    out = QSeries.monomial(YF_ONE, 1, order)
    n = 1
    while n <= order - 1:
        f = _one_minus(0, n, order - 1)
        p = f * f
        p = p * p  # ^4
        p = p * p  # ^8
        out = out * (p * p * p)  # ^24
        n += 1
    return out


def delta_sqrt(order) -> QSeries:
    """q^(1/2) * prod (1 - q^n)^12; its square is delta_series."""
    order = Fraction(order)
    out = QSeries.monomial(YF_ONE, Fraction(1, 2), order)
    n = 1
    while n <= order - Fraction(1, 2):
        f = _one_minus(0, n, order - Fraction(1, 2))
        p = f * f
        p = p * p  # ^4
        out = out * (p * p * p)  # ^12
        n += 1
    return out


def phi_series(order) -> QSeries:
    """The weak Jacobi form phi_{-2,1}(q, y) of weight -2 and index 1."""
    s = phi_sqrt(order)
    return s * s


def phi_sqrt(order) -> QSeries:
    """(Y - Y^(-1)) * prod (1-y q^n)(1-y^(-1) q^n)(1-q^n)^(-2);
    its square is phi_series."""
    order = Fraction(order)
    head = YFraction(YLaurent.from_dict({1: QQ(1), -1: QQ(-1)}))
    out = QSeries.constant(head, order)
    n = 1
    while n <= order:
        out = out * _one_minus(2, n, order)
        out = out * _one_minus(-2, n, order)
        inv2 = qseries_inverse(_one_minus(0, n, order))
        out = out * inv2 * inv2
        n += 1
    return out


# ----------------------------------------------------------------------
# lattice theta functions
# ----------------------------------------------------------------------


def _cartan_pairing_half(x: list[Fraction]) -> Fraction:
    """(1/2) <x, x> for the A-type Cartan form, i.e. sum x_i^2 - sum x_i x_(i+1)."""
    total = sum(c * c for c in x)
    for i in range(len(x) - 1):
        total -= x[i] * x[i + 1]
    return Fraction(total)


def theta_lattice(rank: int, ell: int, order) -> QSeries:
    """Theta_{A_(rank-1), ell} through q^order; Theta = 1 for rank 1.

    Depends on ell only mod rank (the glue shift by rank is a lattice
    vector), and ell and -ell give the same function.
    """
    order = Fraction(order)
    m = rank - 1
    if m == 0:
        return QSeries.unit(order)
    glue = [Fraction(rank - i, rank) for i in range(1, rank)]
    # <x,x> = x_1^2 + (x_1-x_2)^2 + ... + x_(m-1) - x_m)^2 + x_m^2 telescopes,
    # so |x_i| <= i * sqrt(2 * order) on the support.
    bound = isqrt(int(2 * order)) + 1
    terms: dict[Fraction, YFraction] = {}

    def recurse(i: int, v: list[int]):
        if i == m:
            x = [Fraction(v[j]) - ell * glue[j] for j in range(m)]
            qe = _cartan_pairing_half(x)
            if qe > order:
                return
            ye2 = 2 * sum(x)
            assert ye2.denominator == 1
            cur = terms.get(qe)
            mono = _y_monomial(int(ye2))
            terms[qe] = mono if cur is None else cur + mono
            return
        center = ell * glue[i]
        lo = int(center) - (i + 1) * bound - 1
        hi = int(center) + (i + 1) * bound + 1
        for vi in range(lo, hi + 1):
            recurse(i + 1, v + [vi])

    recurse(0, [])
    return QSeries(terms, order)


def theta_lattice_dual(rank: int, k: int, order) -> QSeries:
    """Theta_{A_(rank-1)^dual, k} through q^order, coefficients in Z[E]
    tensored with Y-Laurent polynomials; Theta = 1 for rank 1."""
    order = Fraction(order)
    m = rank - 1
    one = CycloElement.root_power(rank, 0, YF_ONE)
    if m == 0:
        return QSeries.unit(order, one=one)
    # inverse Cartan matrix of A_m: (M^-1)_ij = min(i,j) (rank - max(i,j)) / rank
    minv = [
        [Fraction(min(i, j) * (rank - max(i, j)), rank) for j in range(1, rank)]
        for i in range(1, rank)
    ]
    # The dual form's smallest eigenvalue is at least 1/4 (Gershgorin on M),
    # so (1/2) <v,v>* <= order forces |v_i| <= 2 sqrt(2 * order) + 1.
    bound = 2 * (isqrt(int(2 * order)) + 1) + 1
    terms: dict[Fraction, CycloElement] = {}

    def close(v: list[int]):
        qe = Fraction(0)
        for i in range(m):
            for j in range(m):
                qe += Fraction(v[i] * v[j], 1) * minv[i][j]
        qe = qe / 2
        if qe > order:
            return
        ye2 = 2 * sum(Fraction(v[i]) * sum(minv[i]) for i in range(m))
        assert ye2.denominator == 1
        phase = sum((rank - (j + 1)) * k * v[j] for j in range(m))
        contrib = CycloElement.root_power(rank, phase, _y_monomial(int(ye2)))
        cur = terms.get(qe)
        terms[qe] = contrib if cur is None else cur + contrib

    def recurse(i: int, v: list[int]):
        if i == m:
            close(v)
            return
        for vi in range(-bound, bound + 1):
            recurse(i + 1, v + [vi])

    recurse(0, [])
    return QSeries(terms, order, one=one)


def verify_theta_transform(rank: int, order, report: VerificationReport | None = None) -> VerificationReport:
    """Check sum_l E^(k l) Theta_{A_(rank-1), l} = Theta_{A_(rank-1)^dual, k}
    for all k mod rank, as exact identities of cyclotomic q-series."""
    if report is None:
        report = VerificationReport(f"theta-transform rank {rank}")
    thetas = [theta_lattice(rank, ell, order) for ell in range(rank)]
    for k in range(rank):
        lhs = QSeries.zero(order, one=CycloElement.root_power(rank, 0, YF_ONE))
        for ell in range(rank):
            phased = thetas[ell].map_coefficients(
                lambda c, p=k * ell: CycloElement.root_power(rank, p, c)
            )
            lhs = lhs + phased
        rhs = theta_lattice_dual(rank, k, order)
        report.record(
            lhs == rhs,
            f"rank {rank}, character {k}: "
            f"discrete transform of glue-shifted thetas matches the dual theta",
        )
    return report
