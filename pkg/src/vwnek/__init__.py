"""Exact-arithmetic toolkit for equivariant K-theoretic Nekrasov partition
functions of framed sheaves on the plane, wall-crossing identities, and the
vertical contribution to Vafa-Witten partition functions of surfaces.

Everything is computed over exact rationals: Laurent polynomials and rational
functions in the half-weight variable Y (y = Y^2), truncated Laurent series in
u = s - 1 along a one-parameter subgroup t_i = s^(alpha_i), and q-series with
exact rational exponents.  No floating point is used anywhere.
"""

from __future__ import annotations

__version__ = "0.1.0"

CONVENTION_VERSION = "vwnek-conventions-1"
