"""Dedekind sums, the Kloosterman-type sums A_j(n), and modified Bessel I_nu.

Dedekind sums are exact ``Fraction`` values. ``a_hat`` keeps every phase as
an exact rational multiple of pi and only evaluates the final cosines in
interval arithmetic. ``bessel_I`` sums the power series with directed
rounding and adds a certified geometric tail to the upper endpoint.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpfr

from .errors import PrecisionExhausted
from .intervals import BigInterval, _down, _up, cos_pi, pi_interval, sin_pi
from .qseries import EtaQuotient

Rational = Fraction


def dedekind_sum(h: int, j: int) -> Fraction:
    """s(h, j) = sum_{r=1}^{j-1} ((r/j)) ((h r / j)) by direct summation.

    Each factor ``((x/j))`` is ``x/j - 1/2`` off multiples of ``j`` and 0 on
    them; the whole sum is accumulated over the common denominator ``4 j^2``.
    """
    if j < 1:
        raise ValueError("j must be a positive integer")
    acc = 0
    for r in range(1, j):
        hr = (h * r) % j
        if hr:
            acc += (2 * r - j) * (2 * hr - j)
    return Fraction(acc, 4 * j * j)


@lru_cache(maxsize=None)
def _dedekind_phases(q: EtaQuotient, j: int) -> tuple[tuple[int, Fraction], ...]:
    """(h, sum_r delta_r s(m_r h / g_r, j / g_r)) for h coprime to j."""
    out = []
    for h in range(j):
        if math.gcd(h, j) != 1:
            continue
        total = Fraction(0)
        for m, d in q.factors:
            g = math.gcd(m, j)
            total += d * dedekind_sum(m * h // g, j // g)
        out.append((h, total))
    return tuple(out)


def a_hat_phases(q: EtaQuotient, j: int, n: int) -> list[Fraction]:
    """Exact phases theta_h with summands exp(pi i theta_h), reduced mod 2."""
    phases = []
    for h, ded in _dedekind_phases(q, j):
        theta = Fraction(-2 * h * n, j) - ded
        phases.append(theta - 2 * math.floor(theta / 2))
    return phases


@lru_cache(maxsize=65536)
def _a_hat_cached(q: EtaQuotient, j: int, n_mod_j: int, prec: int) -> BigInterval:
    re = BigInterval.exact(0, prec)
    im = BigInterval.exact(0, prec)
    for theta in a_hat_phases(q, j, n_mod_j):
        re = re + cos_pi(theta, prec)
        im = im + sin_pi(theta, prec)
    if not im.contains(0):
        raise PrecisionExhausted(
            f"imaginary part of A_{j}({n_mod_j}) excludes zero: {im!r}", prec=prec)
    return re


def a_hat(j: int, n: int, q: EtaQuotient, prec: int) -> BigInterval:
    """Enclosure of the (real) sum A_j(n).

    The summand for h is exp(-2 pi i h n / j - pi i sum_r delta_r s(...)); only
    ``n mod j`` matters, so results are cached on that residue.
    """
    if j < 1:
        raise ValueError("j must be a positive integer")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _a_hat_cached(q, j, n % j, prec)


def _gamma_nu_plus_one(nu: Fraction, prec: int) -> BigInterval:
    # integer or half-integer nu only
    if nu.denominator == 1:
        return BigInterval.exact(math.factorial(int(nu)), prec)
    if nu.denominator != 2:
        raise ValueError("nu must be an integer or a half-integer")
    m = int(nu - Fraction(1, 2))
    # Gamma(m + 3/2) = (2m+2)! / (4^(m+1) (m+1)!) * sqrt(pi)
    ratio = Fraction(math.factorial(2 * m + 2), 4 ** (m + 1) * math.factorial(m + 1))
    return BigInterval.exact(ratio, prec) * pi_interval(prec).sqrt()


def bessel_I(nu, s: BigInterval, prec: int | None = None) -> BigInterval:
    """Enclosure of I_nu(s) = sum_r (s/2)^(2r+nu) / (r! Gamma(r+nu+1)) for s >= 0.

    I_nu is increasing on [0, inf), so the lower endpoint is a rounded-down
    partial sum at ``s.lo`` and the upper endpoint a rounded-up partial sum at
    ``s.hi`` plus the tail majorant ``t * rho / (1 - rho)``, where ``rho`` is the
    (decreasing) term ratio just past the last summed term.
    """
    nu = Fraction(nu)
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    if isinstance(s, (int, Fraction)):
        s = BigInterval.exact(s, prec or 128)
    if s.hi < 0:
        raise ValueError("bessel_I needs s >= 0")
    p = prec or s.prec
    dn, up = _down(p), _up(p)
    s_lo = max(s.lo, mpfr(0))
    s_hi = s.hi

    if s_hi == 0:
        return BigInterval.exact(1 if nu == 0 else 0, p)

    gamma = _gamma_nu_plus_one(nu, p)
    half_lo, half_hi = dn.div(s_lo, 2), up.div(s_hi, 2)
    u_lo, u_hi = dn.mul(half_lo, half_lo), up.mul(half_hi, half_hi)
    # (s/2)^nu
    if nu.denominator == 1:
        pw_lo, pw_hi = dn.pow(half_lo, int(nu)), up.pow(half_hi, int(nu))
    else:
        pw_lo = dn.sqrt(dn.pow(half_lo, nu.numerator))
        pw_hi = up.sqrt(up.pow(half_hi, nu.numerator))
    t_lo, t_hi = dn.div(pw_lo, gamma.hi), up.div(pw_hi, gamma.lo)
    sum_lo, sum_hi = t_lo, t_hi

    # (r+1)(r+nu+1) scaled to integers: 2nu is an integer
    two_nu = int(2 * nu)
    eps = mpfr(2) ** (-p - 2)
    r = 0
    while True:
        denom = (r + 1) * (2 * r + two_nu + 2)  # = 2 (r+1)(r+nu+1)
        rho_hi = up.div(up.mul(u_hi, 2), denom)
        if rho_hi < 1:
            tail = up.div(up.mul(t_hi, rho_hi), dn.sub(1, rho_hi))
            if tail <= up.mul(sum_hi, eps):
                sum_hi = up.add(sum_hi, tail)
                break
        t_lo = dn.div(dn.mul(dn.mul(t_lo, u_lo), 2), denom)
        t_hi = up.mul(t_hi, rho_hi)
        sum_lo = dn.add(sum_lo, t_lo)
        sum_hi = up.add(sum_hi, t_hi)
        r += 1
    return BigInterval(sum_lo, sum_hi, p)
