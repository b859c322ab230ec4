"""Rademacher-type exact formula for eta-quotient coefficients.

For an eta-quotient with ``c1 > 0`` and a nonnegative periodic ``beta``,

    g(n) = 2 pi (24n - n0)^(-nu/2) sum_{j >= 1, c3(j) >= 0}
               c2(j) c3(j)^(nu/2) j^-1 A_j(n) I_nu(pi sqrt(c3(j) (24n - n0)) / (6j)),

with ``nu = c1 + 1``. For the broken k-diamond quotient (k = 1, 2) this is
``Delta_k(n) = pi^3 / (18 x^2) sum_j alpha_k(j) j^-1 A_j(n) I_2(sqrt(alpha_k(j)) x / j)``
where ``x = x_k(n) = pi sqrt(24n - 2k - 2) / 6``.

The truncated sum is returned as an interval widened by a certified tail,
so rounding it decides ``g(n)`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InapplicableQuotient, PrecisionExhausted
from .intervals import BigInterval, pi_interval
from .qseries import EtaQuotient, delta_quotient
from .special import a_hat, bessel_I

TAIL_TARGET = Fraction(1, 4)
DEFAULT_PREC_CAP = 4096


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class SussmanConstants:
    """c1, c2(j), c3(j) and beta(j) for one period j = 1..period.

    ``c2`` is stored squared (an exact rational); ``c2(j)`` itself is its
    square root.
    """

    quotient: EtaQuotient
    c1: Fraction
    c2_squared: tuple[Fraction, ...]
    c3: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    period: int

    def _idx(self, j: int) -> int:
        if j < 1:
            raise ValueError("j must be a positive integer")
        return (j - 1) % self.period

    def c3_at(self, j: int) -> Fraction:
        return self.c3[self._idx(j)]

    def beta_at(self, j: int) -> Fraction:
        return self.beta[self._idx(j)]

    def c2_exact(self, j: int) -> Fraction | None:
        return _fraction_sqrt(self.c2_squared[self._idx(j)])

    def c2_at(self, j: int, prec: int) -> BigInterval:
        sq = self.c2_squared[self._idx(j)]
        root = _fraction_sqrt(sq)
        if root is not None:
            return BigInterval.exact(root, prec)
        return BigInterval.exact(sq, prec).sqrt()

    @property
    def nu(self) -> Fraction:
        return self.c1 + 1


def constants(q: EtaQuotient) -> SussmanConstants:
    c1 = Fraction(-sum(q.deltas), 2)
    c2sq, c3, beta = [], [], []
    for j in range(1, q.period + 1):
        gs = [math.gcd(m, j) for m in q.ms]
        prod = Fraction(1)
        for (m, d), g in zip(q.factors, gs):
            prod *= Fraction(g, m) ** d
        c2sq.append(prod)
        c3j = -sum(Fraction(d * g * g, m) for (m, d), g in zip(q.factors, gs))
        c3.append(c3j)
        beta.append(min(Fraction(g * g, m) for m, g in zip(q.ms, gs)) - c3j / 24)
    return SussmanConstants(q, c1, tuple(c2sq), tuple(c3), tuple(beta), q.period)


@dataclass(frozen=True)
class Applicability:
    applicable: bool
    witness: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.applicable


def applicable(q: EtaQuotient) -> Applicability:
    """Check c1 > 0 and beta(j) >= 0 over one full period."""
    const = constants(q)
    if const.c1 <= 0:
        return Applicability(False, None, f"c1 = {const.c1} is not positive")
    for j in range(1, const.period + 1):
        if const.beta_at(j) < 0:
            return Applicability(False, j, f"beta({j}) = {const.beta_at(j)} < 0")
    return Applicability(True)


def _require_applicable(q: EtaQuotient) -> SussmanConstants:
    verdict = applicable(q)
    if not verdict:
        raise InapplicableQuotient(f"formula does not apply: {verdict.reason}",
                                   witness=verdict.witness)
    return constants(q)


def _resolve(k_or_q) -> EtaQuotient:
    return k_or_q if isinstance(k_or_q, EtaQuotient) else delta_quotient(int(k_or_q))


def alpha(k: int, j: int) -> Fraction:
    """alpha_k(j) = c3(j) for the broken k-diamond quotient."""
    return constants(delta_quotient(k)).c3_at(j)


# -- x_k(n), main term, error envelope ------------------------------------


@dataclass(frozen=True)
class XShift:
    k: int
    n: int
    value: BigInterval


def x_shift(k: int, n: int, prec: int = 128) -> XShift:
    """x_k(n) = pi sqrt(24n - (2k+2)) / 6, defined for 24n > 2k+2."""
    D = 24 * n - (2 * k + 2)
    if D <= 0:
        raise DomainError(f"x_{k}({n}) undefined: 24n - (2k+2) = {D} <= 0")
    val = pi_interval(prec) * BigInterval.exact(D, prec).sqrt() / 6
    return XShift(k, n, val)


def _delta_alpha1(k: int) -> Fraction:
    if k not in (1, 2):
        q = delta_quotient(k)
        verdict = applicable(q)
        if not verdict:
            raise InapplicableQuotient(f"Delta_{k}: {verdict.reason}", witness=verdict.witness)
        raise ValueError("main term and error envelope are defined for k in {1, 2}")
    return alpha(k, 1)


@dataclass(frozen=True)
class MainTerm:
    k: int
    n: int
    M: BigInterval


def main_term(k: int, n: int, prec: int = 128) -> MainTerm:
    """M_k(n) = alpha_k(1) pi^3 / (18 x^2) I_2(sqrt(alpha_k(1)) x)."""
    a1 = _delta_alpha1(k)
    x = x_shift(k, n, prec).value
    a = BigInterval.exact(a1, prec)
    pi = pi_interval(prec)
    M = a * pi ** 3 / (18 * x * x) * bessel_I(2, a.sqrt() * x, prec)
    return MainTerm(k, n, M)


def error_bound(k: int, n: int, prec: int = 128) -> BigInterval:
    """8 pi^(5/2) / (alpha^(3/4) x^(7/2)) exp(sqrt(alpha) x / 2) with alpha = alpha_k(1)."""
    a1 = _delta_alpha1(k)
    x = x_shift(k, n, prec).value
    a = BigInterval.exact(a1, prec)
    pi = pi_interval(prec)
    num = 8 * pi.pow_rational(Fraction(5, 2)) * (a.sqrt() * x / 2).exp()
    den = a.pow_rational(Fraction(3, 4)) * x.pow_rational(Fraction(7, 2))
    return num / den


# -- the exact series -------------------------------------------------------


def _shifted(q: EtaQuotient, n: int) -> int:
    D = 24 * n - q.n0
    if D <= 0:
        raise DomainError(f"need 24n > n0 = {q.n0}, got n = {n}")
    return D


def truncation_tail(k_or_q, n: int, J: int, prec: int = 64) -> BigInterval:
    """Certified upper bound (the ``hi`` endpoint) on the omitted terms j > J.

    Uses |A_j(n)| <= j and splits j > J into residue classes mod the period P;
    on each class c2, c3 are constant and u -> I_nu(a/u) is decreasing, so

        sum_{t>=0} I_nu(a / (j0 + P t)) <= I_nu(a/j0) (1 + j0 / (P (nu - 1))),

    from the integral comparison int_{j0}^inf I_nu(a/u) du <= j0 I_nu(a/j0) / (nu - 1).
    """
    q = _resolve(k_or_q)
    const = _require_applicable(q)
    D = _shifted(q, n)
    nu = const.nu
    P = const.period
    base = pi_interval(prec) * BigInterval.exact(D, prec).sqrt() / 6
    total = BigInterval.exact(0, prec)
    for r in range(1, P + 1):
        c3 = const.c3_at(r)
        if c3 <= 0:
            continue
        j0 = J + 1 + (r - (J + 1)) % P
        c3i = BigInterval.exact(c3, prec)
        arg = base * c3i.sqrt() / j0
        factor = 1 + BigInterval.exact(Fraction(j0) / (P * (nu - 1)), prec)
        total = total + const.c2_at(r, prec) * c3i.pow_rational(nu / 2) * bessel_I(nu, arg, prec) * factor
    pref = 2 * pi_interval(prec) * BigInterval.exact(D, prec).pow_rational(-nu / 2)
    return pref * total


def choose_truncation(k_or_q, n: int, target: Fraction = TAIL_TARGET) -> int:
    """Smallest J whose certified tail is below ``target``.

    J is doubled until the tail bound drops below target, then bisected
    down to the smallest passing value.
    """
    if n < 1:
        raise DomainError("n must be positive")

    def ok(J: int) -> bool:
        return truncation_tail(k_or_q, n, J).hi < target

    hi = 1
    while not ok(hi):
        hi *= 2
        if hi > 1 << 24:
            raise RuntimeError("tail bound failed to converge")
    lo = hi // 2  # lo fails (or is 0)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid >= 1 and ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def evaluate(q: EtaQuotient, n: int, J: int | None = None, prec: int = 128) -> BigInterval:
    """Enclosure of g(n): the partial sum over j <= J plus the certified tail."""
    const = _require_applicable(q)
    D = _shifted(q, n)
    if J is None:
        J = choose_truncation(q, n)
    if J < 1:
        raise ValueError("truncation J must be at least 1")
    nu = const.nu
    base = pi_interval(prec) * BigInterval.exact(D, prec).sqrt() / 6
    total = BigInterval.exact(0, prec)
    for j in range(1, J + 1):
        c3 = const.c3_at(j)
        if c3 <= 0:
            continue
        c3i = BigInterval.exact(c3, prec)
        weight = const.c2_at(j, prec) * c3i.pow_rational(nu / 2) / j
        total = total + weight * a_hat(j, n, q, prec) * bessel_I(nu, base * c3i.sqrt() / j, prec)
    pref = 2 * pi_interval(prec) * BigInterval.exact(D, prec).pow_rational(-nu / 2)
    tail = truncation_tail(q, n, J, min(prec, 64))
    return (pref * total).widen(tail.hi)


def rademacher_eval(k: int, n: int, J: int | None = None, prec: int = 128) -> BigInterval:
    """Enclosure of Delta_k(n) from the truncated exact formula (k = 1, 2)."""
    if n < 1:
        raise DomainError("n must be positive")
    return evaluate(delta_quotient(k), n, J, prec)


@dataclass(frozen=True)
class RoundedValue:
    n: int
    value: int
    enclosure: BigInterval
    J: int
    prec: int


def _starting_prec(q: EtaQuotient, n: int) -> int:
    const = constants(q)
    D = 24 * n - q.n0
    top = max(const.c3_at(j) for j in range(1, const.period + 1))
    log2_size = math.pi * math.sqrt(float(top) * D) / 6 / math.log(2)
    p = int(log2_size) + 48
    return max(64, -(-p // 32) * 32)


def round_exact(k_or_q, n: int, prec_cap: int = DEFAULT_PREC_CAP,
                prec: int | None = None) -> RoundedValue:
    """Evaluate at increasing precision until the enclosure holds exactly one integer."""
    q = _resolve(k_or_q)
    _require_applicable(q)
    J = choose_truncation(q, n)
    p = prec or _starting_prec(q, n)
    while p <= prec_cap:
        try:
            enc = evaluate(q, n, J, p)
        except PrecisionExhausted:
            enc = None
        if enc is not None:
            v = enc.unique_integer()
            if v is not None:
                return RoundedValue(n, v, enc, J, p)
        p *= 2
    raise PrecisionExhausted(f"g({n}) not isolated below {prec_cap} bits", prec=prec_cap)
