"""Pointwise interval certification of the Bessel and log-concavity inequality chain.

Each audit evaluates both sides of one inequality at a single parameter
point in outward-rounded interval arithmetic. A verdict is "certified_true"
or "certified_false" only when the enclosures are strictly separated;
otherwise the precision is doubled up to a cap, and past the cap the verdict
is "undecided". Points below an inequality's stated validity threshold are
still evaluated but reported with ``in_range = False``.
"""

from __future__ import annotations

import json
import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DomainError, PrecisionExhausted
from .intervals import BigInterval, pi_interval
from .qseries import delta_coeffs
from .rademacher import DEFAULT_PREC_CAP, alpha, x_shift
from .special import bessel_I

CERTIFIED_TRUE = "certified_true"
CERTIFIED_FALSE = "certified_false"
UNDECIDED = "undecided"

INEQUALITY_IDS = (
    "bessel_upper_I1",
    "bessel_two_sided_I2",
    "sandwich_eq_main",
    "ratio_eq_lem_B",
    "gk_bound",
    "h_bound",
    "logconcavity_chain",
    "tail_sum",
    "x_threshold",
)

PREC_CAP_ENV = "BKDIAMOND_PREC_CAP"
START_PREC = 128

# x_k(n) >= X_MAIN is the range of the sandwich, ratio and final chain
X_MAIN = 152
X_H_BOUND = 62
X_G_BOUND = 75
S_TWO_SIDED = 231


def default_prec_cap() -> int:
    raw = os.environ.get(PREC_CAP_ENV)
    if not raw:
        return DEFAULT_PREC_CAP
    cap = int(raw)
    if cap < 64:
        raise ValueError(f"{PREC_CAP_ENV} must be at least 64, got {cap}")
    return cap


@dataclass
class AuditReport:
    inequality_id: str
    point: dict
    verdict: str
    precision_used: int
    in_range: bool = True
    detail: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED_TRUE

    def sort_key(self):
        def num(key, v):
            return SPoint.parse(v).approx() if key == "s" else v
        return (self.inequality_id, tuple((key, num(key, v)) for key, v in sorted(self.point.items())))

    def to_dict(self) -> dict:
        return {
            "inequality_id": self.inequality_id,
            "point": self.point,
            "verdict": self.verdict,
            "precision_used": self.precision_used,
            "in_range": self.in_range,
            "detail": self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# -- comparison and escalation -------------------------------------------------


def _lt(a: BigInterval, b: BigInterval) -> bool | None:
    """Strict a < b: True/False when the enclosures decide it, else None."""
    if a.hi < b.lo:
        return True
    if a.lo >= b.hi:
        return False
    return None


def _le(a: BigInterval, b: BigInterval) -> bool | None:
    if a.hi <= b.lo:
        return True
    if a.lo > b.hi:
        return False
    return None


def _all(*flags: bool | None) -> bool | None:
    if any(f is False for f in flags):
        return False
    if all(f is True for f in flags):
        return True
    return None


def _escalate(decide: Callable[[int], tuple[bool | None, dict]], prec: int | None,
              cap: int | None) -> tuple[str, int, dict]:
    cap = default_prec_cap() if cap is None else cap
    p = prec or min(START_PREC, cap)
    detail: dict = {}
    used = p
    while p <= cap:
        used = p
        try:
            ok, detail = decide(p)
        except (PrecisionExhausted, ZeroDivisionError) as exc:
            ok, detail = None, {"error": str(exc)}
        if ok is not None:
            return (CERTIFIED_TRUE if ok else CERTIFIED_FALSE), p, detail
        p *= 2
    return UNDECIDED, used, detail


def _enc(v: BigInterval) -> dict:
    enc = v.to_json()
    return {"lo": enc["lo"], "hi": enc["hi"]}


def _report(ineq: str, point: dict, in_range: bool, decide, prec, cap) -> AuditReport:
    verdict, used, detail = _escalate(decide, prec, cap)
    if not in_range:
        detail = dict(detail, note="out of theorem range")
    return AuditReport(ineq, point, verdict, used, in_range, detail)


# -- parameter points -----------------------------------------------------------

_S_RE = re.compile(r"^\s*([0-9./]+)?\s*\*?\s*(?:sqrt\(\s*([0-9./]+)\s*\))?\s*$")


@dataclass(frozen=True)
class SPoint:
    """A Bessel argument s = coef * sqrt(radicand), both exact rationals."""

    coef: Fraction
    radicand: Fraction = Fraction(1)

    @classmethod
    def parse(cls, text) -> "SPoint":
        if isinstance(text, SPoint):
            return text
        if isinstance(text, (int, Fraction)):
            return cls(Fraction(text))
        m = _S_RE.match(str(text))
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"cannot parse s = {text!r}; use 'a', 'sqrt(b)' or 'a*sqrt(b)'")
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        rad = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if coef < 0 or rad < 0:
            raise ValueError("s must be nonnegative")
        return cls(coef, rad)

    def interval(self, prec: int) -> BigInterval:
        v = BigInterval.exact(self.coef, prec)
        if self.radicand != 1:
            v = v * BigInterval.exact(self.radicand, prec).sqrt()
        return v

    def approx(self) -> float:
        return float(self.coef) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coef)
        return f"{self.coef}*sqrt({self.radicand})"


def boundary_s(k: int) -> SPoint:
    """sqrt(alpha_k(1)) * 152, the smallest Bessel argument the main range uses."""
    return SPoint(Fraction(X_MAIN), alpha(k, 1))


def _point_kn(k: int, n: int) -> dict:
    return {"k": k, "n": n}


def _x(k: int, n: int, prec: int) -> BigInterval:
    return x_shift(k, n, prec).value


def min_n_for_x(k: int, X: int) -> int:
    """Smallest n with x_k(n) >= X, i.e. 24n - (2k+2) >= (6X/pi)^2, decided by intervals."""
    p = 128
    while True:
        t = (BigInterval.exact(6 * X, p) / pi_interval(p)) ** 2
        bound = (t + (2 * k + 2)) / 24
        lo_n, hi_n = int(math.ceil(bound.lo)), int(math.ceil(bound.hi))
        if lo_n == hi_n:
            return max(lo_n, 1)
        p *= 2


def _x_in_range(k: int, n: int, X: int) -> bool:
    return n >= min_n_for_x(k, X)


# -- Bessel bounds ----------------------------------------------------------------


def audit_bessel_upper(s, *, prec: int | None = None, prec_cap: int | None = None) -> AuditReport:
    """I_1(s) <= sqrt(2 / (pi s)) e^s, stated for s >= 1."""
    sp = SPoint.parse(s)

    def decide(p):
        sv = sp.interval(p)
        lhs = bessel_I(1, sv, p)
        rhs = (2 / (pi_interval(p) * sv)).sqrt() * sv.exp()
        return _le(lhs, rhs), {"lhs": _enc(lhs), "rhs": _enc(rhs)}

    return _report("bessel_upper_I1", {"s": str(sp)}, sp.approx() >= 1, decide, prec, prec_cap)


def _two_sided_error(sv: BigInterval, p: int) -> BigInterval:
    """I_2(s) e^-s sqrt(2 pi s) - 1 + 15/(8s) - 105/(128 s^2) - 315/(1024 s^3)."""
    i2 = bessel_I(2, sv, p)
    lead = i2 * (-sv).exp() * (2 * pi_interval(p) * sv).sqrt()
    inv = 1 / sv
    return (lead - 1 + Fraction(15, 8) * inv - Fraction(105, 128) * inv ** 2
            - Fraction(315, 1024) * inv ** 3)


def audit_bessel_two_sided(s, *, prec: int | None = None, prec_cap: int | None = None) -> AuditReport:
    """|I_2(s) e^-s sqrt(2 pi s) - (1 - 15/(8s) + ...)| <= 3968/(3 s^4), stated for s >= 231."""
    sp = SPoint.parse(s)

    def decide(p):
        sv = sp.interval(p)
        err = abs(_two_sided_error(sv, p))
        bound = Fraction(3968, 3) / sv ** 4
        return _le(err, bound), {"abs_error": _enc(err), "bound": _enc(bound)}

    return _report("bessel_two_sided_I2", {"s": str(sp)}, sp.approx() >= S_TWO_SIDED,
                   decide, prec, prec_cap)


# -- G_k and the sandwich ---------------------------------------------------------


@dataclass(frozen=True)
class GkValue:
    k: int
    n: int
    value: BigInterval


def gk(k: int, n: int, prec: int = START_PREC) -> GkValue:
    """G_k(n) = 144 / (alpha^(7/4) sqrt(pi) x^(3/2)) * exp(sqrt(alpha) x / 2) / I_2(sqrt(alpha) x)."""
    a = BigInterval.exact(alpha(k, 1), prec)
    x = _x(k, n, prec)
    sa = a.sqrt()
    front = 144 / (a.pow_rational(Fraction(7, 4)) * pi_interval(prec).sqrt()
                   * x.pow_rational(Fraction(3, 2)))
    return GkValue(k, n, front * (sa * x / 2).exp() / bessel_I(2, sa * x, prec))


def audit_gk_bound(k: int, n: int, *, prec: int | None = None,
                   prec_cap: int | None = None) -> AuditReport:
    """G_k(n) < x_k(n)^-6, stated for x_k(n) >= 152."""

    def decide(p):
        g = gk(k, n, p).value
        bound = 1 / _x(k, n, p) ** 6
        return _lt(g, bound), {"G": _enc(g), "bound": _enc(bound)}

    return _report("gk_bound", _point_kn(k, n), _x_in_range(k, n, X_MAIN), decide, prec, prec_cap)


def _main(k: int, n: int, p: int) -> tuple[BigInterval, BigInterval]:
    """(M_k(n), x_k(n)) at precision p."""
    a = BigInterval.exact(alpha(k, 1), p)
    x = _x(k, n, p)
    M = a * pi_interval(p) ** 3 / (18 * x * x) * bessel_I(2, a.sqrt() * x, p)
    return M, x


def audit_sandwich(k: int, n: int, *, prec: int | None = None,
                   prec_cap: int | None = None) -> AuditReport:
    """M_k(n)(1 - x^-6) <= Delta_k(n) <= M_k(n)(1 + x^-6) against the exact coefficient."""
    exact = delta_coeffs(k, n)[n]

    def decide(p):
        M, x = _main(k, n, p)
        eps = 1 / x ** 6
        lower, upper = M * (1 - eps), M * (1 + eps)
        d = BigInterval.exact(exact, p)
        ok = _all(_le(lower, d), _le(d, upper))
        return ok, {"exact": str(exact), "lower": _enc(lower), "upper": _enc(upper)}

    return _report("sandwich_eq_main", _point_kn(k, n), _x_in_range(k, n, X_MAIN),
                   decide, prec, prec_cap)


# -- ratio bound, h_k, g_k and the final chain --------------------------------------


def _ratio_rhs(sa: BigInterval, x: BigInterval, p: int) -> BigInterval:
    return 1 + pi_interval(p) ** 4 * sa / (9 * x ** 3) - 1100 / x ** 4


def audit_ratio(k: int, n: int, *, prec: int | None = None,
                prec_cap: int | None = None) -> AuditReport:
    """I_2(sa x(n))^2 / (I_2(sa x(n-1)) I_2(sa x(n+1))) > 1 + pi^4 sa / (9 x^3) - 1100 / x^4."""

    def decide(p):
        sa = BigInterval.exact(alpha(k, 1), p).sqrt()
        x0, xm, xp = _x(k, n, p), _x(k, n - 1, p), _x(k, n + 1, p)
        lhs = bessel_I(2, sa * x0, p) ** 2 / (bessel_I(2, sa * xm, p) * bessel_I(2, sa * xp, p))
        rhs = _ratio_rhs(sa, x0, p)
        return _lt(rhs, lhs), {"lhs": _enc(lhs), "rhs": _enc(rhs)}

    return _report("ratio_eq_lem_B", _point_kn(k, n), _x_in_range(k, n, X_MAIN),
                   decide, prec, prec_cap)


def _gammas(k: int, p: int) -> tuple[BigInterval, ...]:
    a = BigInterval.exact(alpha(k, 1), p)
    sa = a.sqrt()
    return (Fraction(15, 8) / sa, Fraction(105, 128) / a,
            Fraction(315, 1024) / (a * sa), Fraction(3968, 3) / (a * a))


def h_value(k: int, n: int, prec: int = START_PREC) -> BigInterval:
    """h_k(n): the lower Bessel factor at n squared over the upper factors at n -/+ 1."""
    g1, g2, g3, g4 = _gammas(k, prec)

    def poly(x, sign):
        return 1 - g1 / x + g2 / x ** 2 + g3 / x ** 3 + sign * g4 / x ** 4

    x0, xm, xp = _x(k, n, prec), _x(k, n - 1, prec), _x(k, n + 1, prec)
    return poly(x0, -1) ** 2 / (poly(xm, 1) * poly(xp, 1))


def audit_h_bound(k: int, n: int, *, prec: int | None = None,
                  prec_cap: int | None = None) -> AuditReport:
    """h_k(n) >= 1 - 1000 / x^4, stated for x_k(n) >= 62."""

    def decide(p):
        h = h_value(k, n, p)
        rhs = 1 - 1000 / _x(k, n, p) ** 4
        return _le(rhs, h), {"h": _enc(h), "rhs": _enc(rhs)}

    return _report("h_bound", _point_kn(k, n), _x_in_range(k, n, X_H_BOUND), decide, prec, prec_cap)


def g_value(k: int, n: int, prec: int = START_PREC) -> BigInterval:
    """g_k(n) = (1 - x(n)^-6)^2 / ((1 + x(n-1)^-6)^2 (1 + x(n+1)^-6)^2)."""
    x0, xm, xp = _x(k, n, prec), _x(k, n - 1, prec), _x(k, n + 1, prec)
    return (1 - 1 / x0 ** 6) ** 2 / ((1 + 1 / xm ** 6) ** 2 * (1 + 1 / xp ** 6) ** 2)


def audit_logconcavity_chain(k: int, n: int, *, prec: int | None = None,
                             prec_cap: int | None = None) -> AuditReport:
    """g_k(n) >= 1 - 10/x^6 and (1 - 4pi^4/(9x^4)) (ratio bound) (1 - 10/x^6) >= 1.

    Below the range the exact ratio Delta(n)^2 >= Delta(n-1) Delta(n+1) is
    reported alongside, as a direct check.
    """
    in_range = _x_in_range(k, n, X_MAIN)

    def decide(p):
        x = _x(k, n, p)
        sa = BigInterval.exact(alpha(k, 1), p).sqrt()
        pi4 = pi_interval(p) ** 4
        g = g_value(k, n, p)
        g_rhs = 1 - 10 / x ** 6
        chain = (1 - 4 * pi4 / (9 * x ** 4)) * _ratio_rhs(sa, x, p) * g_rhs
        one = BigInterval.exact(1, p)
        ok = _all(_le(g_rhs, g), _le(one, chain))
        return ok, {"g": _enc(g), "g_rhs": _enc(g_rhs), "chain": _enc(chain)}

    rep = _report("logconcavity_chain", _point_kn(k, n), in_range, decide, prec, prec_cap)
    if not in_range and n >= 1:
        c = delta_coeffs(k, n + 1)
        rep.detail["exact_log_concave"] = c[n] * c[n] >= c[n - 1] * c[n + 1]
    return rep


# -- the tail-sum comparison and the x threshold -------------------------------------

TAIL_SUM_LIMIT = 10 ** 4


def audit_tail_sum(s, N: int, *, limit: int = TAIL_SUM_LIMIT, prec: int | None = None,
                   prec_cap: int | None = None) -> AuditReport:
    """sum_{N <= j <= limit} I_2(s/j) <= (2 N^2 / s) I_1(s/N), summed term by term.

    The inequality fails at several small N: the sum starts with I_2(s/N),
    which the integral comparison behind the right side does not cover.
    """
    sp = SPoint.parse(s)
    if N < 1 or limit < N:
        raise ValueError("need 1 <= N <= limit")

    def decide(p):
        sv = sp.interval(p)
        total = BigInterval.exact(0, p)
        for j in range(N, limit + 1):
            total = total + bessel_I(2, sv / j, p)
        rhs = 2 * N * N / sv * bessel_I(1, sv / N, p)
        return _le(total, rhs), {"sum": _enc(total), "rhs": _enc(rhs)}

    return _report("tail_sum", {"s": str(sp), "N": N}, True, decide, prec, prec_cap)


def audit_x_threshold(k: int, *, claimed: int = 3512, prec: int = START_PREC) -> AuditReport:
    """Minimal n with x_k(n) >= 152, certified at n and n - 1, compared with the claimed 3512."""
    n = min_n_for_x(k, X_MAIN)
    at = _x(k, n, prec)
    below = _x(k, n - 1, prec) if 24 * (n - 1) > 2 * k + 2 else None
    bracket = _all(_le(BigInterval.exact(X_MAIN, prec), at),
                   True if below is None else _lt(below, BigInterval.exact(X_MAIN, prec)))
    if bracket is None:
        verdict = UNDECIDED
    else:
        verdict = CERTIFIED_TRUE if (bracket and n == claimed) else CERTIFIED_FALSE
    detail = {"minimal_n": n, "claimed": claimed, "x_at_minimal": _enc(at)}
    if below is not None:
        detail["x_below"] = _enc(below)
    return AuditReport("x_threshold", {"k": k}, verdict, prec, True, detail)


# -- sample sets and batch runs -----------------------------------------------------

MAIN_INTERIOR = (3600, 4096, 5000)
DEFAULT_S = ("231", "300", "500")
TAIL_SAMPLES = tuple((s, N) for s in ("10", "50", "152*sqrt(7/3)") for N in (2, 5, 10))


def sample_ns(k: int, which: str = "default", X: int = X_MAIN) -> list[int]:
    """The boundary n of the x >= X range, plus interior points for "default"."""
    b = min_n_for_x(k, X)
    if which == "boundary":
        return [b]
    if which == "default":
        return [b] + [n for n in MAIN_INTERIOR if n > b]
    raise ValueError(f"unknown point set {which!r}; use 'boundary' or 'default'")


def sample_s(which: str = "default", ks: Sequence[int] = (1, 2)) -> list[SPoint]:
    pts = [SPoint.parse(DEFAULT_S[0])]
    if which == "default":
        pts += [boundary_s(k) for k in ks] + [SPoint.parse(t) for t in DEFAULT_S[1:]]
    elif which != "boundary":
        raise ValueError(f"unknown point set {which!r}; use 'boundary' or 'default'")
    return pts


AUDIT_SETS = ("bessel", "sandwich", "ratio", "gk", "hbound", "chain", "tail", "threshold")


def run_audit_set(name: str, ks: Iterable[int] = (1, 2), points: str = "default",
                  ns: Sequence[int] | None = None, ss: Sequence | None = None,
                  prec_cap: int | None = None) -> list[AuditReport]:
    """Run one named audit family; explicit ``ns`` / ``ss`` override the sample set."""
    ks = list(ks)
    for k in ks:
        if k not in (1, 2):
            raise DomainError(f"audits are defined for k in {{1, 2}}, got {k}")
    out: list[AuditReport] = []
    if name == "bessel":
        for s in (ss if ss else sample_s(points, ks)):
            out.append(audit_bessel_two_sided(s, prec_cap=prec_cap))
            out.append(audit_bessel_upper(s, prec_cap=prec_cap))
    elif name == "tail":
        samples = [(s, N) for s in ss for N in (2, 5, 10)] if ss else TAIL_SAMPLES
        out = [audit_tail_sum(s, N, prec_cap=prec_cap) for s, N in samples]
    elif name == "threshold":
        out = [audit_x_threshold(k) for k in ks]
    else:
        fn, X = {
            "sandwich": (audit_sandwich, X_MAIN),
            "ratio": (audit_ratio, X_MAIN),
            "gk": (audit_gk_bound, X_MAIN),
            "hbound": (audit_h_bound, X_H_BOUND),
            "chain": (audit_logconcavity_chain, X_MAIN),
        }.get(name, (None, None))
        if fn is None:
            raise ValueError(f"unknown audit set {name!r}; choose from {', '.join(AUDIT_SETS)}")
        for k in ks:
            for n in (ns if ns else sample_ns(k, points, X)):
                out.append(fn(k, n, prec_cap=prec_cap))
    return sorted(out, key=AuditReport.sort_key)


def summarize(reports: Sequence[AuditReport]) -> list[dict]:
    """One row per inequality: points, certified count, max precision."""
    rows: dict[str, dict] = {}
    for r in reports:
        row = rows.setdefault(r.inequality_id, {"inequality": r.inequality_id, "points": 0,
                                                "certified": 0, "max_precision": 0})
        row["points"] += 1
        row["certified"] += r.verdict == CERTIFIED_TRUE
        row["max_precision"] = max(row["max_precision"], r.precision_used)
    return [rows[key] for key in sorted(rows)]


def format_summary(reports: Sequence[AuditReport]) -> str:
    rows = summarize(reports)
    head = f"{'inequality':<22} {'points':>6} {'certified':>9} {'max bits':>8}"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(f"{r['inequality']:<22} {r['points']:>6} {r['certified']:>9} {r['max_precision']:>8}")
    return "\n".join(lines)
