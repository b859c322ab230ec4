"""Jensen polynomials, Turán inequalities, and threshold scans.

Everything here is exact integer arithmetic. A sequence satisfies the order-d
Turán inequality at shift n when its Jensen polynomial J^{d,n} is hyperbolic
(has only real roots); ``scan_minimal_shift`` looks for the smallest N past
which that holds on a finite horizon.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Sequence

from . import sturm
from .qseries import delta_coeffs


@dataclass(frozen=True)
class JensenPoly:
    d: int
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.d + 1:
            raise ValueError("a degree-d Jensen polynomial has d+1 coefficients")


def jensen(seq: Sequence[int], d: int, n: int) -> JensenPoly:
    """J^{d,n}(X) = sum_i binom(d, i) seq[n+i] X^i."""
    if d < 1:
        raise ValueError("degree d must be at least 1")
    if n < 0 or n + d >= len(seq):
        raise IndexError(f"sequence has no terms {n}..{n + d}")
    return JensenPoly(d, n, tuple(comb(d, i) * seq[n + i] for i in range(d + 1)))


def is_hyperbolic(poly) -> bool:
    """Exact all-roots-real test; accepts a JensenPoly or a coefficient list."""
    coeffs = poly.coeffs if isinstance(poly, JensenPoly) else poly
    return sturm.is_hyperbolic(coeffs)


def _window(seq: Sequence[int], lo: int, hi: int) -> None:
    if lo < 0 or hi >= len(seq):
        raise IndexError(f"sequence has no terms {lo}..{hi}")


def log_concave_at(seq: Sequence[int], n: int) -> bool:
    if n < 1:
        raise IndexError("log-concavity is defined for n >= 1")
    _window(seq, n - 1, n + 1)
    return seq[n] * seq[n] >= seq[n - 1] * seq[n + 1]


def turan3_at(seq: Sequence[int], n: int) -> bool:
    """4(a_n^2 - a_{n-1}a_{n+1})(a_{n+1}^2 - a_n a_{n+2}) >= (a_n a_{n+1} - a_{n-1} a_{n+2})^2."""
    if n < 1:
        raise IndexError("the third-order inequality is defined for n >= 1")
    _window(seq, n - 1, n + 2)
    a, b, c, e = seq[n - 1], seq[n], seq[n + 1], seq[n + 2]
    return 4 * (b * b - a * c) * (c * c - b * e) >= (b * c - a * e) ** 2


@dataclass
class TuranScanResult:
    d: int
    horizon: int
    N: int | None
    failures: list[int] = field(default_factory=list)
    k: int | None = None
    status: str = "conjectural"

    def to_dict(self) -> dict:
        return {"k": self.k, "d": self.d, "N": self.N, "failures": list(self.failures),
                "horizon": self.horizon, "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _failures(seq: Sequence[int], d: int, lo: int, hi: int) -> list[int]:
    return [n for n in range(lo, hi + 1) if not is_hyperbolic(jensen(seq, d, n))]


def _chunk_failures(args) -> list[int]:
    seq, d, lo, hi = args
    return _failures(seq, d, lo, hi)


def scan_minimal_shift(seq: Sequence[int], d: int, horizon: int = 2000, *, k: int | None = None,
                       stable_margin: int | None = None, workers: int = 1) -> TuranScanResult:
    """Smallest N with J^{d,n} hyperbolic for every N <= n <= horizon.

    Every shift 0..horizon is decided, and the failures (all below N) are
    reported. If the last failure lies within ``stable_margin`` of the
    horizon (default horizon // 10) the status is "unstable at horizon" and N
    is withheld; otherwise N is conjectural beyond the horizon.
    """
    if d < 1:
        raise ValueError("degree d must be at least 1")
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    _window(seq, 0, horizon + d)
    seq = tuple(seq[: horizon + d + 1])
    if workers > 1 and horizon > 64:
        step = -(-(horizon + 1) // (4 * workers))
        jobs = [(seq, d, lo, min(lo + step - 1, horizon)) for lo in range(0, horizon + 1, step)]
        with ProcessPoolExecutor(workers) as pool:
            failures = [n for part in pool.map(_chunk_failures, jobs) for n in part]
    else:
        failures = _failures(seq, d, 0, horizon)
    margin = horizon // 10 if stable_margin is None else stable_margin
    N = failures[-1] + 1 if failures else 0
    if failures and failures[-1] > horizon - margin:
        return TuranScanResult(d, horizon, None, failures, k, "unstable at horizon")
    return TuranScanResult(d, horizon, N, failures, k, "conjectural")


def scan_delta(k: int, d: int, horizon: int = 2000, workers: int = 1) -> TuranScanResult:
    seq = delta_coeffs(k, horizon + d).coeffs
    return scan_minimal_shift(seq, d, horizon, k=k, workers=workers)


def multiplicative_check(k: int, A: int, B: int) -> list[tuple[int, int]]:
    """Pairs (a, b), 1 <= a <= A, 1 <= b <= B, violating Delta(a) Delta(b) >= Delta(a+b)."""
    if A < 1 or B < 1:
        raise ValueError("A and B must be positive")
    c = delta_coeffs(k, A + B).coeffs
    return [(a, b) for a in range(1, A + 1) for b in range(1, B + 1) if c[a] * c[b] < c[a + b]]


def scans_to_csv(results: Sequence[TuranScanResult]) -> str:
    """Table-1 shaped CSV: one row per k, one column per degree."""
    by_k: dict = {}
    for r in results:
        by_k.setdefault(r.k, {})[r.d] = r
    ds = sorted({r.d for r in results})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k"] + [f"d={d}" for d in ds])
    for k in sorted(by_k, key=lambda v: (v is None, v)):
        row = [k]
        for d in ds:
            r = by_k[k].get(d)
            row.append("" if r is None else (r.N if r.N is not None else "unstable"))
        w.writerow(row)
    return buf.getvalue()
