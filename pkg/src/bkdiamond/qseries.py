"""Exact integer power series for eta-quotients.

An eta-quotient is ``prod_r (q^m_r; q^m_r)_inf ** delta_r``. Coefficients are
Python ints, so nothing overflows; truncation is always ``mod q^(N+1)``.
The ``q^(-n0/24)`` prefactor is bookkeeping only: index ``n`` of a series is
the coefficient ``g(n)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class EtaQuotient:
    """Finite product of Euler factors ``(q^m; q^m)_inf ** delta``."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        factors = tuple((int(m), int(d)) for m, d in self.factors)
        object.__setattr__(self, "factors", factors)
        ms = [m for m, _ in factors]
        if not factors:
            raise ValueError("an eta-quotient needs at least one factor")
        if any(m < 1 for m in ms):
            raise ValueError("all m_r must be positive")
        if len(set(ms)) != len(ms):
            raise ValueError("the m_r must be distinct")
        if any(d == 0 for _, d in factors):
            raise ValueError("all delta_r must be nonzero")

    @classmethod
    def from_lists(cls, ms: Sequence[int], deltas: Sequence[int]) -> "EtaQuotient":
        if len(ms) != len(deltas):
            raise ValueError("m and delta lists differ in length")
        return cls(tuple(zip(ms, deltas)))

    @property
    def ms(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.factors)

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.factors)

    @property
    def n0(self) -> int:
        return -sum(m * d for m, d in self.factors)

    @property
    def period(self) -> int:
        return math.lcm(*self.ms)

    def permuted(self, order: Sequence[int]) -> "EtaQuotient":
        return EtaQuotient(tuple(self.factors[i] for i in order))


def delta_quotient(k: int) -> EtaQuotient:
    """The broken k-diamond generating function as an eta-quotient."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return EtaQuotient(((1, -3), (2, 1), (2 * k + 1, 1), (4 * k + 2, -1)))


PARTITIONS = EtaQuotient(((1, -1),))


@dataclass(frozen=True)
class ExactSeries:
    coeffs: tuple[int, ...]
    quotient: EtaQuotient | None = None

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str, quotient: EtaQuotient | None = None) -> "ExactSeries":
        return cls(tuple(int(s) for s in json.loads(text)), quotient)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "coefficient"])
        for n, c in enumerate(self.coeffs):
            w.writerow([n, c])
        return buf.getvalue()


# -- truncated series kernels (lists of ints, index = exponent) ----------


def _sparse(a: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, c) for i, c in enumerate(a) if c]


def mul_trunc(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    """Schoolbook product mod q^(N+1), iterating over the sparser operand."""
    sa, sb = _sparse(a[: N + 1]), _sparse(b[: N + 1])
    if len(sa) > len(sb):
        sa, sb = sb, sa
    out = [0] * (N + 1)
    for i, ci in sa:
        for j, cj in sb:
            if i + j > N:
                break
            out[i + j] += ci * cj
    return out


def div_trunc(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    """Exact quotient a / b mod q^(N+1) for b with constant term 1."""
    if not b or b[0] != 1:
        raise ValueError("divisor must have constant term 1")
    sb = [(i, c) for i, c in _sparse(b[: N + 1]) if i > 0]
    out = list(a[: N + 1]) + [0] * max(0, N + 1 - len(a))
    for n in range(1, N + 1):
        acc = out[n]
        for i, c in sb:
            if i > n:
                break
            acc -= c * out[n - i]
        out[n] = acc
    return out


def pentagonal(m: int, N: int) -> list[int]:
    """Coefficients of (q^m; q^m)_inf mod q^(N+1) via Euler's pentagonal theorem."""
    out = [0] * (N + 1)
    out[0] = 1
    j = 1
    while True:
        e1 = m * j * (3 * j - 1) // 2
        if e1 > N:
            break
        s = -1 if j % 2 else 1
        out[e1] += s
        e2 = m * j * (3 * j + 1) // 2
        if e2 <= N:
            out[e2] += s
        j += 1
    return out


def euler_factor_series(m: int, delta: int, N: int) -> ExactSeries:
    """Coefficients of ``(q^m; q^m)_inf ** delta`` mod ``q^(N+1)``."""
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    if m < 1:
        raise ValueError("m must be positive")
    base = pentagonal(m, N)
    power = [1] + [0] * N
    for _ in range(abs(delta)):
        power = mul_trunc(power, base, N)
    if delta < 0:
        power = div_trunc([1] + [0] * N, power, N)
    quotient = EtaQuotient(((m, delta),)) if delta else None
    return ExactSeries(tuple(power), quotient)


def _compute(q: EtaQuotient, N: int) -> tuple[int, ...]:
    # numerator first (sparse factors), then divide out each denominator factor
    # one Euler product at a time: keeps every divisor sparse.
    acc = [1] + [0] * N
    for m, d in q.factors:
        if d > 0:
            base = pentagonal(m, N)
            for _ in range(d):
                acc = mul_trunc(acc, base, N)
    for m, d in q.factors:
        if d < 0:
            base = pentagonal(m, N)
            for _ in range(-d):
                acc = div_trunc(acc, base, N)
    return tuple(acc)


_longest: dict[EtaQuotient, tuple[int, ...]] = {}


def eta_quotient_coeffs(q: EtaQuotient, N: int, *, cached: bool = True) -> ExactSeries:
    """Exact g(0..N) for the eta-quotient ``q``.

    Results are memoised per quotient (longest prefix kept); ``cached=False``
    multiplies the factors in the order given, bypassing the memo.
    """
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    if not cached:
        return ExactSeries(_compute(q, N), q)
    key = EtaQuotient(tuple(sorted(q.factors)))
    have = _longest.get(key)
    if have is None or len(have) <= N:
        have = _compute(key, N)
        _longest[key] = have
    return ExactSeries(have[: N + 1], q)


def delta_coeffs(k: int, N: int) -> ExactSeries:
    """Broken k-diamond counts Delta_k(0..N)."""
    return eta_quotient_coeffs(delta_quotient(k), N)


def partition_coeffs(N: int) -> ExactSeries:
    return eta_quotient_coeffs(PARTITIONS, N)
