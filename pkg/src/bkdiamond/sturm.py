"""Exact real-root counting for integer polynomials.

Polynomials are coefficient lists, lowest degree first. Sturm chains are
built from primitive pseudo-remainders scaled by a positive factor, so signs
(and hence sign-change counts) match the classical rational chain while all
arithmetic stays in Python ints.
"""

from __future__ import annotations

import math
from typing import Sequence

Poly = list[int]


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[int]) -> int:
    return len(trim(p)) - 1


def derivative(p: Sequence[int]) -> Poly:
    return [i * c for i, c in enumerate(p)][1:]


def primitive(p: Sequence[int]) -> Poly:
    """Divide out the positive content gcd of the coefficients."""
    g = math.gcd(*p)
    return [c // g for c in p] if g > 1 else list(p)


def pseudo_remainder(a: Sequence[int], b: Sequence[int]) -> Poly:
    """A positive integer multiple of the remainder of a divided by b.

    Each elimination step scales by |lc(b)| > 0, so the result has the sign
    of the true remainder at every point.
    """
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
    db = len(b) - 1
    scale = abs(b[-1])
    sgn = 1 if b[-1] > 0 else -1
    r = trim(a)
    while r and len(r) - 1 >= db:
        f = sgn * r[-1]
        shift = len(r) - 1 - db
        r = [scale * c for c in r]
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r.pop()
        r = trim(r)
    return r


def sturm_chain(p: Sequence[int]) -> list[Poly]:
    """p, p', -prem(p, p'), ... made primitive at each step."""
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has no Sturm chain")
    chain = [primitive(p)]
    d = trim(derivative(p))
    if not d:
        return chain
    chain.append(primitive(d))
    while True:
        r = pseudo_remainder(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append(primitive([-c for c in r]))


def _sign_changes(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Sequence[int]) -> int:
    """Number of distinct real roots, from the chain's signs at -inf and +inf."""
    chain = sturm_chain(p)
    at_pos = [1 if q[-1] > 0 else -1 for q in chain]
    at_neg = [s if (len(q) - 1) % 2 == 0 else -s for s, q in zip(at_pos, chain)]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def is_hyperbolic(p: Sequence[int]) -> bool:
    """True iff every complex root of ``p`` is real.

    The chain ends in gcd(p, p'), so p has deg p - deg gcd distinct roots and
    the chain has at most that many steps. All of them are real exactly when
    every step lowers the degree by one and every leading coefficient has the
    sign of lc(p) (no sign change at +inf, the maximum at -inf). The chain is
    abandoned at the first step that breaks this.
    """
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial is not allowed")
    if len(p) <= 2:
        return True
    sign = p[-1] > 0
    prev, cur = primitive(p), primitive(derivative(p))
    if (cur[-1] > 0) != sign:
        return False
    while True:
        r = pseudo_remainder(prev, cur)
        if not r:
            return True
        nxt = primitive([-c for c in r])
        if len(nxt) != len(cur) - 1 or (nxt[-1] > 0) != sign:
            return False
        prev, cur = cur, nxt
