"""Bounds used to keep the tangent-monomial search tree finite.

The two clamped tail sums bound a weighted sum sum(a_l * p_l) by
a_1 * sigma_plus(p) from above and a_1 * sigma_minus(p) from below for
every non-increasing sequence of positive weights a.  The bounds are the
best possible (equality in the limit as the later weights shrink
relative to a_1), which is what makes the derived power bounds tight
enough for the search to terminate.
"""

from __future__ import annotations

import math
from typing import NamedTuple


def sigma_plus(p) -> int:
    t = 0
    for x in reversed(tuple(p)):
        t = t + x
        if t < 0:
            t = 0
    return t


def sigma_minus(p) -> int:
    t = 0
    for x in reversed(tuple(p)):
        t = t + x
        if t > 0:
            t = 0
    return t


def ceil_ratio(num: int, den: int) -> int:
    """ceil(num / den) in exact integer arithmetic, den != 0."""
    if den < 0:
        num, den = -num, -den
    return -((-num) // den)


class PowerBound(NamedTuple):
    kind: str  # "bounded" | "empty" | "terminal"
    m_max: int | None


def max_power_at(p, c: int, b: int) -> PowerBound:
    """Bound on the tangent power m at an interior point.

    p, c, b come from the last echelon row (0,..,0,p_i,..,p_s,-c,b): the
    row says sum(p_l * a_l) - c*d = b on every solution.  Positive c
    bounds d (hence m) from above via sigma_plus; negative c uses
    sigma_minus, whose inequality holds for any sign pattern of p.
    c == 0 pins a weight combination: either plainly infeasible or a
    signal to stop expanding and solve.
    """
    p = tuple(p)
    if c > 0:
        top = sigma_plus(p)
        if b < 0:
            top -= b
        return PowerBound("bounded", ceil_ratio(top, c))
    if c < 0:
        low = sigma_minus(p)
        if b >= 0:
            low -= b
        return PowerBound("bounded", ceil_ratio(low, c))
    if all(x >= 0 for x in p) and sum(p) > b:
        # Weights are >= 1, so sum(p_l * a_l) >= sum(p) > b: no solutions.
        return PowerBound("empty", None)
    return PowerBound("terminal", None)


def max_power_first(s: int, k: int) -> list[tuple[int, int]]:
    """Admissible (m, j) pairs at the first point.

    m is the total power (the monomial is x_1^(m-1) x_j), j is 1-based.
    For 2-s < k < 0 only j = 1 is possible when m = 2: the monomial
    x_1 x_j forces the other s-2 weights to sum to -k < s-2.
    """
    if k < 0:
        m_top = s - 1
    else:
        m_top = s + k
    pairs = []
    for m in range(2, m_top + 1):
        for j in range(1, s + 1):
            if m == 2 and j != 1 and 2 - s < k < 0:
                continue
            pairs.append((m, j))
    return pairs


class HyperbolaResult(NamedTuple):
    kind: str  # "bounded" | "none" | "unbounded"
    lam_max: int | None


def hyperbola_max_lambda(a: int, b: int, c: int, d: int) -> HyperbolaResult:
    """Largest integer lam >= 0 with (c + lam*d) | (a + lam*b).

    Exact divisor enumeration: (c + lam*d) | (a + lam*b) forces
    (c + lam*d) | (a*d - b*c), so a nonzero cross-determinant leaves
    finitely many candidates.  Zero cross-determinant means the ratio is
    constant where defined; d == 0 reduces to a congruence mod c.
    """
    delta = a * d - b * c
    if delta == 0:
        num, den = (b, d) if d else (a, c)
        if den != 0 and num % den == 0:
            return HyperbolaResult("unbounded", None)
        return HyperbolaResult("none", None)
    if d == 0:
        if c == 0:
            return HyperbolaResult("none", None)
        # c | a + lam*b along an arithmetic progression of lam.
        g = math.gcd(b, c)
        if a % g == 0:
            return HyperbolaResult("unbounded", None)
        return HyperbolaResult("none", None)
    best = None
    for t in _divisors_signed(delta):
        num = t - c
        if num % d:
            continue
        lam = num // d
        if lam < 0:
            continue
        if (a + lam * b) % (c + lam * d):
            continue
        if best is None or lam > best:
            best = lam
    if best is None:
        return HyperbolaResult("none", None)
    return HyperbolaResult("bounded", best)


def _divisors_signed(n: int) -> list[int]:
    n = abs(n)
    small = []
    big = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                big.append(n // i)
        i += 1
    out = small + big[::-1]
    return out + [-t for t in out]
