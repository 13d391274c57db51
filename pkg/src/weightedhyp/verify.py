"""Geometric predicates: well-formedness and quasismoothness.

Quasismoothness of the general member is decided purely combinatorially
through monomial existence questions, one per coordinate subset.  The
existence question "is target a non-negative integer combination of
these weights" is the numerical-semigroup membership problem; it is
answered exactly, with a bitset sweep for moderate targets and a
residue-graph shortest path for huge ones.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from itertools import combinations
from math import gcd

from .weights import WeightSystem

_BITSET_LIMIT = 40000


@lru_cache(maxsize=None)
def exists_monomial(weights: tuple[int, ...], target: int) -> bool:
    """True when target = sum(n_i * weights_i) has a solution n_i >= 0."""
    if target < 0:
        return False
    if target == 0:
        return True
    if not weights:
        return False
    g = gcd(*weights) if len(weights) > 1 else weights[0]
    if target % g:
        return False
    if g > 1:
        weights = tuple(a // g for a in weights)
        target //= g
    if 1 in weights:
        return True
    for a in weights:
        if target % a == 0:
            return True
    if len(weights) == 1:
        return False
    if len(weights) == 2:
        a1, a2 = weights
        # gcd(a1, a2) == 1 after normalization; the minimal n1 with
        # n1*a1 = target (mod a2) decides membership.
        n1 = (target * pow(a1, -1, a2)) % a2
        return n1 * a1 <= target
    if target <= _BITSET_LIMIT:
        mask = (1 << (target + 1)) - 1
        reach = 1
        for a in weights:
            shift = a
            while shift <= target:
                reach |= (reach << shift) & mask
                shift <<= 1
        return bool(reach >> target & 1)
    return _semigroup_member_large(weights, target)


def _semigroup_member_large(weights: tuple[int, ...], target: int) -> bool:
    # Shortest representable value in each residue class mod the smallest
    # weight (Dijkstra over residues); target is representable iff it is
    # at least the representative of its class.
    base = min(weights)
    others = [a for a in weights if a != base]
    dist = {0: 0}
    heap = [(0, 0)]
    goal = target % base
    while heap:
        val, r = heapq.heappop(heap)
        if dist.get(r, None) != val:
            continue
        if r == goal:
            return val <= target
        for a in others:
            nr = (r + a) % base
            nv = val + a
            if nv < dist.get(nr, nv + 1):
                dist[nr] = nv
                heapq.heappush(heap, (nv, nr))
    return False


def is_wellformed_ambient(weights) -> bool:
    """Every (s-1)-subset of the weights has gcd 1."""
    weights = tuple(weights)
    s = len(weights)
    if s == 1:
        return weights[0] == 1
    for i in range(s):
        rest = weights[:i] + weights[i + 1:]
        if gcd(*rest) != 1:
            return False
    return True


def is_wellformed(ws: WeightSystem) -> bool:
    """Ambient well-formed plus the divisibility condition in codim 2.

    Any (s-2)-subset of weights with gcd q > 1 must satisfy q | d; this
    is the divisibility form of the condition, pinned as normative.
    """
    if not is_wellformed_ambient(ws.weights):
        return False
    s = ws.num_vars
    if s < 3:
        return True
    for sub in combinations(ws.weights, s - 2):
        q = sub[0] if len(sub) == 1 else gcd(*sub)
        if q > 1 and ws.degree % q:
            return False
    return True


def is_quasismooth(ws: WeightSystem) -> bool:
    """Quasismoothness of the general degree-d hypersurface.

    For every nonempty coordinate subset I, either a monomial of degree
    d supported inside I exists, or there are |I| monomials of the form
    x_I^M x_e with distinct external variables e.
    """
    a = ws.weights
    d = ws.degree
    s = len(a)
    for size in range(1, s + 1):
        for subset in combinations(range(s), size):
            sub_w = tuple(a[i] for i in subset)
            if exists_monomial(sub_w, d):
                continue
            inside = set(subset)
            hits = 0
            for e in range(s):
                if e in inside:
                    continue
                if exists_monomial(sub_w, d - a[e]):
                    hits += 1
                    if hits >= size:
                        break
            if hits < size:
                return False
    return True


def stratum_meets_x(ws: WeightSystem, subset: tuple[int, ...]) -> bool:
    """True when the general X does not contain the coordinate stratum."""
    sub_w = tuple(ws.weights[i] for i in subset)
    return exists_monomial(sub_w, ws.degree)


def is_good(ws: WeightSystem, wellformed: bool = True) -> bool:
    """The acceptance predicate used throughout the pipeline."""
    if not ws.is_nondegenerate:
        return False
    if wellformed and not is_wellformed(ws):
        return False
    return is_quasismooth(ws)


def construct_monomial(weights, target: int):
    """One exponent vector with sum(n_i * weights_i) = target, or None."""
    weights = tuple(weights)
    if not exists_monomial(weights, target):
        return None
    exps = []
    remaining = target
    for idx in range(len(weights)):
        suffix = weights[idx + 1:]
        a = weights[idx]
        n = remaining // a
        while n >= 0 and not exists_monomial(suffix, remaining - n * a):
            n -= 1
        exps.append(n)
        remaining -= n * a
    return tuple(exps)


def tangent_monomials(ws: WeightSystem, subset) -> list[tuple[int, ...]]:
    """Witness monomials certifying quasismoothness along one stratum.

    subset holds 0-based variable indices.  Returns [pure power] when a
    degree-d monomial lives inside the subset, else one monomial
    x_I^M x_e per distinct external variable e, stopping at |subset| of
    them.  An empty list means the stratum kills quasismoothness.
    """
    a = ws.weights
    d = ws.degree
    s = len(a)
    subset = tuple(sorted(subset))
    sub_w = tuple(a[i] for i in subset)

    def lift(part, extra=None):
        vec = [0] * s
        for i, n in zip(subset, part):
            vec[i] = n
        if extra is not None:
            vec[extra] += 1
        return tuple(vec)

    pure = construct_monomial(sub_w, d)
    if pure is not None:
        return [lift(pure)]
    out = []
    inside = set(subset)
    for e in range(s):
        if e in inside:
            continue
        part = construct_monomial(sub_w, d - a[e])
        if part is not None:
            out.append(lift(part, e))
            if len(out) == len(subset):
                break
    if len(out) < len(subset):
        return []
    return out
