"""Weight systems: hypersurface data and numerical invariants.

A weight system is the pair (weights, degree) describing a hypersurface
of the given degree in the weighted projective space with those weights.
Weights are kept sorted in non-increasing order; the canonical degree is
degree - sum(weights).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if any(a < 1 for a in self.weights):
            raise ValueError(f"weights must be positive: {self.weights}")
        if any(
            a < b for a, b in zip(self.weights, self.weights[1:])
        ):
            raise ValueError(f"weights must be non-increasing: {self.weights}")
        if self.degree < 1:
            raise ValueError(f"degree must be positive: {self.degree}")

    @property
    def num_vars(self) -> int:
        return len(self.weights)

    @property
    def dim(self) -> int:
        return len(self.weights) - 2

    @property
    def canonical_degree(self) -> int:
        return self.degree - sum(self.weights)

    @property
    def is_nondegenerate(self) -> bool:
        # A weight equal to the degree gives a linear variable: the
        # hypersurface is a coordinate cone in disguise and is excluded.
        return self.degree not in self.weights

    def render(self) -> str:
        inner = ",".join(str(a) for a in self.weights)
        return f"X_{self.degree} ⊂ P({inner})"

    def machine_line(self) -> str:
        return " ".join(str(v) for v in (self.degree, *self.weights))

    def as_tuple(self) -> tuple[int, ...]:
        return (*self.weights, self.degree)


def make_ws(weights, degree: int) -> WeightSystem:
    """Build a WeightSystem, sorting the weights into canonical order."""
    return WeightSystem(tuple(sorted(weights, reverse=True)), degree)


def from_tuple(t) -> WeightSystem:
    """Inverse of WeightSystem.as_tuple (weights then degree)."""
    return make_ws(t[:-1], t[-1])


@lru_cache(maxsize=None)
def _count(weights: tuple[int, ...], m: int) -> int:
    if m < 0:
        return 0
    if not weights:
        return 1 if m == 0 else 0
    if len(weights) == 1:
        return 1 if m % weights[0] == 0 else 0
    head = weights[0]
    rest = weights[1:]
    return sum(_count(rest, m - n * head) for n in range(m // head + 1))


def count_monomials(weights, m: int) -> int:
    """Number of monomials of weighted degree m in the given weights."""
    return _count(tuple(weights), m)


def plurigenus(ws: WeightSystem, m: int) -> int:
    """Dimension of the degree-m piece of the coordinate ring of X.

    Monomials of degree m modulo the ideal generated by the general
    degree-d polynomial: count(m) - count(m - d).
    """
    return count_monomials(ws.weights, m) - count_monomials(ws.weights, m - ws.degree)


def canonical_class_degree(ws: WeightSystem) -> Fraction:
    """Self-intersection K^(dim) as an exact rational: k^(s-2) d / prod(a)."""
    k = ws.canonical_degree
    return Fraction(k ** ws.dim * ws.degree, prod(ws.weights))


def smallest_section_degree(ws: WeightSystem, limit: int = 10**6) -> int:
    """Least m >= 1 with a nonzero degree-m piece."""
    for m in range(1, limit + 1):
        if plurigenus(ws, m) > 0:
            return m
    raise RuntimeError(f"no sections up to degree {limit} for {ws}")


def hyperplane_class_degree(ws: WeightSystem) -> Fraction:
    """Self-intersection A^(dim) = d / prod(a), always positive."""
    return Fraction(ws.degree, prod(ws.weights))


def degree_invariant(ws: WeightSystem) -> Fraction:
    """Public name for the polarising self-intersection A^(dim)."""
    return hyperplane_class_degree(ws)
