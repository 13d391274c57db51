"""Quotient singularities of a quasismooth hypersurface.

The singular locus of X decomposes along coordinate strata.  For every
r > 1 dividing some of the weights there is one maximal stratum (the
set of all coordinates divisible by r); the cyclic group mu_r acts on
the transverse directions with the remaining weights mod r.  Each
emitted stratum carries its transverse type and the dimension of the
locus it contributes, and the discrepancy test on the type decides
terminal / canonical / worse.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .verify import exists_monomial
from .weights import WeightSystem, count_monomials


@dataclass(frozen=True)
class SingularLocus:
    index: int                     # r of the stabilizer mu_r
    exponents: tuple[int, ...]     # transverse weights mod r
    locus_dim: int                 # dimension inside X
    count: int | None              # number of points when locus_dim == 0
    dissident: bool                # 0-dim locus sitting on a bigger singular stratum
    contained: bool                # the whole stratum lies inside X

    def type_label(self) -> str:
        inner = ",".join(str(e) for e in self.exponents)
        return f"1/{self.index}({inner})"

    def render(self) -> str:
        out = f"{self.type_label()} dim={self.locus_dim}"
        if self.count is not None and self.count > 1:
            out += f" x{self.count}"
        if self.dissident:
            out += " [dissident]"
        return out


class ClassificationError(RuntimeError):
    pass


def reid_tai_ages(index: int, exponents) -> list[tuple[int, int]]:
    """The age numerators: [(e, sum((e*b) mod r))] for e = 1..r-1.

    The age of the group element e is the numerator divided by r.
    """
    r = index
    return [(e, sum((e * b) % r for b in exponents)) for e in range(1, r)]


def _normalize_type(index: int, exponents) -> tuple[int, tuple[int, ...]]:
    exps = tuple(b % index for b in exponents)
    g = gcd(index, *exps) if exps else index
    if g > 1:
        # The action factors through mu_(r/g); classify the faithful part.
        index //= g
        exps = tuple(b // g for b in exps)
    return index, tuple(b % index for b in exps)


def classify_quotient(index: int, exponents) -> str:
    """'terminal', 'canonical' or 'not-canonical' for 1/r(b_1..b_t).

    Reid-Tai: terminal iff every age exceeds 1, canonical iff none falls
    below 1.  An empty faithful type with r > 1 (possible on boundary
    runs without well-formedness) counts as not-canonical.
    """
    r, exps = _normalize_type(index, exponents)
    if r == 1:
        return "terminal"
    if not exps:
        return "not-canonical"
    lo = min(num for _, num in reid_tai_ages(r, exps))
    if lo > r:
        return "terminal"
    if lo == r:
        return "canonical"
    return "not-canonical"


def orbifold_strata(weights) -> list[tuple[tuple[int, ...], int]]:
    """Maximal ambient strata as (index subset, stabilizer order) pairs."""
    s = len(weights)
    seen = {}
    for size in range(1, s + 1):
        for subset in combinations(range(s), size):
            g = gcd(*(weights[i] for i in subset))
            if g <= 1:
                continue
            full = tuple(i for i in range(s) if weights[i] % g == 0)
            seen[full] = max(seen.get(full, 0), gcd(*(weights[i] for i in full)))
    return sorted(seen.items())


def hypersurface_singularities(ws: WeightSystem) -> list[SingularLocus]:
    """All singular strata of the general hypersurface, biggest r first."""
    a = ws.weights
    d = ws.degree
    s = len(a)
    raw: list[tuple[tuple[int, ...], int, bool, int, int | None, tuple[int, ...]]] = []
    for subset, r in orbifold_strata(a):
        sub_w = tuple(a[i] for i in subset)
        external = [i for i in range(s) if i not in subset]
        meets = exists_monomial(sub_w, d)
        if meets:
            locus_dim = len(subset) - 2
            if locus_dim < 0:
                continue  # coordinate point not on X
            count = None
            if locus_dim == 0:
                count = count_monomials(sub_w, d) - 1
                if count <= 0:
                    continue  # the single monomial has no zero on the torus
            exps = tuple(a[i] % r for i in external)
            raw.append((subset, r, False, locus_dim, count, exps))
        else:
            # Stratum contained in X: one external direction is tangent to
            # X and drops out of the transverse type.  Every tangent
            # candidate has weight congruent to d mod r, so which one is
            # dropped does not matter.
            tangent = None
            for e in external:
                if (d - a[e]) % r == 0 and exists_monomial(sub_w, d - a[e]):
                    tangent = e
                    break
            if tangent is None:
                raise ClassificationError(
                    f"contained stratum {subset} of {ws.render()} has no tangent monomial"
                )
            locus_dim = len(subset) - 1
            count = 1 if locus_dim == 0 else None
            exps = tuple(a[i] % r for i in external if i != tangent)
            raw.append((subset, r, True, locus_dim, count, exps))
    out = []
    for subset, r, contained, locus_dim, count, exps in raw:
        dissident = False
        if locus_dim == 0:
            for osub, _orr, ocont, odim, _oc, _oe in raw:
                if odim >= 1 and not ocont and set(osub) > set(subset):
                    dissident = True
                    break
        out.append(SingularLocus(r, exps, locus_dim, count, dissident, contained))
    out.sort(key=lambda l: (-l.index, l.locus_dim, l.exponents))
    return out


def variety_verdict(ws: WeightSystem) -> str:
    """'SM', 'TE', 'CA' or 'NC' for the general hypersurface."""
    loci = hypersurface_singularities(ws)
    if not loci:
        return "SM"
    worst = "TE"
    for locus in loci:
        cls = classify_quotient(locus.index, locus.exponents)
        if cls == "not-canonical":
            return "NC"
        if cls == "canonical":
            worst = "CA"
    return worst


def has_no_tiger(ws: WeightSystem) -> bool:
    """d <= product of the two smallest weights."""
    return ws.degree <= ws.weights[-1] * ws.weights[-2]


def ke_sufficient(ws: WeightSystem) -> bool:
    """Sufficient orbifold Kaehler-Einstein condition, exact rational form.

    d < (s-1)/(s-2) * a_(s-1) * a_s, compared by cross-multiplication.
    """
    s = ws.num_vars
    return ws.degree * (s - 2) < (s - 1) * ws.weights[-1] * ws.weights[-2]
