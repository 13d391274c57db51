"""Infinite-series handling: normalization, symbolic battery, scans.

The solver emits affine families base + cone(gens) of weight systems.
This module canonicalizes one-parameter lines, absorbs lines that sit
inside two-parameter grids, reduces grids along forced divisibilities,
and runs the symbolic rejection battery.  Every test here encodes a
necessary condition for a member to be a well-formed quasismooth
hypersurface, so a fired test soundly truncates its series to the
returned candidate parameter values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

from .solver import Family
from .verify import is_good
from .weights import from_tuple


@dataclass(frozen=True, order=True)
class LineSeries:
    """One-parameter series u + lam*k, lam >= 0; tuples carry the degree last."""

    u: tuple[int, ...]
    k: tuple[int, ...]

    def __post_init__(self):
        s = len(self.u) - 1
        if len(self.k) != s + 1:
            raise ValueError("mismatched lengths")
        if sum(self.k[:s]) != self.k[s]:
            raise ValueError(f"degree growth must match weight growth: {self.k}")
        if any(x < 1 for x in self.u[:s]) or self.u[s] < 1:
            raise ValueError(f"base outside positive quadrant: {self.u}")

    @property
    def s(self) -> int:
        return len(self.u) - 1

    def member(self, lam: int) -> tuple[int, ...]:
        return tuple(a + lam * b for a, b in zip(self.u, self.k))


@dataclass(frozen=True, order=True)
class GridFamily:
    """Multi-parameter family base + N.gens (cone of rank >= 2)."""

    base: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]

    @property
    def s(self) -> int:
        return len(self.base) - 1

    def member(self, coeffs) -> tuple[int, ...]:
        out = list(self.base)
        for c, g in zip(coeffs, self.gens):
            for i, v in enumerate(g):
                out[i] += c * v
        return tuple(out)


def _rank(rows) -> int:
    mat = [list(map(Fraction, r)) for r in rows if any(r)]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def split_families(families) -> tuple[list[LineSeries], list[GridFamily]]:
    """Split solver families into one-parameter lines and wider grids."""
    lines: list[LineSeries] = []
    grids: list[GridFamily] = []
    for fam in families:
        if _rank(fam.gens) == 1:
            for base in fam.bases:
                for g in fam.gens:
                    lines.append(LineSeries(base, g))
        else:
            for base in fam.bases:
                grids.append(GridFamily(base, tuple(fam.gens)))
    return lines, grids


def normalize_line(line: LineSeries) -> LineSeries:
    """Canonical representative: sorted columns, base pulled back to the
    boundary of the strict positive quadrant."""
    s = line.s
    cols = sorted(zip(line.k[:s], line.u[:s]), reverse=True)
    k = tuple(c[0] for c in cols) + (line.k[s],)
    u = list(c[1] for c in cols) + [line.u[s]]
    while all(a - b >= 1 for a, b in zip(u, k)):
        u = [a - b for a, b in zip(u, k)]
    return LineSeries(tuple(u), k)


def ordered_line(line: LineSeries) -> LineSeries:
    """Canonical representative inside the ordered cone a_1 >= ... >= a_s >= 1.

    Columns sorted by (k_i, u_i) descending, base slid to the first member
    whose weight vector is non-increasing.  Members below that base are
    shadows of other search branches; keeping them would double-count.
    """
    s = line.s
    cols = sorted(zip(line.k[:s], line.u[:s]), reverse=True)
    k = tuple(c[0] for c in cols) + (line.k[s],)
    u = tuple(c[1] for c in cols) + (line.u[s],)
    bounds = []
    for i in range(s - 1):
        dk = k[i] - k[i + 1]
        if dk > 0:
            bounds.append(-((u[i] - u[i + 1]) // dk))
        # dk == 0: column sort already forces u[i] >= u[i+1]
    for i in range(s):
        if k[i] > 0:
            bounds.append(-((u[i] - 1) // k[i]))
    lam = max(bounds)
    return LineSeries(tuple(a + lam * b for a, b in zip(u, k)), k)


def normalize_grid(grid: GridFamily) -> GridFamily:
    gens = tuple(sorted(grid.gens, reverse=True))
    s = grid.s
    order = sorted(
        range(s), key=lambda i: tuple(g[i] for g in gens) + (grid.base[i],), reverse=True
    )
    base = [grid.base[i] for i in order] + [grid.base[s]]
    gens = tuple(tuple(g[i] for i in order) + (g[s],) for g in gens)
    changed = True
    while changed:
        changed = False
        for g in gens:
            while all(a - b >= 1 for a, b in zip(base, g)):
                base = [a - b for a, b in zip(base, g)]
                changed = True
    return GridFamily(tuple(base), gens)


def _combinations_summing(gens, target_degree: int):
    """Nonnegative integer coefficient vectors c with sum(c_t * e_t) = target."""
    out: list[tuple[int, ...]] = []

    def rec(idx: int, remaining: int, acc: tuple[int, ...]):
        if idx == len(gens):
            if remaining == 0:
                out.append(acc)
            return
        e = gens[idx][-1]
        if idx == len(gens) - 1:
            if remaining % e == 0:
                out.append(acc + (remaining // e,))
            return
        for c in range(remaining // e + 1):
            rec(idx + 1, remaining - c * e, acc + (c,))

    rec(0, target_degree, ())
    return out


def line_in_grid(line: LineSeries, grid: GridFamily) -> bool:
    """Whether every line member is a grid member (up to column order).

    Decompose the degree components first; each decomposition pins the
    candidate direction and base vectors, so only column multisets need
    comparing and no permutation search is required.
    """
    if line.s != grid.s:
        return False
    s = line.s
    line_cols = sorted(zip(line.k[:s], line.u[:s]))
    for bs in _combinations_summing(grid.gens, line.k[s]):
        k_target = [sum(c * g[i] for c, g in zip(bs, grid.gens)) for i in range(s)]
        d_shift = line.u[s] - grid.base[s]
        if d_shift < 0:
            continue
        for cs in _combinations_summing(grid.gens, d_shift):
            u_target = [
                grid.base[i] + sum(c * g[i] for c, g in zip(cs, grid.gens))
                for i in range(s)
            ]
            if sorted(zip(k_target, u_target)) == line_cols:
                return True
    return False


# ---------------------------------------------------------------------------
# Symbolic battery.  Each test either returns None (inconclusive) or a
# (name, candidates) pair meaning: no member with lam outside candidates
# is a well-formed quasismooth hypersurface.


def test_parity(line: LineSeries):
    """Both parity classes of lam fail 2-adic well-formedness."""
    s = line.s
    for cls in (0, 1):
        w = [a + cls * b for a, b in zip(line.u[:s], line.k[:s])]
        d = line.u[s] + cls * line.k[s]
        evens = sum(1 for a in w if a % 2 == 0)
        if not (evens >= s - 1 or (evens == s - 2 and d % 2 == 1)):
            return None
    return "parity", frozenset()


def test_almost_identical(line: LineSeries):
    """u and k sharing almost all weight entries forces small multipliers.

    Shared coordinates have member weight (1+lam)*k_i.  With s-1 shared
    the ambient space is never well-formed past the base; with s-2 shared
    the stratum gcd forces (1+lam) | d - e.
    """
    s = line.s
    shared = sum(1 for a, b in zip(line.u[:s], line.k[:s]) if a == b)
    if shared >= s - 1:
        return "almost-identical", frozenset({0})
    if shared == s - 2:
        v = abs(line.u[s] - line.k[s])
        if v != 0:
            cands = {0} | {m - 1 for m in range(2, v + 1) if v % m == 0}
            return "almost-identical", frozenset(cands)
    return None


def _proportional(u_part, k_part):
    """Common ratio u_i : k_i as a reduced fraction, or None."""
    if any(b <= 0 for b in k_part):
        return None
    p, q = u_part[0], k_part[0]
    for a, b in zip(u_part[1:], k_part[1:]):
        if a * q != p * b:
            return None
    g = gcd(p, q)
    return p // g, q // g


def test_proportional_ambient(line: LineSeries):
    """Some s-1 weights stay proportional: gcd (p + lam*q) kills lam > 0."""
    s = line.s
    for idx in combinations(range(s), s - 1):
        if _proportional([line.u[i] for i in idx], [line.k[i] for i in idx]):
            return "proportional-ambient", frozenset({0})
    return None


def test_wf_codim2(line: LineSeries):
    """Proportional (s-2)-subset of the first s-1 columns bounds lam.

    Well-formedness forces a monomial supported on the subset of every
    member degree; the degree equation then caps lam at
    (|q*d - p*e| - p) / q unless d*q = p*e exactly.
    """
    s = line.s
    d, e = line.u[s], line.k[s]
    best = None
    for idx in combinations(range(s - 1), s - 2):
        pq = _proportional([line.u[i] for i in idx], [line.k[i] for i in idx])
        if pq is None:
            continue
        p, q = pq
        t = q * d - p * e
        if t == 0:
            continue
        bound = (abs(t) - p) // q
        if best is None or bound < best:
            best = bound
    if best is None:
        return None
    return "wf-codim2", frozenset({0, *range(1, best + 1)})


def _hyperbola_max(a: int, b: int, c: int, dd: int):
    """Largest lam >= 0 with (a + lam*b)/(c + lam*dd) a nonnegative integer.

    Requires c, dd > 0 so the denominator stays positive.  Returns an
    integer bound, or None when the ratio is a constant nonnegative
    integer (no bound exists).
    """
    det = a * dd - b * c
    if det == 0:
        if b % dd == 0 and b // dd >= 0:
            return None
        return -1
    if det > 0:
        n0 = b // dd + 1
    else:
        n0 = -((-b) // dd) - 1
    if n0 < 0:
        return -1
    lam = Fraction(a - n0 * c, n0 * dd - b)
    bound = lam.numerator // lam.denominator
    return max(-1, bound)


def test_point_hyperbola(line: LineSeries):
    """Tangency at the last coordinate point bounds lam (needs k_s > 0).

    A tangent monomial there is x_s^N x_i with
    N = ((d-u_i) + lam(e-k_i)) / (u_s + lam k_s); if no i admits integral
    N for large lam the series truncates.
    """
    s = line.s
    c, dd = line.u[s - 1], line.k[s - 1]
    if dd == 0:
        return None
    d, e = line.u[s], line.k[s]
    bound = -1
    for i in range(s):
        b_i = _hyperbola_max(d - line.u[i], e - line.k[i], c, dd)
        if b_i is None:
            return None
        bound = max(bound, b_i)
    return "point-hyperbola", frozenset(range(bound + 1))


@lru_cache(maxsize=None)
def _semigroup_member(target: int, gens) -> bool:
    """Is target a nonnegative integer combination of gens (all >= 1)?"""
    if target < 0:
        return False
    g0 = 0
    for g in gens:
        g0 = gcd(g0, g)
    if target % g0:
        return False
    target //= g0
    gens = tuple(x // g0 for x in gens)
    if target == 0 or 1 in gens:
        return True
    ok = [False] * (target + 1)
    ok[0] = True
    for g in gens:
        for v in range(g, target + 1):
            if ok[v - g]:
                ok[v] = True
    return ok[target]


def _divisor_lams(nu: int, nk: int, p: int, q: int):
    """All lam >= 0 where (p + lam*q) divides (nu + lam*nk), largest first.

    Only valid when q*nu != p*nk: the divisibility then forces p + lam*q
    to divide the nonzero resultant q*nu - p*nk, so finitely many lam.
    """
    r = abs(q * nu - p * nk)
    divs = set()
    i = 1
    while i * i <= r:
        if r % i == 0:
            divs.add(i)
            divs.add(r // i)
        i += 1
    out = []
    for w in sorted(divs, reverse=True):
        if w < p or (w - p) % q:
            continue
        lam = (w - p) // q
        num = nu + lam * nk
        if num % w == 0 and num >= 0:
            out.append(lam)
    return out


def test_proportional_strata(line: LineSeries):
    """Tangent counting on strata whose weights scale together bounds lam.

    When u_I = p*t and k_I = q*t with q >= 1, member weights restrict to
    (p + lam*q)*t_i on the stratum.  Quasismoothness needs a degree-d
    monomial inside the stratum or |I| tangent monomials x^a x_h with
    distinct external h; either kind exists at lam exactly when the
    stratum degree is (p + lam*q)*A with A in the t-semigroup.  A tangent
    surviving every lam needs (d - u_h)/p = (e - k_h)/q representable;
    the rest live on finitely many lam read off the divisibility, so too
    few eternal tangents truncate the series.
    """
    s = line.s
    d, e = line.u[s], line.k[s]
    best = None
    for size in range(2, s - 1):
        for idx in combinations(range(s), size):
            pq = _proportional([line.u[i] for i in idx], [line.k[i] for i in idx])
            if pq is None:
                continue
            p, q = pq
            t = tuple(line.u[i] // p for i in idx)
            if p * e == q * d:
                if d % p == 0 and _semigroup_member(d // p, t):
                    continue  # eternal inside monomial, stratum never contained
                inside = -1
            else:
                inside = -1
                for lam in _divisor_lams(d, e, p, q):
                    if _semigroup_member((d + lam * e) // (p + lam * q), t):
                        inside = lam
                        break
            eternal = 0
            ext_bounds: list[int] = []
            for h in range(s):
                if h in idx:
                    continue
                nu, nk = d - line.u[h], e - line.k[h]
                if q * nu == p * nk:
                    if nu % p == 0 and nu >= 0 and _semigroup_member(nu // p, t):
                        eternal += 1
                    continue  # constant ratio outside the semigroup: never
                b_h = -1
                for lam in _divisor_lams(nu, nk, p, q):
                    if _semigroup_member((nu + lam * nk) // (p + lam * q), t):
                        b_h = lam
                        break
                ext_bounds.append(b_h)
            if eternal >= size:
                continue
            need = size - eternal
            ext_bounds.sort(reverse=True)
            tangents = ext_bounds[need - 1] if len(ext_bounds) >= need else -1
            bound = max(inside, tangents)
            if best is None or bound < best:
                best = bound
    if best is None:
        return None
    return "proportional-strata", frozenset(range(best + 1))


DEFAULT_TESTS = (
    test_parity,
    test_almost_identical,
    test_proportional_ambient,
    test_wf_codim2,
    test_point_hyperbola,
    test_proportional_strata,
)


@dataclass(frozen=True)
class BatteryResult:
    fired: tuple[str, ...]
    candidates: tuple[int, ...]


def run_battery(line: LineSeries, tests=DEFAULT_TESTS) -> BatteryResult | None:
    """Apply every test; intersect the candidate sets of those that fire."""
    fired: list[str] = []
    cands: frozenset[int] | None = None
    for test in tests:
        res = test(line)
        if res is None:
            continue
        name, these = res
        fired.append(name)
        cands = these if cands is None else cands & these
    if cands is None:
        return None
    return BatteryResult(tuple(fired), tuple(sorted(cands)))


# ---------------------------------------------------------------------------
# Grid reduction: forced divisibilities cut two-parameter families down.


def _rank1_codim2_subsets(grid: GridFamily):
    """Column subsets of size s-2 where base and generators share one ray.

    Yields (beta, alphas): each member's gcd over the subset is
    beta + sum(c_t * alpha_t) times the gcd of the primitive direction.
    """
    s = grid.s
    for idx in combinations(range(s), s - 2):
        part = [grid.base[i] for i in idx]
        rows = [part] + [[g[i] for i in idx] for g in grid.gens]
        if _rank(rows) != 1:
            continue
        beta = 0
        for x in part:
            beta = gcd(beta, x)
        j = idx[next(a for a, x in enumerate(part) if x)]
        tj = grid.base[j] // beta
        if any(g[j] % tj for g in grid.gens):
            continue
        yield beta, [g[j] // tj for g in grid.gens]


def reduce_grid(grid: GridFamily):
    """Split a grid along the gcd divisibility of proportional columns.

    An s-2 subset of columns scaling a single ray has member gcd
    F(c) = beta + sum(c_t * alpha_t), which must divide the degree d(c).
    When an integer q makes r(c) = d(c) - q*F(c) strictly positive with
    nonnegative coefficients, F | r forces F <= r, a halfspace that
    bounds some generator multiplicities.  Returns (lines, grids,
    points) replacing the grid, or None when no reduction applies.
    """
    for w0, vs in _rank1_codim2_subsets(grid):
        d0 = grid.base[-1]
        es = [g[-1] for g in grid.gens]
        if all(v == 0 for v in vs):
            continue
        qs = [e // v for e, v in zip(es, vs) if v > 0]
        q = min(qs + [(d0 - 1) // w0]) if w0 else 0
        if q <= 0:
            continue
        lin = [e - q * v for e, v in zip(es, vs)]
        lin0 = d0 - q * w0
        if lin0 < 1 or any(x < 0 for x in lin):
            continue
        coeffs = [v - l for v, l in zip(vs, lin)]
        rhs = lin0 - w0
        if all(c <= 0 for c in coeffs):
            continue
        if rhs < 0:
            # w > r everywhere: no member satisfies w | r, the grid is empty.
            return [], [], []
        # Enumerate the bounded generators; the rest stay free.
        tight = [t for t, cf in enumerate(coeffs) if cf > 0]
        lines: list[LineSeries] = []
        grids: list[GridFamily] = []
        points: list[tuple[int, ...]] = []
        bounds = {t: rhs // coeffs[t] for t in tight}

        def emit(base, free_gens):
            if len(free_gens) == 0:
                points.append(tuple(base))
            elif len(free_gens) == 1:
                lines.append(LineSeries(tuple(base), free_gens[0]))
            else:
                grids.append(GridFamily(tuple(base), tuple(free_gens)))

        def rec(t_idx: int, base):
            if t_idx == len(tight):
                free = [g for t, g in enumerate(grid.gens) if t not in bounds]
                emit(base, free)
                return
            t = tight[t_idx]
            for c in range(bounds[t] + 1):
                shifted = [
                    a + c * v for a, v in zip(base, grid.gens[t])
                ]
                rec(t_idx + 1, shifted)

        rec(0, list(grid.base))
        return lines, grids, points
    return None


def grid_is_dead(grid: GridFamily) -> bool:
    """Ambient well-formedness fails for every member: s-1 columns stay
    proportional with multiplier at least 2."""
    s = grid.s
    for idx in combinations(range(s), s - 1):
        rows = [[grid.base[i] for i in idx]] + [[g[i] for i in idx] for g in grid.gens]
        if _rank(rows) != 1:
            continue
        part = [grid.base[i] for i in idx]
        g0 = 0
        for x in part:
            g0 = gcd(g0, x)
        if g0 > 1:
            return True
    return False


def reduce_grid_proportional(grid: GridFamily):
    """Keep only the face where s-1 proportional columns stay primitive.

    When base_I and every generator's I-part lie on one ray with the base
    part primitive, a member's I-part has gcd 1 + sum(c_t * alpha_t); any
    coefficient on a generator with alpha_t > 0 kills ambient
    well-formedness, so those coefficients pin to zero.  Returns
    (lines, grids, points) or None.
    """
    s = grid.s
    for idx in combinations(range(s), s - 1):
        part = tuple(grid.base[i] for i in idx)
        g0 = 0
        for x in part:
            g0 = gcd(g0, x)
        if g0 != 1:
            continue
        rows = [list(part)] + [[g[i] for i in idx] for g in grid.gens]
        if _rank(rows) != 1:
            continue
        j = next(a for a, x in enumerate(part) if x)
        alphas = []
        ok = True
        for g in grid.gens:
            gi = [g[i] for i in idx]
            if gi[j] % part[j]:
                ok = False
                break
            alphas.append(gi[j] // part[j])
        if not ok or all(a == 0 for a in alphas):
            continue
        free = [g for g, a in zip(grid.gens, alphas) if a == 0]
        if len(free) == 0:
            return [], [], [tuple(grid.base)]
        if len(free) == 1:
            return [LineSeries(tuple(grid.base), free[0])], [], []
        return [], [GridFamily(tuple(grid.base), tuple(free))], []
    return None


# ---------------------------------------------------------------------------
# Consolidation: solver stream -> canonical lines, grids, point candidates.


@dataclass(frozen=True)
class Consolidated:
    lines: tuple[LineSeries, ...]
    grids: tuple[GridFamily, ...]
    extra_points: tuple[tuple[int, ...], ...]


def consolidate(families) -> Consolidated:
    """Normalize, reduce, absorb and dedup the solver's family stream."""
    lines, grids = split_families(families)
    extra_points: list[tuple[int, ...]] = []

    queue = [normalize_grid(g) for g in grids]
    final_grids: list[GridFamily] = []
    while queue:
        grid = queue.pop()
        if grid_is_dead(grid):
            continue
        red = reduce_grid(grid)
        if red is None:
            red = reduce_grid_proportional(grid)
        if red is None:
            final_grids.append(grid)
            continue
        new_lines, new_grids, new_points = red
        lines.extend(new_lines)
        queue.extend(normalize_grid(g) for g in new_grids)
        extra_points.extend(new_points)

    grid_set = sorted(set(final_grids))
    norm_lines = sorted({ordered_line(ln) for ln in lines})
    kept = [
        ln for ln in norm_lines if not any(line_in_grid(ln, g) for g in grid_set)
    ]
    return Consolidated(tuple(kept), tuple(grid_set), tuple(sorted(set(extra_points))))


# ---------------------------------------------------------------------------
# Scans and residue patterns.


def scan_line(line: LineSeries, count: int, wellformed: bool = True) -> list[int]:
    """Parameters lam in [0, count) whose member verifies as good."""
    good = []
    for lam in range(count):
        member = line.member(lam)
        if is_good(from_tuple(member), wellformed=wellformed):
            good.append(lam)
    return good


def detect_pattern(good: list[int], count: int):
    """Smallest modulus whose residue classes explain the good set.

    Returns ("empty",), ("mod", m, residues) or ("irregular",).
    """
    if not good:
        return ("empty",)
    for m in range(1, max(2, count // 2) + 1):
        residues = tuple(sorted({x % m for x in good}))
        predicted = [x for x in range(count) if x % m in residues]
        if predicted == good:
            return ("mod", m, residues)
    return ("irregular",)
