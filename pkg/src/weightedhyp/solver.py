"""Solve a terminal linear system for weight systems.

A terminal node of the search tree is a matrix of tangent-monomial rows
over the unknowns (a_1, ..., a_s, d).  The integral solutions that also
satisfy a_1 >= ... >= a_s >= 1 and d >= 1 form the lattice points of a
polyhedron whose recession cone is pointed.  Depending on the dimension
of that cone the solutions are finitely many points, finitely many
arithmetic progressions (dim 1), or a two-parameter affine semigroup
(dim 2).  Dimension 3 or more is not handled and maps to a dedicated
exit code at the CLI level.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

from .linalg import echelon, kernel_basis, solve_diophantine


class UnsupportedFamilyDimension(RuntimeError):
    def __init__(self, dim: int, branch=None):
        msg = f"family of dimension {dim} is not supported"
        if branch is not None:
            msg += f" (branch {branch})"
        super().__init__(msg)
        self.dim = dim
        self.branch = branch


@dataclass(frozen=True)
class Family:
    """bases + non-negative integer combinations of gens, in (a_1..a_s, d)."""

    bases: tuple[tuple[int, ...], ...]
    gens: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SolutionSet:
    points: tuple[tuple[int, ...], ...]
    families: tuple[Family, ...]


def _dot(u, v) -> int:
    return sum(x * y for x, y in zip(u, v))


def _primitive(v) -> tuple[int, ...]:
    g = gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def order_constraints(s: int) -> list[tuple[tuple[int, ...], int]]:
    """(row, bound) pairs meaning row . x >= bound, x = (a_1..a_s, d)."""
    cons = []
    for i in range(s - 1):
        row = [0] * (s + 1)
        row[i], row[i + 1] = 1, -1
        cons.append((tuple(row), 0))
    row = [0] * (s + 1)
    row[s - 1] = 1
    cons.append((tuple(row), 1))
    row = [0] * (s + 1)
    row[s] = 1
    cons.append((tuple(row), 1))
    return cons


def _rank(rows) -> int:
    return len(echelon(rows))


def _extreme_ray_candidates(w_rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    t = len(w_rows[0])
    cands: set[tuple[int, ...]] = set()
    if t == 1:
        dirs = [(1,), (-1,)]
    else:
        dirs = []
        for subset in combinations(range(len(w_rows)), t - 1):
            sub = [w_rows[i] for i in subset]
            if _rank(sub) != t - 1:
                continue
            null = kernel_basis(sub, t)
            if len(null) != 1:
                continue
            v = _primitive(null[0])
            dirs.append(v)
            dirs.append(tuple(-x for x in v))
    for v in dirs:
        if any(x for x in v) and all(_dot(row, v) >= 0 for row in w_rows):
            cands.add(_primitive(v))
    return sorted(cands)


def _cone_2d_extremes(rays: list[tuple[int, ...]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Project faithfully onto two coordinates where the span has full rank.
    t = len(rays[0])
    pair = None
    for i, j in combinations(range(t), 2):
        if _rank([(r[i], r[j]) for r in rays]) == 2:
            pair = (i, j)
            break
    assert pair is not None
    i, j = pair

    def cross(u, v):
        return u[i] * v[j] - u[j] * v[i]

    lo = hi = rays[0]
    for r in rays[1:]:
        if cross(r, lo) > 0:
            lo = r
        if cross(hi, r) > 0:
            hi = r
    # A pointed cone spans less than a half turn, so the comparator is
    # consistent; sanity-check that everything sits between lo and hi.
    for r in rays:
        assert cross(lo, r) >= 0 and cross(r, hi) >= 0
    return lo, hi


_HB_DET_LIMIT = 20000


def hilbert_basis_2d(u1: tuple[int, int], u2: tuple[int, int]) -> list[tuple[int, int]]:
    """Minimal generators of cone(u1, u2) cap Z^2.

    Works in normalized coordinates where the cone is ((1,0), (a,n)) with
    0 <= a < n = |det|: the only candidates are the staircase points
    (ceil(y*a/n), y), and such a point is reducible exactly when two lower
    staircase points sum below it.
    """
    # The cone only depends on the ray directions.
    g1 = gcd(u1[0], u1[1])
    g2 = gcd(u2[0], u2[1])
    if g1 == 0 or g2 == 0:
        raise ValueError("zero ray")
    u1 = (u1[0] // g1, u1[1] // g1)
    u2 = (u2[0] // g2, u2[1] // g2)
    det = u1[0] * u2[1] - u1[1] * u2[0]
    if det == 0:
        raise ValueError("rays are parallel")
    if det < 0:
        u1, u2 = u2, u1
        det = -det
    g, p, q = _ext_gcd(u1[0], u1[1])
    assert g == 1
    # T is unimodular with T u1 = (1, 0); then T u2 = (v0, det).
    v0 = p * u2[0] + q * u2[1]
    m = v0 // det
    a = v0 - m * det
    n = det
    if n > _HB_DET_LIMIT:
        raise RuntimeError(f"Hilbert basis determinant too large: {n}")

    def x_of(y: int) -> int:
        return -((-y * a) // n)

    xs = [0] + [x_of(y) for y in range(1, n + 1)]
    keep = [(1, 0)]
    for y in range(1, n + 1):
        reducible = False
        for y1 in range(1, y // 2 + 1):
            if xs[y1] + xs[y - y1] <= xs[y]:
                reducible = True
                break
        if not reducible:
            keep.append((xs[y], y))
    # Map back: inverse of shear then inverse of T.
    out = []
    for x, y in keep:
        sx, sy = x + m * y, y
        out.append((u1[0] * sx - q * sy, u1[1] * sx + p * sy))
    return out


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, p, q) with p*x + q*y == g == gcd(x, y)."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _fm_eliminate(rows: set[tuple[tuple[int, ...], int]]) -> set[tuple[tuple[int, ...], int]]:
    """Project out the last variable of {coeffs . y >= bound} exactly."""
    pos, neg, zero = [], [], set()
    for coeffs, bound in rows:
        c = coeffs[-1]
        if c > 0:
            pos.append((coeffs, bound))
        elif c < 0:
            neg.append((coeffs, bound))
        else:
            zero.add((coeffs[:-1], bound))
    out = zero
    for pc, pb in pos:
        for nc, nb in neg:
            cp, cn = pc[-1], nc[-1]
            coeffs = tuple(cp * y - cn * x for x, y in zip(pc[:-1], nc[:-1]))
            bound = cp * nb - cn * pb
            g = gcd(*coeffs) if any(coeffs) else 0
            if g > 1:
                coeffs = tuple(x // g for x in coeffs)
                bound = -((-bound) // g)  # ceil keeps the integer solutions
            out.add((coeffs, bound))
    return out


def lattice_points(w_rows, w_bounds, cap: int = 2_000_000) -> list[tuple[int, ...]]:
    """All integer points of {y : W y >= w}; the caller guarantees boundedness."""
    t = len(w_rows[0]) if w_rows else 0
    if t == 0:
        return [()] if all(b <= 0 for b in w_bounds) else []
    systems: list[set] = [set() for _ in range(t + 1)]
    systems[t] = {(tuple(r), b) for r, b in zip(w_rows, w_bounds)}
    for j in range(t, 0, -1):
        systems[j - 1] = _fm_eliminate(systems[j])
    if any(b > 0 for coeffs, b in systems[0]):
        return []
    out: list[tuple[int, ...]] = []

    def rec(j: int, prefix: tuple[int, ...]):
        lo, hi = None, None
        for coeffs, bound in systems[j + 1]:
            c = coeffs[j]
            if c == 0:
                continue
            rest = bound - _dot(coeffs[:j], prefix)
            if c > 0:
                v = -((-rest) // c)
                lo = v if lo is None else max(lo, v)
            else:
                v = (-rest) // (-c)
                hi = v if hi is None else min(hi, v)
        if lo is None or hi is None:
            raise RuntimeError("unbounded direction in lattice enumeration")
        for val in range(lo, hi + 1):
            nxt = prefix + (val,)
            if j + 1 == t:
                out.append(nxt)
                if len(out) > cap:
                    raise RuntimeError("lattice enumeration exceeded cap")
            else:
                rec(j + 1, nxt)

    rec(0, ())
    return out


def _in_polyhedron(w_rows, w_bounds, y) -> bool:
    return all(_dot(r, y) >= b for r, b in zip(w_rows, w_bounds))


def _minimal_points(w_rows, w_bounds, hb, extremes) -> list[tuple[int, ...]]:
    """Lattice points of P from which no Hilbert-basis vector can be subtracted.

    A minimal point y has y - r outside P for every extreme ray r, so it
    violates one constraint per ray.  Fixing a violated constraint per
    ray cuts a bounded piece out of P: a recession direction w of the
    piece has row_1 . w <= 0 while row_1 is positive on r_1 and
    nonnegative on the rest of the cone, which kills the r_1 component,
    and then the second row kills the rest.
    """
    choices = []
    for ray in extremes:
        viol = []
        for row, bound in zip(w_rows, w_bounds):
            drop = _dot(row, ray)
            if drop > 0:
                # y in P and row . (y - ray) <= bound - 1
                viol.append((tuple(-x for x in row), 1 - bound - drop))
        choices.append(viol)
    pieces: set[tuple[int, ...]] = set()
    for combo in product(*choices):
        rows = list(w_rows) + [c for c, _ in combo]
        bnds = list(w_bounds) + [b for _, b in combo]
        pieces.update(lattice_points(rows, bnds))
    out = []
    for y in sorted(pieces):
        ok = True
        for h in hb:
            shifted = tuple(a - b for a, b in zip(y, h))
            if _in_polyhedron(w_rows, w_bounds, shifted):
                ok = False
                break
        if ok:
            out.append(y)
    return out


def solve_weight_system(matrix, s: int) -> SolutionSet:
    """All solutions of the tangent system with ordered positive weights."""
    a_rows = [r[: s + 1] for r in matrix]
    rhs = [r[s + 1] for r in matrix]
    sol = solve_diophantine(a_rows, rhs)
    if sol is None:
        return SolutionSet((), ())
    x0, kernel = sol
    cons = order_constraints(s)
    if not kernel:
        ok = all(_dot(c, x0) >= b for c, b in cons)
        return SolutionSet(((tuple(x0),) if ok else ()), ())
    w_rows = [tuple(_dot(c, kv) for kv in kernel) for c, _ in cons]
    w_bounds = [b - _dot(c, x0) for c, b in cons]

    def to_point(y):
        return tuple(
            x0[i] + sum(y[j] * kernel[j][i] for j in range(len(kernel)))
            for i in range(s + 1)
        )

    def to_dir(y):
        return tuple(
            sum(y[j] * kernel[j][i] for j in range(len(kernel)))
            for i in range(s + 1)
        )

    rays = _extreme_ray_candidates(w_rows)
    if not rays:
        pts = sorted(to_point(y) for y in lattice_points(w_rows, w_bounds))
        return SolutionSet(tuple(pts), ())
    dim = _rank(rays)
    if dim >= 3:
        raise UnsupportedFamilyDimension(dim)
    if dim == 1:
        if len(rays) != 1:
            # Both signs of a direction passed: the cone contains a line,
            # which contradicts pointedness of these systems.
            raise RuntimeError(f"recession cone contains a line: {rays}")
        hb = [rays[0]]
        extremes = [rays[0]]
    else:
        r1, r2 = _cone_2d_extremes(rays)
        lattice = _span_lattice(r1, r2)
        c1 = _coords_in_lattice(lattice, r1)
        c2 = _coords_in_lattice(lattice, r2)
        hb2 = hilbert_basis_2d(c1, c2)
        hb = [
            tuple(p[0] * lattice[0][i] + p[1] * lattice[1][i] for i in range(len(r1)))
            for p in hb2
        ]
        extremes = [r1, r2]
    bases = _minimal_points(w_rows, w_bounds, hb, extremes)
    if not bases:
        # Pointed recession cone over an empty polyhedron: no solutions.
        return SolutionSet((), ())
    fam = Family(
        bases=tuple(sorted(to_point(y) for y in bases)),
        gens=tuple(sorted(to_dir(h) for h in hb)),
    )
    return SolutionSet((), (fam,))


def _span_lattice(r1, r2) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Basis of the saturated rank-2 lattice spanned by r1 and r2."""
    t = len(r1)
    if t == 2:
        return (1, 0), (0, 1)
    ortho = kernel_basis([r1, r2], t)
    basis = kernel_basis(list(ortho), t)
    assert len(basis) == 2
    return basis[0], basis[1]


def _coords_in_lattice(lattice, v) -> tuple[int, int]:
    g1, g2 = lattice
    cols = list(zip(g1, g2))
    sol = solve_diophantine(cols, v)
    assert sol is not None and not sol[1]
    return sol[0][0], sol[0][1]
