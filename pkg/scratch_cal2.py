"""Scratch: ordered-cone restriction hypothesis for the raw sporadic pool."""
from collections import defaultdict

from weightedhyp.search import SearchConfig, collect_search
from weightedhyp.series import (
    LineSeries,
    consolidate,
    normalize_line,
    run_battery,
)
from weightedhyp.verify import is_good
from weightedhyp.weights import from_tuple


def order_line(ln):
    """Column-sort by (k_i, u_i) desc, then slide base to the first member whose
    weight vector is sorted non-increasing with all entries >= 1."""
    s = ln.s
    cols = sorted(range(s), key=lambda i: (ln.k[i], ln.u[i]), reverse=True)
    u = tuple(ln.u[i] for i in cols) + (ln.u[s],)
    k = tuple(ln.k[i] for i in cols) + (ln.k[s],)

    def ok(lam):
        m = tuple(u[i] + lam * k[i] for i in range(s))
        return all(x >= 1 for x in m) and all(m[i] >= m[i + 1] for i in range(s - 1))

    # find smallest integer lam (possibly negative) with ok(lam); ok is upward closed
    lam = 0
    while not ok(lam):
        lam += 1
        if lam > 10**6:
            raise RuntimeError(f"no ordered member: {ln}")
    while ok(lam - 1):
        lam -= 1
    return LineSeries(
        tuple(u[i] + lam * k[i] for i in range(s + 1)), k
    )


cfg = SearchConfig(4, -2)
points, families = collect_search(cfg)
cons = consolidate(families)
print(f"lines={len(cons.lines)} grids={len(cons.grids)} extra_pts={len(cons.extra_points)} tree_pts={len(points)}")

# ordered restriction + re-dedup
olines = sorted({order_line(ln) for ln in cons.lines})
print(f"ordered lines after dedup: {len(olines)}")

survivors, truncated = [], []
for ln in olines:
    res = run_battery(ln)
    (survivors if res is None else truncated).append((ln, res))
print(f"survivors={len(survivors)} truncated={len(truncated)}")
for ln, _ in survivors:
    print(f"  SURV u={ln.u} k={ln.k}")

# grids: keep only those whose members are always ordered (base ordered, gens non-increasing)
def grid_ordered(g):
    s = len(g.base) - 1
    if any(g.base[i] < g.base[i + 1] for i in range(s - 1)):
        return False
    return all(all(gen[i] >= gen[i + 1] for i in range(s - 1)) for gen in g.gens)

ogrids = [g for g in cons.grids if grid_ordered(g)]
print(f"ordered grids: {len(ogrids)} of {len(cons.grids)}")
print(f"RAW SERIES = {len(survivors) + len(ogrids)}")

pool_src = defaultdict(list)
for p in points:
    t = tuple(p)
    if all(t[i] >= t[i + 1] for i in range(len(t) - 2)):  # ordered points only
        ws = from_tuple(t)
        if is_good(ws):
            pool_src[ws.as_tuple()].append("pt")
for p in cons.extra_points:
    t = tuple(p)
    if all(t[i] >= t[i + 1] for i in range(len(t) - 2)):
        ws = from_tuple(t)
        if is_good(ws):
            pool_src[ws.as_tuple()].append("gridpt")
for ln, res in truncated:
    for lam in res.candidates:
        mem = ln.member(lam)
        if any(x <= 0 for x in mem[:-1]):
            continue
        ws = from_tuple(mem)
        if is_good(ws):
            pool_src[ws.as_tuple()].append(f"line(u={ln.u},k={ln.k})@{lam} fired={','.join(res.fired)}")

pool = sorted(pool_src)
print(f"RAW SPORADIC = {len(pool)}")

# which are in-series (vs the surviving raw objects, sorted-member sets)
horizon = set()
HOR = 400
for ln, _ in survivors:
    lam = 0
    while True:
        mem = ln.member(lam)
        if mem[-1] > HOR:
            break
        horizon.add(from_tuple(mem).as_tuple())
        lam += 1
for g in ogrids:
    stack, seen = [(0,) * len(g.gens)], set()
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        mem = g.member(c)
        if mem[-1] > HOR:
            continue
        horizon.add(from_tuple(mem).as_tuple())
        for i in range(len(c)):
            cc = list(c)
            cc[i] += 1
            stack.append(tuple(cc))

ins = [p for p in pool if p in horizon]
print(f"in-series members of pool: {len(ins)}")
for p in ins:
    print(f"  {p}  <- {pool_src[p][:2]}")

# test-II-only kills?
only_t2 = [ln for ln, res in truncated if res.fired == ("stratum-hyperbola",)]
print(f"lines killed ONLY by stratum-hyperbola: {len(only_t2)}")
