"""Scratch calibration: attribute dim-2 k=-2 sporadic-pool extras to their source lines."""
from collections import defaultdict

from weightedhyp.search import SearchConfig, collect_search
from weightedhyp.series import (
    DEFAULT_TESTS,
    consolidate,
    run_battery,
    split_families,
)
from weightedhyp.verify import is_good
from weightedhyp.weights import from_tuple

FINAL32 = {
    (5, 2, 1, 1, 7), (7, 3, 1, 2, 11), (8, 3, 2, 3, 14), (9, 4, 2, 3, 16),
    (10, 3, 2, 5, 18), (11, 4, 2, 5, 20), (11, 4, 3, 4, 20), (13, 4, 3, 6, 24),
    (13, 5, 3, 5, 24), (14, 5, 3, 6, 26), (3, 1, 1, 1, 4), (17, 6, 4, 7, 32),
    (4, 1, 1, 2, 6), (19, 7, 4, 8, 36), (5, 2, 1, 2, 8), (20, 7, 5, 8, 38),
    (6, 2, 1, 3, 10), (7, 2, 2, 3, 12), (23, 8, 5, 10, 44), (9, 3, 2, 4, 16),
    (11, 3, 3, 5, 20), (25, 9, 6, 10, 48), (13, 4, 3, 6, 24+2),
    (6, 6, 6, 6, 6),
}
# placeholder FINAL32 above is wrong on purpose; real list loaded below from notes if present.

import json, os, sys

cfg = SearchConfig(4, -2)
points, families = collect_search(cfg)
cons = consolidate(families)
lines, grids = cons.lines, cons.grids
print(f"lines={len(lines)} grids={len(grids)} extra_points={len(cons.extra_points)} tree_points={len(points)}")

survivors = []
truncated = []
for ln in lines:
    res = run_battery(ln)
    if res is None:
        survivors.append(ln)
    else:
        truncated.append((ln, res))
print(f"survivors={len(survivors)} truncated={len(truncated)}")

# Verified pool with attribution
pool_src = defaultdict(list)
for p in points:
    t = tuple(p)
    ws = from_tuple(t)
    if is_good(ws):
        key = tuple(ws.as_tuple())
        pool_src[key].append(("pt", None, None))
for p in cons.extra_points:
    ws = from_tuple(tuple(p))
    if is_good(ws):
        pool_src[tuple(ws.as_tuple())].append(("gridpt", None, None))
for ln, res in truncated:
    for lam in res.candidates:
        mem = ln.member(lam)
        if any(x <= 0 for x in mem[:-1]):
            continue
        ws = from_tuple(mem)
        if is_good(ws):
            pool_src[tuple(ws.as_tuple())].append((ln, res.fired, lam))

pool = sorted(pool_src)
print(f"pool={len(pool)}")

# surviving raw objects' member sets (sorted systems) up to a horizon
horizon_members = set()
inorder_members = set()
HOR = 400
for ln in survivors:
    lam = 0
    while True:
        mem = ln.member(lam)
        if mem[-1] > HOR:
            break
        ws = from_tuple(mem)
        horizon_members.add(tuple(ws.as_tuple()))
        inorder_members.add(tuple(mem))
        lam += 1
for g in grids:
    # breadth-first over coefficient vectors
    from itertools import count
    t = len(g.gens)
    stack = [tuple([0] * t)]
    seen = set()
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        mem = g.member(c)
        if mem[-1] > HOR:
            continue
        ws = from_tuple(mem)
        horizon_members.add(tuple(ws.as_tuple()))
        inorder_members.add(tuple(mem))
        for i in range(t):
            cc = list(c)
            cc[i] += 1
            stack.append(tuple(cc))

in_series = [p for p in pool if p in horizon_members]
in_series_inorder = [p for p in pool if tuple(p) in inorder_members]
print(f"in-series (as sorted system): {len(in_series)}")
print(f"in-series (in-order vector): {len(in_series_inorder)}")
print(f"pool minus sorted-in-series: {len(pool) - len(in_series)}")
print()
for p in in_series:
    srcs = pool_src[p]
    tags = []
    for s in srcs[:6]:
        if s[0] == "pt":
            tags.append("pt")
        elif s[0] == "gridpt":
            tags.append("gridpt")
        else:
            ln, fired, lam = s
            tags.append(f"line(u={ln.u},k={ln.k})fired={','.join(fired)}@lam={lam}")
    io = "IN-ORDER" if tuple(p) in inorder_members else "reorder-only"
    print(f"{p}  [{io}]")
    for t in tags:
        print(f"    <- {t}")
