"""Scratch: battery composition matrix vs raw series counts."""
from weightedhyp.search import SearchConfig, collect_search
from weightedhyp.series import (
    consolidate, run_battery, test_parity, test_almost_identical,
    test_proportional_ambient, test_wf_codim2, test_point_hyperbola,
    test_proportional_strata,
)
from weightedhyp.verify import is_good
from weightedhyp.weights import from_tuple

NAMES = {
    "par": test_parity, "ai": test_almost_identical,
    "pamb": test_proportional_ambient, "wfr": test_wf_codim2,
    "T1": test_point_hyperbola, "pstr": test_proportional_strata,
}
FULL = ("par", "ai", "pamb", "wfr", "T1", "pstr")

cons_cache = {}

def get_cons(s, k):
    if (s, k) not in cons_cache:
        pts, fams = collect_search(SearchConfig(s, k))
        cons_cache[(s, k)] = (pts, consolidate(fams))
    return cons_cache[(s, k)]

def counts(s, k, drop=()):
    tests = tuple(NAMES[n] for n in FULL if n not in drop)
    pts, cons = get_cons(s, k)
    surv, trunc = [], []
    for ln in cons.lines:
        res = run_battery(ln, tests)
        (surv if res is None else trunc).append((ln, res))
    pool = set()
    for p in list(pts) + list(cons.extra_points):
        t = tuple(p)
        if all(t[i] >= t[i+1] for i in range(len(t)-2)) and is_good(from_tuple(t)):
            pool.add(t)
    for ln, res in trunc:
        for lam in res.candidates:
            mem = ln.member(lam)
            if all(x > 0 for x in mem[:-1]) and is_good(from_tuple(mem)):
                pool.add(tuple(mem))
    return len(surv) + len(cons.grids), len(pool)

WANT = {(-5): (14, 11), (-4): (17, 21), (-3): (6, 14), (-2): (9, 37), (-1): (1, 22), 0: (0, 95)}
for drop in [(), ("wfr",), ("pamb",), ("wfr", "pamb"), ("par",), ("ai",), ("pstr",), ("wfr", "par")]:
    row = []
    for k in (-5, -4, -3, -2, -1, 0):
        ns, np_ = counts(4, k, drop)
        mark = "*" if (ns, np_) == WANT[k] else " "
        row.append(f"k={k}:({ns},{np_}){mark}")
    print(f"drop={','.join(drop) or 'none':10s} " + "  ".join(row))
