"""Scratch: raw (series, sporadic) counts across rows after battery upgrade."""
import sys
import time
from weightedhyp.search import SearchConfig, collect_search
from weightedhyp.series import consolidate, run_battery
from weightedhyp.verify import is_good
from weightedhyp.weights import from_tuple


def ordered(t):
    return all(t[i] >= t[i + 1] for i in range(len(t) - 2))


def grid_ordered(g):
    s = len(g.base) - 1
    if any(g.base[i] < g.base[i + 1] for i in range(s - 1)):
        return False
    return all(all(gen[i] >= gen[i + 1] for i in range(s - 1)) for gen in g.gens)


def raw_counts(s, k, show=False):
    t0 = time.time()
    points, families = collect_search(SearchConfig(s, k))
    cons = consolidate(families)
    survivors, truncated = [], []
    for ln in cons.lines:
        res = run_battery(ln)
        (survivors if res is None else truncated).append((ln, res))
    grids = [g for g in cons.grids if grid_ordered(g)]
    pool = set()
    for p in list(points) + list(cons.extra_points):
        t = tuple(p)
        if ordered(t) and is_good(from_tuple(t)):
            pool.add(t)
    for ln, res in truncated:
        for lam in res.candidates:
            mem = ln.member(lam)
            if any(x <= 0 for x in mem[:-1]):
                continue
            if is_good(from_tuple(mem)):
                pool.add(tuple(mem))
    if show:
        for ln, _ in survivors:
            print(f"    SURV u={ln.u} k={ln.k}")
        for g in cons.grids:
            tag = "" if grid_ordered(g) else " (unordered, dropped)"
            print(f"    GRID base={g.base} gens={g.gens}{tag}")
    return len(survivors) + len(grids), len(pool), time.time() - t0


WANT2 = {
    -5: (14, 11), -4: (17, 21), -3: (6, 14), -2: (9, 37), -1: (1, 22),
    0: (0, 95), 1: (0, 62), 2: (0, 205), 3: (0, 103), 4: (0, 276), 5: (0, 96),
}
WANT3 = {-2: (85, 7102), -1: (25, 4450), 0: (0, 7555), 1: (0, 6448)}

if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "2"
    if which == "2":
        for k, want in WANT2.items():
            ns, np_, dt = raw_counts(4, k)
            flag = "OK " if (ns, np_) == want else "BAD"
            print(f"dim2 k={k:+d}: series={ns:3d} sporadic={np_:4d}  want={want}  {flag}  [{dt:.1f}s]")
    else:
        k = int(sys.argv[2])
        ns, np_, dt = raw_counts(5, k, show=(len(sys.argv) > 3))
        want = WANT3.get(k)
        flag = "OK " if want and (ns, np_) == want else "BAD"
        print(f"dim3 k={k:+d}: series={ns} sporadic={np_}  want={want}  {flag}  [{dt:.1f}s]")
