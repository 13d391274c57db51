"""Tree search over tangent-monomial conditions at coordinate points."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .bounds import max_power_at, max_power_first
from .linalg import DegenerateRowError, echelon, last_row_shape
from .solver import (
    Family,
    SolutionSet,
    UnsupportedFamilyDimension,
    solve_weight_system,
)


@dataclass(frozen=True)
class SearchNode:
    """One branch state: echelon matrix, next point to constrain, path."""

    matrix: tuple[tuple[int, ...], ...]
    point_index: int
    chosen: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SearchConfig:
    s: int
    k: int
    shard: tuple[int, int] | None = None  # (index, total), 0-based

    def __post_init__(self):
        if self.s < 2:
            raise ValueError("need at least 2 weights")
        if self.shard is not None:
            idx, total = self.shard
            if not (total >= 1 and 0 <= idx < total):
                raise ValueError(f"bad shard {self.shard}")


def root_node(cfg: SearchConfig) -> SearchNode:
    first = (1,) * cfg.s + (-1, -cfg.k)
    return SearchNode(echelon([first]), 1, ())


def _prune_pairs(pairs, point: int, s: int, k: int) -> list[tuple[int, int]]:
    # x_i x_j with j != i needs the other s-2 weights to sum to -k, which
    # fails whenever k > 2-s.
    return [(m, j) for (m, j) in pairs if not (m == 2 and j != point and k > 2 - s)]


def root_pairs(cfg: SearchConfig) -> list[tuple[int, int]]:
    """Admissible depth-1 pairs, shard-filtered round-robin."""
    pairs = _prune_pairs(max_power_first(cfg.s, cfg.k), 1, cfg.s, cfg.k)
    if cfg.shard is not None:
        idx, total = cfg.shard
        pairs = [p for n, p in enumerate(pairs) if n % total == idx]
    return pairs


def _child(node: SearchNode, pair: tuple[int, int], s: int) -> SearchNode:
    m, j = pair
    exps = [0] * s
    exps[node.point_index - 1] += m - 1
    exps[j - 1] += 1
    row = tuple(exps) + (-1, 0)
    return SearchNode(
        echelon(node.matrix + (row,)),
        node.point_index + 1,
        node.chosen + (pair,),
    )


def _verdict(node: SearchNode, cfg: SearchConfig):
    """("expand", pairs) | ("solve", None) | ("prune", None)."""
    s, k = cfg.s, cfg.k
    if node.point_index > s - 1:
        return "solve", None
    if node.point_index == 1:
        pairs = max_power_first(s, k)
    else:
        try:
            _, p, c, b = last_row_shape(node.matrix)
        except DegenerateRowError:
            return "solve", None
        bound = max_power_at(p, c, b)
        if bound.kind == "empty":
            return "prune", None
        if bound.kind == "terminal":
            return "solve", None
        pairs = [(m, j) for m in range(2, bound.m_max + 1) for j in range(1, s + 1)]
    return "expand", _prune_pairs(pairs, node.point_index, s, k)


def expand(node: SearchNode, cfg: SearchConfig) -> list[SearchNode]:
    """Children of an expandable node; [] when the branch dies or stops."""
    kind, pairs = _verdict(node, cfg)
    if kind != "expand":
        return []
    return [_child(node, pair, cfg.s) for pair in pairs]


def _node_key(node: SearchNode) -> bytes:
    h = hashlib.blake2b(digest_size=16)
    h.update(str((node.point_index, node.matrix)).encode())
    return h.digest()


def _solve(node: SearchNode, s: int, memo: dict) -> SolutionSet:
    sol = memo.get(node.matrix)
    if sol is None:
        try:
            sol = solve_weight_system(node.matrix, s)
        except UnsupportedFamilyDimension as err:
            raise UnsupportedFamilyDimension(err.dim, branch=node.chosen) from None
        memo[node.matrix] = sol
    return sol


def _walk(start: SearchNode, cfg: SearchConfig, visited: set, memo: dict):
    stack = [start]
    while stack:
        node = stack.pop()
        assert node.point_index <= cfg.s
        key = _node_key(node)
        if key in visited:
            continue
        visited.add(key)
        kind, pairs = _verdict(node, cfg)
        if kind == "prune":
            continue
        if kind == "solve":
            sol = _solve(node, cfg.s, memo)
            if sol.points or sol.families:
                yield sol
            continue
        for pair in reversed(pairs):
            stack.append(_child(node, pair, cfg.s))


def run_search(
    cfg: SearchConfig,
    *,
    completed: Iterable[tuple[int, int]] = (),
    checkpoint: Callable[[tuple[int, int], int], None] | None = None,
) -> Iterator[SolutionSet]:
    """Stream solution sets of all terminal branches, depth-first.

    Emitted sets are necessary conditions only; downstream verification
    filters them.  `completed` root pairs are skipped (resume), and
    `checkpoint` is called with (pair, n_emitted) after each root pair.
    """
    root = root_node(cfg)
    done = set(completed)
    memo: dict = {}
    for pair in root_pairs(cfg):
        if pair in done:
            continue
        child = _child(root, pair, cfg.s)
        visited: set = set()
        n = 0
        for sol in _walk(child, cfg, visited, memo):
            n += 1
            yield sol
        if checkpoint is not None:
            checkpoint(pair, n)


def dedup(points: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Unique candidate systems sorted by (d, a_1, ..., a_s)."""
    return tuple(sorted(set(points), key=lambda t: (t[-1],) + t[:-1]))


def collect_search(
    cfg: SearchConfig,
    *,
    completed: Iterable[tuple[int, int]] = (),
    checkpoint: Callable[[tuple[int, int], int], None] | None = None,
) -> tuple[tuple[tuple[int, ...], ...], tuple[Family, ...]]:
    """Drain run_search into (sorted sporadic candidates, sorted families)."""
    pts: set[tuple[int, ...]] = set()
    fams: set[Family] = set()
    for sol in run_search(cfg, completed=completed, checkpoint=checkpoint):
        pts.update(sol.points)
        fams.update(sol.families)
    return dedup(pts), tuple(sorted(fams, key=lambda f: (f.bases, f.gens)))


def family_members_up_to(fam: Family, max_degree: int) -> set[tuple[int, ...]]:
    """All base + N.gens points with degree <= max_degree.

    Every generator has a positive degree entry (it satisfies the
    homogeneous first-row relation with positive weight part), so the
    expansion terminates.
    """
    for g in fam.gens:
        if g[-1] <= 0:
            raise ValueError(f"generator without degree growth: {g}")
    out: set[tuple[int, ...]] = set()
    frontier = [b for b in fam.bases if b[-1] <= max_degree]
    out.update(frontier)
    while frontier:
        nxt = []
        for pt in frontier:
            for g in fam.gens:
                cand = tuple(a + b for a, b in zip(pt, g))
                if cand[-1] <= max_degree and cand not in out:
                    out.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return out


def checkpoint_line(pair: tuple[int, int], n: int) -> str:
    return f"({pair[0]}, {pair[1]}) DONE {n}"


def parse_checkpoint(text: str) -> dict[tuple[int, int], int]:
    """Completed root pairs from checkpoint lines "(m, j) DONE n"."""
    out: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            head, tail = line.split(" DONE ")
            m, j = head.strip("()").split(",")
            out[(int(m), int(j))] = int(tail)
        except ValueError:
            raise ValueError(f"bad checkpoint line {lineno}: {line!r}") from None
    return out
