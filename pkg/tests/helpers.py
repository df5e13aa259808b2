"""Shared test utilities: raw definitional oracles kept independent of the
production search paths, plus small-graph enumeration."""

from __future__ import annotations

import random
from itertools import combinations, permutations
from typing import Iterator, List, Optional

from contractionlab.graphs import (
    Graph,
    bits,
    chromatic_number,
    clique_number,
    connected_components,
    induced_subgraph,
)
from contractionlab.problems import ListInstance


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled simple graph on exactly n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def dense_graph(n: int, key: str, p: float = 0.45) -> Graph:
    rng = random.Random(key)
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


def raw_hadwiger(g: Graph) -> int:
    """Partition-enumeration oracle: all set partitions via restricted growth
    strings, filtered for connected blocks and a complete quotient, taken per
    connected component.  No pruning beyond the filter."""
    if g.n == 0:
        return 0
    return max(
        _raw_hadwiger_connected(induced_subgraph(g, comp)[0])
        for comp in connected_components(g)
    )


def _raw_hadwiger_connected(g: Graph) -> int:
    n = g.n
    best = 1
    code = [0] * n

    def rec(i: int, kmax: int):
        nonlocal best
        if i == n:
            blocks = [0] * kmax
            for v in range(n):
                blocks[code[v]] |= 1 << v
            if _all_connected(g, blocks) and _quotient_complete(g, blocks):
                best = max(best, kmax)
            return
        for c in range(kmax + 1):
            code[i] = c
            rec(i + 1, max(kmax, c + 1))

    rec(0, 0)
    return best


def _all_connected(g: Graph, blocks: List[int]) -> bool:
    for blk in blocks:
        start = blk & -blk
        comp, frontier = start, start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & blk & ~comp
            comp |= frontier
        if comp != blk:
            return False
    return True


def _quotient_complete(g: Graph, blocks: List[int]) -> bool:
    adjs = []
    for blk in blocks:
        m = 0
        for v in bits(blk):
            m |= g.adj[v]
        adjs.append(m)
    for x in range(len(blocks)):
        for y in range(x + 1, len(blocks)):
            if not adjs[x] & blocks[y]:
                return False
    return True


def naive_list_isomorphism(inst: ListInstance) -> Optional[tuple]:
    """Brute force over all bijections; independent of the backtracking path."""
    n = inst.g.n
    if n != inst.h.n:
        return None
    for perm in permutations(range(n)):
        if all(perm[u] in inst.lists[u] for u in range(n)) and all(
            inst.h.has_edge(perm[u], perm[v]) for u, v in inst.g.edges()
        ):
            return perm
    return None


def perfect_definitional(g: Graph) -> bool:
    """chi = omega on every induced subgraph, straight from the definition."""
    for sub in range(1, 1 << g.n):
        sg, _ = induced_subgraph(g, list(bits(sub)))
        if clique_number(sg) != chromatic_number(sg):
            return False
    return True
