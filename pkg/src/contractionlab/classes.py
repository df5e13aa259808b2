"""Recognizers for the target graph classes, plus brute-force oracles.

Every class comes in two independent routes:

* ``recognize`` -- the production decision procedure (certificate-based where
  one exists: LexBFS elimination orders for chordal, asteroidal-triple
  freeness for interval, odd-hole search in the graph and its complement for
  perfect, degree arithmetic for split, ...).
* ``brute_force_oracle`` -- a raw-definition check that only works on small
  graphs and exists to validate ``recognize``.

The two routes agreeing on a large sample of graphs is itself part of the
test suite, so neither side may call the other.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import GuardExceeded, InvariantError
from .graphs import (
    Graph,
    bits,
    chromatic_number,
    clique_number,
    complement,
    connected_components,
    induced_subgraph,
    is_clique,
    mask_of,
)

CLASS_IDS = (
    "clique",
    "two-cliques",
    "chordal",
    "interval",
    "proper-interval",
    "threshold",
    "trivially-perfect",
    "split",
    "complete-split",
    "perfect",
)

ORACLE_GUARD = 12
PERFECT_ORACLE_GUARD = 10  # chi = omega over all induced subgraphs is costly


# -- chordality: LexBFS + perfect elimination ordering ----------------------


def lexbfs_order(g: Graph) -> List[int]:
    """Lexicographic BFS visit order; ties broken toward smaller ids."""
    labels: Dict[int, List[int]] = {v: [] for v in range(g.n)}
    order = []
    unvisited = set(range(g.n))
    for step in range(g.n):
        v = max(unvisited, key=lambda u: (labels[u], -u))
        unvisited.remove(v)
        order.append(v)
        stamp = g.n - step
        for w in bits(g.adj[v]):
            if w in unvisited:
                labels[w].append(stamp)
    return order


def _is_peo(g: Graph, elimination: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(elimination)}
    for v in elimination:
        later = [w for w in bits(g.adj[v]) if pos[w] > pos[v]]
        if not later:
            continue
        u = min(later, key=lambda w: pos[w])
        rest = mask_of(w for w in later if w != u)
        if rest & ~g.adj[u]:
            return False
    return True


def is_chordal(g: Graph) -> bool:
    """Chordal iff the reverse of a LexBFS order is a perfect elimination order."""
    return _is_peo(g, list(reversed(lexbfs_order(g))))


# -- asteroidal triples -----------------------------------------------------


def has_asteroidal_triple(g: Graph) -> bool:
    """An AT is a pairwise non-adjacent triple where each pair is joined by a
    path avoiding the closed neighborhood of the third vertex."""
    comp_avoiding = []
    full = g.vertex_mask()
    for v in range(g.n):
        allowed = full & ~g.adj[v] & ~(1 << v)
        label = [-1] * g.n
        cid = 0
        for s in bits(allowed):
            if label[s] >= 0:
                continue
            frontier = 1 << s
            comp = frontier
            while frontier:
                nxt = 0
                for x in bits(frontier):
                    nxt |= g.adj[x]
                frontier = nxt & allowed & ~comp
                comp |= frontier
            for x in bits(comp):
                label[x] = cid
            cid += 1
        comp_avoiding.append(label)
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if g.has_edge(x, y):
                continue
            for z in range(y + 1, g.n):
                if g.has_edge(x, z) or g.has_edge(y, z):
                    continue
                if (
                    comp_avoiding[z][x] == comp_avoiding[z][y] >= 0
                    and comp_avoiding[y][x] == comp_avoiding[y][z] >= 0
                    and comp_avoiding[x][y] == comp_avoiding[x][z] >= 0
                ):
                    return True
    return False


def _has_claw(g: Graph) -> bool:
    for v in range(g.n):
        nb = g.adj[v]
        for x in bits(nb):
            others = nb & ~g.adj[x] & ~((1 << (x + 1)) - 1)
            for y in bits(others):
                if nb & ~g.adj[x] & ~g.adj[y] & ~(1 << x) & ~(1 << y):
                    return True
    return False


# -- odd holes (strong perfect graph theorem route) --------------------------


def find_odd_hole(g: Graph) -> Optional[List[int]]:
    """Return an induced odd cycle of length >= 5, or None.

    Exhaustive DFS over induced paths: the start vertex is the cycle minimum,
    every extension must avoid chords to the path interior, and a neighbor of
    the start can only close the cycle (a chord to the start otherwise).
    """
    full = g.vertex_mask()
    for v0 in range(g.n):
        higher = full & ~((1 << (v0 + 1)) - 1)
        start_adj = g.adj[v0]

        # path = [v0, v1, ..., last]; banned = vertices adjacent to interior
        def extend(path: List[int], banned: int) -> Optional[List[int]]:
            last = path[-1]
            for w in bits(g.adj[last] & higher & ~banned):
                if w in path:
                    continue
                if start_adj & (1 << w):
                    if len(path) >= 4 and (len(path) + 1) % 2 == 1:
                        return path + [w]
                    continue  # would chord to the start if extended through
                found = extend(path + [w], banned | g.adj[last])
                if found:
                    return found
            return None

        for v1 in bits(start_adj & higher):
            hole = extend([v0, v1], 1 << v0)
            if hole:
                return hole
    return None


# -- per-class recognizers ---------------------------------------------------


def _recognize_clique(g: Graph) -> bool:
    return is_clique(g, range(g.n))


def _two_cliques_parts(g: Graph) -> Optional[Tuple[List[int], List[int]]]:
    """Two-cliques witness (A, B) or None.

    A graph is two-cliques iff its complement is a complete bipartite graph
    plus isolated vertices: the complement's edges are exactly the forbidden
    pairs between the two private parts.
    """
    cg = complement(g)
    touched = [v for v in range(g.n) if cg.adj[v]]
    if not touched:
        return list(range(g.n)), []
    comps = connected_components(cg)
    nontrivial = [c for c in comps if len(c) > 1]
    if len(nontrivial) != 1:
        return None
    comp = nontrivial[0]
    if set(comp) != set(touched):
        return None
    # 2-color the complement component and demand a complete join
    side = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for w in bits(cg.adj[v]):
            if w not in side:
                side[w] = 1 - side[v]
                stack.append(w)
            elif side[w] == side[v]:
                return None
    x = [v for v in comp if side[v] == 0]
    y = [v for v in comp if side[v] == 1]
    if cg.edge_count() != len(x) * len(y):
        return None
    shared = [v for v in range(g.n) if v not in side]
    return sorted(x + shared), sorted(y + shared)


def _recognize_threshold(g: Graph) -> bool:
    """Peel isolated-or-universal vertices; threshold iff nothing is left over.

    This is the construction definition run backwards (equivalently:
    no induced P4, C4 or 2K2).
    """
    alive = g.vertex_mask()
    count = g.n
    while count > 0:
        progressed = False
        for v in bits(alive):
            deg = (g.adj[v] & alive).bit_count()
            if deg == 0 or deg == count - 1:
                alive &= ~(1 << v)
                count -= 1
                progressed = True
                break
        if not progressed:
            return False
    return True


def _recognize_trivially_perfect(g: Graph) -> bool:
    """Every connected induced subgraph has a universal vertex (equivalently:
    no induced P4 or C4)."""

    def check(comp_mask: int) -> bool:
        count = comp_mask.bit_count()
        if count <= 1:
            return True
        universal = None
        for v in bits(comp_mask):
            if (g.adj[v] & comp_mask).bit_count() == count - 1:
                universal = v
                break
        if universal is None:
            return False
        rest = comp_mask & ~(1 << universal)
        return all(check(c) for c in _component_masks(g, rest))

    return all(check(c) for c in _component_masks(g, g.vertex_mask()))


def _component_masks(g: Graph, within: int) -> List[int]:
    out = []
    todo = within
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & within & ~comp
            comp |= frontier
        out.append(comp)
        todo &= ~comp
    return out


def _recognize_split(g: Graph) -> bool:
    """Hammer-Simeone degree arithmetic."""
    if g.n == 0:
        return True
    d = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    m = 0
    for i in range(1, g.n + 1):
        if d[i - 1] >= i - 1:
            m = i
    return sum(d[:m]) == m * (m - 1) + sum(d[m:])


def _split_parts(g: Graph) -> Optional[Tuple[List[int], List[int]]]:
    """Witness (I, K) for a split graph: top-degree vertices form the clique."""
    if not _recognize_split(g):
        return None
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    d = [g.degree(v) for v in order]
    m = 0
    for i in range(1, g.n + 1):
        if d[i - 1] >= i - 1:
            m = i
    k_side, i_side = order[:m], order[m:]
    assert is_clique(g, k_side) and _is_independent(g, i_side)
    return sorted(i_side), sorted(k_side)


def _is_independent(g: Graph, s: Sequence[int]) -> bool:
    sm = mask_of(s)
    return all(not (g.adj[v] & sm) for v in bits(sm))


def _complete_split_parts(g: Graph) -> Optional[Tuple[List[int], List[int]]]:
    """Degree-sorted sweep: some prefix is the clique, the rest independent,
    and the join between them is complete."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for k in range(g.n + 1):
        k_side, i_side = order[:k], order[k:]
        if not is_clique(g, k_side):
            break  # longer prefixes only add vertices to the clique candidate
        if not _is_independent(g, i_side):
            continue
        im = mask_of(i_side)
        if all((g.adj[v] & im) == im for v in k_side):
            return sorted(i_side), sorted(k_side)
    return None


def _recognize_interval(g: Graph) -> bool:
    return is_chordal(g) and not has_asteroidal_triple(g)


def _recognize_proper_interval(g: Graph) -> bool:
    return _recognize_interval(g) and not _has_claw(g)


def _recognize_perfect(g: Graph) -> bool:
    return find_odd_hole(g) is None and find_odd_hole(complement(g)) is None


_RECOGNIZERS = {
    "clique": _recognize_clique,
    "two-cliques": lambda g: _two_cliques_parts(g) is not None,
    "chordal": is_chordal,
    "interval": _recognize_interval,
    "proper-interval": _recognize_proper_interval,
    "threshold": _recognize_threshold,
    "trivially-perfect": _recognize_trivially_perfect,
    "split": _recognize_split,
    "complete-split": lambda g: _complete_split_parts(g) is not None,
    "perfect": _recognize_perfect,
}


def recognize(class_id: str, g: Graph) -> bool:
    if class_id not in _RECOGNIZERS:
        raise InvariantError(f"unknown class id {class_id!r}")
    return _RECOGNIZERS[class_id](g)


def witness_partition(class_id: str, g: Graph) -> Optional[Tuple[List[int], List[int]]]:
    """Witness partition for the structured classes, if the graph is a member.

    split / complete-split return (I, K); two-cliques returns (A, B).
    Other classes have no partition witness and return None.
    """
    if class_id == "split":
        return _split_parts(g)
    if class_id == "complete-split":
        return _complete_split_parts(g)
    if class_id == "two-cliques":
        return _two_cliques_parts(g)
    return None


# -- brute-force oracles -----------------------------------------------------


def _guard(g: Graph, limit: int):
    if g.n > limit:
        raise GuardExceeded(f"oracle guard: {g.n} vertices exceeds limit {limit}")


def _oracle_chordal(g: Graph) -> bool:
    # no induced cycle of length >= 4: scan all vertex subsets
    for sub in range(1, 1 << g.n):
        if sub.bit_count() < 4:
            continue
        if _induces_cycle(g, sub):
            return False
    return True


def _induces_cycle(g: Graph, sub: int) -> bool:
    size = sub.bit_count()
    for v in bits(sub):
        if (g.adj[v] & sub).bit_count() != 2:
            return False
    # all degrees 2; connected iff it is a single cycle
    start = sub & -sub
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & sub & ~comp
        comp |= frontier
    return comp == sub and size >= 3


def _oracle_perfect(g: Graph) -> bool:
    _guard(g, PERFECT_ORACLE_GUARD)
    for sub in range(1, 1 << g.n):
        sg, _ = induced_subgraph(g, list(bits(sub)))
        if clique_number(sg) != chromatic_number(sg):
            return False
    return True


def _oracle_split(g: Graph) -> bool:
    for k_mask in range(1 << g.n):
        if is_clique(g, bits(k_mask)) and _is_independent(g, list(bits(g.vertex_mask() & ~k_mask))):
            return True
    return False


def _oracle_complete_split(g: Graph) -> bool:
    full = g.vertex_mask()
    for k_mask in range(1 << g.n):
        i_mask = full & ~k_mask
        if not is_clique(g, bits(k_mask)):
            continue
        if not _is_independent(g, list(bits(i_mask))):
            continue
        if all((g.adj[v] & i_mask) == i_mask for v in bits(k_mask)):
            return True
    return False


def _oracle_two_cliques(g: Graph) -> bool:
    # label every vertex A-only / B-only / shared, exhaustively
    def assign(v: int, a_mask: int, b_mask: int) -> bool:
        if v == g.n:
            return (
                is_clique(g, bits(a_mask))
                and is_clique(g, bits(b_mask))
                and not _crossing_edge(g, a_mask & ~b_mask, b_mask & ~a_mask)
            )
        bit = 1 << v
        return (
            assign(v + 1, a_mask | bit, b_mask)
            or assign(v + 1, a_mask, b_mask | bit)
            or assign(v + 1, a_mask | bit, b_mask | bit)
        )

    return assign(0, 0, 0)


def _crossing_edge(g: Graph, xm: int, ym: int) -> bool:
    return any(g.adj[v] & ym for v in bits(xm))


def _oracle_threshold(g: Graph) -> bool:
    @lru_cache(maxsize=None)
    def buildable(alive: int) -> bool:
        count = alive.bit_count()
        if count <= 1:
            return True
        for v in bits(alive):
            deg = (g.adj[v] & alive).bit_count()
            if deg == 0 or deg == count - 1:
                if buildable(alive & ~(1 << v)):
                    return True
        return False

    result = buildable(g.vertex_mask())
    buildable.cache_clear()
    return result


def _oracle_trivially_perfect(g: Graph) -> bool:
    for sub in range(1 << g.n):
        vs = list(bits(sub))
        if not vs:
            continue
        sg, _ = induced_subgraph(g, vs)
        alpha = clique_number(complement(sg))
        if alpha != _count_maximal_cliques(sg):
            return False
    return True


def _count_maximal_cliques(g: Graph) -> int:
    count = 0

    def bk(r: int, p: int, x: int):
        nonlocal count
        if not p and not x:
            count += 1
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        for v in bits(p & ~g.adj[pivot]):
            bk(r | (1 << v), p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, g.vertex_mask(), 0)
    return count


def _oracle_interval(g: Graph) -> bool:
    return _interval_order_exists(g, proper=False)


def _oracle_proper_interval(g: Graph) -> bool:
    return _interval_order_exists(g, proper=True)


def _interval_order_exists(g: Graph, proper: bool) -> bool:
    """Exhaustive search for an interval model, as a left-endpoint ordering.

    An ordering v1..vn of left endpoints extends to a model iff whenever
    i < j < k and vi~vk, also vi~vj (right endpoints chosen greedily); unit
    intervals additionally need vj~vk.
    """
    n = g.n
    if n <= 1:
        return True

    def place(order: List[int], used: int) -> bool:
        if len(order) == n:
            return True
        k = len(order)
        for w in range(n):
            if used & (1 << w):
                continue
            ok = True
            for i, vi in enumerate(order):
                if not g.has_edge(vi, w):
                    continue
                for j in range(i + 1, k):
                    if not g.has_edge(vi, order[j]) or (proper and not g.has_edge(order[j], w)):
                        ok = False
                        break
                if not ok:
                    break
            if ok and place(order + [w], used | (1 << w)):
                return True
        return False

    return place([], 0)


def _oracle_clique(g: Graph) -> bool:
    return is_clique(g, range(g.n))


_ORACLES = {
    "clique": _oracle_clique,
    "two-cliques": _oracle_two_cliques,
    "chordal": _oracle_chordal,
    "interval": _oracle_interval,
    "proper-interval": _oracle_proper_interval,
    "threshold": _oracle_threshold,
    "trivially-perfect": _oracle_trivially_perfect,
    "split": _oracle_split,
    "complete-split": _oracle_complete_split,
    "perfect": _oracle_perfect,
}


def brute_force_oracle(class_id: str, g: Graph) -> bool:
    if class_id not in _ORACLES:
        raise InvariantError(f"unknown class id {class_id!r}")
    if class_id != "perfect":
        _guard(g, ORACLE_GUARD)
    return _ORACLES[class_id](g)
